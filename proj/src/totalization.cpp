#include "twk/totalization.hpp"

#include <algorithm>

namespace twk {

CosimplicialBackend CosimplicialBackend::cech(CoverPtr cover) {
    CosimplicialBackend b;
    b.kind = Kind::Cech;
    b.cover = std::move(cover);
    return b;
}

CosimplicialBackend CosimplicialBackend::equivariant(
    std::shared_ptr<const GroupAction> action) {
    CosimplicialBackend b;
    b.kind = Kind::Equivariant;
    b.action = std::move(action);
    return b;
}

std::vector<MultiIndex> CosimplicialBackend::level_sites(int n) const {
    if (kind == Kind::Cech) return nerve_level(*cover, n);
    return quotient_level(*action, n);
}

MultiIndex CosimplicialBackend::site_map(const OrdinalMap& sigma,
                                         const MultiIndex& site_m) const {
    sigma.validate();
    if (kind == Kind::Cech) {
        if (static_cast<int>(site_m.size()) != sigma.target_size + 1)
            throw std::invalid_argument("site_map: level mismatch");
        MultiIndex out;
        out.reserve(sigma.values.size());
        for (int v : sigma.values) out.push_back(site_m.at(v));
        return out;
    }
    return quotient_structure_map(*action, sigma, site_m);
}

CheckReport verify_cosimplicial_identities(const CosimplicialBackend& b, int nmax) {
    CheckReport rep;
    // functoriality site_map(sigma o tau) = site_map(tau) after site_map(sigma)
    for (int n = 0; n <= nmax; ++n)
        for (int mid = 0; mid <= nmax; ++mid)
            for (int m = 0; m <= nmax; ++m)
                for (const auto& tau : all_monotone_maps(n, mid))
                    for (const auto& sigma : all_monotone_maps(mid, m)) {
                        OrdinalMap comp = compose_ordinal(sigma, tau);
                        for (const auto& site : b.level_sites(m)) {
                            MultiIndex direct = b.site_map(comp, site);
                            MultiIndex stepped = b.site_map(tau, b.site_map(sigma, site));
                            if (direct != stepped) {
                                rep.fail("functoriality",
                                         sigma.str() + " then " + tau.str() + " at " +
                                             tuple_str(site));
                                return rep;
                            }
                        }
                    }
    return rep;
}

ComplexObj TotObject::local_complex(int i) const {
    return ComplexObj(locals->at(i), local_diffs.at(i), cover->ring_of_tuple({i}));
}

ComplexObj TotObject::component_at(const MultiIndex& site, int i) const {
    int idx = site.at(i);
    RingHom res = cover->restriction({idx}, index_set(site));
    GradedMap d = apply_hom(res, local_diffs.at(idx));
    return ComplexObj(locals->at(idx), std::move(d), cover->ring_of_tuple(site));
}

std::vector<std::pair<MultiIndex, ComplexObj>> object_component(const TotObject& t,
                                                                int n, int i) {
    if (i < 0 || i > n) throw std::out_of_range("object_component: i out of range");
    std::vector<std::pair<MultiIndex, ComplexObj>> out;
    for (const auto& site : nerve_level(*t.cover, n))
        out.emplace_back(site, t.component_at(site, i));
    return out;
}

std::vector<std::pair<MultiIndex, GradedMap>> expand_standard(const TotObject& t,
                                                              const MultiIndex& I,
                                                              int n) {
    for (std::size_t j = 1; j < I.size(); ++j)
        if (I[j] < I[j - 1])
            throw std::invalid_argument("expand_standard: multi-index not nondecreasing");
    if (I.empty() || I.front() < 0 || I.back() > n)
        throw std::invalid_argument("expand_standard: multi-index out of range");
    std::vector<std::pair<MultiIndex, GradedMap>> out;
    for (const auto& site : nerve_level(*t.cover, n)) {
        MultiIndex sub;
        sub.reserve(I.size());
        for (int v : I) sub.push_back(site.at(v));
        RingHom res = t.cover->restriction(index_set(sub), index_set(site));
        out.emplace_back(site, apply_hom(res, t.phi.component(sub)));
    }
    return out;
}

namespace {

// levelwise Maurer-Cartan residual at one site of level k
GradedMap tot_site_residual(const TotObject& t, const MultiIndex& site) {
    const RingedCover& cov = *t.cover;
    int k = static_cast<int>(site.size()) - 1;
    std::set<int> s = index_set(site);
    RingPtr ring = cov.ring_of_tuple(site);

    auto restricted = [&](const MultiIndex& sub, const GradedMap& g) {
        return apply_hom(cov.restriction(index_set(sub), s), g);
    };

    // (-1)^k d_B(phi^k_site)
    GradedMap phik = t.phi.component(site);
    GradedMap dT = restricted({site.front()}, t.local_diffs.at(site.front()));
    GradedMap dS = restricted({site.back()}, t.local_diffs.at(site.back()));
    GradedMap acc = hom_differential(phik, dT, dS);
    if (k % 2 == 1) acc = -acc;

    // + sum_{j=1}^{k-1} (-1)^j phi^{k-1} at the j-th inner face
    for (int j = 1; j <= k - 1; ++j) {
        GradedMap term = restricted(delete_at(site, j), t.phi.component(delete_at(site, j)));
        acc = (j % 2 == 1) ? acc - term : acc + term;
    }

    // + sum_{j=1}^{k-1} (-1)^{(1-j)(k-j)} phi^j(front) o phi^{k-j}(back)
    for (int j = 1; j <= k - 1; ++j) {
        MultiIndex front(site.begin(), site.begin() + j + 1);
        MultiIndex back(site.begin() + j, site.end());
        GradedMap term = graded_compose(restricted(front, t.phi.component(front)),
                                        restricted(back, t.phi.component(back)));
        if (((1 - j) * (k - j)) % 2 != 0) term = -term;
        acc = acc + term;
    }
    (void)ring;
    return acc;
}

int tot_level_bound(const TotObject& t, int total_degree) {
    return total_degree + t.locals->degree_span();
}

// largest simplicial degree carrying a possibly nonzero component of the
// given total degree between two local families
int hom_level_bound(const TwLocals& src, const TwLocals& tgt, int total_degree) {
    bool sany = false, tany = false;
    int smax = 0, tmin = 0;
    for (const auto& m : src.modules)
        if (!m.is_zero()) {
            smax = sany ? std::max(smax, m.max_degree()) : m.max_degree();
            sany = true;
        }
    for (const auto& m : tgt.modules)
        if (!m.is_zero()) {
            tmin = tany ? std::min(tmin, m.min_degree()) : m.min_degree();
            tany = true;
        }
    if (!sany || !tany) return 0;
    return total_degree - (tmin - smax);
}

}  // namespace

CheckReport mc_check_tot(const TotObject& t) {
    CheckReport rep;
    const RingedCover& cov = *t.cover;
    if (t.phi.total_degree() != 1) {
        rep.fail("phi", "total degree is not 1");
        return rep;
    }
    if (static_cast<int>(t.local_diffs.size()) != cov.size()) {
        rep.fail("locals", "differential table size mismatch");
        return rep;
    }
    // level-0 data must be complexes
    for (int i = 0; i < cov.size(); ++i) {
        const GradedMap& d = t.local_diffs[i];
        if (!graded_compose(d, d).is_zero())
            rep.fail("d" + tuple_str({i}), "local differential does not square to zero");
    }
    for (const auto& [I, g] : t.phi.components())
        if (I.size() == 1)
            rep.fail("phi" + tuple_str(I), "simplicial degree 0 component present");

    // degenerate-slot conditions from Delta_k membership
    for (int i = 0; i < cov.size(); ++i) {
        GradedMap diag = t.phi.component({i, i});
        if (!(diag == GradedMap::identity(t.locals->at(i), cov.ring_of_tuple({i}))))
            rep.fail("phi^{1,0}" + tuple_str({i, i}), "diagonal is not the identity");
    }
    for (const auto& [I, g] : t.phi.components())
        if (I.size() >= 3 && has_adjacent_repeat(I) && !g.is_zero())
            rep.fail("phi" + tuple_str(I), "adjacent-repeat component is nonzero");

    // Maurer-Cartan per level and site, up to the vanishing bound
    int kmax = std::max(1, tot_level_bound(t, 2));
    for (int k = 1; k <= kmax; ++k)
        for (const auto& site : nerve_level(cov, k)) {
            GradedMap r = tot_site_residual(t, site);
            if (!r.is_zero())
                rep.fail("MC level " + std::to_string(k) + " " + tuple_str(site),
                         "residual " + r.str());
        }
    // any stored component beyond the bound must be zero data anyway
    for (const auto& [I, g] : t.phi.components())
        if (static_cast<int>(I.size()) - 1 > tot_level_bound(t, 1) && !g.is_zero())
            rep.fail("phi" + tuple_str(I), "component beyond the vanishing bound");

    // homotopy invertibility of phi^{1,0} on every level-1 site
    for (const auto& site : nerve_level(cov, 1)) {
        if (site[0] == site[1]) continue;  // diagonal slots already forced id
        GradedMap f = t.phi.component(site);
        ComplexObj src = t.component_at(site, 1);
        ComplexObj tgt = t.component_at(site, 0);
        InvertReport ir = homotopy_invertible(f, src, tgt);
        if (ir.status == InvertStatus::NotInvertible)
            rep.fail("phi^{1,0}" + tuple_str(site),
                     "not homotopy invertible: " + ir.detail);
        else if (ir.status == InvertStatus::Inconclusive)
            rep.fail("phi^{1,0}" + tuple_str(site), "inconclusive: " + ir.detail);
    }
    return rep;
}

TotMorphism tot_mor_diff(const TotMorphism& theta, const TotObject& source,
                         const TotObject& target) {
    const RingedCover& cov = *source.cover;
    int m = theta.theta.total_degree();
    TwCochain out(source.phi.cover(), theta.theta.source(), theta.theta.target(), m + 1);

    int kmax = std::max(0, hom_level_bound(*source.locals, *target.locals, m + 1));
    for (int k = 0; k <= kmax; ++k)
        for (const auto& site : nerve_level(cov, k)) {
            std::set<int> s = index_set(site);
            auto restricted = [&](const MultiIndex& sub, const GradedMap& g) {
                return apply_hom(cov.restriction(index_set(sub), s), g);
            };
            // (-1)^k d_B(theta^k)
            GradedMap th = theta.theta.component(site);
            GradedMap dT = restricted({site.front()}, target.local_diffs.at(site.front()));
            GradedMap dS = restricted({site.back()}, source.local_diffs.at(site.back()));
            GradedMap acc = hom_differential(th, dT, dS);
            if (k % 2 == 1) acc = -acc;
            // inner faces
            for (int j = 1; j <= k - 1; ++j) {
                GradedMap term = restricted(delete_at(site, j),
                                            theta.theta.component(delete_at(site, j)));
                acc = (j % 2 == 1) ? acc - term : acc + term;
            }
            // psi . theta : left factors from the target object, l = 1..k
            for (int l = 1; l <= k; ++l) {
                MultiIndex front(site.begin(), site.begin() + l + 1);
                MultiIndex back(site.begin() + l, site.end());
                GradedMap term =
                    graded_compose(restricted(front, target.phi.component(front)),
                                   restricted(back, theta.theta.component(back)));
                if (((1 - l) * (k - l)) % 2 != 0) term = -term;
                acc = acc + term;
            }
            // - (-1)^m theta . phi : right factors from the source object, l = 0..k-1
            for (int l = 0; l <= k - 1; ++l) {
                MultiIndex front(site.begin(), site.begin() + l + 1);
                MultiIndex back(site.begin() + l, site.end());
                GradedMap term =
                    graded_compose(restricted(front, theta.theta.component(front)),
                                   restricted(back, source.phi.component(back)));
                int sign = ((m - l) * (k - l)) % 2 != 0 ? -1 : 1;
                if (m % 2 == 0) sign = -sign;  // the global -(-1)^m factor
                acc = (sign < 0) ? acc - term : acc + term;
            }
            if (!acc.is_zero()) out.set_component(site, acc);
        }
    return TotMorphism{std::move(out)};
}

TwPerfComplex tot_to_twisted(const TotObject& t) {
    TwCochain a(t.phi.cover(), t.locals, t.locals, 1);
    for (int i = 0; i < t.cover->size(); ++i) a.set_component({i}, t.local_diffs.at(i));
    for (const auto& [I, g] : t.phi.components()) a.set_component(I, g);
    return TwPerfComplex{t.cover, t.locals, std::move(a)};
}

TotObject twisted_to_tot(const TwPerfComplex& w) {
    TotObject t;
    t.cover = w.cover;
    t.locals = w.locals;
    t.local_diffs.reserve(w.cover->size());
    for (int i = 0; i < w.cover->size(); ++i) t.local_diffs.push_back(w.local_diff(i));
    TwCochain phi(w.cover, w.locals, w.locals, 1);
    for (const auto& [I, g] : w.a.components())
        if (I.size() >= 2) phi.set_component(I, g);
    t.phi = std::move(phi);
    return t;
}

TwMorphism tot_to_twisted_mor(const TotMorphism& m, const TwPerfComplex&) {
    return TwMorphism{m.theta};
}

TotMorphism twisted_to_tot_mor(const TwMorphism& m, const TotObject&) {
    return TotMorphism{m.u};
}

MatchingWitness matching_witness(const CosimplicialBackend& b, int k) {
    MatchingWitness w;
    w.level = k;
    auto sites = b.level_sites(k);
    w.level_site_count = sites.size();

    auto is_nondegenerate = [&](const MultiIndex& site) {
        if (b.kind == CosimplicialBackend::Kind::Cech)
            return !has_adjacent_repeat(site);
        for (std::size_t i = 1; i < site.size(); ++i)
            if (site[i] == b.action->group.identity()) return false;
        return true;
    };

    // the epi realizing a site as a degeneracy of a nondegenerate cell
    auto collapse = [&](const MultiIndex& site) -> std::pair<MultiIndex, OrdinalMap> {
        if (b.kind == CosimplicialBackend::Kind::Cech) return collapse_tuple(site);
        // [X/G]: drop identity entries, collapse the correspondim path
        MultiIndex nondeg{site[0]};
        std::vector<int> vals{0};
        for (std::size_t i = 1; i < site.size(); ++i) {
            if (site[i] != b.action->group.identity())
                nondeg.push_back(site[i]);
            vals.push_back(static_cast<int>(nondeg.size()) - 1);
        }
        OrdinalMap epi{static_cast<int>(site.size()) - 1,
                       static_cast<int>(nondeg.size()) - 1, vals};
        return {nondeg, epi};
    };

    std::map<std::vector<int>, std::vector<std::string>> blocks;  // epi values -> sites
    bool all_factor = true;
    for (const auto& site : sites) {
        auto [cell, epi] = collapse(site);
        // uniqueness and correctness of the factorization
        if (b.site_map(epi, cell) != site) { all_factor = false; continue; }
        if (!is_nondegenerate(cell)) { all_factor = false; continue; }
        blocks[epi.values].push_back(tuple_str(site));
        if (epi.is_identity()) w.free_cells.push_back(tuple_str(cell));
    }

    std::size_t covered = 0;
    for (const auto& epi : matching_surjections(k)) {
        std::vector<std::string> cells;
        for (const auto& cell : b.level_sites(epi.target_size))
            if (is_nondegenerate(cell)) cells.push_back(tuple_str(cell));
        auto it = blocks.find(epi.values);
        std::size_t got = it == blocks.end() ? 0 : it->second.size();
        if (got != cells.size()) all_factor = false;
        covered += got;
        w.matching_factors.emplace_back(epi, std::move(cells));
    }
    covered += w.free_cells.size();
    w.partition_ok = all_factor && covered == sites.size();
    // the matching map restricted to each block is a bijection onto the
    // corresponding lower-level nondegenerate cells, so the projection
    // admits the extension-by-zero section
    w.projection_surjective = w.partition_ok;
    return w;
}

}  // namespace twk
