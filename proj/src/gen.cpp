#include "twk/gen.hpp"

#include <algorithm>

namespace twk::gen {

int Rng::uniform(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(eng);
}

bool Rng::chance(double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(eng) < p;
}

Scalar random_scalar(Rng& rng, const RingPtr& ring, int max_exp, int max_terms) {
    switch (ring->kind) {
        case RingKind::Rationals: {
            int num = rng.uniform(-3, 3);
            int den = rng.uniform(1, 2);
            return Scalar::from_rat(ring, Rat(num, den));
        }
        case RingKind::PrimeField:
            return Scalar::from_int(ring, rng.uniform(0, static_cast<int>(ring->p) - 1));
        case RingKind::Laurent: {
            Scalar acc = Scalar::zero(ring);
            int terms = rng.uniform(0, max_terms);
            RingPtr base = base_field_of(ring);
            for (int t = 0; t < terms; ++t) {
                ExpVec e(ring->nvars());
                for (std::size_t i = 0; i < e.size(); ++i)
                    e[i] = ring->vars[i].invertible ? rng.uniform(-max_exp, max_exp)
                                                    : rng.uniform(0, max_exp);
                acc = acc + Scalar::monomial(ring, e, random_scalar(rng, base));
            }
            return acc;
        }
    }
    return Scalar::zero(ring);
}

Scalar random_nonzero_scalar(Rng& rng, const RingPtr& ring, int max_exp) {
    for (int tries = 0; tries < 64; ++tries) {
        Scalar s = random_scalar(rng, ring, max_exp);
        if (!s.is_zero()) return s;
    }
    return Scalar::one(ring);
}

Scalar random_unit(Rng& rng, const RingPtr& ring, int max_exp) {
    switch (ring->kind) {
        case RingKind::Rationals: {
            int num = rng.uniform(1, 3) * (rng.chance(0.5) ? 1 : -1);
            int den = rng.uniform(1, 2);
            return Scalar::from_rat(ring, Rat(num, den));
        }
        case RingKind::PrimeField:
            return Scalar::from_int(ring, rng.uniform(1, static_cast<int>(ring->p) - 1));
        case RingKind::Laurent: {
            ExpVec e(ring->nvars(), 0);
            for (std::size_t i = 0; i < e.size(); ++i)
                if (ring->vars[i].invertible) e[i] = rng.uniform(-max_exp, max_exp);
            return Scalar::monomial(ring, e, random_unit(rng, base_field_of(ring)));
        }
    }
    return Scalar::one(ring);
}

Matrix random_matrix(Rng& rng, const RingPtr& ring, int rows, int cols, double density,
                     int max_exp) {
    Matrix m(ring, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (rng.chance(density)) m.set(i, j, random_scalar(rng, ring, max_exp));
    return m;
}

std::pair<Matrix, Matrix> random_invertible(Rng& rng, const RingPtr& ring, int n,
                                            int steps, int max_exp) {
    Matrix m = Matrix::identity(ring, n);
    Matrix inv = Matrix::identity(ring, n);
    if (n == 0) return {m, inv};
    for (int s = 0; s < steps; ++s) {
        if (rng.chance(0.5)) {
            // scale row i by a unit
            int i = rng.uniform(0, n - 1);
            Scalar u = random_unit(rng, ring, max_exp);
            Matrix e = Matrix::identity(ring, n);
            e.set(i, i, u);
            Matrix einv = Matrix::identity(ring, n);
            einv.set(i, i, u.inverse());
            m = e * m;
            inv = inv * einv;
        } else if (n >= 2) {
            // add a multiple of row j to row i
            int i = rng.uniform(0, n - 1);
            int j = rng.uniform(0, n - 1);
            if (i == j) continue;
            Scalar c = random_scalar(rng, ring, max_exp);
            Matrix e = Matrix::identity(ring, n);
            e.set(i, j, c);
            Matrix einv = Matrix::identity(ring, n);
            einv.set(i, j, -c);
            m = e * m;
            inv = inv * einv;
        }
    }
    return {m, inv};
}

GradedModule random_module(Rng& rng, int min_deg, int max_deg, int max_rank) {
    std::map<int, int> ranks;
    for (int d = min_deg; d <= max_deg; ++d) {
        int r = rng.uniform(0, max_rank);
        if (r > 0) ranks[d] = r;
    }
    if (ranks.empty()) ranks[min_deg] = 1;
    return GradedModule(std::move(ranks));
}

GradedMap random_graded_map(Rng& rng, const GradedModule& src, const GradedModule& tgt,
                            int degree, const RingPtr& ring, double density,
                            int max_exp) {
    GradedMap f(src, tgt, degree, ring);
    for (const auto& [d, cols] : src.ranks()) {
        int rows = tgt.rank(d + degree);
        if (rows == 0) continue;
        Matrix blk = random_matrix(rng, ring, rows, cols, density, max_exp);
        f.set_block(d, blk);
    }
    return f;
}

ComplexObj random_complex(Rng& rng, const RingPtr& ring, int min_deg, int max_deg,
                          int max_rank) {
    // summands: points K[d] and identity cones K[d] -> K[d+1]; fresh
    // generators per summand keep d o d = 0 automatic
    std::map<int, int> ranks;
    std::vector<std::tuple<int, int, int>> cones;  // (degree, source col, target row)
    int budget = std::max(1, max_rank);
    for (int s = 0; s < budget; ++s) {
        int d = rng.uniform(min_deg, max_deg);
        if (d < max_deg && rng.chance(0.4)) {
            cones.emplace_back(d, ranks[d], ranks[d + 1]);
            ranks[d] += 1;
            ranks[d + 1] += 1;
        } else {
            ranks[d] += 1;
        }
    }
    GradedModule mod(ranks);
    GradedMap diff(mod, mod, 1, ring);
    for (const auto& [d, src_col, tgt_row] : cones) {
        Matrix blk = diff.block(d);
        blk.set(tgt_row, src_col, Scalar::one(ring));
        diff.set_block(d, blk);
    }
    // conjugate by a random automorphism
    GradedMap u(mod, mod, 0, ring), uinv(mod, mod, 0, ring);
    for (const auto& [d, r] : mod.ranks()) {
        auto [a, ainv] = random_invertible(rng, ring, r);
        u.set_block(d, a);
        uinv.set_block(d, ainv);
    }
    GradedMap conj = graded_compose(graded_compose(u, diff), uinv);
    return ComplexObj(mod, conj, ring);
}

CoverPtr random_cover(Rng& rng, int n_opens, const RingPtr& ring) {
    // random antichain of maximal sets; nerve = their downward closure
    std::vector<std::set<int>> nerve;
    std::set<std::set<int>> seen;
    auto add_closure = [&](const std::set<int>& s) {
        std::vector<int> v(s.begin(), s.end());
        int m = static_cast<int>(v.size());
        for (int mask = 1; mask < (1 << m); ++mask) {
            std::set<int> sub;
            for (int i = 0; i < m; ++i)
                if (mask & (1 << i)) sub.insert(v[i]);
            if (seen.insert(sub).second) nerve.push_back(sub);
        }
    };
    for (int i = 0; i < n_opens; ++i) add_closure({i});
    int extra = rng.uniform(1, n_opens);
    for (int t = 0; t < extra; ++t) {
        std::set<int> s;
        for (int i = 0; i < n_opens; ++i)
            if (rng.chance(0.6)) s.insert(i);
        if (s.size() >= 2) add_closure(s);
    }
    std::map<std::set<int>, RingPtr> rings;
    std::map<std::pair<std::set<int>, std::set<int>>, RingHom> res;
    for (const auto& s : nerve) rings[s] = ring;
    for (const auto& a : nerve)
        for (const auto& b : nerve)
            if (std::includes(b.begin(), b.end(), a.begin(), a.end()))
                res.emplace(std::make_pair(a, b), RingHom::identity(ring));
    std::vector<std::string> names;
    for (int i = 0; i < n_opens; ++i) names.push_back("U" + std::to_string(i));
    return std::make_shared<RingedCover>(std::move(names), std::move(nerve),
                                         std::move(rings), std::move(res));
}

DgCochain random_dg_cochain(Rng& rng, const FamilyPtr& src, const FamilyPtr& tgt,
                            int total_degree, double density, int max_exp) {
    DgCochain out(src, tgt, total_degree);
    int n = src->size();
    int kmax = std::max(0, cochain_degree_bound(*src, *tgt, total_degree));
    for (int k = 0; k <= kmax; ++k)
        for (const auto& I : nondecreasing_indices(n, k)) {
            if (!rng.chance(density)) continue;
            GradedMap g = random_graded_map(rng, src->at(I.back()).module,
                                            tgt->at(I.front()).module, total_degree - k,
                                            src->ring, 0.6, max_exp);
            out.set_component(I, g);
        }
    return out;
}

TwCochain random_tw_cochain(Rng& rng, const CoverPtr& cover, const LocalsPtr& src,
                            const LocalsPtr& tgt, int total_degree, double density,
                            int max_exp) {
    TwCochain out(cover, src, tgt, total_degree);
    int span = std::max(src->degree_span(), tgt->degree_span());
    int kmax = std::max(0, total_degree + span);
    for (int k = 0; k <= kmax; ++k)
        for (const auto& I : nerve_level(*cover, k)) {
            if (!rng.chance(density)) continue;
            GradedMap g =
                random_graded_map(rng, src->at(I.back()), tgt->at(I.front()),
                                  total_degree - k, cover->ring_of_tuple(I), 0.6, max_exp);
            out.set_component(I, g);
        }
    return out;
}

std::pair<TwCochain, TwCochain> random_gauge(Rng& rng, const CoverPtr& cover,
                                             const LocalsPtr& locals,
                                             bool delta_compatible, double density,
                                             int max_exp) {
    TwCochain id = TwCochain::identity(cover, locals);
    TwCochain n(cover, locals, locals, 0);
    int span = locals->degree_span();
    int kmax = std::max(1, span);  // component degree -k needs span >= k
    for (int k = 1; k <= kmax; ++k)
        for (const auto& I : nerve_level(*cover, k)) {
            if (delta_compatible && has_adjacent_repeat(I)) continue;
            if (!rng.chance(density)) continue;
            GradedMap g = random_graded_map(rng, locals->at(I.back()),
                                            locals->at(I.front()), -k,
                                            cover->ring_of_tuple(I), 0.6, max_exp);
            n.set_component(I, g);
        }
    TwCochain u = id + n;
    // inverse by the finite geometric series sum (-n)^j
    TwCochain uinv = id;
    TwCochain pw = n;
    int bound = 2 * (span + 2);
    for (int j = 1; j <= bound && !pw.is_zero(); ++j) {
        uinv = (j % 2 == 1) ? uinv - pw : uinv + pw;
        pw = tw_compose(pw, n);
    }
    return {u, uinv};
}

TwCochain gauge_transform(const TwCochain& a, const TwCochain& u, const TwCochain& uinv) {
    TwCochain conj = tw_compose(tw_compose(u, a), uinv);
    TwCochain corr = tw_compose(delta(u), uinv);
    return conj - corr;
}

TwPerfComplex random_twisted(Rng& rng, const CoverPtr& cover,
                             const RandomTwistedOptions& opt) {
    const RingedCover& cov = *cover;
    int n = cov.size();
    // shared local complex; identical ring everywhere is required here
    const RingPtr& ring = cov.ring_of_tuple({0});
    ComplexObj C = random_complex(rng, ring, opt.min_deg, opt.max_deg, opt.max_rank);
    auto locals = std::make_shared<TwLocals>();
    locals->modules.assign(n, C.module);

    // coboundary transitions g_ij = c_i / c_j keep every cocycle exact
    std::vector<Scalar> c;
    for (int i = 0; i < n; ++i) c.push_back(random_unit(rng, ring, 1));
    TwCochain a(cover, locals, locals, 1);
    for (int i = 0; i < n; ++i) a.set_component({i}, C.diff);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!cov.in_nerve(index_set({i, j}))) continue;
            Scalar gij = c[i] * c[j].inverse();
            GradedMap m = GradedMap::identity(C.module, ring).scaled(gij);
            a.set_component({i, j}, m);
        }
    TwPerfComplex t{cover, locals, std::move(a)};
    if (opt.gauge) {
        auto [u, uinv] = random_gauge(rng, cover, locals, opt.delta_compatible);
        t.a = gauge_transform(t.a, u, uinv);
    }
    return t;
}

SimplexObj random_simplex_obj(Rng& rng, const RingPtr& ring, int n, int min_deg,
                              int max_deg, int max_rank) {
    ComplexObj C = random_complex(rng, ring, min_deg, max_deg, max_rank);
    SimplexObj s = constant_embed(C, n);
    // gauge in the Delta algebra: u = id + m, m off the degenerate slots
    DgCochain id = DgCochain::identity(s.family);
    DgCochain m(s.family, s.family, 0);
    int span = s.family->degree_span();
    for (int k = 1; k <= std::max(1, span); ++k)
        for (const auto& I : nondecreasing_indices(n, k)) {
            if (has_adjacent_repeat(I)) continue;  // nondecreasing: any repeat is adjacent
            if (!rng.chance(0.5)) continue;
            GradedMap g = random_graded_map(rng, s.family->at(I.back()).module,
                                            s.family->at(I.front()).module, -k, ring);
            m.set_component(I, g);
        }
    DgCochain u = id + m;
    DgCochain uinv = id;
    DgCochain pw = m;
    for (int j = 1; j <= 2 * (span + 2) && !pw.is_zero(); ++j) {
        uinv = (j % 2 == 1) ? uinv - pw : uinv + pw;
        pw = shuffle_mul(pw, m);
    }
    DgCochain conj = shuffle_mul(shuffle_mul(u, s.phi), uinv);
    DgCochain corr = shuffle_mul(cochain_D(u), uinv);
    s.phi = conj - corr;
    return s;
}

std::string perturb_entry(Rng& rng, TwPerfComplex& t) {
    // choose a random existing component slot or a fresh pair slot
    std::vector<MultiIndex> tuples;
    for (const auto& [I, g] : t.a.components()) tuples.push_back(I);
    for (const auto& I : nerve_level(*t.cover, 1)) tuples.push_back(I);
    MultiIndex I = tuples.at(static_cast<std::size_t>(
        rng.uniform(0, static_cast<int>(tuples.size()) - 1)));
    GradedMap g = t.a.component(I);
    // pick a block with nonzero shape
    std::vector<int> degs;
    for (const auto& [d, r] : g.source().ranks())
        if (g.target().rank(d + g.degree()) > 0) degs.push_back(d);
    if (degs.empty()) return perturb_entry(rng, t);  // try another slot
    int d = degs.at(static_cast<std::size_t>(rng.uniform(0, static_cast<int>(degs.size()) - 1)));
    Matrix blk = g.block(d);
    int r = rng.uniform(0, blk.rows() - 1);
    int c = rng.uniform(0, blk.cols() - 1);
    Scalar delta = random_unit(rng, blk.ring());
    blk.set(r, c, blk.at(r, c) + delta);
    g.set_block(d, blk);
    TwCochain a2 = t.a;
    a2.set_component(I, g);
    t.a = std::move(a2);
    return "a" + tuple_str(I) + " block " + std::to_string(d) + " entry (" +
           std::to_string(r) + "," + std::to_string(c) + ")";
}

std::string perturb_entry(Rng& rng, SimplexObj& s) {
    std::vector<MultiIndex> tuples;
    for (const auto& [I, g] : s.phi.components()) tuples.push_back(I);
    for (const auto& I : nondecreasing_indices(s.family->size(), 1)) tuples.push_back(I);
    MultiIndex I = tuples.at(static_cast<std::size_t>(
        rng.uniform(0, static_cast<int>(tuples.size()) - 1)));
    GradedMap g = s.phi.component(I);
    std::vector<int> degs;
    for (const auto& [d, r] : g.source().ranks())
        if (g.target().rank(d + g.degree()) > 0) degs.push_back(d);
    if (degs.empty()) return perturb_entry(rng, s);
    int d = degs.at(static_cast<std::size_t>(rng.uniform(0, static_cast<int>(degs.size()) - 1)));
    Matrix blk = g.block(d);
    int r = rng.uniform(0, blk.rows() - 1);
    int c = rng.uniform(0, blk.cols() - 1);
    blk.set(r, c, blk.at(r, c) + random_unit(rng, blk.ring()));
    g.set_block(d, blk);
    s.phi.set_component(I, g);
    return "phi" + tuple_str(I) + " block " + std::to_string(d) + " entry (" +
           std::to_string(r) + "," + std::to_string(c) + ")";
}

}  // namespace twk::gen
