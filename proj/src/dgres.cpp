#include "twk/dgres.hpp"

#include <algorithm>

namespace twk {

void SimplexFamily::validate() const {
    if (objects.empty()) throw std::invalid_argument("SimplexFamily: empty");
    if (!ring) throw std::invalid_argument("SimplexFamily: null ring");
    for (const auto& o : objects) {
        if (!(*o.ring == *ring))
            throw std::invalid_argument("SimplexFamily: mixed rings");
        o.validate();
    }
}

int SimplexFamily::degree_span() const {
    bool any = false;
    int lo = 0, hi = 0;
    for (const auto& o : objects) {
        if (o.module.is_zero()) continue;
        if (!any) { lo = o.module.min_degree(); hi = o.module.max_degree(); any = true; }
        lo = std::min(lo, o.module.min_degree());
        hi = std::max(hi, o.module.max_degree());
    }
    return any ? hi - lo : 0;
}

bool SimplexFamily::operator==(const SimplexFamily& o) const {
    if (objects.size() != o.objects.size()) return false;
    for (std::size_t i = 0; i < objects.size(); ++i)
        if (!(objects[i] == o.objects[i])) return false;
    return *ring == *o.ring;
}

static void check_index(const MultiIndex& I, int n) {
    if (I.empty()) throw std::invalid_argument("DgCochain: empty multi-index");
    for (std::size_t j = 0; j < I.size(); ++j) {
        if (I[j] < 0 || I[j] > n)
            throw std::invalid_argument("DgCochain: index entry out of range");
        if (j > 0 && I[j] < I[j - 1])
            throw std::invalid_argument("DgCochain: multi-index not nondecreasing");
    }
}

DgCochain::DgCochain(FamilyPtr source, FamilyPtr target, int total_degree)
    : src_(std::move(source)), tgt_(std::move(target)), deg_(total_degree) {
    if (!src_ || !tgt_) throw std::invalid_argument("DgCochain: null family");
    if (src_->size() != tgt_->size())
        throw std::invalid_argument("DgCochain: family sizes differ");
}

DgCochain DgCochain::identity(FamilyPtr family) {
    DgCochain u(family, family, 0);
    for (int i = 0; i <= family->size(); ++i)
        u.set_component({i}, GradedMap::identity(family->at(i).module, family->ring));
    return u;
}

GradedMap DgCochain::component(const MultiIndex& I) const {
    auto it = comps_.find(I);
    if (it != comps_.end()) return it->second;
    int k = static_cast<int>(I.size()) - 1;
    return GradedMap::zero(src_->at(I.back()).module, tgt_->at(I.front()).module,
                           deg_ - k, src_->ring);
}

void DgCochain::set_component(const MultiIndex& I, GradedMap g) {
    check_index(I, src_->size());
    int k = static_cast<int>(I.size()) - 1;
    if (g.degree() != deg_ - k)
        throw std::invalid_argument("DgCochain: component degree mismatch");
    if (!(g.source() == src_->at(I.back()).module) ||
        !(g.target() == tgt_->at(I.front()).module))
        throw std::invalid_argument("DgCochain: component endpoints mismatch");
    if (!(*g.ring() == *src_->ring))
        throw std::invalid_argument("DgCochain: component ring mismatch");
    if (g.is_zero()) comps_.erase(I);
    else comps_[I] = std::move(g);
}

bool DgCochain::is_zero() const {
    for (const auto& [I, g] : comps_)
        if (!g.is_zero()) return false;
    return true;
}

bool DgCochain::operator==(const DgCochain& o) const {
    if (deg_ != o.deg_) return false;
    for (const auto& [I, g] : comps_)
        if (!(o.component(I) == g)) return false;
    for (const auto& [I, g] : o.comps_)
        if (!(component(I) == g)) return false;
    return true;
}

DgCochain DgCochain::operator+(const DgCochain& o) const {
    if (deg_ != o.deg_) throw std::invalid_argument("DgCochain: degree mismatch in sum");
    DgCochain out = *this;
    for (const auto& [I, g] : o.comps_) out.set_component(I, out.component(I) + g);
    return out;
}

DgCochain DgCochain::operator-() const {
    DgCochain out(src_, tgt_, deg_);
    for (const auto& [I, g] : comps_) out.comps_[I] = -g;
    return out;
}

DgCochain DgCochain::operator-(const DgCochain& o) const { return *this + (-o); }

DgCochain DgCochain::scaled(const Scalar& c) const {
    DgCochain out(src_, tgt_, deg_);
    for (const auto& [I, g] : comps_) {
        GradedMap s = g.scaled(c);
        if (!s.is_zero()) out.comps_[I] = std::move(s);
    }
    return out;
}

int cochain_degree_bound(const SimplexFamily& src, const SimplexFamily& tgt,
                         int total_degree) {
    // component at simplicial degree k has B-degree total-k; it can be
    // nonzero only while total-k >= min(target degrees) - max(source degrees)
    bool sany = false, tany = false;
    int smax = 0, tmin = 0;
    for (const auto& o : src.objects)
        if (!o.module.is_zero()) {
            smax = sany ? std::max(smax, o.module.max_degree()) : o.module.max_degree();
            sany = true;
        }
    for (const auto& o : tgt.objects)
        if (!o.module.is_zero()) {
            tmin = tany ? std::min(tmin, o.module.min_degree()) : o.module.min_degree();
            tany = true;
        }
    if (!sany || !tany) return 0;
    return total_degree - (tmin - smax);
}

DgCochain cochain_D(const DgCochain& x) {
    DgCochain out(x.source(), x.target(), x.total_degree() + 1);
    for (const auto& [I, g] : x.components()) {
        int p = static_cast<int>(I.size()) - 1;
        // (-1)^p d_B(x_I) lands on the same index
        GradedMap db = hom_differential(g, x.target()->at(I.front()).diff,
                                        x.source()->at(I.back()).diff);
        if (p % 2 == 1) db = -db;
        if (!db.is_zero()) out.set_component(I, out.component(I) + db);
        // x_I contributes a hat term to every index J whose inner
        // entry at position pos deletes back to I
        for (std::size_t pos = 1; pos <= I.size() - 1; ++pos) {
            int lo = I[pos - 1], hi = I[pos];
            for (int v = lo; v <= hi; ++v) {
                MultiIndex J(I.begin(), I.begin() + pos);
                J.push_back(v);
                J.insert(J.end(), I.begin() + pos, I.end());
                GradedMap term = (pos % 2 == 1) ? -g : g;  // (-1)^pos
                out.set_component(J, out.component(J) + term);
            }
        }
    }
    return out;
}

DgCochain shuffle_mul(const DgCochain& x, const DgCochain& y) {
    if (!(*y.target() == *x.source()))
        throw std::invalid_argument("shuffle_mul: family mismatch");
    DgCochain out(y.source(), x.target(), x.total_degree() + y.total_degree());
    for (const auto& [Ix, gx] : x.components()) {
        int p = static_cast<int>(Ix.size()) - 1;
        int q = x.total_degree() - p;  // left B-degree
        for (const auto& [Iy, gy] : y.components()) {
            if (Ix.back() != Iy.front()) continue;
            int r = static_cast<int>(Iy.size()) - 1;  // right simplicial degree
            MultiIndex I = Ix;
            I.insert(I.end(), Iy.begin() + 1, Iy.end());
            GradedMap term = graded_compose(gx, gy);
            if ((q * r) % 2 != 0) term = -term;
            if (!term.is_zero()) out.set_component(I, out.component(I) + term);
        }
    }
    return out;
}

std::vector<MultiIndex> nondecreasing_indices(int n, int k) {
    std::vector<MultiIndex> out;
    MultiIndex I(static_cast<std::size_t>(k) + 1, 0);
    for (;;) {
        out.push_back(I);
        int j = k;
        while (j >= 0 && I[j] == n) --j;
        if (j < 0) break;
        ++I[j];
        for (int i = j + 1; i <= k; ++i) I[i] = I[j];
    }
    return out;
}

CheckReport mc_check_simplex(
    const SimplexObj& s,
    const std::map<std::pair<int, int>, HomotopyWitness>& witnesses) {
    CheckReport rep;
    const SimplexFamily& fam = *s.family;
    int n = fam.size();
    if (s.phi.total_degree() != 1) {
        rep.fail("phi", "total degree is not 1");
        return rep;
    }

    // side conditions
    for (int i = 0; i <= n; ++i) {
        GradedMap d = s.phi.component({i, i});
        if (!(d == GradedMap::identity(fam.at(i).module, fam.ring)))
            rep.fail("phi^{1,0}" + tuple_str({i, i}), "diagonal is not the identity");
    }
    for (const auto& [I, g] : s.phi.components()) {
        int k = static_cast<int>(I.size()) - 1;
        if (k == 0)
            rep.fail("phi" + tuple_str(I), "simplicial degree 0 component present");
        if (k >= 2 && index_set(I).size() < I.size() && !g.is_zero())
            rep.fail("phi" + tuple_str(I), "repeated-index component is nonzero");
    }

    // Maurer-Cartan residual D phi + phi . phi; every index outside the
    // residual's support is structurally zero, so walking the support is
    // a complete check up to the vanishing bound
    DgCochain residual = cochain_D(s.phi) + shuffle_mul(s.phi, s.phi);
    for (const auto& [I, r] : residual.components())
        if (!r.is_zero())
            rep.fail("MC" + tuple_str(I), "residual " + r.str());

    // homotopy invertibility of phi^{1,0}_{ij}, i < j (diagonals already id)
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            GradedMap f = s.phi.component({i, j});
            std::optional<HomotopyWitness> w;
            if (auto it = witnesses.find({i, j}); it != witnesses.end()) w = it->second;
            InvertReport ir = homotopy_invertible(f, fam.at(j), fam.at(i), w);
            if (ir.status == InvertStatus::NotInvertible)
                rep.fail("phi^{1,0}" + tuple_str({i, j}),
                         "not homotopy invertible: " + ir.detail);
            else if (ir.status == InvertStatus::Inconclusive)
                rep.fail("phi^{1,0}" + tuple_str({i, j}), "inconclusive: " + ir.detail);
        }
    return rep;
}

SimplexMor mor_diff(const SimplexMor& theta, const SimplexObj& source,
                    const SimplexObj& target) {
    if (!(*theta.theta.source() == *source.family) ||
        !(*theta.theta.target() == *target.family))
        throw std::invalid_argument("mor_diff: family mismatch");
    int m = theta.theta.total_degree();
    DgCochain d = cochain_D(theta.theta) + shuffle_mul(target.phi, theta.theta);
    DgCochain tphi = shuffle_mul(theta.theta, source.phi);
    d = (m % 2 == 0) ? d - tphi : d + tphi;
    return SimplexMor{std::move(d)};
}

DgCochain sigma_pushforward(const OrdinalMap& sigma, const DgCochain& x,
                            FamilyPtr new_source, FamilyPtr new_target) {
    sigma.validate();
    if (sigma.target_size != x.source()->size())
        throw std::invalid_argument("sigma_pushforward: size mismatch");
    DgCochain out(std::move(new_source), std::move(new_target), x.total_degree());
    int n = sigma.source_size;
    int kmax = std::max(1, cochain_degree_bound(*x.source(), *x.target(),
                                                x.total_degree()));
    for (int k = 0; k <= kmax; ++k)
        for (const auto& I : nondecreasing_indices(n, k)) {
            MultiIndex J;
            J.reserve(I.size());
            for (int v : I) J.push_back(sigma(v));
            GradedMap g = x.component(J);
            if (!g.is_zero()) out.set_component(I, g);
        }
    return out;
}

SimplexObj sigma_pushforward(const OrdinalMap& sigma, const SimplexObj& s) {
    sigma.validate();
    if (sigma.target_size != s.family->size())
        throw std::invalid_argument("sigma_pushforward: size mismatch");
    auto fam = std::make_shared<SimplexFamily>();
    fam->ring = s.family->ring;
    for (int i = 0; i <= sigma.source_size; ++i)
        fam->objects.push_back(s.family->at(sigma(i)));
    SimplexObj out{fam, sigma_pushforward(sigma, s.phi, fam, fam)};
    // reindexing can only break the degenerate invariants if the input
    // already violated them
    for (const auto& [I, g] : out.phi.components())
        if (I.size() >= 3 && index_set(I).size() < I.size() && !g.is_zero())
            throw std::invalid_argument(
                "sigma_pushforward: target violates degenerate vanishing (input invalid)");
    return out;
}

SimplexObj constant_embed(const ComplexObj& E, int n) {
    auto fam = std::make_shared<SimplexFamily>();
    fam->ring = E.ring;
    for (int i = 0; i <= n; ++i) fam->objects.push_back(E);
    fam->validate();
    DgCochain phi(fam, fam, 1);
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j)
            phi.set_component({i, j}, GradedMap::identity(E.module, E.ring));
    return SimplexObj{fam, std::move(phi)};
}

}  // namespace twk
