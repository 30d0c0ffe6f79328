#include "twk/twisted.hpp"

#include <algorithm>

namespace twk {

int TwLocals::degree_span() const {
    bool any = false;
    int lo = 0, hi = 0;
    for (const auto& m : modules) {
        if (m.is_zero()) continue;
        if (!any) { lo = m.min_degree(); hi = m.max_degree(); any = true; }
        lo = std::min(lo, m.min_degree());
        hi = std::max(hi, m.max_degree());
    }
    return any ? hi - lo : 0;
}

TwCochain::TwCochain(CoverPtr cover, LocalsPtr source, LocalsPtr target,
                     int total_degree)
    : cover_(std::move(cover)), src_(std::move(source)), tgt_(std::move(target)),
      deg_(total_degree) {
    if (!cover_ || !src_ || !tgt_) throw std::invalid_argument("TwCochain: null parts");
    if (src_->size() != cover_->size() || tgt_->size() != cover_->size())
        throw std::invalid_argument("TwCochain: locals do not match the cover");
}

TwCochain TwCochain::identity(CoverPtr cover, LocalsPtr locals) {
    TwCochain u(cover, locals, locals, 0);
    for (int i = 0; i < u.cover_->size(); ++i)
        u.set_component({i}, GradedMap::identity(locals->at(i),
                                                 u.cover_->ring_of_tuple({i})));
    return u;
}

GradedMap TwCochain::component(const MultiIndex& I) const {
    auto it = comps_.find(I);
    if (it != comps_.end()) return it->second;
    int k = static_cast<int>(I.size()) - 1;
    return GradedMap::zero(src_->at(I.back()), tgt_->at(I.front()), deg_ - k,
                           cover_->ring_of_tuple(I));
}

void TwCochain::set_component(const MultiIndex& I, GradedMap g) {
    if (I.empty()) throw std::invalid_argument("TwCochain: empty tuple");
    for (int v : I)
        if (v < 0 || v >= cover_->size())
            throw std::invalid_argument("TwCochain: tuple entry out of range");
    if (!cover_->tuple_in_nerve(I))
        throw std::invalid_argument("TwCochain: tuple " + tuple_str(I) +
                                    " is not in the nerve");
    int k = static_cast<int>(I.size()) - 1;
    if (g.degree() != deg_ - k)
        throw std::invalid_argument("TwCochain: component degree mismatch");
    if (!(g.source() == src_->at(I.back())) || !(g.target() == tgt_->at(I.front())))
        throw std::invalid_argument("TwCochain: component endpoints mismatch");
    if (!(*g.ring() == *cover_->ring_of_tuple(I)))
        throw std::invalid_argument("TwCochain: component ring mismatch at " +
                                    tuple_str(I));
    if (g.is_zero()) comps_.erase(I);
    else comps_[I] = std::move(g);
}

bool TwCochain::is_zero() const {
    for (const auto& [I, g] : comps_)
        if (!g.is_zero()) return false;
    return true;
}

bool TwCochain::operator==(const TwCochain& o) const {
    if (deg_ != o.deg_) return false;
    for (const auto& [I, g] : comps_)
        if (!(o.component(I) == g)) return false;
    for (const auto& [I, g] : o.comps_)
        if (!(component(I) == g)) return false;
    return true;
}

TwCochain TwCochain::operator+(const TwCochain& o) const {
    if (deg_ != o.deg_) throw std::invalid_argument("TwCochain: degree mismatch");
    TwCochain out = *this;
    for (const auto& [I, g] : o.comps_) out.set_component(I, out.component(I) + g);
    return out;
}

TwCochain TwCochain::operator-() const {
    TwCochain out(cover_, src_, tgt_, deg_);
    for (const auto& [I, g] : comps_) out.comps_[I] = -g;
    return out;
}

TwCochain TwCochain::operator-(const TwCochain& o) const { return *this + (-o); }

TwCochain delta(const TwCochain& u) {
    TwCochain out(u.cover(), u.source(), u.target(), u.total_degree() + 1);
    const RingedCover& cov = *u.cover();
    for (const auto& [I, g] : u.components()) {
        std::set<int> base = index_set(I);
        for (std::size_t pos = 1; pos <= I.size() - 1; ++pos) {
            for (int v = 0; v < cov.size(); ++v) {
                std::set<int> s = base;
                s.insert(v);
                if (!cov.in_nerve(s)) continue;
                MultiIndex J(I.begin(), I.begin() + pos);
                J.push_back(v);
                J.insert(J.end(), I.begin() + pos, I.end());
                GradedMap term = apply_hom(cov.restriction(base, s), g);
                if (pos % 2 == 1) term = -term;
                out.set_component(J, out.component(J) + term);
            }
        }
    }
    return out;
}

TwCochain tw_compose(const TwCochain& u, const TwCochain& v) {
    if (u.source()->size() != v.target()->size())
        throw std::invalid_argument("tw_compose: cover size mismatch");
    for (int i = 0; i < u.source()->size(); ++i)
        if (!(u.source()->at(i) == v.target()->at(i)))
            throw std::invalid_argument("tw_compose: middle locals mismatch");
    const RingedCover& cov = *u.cover();
    TwCochain out(u.cover(), v.source(), u.target(),
                  u.total_degree() + v.total_degree());
    for (const auto& [Iu, gu] : u.components()) {
        int p = static_cast<int>(Iu.size()) - 1;
        int q = u.total_degree() - p;  // left B-degree
        std::set<int> su = index_set(Iu);
        for (const auto& [Iv, gv] : v.components()) {
            if (Iu.back() != Iv.front()) continue;
            std::set<int> s = su;
            s.insert(Iv.begin(), Iv.end());
            if (!cov.in_nerve(s)) continue;
            int r = static_cast<int>(Iv.size()) - 1;
            MultiIndex I = Iu;
            I.insert(I.end(), Iv.begin() + 1, Iv.end());
            GradedMap a = apply_hom(cov.restriction(su, s), gu);
            GradedMap b = apply_hom(cov.restriction(index_set(Iv), s), gv);
            GradedMap term = graded_compose(a, b);
            if ((q * r) % 2 != 0) term = -term;
            if (!term.is_zero()) out.set_component(I, out.component(I) + term);
        }
    }
    return out;
}

ComplexObj TwPerfComplex::local_complex(int i) const {
    return ComplexObj(locals->at(i), local_diff(i), cover->ring_of_tuple({i}));
}

CheckReport mc_check_tw(const TwPerfComplex& t,
                        const std::map<int, HomotopyWitness>& witnesses) {
    CheckReport rep;
    if (t.a.total_degree() != 1) {
        rep.fail("a", "total degree is not 1");
        return rep;
    }
    // Maurer-Cartan: delta a + a.a, support walk is complete
    TwCochain residual = delta(t.a) + tw_compose(t.a, t.a);
    for (const auto& [I, r] : residual.components())
        if (!r.is_zero())
            rep.fail("MC" + tuple_str(I), "residual " + r.str());

    // local d^2 = 0 is the k=0 instance; only then run non-degeneracy
    for (int i = 0; i < t.cover->size(); ++i) {
        GradedMap d = t.local_diff(i);
        if (!graded_compose(d, d).is_zero()) continue;  // already reported above
        ComplexObj Ei = t.local_complex(i);
        GradedMap aii = t.a.component({i, i});
        std::optional<HomotopyWitness> w;
        auto it = witnesses.find(i);
        if (it != witnesses.end()) w = it->second;
        InvertReport ir = homotopy_invertible(aii, Ei, Ei, w);
        if (ir.status == InvertStatus::NotInvertible)
            rep.fail("a^{1,0}" + tuple_str({i, i}),
                     "not invertible up to homotopy: " + ir.detail);
        else if (ir.status == InvertStatus::Inconclusive)
            rep.fail("a^{1,0}" + tuple_str({i, i}), "inconclusive: " + ir.detail);
    }
    return rep;
}

TwMorphism tw_mor_diff(const TwMorphism& f, const TwPerfComplex& source,
                       const TwPerfComplex& target) {
    int m = f.u.total_degree();
    TwCochain d = delta(f.u) + tw_compose(target.a, f.u);
    TwCochain fa = tw_compose(f.u, source.a);
    d = (m % 2 == 0) ? d - fa : d + fa;
    return TwMorphism{std::move(d)};
}

TwPerfComplex line_bundle(CoverPtr cover,
                          const std::map<std::pair<int, int>, Scalar>& units) {
    const RingedCover& cov = *cover;
    auto locals = std::make_shared<TwLocals>();
    locals->modules.assign(cov.size(), GradedModule(std::map<int, int>{{0, 1}}));

    // collect transition units, filling g_ii = 1 and g_ji = g_ij^{-1}
    std::map<std::pair<int, int>, Scalar> g = units;
    for (const auto& [key, val] : units) {
        auto [i, j] = key;
        if (i < 0 || j < 0 || i >= cov.size() || j >= cov.size())
            throw std::invalid_argument("line_bundle: index out of range");
        if (!cov.in_nerve(index_set({i, j})))
            throw std::invalid_argument("line_bundle: pair not in the nerve");
        if (!(*val.ring() == *cov.ring_of_tuple({i, j})))
            throw std::invalid_argument("line_bundle: unit in the wrong ring");
        if (!val.is_unit())
            throw std::invalid_argument("line_bundle: transition entry " + val.str() +
                                        " is not a unit");
    }
    for (int i = 0; i < cov.size(); ++i) {
        Scalar one = Scalar::one(cov.ring_of_tuple({i}));
        auto it = g.find({i, i});
        if (it == g.end()) g.emplace(std::make_pair(i, i), one);
        else if (!(it->second == one))
            throw std::invalid_argument("line_bundle: g_ii != 1");
    }
    for (int i = 0; i < cov.size(); ++i)
        for (int j = 0; j < cov.size(); ++j) {
            if (i == j || !cov.in_nerve(index_set({i, j}))) continue;
            if (g.find({i, j}) == g.end()) {
                auto rev = g.find({j, i});
                if (rev == g.end())
                    throw std::invalid_argument("line_bundle: missing unit for pair (" +
                                                std::to_string(i) + "," +
                                                std::to_string(j) + ")");
                g.emplace(std::make_pair(i, j), rev->second.inverse());
            }
        }
    // cocycle on every tuple (i,j,k) whose set is in the nerve
    for (int i = 0; i < cov.size(); ++i)
        for (int j = 0; j < cov.size(); ++j)
            for (int k = 0; k < cov.size(); ++k) {
                std::set<int> s = index_set({i, j, k});
                if (!cov.in_nerve(s)) continue;
                RingHom rij = cov.restriction(index_set({i, j}), s);
                RingHom rjk = cov.restriction(index_set({j, k}), s);
                RingHom rik = cov.restriction(index_set({i, k}), s);
                Scalar lhs = rij.apply(g.at({i, j})) * rjk.apply(g.at({j, k}));
                Scalar rhs = rik.apply(g.at({i, k}));
                if (!(lhs == rhs))
                    throw std::invalid_argument("line_bundle: cocycle fails at " +
                                                tuple_str({i, j, k}));
            }

    TwCochain a(cover, locals, locals, 1);
    for (const auto& [key, val] : g) {
        auto [i, j] = key;
        GradedMap m(locals->at(j), locals->at(i), 0, cov.ring_of_tuple({i, j}));
        Matrix blk(cov.ring_of_tuple({i, j}), 1, 1);
        blk.set(0, 0, val);
        m.set_block(0, blk);
        a.set_component({i, j}, std::move(m));
    }
    return TwPerfComplex{cover, locals, std::move(a)};
}

CheckReport homotopy_relation_check(const TwPerfComplex& t, int i, int j) {
    CheckReport rep;
    const RingedCover& cov = *t.cover;
    std::set<int> s = index_set({i, j});
    if (!cov.in_nerve(s)) {
        rep.fail("pair", "pair is not in the nerve");
        return rep;
    }
    RingHom ri = cov.restriction({i}, s);
    GradedMap aii = apply_hom(ri, t.a.component({i, i}));
    std::set<int> sij = index_set({i, j});
    GradedMap aij = t.a.component({i, j});
    GradedMap aji = t.a.component({j, i});
    GradedMap prod = graded_compose(aij, aji);
    GradedMap a2 = t.a.component({i, j, i});
    GradedMap d0 = apply_hom(ri, t.local_diff(i));
    GradedMap rhs = graded_compose(d0, a2) + graded_compose(a2, d0);
    GradedMap lhs = aii - prod;
    if (!(lhs == rhs))
        rep.fail("relation" + tuple_str({i, j, i}),
                 "a_ii - a_ij a_ji differs from d(a^{2,-1}_{iji})");
    return rep;
}

}  // namespace twk
