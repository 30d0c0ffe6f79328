#include "twk/equivariant.hpp"
#include "twk/cover.hpp"

#include <algorithm>

namespace twk {

ComplexObj EqLocals::complex_at(int x) const {
    return ComplexObj(modules.at(x), diffs.at(x), ring);
}

int EqLocals::degree_span() const {
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

EqCochain::EqCochain(ActionPtr action, EqLocalsPtr source, EqLocalsPtr target,
                     int total_degree)
    : act_(std::move(action)), src_(std::move(source)), tgt_(std::move(target)),
      deg_(total_degree) {
    if (!act_ || !src_ || !tgt_) throw std::invalid_argument("EqCochain: null parts");
    if (src_->size() != act_->carrier_size || tgt_->size() != act_->carrier_size)
        throw std::invalid_argument("EqCochain: locals do not match the carrier");
    if (!(*src_->ring == *tgt_->ring))
        throw std::invalid_argument("EqCochain: mixed rings");
}

EqCochain EqCochain::identity(ActionPtr action, EqLocalsPtr locals) {
    EqCochain u(action, locals, locals, 0);
    for (int x = 0; x < u.act_->carrier_size; ++x)
        u.set_component({x}, GradedMap::identity(locals->modules.at(x), locals->ring));
    return u;
}

int EqCochain::moved_point(const QuotientCell& c) const {
    int x = c.at(0);
    for (std::size_t i = 1; i < c.size(); ++i) x = act_->apply(x, c[i]);
    return x;
}

GradedMap EqCochain::component(const QuotientCell& c) const {
    auto it = comps_.find(c);
    if (it != comps_.end()) return it->second;
    int k = static_cast<int>(c.size()) - 1;
    return GradedMap::zero(src_->modules.at(moved_point(c)), tgt_->modules.at(c.at(0)),
                           deg_ - k, src_->ring);
}

void EqCochain::set_component(const QuotientCell& c, GradedMap g) {
    if (c.empty()) throw std::invalid_argument("EqCochain: empty cell");
    if (c[0] < 0 || c[0] >= act_->carrier_size)
        throw std::invalid_argument("EqCochain: carrier point out of range");
    for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i] < 0 || c[i] >= act_->group.order())
            throw std::invalid_argument("EqCochain: group element out of range");
    int k = static_cast<int>(c.size()) - 1;
    if (g.degree() != deg_ - k)
        throw std::invalid_argument("EqCochain: component degree mismatch");
    if (!(g.source() == src_->modules.at(moved_point(c))) ||
        !(g.target() == tgt_->modules.at(c[0])))
        throw std::invalid_argument("EqCochain: component endpoints mismatch");
    if (!(*g.ring() == *src_->ring))
        throw std::invalid_argument("EqCochain: component ring mismatch");
    if (g.is_zero()) comps_.erase(c);
    else comps_[c] = std::move(g);
}

bool EqCochain::is_zero() const {
    for (const auto& [c, g] : comps_)
        if (!g.is_zero()) return false;
    return true;
}

bool EqCochain::operator==(const EqCochain& o) const {
    if (deg_ != o.deg_) return false;
    for (const auto& [c, g] : comps_)
        if (!(o.component(c) == g)) return false;
    for (const auto& [c, g] : o.comps_)
        if (!(component(c) == g)) return false;
    return true;
}

EqCochain EqCochain::operator+(const EqCochain& o) const {
    if (deg_ != o.deg_) throw std::invalid_argument("EqCochain: degree mismatch");
    EqCochain out = *this;
    for (const auto& [c, g] : o.comps_) out.set_component(c, out.component(c) + g);
    return out;
}

EqCochain EqCochain::operator-() const {
    EqCochain out(act_, src_, tgt_, deg_);
    for (const auto& [c, g] : comps_) out.comps_[c] = -g;
    return out;
}

EqCochain EqCochain::operator-(const EqCochain& o) const { return *this + (-o); }

EqCochain eq_D(const EqCochain& x) {
    EqCochain out(x.action(), x.source(), x.target(), x.total_degree() + 1);
    const GroupAction& act = *x.action();
    for (const auto& [c, g] : x.components()) {
        int k = static_cast<int>(c.size()) - 1;
        // (-1)^k d_B on the same cell
        GradedMap db = hom_differential(g, x.target()->diffs.at(c[0]),
                                        x.source()->diffs.at(out.moved_point(c)));
        if (k % 2 == 1) db = -db;
        if (!db.is_zero()) out.set_component(c, out.component(c) + db);
        // inner-face pullbacks: cells J of level k+1 with d_j(J) = c split
        // the entry c_j into an arbitrary product alpha.beta = c_j
        for (int j = 1; j <= k; ++j)
            for (int alpha = 0; alpha < act.group.order(); ++alpha)
                for (int beta = 0; beta < act.group.order(); ++beta) {
                    if (act.group.mul(alpha, beta) != c[j]) continue;
                    QuotientCell J(c.begin(), c.begin() + j);
                    J.push_back(alpha);
                    J.push_back(beta);
                    J.insert(J.end(), c.begin() + j + 1, c.end());
                    GradedMap term = (j % 2 == 1) ? -g : g;
                    out.set_component(J, out.component(J) + term);
                }
    }
    return out;
}

EqCochain eq_compose(const EqCochain& u, const EqCochain& v) {
    for (int x = 0; x < u.source()->size(); ++x)
        if (!(u.source()->modules.at(x) == v.target()->modules.at(x)))
            throw std::invalid_argument("eq_compose: middle locals mismatch");
    EqCochain out(u.action(), v.source(), u.target(),
                  u.total_degree() + v.total_degree());
    for (const auto& [cu, gu] : u.components()) {
        int l = static_cast<int>(cu.size()) - 1;
        int q = u.total_degree() - l;
        int xu = u.moved_point(cu);
        for (const auto& [cv, gv] : v.components()) {
            if (cv[0] != xu) continue;
            int r = static_cast<int>(cv.size()) - 1;
            QuotientCell c = cu;
            c.insert(c.end(), cv.begin() + 1, cv.end());
            GradedMap term = graded_compose(gu, gv);
            if ((q * r) % 2 != 0) term = -term;
            if (!term.is_zero()) out.set_component(c, out.component(c) + term);
        }
    }
    return out;
}

std::map<QuotientCell, GradedModule> rho_pullback_modules(const EquivariantComplex& e,
                                                          int k, int p) {
    if (p > k) throw std::invalid_argument("rho_pullback_modules: p > k");
    std::map<QuotientCell, GradedModule> out;
    for (const auto& c : quotient_level(*e.action, k))
        out[c] = e.locals->modules.at(front_face(*e.action, p, c)[0]);
    return out;
}

std::map<QuotientCell, GradedModule> tau_pullback_modules(const EquivariantComplex& e,
                                                          int k, int p) {
    if (p > k) throw std::invalid_argument("tau_pullback_modules: p > k");
    std::map<QuotientCell, GradedModule> out;
    for (const auto& c : quotient_level(*e.action, k))
        out[c] = e.locals->modules.at(back_face(*e.action, p, c)[0]);
    return out;
}

CheckReport mc_check_equiv(const EquivariantComplex& e) {
    CheckReport rep;
    const GroupAction& act = *e.action;
    if (e.phi.total_degree() != 1) {
        rep.fail("phi", "total degree is not 1");
        return rep;
    }
    for (int x = 0; x < act.carrier_size; ++x) {
        const GradedMap& d = e.locals->diffs.at(x);
        if (!graded_compose(d, d).is_zero())
            rep.fail("d at point " + std::to_string(x), "d o d != 0");
    }
    for (const auto& [c, g] : e.phi.components())
        if (c.size() == 1)
            rep.fail("phi" + tuple_str(c), "simplicial degree 0 component present");

    // unit condition on codegeneracy slots: phi^{1,0}(x, e) = id
    for (int x = 0; x < act.carrier_size; ++x) {
        GradedMap u = e.phi.component({x, act.group.identity()});
        if (!(u == GradedMap::identity(e.locals->modules.at(x), e.locals->ring)))
            rep.fail("phi^{1,0}(" + std::to_string(x) + ",e)", "not the identity");
    }

    // Maurer-Cartan residual; support walk is complete
    EqCochain residual = eq_D(e.phi) + eq_compose(e.phi, e.phi);
    for (const auto& [c, r] : residual.components())
        if (!r.is_zero())
            rep.fail("MC" + tuple_str(c), "residual " + r.str());

    // non-degeneracy of phi^{1,0} at every (x, g)
    for (int x = 0; x < act.carrier_size; ++x) {
        if (!graded_compose(e.locals->diffs.at(x), e.locals->diffs.at(x)).is_zero())
            continue;
        for (int g = 0; g < act.group.order(); ++g) {
            int y = act.apply(x, g);
            if (!graded_compose(e.locals->diffs.at(y), e.locals->diffs.at(y)).is_zero())
                continue;
            GradedMap f = e.phi.component({x, g});
            InvertReport ir =
                homotopy_invertible(f, e.locals->complex_at(y), e.locals->complex_at(x));
            if (ir.status == InvertStatus::NotInvertible)
                rep.fail("phi^{1,0}(" + std::to_string(x) + "," + std::to_string(g) + ")",
                         "not homotopy invertible: " + ir.detail);
            else if (ir.status == InvertStatus::Inconclusive)
                rep.fail("phi^{1,0}(" + std::to_string(x) + "," + std::to_string(g) + ")",
                         "inconclusive: " + ir.detail);
        }
    }
    return rep;
}

EquivariantMorphism mor_diff_equiv(const EquivariantMorphism& theta,
                                   const EquivariantComplex& source,
                                   const EquivariantComplex& target) {
    int m = theta.theta.total_degree();
    EqCochain d = eq_D(theta.theta) + eq_compose(target.phi, theta.theta);
    EqCochain tp = eq_compose(theta.theta, source.phi);
    d = (m % 2 == 0) ? d - tp : d + tp;
    return EquivariantMorphism{std::move(d)};
}

EquivariantComplex strict_from_cocycle(ActionPtr action, EqLocalsPtr locals,
                                       const std::map<QuotientCell, GradedMap>& phi1) {
    const GroupAction& act = *action;
    EqCochain phi(action, locals, locals, 1);
    for (const auto& [c, g] : phi1) {
        if (c.size() != 2)
            throw std::invalid_argument("strict_from_cocycle: phi must live over X x G");
        phi.set_component(c, g);
    }
    // s_0* phi = id
    for (int x = 0; x < act.carrier_size; ++x)
        if (!(phi.component({x, act.group.identity()}) ==
              GradedMap::identity(locals->modules.at(x), locals->ring)))
            throw std::invalid_argument("strict_from_cocycle: s_0* phi != id at point " +
                                        std::to_string(x));
    for (int x = 0; x < act.carrier_size; ++x)
        for (int g = 0; g < act.group.order(); ++g) {
            int y = act.apply(x, g);
            GradedMap f = phi.component({x, g});
            // closed
            if (!hom_differential(f, locals->diffs.at(x), locals->diffs.at(y)).is_zero())
                throw std::invalid_argument("strict_from_cocycle: phi not closed");
            // strictly invertible blockwise
            if (!(locals->modules.at(x) == locals->modules.at(y)))
                throw std::invalid_argument("strict_from_cocycle: ranks differ along the action");
            for (const auto& [deg, blk] : f.blocks())
                if (!determinant(blk).is_unit())
                    throw std::invalid_argument(
                        "strict_from_cocycle: phi block not invertible");
            for (const auto& [deg, rk] : locals->modules.at(x).ranks())
                if (f.block(deg).is_zero() && rk > 0)
                    throw std::invalid_argument(
                        "strict_from_cocycle: phi block not invertible");
            // cocycle on X x G^2
            for (int h = 0; h < act.group.order(); ++h) {
                GradedMap lhs = phi.component({x, act.group.mul(g, h)});
                GradedMap rhs =
                    graded_compose(phi.component({x, g}), phi.component({y, h}));
                if (!(lhs == rhs))
                    throw std::invalid_argument("strict_from_cocycle: cocycle fails at (" +
                                                std::to_string(x) + "," + std::to_string(g) +
                                                "," + std::to_string(h) + ")");
            }
        }
    return EquivariantComplex{std::move(action), std::move(locals), std::move(phi)};
}

}  // namespace twk
