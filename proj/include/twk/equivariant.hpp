#pragma once

#include "twk/action.hpp"
#include "twk/complexobj.hpp"
#include "twk/report.hpp"

#include <map>
#include <memory>

namespace twk {

using ActionPtr = std::shared_ptr<const GroupAction>;

/// One complex per carrier point, all over the same ring.
struct EqLocals {
    std::vector<GradedModule> modules;   // per point x
    std::vector<GradedMap> diffs;        // degree +1 endomap per point
    RingPtr ring;

    int size() const { return static_cast<int>(modules.size()); }
    ComplexObj complex_at(int x) const;  // validates d^2 = 0
    int degree_span() const;
};

using EqLocalsPtr = std::shared_ptr<const EqLocals>;

/// Bigraded data over the simplicial object [X/G]: the component at
/// (x, g_1..g_k) is a degree (total - k) map E_{x.g_1...g_k} -> F_x.
class EqCochain {
public:
    EqCochain() = default;
    EqCochain(ActionPtr action, EqLocalsPtr source, EqLocalsPtr target, int total_degree);

    static EqCochain identity(ActionPtr action, EqLocalsPtr locals);

    const ActionPtr& action() const { return act_; }
    const EqLocalsPtr& source() const { return src_; }
    const EqLocalsPtr& target() const { return tgt_; }
    int total_degree() const { return deg_; }

    const std::map<QuotientCell, GradedMap>& components() const { return comps_; }
    GradedMap component(const QuotientCell& c) const;
    void set_component(const QuotientCell& c, GradedMap g);
    int moved_point(const QuotientCell& c) const;  // x.g_1...g_k

    bool is_zero() const;
    bool operator==(const EqCochain& o) const;
    EqCochain operator+(const EqCochain& o) const;
    EqCochain operator-(const EqCochain& o) const;
    EqCochain operator-() const;

private:
    ActionPtr act_;
    EqLocalsPtr src_, tgt_;
    int deg_ = 0;
    std::map<QuotientCell, GradedMap> comps_;
};

/// (D x)^k = (-1)^k d_B(x^k) + sum_{j=1}^{k-1} (-1)^j (d_j pullback of x^{k-1}).
EqCochain eq_D(const EqCochain& x);

/// Shuffle along front/back faces:
/// (u.v)^k(x,g) = sum_l (-1)^{q r} u^l(x,g_1..g_l) o v^{k-l}(x.g_1..g_l, g_{l+1}..g_k).
EqCochain eq_compose(const EqCochain& u, const EqCochain& v);

/// G-equivariant complex: per-point complexes plus the gluing maps
/// phi^{k,1-k} over X x G^k.
struct EquivariantComplex {
    ActionPtr action;
    EqLocalsPtr locals;
    EqCochain phi;  // total degree 1, simplicial degrees >= 1
};

struct EquivariantMorphism {
    EqCochain theta;
};

/// Per-point complexes pulled back along rho_{k,p} (front) or tau_{k,p}
/// (back): the module seen over each cell of X x G^k.
std::map<QuotientCell, GradedModule> rho_pullback_modules(const EquivariantComplex& e,
                                                          int k, int p);
std::map<QuotientCell, GradedModule> tau_pullback_modules(const EquivariantComplex& e,
                                                          int k, int p);

/// Maurer-Cartan componentwise over X x G^k plus the unit condition on
/// codegeneracy slots and homotopy invertibility of phi^{1,0}.
CheckReport mc_check_equiv(const EquivariantComplex& e);

/// d theta = D theta + (target MC).theta - (-1)^m theta.(source MC).
EquivariantMorphism mor_diff_equiv(const EquivariantMorphism& theta,
                                   const EquivariantComplex& source,
                                   const EquivariantComplex& target);

/// Strict equivariant structure from a classical cocycle: phi closed,
/// degree 0, strictly invertible, with d_1* phi = d_2* phi o d_0* phi and
/// s_0* phi = id.  Throws on any violated condition.
EquivariantComplex strict_from_cocycle(ActionPtr action, EqLocalsPtr locals,
                                       const std::map<QuotientCell, GradedMap>& phi1);

}  // namespace twk
