#pragma once

#include "twk/complexobj.hpp"
#include "twk/cover.hpp"
#include "twk/report.hpp"

namespace twk {

/// Collection E_0..E_n of complexes over one ring: the object part of
/// the simplicial resolution levels.
struct SimplexFamily {
    std::vector<ComplexObj> objects;
    RingPtr ring;

    int size() const { return static_cast<int>(objects.size()) - 1; }  // n
    const ComplexObj& at(int i) const { return objects.at(i); }
    void validate() const;
    /// max_degree - min_degree over all nonzero members (0 when all zero)
    int degree_span() const;
    bool operator==(const SimplexFamily& o) const;
};

using FamilyPtr = std::shared_ptr<const SimplexFamily>;

/// Bigraded element between two families: components over nondecreasing
/// multi-indices (i_0 <= ... <= i_k), the component over a length-(k+1)
/// index being a degree (total - k) map E_{i_k} -> F_{i_0}.
class DgCochain {
public:
    DgCochain() = default;
    DgCochain(FamilyPtr source, FamilyPtr target, int total_degree);

    static DgCochain identity(FamilyPtr family);  // bidegree (0,0)

    const FamilyPtr& source() const { return src_; }
    const FamilyPtr& target() const { return tgt_; }
    int total_degree() const { return deg_; }

    const std::map<MultiIndex, GradedMap>& components() const { return comps_; }
    GradedMap component(const MultiIndex& I) const;  // zero map when absent
    void set_component(const MultiIndex& I, GradedMap g);

    bool is_zero() const;
    bool operator==(const DgCochain& o) const;
    DgCochain operator+(const DgCochain& o) const;
    DgCochain operator-(const DgCochain& o) const;
    DgCochain operator-() const;
    DgCochain scaled(const Scalar& c) const;

private:
    FamilyPtr src_, tgt_;
    int deg_ = 0;
    std::map<MultiIndex, GradedMap> comps_;
};

/// (D x)^{p,q+1}_I = (-1)^p d(x^{p,q}_I) + sum_{j=1}^{p-1} (-1)^j x_{I minus i_j};
/// raises the total degree by one.
DgCochain cochain_D(const DgCochain& x);

/// Shuffled multiplication: splits the index at every pivot with sign
/// (-1)^{(left B-degree)(right simplicial degree)}.
DgCochain shuffle_mul(const DgCochain& x, const DgCochain& y);

/// Object of Delta_n(B): a family plus phi components of total degree 1
/// in simplicial degrees k >= 1 satisfying the Maurer-Cartan equation.
struct SimplexObj {
    FamilyPtr family;
    DgCochain phi;  // source = target = family, total degree 1
};

/// Degree-m morphism data between two simplex objects.
struct SimplexMor {
    DgCochain theta;  // between the object families
};

/// Maurer-Cartan + side conditions (identity diagonals, degenerate
/// vanishing, homotopy invertibility of phi^{1,0}).  A supplied witness
/// for a pair (i,j) settles the invertibility of phi^{1,0}_{ij} exactly.
CheckReport mc_check_simplex(
    const SimplexObj& s,
    const std::map<std::pair<int, int>, HomotopyWitness>& witnesses = {});

/// d theta = D theta + psi . theta - (-1)^m theta . phi for
/// theta : (E,phi) -> (F,psi).
SimplexMor mor_diff(const SimplexMor& theta, const SimplexObj& source,
                    const SimplexObj& target);

/// Reindex a simplex object along a monotone sigma : [n] -> [m].
SimplexObj sigma_pushforward(const OrdinalMap& sigma, const SimplexObj& s);
DgCochain sigma_pushforward(const OrdinalMap& sigma, const DgCochain& x,
                            FamilyPtr new_source, FamilyPtr new_target);

/// Constant object: every E_i = E, phi^{1,0} = id, higher phi = 0.
SimplexObj constant_embed(const ComplexObj& E, int n);

/// Largest simplicial degree at which a component of this total degree
/// can be nonzero between the families.
int cochain_degree_bound(const SimplexFamily& src, const SimplexFamily& tgt,
                         int total_degree);

/// All nondecreasing multi-indices of length k+1 with entries in [0, n].
std::vector<MultiIndex> nondecreasing_indices(int n, int k);

}  // namespace twk
