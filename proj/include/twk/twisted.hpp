#pragma once

#include "twk/complexobj.hpp"
#include "twk/cover.hpp"
#include "twk/report.hpp"

namespace twk {

using CoverPtr = std::shared_ptr<const RingedCover>;

/// One graded free module per cover index.
struct TwLocals {
    std::vector<GradedModule> modules;

    const GradedModule& at(int i) const { return modules.at(i); }
    int size() const { return static_cast<int>(modules.size()); }
    int degree_span() const;
};

using LocalsPtr = std::shared_ptr<const TwLocals>;

/// Bigraded cochain over a cover: a sparse family of graded maps
/// indexed by tuples whose underlying set lies in the nerve.  The
/// component over (i_0..i_p) maps E_{i_p} to F_{i_0}, has degree
/// (total - p) and entries in the ring of the tuple's underlying set.
class TwCochain {
public:
    TwCochain() = default;
    TwCochain(CoverPtr cover, LocalsPtr source, LocalsPtr target, int total_degree);

    static TwCochain identity(CoverPtr cover, LocalsPtr locals);

    const CoverPtr& cover() const { return cover_; }
    const LocalsPtr& source() const { return src_; }
    const LocalsPtr& target() const { return tgt_; }
    int total_degree() const { return deg_; }

    const std::map<MultiIndex, GradedMap>& components() const { return comps_; }
    GradedMap component(const MultiIndex& I) const;  // zero when absent
    void set_component(const MultiIndex& I, GradedMap g);

    bool is_zero() const;
    bool operator==(const TwCochain& o) const;
    TwCochain operator+(const TwCochain& o) const;
    TwCochain operator-(const TwCochain& o) const;
    TwCochain operator-() const;

private:
    CoverPtr cover_;
    LocalsPtr src_, tgt_;
    int deg_ = 0;
    std::map<MultiIndex, GradedMap> comps_;
};

/// Cech-style differential with inner index deletions only:
/// (delta u)_{i_0..i_{p+1}} = sum_{k=1}^{p} (-1)^k u_{..hat i_k..} restricted.
TwCochain delta(const TwCochain& u);

/// Shuffled composition; both factors are restricted to the ring of the
/// full tuple before multiplying.
TwCochain tw_compose(const TwCochain& u, const TwCochain& v);

/// Twisted (perfect) complex: locals E_i plus the Maurer-Cartan element
/// a = sum a^{k,1-k}, including the local differentials a^{0,1}.
struct TwPerfComplex {
    CoverPtr cover;
    LocalsPtr locals;
    TwCochain a;  // total degree 1, endomorphism cochain of locals

    GradedMap local_diff(int i) const { return a.component({i}); }
    ComplexObj local_complex(int i) const;  // (E_i, a^{0,1}_i); validates d^2 = 0
};

/// Degree-m morphism data between twisted complexes.
struct TwMorphism {
    TwCochain u;
};

/// Maurer-Cartan residual (delta a + a.a = 0 over every tuple, the k=0
/// instance being d^2 = 0) plus non-degeneracy of the a^{1,0}_{ii}.
CheckReport mc_check_tw(const TwPerfComplex& t,
                        const std::map<int, HomotopyWitness>& witnesses = {});

/// d f = delta f + b.f - (-1)^m f.a for f : (E,a) -> (F,b).
TwMorphism tw_mor_diff(const TwMorphism& f, const TwPerfComplex& source,
                       const TwPerfComplex& target);

/// Rank-one twisted complex in degree 0 built from transition units;
/// validates g_ii = 1, unit-ness and the cocycle identity on nerve triples.
TwPerfComplex line_bundle(CoverPtr cover,
                          const std::map<std::pair<int, int>, Scalar>& units);

/// Verifies the k=2 Maurer-Cartan instance at (i,j,i) in the rearranged
/// form a_{ii} - a_{ij} a_{ji} = d(a^{2,-1}_{iji}).
CheckReport homotopy_relation_check(const TwPerfComplex& t, int i, int j);

}  // namespace twk
