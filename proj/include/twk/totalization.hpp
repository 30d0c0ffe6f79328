#pragma once

#include "twk/action.hpp"
#include "twk/dgres.hpp"
#include "twk/split.hpp"
#include "twk/twisted.hpp"

namespace twk {

/// Strict cosimplicial backend: levelwise sites with structure maps
/// realized by tuple reindexing (Cech) or by the [X/G] formulas.
struct CosimplicialBackend {
    enum class Kind { Cech, Equivariant };
    Kind kind = Kind::Cech;
    CoverPtr cover;                              // Cech
    std::shared_ptr<const GroupAction> action;   // Equivariant

    static CosimplicialBackend cech(CoverPtr cover);
    static CosimplicialBackend equivariant(std::shared_ptr<const GroupAction> action);

    std::vector<MultiIndex> level_sites(int n) const;
    /// site map induced by sigma : [n] -> [m], from level-m sites to
    /// level-n sites (the functor is contravariant on data, covariant here)
    MultiIndex site_map(const OrdinalMap& sigma, const MultiIndex& site_m) const;
};

/// Cosimplicial identities on structure maps, by enumeration up to nmax.
CheckReport verify_cosimplicial_identities(const CosimplicialBackend& b, int nmax);

/// Object of Tot over a Cech backend: level-0 complexes E_i plus the
/// standard morphisms phi^{k,1-k}, stored per level-k site tuple.
struct TotObject {
    CoverPtr cover;
    LocalsPtr locals;
    std::vector<GradedMap> local_diffs;  // degree +1 endomaps, one per index
    TwCochain phi;                       // total degree 1, simplicial degrees >= 1

    ComplexObj local_complex(int i) const;
    /// restricted complex E_{T_i} over ring(T), the backend's d^n_i(E) at site T
    ComplexObj component_at(const MultiIndex& site, int i) const;
};

/// Degree-m morphism data: standard components theta^{k,m-k} per site.
struct TotMorphism {
    TwCochain theta;  // simplicial degrees >= 0
};

/// d^n_i(E) on every level-n site.
std::vector<std::pair<MultiIndex, ComplexObj>> object_component(const TotObject& t,
                                                                int n, int i);

/// sigma_* expansion of the standard morphism along a nondecreasing
/// multi-index I into [n]: the level-n data whose value at site T is
/// phi^{|I|-1} at (T_{I_0}..T_{I_k}) restricted to ring(T).
std::vector<std::pair<MultiIndex, GradedMap>> expand_standard(const TotObject& t,
                                                              const MultiIndex& I,
                                                              int n);

/// Maurer-Cartan per level and site plus the degenerate-slot conditions
/// (identity on diagonal pairs, vanishing on adjacent-repeat tuples for
/// k >= 2) and homotopy invertibility of phi^{1,0}.
CheckReport mc_check_tot(const TotObject& t);

/// Morphism differential in levelwise form; exact counterpart of
/// tw_mor_diff under the correspondence below.
TotMorphism tot_mor_diff(const TotMorphism& theta, const TotObject& source,
                         const TotObject& target);

/// Componentwise identification with twisted complexes: a^{0,1} are the
/// local differentials, a^{k,1-k} the standard-morphism site components.
TwPerfComplex tot_to_twisted(const TotObject& t);
TotObject twisted_to_tot(const TwPerfComplex& w);
TwMorphism tot_to_twisted_mor(const TotMorphism& m, const TwPerfComplex& shape);
TotMorphism twisted_to_tot_mor(const TwMorphism& m, const TotObject& shape);

/// Matching-object decomposition of level k for a split backend: the
/// free part indexed by nondegenerate cells and one lower-level factor
/// per matching surjection; the matching map is the projection.
struct MatchingWitness {
    int level = 0;
    std::vector<std::string> free_cells;
    // per matching surjection: target level and its nondegenerate cells
    std::vector<std::pair<OrdinalMap, std::vector<std::string>>> matching_factors;
    bool partition_ok = false;       // blocks partition the level sites
    bool projection_surjective = false;
    std::size_t level_site_count = 0;
};

MatchingWitness matching_witness(const CosimplicialBackend& b, int k);

}  // namespace twk
