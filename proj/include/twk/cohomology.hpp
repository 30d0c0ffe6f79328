#pragma once

#include "twk/twisted.hpp"

#include <limits>
#include <optional>

namespace twk {

struct CohomRow {
    int degree = 0;
    ExpVec weight;  // empty for field backends / unweighted reports
    int dim = 0;
};

struct CohomologyReport {
    bool weighted = false;
    bool window_exact = true;
    std::string note;
    std::vector<CohomRow> rows;  // sorted by (degree, weight), zero rows omitted

    int dim_at(int degree) const;                        // summed over weights
    int dim_at(int degree, const ExpVec& weight) const;
};

struct AssembleOptions {
    int weight_window = -1;  // < 0: 2 * (max |exponent| in the data) + 4
    // degree range of reported cohomology; INT_MIN/INT_MAX pick the
    // natural range of the local data
    int deg_lo = std::numeric_limits<int>::min();
    int deg_hi = std::numeric_limits<int>::max();
    unsigned perm_seed = 0;  // nonzero: shuffle slot enumeration per block
};

/// Exact finite-dimensional model of the Hom complex between two
/// twisted complexes: slot bases per (total degree, weight) and the
/// matrices of tw_mor_diff evaluated on basis vectors.
struct AssembledComplex {
    RingPtr base;  // coefficient field of the matrices
    bool weighted = false;
    bool window_exact = true;
    bool d2_ok = true;
    std::string note;
    int deg_lo = 0, deg_hi = 0;
    int window = 0;
    std::vector<ExpVec> weights;  // distinct weight labels present
    std::map<std::pair<int, ExpVec>, int> dims;     // slot counts
    std::map<std::pair<int, ExpVec>, Matrix> diffs; // (m,w) -> block of d^m
};

AssembledComplex assemble_hom(const TwPerfComplex& a, const TwPerfComplex& b,
                              const AssembleOptions& opt = {});

CohomologyReport cohomology_dims(const AssembledComplex& c);

/// Independent classical Cech oracle for a line bundle given by
/// transition units: strictly increasing tuples, full alternating
/// differential including the 0th and last faces (the 0th face
/// retrivializes through g), dimensions per (degree, weight).
CohomologyReport cech_oracle(const CoverPtr& cover,
                             const std::map<std::pair<int, int>, Scalar>& units,
                             int weight_window);

/// Global monomial-weight structure of a cover: one integer weight
/// vector per ring variable, consistent with all restriction maps.
/// Available when the nerve has a unique maximal set and all
/// restriction images are unit monomials.
struct CoverWeights {
    bool ok = false;
    int rank = 0;
    std::map<std::set<int>, std::vector<ExpVec>> var_weights;
    std::string why_not;

    ExpVec weight_of(const std::set<int>& s, const ExpVec& exponents) const;
    /// unique exponent vector of the given global weight, respecting the
    /// ring's non-invertible variable bounds; nullopt when none
    std::optional<ExpVec> exponent_of(const RingedCover& c, const std::set<int>& s,
                                      const ExpVec& weight) const;
};

CoverWeights compute_cover_weights(const RingedCover& c);

}  // namespace twk
