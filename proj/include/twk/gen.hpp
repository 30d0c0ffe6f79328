#pragma once

#include "twk/dgres.hpp"
#include "twk/twisted.hpp"

#include <random>

namespace twk::gen {

/// Deterministic source for randomized suites; the same seed always
/// reproduces the same data.
struct Rng {
    std::mt19937_64 eng;

    explicit Rng(std::uint64_t seed) : eng(seed) {}
    int uniform(int lo, int hi);  // inclusive
    bool chance(double p);
};

Scalar random_scalar(Rng& rng, const RingPtr& ring, int max_exp = 2, int max_terms = 2);
Scalar random_nonzero_scalar(Rng& rng, const RingPtr& ring, int max_exp = 2);
Scalar random_unit(Rng& rng, const RingPtr& ring, int max_exp = 2);

Matrix random_matrix(Rng& rng, const RingPtr& ring, int rows, int cols,
                     double density = 0.7, int max_exp = 2);
/// Product of elementary row operations: exactly invertible, inverse returned too.
std::pair<Matrix, Matrix> random_invertible(Rng& rng, const RingPtr& ring, int n,
                                            int steps = 4, int max_exp = 1);

GradedModule random_module(Rng& rng, int min_deg, int max_deg, int max_rank);
GradedMap random_graded_map(Rng& rng, const GradedModule& src, const GradedModule& tgt,
                            int degree, const RingPtr& ring, double density = 0.6,
                            int max_exp = 2);

/// Bounded complex with an exactly squaring differential: direct sum of
/// shifted point and cone summands, conjugated by a random automorphism.
ComplexObj random_complex(Rng& rng, const RingPtr& ring, int min_deg, int max_deg,
                          int max_rank);

/// Downward-closed random nerve on n_opens indices, one ring everywhere,
/// identity restrictions.
CoverPtr random_cover(Rng& rng, int n_opens, const RingPtr& ring);

/// Random bigraded data of the given total degree (no equations imposed).
DgCochain random_dg_cochain(Rng& rng, const FamilyPtr& src, const FamilyPtr& tgt,
                            int total_degree, double density = 0.4, int max_exp = 1);
TwCochain random_tw_cochain(Rng& rng, const CoverPtr& cover, const LocalsPtr& src,
                            const LocalsPtr& tgt, int total_degree, double density = 0.4,
                            int max_exp = 1);

/// Invertible degree-0 gauge u = id + n with n supported in simplicial
/// degrees >= 1; when delta_compatible, n vanishes on diagonal pairs and
/// adjacent-repeat tuples so Delta-side conditions survive.  Returns u
/// and its exact inverse.
std::pair<TwCochain, TwCochain> random_gauge(Rng& rng, const CoverPtr& cover,
                                             const LocalsPtr& locals,
                                             bool delta_compatible, double density = 0.5,
                                             int max_exp = 1);

/// u a u^{-1} - (delta u) u^{-1}: sends Maurer-Cartan elements to
/// Maurer-Cartan elements.
TwCochain gauge_transform(const TwCochain& a, const TwCochain& u, const TwCochain& uinv);

struct RandomTwistedOptions {
    int max_rank = 2;
    int min_deg = 0, max_deg = 0;   // amplitude of the locals
    bool delta_compatible = true;   // keep diagonal slots id, degenerate slots 0
    bool gauge = true;
};

/// Random valid twisted complex: a coboundary line-bundle-style seed on
/// a shared local complex, then a random gauge.
TwPerfComplex random_twisted(Rng& rng, const CoverPtr& cover,
                             const RandomTwistedOptions& opt = {});

/// Random valid simplex object: constant embedding twisted by a gauge.
SimplexObj random_simplex_obj(Rng& rng, const RingPtr& ring, int n, int min_deg,
                              int max_deg, int max_rank);

/// In-place single-entry perturbation; returns a human-readable label of
/// the touched slot.
std::string perturb_entry(Rng& rng, TwPerfComplex& t);
std::string perturb_entry(Rng& rng, SimplexObj& s);

}  // namespace twk::gen
