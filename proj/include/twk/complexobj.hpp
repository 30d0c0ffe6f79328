#pragma once

#include "twk/graded.hpp"

#include <optional>

namespace twk {

/// Bounded complex of finite free modules: graded module plus a
/// degree +1 differential squaring to zero.
struct ComplexObj {
    GradedModule module;
    GradedMap diff;  // degree +1, source = target = module
    RingPtr ring;

    ComplexObj() = default;
    ComplexObj(GradedModule m, GradedMap d, RingPtr r);

    static ComplexObj zero_diff(GradedModule m, RingPtr r);

    void validate() const;  // shapes and d o d = 0
    bool operator==(const ComplexObj& o) const;
};

/// Cohomology dimensions per degree, over Q or F_p.
std::map<int, int> complex_cohomology_dims(const ComplexObj& c);

/// Dimension of the image of H(f) per degree, for a chain map f : A -> B
/// over a field.
std::map<int, int> induced_map_image_dims(const GradedMap& f, const ComplexObj& A,
                                          const ComplexObj& B);

/// Explicit homotopy-inverse witness: g with f.g - id = d h and
/// g.f - id = d h' in the hom complexes.
struct HomotopyWitness {
    GradedMap g;        // degree 0, target -> source
    GradedMap h;        // degree -1, endomorphism data of the target
    GradedMap h_prime;  // degree -1, endomorphism data of the source
};

enum class InvertStatus { Invertible, NotInvertible, Inconclusive };

struct InvertReport {
    InvertStatus status = InvertStatus::Invertible;
    std::string detail;
};

/// Decide whether a closed degree-0 chain map f : A -> B is invertible
/// up to homotopy.  Over fields this checks that H(f) is an isomorphism.
/// Over Laurent rings: a supplied witness is verified exactly; for zero
/// differentials strict invertibility (unit block determinants) is
/// decided exactly; for monomial weight-homogeneous data a single
/// weight-slice field check decides; anything else is Inconclusive.
InvertReport homotopy_invertible(const GradedMap& f, const ComplexObj& A,
                                 const ComplexObj& B,
                                 const std::optional<HomotopyWitness>& witness = {});

/// Verify a witness exactly (any ring).
bool verify_homotopy_witness(const GradedMap& f, const ComplexObj& A,
                             const ComplexObj& B, const HomotopyWitness& w);

}  // namespace twk
