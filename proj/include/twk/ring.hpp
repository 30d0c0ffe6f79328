#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace twk {

using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

enum class RingKind { Rationals, PrimeField, Laurent };

/// A Laurent variable. Non-invertible variables are restricted to
/// exponents >= 0, i.e. the ring contains Q[t] rather than Q[t,1/t].
struct LaurentVar {
    std::string name;
    bool invertible = true;

    bool operator==(const LaurentVar&) const = default;
};

/// Description of a coefficient ring: Q, F_p, or a Laurent ring over
/// one of those two (no deeper nesting).
struct RingDesc {
    RingKind kind = RingKind::Rationals;
    std::int64_t p = 0;                           // PrimeField modulus
    RingKind base_kind = RingKind::Rationals;     // Laurent base
    std::int64_t base_p = 0;
    std::vector<LaurentVar> vars;

    bool operator==(const RingDesc&) const = default;

    bool is_field() const { return kind != RingKind::Laurent; }
    std::size_t nvars() const { return vars.size(); }
    int var_index(const std::string& name) const;  // -1 if absent
    std::string str() const;

    static std::shared_ptr<const RingDesc> rationals();
    static std::shared_ptr<const RingDesc> prime_field(std::int64_t p);
    static std::shared_ptr<const RingDesc> laurent(
        std::shared_ptr<const RingDesc> base, std::vector<LaurentVar> vars);
};

using RingPtr = std::shared_ptr<const RingDesc>;

/// Base-field descriptor of a Laurent ring (the ring itself for fields).
RingPtr base_field_of(const RingPtr& ring);

using ExpVec = std::vector<std::int64_t>;

/// Exact element of one of the three ring kinds, always in canonical
/// form: reduced fractions, F_p values in [0,p), no zero Laurent terms.
class Scalar {
public:
    Scalar() = default;

    static Scalar zero(RingPtr ring);
    static Scalar one(RingPtr ring);
    static Scalar from_int(RingPtr ring, std::int64_t n);
    static Scalar from_rat(RingPtr ring, Rat q);           // Q or Laurent/Q base
    static Scalar monomial(RingPtr ring, const ExpVec& e, const Scalar& base_coeff);

    const RingPtr& ring() const { return ring_; }
    bool same_ring(const Scalar& o) const;

    bool is_zero() const;
    bool is_one() const;
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator-() const;

    bool is_unit() const;
    Scalar inverse() const;        // throws on non-units
    Scalar pow(std::int64_t e) const;

    // Laurent access
    const std::map<ExpVec, Scalar>& terms() const;   // coeffs in the base field
    Scalar coefficient(const ExpVec& e) const;       // base-field coefficient of e
    bool is_monomial() const;                        // exactly one term
    ExpVec monomial_exponent() const;

    // Field access
    const Rat& rat_value() const;
    std::int64_t fp_value() const;

    std::string str() const;

private:
    RingPtr ring_;
    Rat rat_;                              // Rationals payload
    std::int64_t fp_ = 0;                  // PrimeField payload
    std::map<ExpVec, Scalar> terms_;       // Laurent payload, base-field coeffs

    void canonicalize();
    friend struct ScalarOps;
};

std::int64_t mod_inverse(std::int64_t a, std::int64_t p);
bool is_prime(std::int64_t p);

/// Ring homomorphism determined by where the variables go.  Base
/// coefficients map by the canonical inclusion; a variable may be sent
/// to any target element, but applying the hom to a term with a
/// negative exponent of that variable requires the image to be a unit.
class RingHom {
public:
    RingHom() = default;
    RingHom(RingPtr src, RingPtr tgt, std::map<std::string, Scalar> images);

    static RingHom identity(RingPtr ring);

    const RingPtr& source() const { return src_; }
    const RingPtr& target() const { return tgt_; }
    const std::map<std::string, Scalar>& images() const { return images_; }

    Scalar apply(const Scalar& s) const;
    RingHom compose_after(const RingHom& inner) const;  // this o inner
    bool is_identity() const;

private:
    RingPtr src_, tgt_;
    std::map<std::string, Scalar> images_;

    Scalar embed_base(const Scalar& base_elem) const;
};

}  // namespace twk
