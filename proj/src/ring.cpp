#include "twk/ring.hpp"

#include <algorithm>
#include <sstream>

namespace twk {

bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
    // extended Euclid; requires gcd(a,p)=1
    std::int64_t t = 0, newt = 1, r = p, newr = a % p;
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::int64_t tmp = t - q * newt;
        t = newt; newt = tmp;
        tmp = r - q * newr;
        r = newr; newr = tmp;
    }
    if (r != 1) throw std::invalid_argument("mod_inverse: not invertible");
    return ((t % p) + p) % p;
}

int RingDesc::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i].name == name) return static_cast<int>(i);
    return -1;
}

std::string RingDesc::str() const {
    switch (kind) {
        case RingKind::Rationals: return "Q";
        case RingKind::PrimeField: return "F" + std::to_string(p);
        case RingKind::Laurent: {
            std::string base = base_kind == RingKind::Rationals
                                   ? "Q"
                                   : "F" + std::to_string(base_p);
            std::string v;
            for (const auto& var : vars) {
                if (!v.empty()) v += ",";
                v += var.name;
                if (!var.invertible) v += ">=0";
            }
            return "laurent(" + base + ",[" + v + "])";
        }
    }
    return "?";
}

RingPtr RingDesc::rationals() {
    static RingPtr r = [] {
        auto d = std::make_shared<RingDesc>();
        d->kind = RingKind::Rationals;
        return d;
    }();
    return r;
}

RingPtr RingDesc::prime_field(std::int64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("prime_field: p not prime");
    auto d = std::make_shared<RingDesc>();
    d->kind = RingKind::PrimeField;
    d->p = p;
    return d;
}

RingPtr RingDesc::laurent(RingPtr base, std::vector<LaurentVar> vars) {
    if (!base || base->kind == RingKind::Laurent)
        throw std::invalid_argument("laurent: base must be Q or F_p");
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j)
            if (vars[i].name == vars[j].name)
                throw std::invalid_argument("laurent: duplicate variable name");
    auto d = std::make_shared<RingDesc>();
    d->kind = RingKind::Laurent;
    d->base_kind = base->kind;
    d->base_p = base->p;
    d->vars = std::move(vars);
    return d;
}

RingPtr base_field_of(const RingPtr& ring) {
    if (ring->kind != RingKind::Laurent) return ring;
    if (ring->base_kind == RingKind::Rationals) return RingDesc::rationals();
    return RingDesc::prime_field(ring->base_p);
}

static void require_ring(const RingPtr& r) {
    if (!r) throw std::invalid_argument("Scalar: null ring");
}

bool Scalar::same_ring(const Scalar& o) const {
    return ring_ && o.ring_ && (*ring_ == *o.ring_);
}

static void check_match(const Scalar& a, const Scalar& b) {
    if (!a.same_ring(b)) throw std::invalid_argument("Scalar: ring mismatch");
}

Scalar Scalar::zero(RingPtr ring) {
    require_ring(ring);
    Scalar s;
    s.ring_ = std::move(ring);
    return s;
}

Scalar Scalar::one(RingPtr ring) { return from_int(std::move(ring), 1); }

Scalar Scalar::from_int(RingPtr ring, std::int64_t n) {
    require_ring(ring);
    Scalar s;
    s.ring_ = std::move(ring);
    switch (s.ring_->kind) {
        case RingKind::Rationals: s.rat_ = n; break;
        case RingKind::PrimeField: s.fp_ = ((n % s.ring_->p) + s.ring_->p) % s.ring_->p; break;
        case RingKind::Laurent: {
            Scalar c = Scalar::from_int(base_field_of(s.ring_), n);
            if (!c.is_zero()) s.terms_[ExpVec(s.ring_->nvars(), 0)] = c;
            break;
        }
    }
    return s;
}

Scalar Scalar::from_rat(RingPtr ring, Rat q) {
    require_ring(ring);
    Scalar s;
    s.ring_ = std::move(ring);
    if (s.ring_->kind == RingKind::Rationals) {
        s.rat_ = std::move(q);
    } else if (s.ring_->kind == RingKind::Laurent &&
               s.ring_->base_kind == RingKind::Rationals) {
        Scalar c = Scalar::from_rat(RingDesc::rationals(), std::move(q));
        if (!c.is_zero()) s.terms_[ExpVec(s.ring_->nvars(), 0)] = c;
    } else {
        throw std::invalid_argument("from_rat: ring has no rational coefficients");
    }
    return s;
}

Scalar Scalar::monomial(RingPtr ring, const ExpVec& e, const Scalar& coeff) {
    require_ring(ring);
    if (ring->kind != RingKind::Laurent)
        throw std::invalid_argument("monomial: ring is not Laurent");
    if (e.size() != ring->nvars())
        throw std::invalid_argument("monomial: exponent arity mismatch");
    if (*coeff.ring() != *base_field_of(ring))
        throw std::invalid_argument("monomial: coefficient not in base field");
    for (std::size_t i = 0; i < e.size(); ++i)
        if (!ring->vars[i].invertible && e[i] < 0)
            throw std::invalid_argument("monomial: negative exponent of non-invertible variable " +
                                        ring->vars[i].name);
    Scalar s;
    s.ring_ = ring;
    if (!coeff.is_zero()) s.terms_[e] = coeff;
    return s;
}

bool Scalar::is_zero() const {
    require_ring(ring_);
    switch (ring_->kind) {
        case RingKind::Rationals: return rat_ == 0;
        case RingKind::PrimeField: return fp_ == 0;
        case RingKind::Laurent: return terms_.empty();
    }
    return true;
}

bool Scalar::is_one() const { return *this == Scalar::one(ring_); }

bool Scalar::operator==(const Scalar& o) const {
    check_match(*this, o);
    switch (ring_->kind) {
        case RingKind::Rationals: return rat_ == o.rat_;
        case RingKind::PrimeField: return fp_ == o.fp_;
        case RingKind::Laurent: return terms_ == o.terms_;
    }
    return false;
}

void Scalar::canonicalize() {
    if (ring_->kind == RingKind::Laurent) {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
    }
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_match(*this, o);
    Scalar s = *this;
    switch (ring_->kind) {
        case RingKind::Rationals: s.rat_ += o.rat_; break;
        case RingKind::PrimeField: s.fp_ = (s.fp_ + o.fp_) % ring_->p; break;
        case RingKind::Laurent:
            for (const auto& [e, c] : o.terms_) {
                auto it = s.terms_.find(e);
                if (it == s.terms_.end()) s.terms_[e] = c;
                else it->second = it->second + c;
            }
            s.canonicalize();
            break;
    }
    return s;
}

Scalar Scalar::operator-() const {
    Scalar s = *this;
    switch (ring_->kind) {
        case RingKind::Rationals: s.rat_ = -s.rat_; break;
        case RingKind::PrimeField: s.fp_ = (ring_->p - s.fp_) % ring_->p; break;
        case RingKind::Laurent:
            for (auto& [e, c] : s.terms_) c = -c;
            break;
    }
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    check_match(*this, o);
    Scalar s = Scalar::zero(ring_);
    switch (ring_->kind) {
        case RingKind::Rationals: s.rat_ = rat_ * o.rat_; break;
        case RingKind::PrimeField: s.fp_ = (fp_ * o.fp_) % ring_->p; break;
        case RingKind::Laurent:
            for (const auto& [e1, c1] : terms_)
                for (const auto& [e2, c2] : o.terms_) {
                    ExpVec e(e1.size());
                    for (std::size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
                    Scalar c = c1 * c2;
                    auto it = s.terms_.find(e);
                    if (it == s.terms_.end()) s.terms_[e] = c;
                    else it->second = it->second + c;
                }
            s.canonicalize();
            break;
    }
    return s;
}

bool Scalar::is_unit() const {
    switch (ring_->kind) {
        case RingKind::Rationals:
        case RingKind::PrimeField:
            return !is_zero();
        case RingKind::Laurent: {
            // units are single terms with a unit coefficient and exponent 0
            // in every non-invertible variable
            if (terms_.size() != 1) return false;
            const auto& [e, c] = *terms_.begin();
            if (!c.is_unit()) return false;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (!ring_->vars[i].invertible && e[i] != 0) return false;
            return true;
        }
    }
    return false;
}

Scalar Scalar::inverse() const {
    if (!is_unit()) throw std::invalid_argument("Scalar::inverse: not a unit");
    switch (ring_->kind) {
        case RingKind::Rationals: {
            Scalar s;
            s.ring_ = ring_;
            s.rat_ = Rat(1) / rat_;
            return s;
        }
        case RingKind::PrimeField: {
            Scalar s;
            s.ring_ = ring_;
            s.fp_ = mod_inverse(fp_, ring_->p);
            return s;
        }
        case RingKind::Laurent: {
            const auto& [e, c] = *terms_.begin();
            ExpVec ne(e.size());
            for (std::size_t i = 0; i < e.size(); ++i) ne[i] = -e[i];
            return monomial(ring_, ne, c.inverse());
        }
    }
    throw std::logic_error("unreachable");
}

Scalar Scalar::pow(std::int64_t e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar acc = Scalar::one(ring_);
    Scalar base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

const std::map<ExpVec, Scalar>& Scalar::terms() const {
    if (ring_->kind != RingKind::Laurent)
        throw std::invalid_argument("Scalar::terms: not a Laurent element");
    return terms_;
}

Scalar Scalar::coefficient(const ExpVec& e) const {
    if (ring_->kind != RingKind::Laurent)
        throw std::invalid_argument("Scalar::coefficient: not a Laurent element");
    auto it = terms_.find(e);
    if (it == terms_.end()) return Scalar::zero(base_field_of(ring_));
    return it->second;
}

bool Scalar::is_monomial() const {
    return ring_->kind == RingKind::Laurent && terms_.size() == 1;
}

ExpVec Scalar::monomial_exponent() const {
    if (!is_monomial()) throw std::invalid_argument("Scalar: not a monomial");
    return terms_.begin()->first;
}

const Rat& Scalar::rat_value() const {
    if (ring_->kind != RingKind::Rationals)
        throw std::invalid_argument("Scalar::rat_value: wrong ring");
    return rat_;
}

std::int64_t Scalar::fp_value() const {
    if (ring_->kind != RingKind::PrimeField)
        throw std::invalid_argument("Scalar::fp_value: wrong ring");
    return fp_;
}

std::string Scalar::str() const {
    std::ostringstream os;
    switch (ring_->kind) {
        case RingKind::Rationals: os << rat_; break;
        case RingKind::PrimeField: os << fp_; break;
        case RingKind::Laurent: {
            if (terms_.empty()) { os << "0"; break; }
            bool first = true;
            for (const auto& [e, c] : terms_) {
                std::string cs = c.str();
                bool neg = !cs.empty() && cs[0] == '-';
                if (first) {
                    if (neg) { os << "-"; cs = cs.substr(1); }
                } else {
                    os << (neg ? " - " : " + ");
                    if (neg) cs = cs.substr(1);
                }
                first = false;
                bool all_zero = std::all_of(e.begin(), e.end(),
                                            [](std::int64_t x) { return x == 0; });
                if (all_zero) { os << cs; continue; }
                if (cs != "1") os << cs << "*";
                bool fv = true;
                for (std::size_t i = 0; i < e.size(); ++i) {
                    if (e[i] == 0) continue;
                    if (!fv) os << "*";
                    fv = false;
                    os << ring_->vars[i].name;
                    if (e[i] != 1) os << "^" << e[i];
                }
            }
            break;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// RingHom

RingHom::RingHom(RingPtr src, RingPtr tgt, std::map<std::string, Scalar> images)
    : src_(std::move(src)), tgt_(std::move(tgt)), images_(std::move(images)) {
    if (!src_ || !tgt_) throw std::invalid_argument("RingHom: null ring");
    // base coefficients must embed canonically
    RingPtr sb = base_field_of(src_), tb = base_field_of(tgt_);
    if (!(*sb == *tb))
        throw std::invalid_argument("RingHom: incompatible base coefficients");
    if (src_->kind == RingKind::Laurent) {
        for (const auto& v : src_->vars) {
            auto it = images_.find(v.name);
            if (it == images_.end())
                throw std::invalid_argument("RingHom: no image for variable " + v.name);
            if (!(*it->second.ring() == *tgt_))
                throw std::invalid_argument("RingHom: image of " + v.name +
                                            " not in target ring");
        }
    } else if (!images_.empty()) {
        throw std::invalid_argument("RingHom: variable images on a field source");
    }
}

RingHom RingHom::identity(RingPtr ring) {
    std::map<std::string, Scalar> imgs;
    if (ring->kind == RingKind::Laurent)
        for (std::size_t i = 0; i < ring->nvars(); ++i) {
            ExpVec e(ring->nvars(), 0);
            e[i] = 1;
            imgs.emplace(ring->vars[i].name,
                         Scalar::monomial(ring, e, Scalar::one(base_field_of(ring))));
        }
    return RingHom(ring, ring, std::move(imgs));
}

bool RingHom::is_identity() const {
    if (!(*src_ == *tgt_)) return false;
    if (src_->kind != RingKind::Laurent) return true;
    for (std::size_t i = 0; i < src_->nvars(); ++i) {
        ExpVec e(src_->nvars(), 0);
        e[i] = 1;
        Scalar v = Scalar::monomial(src_, e, Scalar::one(base_field_of(src_)));
        if (!(images_.at(src_->vars[i].name) == v)) return false;
    }
    return true;
}

Scalar RingHom::embed_base(const Scalar& c) const {
    // c lives in the shared base field; embed into the target ring
    if (tgt_->kind == RingKind::Laurent)
        return Scalar::monomial(tgt_, ExpVec(tgt_->nvars(), 0), c);
    return c;  // base field == target
}

Scalar RingHom::apply(const Scalar& s) const {
    if (!(*s.ring() == *src_))
        throw std::invalid_argument("RingHom::apply: ring mismatch");
    if (src_->kind != RingKind::Laurent) {
        if (*src_ == *tgt_) return s;
        return embed_base(s);
    }
    Scalar acc = Scalar::zero(tgt_);
    for (const auto& [e, c] : s.terms()) {
        Scalar term = embed_base(c);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            term = term * images_.at(src_->vars[i].name).pow(e[i]);
        }
        acc = acc + term;
    }
    return acc;
}

RingHom RingHom::compose_after(const RingHom& inner) const {
    if (!(*inner.tgt_ == *src_))
        throw std::invalid_argument("RingHom::compose_after: rings do not compose");
    std::map<std::string, Scalar> imgs;
    if (inner.src_->kind == RingKind::Laurent)
        for (const auto& [name, img] : inner.images_) imgs.emplace(name, apply(img));
    return RingHom(inner.src_, tgt_, std::move(imgs));
}

}  // namespace twk
