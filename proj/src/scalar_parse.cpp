#include "twk/scalar_parse.hpp"

#include <cctype>

namespace twk {

namespace {

struct Lexer {
    std::string s;
    std::size_t i = 0;

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip();
        return i >= s.size();
    }
    char peek() {
        skip();
        return i < s.size() ? s[i] : '\0';
    }
    bool accept(char c) {
        skip();
        if (i < s.size() && s[i] == c) { ++i; return true; }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw std::invalid_argument("scalar literal: " + msg + " at offset " +
                                    std::to_string(i) + " in \"" + s + "\"");
    }
    Int integer() {
        skip();
        bool neg = accept('-');
        if (!neg) accept('+');
        skip();
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
            fail("expected digits");
        Int v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            v = v * 10 + (s[i] - '0');
            ++i;
        }
        return neg ? Int(-v) : v;
    }
    std::string identifier() {
        skip();
        std::size_t start = i;
        while (i < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
            ++i;
        if (start == i) fail("expected identifier");
        return s.substr(start, i - start);
    }
    bool word(const std::string& w) {
        skip();
        if (s.compare(i, w.size(), w) == 0) {
            std::size_t after = i + w.size();
            if (after >= s.size() ||
                !std::isalnum(static_cast<unsigned char>(s[after]))) {
                i = after;
                return true;
            }
        }
        return false;
    }
};

Scalar parse_base_number(Lexer& lx, const RingPtr& base) {
    Int num = lx.integer();
    if (lx.word("mod")) {
        Int m = lx.integer();
        if (base->kind != RingKind::PrimeField)
            lx.fail("'mod' literal in a ring without prime-field coefficients");
        if (m != base->p) lx.fail("'mod' modulus does not match the declared field");
        Int r = num % m;
        if (r < 0) r += m;
        return Scalar::from_int(base, static_cast<std::int64_t>(r));
    }
    if (lx.accept('/')) {
        Int den = lx.integer();
        if (den == 0) lx.fail("zero denominator");
        if (base->kind == RingKind::Rationals)
            return Scalar::from_rat(base, Rat(num, den));
        if (base->kind == RingKind::PrimeField) {
            Int nm = num % base->p;
            if (nm < 0) nm += base->p;
            Int dm = den % base->p;
            if (dm < 0) dm += base->p;
            if (dm == 0) lx.fail("denominator not invertible in the field");
            std::int64_t inv = mod_inverse(static_cast<std::int64_t>(dm), base->p);
            return Scalar::from_int(base, static_cast<std::int64_t>(nm) * inv % base->p);
        }
        lx.fail("fraction in a non-field coefficient position");
    }
    if (base->kind == RingKind::Rationals) return Scalar::from_rat(base, Rat(num));
    if (base->kind == RingKind::PrimeField) {
        Int r = num % base->p;
        if (r < 0) r += base->p;
        return Scalar::from_int(base, static_cast<std::int64_t>(r));
    }
    lx.fail("unexpected number");
}

// one product of numeric factors and variable powers
Scalar parse_term(Lexer& lx, const RingPtr& ring) {
    RingPtr base = base_field_of(ring);
    Scalar coeff = Scalar::one(base);
    ExpVec exps(ring->kind == RingKind::Laurent ? ring->nvars() : 0, 0);
    bool saw_factor = false;
    for (;;) {
        char c = lx.peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            coeff = coeff * parse_base_number(lx, base);
            saw_factor = true;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            if (ring->kind != RingKind::Laurent)
                lx.fail("variable in a field literal");
            std::string name = lx.identifier();
            int vi = ring->var_index(name);
            if (vi < 0) lx.fail("unknown variable '" + name + "'");
            std::int64_t e = 1;
            if (lx.accept('^')) e = static_cast<std::int64_t>(lx.integer());
            exps[vi] += e;
            saw_factor = true;
        } else {
            lx.fail("expected a number or variable");
        }
        if (!lx.accept('*')) break;
    }
    if (!saw_factor) lx.fail("empty term");
    if (ring->kind != RingKind::Laurent) return coeff;
    return Scalar::monomial(ring, exps, coeff);
}

}  // namespace

Scalar parse_scalar(const std::string& text, const RingPtr& ring) {
    Lexer lx{text};
    if (lx.done()) throw std::invalid_argument("scalar literal: empty input");
    Scalar acc = Scalar::zero(ring);
    bool neg = false;
    if (lx.accept('-')) neg = true;
    else lx.accept('+');
    for (;;) {
        Scalar t = parse_term(lx, ring);
        acc = neg ? acc - t : acc + t;
        if (lx.done()) break;
        if (lx.accept('+')) neg = false;
        else if (lx.accept('-')) neg = true;
        else lx.fail("expected '+' or '-'");
    }
    return acc;
}

}  // namespace twk
