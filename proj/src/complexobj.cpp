#include "twk/complexobj.hpp"

#include <algorithm>

namespace twk {

ComplexObj::ComplexObj(GradedModule m, GradedMap d, RingPtr r)
    : module(std::move(m)), diff(std::move(d)), ring(std::move(r)) {
    validate();
}

ComplexObj ComplexObj::zero_diff(GradedModule m, RingPtr r) {
    GradedMap d = GradedMap::zero(m, m, 1, r);
    return ComplexObj(std::move(m), std::move(d), std::move(r));
}

void ComplexObj::validate() const {
    if (!ring) throw std::invalid_argument("ComplexObj: null ring");
    if (!(diff.source() == module) || !(diff.target() == module))
        throw std::invalid_argument("ComplexObj: differential endpoints wrong");
    if (diff.degree() != 1)
        throw std::invalid_argument("ComplexObj: differential degree must be +1");
    if (!(*diff.ring() == *ring))
        throw std::invalid_argument("ComplexObj: differential ring mismatch");
    if (!graded_compose(diff, diff).is_zero())
        throw std::invalid_argument("ComplexObj: d o d != 0");
}

bool ComplexObj::operator==(const ComplexObj& o) const {
    return module == o.module && diff == o.diff && *ring == *o.ring;
}

std::map<int, int> complex_cohomology_dims(const ComplexObj& c) {
    if (!c.ring->is_field())
        throw std::invalid_argument("complex_cohomology_dims: not a field backend");
    std::map<int, int> dims;
    if (c.module.is_zero()) return dims;
    for (int d = c.module.min_degree(); d <= c.module.max_degree(); ++d) {
        int n = c.module.rank(d);
        if (n == 0) continue;
        int rank_out = field_rank(c.diff.block(d));
        int rank_in = field_rank(c.diff.block(d - 1));
        int h = n - rank_out - rank_in;
        if (h < 0) throw std::logic_error("complex_cohomology_dims: negative dimension");
        if (h > 0) dims[d] = h;
    }
    return dims;
}

namespace {

// columns of m restricted to vectors in ker(d): returns a matrix whose
// columns span ker(d block at degree deg)
Matrix kernel_columns(const ComplexObj& c, int deg) {
    Matrix d = c.diff.block(deg);
    auto basis = kernel_basis(d);
    Matrix out(c.ring, c.module.rank(deg), static_cast<int>(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (int i = 0; i < out.rows(); ++i) out.set(i, static_cast<int>(j), basis[j].at(i, 0));
    return out;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
    Matrix out(a.ring(), a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) out.set(i, j, a.at(i, j));
        for (int j = 0; j < b.cols(); ++j) out.set(i, a.cols() + j, b.at(i, j));
    }
    return out;
}

}  // namespace

std::map<int, int> induced_map_image_dims(const GradedMap& f, const ComplexObj& A,
                                          const ComplexObj& B) {
    if (!A.ring->is_field())
        throw std::invalid_argument("induced_map_image_dims: not a field backend");
    if (f.degree() != 0)
        throw std::invalid_argument("induced_map_image_dims: map not of degree 0");
    std::map<int, int> dims;
    if (A.module.is_zero()) return dims;
    for (int d = A.module.min_degree(); d <= A.module.max_degree(); ++d) {
        if (A.module.rank(d) == 0) continue;
        Matrix ka = kernel_columns(A, d);            // cycles of A^d
        Matrix fk = f.block(d) * ka;                 // their images in B^d
        Matrix ib = B.diff.block(d - 1);             // boundaries of B^d
        int r_b = field_rank(ib);
        int r_both = field_rank(hstack(fk, ib));
        int im = r_both - r_b;                       // dim (f(Z)+B)/B
        if (im > 0) dims[d] += im;
    }
    return dims;
}

bool verify_homotopy_witness(const GradedMap& f, const ComplexObj& A,
                             const ComplexObj& B, const HomotopyWitness& w) {
    // f o g - id = d_B h + h d_B  and  g o f - id = d_A h' + h' d_A
    GradedMap idB = GradedMap::identity(B.module, B.ring);
    GradedMap idA = GradedMap::identity(A.module, A.ring);
    GradedMap lhs1 = graded_compose(f, w.g) - idB;
    GradedMap rhs1 = hom_differential(w.h, B.diff, B.diff);
    if (!(lhs1 == rhs1)) return false;
    GradedMap lhs2 = graded_compose(w.g, f) - idA;
    GradedMap rhs2 = hom_differential(w.h_prime, A.diff, A.diff);
    return lhs2 == rhs2;
}

namespace {

// try to assign one weight per (module, degree, ring variable) making all
// nonzero entries of the given maps weight-homogeneous; desk-scale data
// has a single variable per ring so we solve over plain integer offsets
struct WeightOffsets {
    // offset per (which: 0 source / 1 target, degree)
    std::map<std::pair<int, int>, ExpVec> off;
    bool ok = true;
};

ExpVec sub(const ExpVec& a, const ExpVec& b) {
    ExpVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

// propagate offsets so that every entry of map blocks is a monomial of
// weight offset(target slot) - offset(source slot)
bool propagate(const GradedMap& m, int src_tag, int tgt_tag, WeightOffsets& w) {
    std::size_t nv = m.ring()->nvars();
    for (const auto& [d, blk] : m.blocks()) {
        for (int i = 0; i < blk.rows(); ++i)
            for (int j = 0; j < blk.cols(); ++j) {
                const Scalar& e = blk.at(i, j);
                if (e.is_zero()) continue;
                if (!e.is_monomial()) return false;
                ExpVec we = e.monomial_exponent();
                auto skey = std::make_pair(src_tag, d);
                auto tkey = std::make_pair(tgt_tag, d + m.degree());
                auto si = w.off.find(skey), ti = w.off.find(tkey);
                if (si != w.off.end() && ti != w.off.end()) {
                    if (sub(ti->second, si->second) != we) return false;
                } else if (si != w.off.end()) {
                    ExpVec t = si->second;
                    for (std::size_t v = 0; v < nv; ++v) t[v] += we[v];
                    w.off[tkey] = t;
                } else if (ti != w.off.end()) {
                    ExpVec s = ti->second;
                    for (std::size_t v = 0; v < nv; ++v) s[v] -= we[v];
                    w.off[skey] = s;
                } else {
                    w.off[skey] = ExpVec(nv, 0);
                    w.off[tkey] = we;
                }
            }
    }
    return true;
}

}  // namespace

InvertReport homotopy_invertible(const GradedMap& f, const ComplexObj& A,
                                 const ComplexObj& B,
                                 const std::optional<HomotopyWitness>& witness) {
    if (f.degree() != 0)
        return {InvertStatus::NotInvertible, "map is not of degree 0"};
    if (!hom_differential(f, B.diff, A.diff).is_zero())
        return {InvertStatus::NotInvertible, "map is not closed"};
    if (witness) {
        if (verify_homotopy_witness(f, A, B, *witness))
            return {InvertStatus::Invertible, "witness verified"};
        return {InvertStatus::Inconclusive, "witness rejected"};
    }
    if (A == B && f == GradedMap::identity(A.module, A.ring))
        return {InvertStatus::Invertible, "identity"};
    if (A.ring->is_field()) {
        auto ha = complex_cohomology_dims(A);
        auto hb = complex_cohomology_dims(B);
        if (ha != hb)
            return {InvertStatus::NotInvertible, "cohomology dimensions differ"};
        auto im = induced_map_image_dims(f, A, B);
        if (im != ha)
            return {InvertStatus::NotInvertible,
                    "induced map on cohomology is not an isomorphism"};
        return {InvertStatus::Invertible, "cohomology isomorphism"};
    }
    // Laurent backends
    if (A.diff.is_zero() && B.diff.is_zero()) {
        // homotopies vanish, so invertibility is strict blockwise invertibility
        if (!(A.module == B.module))
            return {InvertStatus::NotInvertible, "graded ranks differ"};
        if (A.module.is_zero()) return {InvertStatus::Invertible, "zero module"};
        for (int d = A.module.min_degree(); d <= A.module.max_degree(); ++d) {
            if (A.module.rank(d) == 0) continue;
            Matrix blk = f.block(d);
            Scalar det = determinant(blk);
            if (!det.is_unit())
                return {InvertStatus::NotInvertible,
                        "block determinant is not a unit in degree " + std::to_string(d)};
        }
        return {InvertStatus::Invertible, "strictly invertible (zero differentials)"};
    }
    // weight-homogeneous monomial data: one weight slice decides all
    WeightOffsets w;
    if (propagate(A.diff, 0, 0, w) && propagate(B.diff, 1, 1, w) &&
        propagate(f, 0, 1, w)) {
        // per-weight complexes are all isomorphic to the base-field complex
        // obtained by dropping the monomials
        auto strip = [&](const GradedMap& m, int src_tag, int tgt_tag) {
            RingPtr base = base_field_of(m.ring());
            GradedMap out(m.source(), m.target(), m.degree(), base);
            for (const auto& [d, blk] : m.blocks()) {
                Matrix nb(base, blk.rows(), blk.cols());
                for (int i = 0; i < blk.rows(); ++i)
                    for (int j = 0; j < blk.cols(); ++j) {
                        const Scalar& e = blk.at(i, j);
                        if (e.is_zero()) continue;
                        nb.set(i, j, e.terms().begin()->second);
                    }
                out.set_block(d, nb);
            }
            (void)src_tag;
            (void)tgt_tag;
            return out;
        };
        RingPtr base = base_field_of(A.ring);
        ComplexObj Ab(A.module, strip(A.diff, 0, 0), base);
        ComplexObj Bb(B.module, strip(B.diff, 1, 1), base);
        GradedMap fb = strip(f, 0, 1);
        InvertReport r = homotopy_invertible(fb, Ab, Bb, {});
        r.detail = "per-weight slice: " + r.detail;
        return r;
    }
    return {InvertStatus::Inconclusive,
            "non-homogeneous Laurent data: supply a homotopy-inverse witness"};
}

}  // namespace twk
