#pragma once

#include "twk/ring.hpp"

#include <functional>

namespace twk {

/// Dense matrix over a single ring.
class Matrix {
public:
    Matrix() = default;
    Matrix(RingPtr ring, int rows, int cols);  // zero matrix

    static Matrix identity(RingPtr ring, int n);
    static Matrix from_rows(RingPtr ring, const std::vector<std::vector<Scalar>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const RingPtr& ring() const { return ring_; }

    const Scalar& at(int r, int c) const;
    void set(int r, int c, Scalar v);

    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator-() const;
    Matrix scaled(const Scalar& c) const;
    bool operator==(const Matrix& o) const;
    bool is_zero() const;
    bool is_identity() const;

    std::string str() const;

private:
    RingPtr ring_;
    int rows_ = 0, cols_ = 0;
    std::vector<Scalar> ent_;
};

/// Entrywise image of a matrix under a ring homomorphism.
Matrix apply_hom(const RingHom& h, const Matrix& m);

/// Exact rank over Q or F_p via Gaussian elimination.
int field_rank(const Matrix& m);

/// Columns spanning ker(m), over Q or F_p.
std::vector<Matrix> kernel_basis(const Matrix& m);

/// Base-field coefficient matrix of monomial weight w (Laurent rings only).
Matrix weight_component(const Matrix& m, const ExpVec& w);

/// Determinant by exact cofactor/fraction-free expansion (any commutative ring).
Scalar determinant(const Matrix& m);

/// Inverse of a matrix whose determinant is a unit; throws otherwise.
Matrix unit_inverse(const Matrix& m);

}  // namespace twk
