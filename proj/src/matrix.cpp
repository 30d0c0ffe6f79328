#include "twk/matrix.hpp"

#include <sstream>

namespace twk {

Matrix::Matrix(RingPtr ring, int rows, int cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: negative shape");
    ent_.assign(static_cast<std::size_t>(rows) * cols, Scalar::zero(ring_));
}

Matrix Matrix::identity(RingPtr ring, int n) {
    Matrix m(ring, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, Scalar::one(ring));
    return m;
}

Matrix Matrix::from_rows(RingPtr ring, const std::vector<std::vector<Scalar>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    Matrix m(std::move(ring), r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c)
            throw std::invalid_argument("Matrix::from_rows: ragged rows");
        for (int j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

const Scalar& Matrix::at(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw std::out_of_range("Matrix::at");
    return ent_[static_cast<std::size_t>(r) * cols_ + c];
}

void Matrix::set(int r, int c, Scalar v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw std::out_of_range("Matrix::set");
    if (!(*v.ring() == *ring_))
        throw std::invalid_argument("Matrix::set: entry ring mismatch");
    ent_[static_cast<std::size_t>(r) * cols_ + c] = std::move(v);
}

static void check_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("Matrix: shape mismatch");
    if (!(*a.ring() == *b.ring()))
        throw std::invalid_argument("Matrix: ring mismatch");
}

Matrix Matrix::operator+(const Matrix& o) const {
    check_same_shape(*this, o);
    Matrix m(ring_, rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.set(i, j, at(i, j) + o.at(i, j));
    return m;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + (-o); }

Matrix Matrix::operator-() const {
    Matrix m(ring_, rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.set(i, j, -at(i, j));
    return m;
}

Matrix Matrix::scaled(const Scalar& c) const {
    Matrix m(ring_, rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.set(i, j, c * at(i, j));
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Matrix: product shape mismatch");
    if (!(*ring_ == *o.ring_)) throw std::invalid_argument("Matrix: ring mismatch");
    Matrix m(ring_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Scalar& a = at(i, k);
            if (a.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j) {
                const Scalar& b = o.at(k, j);
                if (b.is_zero()) continue;
                m.set(i, j, m.at(i, j) + a * b);
            }
        }
    return m;
}

bool Matrix::operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    if (!(*ring_ == *o.ring_)) return false;
    for (std::size_t i = 0; i < ent_.size(); ++i)
        if (!(ent_[i] == o.ent_[i])) return false;
    return true;
}

bool Matrix::is_zero() const {
    for (const auto& e : ent_)
        if (!e.is_zero()) return false;
    return true;
}

bool Matrix::is_identity() const {
    if (rows_ != cols_) return false;
    return *this == identity(ring_, rows_);
}

std::string Matrix::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (int j = 0; j < cols_; ++j) os << (j ? ", " : "") << at(i, j).str();
    }
    os << "]";
    return os.str();
}

Matrix apply_hom(const RingHom& h, const Matrix& m) {
    if (!(*m.ring() == *h.source()))
        throw std::invalid_argument("apply_hom: matrix not over the source ring");
    Matrix out(h.target(), m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out.set(i, j, h.apply(m.at(i, j)));
    return out;
}

namespace {

// row echelon form in place; returns pivot columns
std::vector<int> echelon(std::vector<std::vector<Scalar>>& a, const RingPtr& ring) {
    std::vector<int> pivots;
    int rows = static_cast<int>(a.size());
    int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (!a[i][c].is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(a[r], a[piv]);
        Scalar inv = a[r][c].inverse();
        for (int j = c; j < cols; ++j) a[r][j] = inv * a[r][j];
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            Scalar f = a[i][c];
            for (int j = c; j < cols; ++j) a[i][j] = a[i][j] - f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    (void)ring;
    return pivots;
}

std::vector<std::vector<Scalar>> to_rows(const Matrix& m) {
    std::vector<std::vector<Scalar>> a(m.rows());
    for (int i = 0; i < m.rows(); ++i) {
        a[i].reserve(m.cols());
        for (int j = 0; j < m.cols(); ++j) a[i].push_back(m.at(i, j));
    }
    return a;
}

}  // namespace

int field_rank(const Matrix& m) {
    if (!m.ring()->is_field())
        throw std::invalid_argument("field_rank: ring is not a field");
    auto a = to_rows(m);
    return static_cast<int>(echelon(a, m.ring()).size());
}

std::vector<Matrix> kernel_basis(const Matrix& m) {
    if (!m.ring()->is_field())
        throw std::invalid_argument("kernel_basis: ring is not a field");
    auto a = to_rows(m);
    std::vector<int> pivots = echelon(a, m.ring());
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<Matrix> basis;
    for (int c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        Matrix v(m.ring(), m.cols(), 1);
        v.set(c, 0, Scalar::one(m.ring()));
        // back-substitute: pivot row r has leading 1 at pivots[r]
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v.set(pivots[r], 0, -a[r][c]);
        basis.push_back(std::move(v));
    }
    return basis;
}

Matrix weight_component(const Matrix& m, const ExpVec& w) {
    if (m.ring()->kind != RingKind::Laurent)
        throw std::invalid_argument("weight_component: ring is not Laurent");
    Matrix out(base_field_of(m.ring()), m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out.set(i, j, m.at(i, j).coefficient(w));
    return out;
}

Scalar determinant(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: not square");
    int n = m.rows();
    if (n == 0) return Scalar::one(m.ring());
    // Laplace expansion along the first row; fine at desk scale
    if (n == 1) return m.at(0, 0);
    Scalar acc = Scalar::zero(m.ring());
    for (int j = 0; j < n; ++j) {
        if (m.at(0, j).is_zero()) continue;
        Matrix minor(m.ring(), n - 1, n - 1);
        for (int r = 1; r < n; ++r) {
            int cc = 0;
            for (int c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.set(r - 1, cc++, m.at(r, c));
            }
        }
        Scalar term = m.at(0, j) * determinant(minor);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

Matrix unit_inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("unit_inverse: not square");
    Scalar det = determinant(m);
    if (!det.is_unit()) throw std::invalid_argument("unit_inverse: determinant is not a unit");
    int n = m.rows();
    Matrix adj(m.ring(), n, n);
    Scalar dinv = det.inverse();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Matrix minor(m.ring(), n - 1, n - 1);
            for (int r = 0, rr = 0; r < n; ++r) {
                if (r == i) continue;
                for (int c = 0, cc = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor.set(rr, cc++, m.at(r, c));
                }
                ++rr;
            }
            Scalar cof = determinant(minor);
            if ((i + j) % 2 == 1) cof = -cof;
            adj.set(j, i, dinv * cof);
        }
    return adj;
}

}  // namespace twk
