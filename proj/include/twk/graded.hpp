#pragma once

#include "twk/matrix.hpp"

namespace twk {

/// Finitely supported degree -> rank table of a graded free module.
class GradedModule {
public:
    GradedModule() = default;
    explicit GradedModule(std::map<int, int> ranks);

    int rank(int degree) const;
    const std::map<int, int>& ranks() const { return ranks_; }
    bool is_zero() const { return ranks_.empty(); }
    int min_degree() const;  // throws on the zero module
    int max_degree() const;

    bool operator==(const GradedModule&) const = default;

    GradedModule shifted(int by) const;
    GradedModule direct_sum(const GradedModule& o) const;

private:
    std::map<int, int> ranks_;
};

/// Degree-q map of graded free modules, stored blockwise: the block in
/// degree d is a rank_target(d+q) x rank_source(d) matrix.  Absent
/// blocks are zero.
class GradedMap {
public:
    GradedMap() = default;
    GradedMap(GradedModule source, GradedModule target, int degree, RingPtr ring);

    static GradedMap identity(const GradedModule& m, RingPtr ring);
    static GradedMap zero(GradedModule source, GradedModule target, int degree,
                          RingPtr ring);

    const GradedModule& source() const { return src_; }
    const GradedModule& target() const { return tgt_; }
    int degree() const { return deg_; }
    const RingPtr& ring() const { return ring_; }

    Matrix block(int d) const;              // zero matrix when absent
    void set_block(int d, Matrix m);        // shape-checked
    const std::map<int, Matrix>& blocks() const { return blocks_; }

    bool is_zero() const;
    bool operator==(const GradedMap& o) const;

    GradedMap operator+(const GradedMap& o) const;
    GradedMap operator-(const GradedMap& o) const;
    GradedMap operator-() const;
    GradedMap scaled(const Scalar& c) const;

    std::string str() const;

private:
    GradedModule src_, tgt_;
    int deg_ = 0;
    RingPtr ring_;
    std::map<int, Matrix> blocks_;

    void prune();
};

/// Blockwise composition f o g (apply g first).
GradedMap graded_compose(const GradedMap& f, const GradedMap& g);

/// Entrywise image under a ring homomorphism.
GradedMap apply_hom(const RingHom& h, const GradedMap& f);

/// d_target o f - (-1)^{deg f} f o d_source.
GradedMap hom_differential(const GradedMap& f, const GradedMap& d_target,
                           const GradedMap& d_source);

/// Base-field coefficient map of monomial weight w (Laurent rings only).
GradedMap weight_component(const GradedMap& f, const ExpVec& w);

/// True when a nonzero map of this degree can exist between the modules.
bool hom_degree_possible(const GradedModule& source, const GradedModule& target,
                         int degree);

}  // namespace twk
