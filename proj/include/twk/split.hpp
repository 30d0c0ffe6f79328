#pragma once

#include "twk/action.hpp"
#include "twk/cover.hpp"

#include <set>

namespace twk {

/// One free-degeneracy factor: a monotone surjection together with a
/// nondegenerate cell of the surjection's target level.
struct SplitFactor {
    OrdinalMap epi;
    std::string cell;

    bool operator==(const SplitFactor&) const = default;
};

/// Levelwise decomposition of a simplicial object into nondegenerate
/// cells indexed by monotone surjections.
struct SplitDecomposition {
    std::vector<std::vector<std::string>> nondegenerate;  // per level
    std::vector<std::vector<SplitFactor>> levels;         // per level

    int max_level() const { return static_cast<int>(levels.size()) - 1; }
    std::size_t level_size(int k) const { return levels.at(k).size(); }
};

/// Split decomposition of a Cech nerve up to the given level
/// (nondegenerate cells are tuples without adjacent repeats).
SplitDecomposition split_cech_nerve(const RingedCover& c, int max_level);

/// Split decomposition of [X/G] up to the given level (nondegenerate
/// cells are tuples with no identity entries).
SplitDecomposition split_quotient(const GroupAction& a, int max_level);

/// A cover of an abstract finite point set.
struct PointCover {
    int points = 0;
    std::vector<std::set<int>> opens;

    bool tuple_nonempty(const MultiIndex& t) const;
    std::set<int> tuple_intersection(const MultiIndex& t) const;
};

/// A cover refining a base cover: open i lies inside base open base_of[i].
struct RefinedCover {
    PointCover cover;
    std::vector<int> base_of;

    void validate(const PointCover& base) const;
    MultiIndex base_tuple(const MultiIndex& t) const;
};

/// Level-m elements of the fiber product of two refinements over the
/// same base: pairs (I, J) with equal base tuples and a common point.
std::vector<std::pair<MultiIndex, MultiIndex>> fiber_product_level(
    const RefinedCover& A, const RefinedCover& B, const PointCover& base, int m);

/// Split decomposition of the fiber product, built from the starred
/// coproduct over triples of surjections that do not all factor through
/// a common codegeneracy.  Throws when the computed factors do not
/// reproduce the direct level enumeration.
SplitDecomposition fiber_product_split(const RefinedCover& A, const RefinedCover& B,
                                       const PointCover& base, int max_level);

}  // namespace twk
