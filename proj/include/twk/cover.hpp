#pragma once

#include "twk/ring.hpp"
#include "twk/ordinal.hpp"

#include <set>

namespace twk {

/// Tuple of cover indices, repeats and arbitrary order allowed.
using MultiIndex = std::vector<int>;

std::set<int> index_set(const MultiIndex& t);
std::string tuple_str(const MultiIndex& t);
MultiIndex delete_at(const MultiIndex& t, std::size_t pos);
bool has_adjacent_repeat(const MultiIndex& t);
/// Collapse adjacent repeats; returns the nondegenerate tuple and the
/// monotone surjection sigma with t = nondeg o sigma.
std::pair<MultiIndex, OrdinalMap> collapse_tuple(const MultiIndex& t);

/// Combinatorial ringed cover: a finite index set, the nerve (which
/// subsets have nonempty intersection), one ring per nerve subset and a
/// restriction homomorphism per inclusion of nerve subsets.
class RingedCover {
public:
    RingedCover() = default;
    RingedCover(std::vector<std::string> index_names,
                std::vector<std::set<int>> nerve_sets,
                std::map<std::set<int>, RingPtr> rings,
                std::map<std::pair<std::set<int>, std::set<int>>, RingHom> restrictions);

    /// All subsets nonempty, same ring everywhere, identity restrictions.
    static RingedCover full_nerve(int n_opens, RingPtr ring);

    int size() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    int index_of(const std::string& name) const;  // -1 when absent

    bool in_nerve(const std::set<int>& s) const;
    bool tuple_in_nerve(const MultiIndex& t) const;
    const std::vector<std::set<int>>& nerve() const { return nerve_; }

    const RingPtr& ring_of(const std::set<int>& s) const;
    const RingPtr& ring_of_tuple(const MultiIndex& t) const;
    /// Restriction hom from ring(sub) to ring(sup); identity when equal.
    RingHom restriction(const std::set<int>& sub, const std::set<int>& sup) const;

    void validate() const;  // nerve closure + restriction functoriality

private:
    std::vector<std::string> names_;
    std::vector<std::set<int>> nerve_;
    std::map<std::set<int>, RingPtr> rings_;
    std::map<std::pair<std::set<int>, std::set<int>>, RingHom> res_;
};

/// All length-(k+1) tuples with underlying set in the nerve, in
/// lexicographic order.
std::vector<MultiIndex> nerve_level(const RingedCover& c, int k);

}  // namespace twk
