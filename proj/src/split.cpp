#include "twk/split.hpp"

#include <algorithm>
#include <stdexcept>

namespace twk {

namespace {

MultiIndex apply_epi(const MultiIndex& nondeg, const OrdinalMap& epi) {
    // degeneracy along epi: position j reads entry epi(j)
    MultiIndex out;
    out.reserve(epi.values.size());
    for (int v : epi.values) out.push_back(nondeg.at(v));
    return out;
}

}  // namespace

SplitDecomposition split_cech_nerve(const RingedCover& c, int max_level) {
    SplitDecomposition d;
    d.nondegenerate.resize(max_level + 1);
    d.levels.resize(max_level + 1);
    std::vector<std::vector<MultiIndex>> nondeg(max_level + 1);
    for (int k = 0; k <= max_level; ++k)
        for (const auto& t : nerve_level(c, k))
            if (!has_adjacent_repeat(t)) {
                nondeg[k].push_back(t);
                d.nondegenerate[k].push_back(tuple_str(t));
            }
    for (int k = 0; k <= max_level; ++k) {
        std::size_t count = 0;
        for (const auto& epi : all_surjections_from(k)) {
            int n = epi.target_size;
            for (const auto& cell : nondeg[n]) {
                d.levels[k].push_back({epi, tuple_str(cell)});
                ++count;
            }
        }
        if (count != nerve_level(c, k).size())
            throw std::logic_error("split_cech_nerve: factor count mismatch");
    }
    return d;
}

SplitDecomposition split_quotient(const GroupAction& a, int max_level) {
    SplitDecomposition d;
    d.nondegenerate.resize(max_level + 1);
    d.levels.resize(max_level + 1);
    std::vector<std::vector<QuotientCell>> nondeg(max_level + 1);
    for (int k = 0; k <= max_level; ++k)
        for (const auto& cell : quotient_level(a, k)) {
            bool free = true;
            for (std::size_t i = 1; i < cell.size(); ++i)
                if (cell[i] == a.group.identity()) { free = false; break; }
            if (free) {
                nondeg[k].push_back(cell);
                d.nondegenerate[k].push_back(tuple_str(cell));
            }
        }
    for (int k = 0; k <= max_level; ++k) {
        std::size_t count = 0;
        for (const auto& epi : all_surjections_from(k)) {
            int n = epi.target_size;
            for (const auto& cell : nondeg[n]) {
                d.levels[k].push_back({epi, tuple_str(cell)});
                ++count;
            }
        }
        if (count != quotient_level(a, k).size())
            throw std::logic_error("split_quotient: factor count mismatch");
    }
    return d;
}

bool PointCover::tuple_nonempty(const MultiIndex& t) const {
    return !tuple_intersection(t).empty();
}

std::set<int> PointCover::tuple_intersection(const MultiIndex& t) const {
    std::set<int> acc;
    if (t.empty()) return acc;
    acc = opens.at(t[0]);
    for (std::size_t i = 1; i < t.size(); ++i) {
        std::set<int> next;
        const auto& o = opens.at(t[i]);
        std::set_intersection(acc.begin(), acc.end(), o.begin(), o.end(),
                              std::inserter(next, next.begin()));
        acc = std::move(next);
    }
    return acc;
}

void RefinedCover::validate(const PointCover& base) const {
    if (base_of.size() != cover.opens.size())
        throw std::invalid_argument("RefinedCover: refinement table size mismatch");
    for (std::size_t i = 0; i < cover.opens.size(); ++i) {
        const auto& u = cover.opens[i];
        const auto& v = base.opens.at(base_of[i]);
        if (!std::includes(v.begin(), v.end(), u.begin(), u.end()))
            throw std::invalid_argument("RefinedCover: open not inside its base open");
    }
}

MultiIndex RefinedCover::base_tuple(const MultiIndex& t) const {
    MultiIndex out;
    out.reserve(t.size());
    for (int i : t) out.push_back(base_of.at(i));
    return out;
}

namespace {

std::vector<MultiIndex> all_tuples(int n_opens, int len) {
    std::vector<MultiIndex> out;
    MultiIndex t(len, 0);
    if (n_opens == 0) return out;
    for (;;) {
        out.push_back(t);
        int j = len - 1;
        while (j >= 0 && t[j] == n_opens - 1) --j;
        if (j < 0) break;
        ++t[j];
        for (int i = j + 1; i < len; ++i) t[i] = 0;
    }
    return out;
}

bool pair_nonempty(const RefinedCover& A, const RefinedCover& B, const MultiIndex& I,
                   const MultiIndex& J) {
    std::set<int> a = A.cover.tuple_intersection(I);
    if (a.empty()) return false;
    std::set<int> b = B.cover.tuple_intersection(J);
    std::set<int> both;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::inserter(both, both.begin()));
    return !both.empty();
}

bool all_factor_through_common_codegeneracy(const OrdinalMap& s1, const OrdinalMap& s2,
                                            const OrdinalMap& s3) {
    // sigma factors through s^j exactly when sigma(j) == sigma(j+1)
    for (int j = 0; j + 1 <= s1.source_size; ++j)
        if (s1(j) == s1(j + 1) && s2(j) == s2(j + 1) && s3(j) == s3(j + 1)) return true;
    return false;
}

}  // namespace

std::vector<std::pair<MultiIndex, MultiIndex>> fiber_product_level(
    const RefinedCover& A, const RefinedCover& B, const PointCover& base, int m) {
    A.validate(base);
    B.validate(base);
    std::vector<std::pair<MultiIndex, MultiIndex>> out;
    for (const auto& I : all_tuples(static_cast<int>(A.cover.opens.size()), m + 1))
        for (const auto& J : all_tuples(static_cast<int>(B.cover.opens.size()), m + 1)) {
            if (A.base_tuple(I) != B.base_tuple(J)) continue;
            if (!pair_nonempty(A, B, I, J)) continue;
            out.emplace_back(I, J);
        }
    return out;
}

SplitDecomposition fiber_product_split(const RefinedCover& A, const RefinedCover& B,
                                       const PointCover& base, int max_level) {
    A.validate(base);
    B.validate(base);
    SplitDecomposition d;
    d.nondegenerate.resize(max_level + 1);
    d.levels.resize(max_level + 1);

    auto pair_label = [](const MultiIndex& I, const MultiIndex& J) {
        return tuple_str(I) + "|" + tuple_str(J);
    };

    // Nondegenerate cells of level m: starred triples of surjections with
    // compatible nondegenerate legs.  The three legs are the collapse data
    // of (I, base tuple, J); a triple is excluded when all of them factor
    // through the same codegeneracy.
    std::vector<std::vector<std::pair<MultiIndex, MultiIndex>>> nondeg(max_level + 1);
    for (int m = 0; m <= max_level; ++m) {
        for (const auto& [I, J] : fiber_product_level(A, B, base, m)) {
            auto [nI, s1] = collapse_tuple(I);
            auto [nK, s2] = collapse_tuple(A.base_tuple(I));
            auto [nJ, s3] = collapse_tuple(J);
            if (all_factor_through_common_codegeneracy(s1, s2, s3)) continue;
            nondeg[m].emplace_back(I, J);
            d.nondegenerate[m].push_back(pair_label(I, J));
        }
    }

    // assemble level factors and cross-check against direct enumeration
    for (int m = 0; m <= max_level; ++m) {
        std::vector<std::string> produced;
        for (const auto& epi : all_surjections_from(m)) {
            int n = epi.target_size;
            for (const auto& [nI, nJ] : nondeg[n]) {
                MultiIndex I = apply_epi(nI, epi);
                MultiIndex J = apply_epi(nJ, epi);
                d.levels[m].push_back({epi, pair_label(nI, nJ)});
                produced.push_back(pair_label(I, J));
            }
        }
        std::vector<std::string> direct;
        for (const auto& [I, J] : fiber_product_level(A, B, base, m))
            direct.push_back(pair_label(I, J));
        std::sort(produced.begin(), produced.end());
        std::sort(direct.begin(), direct.end());
        if (produced != direct)
            throw std::logic_error(
                "fiber_product_split: starred coproduct does not reproduce level " +
                std::to_string(m));
    }
    return d;
}

}  // namespace twk
