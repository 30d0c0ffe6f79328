#include "twk/cover.hpp"

#include <algorithm>

namespace twk {

std::set<int> index_set(const MultiIndex& t) { return std::set<int>(t.begin(), t.end()); }

std::string tuple_str(const MultiIndex& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
    return s + ")";
}

MultiIndex delete_at(const MultiIndex& t, std::size_t pos) {
    MultiIndex out;
    out.reserve(t.size() - 1);
    for (std::size_t i = 0; i < t.size(); ++i)
        if (i != pos) out.push_back(t[i]);
    return out;
}

bool has_adjacent_repeat(const MultiIndex& t) {
    for (std::size_t i = 1; i < t.size(); ++i)
        if (t[i] == t[i - 1]) return true;
    return false;
}

std::pair<MultiIndex, OrdinalMap> collapse_tuple(const MultiIndex& t) {
    if (t.empty()) throw std::invalid_argument("collapse_tuple: empty tuple");
    MultiIndex nondeg;
    std::vector<int> vals;
    for (int x : t) {
        if (nondeg.empty() || nondeg.back() != x) nondeg.push_back(x);
        vals.push_back(static_cast<int>(nondeg.size()) - 1);
    }
    OrdinalMap sigma{static_cast<int>(t.size()) - 1,
                     static_cast<int>(nondeg.size()) - 1, vals};
    return {nondeg, sigma};
}

RingedCover::RingedCover(std::vector<std::string> index_names,
                         std::vector<std::set<int>> nerve_sets,
                         std::map<std::set<int>, RingPtr> rings,
                         std::map<std::pair<std::set<int>, std::set<int>>, RingHom> res)
    : names_(std::move(index_names)), nerve_(std::move(nerve_sets)),
      rings_(std::move(rings)), res_(std::move(res)) {
    std::sort(nerve_.begin(), nerve_.end());
    nerve_.erase(std::unique(nerve_.begin(), nerve_.end()), nerve_.end());
    validate();
}

RingedCover RingedCover::full_nerve(int n_opens, RingPtr ring) {
    std::vector<std::string> names;
    for (int i = 0; i < n_opens; ++i) names.push_back("U" + std::to_string(i));
    std::vector<std::set<int>> nerve;
    std::map<std::set<int>, RingPtr> rings;
    std::map<std::pair<std::set<int>, std::set<int>>, RingHom> res;
    for (int mask = 1; mask < (1 << n_opens); ++mask) {
        std::set<int> s;
        for (int i = 0; i < n_opens; ++i)
            if (mask & (1 << i)) s.insert(i);
        nerve.push_back(s);
        rings[s] = ring;
    }
    for (const auto& a : nerve)
        for (const auto& b : nerve)
            if (std::includes(b.begin(), b.end(), a.begin(), a.end()))
                res.emplace(std::make_pair(a, b), RingHom::identity(ring));
    return RingedCover(std::move(names), std::move(nerve), std::move(rings),
                       std::move(res));
}

int RingedCover::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    return -1;
}

bool RingedCover::in_nerve(const std::set<int>& s) const {
    return std::binary_search(nerve_.begin(), nerve_.end(), s);
}

bool RingedCover::tuple_in_nerve(const MultiIndex& t) const {
    return in_nerve(index_set(t));
}

const RingPtr& RingedCover::ring_of(const std::set<int>& s) const {
    auto it = rings_.find(s);
    if (it == rings_.end())
        throw std::invalid_argument("RingedCover: no ring for the given subset");
    return it->second;
}

const RingPtr& RingedCover::ring_of_tuple(const MultiIndex& t) const {
    return ring_of(index_set(t));
}

RingHom RingedCover::restriction(const std::set<int>& sub, const std::set<int>& sup) const {
    if (sub == sup) return RingHom::identity(ring_of(sub));
    auto it = res_.find({sub, sup});
    if (it == res_.end())
        throw std::invalid_argument("RingedCover: missing restriction hom");
    return it->second;
}

void RingedCover::validate() const {
    for (const auto& s : nerve_) {
        if (s.empty()) throw std::invalid_argument("RingedCover: empty nerve subset");
        for (int i : s)
            if (i < 0 || i >= size())
                throw std::invalid_argument("RingedCover: nerve index out of range");
        if (rings_.find(s) == rings_.end())
            throw std::invalid_argument("RingedCover: nerve subset without a ring");
        // downward closure: drop one element at a time
        if (s.size() > 1)
            for (int i : s) {
                std::set<int> sub = s;
                sub.erase(i);
                if (!in_nerve(sub))
                    throw std::invalid_argument(
                        "RingedCover: nerve not closed under nonempty subsets");
            }
    }
    for (int i = 0; i < size(); ++i)
        if (!in_nerve({i}))
            throw std::invalid_argument("RingedCover: singleton missing from nerve");
    // restriction homs exist, have the right endpoints, and compose
    for (const auto& a : nerve_)
        for (const auto& b : nerve_) {
            if (!std::includes(b.begin(), b.end(), a.begin(), a.end())) continue;
            RingHom r = restriction(a, b);
            if (!(*r.source() == *ring_of(a)) || !(*r.target() == *ring_of(b)))
                throw std::invalid_argument("RingedCover: restriction endpoints wrong");
            if (a == b && !r.is_identity())
                throw std::invalid_argument("RingedCover: res_{S<=S} is not identity");
            for (const auto& c : nerve_) {
                if (!std::includes(c.begin(), c.end(), b.begin(), b.end())) continue;
                RingHom direct = restriction(a, c);
                RingHom composite = restriction(b, c).compose_after(r);
                for (const auto& [name, img] : direct.images())
                    if (!(img == composite.images().at(name)))
                        throw std::invalid_argument(
                            "RingedCover: restriction functoriality fails");
            }
        }
}

std::vector<MultiIndex> nerve_level(const RingedCover& c, int k) {
    if (k < 0) throw std::invalid_argument("nerve_level: negative level");
    std::vector<MultiIndex> out;
    MultiIndex t(static_cast<std::size_t>(k) + 1, 0);
    int n = c.size();
    if (n == 0) return out;
    for (;;) {
        if (c.tuple_in_nerve(t)) out.push_back(t);
        int j = k;
        while (j >= 0 && t[j] == n - 1) --j;
        if (j < 0) break;
        ++t[j];
        for (int i = j + 1; i <= k; ++i) t[i] = 0;
    }
    return out;
}

}  // namespace twk
