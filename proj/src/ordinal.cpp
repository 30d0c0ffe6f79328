#include "twk/ordinal.hpp"

#include <algorithm>
#include <stdexcept>

namespace twk {

void OrdinalMap::validate() const {
    if (source_size < 0 || target_size < 0)
        throw std::invalid_argument("OrdinalMap: negative size");
    if (static_cast<int>(values.size()) != source_size + 1)
        throw std::invalid_argument("OrdinalMap: value list length mismatch");
    for (std::size_t j = 0; j < values.size(); ++j) {
        if (values[j] < 0 || values[j] > target_size)
            throw std::invalid_argument("OrdinalMap: value out of range");
        if (j > 0 && values[j] < values[j - 1])
            throw std::invalid_argument("OrdinalMap: not weakly monotone");
    }
}

OrdinalMap OrdinalMap::identity(int n) {
    OrdinalMap f{n, n, {}};
    f.values.resize(n + 1);
    for (int j = 0; j <= n; ++j) f.values[j] = j;
    return f;
}

OrdinalMap OrdinalMap::coface(int n, int i) {
    if (i < 0 || i > n) throw std::invalid_argument("coface: index out of range");
    OrdinalMap f{n - 1, n, {}};
    for (int j = 0; j <= n - 1; ++j) f.values.push_back(j < i ? j : j + 1);
    return f;
}

OrdinalMap OrdinalMap::codegeneracy(int n, int i) {
    if (i < 0 || i > n) throw std::invalid_argument("codegeneracy: index out of range");
    OrdinalMap f{n + 1, n, {}};
    for (int j = 0; j <= n + 1; ++j) f.values.push_back(j <= i ? j : j - 1);
    return f;
}

OrdinalMap OrdinalMap::from_values(std::vector<int> values, int target_size) {
    OrdinalMap f{static_cast<int>(values.size()) - 1, target_size, std::move(values)};
    f.validate();
    return f;
}

bool OrdinalMap::is_identity() const {
    return source_size == target_size && *this == identity(source_size);
}

bool OrdinalMap::is_surjective() const {
    std::vector<bool> hit(target_size + 1, false);
    for (int v : values) hit[v] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

bool OrdinalMap::is_injective() const {
    for (std::size_t j = 1; j < values.size(); ++j)
        if (values[j] == values[j - 1]) return false;
    return true;
}

std::string OrdinalMap::str() const {
    std::string s = "[" + std::to_string(source_size) + "]->[" +
                    std::to_string(target_size) + "](";
    for (std::size_t j = 0; j < values.size(); ++j)
        s += (j ? "," : "") + std::to_string(values[j]);
    return s + ")";
}

OrdinalMap compose_ordinal(const OrdinalMap& f, const OrdinalMap& g) {
    if (g.target_size != f.source_size)
        throw std::invalid_argument("compose_ordinal: size mismatch");
    OrdinalMap h{g.source_size, f.target_size, {}};
    for (int v : g.values) h.values.push_back(f.values.at(v));
    return h;
}

std::pair<OrdinalMap, OrdinalMap> epi_mono_factor(const OrdinalMap& f) {
    f.validate();
    // image values in increasing order give the mono; collapsing onto
    // image positions gives the epi
    std::vector<int> image;
    for (int v : f.values)
        if (image.empty() || image.back() != v) image.push_back(v);
    int mid = static_cast<int>(image.size()) - 1;
    OrdinalMap mono{mid, f.target_size, image};
    OrdinalMap epi{f.source_size, mid, {}};
    for (int v : f.values) {
        auto it = std::lower_bound(image.begin(), image.end(), v);
        epi.values.push_back(static_cast<int>(it - image.begin()));
    }
    return {epi, mono};
}

OrdinalMap ordinal_from_tuple(const std::vector<int>& tuple, int target_size) {
    if (tuple.empty()) throw std::invalid_argument("ordinal_from_tuple: empty tuple");
    OrdinalMap f{static_cast<int>(tuple.size()) - 1, target_size, tuple};
    f.validate();
    return f;
}

std::vector<OrdinalMap> all_monotone_maps(int n, int m) {
    std::vector<OrdinalMap> out;
    std::vector<int> vals(n + 1, 0);
    for (;;) {
        out.push_back(OrdinalMap{n, m, vals});
        int j = n;
        while (j >= 0 && vals[j] == m) --j;
        if (j < 0) break;
        ++vals[j];
        for (int k = j + 1; k <= n; ++k) vals[k] = vals[j];
    }
    return out;
}

std::vector<OrdinalMap> all_surjections_from(int k) {
    std::vector<OrdinalMap> out;
    for (int n = 0; n <= k; ++n)
        for (const auto& f : all_monotone_maps(k, n))
            if (f.is_surjective()) out.push_back(f);
    return out;
}

std::vector<OrdinalMap> matching_surjections(int k) {
    std::vector<OrdinalMap> out;
    if (k == 0) return out;
    for (const auto& f : all_surjections_from(k))
        if (f.target_size < k) out.push_back(f);
    return out;
}

}  // namespace twk
