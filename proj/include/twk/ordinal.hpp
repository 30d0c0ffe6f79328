#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace twk {

/// Weakly monotone map [n] -> [m] between finite ordinals, stored as
/// its value list of length n+1.
struct OrdinalMap {
    int source_size = 0;  // n
    int target_size = 0;  // m
    std::vector<int> values;

    static OrdinalMap identity(int n);
    static OrdinalMap coface(int n, int i);        // d^i : [n-1] -> [n], skips i
    static OrdinalMap codegeneracy(int n, int i);  // s^i : [n+1] -> [n], repeats i
    static OrdinalMap from_values(std::vector<int> values, int target_size);

    int operator()(int j) const { return values.at(static_cast<std::size_t>(j)); }
    bool operator==(const OrdinalMap&) const = default;
    bool is_identity() const;
    bool is_surjective() const;
    bool is_injective() const;
    std::string str() const;

    void validate() const;  // throws unless weakly monotone and in range
};

/// f o g (apply g first).
OrdinalMap compose_ordinal(const OrdinalMap& f, const OrdinalMap& g);

/// Unique monotone epi-mono factorization f = mono o epi.
std::pair<OrdinalMap, OrdinalMap> epi_mono_factor(const OrdinalMap& f);

/// The unique monotone map [k] -> [n] through a nondecreasing tuple.
OrdinalMap ordinal_from_tuple(const std::vector<int>& tuple, int target_size);

/// All monotone maps [n] -> [m], lexicographic by value list.
std::vector<OrdinalMap> all_monotone_maps(int n, int m);

/// All monotone surjections [k] -> [n] with n < k; empty for k = 0.
std::vector<OrdinalMap> matching_surjections(int k);

/// All monotone surjections [k] -> [n] for every n <= k (identity included).
std::vector<OrdinalMap> all_surjections_from(int k);

}  // namespace twk
