#pragma once

#include <string>
#include <vector>

namespace twk {

struct CheckFailure {
    std::string where;
    std::string detail;
};

struct CheckReport {
    std::vector<CheckFailure> failures;

    bool pass() const { return failures.empty(); }
    void fail(std::string where, std::string detail) {
        failures.push_back({std::move(where), std::move(detail)});
    }
    void merge(const CheckReport& o) {
        failures.insert(failures.end(), o.failures.begin(), o.failures.end());
    }
    std::string summary() const;
};

}  // namespace twk
