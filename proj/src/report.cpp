#include "twk/report.hpp"

#include <sstream>

namespace twk {

std::string CheckReport::summary() const {
    if (pass()) return "pass";
    std::ostringstream os;
    os << failures.size() << " failure(s); first: " << failures.front().where << ": "
       << failures.front().detail;
    return os.str();
}

}  // namespace twk
