#include "mslice/report.hpp"

#include <stdexcept>

namespace mslice {

CheckReport worst_of(const std::vector<CheckReport>& reports) {
    if (reports.empty()) throw std::invalid_argument("no reports to fold");
    CheckReport worst = reports.front();
    bool all_pass = true;
    for (const auto& r : reports) {
        all_pass = all_pass && r.pass;
        if (r.slack < worst.slack) worst = r;
    }
    worst.pass = all_pass;
    return worst;
}

}  // namespace mslice
