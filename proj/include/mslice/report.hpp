#pragma once

#include <string>
#include <vector>

namespace mslice {

/// Outcome of one inequality check: pass iff lhs <= rhs + tolerance.
struct CheckReport {
    std::string check;
    std::string spec;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // rhs - lhs
    bool pass = true;
    std::string detail;
};

inline CheckReport make_report(std::string check, std::string spec, double lhs, double rhs, double tolerance,
                               std::string detail = {}) {
    return CheckReport{std::move(check), std::move(spec), lhs, rhs, rhs - lhs, lhs <= rhs + tolerance,
                       std::move(detail)};
}

/// Folds several reports of the same check into the worst one (smallest
/// slack); pass only if every input passed.
CheckReport worst_of(const std::vector<CheckReport>& reports);

}  // namespace mslice
