#pragma once

#include "wigner/negativity.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace wigner {

struct CheckResult {
    std::string name;
    double measured = 0.0;
    double expected = 0.0;
    double tol = 0.0;
    bool pass = false;
};

// Built-in consistency suite: reference delta values, cat saturation,
// transform-vs-closed-form agreement, normalization and bound checks,
// invariance spot checks. The quadrature config is injectable so a broken
// configuration shows up as FAIL lines rather than silence.
std::vector<CheckResult> run_validation(const QuadratureConfig& quad = {});

// One line per check, measured vs expected vs tolerance. Returns true when
// everything passed.
bool write_validation_report(const std::vector<CheckResult>& checks, std::ostream& out);

}  // namespace wigner
