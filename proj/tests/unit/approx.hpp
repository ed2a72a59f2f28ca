#pragma once

#include <cmath>
#include <ostream>

// Absolute-tolerance companion to doctest::Approx (which is relative).
struct AbsApprox {
    double value = 0.0;
    double margin = 0.0;
};

inline bool operator==(double lhs, const AbsApprox& rhs) {
    return std::fabs(lhs - rhs.value) <= rhs.margin;
}

inline bool operator==(const AbsApprox& lhs, double rhs) { return rhs == lhs; }

inline std::ostream& operator<<(std::ostream& os, const AbsApprox& a) {
    return os << a.value << " +/- " << a.margin;
}
