#pragma once

#include <span>
#include <vector>

namespace wflow {

/// Kahan compensated accumulator. All global reductions in the library run
/// through this in a fixed index order, so results do not depend on thread
/// count or evaluation order.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }

    double value() const { return sum; }
};

/// Deterministic sum of a buffer (fixed left-to-right order, compensated).
inline double deterministic_sum(std::span<const double> values) {
    KahanSum acc;
    for (double v : values)
        acc.add(v);
    return acc.value();
}

inline double deterministic_sum(const std::vector<double>& values) {
    return deterministic_sum(std::span<const double>(values));
}

} // namespace wflow
