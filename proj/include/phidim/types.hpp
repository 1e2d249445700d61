#pragma once

#include <cstdint>

namespace phidim {

enum class BoundMode { Upper, Lower };

inline const char* to_string(BoundMode m) {
    return m == BoundMode::Upper ? "upper" : "lower";
}

// Closed interval [lo, hi]; degenerate (lo == hi) intervals are points.
struct Interval {
    double lo = 0;
    double hi = 0;
    double length() const { return hi - lo; }
};

// Relative tolerance for tie comparisons in the log domain (depth thresholds,
// covering boundaries). Equalities within this relative band count as "<=".
inline constexpr double kTieTol = 1e-12;

// Smallest interval length a materialized approximation may contain; keeps
// endpoint arithmetic exact to ~1e-15 absolute.
inline constexpr double kResolutionCap = 1e-13;

} // namespace phidim
