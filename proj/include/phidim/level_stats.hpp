#pragma once

#include <cstdint>
#include <vector>

#include "phidim/dimension_function.hpp"

namespace phidim {

// Per-level scale data for a Cantor-like construction. log_s[n] is the log
// of the average step-n interval length s_n = 2^{-n} * sum_{j >= 2^n} a_j;
// s_0 is the total gap mass (1 when normalized). Always s_{n+1} <= s_n / 2,
// so log_s decreases by at least log 2 per level.
struct LevelStats {
    std::vector<double> log_s;
    std::int64_t max_level() const {
        return static_cast<std::int64_t>(log_s.size()) - 1;
    }
};

// Per-level dissection ratios r_k = s_k / s_{k-1} of a central Cantor set,
// stored as logs; entry i holds log r_{i+1}.
struct RatioSchedule {
    std::vector<double> log_r;
    std::int64_t levels() const {
        return static_cast<std::int64_t>(log_r.size());
    }
};

// log_s[n] = sum_{k <= n} log r_k, accumulated with compensated summation.
// Throws RatioOutOfRange unless every ratio lies in (0, 1/2).
LevelStats level_sums_from_ratios(const RatioSchedule& schedule);

// Consistency check helper: (min, max) of s_{n+1}/s_n over available levels.
struct RatioBounds {
    double tau = 0;    // min ratio
    double lambda = 0; // max ratio
};
RatioBounds level_comparable_bounds(const LevelStats& stats);

inline constexpr std::int64_t kDepthUnresolved = -1;

struct DepthTable {
    std::int64_t first_level = 0;
    std::vector<std::int64_t> depth; // depth[i] = phi(first_level + i)
    std::int64_t unresolved_count = 0;

    std::int64_t last_level() const {
        return first_level + static_cast<std::int64_t>(depth.size()) - 1;
    }
    std::int64_t at(std::int64_t n) const; // bounds-checked
};

// phi(n) = least j >= 0 with log s_{n+j} <= (1 + Phi(s_n)) * log s_n.
// Comparisons carry a 1e-12 relative tie tolerance (ties count as reached).
// Levels whose search exhausts the table are marked kDepthUnresolved.
DepthTable depth_table(const LevelStats& stats, const DimensionFunction& phi,
                       std::int64_t first_level, std::int64_t last_level);

} // namespace phidim
