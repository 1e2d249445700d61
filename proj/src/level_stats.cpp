#include "phidim/level_stats.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "phidim/errors.hpp"
#include "phidim/types.hpp"

namespace phidim {

LevelStats level_sums_from_ratios(const RatioSchedule& schedule) {
    const double log_half = std::log(0.5);
    LevelStats stats;
    stats.log_s.resize(schedule.log_r.size() + 1);
    stats.log_s[0] = 0.0;
    // Neumaier-compensated running sum: the schedules here reach ~1e6 levels
    // and the depth comparisons need the per-level increments uncorrupted.
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < schedule.log_r.size(); ++i) {
        double lr = schedule.log_r[i];
        if (!(lr < log_half) || !std::isfinite(lr)) {
            std::ostringstream os;
            os << "ratio at level " << (i + 1) << " not in (0, 1/2): log r = " << lr;
            throw RatioOutOfRange(os.str());
        }
        double t = sum + lr;
        if (std::abs(sum) >= std::abs(lr))
            comp += (sum - t) + lr;
        else
            comp += (lr - t) + sum;
        sum = t;
        stats.log_s[i + 1] = sum + comp;
    }
    return stats;
}

RatioBounds level_comparable_bounds(const LevelStats& stats) {
    if (stats.log_s.size() < 2)
        throw ConfigError("level_comparable_bounds needs at least two levels");
    double lo = 0, hi = -1e300;
    lo = 1e300;
    for (std::size_t n = 0; n + 1 < stats.log_s.size(); ++n) {
        double r = std::exp(stats.log_s[n + 1] - stats.log_s[n]);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    return {lo, hi};
}

std::int64_t DepthTable::at(std::int64_t n) const {
    std::int64_t i = n - first_level;
    if (i < 0 || i >= static_cast<std::int64_t>(depth.size()))
        throw ConfigError("depth table queried outside its level range");
    return depth[static_cast<std::size_t>(i)];
}

DepthTable depth_table(const LevelStats& stats, const DimensionFunction& phi,
                       std::int64_t first_level, std::int64_t last_level) {
    const auto N = stats.max_level();
    if (first_level < 0 || last_level > N || first_level > last_level)
        throw ConfigError("depth table level range outside available stats");

    DepthTable table;
    table.first_level = first_level;
    table.depth.resize(static_cast<std::size_t>(last_level - first_level + 1));

    const double* ls = stats.log_s.data();
    for (std::int64_t n = first_level; n <= last_level; ++n) {
        double lsn = ls[n];
        double target = (1.0 + phi.at_log(lsn)) * lsn;
        // Ties within relative tolerance count as satisfied (the defining
        // comparison is <=).
        double adj = target + kTieTol * std::abs(target);
        // log_s is strictly decreasing, so the first index meeting the
        // threshold can be found by binary search.
        const double* begin = ls + n;
        const double* end = ls + N + 1;
        const double* it = std::partition_point(
            begin, end, [adj](double v) { return v > adj; });
        if (it == end) {
            table.depth[static_cast<std::size_t>(n - first_level)] = kDepthUnresolved;
            ++table.unresolved_count;
        } else {
            table.depth[static_cast<std::size_t>(n - first_level)] = it - begin;
        }
    }
    return table;
}

} // namespace phidim
