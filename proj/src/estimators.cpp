#include "phidim/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "phidim/errors.hpp"

namespace phidim {

namespace {

constexpr double kLog2 = 0.6931471805599453094;

void check_window(const LevelStats& stats, const DepthTable& depth,
                  const ScanWindow& w) {
    if (w.k0 < 1 || w.K < w.k0 || w.n_max < 1)
        throw ConfigError("scan window needs 1 <= k0 <= K and n_max >= 1");
    if (w.K + w.n_max > stats.max_level())
        throw ConfigError("scan window exceeds available levels (K + n_max > N)");
    if (depth.first_level > w.k0 || depth.last_level() < w.K)
        throw ConfigError("depth table does not cover the scan window");
}

struct KExtremum {
    double value;
    std::int64_t n; // best n at this k (-1 when no admissible pair)
};

// Per-k extremum of beta(k, n) over the admissible n range. Each k is
// independent, so the parallel partition cannot change any per-k result and
// the final reduction is deterministic.
void scan_range(const LevelStats& stats, const DepthTable& depth,
                const ScanWindow& w, bool upper, std::int64_t k_begin,
                std::int64_t k_end, KExtremum* out, std::int64_t* pairs,
                std::int64_t* skipped) {
    const double* ls = stats.log_s.data();
    const auto N = stats.max_level();
    std::int64_t local_pairs = 0, local_skipped = 0;
    for (std::int64_t k = k_begin; k < k_end; ++k) {
        KExtremum best{upper ? -1.0 : 2.0, -1};
        std::int64_t phi_k = depth.at(k);
        if (phi_k == kDepthUnresolved) {
            ++local_skipped;
            out[k - w.k0] = best;
            continue;
        }
        std::int64_t n_lo = std::max<std::int64_t>(phi_k, 1);
        std::int64_t n_hi = std::min(w.n_max, N - k);
        double lsk = ls[k];
        for (std::int64_t n = n_lo; n <= n_hi; ++n) {
            double beta = static_cast<double>(n) * kLog2 / (lsk - ls[k + n]);
            if (upper ? beta > best.value : beta < best.value)
                best = {beta, n};
        }
        if (n_hi >= n_lo)
            local_pairs += n_hi - n_lo + 1;
        out[k - w.k0] = best;
    }
    *pairs = local_pairs;
    *skipped = local_skipped;
}

DimEstimate extremal_scan(const LevelStats& stats, const DepthTable& depth,
                          const ScanWindow& w, BoundMode mode, int threads) {
    check_window(stats, depth, w);
    const bool upper = mode == BoundMode::Upper;
    const std::int64_t count = w.K - w.k0 + 1;
    std::vector<KExtremum> per_k(static_cast<std::size_t>(count));

    int workers = std::max(1, threads);
    workers = static_cast<int>(
        std::min<std::int64_t>(workers, std::max<std::int64_t>(1, count / 256)));
    std::vector<std::int64_t> pairs(static_cast<std::size_t>(workers), 0);
    std::vector<std::int64_t> skipped(static_cast<std::size_t>(workers), 0);
    if (workers <= 1) {
        scan_range(stats, depth, w, upper, w.k0, w.K + 1, per_k.data(),
                   &pairs[0], &skipped[0]);
    } else {
        std::vector<std::thread> pool;
        std::int64_t chunk = (count + workers - 1) / workers;
        for (int t = 0; t < workers; ++t) {
            std::int64_t b = w.k0 + t * chunk;
            std::int64_t e = std::min(w.K + 1, b + chunk);
            if (b >= e)
                continue;
            pool.emplace_back(scan_range, std::cref(stats), std::cref(depth),
                              std::cref(w), upper, b, e, per_k.data(),
                              &pairs[static_cast<std::size_t>(t)],
                              &skipped[static_cast<std::size_t>(t)]);
        }
        for (auto& th : pool)
            th.join();
    }

    DimEstimate est;
    est.mode = mode;
    for (int t = 0; t < workers; ++t) {
        est.pairs_scanned += pairs[static_cast<std::size_t>(t)];
        est.skipped_unresolved += skipped[static_cast<std::size_t>(t)];
    }
    // Suffix extrema: partials[i] covers k >= k0 + i. Scanning backwards
    // with ">=" makes the smallest achieving k (then n) win ties.
    est.partials.resize(per_k.size());
    double acc = upper ? -1.0 : 2.0;
    std::int64_t best_k = -1, best_n = -1;
    for (std::int64_t i = count - 1; i >= 0; --i) {
        const auto& e = per_k[static_cast<std::size_t>(i)];
        if (e.n >= 0 && (upper ? e.value >= acc : e.value <= acc)) {
            acc = e.value;
            best_k = w.k0 + i;
            best_n = e.n;
        }
        est.partials[static_cast<std::size_t>(i)] = acc;
    }
    if (best_k < 0)
        throw EmptyScan("no admissible (k, n) pair in the scan window");
    est.value = acc;
    est.k_star = best_k;
    est.n_star = best_n;
    return est;
}

} // namespace

DimEstimate upper_phi_dim(const LevelStats& stats, const DepthTable& depth,
                          const ScanWindow& w, int threads) {
    return extremal_scan(stats, depth, w, BoundMode::Upper, threads);
}

DimEstimate lower_phi_dim(const LevelStats& stats, const DepthTable& depth,
                          const ScanWindow& w, int threads) {
    return extremal_scan(stats, depth, w, BoundMode::Lower, threads);
}

DimEstimate theta_spectrum(const LevelStats& stats, double theta,
                           const ScanWindow& w, BoundMode mode, int threads) {
    if (!(theta > 0) || !(theta < 1))
        throw ConfigError("theta must lie in (0, 1)");
    auto phi = DimensionFunction::constant(1.0 / theta - 1.0);
    auto depth = depth_table(stats, phi, w.k0, w.K);
    return extremal_scan(stats, depth, w, mode, threads);
}

DimEstimate quasi_assouad(const LevelStats& stats,
                          const std::vector<double>& theta_grid,
                          const ScanWindow& w, int threads) {
    if (theta_grid.empty())
        throw ConfigError("quasi-Assouad needs a nonempty theta grid");
    for (std::size_t i = 1; i < theta_grid.size(); ++i)
        if (!(theta_grid[i] > theta_grid[i - 1]))
            throw ConfigError("theta grid must be strictly increasing");

    DimEstimate last;
    std::vector<double> sequence;
    sequence.reserve(theta_grid.size());
    for (double theta : theta_grid) {
        last = theta_spectrum(stats, theta, w, BoundMode::Upper, threads);
        sequence.push_back(last.value);
    }
    last.partials = std::move(sequence);
    return last;
}

BoxDims box_dims_cantor(const LevelStats& stats, const ScanWindow& w) {
    if (w.k0 < 1 || w.K > stats.max_level() || w.k0 > w.K)
        throw ConfigError("box-dimension window outside available levels");
    BoxDims box{2.0, -1.0};
    for (std::int64_t n = w.k0; n <= w.K; ++n) {
        double d = static_cast<double>(n) * kLog2 /
                   (-stats.log_s[static_cast<std::size_t>(n)]);
        box.lower = std::min(box.lower, d);
        box.upper = std::max(box.upper, d);
    }
    return box;
}

double box_dim_decreasing(const GapSequence& gaps, const ScanWindow& w) {
    if (w.k0 < 1 || w.k0 > w.K)
        throw ConfigError("box-dimension window needs 1 <= k0 <= K");
    if (w.K > gaps.max_known_index())
        throw InsufficientTail("box-dimension window beyond known gaps");
    double best = 0;
    for (std::int64_t n = std::max<std::int64_t>(2, w.k0); n <= w.K; ++n)
        best = std::max(best, std::log(static_cast<double>(n)) / -gaps.log_gap(n));
    return best;
}

std::vector<BetaRow> beta_surface(const LevelStats& stats,
                                  const DepthTable& depth,
                                  const ScanWindow& w) {
    check_window(stats, depth, w);
    const auto N = stats.max_level();
    std::vector<BetaRow> rows;
    for (std::int64_t k = w.k0; k <= w.K; ++k) {
        std::int64_t phi_k = depth.at(k);
        std::int64_t n_hi = std::min(w.n_max, N - k);
        for (std::int64_t n = 1; n <= n_hi; ++n) {
            double beta = static_cast<double>(n) * kLog2 /
                          (stats.log_s[static_cast<std::size_t>(k)] -
                           stats.log_s[static_cast<std::size_t>(k + n)]);
            bool adm = phi_k != kDepthUnresolved && n >= std::max<std::int64_t>(phi_k, 1);
            rows.push_back({k, n, phi_k, beta, adm});
        }
    }
    return rows;
}

} // namespace phidim
