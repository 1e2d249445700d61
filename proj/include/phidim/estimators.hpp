#pragma once

#include <cstdint>
#include <vector>

#include "phidim/gap_sequence.hpp"
#include "phidim/level_stats.hpp"
#include "phidim/types.hpp"

namespace phidim {

// Scan bounds for the sequence criterion: level index k runs over [k0, K],
// depth offset n over [max(phi(k), 1), n_max] clipped so k + n stays within
// the stats. Holds the "exists k0 ... for all k >= k0, n >= phi(k)"
// quantifier structure; the caller chooses k0 deep enough for the
// construction at hand.
struct ScanWindow {
    std::int64_t k0 = 1;
    std::int64_t K = 1;
    std::int64_t n_max = 1;

    static ScanWindow defaults(std::int64_t N) {
        return {std::max<std::int64_t>(1, N / 4), std::max<std::int64_t>(1, N / 2),
                std::max<std::int64_t>(1, N / 2)};
    }
};

struct DimEstimate {
    double value = 0;
    std::int64_t k_star = -1; // achieving pair, smallest k then n
    std::int64_t n_star = -1;
    BoundMode mode = BoundMode::Upper;
    // partials[i]: extremum over pairs with k >= k0 + i (suffix extrema, a
    // convergence diagnostic as the window start grows).
    std::vector<double> partials;
    std::int64_t pairs_scanned = 0;
    std::int64_t skipped_unresolved = 0; // k's dropped for unresolved depth
};

// Extremum of beta(k, n) = n log2 / (log s_k - log s_{k+n}) over the
// admissible pair set. Upper mode takes the max (the value criterion of the
// closed-form dimension formula with its existential constant dropped),
// lower mode the min. threads <= 1 runs single-threaded; the k-range is
// partitioned otherwise and results are deterministic either way.
DimEstimate upper_phi_dim(const LevelStats& stats, const DepthTable& depth,
                          const ScanWindow& w, int threads = 1);
DimEstimate lower_phi_dim(const LevelStats& stats, const DepthTable& depth,
                          const ScanWindow& w, int threads = 1);

// Constant Phi = 1/theta - 1 convenience wrapper.
DimEstimate theta_spectrum(const LevelStats& stats, double theta,
                           const ScanWindow& w, BoundMode mode,
                           int threads = 1);

// Upper spectrum along an ascending theta grid; value = estimate at the last
// grid point, partials = the per-theta sequence.
DimEstimate quasi_assouad(const LevelStats& stats,
                          const std::vector<double>& theta_grid,
                          const ScanWindow& w, int threads = 1);

// (min, max) of n log2 / |log s_n| over n in [w.k0, w.K].
struct BoxDims {
    double lower = 0;
    double upper = 0;
};
BoxDims box_dims_cantor(const LevelStats& stats, const ScanWindow& w);

// max of log n / (-log a_n) over gap indices n in [w.k0, w.K]: upper box
// dimension of the decreasing rearrangement at finite scale.
double box_dim_decreasing(const GapSequence& gaps, const ScanWindow& w);

// Full beta surface for CSV export; admissible = 0 rows mark pairs excluded
// by the depth floor.
struct BetaRow {
    std::int64_t k = 0;
    std::int64_t n = 0;
    std::int64_t phi_k = 0;
    double beta = 0;
    bool admissible = false;
};
std::vector<BetaRow> beta_surface(const LevelStats& stats,
                                  const DepthTable& depth, const ScanWindow& w);

} // namespace phidim
