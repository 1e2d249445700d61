#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "phidim/level_stats.hpp"

namespace phidim {

// Non-increasing positive gap lengths a_1 >= a_2 >= ... with finite total
// mass, indexed from 1. Two representations:
//
//  - block-constant: a_{2^m + t} = alpha_m for 0 <= t < 2^m, with explicit
//    blocks m = 0..B-1 and an optional geometric block tail
//    alpha_{B-1+t} = alpha_{B-1} * q^t (2q < 1). The tail keeps level sums
//    in closed form at any depth, entirely in the log domain.
//
//  - explicit prefix: the first P gap values plus the known total mass.
//    Quantities that the prefix cannot pin down to 1e-12 relative error
//    throw InsufficientTail.
class GapSequence {
  public:
    static GapSequence block_constant(std::vector<double> log_alpha,
                                      std::optional<double> tail_log_q);
    static GapSequence explicit_prefix(std::vector<double> gaps,
                                       double total_mass);
    // Gaps of the central Cantor set with the given level sums: 2^{k-1}
    // gaps of length s_{k-1} - 2 s_k at dyadic block k-1. Throws
    // HypothesisViolated if those lengths are not non-increasing.
    static GapSequence from_central_ratios(const LevelStats& stats);

    bool is_block_constant() const { return block_; }
    bool has_tail() const { return tail_log_q_.has_value(); }
    std::int64_t blocks() const; // explicit block count (block repr only)
    // Largest index i with log_gap(i) available.
    std::int64_t max_known_index() const;

    double log_gap(std::int64_t i) const; // log a_i, i >= 1
    double gap(std::int64_t i) const;     // may underflow to 0 for deep i
    double log_block(std::int64_t m) const; // log alpha_m (block repr)

    double total_mass() const;
    // sum_{i >= k} a_i in linear scale (the coordinates of materialized
    // point sets; callers stop before underflow matters).
    double tail_sum(std::int64_t k) const;
    // log sum_{j >= 2^n} a_j; exact at any depth with a geometric tail.
    double log_level_tail(std::int64_t n) const;

    // max a_n / a_{2n} over 1 <= n <= n_limit (doubling constant observed on
    // the known range).
    double observed_kappa(std::int64_t n_limit) const;

    // Dyadic snapping b_{2^m + t} = a_{2^m}: the comparable block-constant
    // sequence of an explicit prefix.
    GapSequence snap_to_blocks() const;

  private:
    GapSequence() = default;

    bool block_ = true;
    std::vector<double> log_alpha_;        // block repr
    std::optional<double> tail_log_q_;     // block repr
    std::vector<double> gaps_;             // explicit repr (linear)
    // Explicit repr: suffix_sum_[i] = gaps_[i] + ... + gaps_.back(), with a
    // trailing zero entry; tail sums add remainder_ (mass past the prefix)
    // instead of subtracting prefix sums, so they never cancel.
    std::vector<double> suffix_sum_;
    double remainder_ = 0;
    double total_mass_ = 0;
};

// log_s[n] = log(2^{-n} sum_{j >= 2^n} a_j) for n = 0..N.
LevelStats level_sums(const GapSequence& gaps, std::int64_t N);

} // namespace phidim
