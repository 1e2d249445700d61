#include "phidim/gap_sequence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "phidim/errors.hpp"
#include "phidim/types.hpp"

namespace phidim {

namespace {

constexpr double kLog2 = 0.6931471805599453094;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double logaddexp(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

} // namespace

GapSequence GapSequence::block_constant(std::vector<double> log_alpha,
                                        std::optional<double> tail_log_q) {
    if (log_alpha.empty())
        throw ConfigError("block-constant gap sequence needs at least one block");
    for (std::size_t m = 1; m < log_alpha.size(); ++m)
        if (log_alpha[m] > log_alpha[m - 1] + kTieTol * std::abs(log_alpha[m - 1]))
            throw HypothesisViolated("gap blocks must be non-increasing");
    if (tail_log_q && !(*tail_log_q < -kLog2))
        throw ConfigError("geometric block tail needs q < 1/2");

    GapSequence g;
    g.block_ = true;
    g.log_alpha_ = std::move(log_alpha);
    g.tail_log_q_ = tail_log_q;

    // Total mass: sum of 2^m alpha_m over explicit blocks, plus the closed
    // form alpha_{B-1} 2^B q / (1 - 2q) for the tail.
    double lt = kNegInf;
    for (std::size_t m = 0; m < g.log_alpha_.size(); ++m)
        lt = logaddexp(lt, g.log_alpha_[m] + static_cast<double>(m) * kLog2);
    if (tail_log_q) {
        double B = static_cast<double>(g.log_alpha_.size());
        double tail = g.log_alpha_.back() + B * kLog2 + *tail_log_q -
                      std::log1p(-2.0 * std::exp(*tail_log_q));
        lt = logaddexp(lt, tail);
    }
    g.total_mass_ = std::exp(lt);
    return g;
}

GapSequence GapSequence::explicit_prefix(std::vector<double> gaps,
                                         double total_mass) {
    if (gaps.empty())
        throw ConfigError("explicit gap sequence needs at least one gap");
    if (!(total_mass > 0))
        throw ConfigError("gap sequence total mass must be positive");
    double run = 0;
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        if (!(gaps[i] > 0))
            throw HypothesisViolated("gap values must be positive");
        if (i > 0 && gaps[i] > gaps[i - 1] * (1.0 + kTieTol))
            throw HypothesisViolated("gap values must be non-increasing");
        run += gaps[i];
    }
    if (run > total_mass * (1.0 + 1e-9))
        throw HypothesisViolated("gap prefix exceeds stated total mass");

    GapSequence g;
    g.block_ = false;
    g.total_mass_ = total_mass;
    // Compensated suffix sums, accumulated from the back so that small deep
    // gaps are added before large shallow ones.
    g.suffix_sum_.assign(gaps.size() + 1, 0.0);
    double sum = 0, comp = 0;
    for (std::size_t i = gaps.size(); i-- > 0;) {
        double x = gaps[i];
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
        g.suffix_sum_[i] = sum + comp;
    }
    double rem = total_mass - g.suffix_sum_.front();
    g.remainder_ = rem > total_mass * 1e-12 ? rem : 0.0;
    g.gaps_ = std::move(gaps);
    return g;
}

GapSequence GapSequence::from_central_ratios(const LevelStats& stats) {
    if (stats.log_s.size() < 2)
        throw ConfigError("central-ratio gaps need at least one level");
    std::vector<double> log_alpha(stats.log_s.size() - 1);
    double log_ratio = 0;
    for (std::size_t k = 1; k < stats.log_s.size(); ++k) {
        log_ratio = stats.log_s[k] - stats.log_s[k - 1];
        if (!(log_ratio < -kLog2))
            throw HypothesisViolated(
                "central ratio at or above 1/2 leaves no construction gap");
        // gap at step k: s_{k-1} - 2 s_k, taken in the log domain
        log_alpha[k - 1] = stats.log_s[k - 1] + std::log1p(-2.0 * std::exp(log_ratio));
    }
    // Continue the construction at the last observed ratio. That makes the
    // blocks exactly geometric past the data (alpha_{B} = alpha_{B-1} r) and
    // the gap total telescopes to the full starting mass s_0.
    return block_constant(std::move(log_alpha), log_ratio);
}

std::int64_t GapSequence::blocks() const {
    if (!block_)
        throw ConfigError("blocks() requires the block-constant representation");
    return static_cast<std::int64_t>(log_alpha_.size());
}

std::int64_t GapSequence::max_known_index() const {
    if (!block_)
        return static_cast<std::int64_t>(gaps_.size());
    if (tail_log_q_)
        return std::numeric_limits<std::int64_t>::max();
    return (std::int64_t{1} << log_alpha_.size()) - 1;
}

double GapSequence::log_block(std::int64_t m) const {
    if (!block_ || m < 0)
        throw ConfigError("log_block needs a block-constant sequence and m >= 0");
    auto B = static_cast<std::int64_t>(log_alpha_.size());
    if (m < B)
        return log_alpha_[static_cast<std::size_t>(m)];
    if (!tail_log_q_)
        throw InsufficientTail("gap block beyond explicit range and no tail");
    return log_alpha_.back() + static_cast<double>(m - B + 1) * *tail_log_q_;
}

double GapSequence::log_gap(std::int64_t i) const {
    if (i < 1)
        throw ConfigError("gap indices start at 1");
    if (block_) {
        std::int64_t m = 0;
        while ((std::int64_t{2} << m) <= i)
            ++m; // m = floor(log2 i)
        return log_block(m);
    }
    if (i > static_cast<std::int64_t>(gaps_.size()))
        throw InsufficientTail("gap index beyond explicit prefix");
    return std::log(gaps_[static_cast<std::size_t>(i - 1)]);
}

double GapSequence::gap(std::int64_t i) const { return std::exp(log_gap(i)); }

double GapSequence::total_mass() const { return total_mass_; }

double GapSequence::log_level_tail(std::int64_t n) const {
    if (n < 0)
        throw ConfigError("level index must be >= 0");
    if (block_) {
        auto B = static_cast<std::int64_t>(log_alpha_.size());
        double lt = kNegInf;
        for (std::int64_t m = n; m < B; ++m)
            lt = logaddexp(lt, log_alpha_[static_cast<std::size_t>(m)] +
                                   static_cast<double>(m) * kLog2);
        if (tail_log_q_) {
            std::int64_t M = std::max(n, B);
            double tail = log_alpha_.back() +
                          static_cast<double>(M - B + 1) * *tail_log_q_ +
                          static_cast<double>(M) * kLog2 -
                          std::log1p(-2.0 * std::exp(*tail_log_q_));
            lt = logaddexp(lt, tail);
        } else if (n >= B) {
            throw InsufficientTail("level tail beyond explicit blocks");
        }
        return lt;
    }
    // Explicit prefix: sum_{j >= 2^n} a_j = stored suffix sum plus the mass
    // past the prefix. All known indices below 2^n must lie in the prefix.
    auto P = static_cast<std::int64_t>(gaps_.size());
    if ((n >= 63) || ((std::int64_t{1} << n) > P + 1))
        throw InsufficientTail("level tail needs gaps beyond the explicit prefix");
    std::int64_t first = std::int64_t{1} << n; // first index in the tail
    double tail = suffix_sum_[static_cast<std::size_t>(first - 1)] + remainder_;
    if (!(tail > 0)) {
        std::ostringstream os;
        os << "level " << n << " tail sum is not positive";
        throw InsufficientTail(os.str());
    }
    return std::log(tail);
}

double GapSequence::tail_sum(std::int64_t k) const {
    if (k < 1)
        throw ConfigError("gap indices start at 1");
    if (!block_) {
        if (k - 1 > static_cast<std::int64_t>(gaps_.size()))
            throw InsufficientTail("tail sum starts beyond the explicit prefix");
        return suffix_sum_[static_cast<std::size_t>(k - 1)] + remainder_;
    }
    std::int64_t m = 0;
    while ((std::int64_t{2} << m) <= k)
        ++m;
    // Partial block m: indices k .. 2^{m+1}-1, then full blocks above.
    double partial = static_cast<double>((std::int64_t{2} << m) - k) *
                     std::exp(log_block(m));
    double above = 0.0;
    auto B = static_cast<std::int64_t>(log_alpha_.size());
    if (m + 1 < B || tail_log_q_)
        above = std::exp(log_level_tail(m + 1));
    else if (m + 1 > B)
        throw InsufficientTail("tail sum beyond explicit blocks");
    return partial + above;
}

double GapSequence::observed_kappa(std::int64_t n_limit) const {
    std::int64_t hi = std::min(n_limit, max_known_index() / 2);
    if (hi < 1)
        throw ConfigError("observed_kappa needs at least indices 1 and 2");
    double best = 0;
    for (std::int64_t n = 1; n <= hi; ++n)
        best = std::max(best, std::exp(log_gap(n) - log_gap(2 * n)));
    return best;
}

GapSequence GapSequence::snap_to_blocks() const {
    if (block_)
        return *this;
    std::vector<double> log_alpha;
    for (std::int64_t m = 0; (std::int64_t{1} << m) <=
                             static_cast<std::int64_t>(gaps_.size());
         ++m)
        log_alpha.push_back(std::log(gaps_[static_cast<std::size_t>(
            (std::int64_t{1} << m) - 1)]));
    return block_constant(std::move(log_alpha), std::nullopt);
}

LevelStats level_sums(const GapSequence& gaps, std::int64_t N) {
    if (N < 0)
        throw ConfigError("level count must be >= 0");
    LevelStats stats;
    stats.log_s.resize(static_cast<std::size_t>(N) + 1);
    for (std::int64_t n = 0; n <= N; ++n)
        stats.log_s[static_cast<std::size_t>(n)] =
            gaps.log_level_tail(n) - static_cast<double>(n) * kLog2;
    return stats;
}

} // namespace phidim
