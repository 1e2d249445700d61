#include "phidim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <unordered_map>

#include "phidim/errors.hpp"

namespace phidim {

namespace {

constexpr double kAmbientSlack = 1e-9; // intervals may poke out this far

// First interval whose right end reaches x (candidates for intersection).
std::size_t first_reaching(const std::vector<Interval>& v, double x) {
    auto it = std::lower_bound(v.begin(), v.end(), x,
                               [](const Interval& a, double b) { return a.hi < b; });
    return static_cast<std::size_t>(it - v.begin());
}

// Greedy covering sweep over intervals clipped to [lo, hi].
std::int64_t sweep_cover(const std::vector<Interval>& v, double lo, double hi,
                         double r) {
    if (!(r > 0))
        throw ConfigError("covering radius must be positive");
    const double ball = 2.0 * r;
    const double tol = ball * kTieTol;
    std::int64_t count = 0;
    double covered_to = -std::numeric_limits<double>::infinity();
    for (std::size_t i = first_reaching(v, lo); i < v.size(); ++i) {
        double l = std::max(v[i].lo, lo);
        double u = std::min(v[i].hi, hi);
        if (l > hi)
            break;
        if (u < l || u <= covered_to + tol)
            continue;
        double x = std::max(l, covered_to); // leftmost uncovered point
        double q = (u - x) / ball;
        auto k = static_cast<std::int64_t>(std::ceil(q * (1.0 - kTieTol)));
        if (k < 1)
            k = 1;
        count += k;
        covered_to = x + static_cast<double>(k) * ball;
    }
    return count;
}

struct ClippedView {
    double lo, hi;
    bool empty;
};

ClippedView window_of(double z, double R) {
    if (!(R > 0))
        throw ConfigError("window radius must be positive");
    return {z - R, z + R, false};
}

// Least-squares slope of y on x (with intercept).
double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
    auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double denom = n * sxx - sx * sx;
    if (!(std::abs(denom) > 0))
        return 0;
    return (n * sxy - sx * sy) / denom;
}

} // namespace

double FiniteApproximation::resolution_floor() const {
    double feature = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        double len = intervals[i].hi - intervals[i].lo;
        if (len > 0)
            feature = std::min(feature, len);
        if (i > 0) {
            double gap = intervals[i].lo - intervals[i - 1].hi;
            if (gap > 0)
                feature = std::min(feature, gap);
        }
    }
    if (!std::isfinite(feature))
        return 0;
    return 2.0 * feature;
}

double FiniteApproximation::leftmost() const {
    if (intervals.empty())
        throw ConfigError("empty approximation has no leftmost point");
    return intervals.front().lo;
}

double FiniteApproximation::rightmost() const {
    if (intervals.empty())
        throw ConfigError("empty approximation has no rightmost point");
    return intervals.back().hi;
}

FiniteApproximation make_approximation(std::vector<Interval> intervals,
                                       std::int64_t level, std::string gap_id,
                                       std::string arrangement) {
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        const auto& iv = intervals[i];
        if (!(iv.hi >= iv.lo) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi))
            throw ConfigError("approximation intervals must be finite with hi >= lo");
        if (iv.lo < -kAmbientSlack || iv.hi > 1.0 + kAmbientSlack)
            throw ConfigError("approximation leaves the ambient interval");
        if (i > 0 && intervals[i].lo < intervals[i - 1].hi)
            throw ConfigError("approximation intervals must be sorted and disjoint");
    }
    FiniteApproximation a;
    a.intervals = std::move(intervals);
    a.level = level;
    a.gap_id = std::move(gap_id);
    a.arrangement = std::move(arrangement);
    return a;
}

std::int64_t covering_number(const FiniteApproximation& approx, double z,
                             double R, double r) {
    auto w = window_of(z, R);
    return sweep_cover(approx.intervals, w.lo, w.hi, r);
}

std::int64_t covering_number_global(const FiniteApproximation& approx, double r) {
    return sweep_cover(approx.intervals,
                       -std::numeric_limits<double>::infinity(),
                       std::numeric_limits<double>::infinity(), r);
}

std::int64_t packing_number(const FiniteApproximation& approx, double z,
                            double R, double r) {
    if (!(r > 0))
        throw ConfigError("packing radius must be positive");
    auto w = window_of(z, R);
    const double ball = 2.0 * r;
    // Next centre must exceed the previous by more than 2r; ties within the
    // relative tolerance count as touching, hence rejected.
    const double step = ball * (1.0 + kTieTol);
    std::int64_t count = 0;
    double need = -std::numeric_limits<double>::infinity();
    for (std::size_t i = first_reaching(approx.intervals, w.lo);
         i < approx.intervals.size(); ++i) {
        double l = std::max(approx.intervals[i].lo, w.lo);
        double u = std::min(approx.intervals[i].hi, w.hi);
        if (l > w.hi)
            break;
        if (u < l)
            continue;
        for (double c = std::max(l, need); c <= u; c = need) {
            ++count;
            need = c + step;
        }
    }
    return count;
}

std::int64_t covering_number_exhaustive(const FiniteApproximation& approx,
                                        double z, double R, double r) {
    if (approx.intervals.size() > 12)
        throw ConfigError("exhaustive covering accepts at most 12 intervals");
    if (!(r > 0))
        throw ConfigError("covering radius must be positive");
    auto w = window_of(z, R);
    std::vector<Interval> clipped;
    for (const auto& iv : approx.intervals) {
        double l = std::max(iv.lo, w.lo);
        double u = std::min(iv.hi, w.hi);
        if (u >= l)
            clipped.push_back({l, u});
    }
    if (clipped.empty())
        return 0;

    const double ball = 2.0 * r;
    const double tol = ball * kTieTol;
    std::unordered_map<std::int64_t, std::int64_t> memo;
    constexpr std::size_t kStateBudget = 1 << 20;

    // min balls covering the part of the set strictly right of covered_to
    auto key_of = [](double t) {
        std::int64_t k;
        static_assert(sizeof(k) == sizeof(t));
        std::memcpy(&k, &t, sizeof(k));
        return k;
    };
    auto recurse = [&](auto&& self, double covered_to) -> std::int64_t {
        // Leftmost uncovered point.
        double x = std::numeric_limits<double>::infinity();
        for (const auto& iv : clipped) {
            if (iv.hi <= covered_to + tol)
                continue;
            x = std::max(iv.lo, covered_to);
            break;
        }
        if (!std::isfinite(x))
            return 0;
        auto it = memo.find(key_of(x));
        if (it != memo.end())
            return it->second;
        if (memo.size() > kStateBudget)
            throw BudgetExceeded("exhaustive covering state budget exhausted");
        // Candidate placements: ball starting at x, or ending flush with an
        // interval end within reach. Every optimal solution can be slid to
        // one of these.
        std::int64_t best = std::numeric_limits<std::int64_t>::max();
        auto try_edge = [&](double e) {
            std::int64_t sub = self(self, e + ball);
            best = std::min(best, 1 + sub);
        };
        try_edge(x);
        for (const auto& iv : clipped)
            if (iv.hi > x && iv.hi <= x + ball)
                try_edge(iv.hi - ball);
        memo.emplace(key_of(x), best);
        return best;
    };
    return recurse(recurse, -std::numeric_limits<double>::infinity());
}

EmpiricalEstimate empirical_phi_dim(const FiniteApproximation& approx,
                                    const DimensionFunction& phi,
                                    const std::vector<double>& R_grid,
                                    ZSampleRule rule, BoundMode mode,
                                    std::uint64_t seed,
                                    std::int64_t sample_count) {
    if (R_grid.empty())
        throw ConfigError("empirical estimate needs a radius grid");
    for (std::size_t i = 0; i < R_grid.size(); ++i) {
        if (!(R_grid[i] > 0))
            throw ConfigError("radius grid entries must be positive");
        if (i > 0 && !(R_grid[i] < R_grid[i - 1]))
            throw ConfigError("radius grid must be strictly descending");
    }
    if (approx.intervals.empty())
        throw ConfigError("empirical estimate needs a nonempty approximation");

    std::vector<double> centres;
    centres.reserve(2 * approx.intervals.size());
    for (const auto& iv : approx.intervals) {
        centres.push_back(iv.lo);
        if (iv.hi > iv.lo)
            centres.push_back(iv.hi);
    }
    if (rule == ZSampleRule::SampledEndpoints &&
        static_cast<std::int64_t>(centres.size()) > sample_count) {
        std::mt19937_64 rng(seed);
        std::vector<double> picked;
        picked.reserve(static_cast<std::size_t>(sample_count));
        // Always keep the extreme endpoints; sample the rest uniformly.
        picked.push_back(centres.front());
        picked.push_back(centres.back());
        std::uniform_int_distribution<std::size_t> pick(0, centres.size() - 1);
        while (static_cast<std::int64_t>(picked.size()) < sample_count)
            picked.push_back(centres[pick(rng)]);
        centres = std::move(picked);
    }

    const bool upper = mode == BoundMode::Upper;
    const double floor = approx.resolution_floor();
    EmpiricalEstimate est;
    est.mode = mode;
    est.value = upper ? -std::numeric_limits<double>::infinity()
                      : std::numeric_limits<double>::infinity();
    std::vector<double> xs, ys;

    for (double R : R_grid) {
        double r_cap = std::exp((1.0 + phi(R)) * std::log(R));
        std::vector<double> radii;
        for (double g : R_grid)
            if (g < R && g <= r_cap * (1.0 + kTieTol))
                radii.push_back(g);
        radii.push_back(r_cap);
        bool any = false;
        for (double r : radii) {
            if (r < floor)
                continue;
            double span = std::log(R) - std::log(r);
            if (span < 1e-9)
                continue;
            std::int64_t stat = upper ? 0 : std::numeric_limits<std::int64_t>::max();
            for (double zc : centres) {
                std::int64_t c = covering_number(approx, zc, R, r);
                stat = upper ? std::max(stat, c) : std::min(stat, c);
            }
            if (stat <= 0)
                continue; // window missed the set entirely
            any = true;
            est.scatter.push_back({R, r, span, stat, mode});
            double v = std::log(static_cast<double>(stat)) / span;
            est.value = upper ? std::max(est.value, v) : std::min(est.value, v);
            xs.push_back(span);
            ys.push_back(std::log(static_cast<double>(stat)));
        }
        if (!any)
            est.dropped_R.push_back(R);
    }
    if (est.scatter.empty())
        throw ResolutionExceeded(
            "every grid radius fell below the approximation's resolution floor");
    est.slope = lsq_slope(xs, ys);
    return est;
}

std::vector<ViolationRow> check_prop_dec(
    const FiniteApproximation& E, const FiniteApproximation& D,
    const std::vector<std::array<double, 3>>& triples) {
    if (E.gap_id != D.gap_id)
        throw IncompatibleSources(
            "rearrangement comparison needs matching gap sequences");
    std::vector<ViolationRow> rows;
    for (const auto& t : triples) {
        double z = t[0], R = t[1], r = t[2];
        if (!(r > 0) || !(r <= R))
            throw ConfigError("check triples need 0 < r <= R");
        auto lhs = covering_number(E, z, R, r);
        auto rhs = 64 * covering_number(D, 0.0, R, r);
        if (lhs > rhs)
            rows.push_back({z, R, r, static_cast<double>(lhs),
                            static_cast<double>(rhs)});
    }
    return rows;
}

std::vector<ViolationRow> check_lemma_box(const FiniteApproximation& F,
                                          const FiniteApproximation& G,
                                          const std::vector<double>& r_grid) {
    if (F.gap_id != G.gap_id)
        throw IncompatibleSources(
            "arrangement comparison needs matching gap sequences");
    std::vector<ViolationRow> rows;
    for (double r : r_grid) {
        auto a = covering_number_global(F, r);
        auto b = covering_number_global(G, r);
        if (a > 16 * b || b > 16 * a)
            rows.push_back({0.0, 0.0, r, static_cast<double>(a),
                            static_cast<double>(b)});
    }
    return rows;
}

} // namespace phidim
