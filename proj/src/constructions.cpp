#include "phidim/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <utility>

#include "phidim/errors.hpp"
#include "phidim/estimators.hpp"

namespace phidim {

namespace {

constexpr double kLog2 = 0.6931471805599453;

std::string fmt(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.6g", v);
    return b;
}

// Neumaier running sum matching level_sums_from_ratios bit for bit, so that
// decisions taken while a schedule is being laid down agree exactly with
// audits recomputed on the finished stats.
struct RunningLogSum {
    double sum = 0, comp = 0;
    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

// Least integer >= q with the usual relative tie shading, floored at 1.
std::int64_t ceil_tied_min1(double q) {
    double shaded = q - std::abs(q) * kTieTol;
    auto v = static_cast<std::int64_t>(std::ceil(shaded));
    return std::max<std::int64_t>(1, v);
}

std::int64_t depth_of_level(const LevelStats& stats, const DimensionFunction& phi,
                            std::int64_t n) {
    return depth_table(stats, phi, n, n).at(n);
}

// Minimal number of burst levels until the depth condition is met, probed on
// a copy of the running sum with the same accumulator and the same tie
// shading the depth table uses, so post-hoc depth audits recover the burst
// length bit for bit. Returns kDepthUnresolved when cap levels do not reach
// the condition.
std::int64_t burst_length(const RunningLogSum& ls, double phi_at, double log_f,
                          std::int64_t cap) {
    double lsn = ls.value();
    double target = (1.0 + phi_at) * lsn;
    double adj = target + kTieTol * std::abs(target);
    RunningLogSum probe = ls;
    for (std::int64_t j = 1; j <= cap; ++j) {
        probe.add(log_f);
        if (probe.value() <= adj)
            return j;
    }
    return kDepthUnresolved;
}

// Coalesces consecutive levels driven by the same rule into one trail row.
struct TrailBuilder {
    std::vector<ScheduleBlock> rows;
    void note(std::int64_t level, const char* rule, double value) {
        if (!rows.empty()) {
            auto& b = rows.back();
            if (b.rule == rule && b.value == value && b.start + b.len == level) {
                ++b.len;
                return;
            }
        }
        rows.push_back({level, 1, rule, value});
    }
};

} // namespace

void ConstructionReport::check_trail_partition() const {
    std::int64_t expect = 1;
    for (const auto& row : trail) {
        if (row.start != expect || row.len < 1)
            throw HypothesisViolated(name + ": audit trail breaks at level " +
                                     std::to_string(expect));
        expect += row.len;
    }
    if (schedule.levels() > 0 && expect - 1 != schedule.levels())
        throw HypothesisViolated(name + ": audit trail covers " +
                                 std::to_string(expect - 1) + " of " +
                                 std::to_string(schedule.levels()) + " levels");
}

GapSequence middle_third_gaps(std::int64_t blocks) {
    if (blocks < 1)
        throw ConfigError("middle_third_gaps: need at least one block");
    const double log3 = std::log(3.0);
    std::vector<double> log_alpha(static_cast<std::size_t>(blocks));
    for (std::int64_t m = 0; m < blocks; ++m)
        log_alpha[static_cast<std::size_t>(m)] = -static_cast<double>(m + 1) * log3;
    return GapSequence::block_constant(std::move(log_alpha), -log3);
}

FiniteApproximation decreasing_rearrangement(const GapSequence& gaps,
                                             std::int64_t n_points,
                                             std::string gap_id) {
    if (n_points < 1)
        throw ConfigError("decreasing_rearrangement: need at least one point");
    if (n_points > gaps.max_known_index())
        throw InsufficientTail("decreasing_rearrangement: only " +
                               std::to_string(gaps.max_known_index()) +
                               " gaps known");
    std::vector<Interval> iv;
    iv.reserve(static_cast<std::size_t>(n_points) + 1);
    iv.push_back({0.0, 0.0});
    double prev = 0.0;
    for (std::int64_t k = n_points; k >= 1; --k) {
        double p = gaps.tail_sum(k);
        if (!(p > prev))
            throw ResolutionExceeded(
                "decreasing_rearrangement: tail sums collide in double "
                "precision at index " + std::to_string(k));
        iv.push_back({p, p});
        prev = p;
    }
    return make_approximation(std::move(iv), n_points, std::move(gap_id),
                              "decreasing");
}

double log_squared_decay_point(std::int64_t n) {
    if (n < 1)
        throw ConfigError("log_squared_decay_point: indices start at 1");
    double ln = std::log(static_cast<double>(n));
    return std::exp(-ln * ln);
}

double log_squared_decay_phi(std::int64_t n) {
    if (n < 2)
        throw ConfigError("log_squared_decay_phi: defined for n >= 2");
    double M = std::log(4.0 * static_cast<double>(n));
    double L = std::log(static_cast<double>(n));
    return ((1.0 + M) * M - kLog2 - std::log(M)) / (L * L) - 1.0;
}

std::int64_t first_nonmonotone_decay_gap(std::int64_t n_limit) {
    if (n_limit < 2)
        throw ConfigError("first_nonmonotone_decay_gap: need n_limit >= 2");
    double x_cur = log_squared_decay_point(1);
    double x_next = log_squared_decay_point(2);
    double g_prev = x_cur - x_next;
    for (std::int64_t n = 2; n <= n_limit; ++n) {
        x_cur = x_next;
        x_next = log_squared_decay_point(n + 1);
        double g = x_cur - x_next;
        if (g > g_prev)
            return n;
        g_prev = g;
    }
    return 0;
}

DecreasingExampleSet log_squared_decay_set(std::int64_t n_points) {
    if (n_points < 2)
        throw ConfigError("log_squared_decay_set: need at least two points");
    std::vector<Interval> iv;
    iv.reserve(static_cast<std::size_t>(n_points) + 1);
    iv.push_back({0.0, 0.0});
    double prev = 0.0;
    for (std::int64_t n = n_points; n >= 1; --n) {
        double x = log_squared_decay_point(n);
        if (!(x > prev))
            throw ResolutionExceeded(
                "log_squared_decay_set: points collide in double precision "
                "at n = " + std::to_string(n));
        iv.push_back({x, x});
        prev = x;
    }
    FiniteApproximation points = make_approximation(
        std::move(iv), n_points, "log-squared-decay", "decreasing");
    std::vector<double> thr, val;
    thr.reserve(static_cast<std::size_t>(n_points) - 1);
    val.reserve(static_cast<std::size_t>(n_points) - 1);
    for (std::int64_t n = 2; n <= n_points; ++n) {
        double ln = std::log(static_cast<double>(n));
        thr.push_back(-ln * ln);
        val.push_back(log_squared_decay_phi(n));
    }
    return DecreasingExampleSet{
        std::move(points),
        DimensionFunction::piecewise_on_levels(std::move(thr), std::move(val)),
        1.0 / (1.0 + 2.0 * std::log(4.0)), 1.0 / (1.0 + std::log(3.0))};
}

ConstructionReport dimension_gap_schedule(const DimensionFunction& phi1,
                                          const DimensionFunction& phi2,
                                          double tau, double rho, double xi,
                                          std::int64_t n1, std::int64_t N) {
    if (!(tau > 0 && tau < rho && rho < 0.5))
        throw ConfigError("dimension_gap_schedule: need 0 < tau < rho < 1/2");
    if (!(xi > 0) || !std::isfinite(xi))
        throw ConfigError("dimension_gap_schedule: xi must be positive");
    if (n1 < 1 || N < n1)
        throw ConfigError("dimension_gap_schedule: need 1 <= n1 <= N");

    const double log_tau = std::log(tau);
    const double log_rho = std::log(rho);
    const double blend = std::sqrt((1 + xi / 2) / (1 + xi));
    const double eps = (1 - blend) / (1 + blend);
    const double spread = log_tau / log_rho;
    if (spread > (1 + eps) * (1 + 1e-12))
        throw HypothesisViolated("dimension_gap_schedule: |log tau|/|log rho| = " +
                                 fmt(spread) + " exceeds 1 + eps = " + fmt(1 + eps));

    // the two dimension functions must stay separated by 1 + xi at every
    // scale the schedule can visit
    for (std::int64_t n = std::max<std::int64_t>(1, n1 / 2);; n = std::min(2 * n, N)) {
        for (double lr : {log_tau, log_rho}) {
            double lx = static_cast<double>(n) * lr;
            double p1 = phi1.at_log(lx), p2 = phi2.at_log(lx);
            if (!(p1 > 0) || !(p2 > 0) || p1 < (1 + xi) * p2 * (1 - 1e-9))
                throw HypothesisViolated(
                    "dimension_gap_schedule: phi1 < (1+xi) phi2 at log x = " +
                    fmt(lx));
        }
        if (n == N) break;
    }

    // depth thresholds: burst lengths must be short (eps n) yet positive
    const double need0 = (1 + eps) / eps;
    std::int64_t N0 = 0;
    for (std::int64_t n = 1; n <= N && !N0; ++n) {
        double lx = static_cast<double>(n) * log_tau;
        if (n * phi1.at_log(lx) >= need0 && n * phi2.at_log(lx) >= need0)
            N0 = n;
    }
    std::int64_t N1 = 0;
    for (std::int64_t n = 1; n <= N && !N1; ++n) {
        double lx = static_cast<double>(n) * log_rho;
        double worst = std::max(phi1.at_log(lx), phi2.at_log(lx));
        if (1 + (1 + eps) * n * worst <= eps * n)
            N1 = n;
    }
    if (!N0 || !N1)
        throw HypothesisViolated(
            "dimension_gap_schedule: depth thresholds unreachable below N; "
            "the dimension functions decay too slowly");
    std::int64_t gate = 8 * std::max(N0, N1);
    if (n1 < gate)
        throw HypothesisViolated("dimension_gap_schedule: n1 = " +
                                 std::to_string(n1) + " is below the sparsity gate " +
                                 std::to_string(gate));

    ConstructionReport rep;
    rep.name = "dimension_gap_schedule";

    std::vector<double> log_r;
    log_r.reserve(static_cast<std::size_t>(N));
    RunningLogSum ls;
    TrailBuilder trail;
    auto push = [&](double lr, const char* rule, double value) {
        log_r.push_back(lr);
        ls.add(lr);
        trail.note(static_cast<std::int64_t>(log_r.size()), rule, value);
    };

    std::vector<std::int64_t> burst_at, burst_len;
    std::int64_t next_burst = n1;
    bool fit_noted = false;
    while (static_cast<std::int64_t>(log_r.size()) < N) {
        std::int64_t level = static_cast<std::int64_t>(log_r.size()) + 1;
        if (level <= next_burst) {
            push(log_tau, "base", tau);
            continue;
        }
        // at level next_burst + 1: burst length = realized depth of phi2 here,
        // and it must stay below eps n
        auto cap = std::max<std::int64_t>(
            1, static_cast<std::int64_t>(eps * static_cast<double>(next_burst)));
        std::int64_t lj = burst_length(ls, phi2.at_log(ls.value()), log_rho, cap);
        if (lj == kDepthUnresolved)
            throw HypothesisViolated("dimension_gap_schedule: burst at n = " +
                                     std::to_string(next_burst) +
                                     " longer than eps n");
        if (next_burst + lj > N) {
            rep.notes.push_back("burst at n = " + std::to_string(next_burst) +
                                " does not fit below N; tail stays on the base ratio");
            fit_noted = true;
            next_burst = N + 1;
            continue;
        }
        for (std::int64_t t = 0; t < lj; ++t)
            push(log_rho, "burst", rho);
        burst_at.push_back(next_burst);
        burst_len.push_back(lj);
        std::int64_t nxt = 16 * next_burst;
        if (2 * (nxt - next_burst - lj) < static_cast<std::int64_t>(std::ceil(xi * lj)))
            throw HypothesisViolated(
                "dimension_gap_schedule: bursts too close for the xi separation");
        next_burst = nxt;
    }
    if (burst_at.empty())
        throw HypothesisViolated("dimension_gap_schedule: no burst fits below N");
    if (!fit_noted && next_burst > N)
        rep.notes.push_back("next burst at n = " + std::to_string(next_burst) +
                            " does not fit below N; tail stays on the base ratio");

    rep.schedule = RatioSchedule{std::move(log_r)};
    rep.trail = std::move(trail.rows);

    LevelStats stats = level_sums_from_ratios(rep.schedule);
    for (std::size_t j = 0; j < burst_at.size(); ++j) {
        std::int64_t dj = depth_of_level(stats, phi2, burst_at[j]);
        if (dj != burst_len[j])
            throw HypothesisViolated(
                "dimension_gap_schedule: burst at n = " + std::to_string(burst_at[j]) +
                " has length " + std::to_string(burst_len[j]) +
                " but realized depth " + std::to_string(dj));
    }

    const double log_sigma = log_rho / (1 + xi / 2) + log_tau * (xi / (2 + xi));
    rep.constants = {{"eps", eps},
                     {"blend", blend},
                     {"N0", static_cast<double>(N0)},
                     {"N1", static_cast<double>(N1)},
                     {"sigma", std::exp(log_sigma)},
                     {"n1", static_cast<double>(n1)},
                     {"bursts", static_cast<double>(burst_at.size())},
                     {"last_burst_start", static_cast<double>(burst_at.back())},
                     {"last_burst_len", static_cast<double>(burst_len.back())},
                     {"tau", tau},
                     {"rho", rho},
                     {"xi", xi}};
    rep.targets = {{"phi2_dim", kLog2 / -log_rho},
                   {"phi1_dim_bound", kLog2 / -log_sigma}};
    rep.check_trail_partition();
    return rep;
}

ConstructionReport family_target_schedule(std::vector<FamilyTarget> targets,
                                          double alpha, double beta,
                                          std::int64_t N, bool pinning) {
    if (targets.empty())
        throw ConfigError("family_target_schedule: need at least one target");
    if (!(alpha > 0 && alpha < beta && beta < 1))
        throw ConfigError("family_target_schedule: need 0 < alpha < beta < 1");
    if (N < 16)
        throw ConfigError("family_target_schedule: level budget too small");
    for (const auto& t : targets) {
        if (!(t.p > 0 && t.p < 1))
            throw ConfigError("family_target_schedule: exponents must lie in (0,1)");
        if (!(t.d >= alpha - 1e-12 && t.d <= beta + 1e-12))
            throw ConfigError(
                "family_target_schedule: target dimension outside [alpha, beta]");
    }
    {
        auto sorted = targets;
        std::sort(sorted.begin(), sorted.end(),
                  [](const FamilyTarget& x, const FamilyTarget& y) { return x.p < y.p; });
        for (std::size_t i = 1; i < sorted.size(); ++i) {
            if (sorted[i].p == sorted[i - 1].p && sorted[i].d != sorted[i - 1].d)
                throw ConfigError(
                    "family_target_schedule: one exponent with two target dimensions");
            if (sorted[i].p > sorted[i - 1].p && sorted[i].d > sorted[i - 1].d + 1e-12)
                throw ConfigError(
                    "family_target_schedule: target dimensions must be "
                    "non-increasing in the exponent");
        }
    }

    const double log_a = -kLog2 / alpha;
    const double log_b = -kLog2 / beta;
    const double c_half = log_b / (2 * log_a); // |log b| / (2 |log a|)
    const double A_bound = 2 / c_half;
    const double B_bound = c_half;
    const double pair_gate = 8 * A_bound / B_bound;

    struct Sample {
        double p = 0, d = 0, log_f = 0;
        std::int64_t I = 0, J = 0;
        bool placed = false;
    };
    std::vector<Sample> samples; // one per distinct exponent, in input order
    for (const auto& t : targets) {
        bool seen = false;
        for (const auto& s : samples)
            seen = seen || s.p == t.p;
        if (seen)
            continue;
        Sample s;
        s.p = t.p;
        s.d = t.d;
        s.log_f = -kLog2 / t.d;
        // depth bracket valid: (n |log b|)^p > 2 |log a|
        double i_raw = std::pow(2 * (-log_a), 1.0 / t.p) / (-log_b);
        s.I = static_cast<std::int64_t>(std::floor(i_raw)) + 1;
        // burst no longer than an eighth of its start: Phi_p(b^n) <= 1/(8A)
        double j_raw = std::pow(8 * A_bound, 1.0 / (1 - t.p)) / (-log_b);
        s.J = ceil_tied_min1(j_raw);
        samples.push_back(s);
    }

    ConstructionReport rep;
    rep.name = "family_target_schedule";

    std::vector<double> log_r;
    log_r.reserve(static_cast<std::size_t>(N));
    RunningLogSum ls;
    TrailBuilder trail;
    const double a_lin = std::exp(log_a);
    const double a2_lin = std::exp(2 * log_a);
    std::vector<std::pair<std::int64_t, std::int64_t>> runs; // (start, end] pins
    std::size_t run_ptr = 0;
    auto push = [&](double lr, const char* rule, double value) {
        log_r.push_back(lr);
        ls.add(lr);
        trail.note(static_cast<std::int64_t>(log_r.size()), rule, value);
    };
    auto push_filler = [&]() {
        std::int64_t lvl = static_cast<std::int64_t>(log_r.size()) + 1;
        while (run_ptr < runs.size() && runs[run_ptr].second < lvl)
            ++run_ptr;
        if (run_ptr < runs.size() && lvl > runs[run_ptr].first &&
            lvl <= runs[run_ptr].second)
            push(log_a, "pin", a_lin);
        else
            push(2 * log_a, "base", a2_lin);
    };

    struct Block {
        double p = 0;
        std::int64_t n = 0, len = 0, m = 0;
    };
    std::vector<Block> blocks;
    std::int64_t m_prev = 0;
    std::size_t next_sample = 0;
    while (true) {
        Sample& s = samples[next_sample % samples.size()];
        DimensionFunction phi_p = DimensionFunction::power_log(s.p);
        std::vector<DimensionFunction> dominators; // earlier steeper exponents
        for (const auto& o : samples)
            if (o.placed && o.p > s.p)
                dominators.push_back(DimensionFunction::power_log(o.p));
        std::int64_t base = std::max(8 * std::max({s.I, s.J, m_prev}), m_prev + 1);
        auto pair_ok = [&]() {
            double lx = ls.value();
            double pp = phi_p.at_log(lx);
            for (const auto& dom : dominators)
                if (dom.at_log(lx) < pair_gate * pp)
                    return false;
            return true;
        };
        bool feasible = true;
        while (static_cast<std::int64_t>(log_r.size()) < base || !pair_ok()) {
            if (static_cast<std::int64_t>(log_r.size()) + 1 >= N) {
                feasible = false;
                break;
            }
            push_filler();
        }
        if (!feasible) {
            rep.notes.push_back("level budget reached before a block for p = " +
                                fmt(s.p) + " could start");
            break;
        }
        std::int64_t nj = static_cast<std::int64_t>(log_r.size());
        std::int64_t lj =
            burst_length(ls, phi_p.at_log(ls.value()), s.log_f, nj / 8);
        if (lj == kDepthUnresolved)
            throw HypothesisViolated("family_target_schedule: burst at n = " +
                                     std::to_string(nj) + " exceeds n/8");
        if (nj + lj > N) {
            rep.notes.push_back("burst for p = " + fmt(s.p) + " at n = " +
                                std::to_string(nj) + " needs " + std::to_string(lj) +
                                " levels; budget reached");
            break;
        }
        for (std::int64_t t = 0; t < lj; ++t)
            push(s.log_f, "target", std::exp(s.log_f));
        std::int64_t mj = 4 * (nj + lj);
        while (static_cast<std::int64_t>(log_r.size()) < std::min(mj, N))
            push_filler();
        if (pinning) {
            if (4 * mj <= N)
                runs.push_back({2 * mj, 4 * mj});
            else
                rep.notes.push_back("pinning run for the block at n = " +
                                    std::to_string(nj) + " does not fit; skipped");
        }
        blocks.push_back({s.p, nj, lj, mj});
        s.placed = true;
        m_prev = mj;
        ++next_sample;
        if (static_cast<std::int64_t>(log_r.size()) >= N)
            break;
    }
    for (const auto& s : samples)
        if (!s.placed)
            throw BudgetExceeded("family_target_schedule: no block for p = " +
                                 fmt(s.p) + " fits below N = " + std::to_string(N));
    while (static_cast<std::int64_t>(log_r.size()) < N)
        push_filler();

    rep.schedule = RatioSchedule{std::move(log_r)};
    rep.trail = std::move(trail.rows);

    // audits on the finished schedule
    LevelStats stats = level_sums_from_ratios(rep.schedule);
    bool any_pair = false;
    for (std::size_t jb = 0; jb < blocks.size(); ++jb) {
        const Block& bl = blocks[jb];
        DimensionFunction phi_p = DimensionFunction::power_log(bl.p);
        std::int64_t dj = depth_of_level(stats, phi_p, bl.n);
        if (dj != bl.len)
            throw HypothesisViolated("family_target_schedule: burst at n = " +
                                     std::to_string(bl.n) + " has length " +
                                     std::to_string(bl.len) + " but realized depth " +
                                     std::to_string(dj));
        // earlier blocks with steeper exponents must dominate this burst
        std::vector<double> qs;
        for (std::size_t ib = 0; ib < jb; ++ib)
            if (blocks[ib].p > bl.p &&
                std::find(qs.begin(), qs.end(), blocks[ib].p) == qs.end())
                qs.push_back(blocks[ib].p);
        for (double qp : qs) {
            any_pair = true;
            DimensionFunction phi_q = DimensionFunction::power_log(qp);
            double at_n = stats.log_s[static_cast<std::size_t>(bl.n)];
            if (phi_q.at_log(at_n) < pair_gate * phi_p.at_log(at_n) * (1 - 1e-9))
                throw HypothesisViolated(
                    "family_target_schedule: exponent separation below 8A/B at n = " +
                    std::to_string(bl.n));
            for (std::int64_t k : {bl.n - bl.len + 1, bl.n}) {
                std::int64_t dq = depth_of_level(stats, phi_q, k);
                if (dq == kDepthUnresolved) {
                    if (stats.max_level() - k >= 7 * bl.len)
                        continue;
                    rep.notes.push_back("depth audit unresolved for p = " + fmt(qp) +
                                        " at level " + std::to_string(k));
                    continue;
                }
                if (dq < 7 * bl.len)
                    throw HypothesisViolated(
                        "family_target_schedule: depth of the earlier exponent " +
                        fmt(qp) + " at level " + std::to_string(k) + " is " +
                        std::to_string(dq) + " < 7 x " + std::to_string(bl.len));
            }
        }
    }
    if (!any_pair)
        rep.notes.push_back("no constrained exponent pairs: burst ratios are "
                            "non-decreasing in placement order");

    rep.constants = {{"a", a_lin},
                     {"b", std::exp(log_b)},
                     {"c", c_half},
                     {"A", A_bound},
                     {"B", B_bound},
                     {"pair_gate", pair_gate},
                     {"blocks", static_cast<double>(blocks.size())},
                     {"pin_runs", static_cast<double>(runs.size())}};
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        std::string tag = "[p=" + fmt(s.p) + "]";
        rep.constants["I" + tag] = static_cast<double>(s.I);
        rep.constants["J" + tag] = static_cast<double>(s.J);
        rep.targets["dim" + tag] = s.d;
    }
    for (std::size_t jb = 0; jb < blocks.size(); ++jb) {
        std::string tag = std::to_string(jb + 1);
        rep.constants["n_" + tag] = static_cast<double>(blocks[jb].n);
        rep.constants["len_" + tag] = static_cast<double>(blocks[jb].len);
        rep.constants["m_" + tag] = static_cast<double>(blocks[jb].m);
        rep.constants["p_" + tag] = blocks[jb].p;
    }
    if (pinning)
        rep.targets["quasi_assouad"] = alpha;
    rep.check_trail_partition();
    return rep;
}

DimensionFunction dimension_function_from_depth_rule(
    const LevelStats& stats,
    const std::function<std::int64_t(std::int64_t)>& depth_rule,
    std::int64_t first_level, std::int64_t last_level) {
    if (first_level < 1 || last_level < first_level)
        throw ConfigError("dimension_function_from_depth_rule: bad level range");
    std::vector<double> thr, val;
    thr.reserve(static_cast<std::size_t>(last_level - first_level) + 1);
    val.reserve(static_cast<std::size_t>(last_level - first_level) + 1);
    std::int64_t prev_d = -1;
    for (std::int64_t n = first_level; n <= last_level; ++n) {
        std::int64_t d = depth_rule(n);
        if (d < 1)
            throw ConfigError(
                "dimension_function_from_depth_rule: depth rule must be >= 1");
        if (prev_d >= 0 && d < prev_d - 1)
            throw HypothesisViolated(
                "dimension_function_from_depth_rule: depth rule drops by more "
                "than 1 at n = " + std::to_string(n) +
                "; scale monotonicity breaks");
        prev_d = d;
        if (n + d > stats.max_level())
            throw InsufficientTail(
                "dimension_function_from_depth_rule: stats end at level " +
                std::to_string(stats.max_level()) + ", need " +
                std::to_string(n + d));
        double ls_n = stats.log_s[static_cast<std::size_t>(n)];
        thr.push_back(ls_n);
        val.push_back(stats.log_s[static_cast<std::size_t>(n + d)] / ls_n - 1.0);
    }
    return DimensionFunction::piecewise_on_levels(std::move(thr), std::move(val));
}

SparseBurstSchedule sparse_burst_schedule(
    const std::function<std::int64_t(std::int64_t)>& depth_rule,
    const std::function<std::int64_t(std::int64_t)>& burst_len,
    std::int64_t N) {
    if (N < 64)
        throw ConfigError("sparse_burst_schedule: level budget too small");
    const double log_tau = std::log(1.0 / 27.0);
    const double log_rho = std::log(1.0 / 3.0);
    const double A_pd = log_rho / log_tau; // depth bracket: lower coefficient
    const double B_pd = log_tau / log_rho; // and upper coefficient
    const double C = A_pd / (2 * B_pd);
    const std::int64_t k_margin = 8;

    auto rule_at = [&](std::int64_t n) {
        std::int64_t d = depth_rule(n);
        if (d < 1)
            throw ConfigError("sparse_burst_schedule: depth rule must be >= 1");
        return d;
    };
    auto f_at = [&](std::int64_t n) {
        std::int64_t f = burst_len(n);
        if (f < 1)
            throw ConfigError("sparse_burst_schedule: burst length must be >= 1");
        return f;
    };

    // build past the nominal budget so depths at level N still resolve
    const std::int64_t N_ext = N + rule_at(N) + 8;

    struct Burst {
        std::int64_t k = 0, n = 0, f = 0, N_k = 0;
    };
    std::vector<Burst> bursts;
    std::int64_t n_prev = 0, f_prev = 0;
    for (std::int64_t k = 1;; ++k) {
        // depth must already be worth 2k/C extra levels
        std::int64_t Nk = 0;
        double need = 2.0 * static_cast<double>(k) / C;
        for (std::int64_t n = 1; n <= N_ext; ++n)
            if (static_cast<double>(rule_at(n)) >= need) {
                Nk = n;
                break;
            }
        if (!Nk)
            break;
        std::int64_t lower = std::max(2 * Nk, n_prev ? 8 * n_prev : 2 * Nk);
        lower = std::max(lower, n_prev + f_prev + 1);
        std::int64_t found = 0, found_f = 0;
        double margin = C / (2.0 * static_cast<double>(std::max(k, k_margin)));
        for (std::int64_t n = lower; n + 0 <= N_ext; ++n) {
            std::int64_t f = f_at(n);
            if (n + f > N_ext)
                break;
            if (8 * f > n)
                continue;
            if (static_cast<double>(f) <=
                margin * static_cast<double>(rule_at(n - f))) {
                found = n;
                found_f = f;
                break;
            }
        }
        if (!found)
            break;
        bursts.push_back({k, found, found_f, Nk});
        n_prev = found;
        f_prev = found_f;
    }
    if (bursts.empty())
        throw HypothesisViolated(
            "sparse_burst_schedule: no burst satisfies the sparsity "
            "conditions below the level budget");

    ConstructionReport rep;
    rep.name = "sparse_burst_schedule";

    std::vector<double> log_r;
    log_r.reserve(static_cast<std::size_t>(N_ext));
    TrailBuilder trail;
    const double tau_lin = 1.0 / 27.0, rho_lin = 1.0 / 3.0;
    auto push = [&](double lr, const char* rule, double value) {
        log_r.push_back(lr);
        trail.note(static_cast<std::int64_t>(log_r.size()), rule, value);
    };
    std::size_t bi = 0;
    while (static_cast<std::int64_t>(log_r.size()) < N_ext) {
        std::int64_t level = static_cast<std::int64_t>(log_r.size()) + 1;
        if (bi < bursts.size() && level > bursts[bi].n) {
            for (std::int64_t t = 0; t < bursts[bi].f; ++t)
                push(log_rho, "burst", rho_lin);
            ++bi;
            continue;
        }
        push(log_tau, "base", tau_lin);
    }
    rep.schedule = RatioSchedule{std::move(log_r)};
    rep.trail = std::move(trail.rows);

    LevelStats stats = level_sums_from_ratios(rep.schedule);
    DimensionFunction phi = dimension_function_from_depth_rule(stats, rule_at, 1, N);

    // scale monotonicity along the levels
    {
        std::vector<double> grid;
        grid.reserve(static_cast<std::size_t>(N));
        for (std::int64_t n = 1; n <= N; ++n)
            grid.push_back(stats.log_s[static_cast<std::size_t>(n)]);
        auto issues = validate_dimension_function(phi, grid);
        if (!issues.empty())
            throw HypothesisViolated(
                "sparse_burst_schedule: derived dimension function fails "
                "monotonicity at log x = " + fmt(issues.front().log_x));
    }

    // every window of at least twice a burst's length, starting at or inside
    // the burst, still averages at or below the square of the burst ratio
    const double mean_gate = 2 * (-log_rho) * (1 - 1e-9);
    for (const auto& b : bursts) {
        for (std::int64_t start : {b.n, b.n + 1, b.n + b.f}) {
            for (std::int64_t m : {2 * b.f, 3 * b.f}) {
                if (start + m > stats.max_level())
                    continue;
                double drop = stats.log_s[static_cast<std::size_t>(start)] -
                              stats.log_s[static_cast<std::size_t>(start + m)];
                if (drop < static_cast<double>(m) * mean_gate)
                    throw HypothesisViolated(
                        "sparse_burst_schedule: window mean above 1/9 at "
                        "start " + std::to_string(start));
            }
        }
    }

    rep.constants = {{"A", A_pd},
                            {"B", B_pd},
                            {"C", C},
                            {"k_margin", static_cast<double>(k_margin)},
                            {"bursts", static_cast<double>(bursts.size())},
                            {"levels_built", static_cast<double>(N_ext)}};
    for (const auto& b : bursts) {
        std::string tag = std::to_string(b.k);
        rep.constants["n_" + tag] = static_cast<double>(b.n);
        rep.constants["f_" + tag] = static_cast<double>(b.f);
        rep.constants["N_" + tag] = static_cast<double>(b.N_k);
    }
    rep.targets = {{"assouad_dim", kLog2 / -log_rho},
                          {"scaled_bound", kLog2 / (2 * -log_rho)}};
    rep.notes.push_back("schedule extended to " + std::to_string(N_ext) +
                               " levels so depths at the nominal budget resolve");
    rep.check_trail_partition();
    return SparseBurstSchedule{std::move(rep), std::move(phi), N};
}

BlockTreeArrangement block_tree_arrangement(const GapSequence& gaps, double d,
                                            std::int64_t m1,
                                            std::int64_t levels,
                                            std::int64_t residual_stage) {
    if (!(d > 0 && d < 1))
        throw ConfigError("block_tree_arrangement: need d in (0,1)");
    if (m1 < 1)
        throw ConfigError("block_tree_arrangement: need m1 >= 1");
    if (residual_stage < 1 || residual_stage > 16)
        throw ConfigError("block_tree_arrangement: residual stage out of range");
    if (levels < 0 || levels > 21)
        throw ConfigError("block_tree_arrangement: cluster levels capped at 21");

    GapSequence g = gaps.is_block_constant() ? gaps : gaps.snap_to_blocks();

    BlockTreeArrangement out;
    out.report.name = "block_tree_arrangement";
    if (!gaps.is_block_constant())
        out.report.notes.push_back("input gaps snapped to dyadic blocks");

    // block-ratio bounds across the range the construction can touch
    std::int64_t probe_blocks = g.has_tail() ? m1 + 64 : g.blocks() - 1;
    if (probe_blocks < 1)
        throw ConfigError(
            "block_tree_arrangement: need at least two dyadic blocks");
    double log_u = -std::numeric_limits<double>::infinity();
    double log_v = std::numeric_limits<double>::infinity();
    for (std::int64_t m = 0; m + 1 <= probe_blocks; ++m) {
        double lr = g.log_block(m + 1) - g.log_block(m);
        log_u = std::max(log_u, lr);
        log_v = std::min(log_v, lr);
    }
    if (!(log_u < 0))
        throw HypothesisViolated(
            "block_tree_arrangement: dyadic blocks must decrease strictly");
    const double u = std::exp(log_u), v = std::exp(log_v);
    const double dim_floor = kLog2 / -log_u;
    if (d < dim_floor * (1 - 1e-9))
        throw HypothesisViolated("block_tree_arrangement: target " + fmt(d) +
                                 " below the block-ratio dimension floor " +
                                 fmt(dim_floor));

    const double log_beta = -kLog2 / d;
    const double beta = std::exp(log_beta);
    out.beta = beta;
    const double c1 = v / (1 + v);
    const double log_res = std::log(kResolutionCap);

    // level chain: i(j) minimal with alpha_{m1+i}/alpha_m1 <= beta^j, then
    // J_j maximal with J alpha_{m1+i(j)} <= alpha_m1 beta^j
    const double la_m1 = g.log_block(m1);
    std::vector<std::int64_t> i_of, J_of;
    std::vector<std::int64_t> used; // per offset: gaps consumed from block m1+k
    std::int64_t requested = levels > 0 ? levels : 21;
    std::int64_t i_prev = 1;
    for (std::int64_t j = 1; j <= requested; ++j) {
        double cap = static_cast<double>(j) * log_beta;
        double tol = std::abs(cap) * kTieTol;
        std::int64_t i = i_prev;
        bool ran_out = false;
        while (true) {
            if (!g.has_tail() && m1 + i >= g.blocks()) {
                ran_out = true;
                break;
            }
            if (g.log_block(m1 + i) - la_m1 <= cap + tol)
                break;
            ++i;
        }
        if (ran_out) {
            if (levels > 0)
                throw InsufficientTail(
                    "block_tree_arrangement: level " + std::to_string(j) +
                    " needs dyadic blocks past the known range");
            out.report.notes.push_back("cluster stopped at level " +
                                       std::to_string(j - 1) +
                                       ": dyadic blocks exhausted");
            break;
        }
        if (g.log_block(m1 + i) <= log_res) {
            if (levels > 0)
                throw ResolutionExceeded(
                    "block_tree_arrangement: level " + std::to_string(j) +
                    " needs gaps below the position resolution floor");
            out.report.notes.push_back(
                "cluster stopped at level " + std::to_string(j - 1) +
                ": deeper separators fall below the resolution floor");
            break;
        }
        double lX = cap + la_m1 - g.log_block(m1 + i);
        auto J = static_cast<std::int64_t>(std::floor(std::exp(lX) * (1 + 1e-12)));
        J = std::max<std::int64_t>(1, J);
        if (static_cast<double>(J) > 1 / v * (1 + 1e-9))
            throw HypothesisViolated(
                "block_tree_arrangement: separator repeat exceeds 1/v at level " +
                std::to_string(j));
        if (static_cast<std::size_t>(i) >= used.size())
            used.resize(static_cast<std::size_t>(i) + 1, 0);
        std::int64_t demand = used[static_cast<std::size_t>(i)] + (J << (j - 1));
        if (demand > (std::int64_t{1} << (m1 + i - 1))) {
            if (levels > 0)
                throw GapBudgetExceeded(
                    "block_tree_arrangement: level " + std::to_string(j) +
                    " would consume more than half the gaps of dyadic block " +
                    std::to_string(m1 + i));
            out.report.notes.push_back(
                "cluster stopped at level " + std::to_string(j - 1) +
                ": gap budget of block " + std::to_string(m1 + i) + " reached");
            break;
        }
        used[static_cast<std::size_t>(i)] = demand;
        i_of.push_back(i);
        J_of.push_back(J);
        i_prev = i;
    }
    const auto n1 = static_cast<std::int64_t>(i_of.size());
    if (n1 < 1)
        throw HypothesisViolated(
            "block_tree_arrangement: no cluster level fits above the "
            "resolution floor");
    out.block_index = i_of;
    out.block_repeat = J_of;
    out.gaps_used = used;

    // separator lengths and bound audits
    const double alpha_m1 = std::exp(la_m1);
    std::vector<double> spacer(static_cast<std::size_t>(n1));
    double min_sep = std::numeric_limits<double>::infinity();
    for (std::int64_t j = 1; j <= n1; ++j) {
        double sp = static_cast<double>(J_of[static_cast<std::size_t>(j - 1)]) *
                    std::exp(g.log_block(m1 + i_of[static_cast<std::size_t>(j - 1)]));
        spacer[static_cast<std::size_t>(j - 1)] = sp;
        min_sep = std::min(min_sep, sp);
        double target = alpha_m1 * std::pow(beta, static_cast<double>(j));
        if (sp > target * (1 + 1e-9) || sp < c1 * target * (1 - 1e-9))
            throw HypothesisViolated(
                "block_tree_arrangement: separator at level " + std::to_string(j) +
                " outside [c1 alpha beta^j, alpha beta^j]");
    }

    // widths and point positions, in cluster-relative coordinates
    std::vector<double> W(static_cast<std::size_t>(n1) + 2, 0.0);
    for (std::int64_t j = n1; j >= 1; --j)
        W[static_cast<std::size_t>(j)] = 2 * W[static_cast<std::size_t>(j) + 1] +
                                         spacer[static_cast<std::size_t>(j - 1)];
    const double diam = W[1];
    out.cluster_diameter = diam;
    if (diam > alpha_m1 * beta / (1 - 2 * beta) * (1 + 1e-9))
        throw HypothesisViolated(
            "block_tree_arrangement: cluster diameter exceeds alpha beta/(1-2 beta)");

    std::vector<double> rel;
    rel.reserve(std::size_t{1} << n1);
    auto emit = [&](auto&& self, std::int64_t j, double lo) -> void {
        if (j > n1) {
            rel.push_back(lo);
            return;
        }
        self(self, j + 1, lo);
        self(self, j + 1,
             lo + W[static_cast<std::size_t>(j) + 1] + spacer[static_cast<std::size_t>(j - 1)]);
    };
    emit(emit, 1, 0.0);

    // residual tree of the unused gaps, canonical order, to the left
    const double separator = std::exp(g.log_block(0));
    const double total = g.total_mass();
    const double residual_mass = total - separator - diam;
    if (!(residual_mass > 0))
        throw HypothesisViolated("block_tree_arrangement: no mass left for the "
                                 "residual tree");
    const std::int64_t need = (std::int64_t{1} << residual_stage) - 1;
    std::vector<double> resid;
    resid.reserve(static_cast<std::size_t>(need));
    double placed_sum = 0.0;
    for (std::int64_t blk = 0; static_cast<std::int64_t>(resid.size()) < need; ++blk) {
        if (blk > 56)
            throw ConfigError("block_tree_arrangement: residual stage too deep");
        std::int64_t count = (std::int64_t{1} << blk) - (blk == 0 ? 1 : 0);
        std::int64_t off = blk - m1;
        if (off >= 1 && off < static_cast<std::int64_t>(used.size()))
            count -= used[static_cast<std::size_t>(off)];
        double val = std::exp(g.log_block(blk));
        for (; count > 0 && static_cast<std::int64_t>(resid.size()) < need; --count) {
            resid.push_back(val);
            placed_sum += val;
        }
    }
    const double leaf_B =
        (residual_mass - placed_sum) / static_cast<double>(std::int64_t{1} << residual_stage);
    if (!(leaf_B >= 0))
        throw ConfigError(
            "block_tree_arrangement: residual stage deeper than the residual "
            "mass supports");
    std::vector<double> lenB(static_cast<std::size_t>(need) + 1, 0.0);
    for (std::int64_t i = need; i >= 1; --i) {
        double left = 2 * i <= need ? lenB[static_cast<std::size_t>(2 * i)] : leaf_B;
        double right =
            2 * i + 1 <= need ? lenB[static_cast<std::size_t>(2 * i + 1)] : leaf_B;
        lenB[static_cast<std::size_t>(i)] =
            left + resid[static_cast<std::size_t>(i - 1)] + right;
    }
    std::vector<Interval> whole;
    whole.reserve((std::size_t{1} << residual_stage) + rel.size());
    auto emitB = [&](auto&& self, std::int64_t node, double lo) -> void {
        if (node > need) {
            whole.push_back({lo, lo + leaf_B});
            return;
        }
        double left = 2 * node <= need ? lenB[static_cast<std::size_t>(2 * node)] : leaf_B;
        self(self, 2 * node, lo);
        self(self, 2 * node + 1, lo + left + resid[static_cast<std::size_t>(node - 1)]);
    };
    emitB(emitB, 1, 0.0);

    const double origin = total - diam; // cluster flush against the right end
    std::vector<Interval> cluster;
    cluster.reserve(rel.size());
    for (double x : rel)
        cluster.push_back({origin + x, origin + x});
    whole.insert(whole.end(), cluster.begin(), cluster.end());

    out.whole = make_approximation(std::move(whole), n1, "block-tree", "block-tree");
    out.cluster = make_approximation(std::move(cluster), n1, "block-tree",
                                     "block-tree-cluster");

    for (std::int64_t j = 1; j <= n1; ++j)
        out.report.trail.push_back(
            {j, 1, "cluster-level", spacer[static_cast<std::size_t>(j - 1)]});

    const double c3 = 1 + log_beta / log_u;
    std::int64_t m2_min =
        2 * (m1 + static_cast<std::int64_t>(std::ceil(c3 * static_cast<double>(n1))));
    if ((!g.has_tail() && m2_min + 1 >= g.blocks()) ||
        g.log_block(m2_min + 1) <= log_res)
        out.report.notes.push_back(
            "second cluster (first block " + std::to_string(m2_min) +
            ") falls below the resolution floor; one cluster realized");

    out.report.constants = {{"u", u},
                            {"v", v},
                            {"beta", beta},
                            {"c1", c1},
                            {"c2", log_beta / log_v},
                            {"c3", c3},
                            {"m1", static_cast<double>(m1)},
                            {"cluster_levels", static_cast<double>(n1)},
                            {"diameter", diam},
                            {"gamma", diam / (alpha_m1 * beta)},
                            {"separator", separator},
                            {"min_separation", min_sep},
                            {"residual_leaf", leaf_B},
                            {"residual_mass", residual_mass}};
    out.report.targets = {{"cluster_dim", d}};
    out.report.notes.push_back(
        "residual tree splits leaf mass evenly at the cut stage");
    out.report.check_trail_partition();
    return out;
}

SubsequenceSplit subsequence_split(const GapSequence& gaps, double d,
                                   double theta, std::int64_t b_count) {
    if (!(theta > 0 && theta < 1))
        throw ConfigError("subsequence_split: need theta in (0,1)");
    if (b_count < 2)
        throw ConfigError("subsequence_split: need at least two samples");
    const std::int64_t mk =
        std::min<std::int64_t>(gaps.max_known_index(), std::int64_t{1} << 20);
    if (mk < 16)
        throw ConfigError("subsequence_split: gap sequence too short");

    ScanWindow w{std::max<std::int64_t>(2, mk / 64), mk, 1};
    const double sigma = box_dim_decreasing(gaps, w);
    if (!(sigma > 0))
        throw HypothesisViolated("subsequence_split: box dimension estimate is 0");
    if (!(d > 0 && d < std::min(sigma / (1 - theta), 1.0) + 1e-12))
        throw HypothesisViolated(
            "subsequence_split: need 0 < d < min(sigma/(1-theta), 1), got d = " +
            fmt(d) + " with sigma = " + fmt(sigma));
    const double gamma = d * (1 - theta) / sigma;
    const double inv_gamma = 1.0 / gamma;

    // tower indices kept verbatim: 2, 4, 16, 65536, ...
    std::vector<std::int64_t> towers;
    for (std::int64_t t = 2; t <= mk;) {
        towers.push_back(t);
        if (t >= 62)
            break;
        t = std::int64_t{1} << t;
    }

    ConstructionReport rep;
    rep.name = "subsequence_split";
    std::vector<std::int64_t> consumed;
    std::vector<double> bvals;
    bvals.reserve(static_cast<std::size_t>(b_count));
    std::size_t tp = 0;
    std::int64_t towers_hit = 0;
    for (std::int64_t m = 1; m <= b_count; ++m) {
        auto jm = static_cast<std::int64_t>(
            std::floor(std::pow(static_cast<double>(m), inv_gamma)));
        auto jn = static_cast<std::int64_t>(
            std::floor(std::pow(static_cast<double>(m + 1), inv_gamma)));
        jm = std::max<std::int64_t>(1, jm);
        if (jm > mk) {
            rep.notes.push_back("samples truncated at m = " +
                                       std::to_string(m - 1) +
                                       ": deeper indices unknown");
            break;
        }
        while (tp < towers.size() && towers[tp] < jm)
            ++tp;
        std::int64_t idx = jm;
        if (tp < towers.size() && towers[tp] >= jm &&
            towers[tp] < std::max(jn, jm + 1)) {
            idx = towers[tp];
            ++tp;
            ++towers_hit;
        }
        if (!consumed.empty() && idx <= consumed.back())
            throw HypothesisViolated(
                "subsequence_split: consumed indices not strictly increasing "
                "at m = " + std::to_string(m));
        consumed.push_back(idx);
        bvals.push_back(gaps.gap(idx));
    }
    if (consumed.empty())
        throw HypothesisViolated("subsequence_split: no sample fits the known range");

    double b_mass = 0;
    for (double x : bvals)
        b_mass += x;
    GapSequence b = GapSequence::explicit_prefix(std::move(bvals), b_mass);

    // remainder: everything not consumed, with its full mass carried over
    std::vector<double> rem;
    rem.reserve(static_cast<std::size_t>(mk - static_cast<std::int64_t>(consumed.size())));
    double consumed_mass = 0;
    {
        std::size_t cp = 0;
        for (std::int64_t i = 1; i <= mk; ++i) {
            if (cp < consumed.size() && consumed[cp] == i) {
                consumed_mass += gaps.gap(i);
                ++cp;
                continue;
            }
            rem.push_back(gaps.gap(i));
        }
    }
    const auto rem_size = static_cast<std::int64_t>(rem.size());
    GapSequence remainder =
        GapSequence::explicit_prefix(std::move(rem), gaps.total_mass() - consumed_mass);

    // comparability audit: the remainder tracks the original sequence
    double c_min = std::numeric_limits<double>::infinity();
    for (std::int64_t k = 1; k <= rem_size; ++k)
        c_min = std::min(c_min, remainder.gap(k) / gaps.gap(k));
    // depletion per dyadic index block
    double depletion_max = 0;
    {
        std::size_t cp = 0;
        for (std::int64_t t = 0; (std::int64_t{1} << t) <= mk; ++t) {
            std::int64_t lo = std::int64_t{1} << t;
            std::int64_t hi = std::min(mk + 1, std::int64_t{2} << t);
            std::int64_t cnt = 0;
            while (cp < consumed.size() && consumed[cp] < hi) {
                ++cnt;
                ++cp;
            }
            depletion_max = std::max(
                depletion_max, static_cast<double>(cnt) / static_cast<double>(hi - lo));
        }
    }

    rep.constants = {{"sigma", sigma},
                            {"gamma", gamma},
                            {"samples", static_cast<double>(consumed.size())},
                            {"towers_hit", static_cast<double>(towers_hit)},
                            {"comparability", c_min},
                            {"depletion_max", depletion_max}};
    rep.targets = {{"box_dim_b", gamma * sigma},
                          {"theta_dim", d}};
    return SubsequenceSplit{std::move(b), std::move(remainder), std::move(consumed),
                            sigma, gamma, std::move(rep)};
}

Arrangement random_rearrangement(std::uint64_t seed, std::int64_t stage) {
    if (stage < 1 || stage > 20)
        throw ConfigError("random_rearrangement: stage out of range [1, 20]");
    std::int64_t count = (std::int64_t{1} << stage) - 1;
    Arrangement arr;
    arr.kind = Arrangement::Kind::ExplicitOrder;
    arr.seed = seed;
    arr.order.resize(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i)
        arr.order[static_cast<std::size_t>(i)] = i + 1;
    std::mt19937_64 rng(seed);
    for (std::int64_t i = count - 1; i > 0; --i) {
        std::uniform_int_distribution<std::int64_t> pick(0, i);
        std::swap(arr.order[static_cast<std::size_t>(i)],
                  arr.order[static_cast<std::size_t>(pick(rng))]);
    }
    return arr;
}

namespace {

FiniteApproximation realize_tree(const GapSequence& gaps,
                                 const std::vector<std::int64_t>* order,
                                 std::int64_t stage, std::string gap_id,
                                 std::string arrangement_name) {
    if (stage < 1 || stage > 20)
        throw ConfigError("realize_arrangement: stage out of range [1, 20]");
    if (!gaps.is_block_constant())
        throw ConfigError(
            "realize_arrangement: tree stages need a block-constant sequence "
            "(snap_to_blocks first); stage intervals have no common width "
            "otherwise");
    const std::int64_t count = (std::int64_t{1} << stage) - 1;
    if (count > gaps.max_known_index())
        throw InsufficientTail("realize_arrangement: stage needs " +
                               std::to_string(count) + " gaps");
    if (order) {
        if (static_cast<std::int64_t>(order->size()) != count)
            throw ConfigError("realize_arrangement: order must list exactly " +
                              std::to_string(count) + " gap indices");
        std::vector<bool> seen(static_cast<std::size_t>(count) + 1, false);
        for (std::int64_t idx : *order) {
            if (idx < 1 || idx > count || seen[static_cast<std::size_t>(idx)])
                throw ConfigError(
                    "realize_arrangement: order is not a permutation of 1..n");
            seen[static_cast<std::size_t>(idx)] = true;
        }
    }
    const double leaf =
        std::exp(gaps.log_level_tail(stage) - static_cast<double>(stage) * kLog2);
    if (leaf < kResolutionCap)
        throw ResolutionExceeded(
            "realize_arrangement: stage intervals below the resolution floor");

    auto gap_at = [&](std::int64_t node) {
        std::int64_t idx = order ? (*order)[static_cast<std::size_t>(node - 1)] : node;
        return gaps.gap(idx);
    };
    const std::int64_t cap = std::int64_t{1} << stage;
    std::vector<double> len(static_cast<std::size_t>(cap), 0.0);
    for (std::int64_t i = cap - 1; i >= 1; --i) {
        double left = 2 * i < cap ? len[static_cast<std::size_t>(2 * i)] : leaf;
        double right = 2 * i + 1 < cap ? len[static_cast<std::size_t>(2 * i + 1)] : leaf;
        len[static_cast<std::size_t>(i)] = left + gap_at(i) + right;
    }
    std::vector<Interval> iv;
    iv.reserve(static_cast<std::size_t>(cap));
    auto emit = [&](auto&& self, std::int64_t node, double lo) -> void {
        if (node >= cap) {
            iv.push_back({lo, lo + leaf});
            return;
        }
        double left = 2 * node < cap ? len[static_cast<std::size_t>(2 * node)] : leaf;
        self(self, 2 * node, lo);
        self(self, 2 * node + 1, lo + left + gap_at(node));
    };
    emit(emit, 1, 0.0);
    return make_approximation(std::move(iv), stage, std::move(gap_id),
                              std::move(arrangement_name));
}

} // namespace

FiniteApproximation realize_arrangement(const GapSequence& gaps,
                                        const Arrangement& arrangement,
                                        std::int64_t stage, std::string gap_id) {
    switch (arrangement.kind) {
    case Arrangement::Kind::CantorTree:
        return realize_tree(gaps, nullptr, stage, std::move(gap_id), "cantor-tree");
    case Arrangement::Kind::DecreasingOrder:
        return decreasing_rearrangement(gaps, std::int64_t{1} << stage,
                                        std::move(gap_id));
    case Arrangement::Kind::ExplicitOrder:
        return realize_tree(gaps, &arrangement.order, stage, std::move(gap_id),
                            "shuffled-tree seed=" + std::to_string(arrangement.seed));
    case Arrangement::Kind::BlockTree:
        break;
    }
    throw ConfigError(
        "realize_arrangement: block-tree layouts carry their own geometry; "
        "use block_tree_arrangement");
}

FiniteApproximation cantor_tree_approximation(const GapSequence& gaps,
                                              std::int64_t stage,
                                              std::string gap_id) {
    return realize_tree(gaps, nullptr, stage, std::move(gap_id), "cantor-tree");
}

FiniteApproximation central_cantor_approximation(const LevelStats& stats,
                                                 std::int64_t stage,
                                                 std::string gap_id) {
    if (stage < 0 || stage > 22)
        throw ConfigError("central_cantor_approximation: stage out of range [0, 22]");
    if (stage > stats.max_level())
        throw InsufficientTail("central_cantor_approximation: stats end at level " +
                               std::to_string(stats.max_level()));
    if (stats.log_s[static_cast<std::size_t>(stage)] <= std::log(kResolutionCap))
        throw ResolutionExceeded(
            "central_cantor_approximation: stage intervals below the "
            "resolution floor");
    std::vector<Interval> iv{{0.0, std::exp(stats.log_s[0])}};
    for (std::int64_t k = 1; k <= stage; ++k) {
        double s_k = std::exp(stats.log_s[static_cast<std::size_t>(k)]);
        std::vector<Interval> next;
        next.reserve(iv.size() * 2);
        for (const auto& p : iv) {
            next.push_back({p.lo, p.lo + s_k});
            next.push_back({p.hi - s_k, p.hi});
        }
        iv = std::move(next);
    }
    return make_approximation(std::move(iv), stage, std::move(gap_id), "central");
}

} // namespace phidim
