// Command line surface: builds the example constructions, runs the formula
// and oracle estimators, executes the comparability checks, and writes the
// verification battery, all from JSON configs with seeded determinism.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "phidim/acceptance.hpp"
#include "phidim/constructions.hpp"
#include "phidim/dimension_function.hpp"
#include "phidim/errors.hpp"
#include "phidim/estimators.hpp"
#include "phidim/gap_sequence.hpp"
#include "phidim/level_stats.hpp"
#include "phidim/oracle.hpp"
#include "phidim/report.hpp"

using json = nlohmann::json;
using namespace phidim;

namespace {

// Exit codes: 0 clean, 1 unclassified error, 2..10 the library error types
// in declaration order, 65 when a check mode found violations.
constexpr int kExitViolations = 65;

std::string num6(double v) {
    char b[64];
    std::snprintf(b, sizeof b, "%.6g", v);
    return b;
}

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("config is not valid JSON: " + std::string(e.what()));
    }
}

const json& req(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end())
        throw ConfigError(std::string("config field missing: ") + key);
    return *it;
}

template <typename T>
T opt(const json& j, const char* key, T fallback) {
    auto it = j.find(key);
    if (it == j.end())
        return fallback;
    try {
        return it->get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("config field has wrong type: ") + key);
    }
}

template <typename T>
T get(const json& j, const char* key) {
    try {
        return req(j, key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("config field has wrong type: ") + key);
    }
}

// A dimension function descriptor, e.g. {"kind": "power-log", "p": 0.5},
// optionally scaled down with "scale". "set-derived" picks up the function
// a construction carries with it (sparse-burst, decay).
DimensionFunction phi_from_json(const json& j,
                                const std::optional<DimensionFunction>& derived,
                                std::string* label) {
    auto kind = get<std::string>(j, "kind");
    DimensionFunction phi = DimensionFunction::constant(1);
    std::string name;
    if (kind == "constant") {
        double v = get<double>(j, "value");
        phi = DimensionFunction::constant(v);
        name = "constant(" + num6(v) + ")";
    } else if (kind == "power-log") {
        double p = get<double>(j, "p");
        phi = DimensionFunction::power_log(p);
        name = "power-log(" + num6(p) + ")";
    } else if (kind == "reciprocal-log") {
        double c = get<double>(j, "c");
        phi = DimensionFunction::reciprocal_log(c);
        name = "reciprocal-log(" + num6(c) + ")";
    } else if (kind == "log-log") {
        phi = DimensionFunction::log_log();
        name = "log-log";
    } else if (kind == "theta") {
        double theta = get<double>(j, "theta");
        if (!(theta > 0 && theta <= 1))
            throw ConfigError("theta must lie in (0, 1]");
        phi = DimensionFunction::constant(1.0 / theta - 1.0);
        name = "theta(" + num6(theta) + ")";
    } else if (kind == "set-derived") {
        if (!derived)
            throw ConfigError("this set carries no derived dimension function");
        phi = *derived;
        name = "set-derived";
    } else {
        throw ConfigError("unknown dimension function kind: " + kind);
    }
    if (j.contains("scale")) {
        double f = get<double>(j, "scale");
        phi = phi.scaled(f);
        name += "*" + num6(f);
    }
    if (label)
        *label = name;
    return phi;
}

GapSequence gaps_from_json(const json& j) {
    auto kind = get<std::string>(j, "kind");
    if (kind == "middle-third")
        return middle_third_gaps(opt<std::int64_t>(j, "blocks", 30));
    if (kind == "central") {
        double ratio = get<double>(j, "ratio");
        auto levels = get<std::int64_t>(j, "levels");
        RatioSchedule sched;
        sched.log_r.assign(static_cast<std::size_t>(std::max<std::int64_t>(levels, 0)),
                           std::log(ratio));
        return GapSequence::from_central_ratios(level_sums_from_ratios(sched));
    }
    if (kind == "explicit") {
        auto values = get<std::vector<double>>(j, "values");
        return GapSequence::explicit_prefix(values, get<double>(j, "total_mass"));
    }
    throw ConfigError("unknown gap sequence kind: " + kind);
}

// Everything a subcommand may need from the configured set: the report is
// always present, the others depend on the construction kind.
struct BuiltSet {
    ConstructionReport report;
    std::optional<LevelStats> stats;
    std::optional<FiniteApproximation> approx;
    std::optional<DimensionFunction> derived_phi;
    std::int64_t levels = 0;
};

BuiltSet build_set(const json& set, std::uint64_t seed) {
    BuiltSet b;
    auto kind = get<std::string>(set, "kind");
    if (kind == "constant-ratio") {
        double ratio = get<double>(set, "ratio");
        auto levels = get<std::int64_t>(set, "levels");
        if (levels < 1)
            throw ConfigError("levels must be at least 1");
        RatioSchedule sched;
        sched.log_r.assign(static_cast<std::size_t>(levels), std::log(ratio));
        b.stats = level_sums_from_ratios(sched);
        b.levels = levels;
        b.report.name = "constant-ratio";
        b.report.schedule = std::move(sched);
        b.report.trail.push_back({1, levels, "base", ratio});
        b.report.constants["ratio"] = ratio;
        b.report.constants["levels"] = static_cast<double>(levels);
        b.report.targets["box_dim"] = std::log(2.0) / -std::log(ratio);
    } else if (kind == "two-regime") {
        auto phi1 = phi_from_json(req(set, "phi1"), std::nullopt, nullptr);
        auto phi2 = phi_from_json(req(set, "phi2"), std::nullopt, nullptr);
        b.report = dimension_gap_schedule(phi1, phi2, get<double>(set, "tau"),
                                          get<double>(set, "rho"), get<double>(set, "xi"),
                                          get<std::int64_t>(set, "n1"),
                                          get<std::int64_t>(set, "levels"));
        b.stats = level_sums_from_ratios(b.report.schedule);
        b.levels = get<std::int64_t>(set, "levels");
    } else if (kind == "multi-target") {
        std::vector<FamilyTarget> targets;
        for (const auto& t : req(set, "targets"))
            targets.push_back({get<double>(t, "p"), get<double>(t, "d")});
        b.report = family_target_schedule(std::move(targets), get<double>(set, "alpha"),
                                          get<double>(set, "beta"),
                                          get<std::int64_t>(set, "levels"),
                                          opt<bool>(set, "pinning", true));
        b.stats = level_sums_from_ratios(b.report.schedule);
        b.levels = get<std::int64_t>(set, "levels");
    } else if (kind == "sparse-burst") {
        double a = opt<double>(set, "depth_exponent", 0.7);
        double div = opt<double>(set, "burst_divisor", 48.0);
        if (!(a > 0 && a < 1))
            throw ConfigError("depth_exponent must lie in (0, 1)");
        if (!(div > 0))
            throw ConfigError("burst_divisor must be positive");
        auto levels = get<std::int64_t>(set, "levels");
        auto sb = sparse_burst_schedule(
            [a](std::int64_t n) {
                return static_cast<std::int64_t>(
                    std::ceil(std::pow(static_cast<double>(n), a)));
            },
            [div](std::int64_t n) {
                return std::max<std::int64_t>(
                    2, static_cast<std::int64_t>(
                           std::ceil(std::cbrt(static_cast<double>(n)) / div)));
            },
            levels);
        b.report = std::move(sb.report);
        b.stats = level_sums_from_ratios(b.report.schedule);
        b.derived_phi = std::move(sb.phi);
        b.levels = levels;
    } else if (kind == "decay") {
        auto points = get<std::int64_t>(set, "points");
        auto d = log_squared_decay_set(points);
        b.report.name = "log-squared-decay";
        b.report.constants["points"] = static_cast<double>(points);
        b.report.targets["phi_dim_floor"] = d.phi_floor;
        b.report.targets["phi_dim_ceil"] = d.phi_ceil;
        b.approx = std::move(d.points);
        b.derived_phi = std::move(d.phi);
    } else if (kind == "central") {
        double ratio = get<double>(set, "ratio");
        auto stage = get<std::int64_t>(set, "stage");
        RatioSchedule sched;
        sched.log_r.assign(static_cast<std::size_t>(std::max<std::int64_t>(stage, 0)),
                           std::log(ratio));
        auto stats = level_sums_from_ratios(sched);
        b.approx = central_cantor_approximation(stats, stage, "central");
        b.stats = std::move(stats);
        b.levels = stage;
        b.report.name = "central";
        b.report.schedule = std::move(sched);
        b.report.constants["ratio"] = ratio;
        b.report.constants["stage"] = static_cast<double>(stage);
        b.report.targets["box_dim"] = std::log(2.0) / -std::log(ratio);
    } else if (kind == "tree") {
        auto gaps = gaps_from_json(req(set, "gaps"));
        auto stage = get<std::int64_t>(set, "stage");
        auto order = opt<std::string>(set, "order", "canonical");
        b.report.name = "tree(" + order + ")";
        b.report.constants["stage"] = static_cast<double>(stage);
        if (order == "canonical") {
            b.approx = cantor_tree_approximation(gaps, stage, "tree");
        } else if (order == "decreasing") {
            Arrangement arr;
            arr.kind = Arrangement::Kind::DecreasingOrder;
            b.approx = realize_arrangement(gaps, arr, stage, "tree");
        } else if (order == "random") {
            b.approx = realize_arrangement(gaps, random_rearrangement(seed, stage),
                                           stage, "tree");
            b.report.constants["seed"] = static_cast<double>(seed);
        } else {
            throw ConfigError("unknown tree order: " + order);
        }
    } else if (kind == "decreasing") {
        auto gaps = gaps_from_json(req(set, "gaps"));
        auto points = get<std::int64_t>(set, "points");
        b.approx = decreasing_rearrangement(gaps, points, "decreasing");
        b.report.name = "decreasing";
        b.report.constants["points"] = static_cast<double>(points);
    } else if (kind == "block-tree") {
        auto gaps = gaps_from_json(req(set, "gaps"));
        auto bt = block_tree_arrangement(gaps, get<double>(set, "d"),
                                         get<std::int64_t>(set, "m1"),
                                         opt<std::int64_t>(set, "levels", 0),
                                         get<std::int64_t>(set, "residual_stage"));
        b.report = std::move(bt.report);
        auto part = opt<std::string>(set, "part", "whole");
        if (part == "whole")
            b.approx = std::move(bt.whole);
        else if (part == "cluster")
            b.approx = std::move(bt.cluster);
        else
            throw ConfigError("block-tree part must be whole or cluster");
    } else if (kind == "subsequence-split") {
        auto gaps = gaps_from_json(req(set, "gaps"));
        auto sp = subsequence_split(gaps, get<double>(set, "d"), get<double>(set, "theta"),
                                    get<std::int64_t>(set, "b_count"));
        b.report = std::move(sp.report);
    } else {
        throw ConfigError("unknown set kind: " + kind);
    }
    return b;
}

ScanWindow window_from_json(const json& cfg, std::int64_t levels) {
    if (!cfg.contains("window")) {
        if (levels < 1)
            throw ConfigError("this set has no level schedule; give an explicit window");
        return ScanWindow::defaults(levels);
    }
    const auto& w = cfg["window"];
    return {get<std::int64_t>(w, "k0"), get<std::int64_t>(w, "K"),
            get<std::int64_t>(w, "n_max")};
}

std::vector<double> grid_from_json(const json& cfg) {
    if (cfg.contains("R_grid")) {
        auto g = get<std::vector<double>>(cfg, "R_grid");
        if (g.empty())
            throw ConfigError("R_grid must not be empty");
        return g;
    }
    double start = get<double>(cfg, "R_start");
    double factor = get<double>(cfg, "R_factor");
    auto count = get<std::int64_t>(cfg, "R_count");
    if (!(factor > 0 && factor < 1) || count < 1)
        throw ConfigError("need R_factor in (0, 1) and R_count >= 1");
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(count));
    double R = start;
    for (std::int64_t i = 0; i < count; ++i, R *= factor)
        g.push_back(R);
    return g;
}

std::string join_path(const std::string& dir, const std::string& name) {
    if (dir.empty() || dir == ".")
        return name;
    return dir.back() == '/' ? dir + name : dir + "/" + name;
}

int cmd_construct(const json& cfg, const std::string& out, std::uint64_t seed) {
    auto b = build_set(req(cfg, "set"), seed);
    write_text_file(join_path(out, "report.json"), to_json(b.report));
    std::printf("wrote %s\n", join_path(out, "report.json").c_str());
    if (b.stats) {
        write_text_file(join_path(out, "levelstats.csv"), level_stats_csv(*b.stats));
        std::printf("wrote %s\n", join_path(out, "levelstats.csv").c_str());
    }
    if (b.approx) {
        write_text_file(join_path(out, "intervals.csv"), intervals_csv(*b.approx));
        std::printf("wrote %s\n", join_path(out, "intervals.csv").c_str());
    }
    return 0;
}

int cmd_dim(const json& cfg, const std::string& out, std::uint64_t seed, int threads) {
    auto b = build_set(req(cfg, "set"), seed);
    if (!b.stats)
        throw ConfigError("dim needs a set with a level schedule");
    auto w = window_from_json(cfg, b.levels);
    std::string csv = "phi,mode,value,k_star,n_star,pairs_scanned,skipped_unresolved\n";
    for (const auto& pj : req(cfg, "phi")) {
        std::string label;
        auto phi = phi_from_json(pj, b.derived_phi, &label);
        auto depth = depth_table(*b.stats, phi, w.k0, w.K);
        for (auto mode : {BoundMode::Upper, BoundMode::Lower}) {
            auto est = mode == BoundMode::Upper ? upper_phi_dim(*b.stats, depth, w, threads)
                                                : lower_phi_dim(*b.stats, depth, w, threads);
            char row[256];
            std::snprintf(row, sizeof row, "%s,%s,%.17g,%lld,%lld,%lld,%lld\n",
                          label.c_str(), to_string(mode), est.value,
                          static_cast<long long>(est.k_star),
                          static_cast<long long>(est.n_star),
                          static_cast<long long>(est.pairs_scanned),
                          static_cast<long long>(est.skipped_unresolved));
            csv += row;
            if (est.skipped_unresolved > 0)
                std::fprintf(stderr,
                             "warning: %s %s skipped %lld levels with unresolved depth\n",
                             label.c_str(), to_string(mode),
                             static_cast<long long>(est.skipped_unresolved));
        }
    }
    write_text_file(join_path(out, "dims.csv"), csv);
    std::printf("wrote %s\n", join_path(out, "dims.csv").c_str());
    return 0;
}

int run_check(const json& cfg, const std::string& check, const std::string& out,
              std::uint64_t seed) {
    const json& ck = cfg.contains("check") ? cfg["check"] : json::object();
    auto gaps = ck.contains("gaps") ? gaps_from_json(ck["gaps"])
                                    : middle_third_gaps(12);
    auto stage = opt<std::int64_t>(ck, "stage", 8);
    std::vector<ViolationRow> rows;
    if (check == "prop-dec") {
        auto D = decreasing_rearrangement(gaps, opt<std::int64_t>(ck, "points", 256),
                                          "check");
        auto count = opt<std::int64_t>(ck, "rearrangements", 100);
        auto per = opt<std::int64_t>(ck, "triples", 50);
        for (std::int64_t s = 1; s <= count; ++s) {
            auto E = realize_arrangement(gaps, random_rearrangement(seed + s, stage),
                                         stage, "check");
            std::mt19937_64 rng(seed + 1000 + s);
            std::uniform_real_distribution<double> u(0.0, 1.0);
            std::vector<std::array<double, 3>> triples;
            triples.reserve(static_cast<std::size_t>(per));
            for (std::int64_t t = 0; t < per; ++t) {
                double r = 5e-4 + 0.02 * u(rng);
                double R = r * (2.0 + 30.0 * u(rng));
                triples.push_back({u(rng), R, r});
            }
            auto v = check_prop_dec(E, D, triples);
            rows.insert(rows.end(), v.begin(), v.end());
        }
    } else { // lemma-box
        auto count = opt<std::int64_t>(ck, "rearrangements", 20);
        std::vector<double> radii;
        if (ck.contains("radii")) {
            radii = get<std::vector<double>>(ck, "radii");
        } else {
            for (int e = 0; e < 10; ++e)
                radii.push_back(0.2 * std::pow(0.55, e));
        }
        std::vector<FiniteApproximation> arr;
        arr.reserve(static_cast<std::size_t>(count));
        for (std::int64_t s = 1; s <= count; ++s)
            arr.push_back(realize_arrangement(gaps, random_rearrangement(seed + 100 + s, stage),
                                              stage, "check"));
        for (std::size_t i = 0; i < arr.size(); ++i)
            for (std::size_t j = i + 1; j < arr.size(); ++j) {
                auto v = check_lemma_box(arr[i], arr[j], radii);
                rows.insert(rows.end(), v.begin(), v.end());
            }
    }
    write_text_file(join_path(out, "violations.csv"), violations_csv(rows));
    std::printf("wrote %s (%zu violations)\n", join_path(out, "violations.csv").c_str(),
                rows.size());
    return rows.empty() ? 0 : kExitViolations;
}

int cmd_oracle(const json& cfg, const std::string& check, const std::string& out,
               std::uint64_t seed) {
    if (!check.empty())
        return run_check(cfg, check, out, seed);
    auto b = build_set(req(cfg, "set"), seed);
    if (!b.approx)
        throw ConfigError("oracle needs a set realized as intervals");
    auto phi = cfg.contains("phi")
                   ? phi_from_json(cfg["phi"], b.derived_phi, nullptr)
                   : DimensionFunction::constant(0);
    auto grid = grid_from_json(cfg);
    auto rule = opt<std::string>(cfg, "sample", "all") == "sampled"
                    ? ZSampleRule::SampledEndpoints
                    : ZSampleRule::AllEndpoints;
    auto mode = opt<std::string>(cfg, "bound", "upper") == "lower" ? BoundMode::Lower
                                                                   : BoundMode::Upper;
    auto est = empirical_phi_dim(*b.approx, phi, grid, rule, mode, seed,
                                 opt<std::int64_t>(cfg, "sample_count", 64));
    for (double R : est.dropped_R)
        std::fprintf(stderr, "warning: R = %.6g produced no usable radii pair\n", R);
    write_text_file(join_path(out, "scatter.csv"), scatter_csv(est.scatter));
    write_text_file(join_path(out, "estimate.json"), to_json(est));
    std::printf("wrote %s\nwrote %s\n", join_path(out, "scatter.csv").c_str(),
                join_path(out, "estimate.json").c_str());
    return 0;
}

int cmd_sweep(const json& cfg, const std::string& out, std::uint64_t seed, int threads) {
    auto b = build_set(req(cfg, "set"), seed);
    if (!b.stats)
        throw ConfigError("sweep needs a set with a level schedule");
    std::vector<ScanWindow> windows;
    for (const auto& wj : req(cfg, "windows"))
        windows.push_back({get<std::int64_t>(wj, "k0"), get<std::int64_t>(wj, "K"),
                           get<std::int64_t>(wj, "n_max")});
    if (windows.empty())
        throw ConfigError("windows must not be empty");
    std::string csv = "phi,k0,K,n_max,mode,value,k_star,n_star\n";
    for (const auto& pj : req(cfg, "phi")) {
        std::string label;
        auto phi = phi_from_json(pj, b.derived_phi, &label);
        for (const auto& w : windows) {
            auto depth = depth_table(*b.stats, phi, w.k0, w.K);
            for (auto mode : {BoundMode::Upper, BoundMode::Lower}) {
                auto est = mode == BoundMode::Upper
                               ? upper_phi_dim(*b.stats, depth, w, threads)
                               : lower_phi_dim(*b.stats, depth, w, threads);
                char row[256];
                std::snprintf(row, sizeof row, "%s,%lld,%lld,%lld,%s,%.17g,%lld,%lld\n",
                              label.c_str(), static_cast<long long>(w.k0),
                              static_cast<long long>(w.K),
                              static_cast<long long>(w.n_max), to_string(mode),
                              est.value, static_cast<long long>(est.k_star),
                              static_cast<long long>(est.n_star));
                csv += row;
            }
        }
    }
    write_text_file(join_path(out, "sweep.csv"), csv);
    std::printf("wrote %s\n", join_path(out, "sweep.csv").c_str());
    return 0;
}

int cmd_verify(const std::string& out, int threads) {
    auto results = run_acceptance(threads);
    bool all_pass = true;
    for (const auto& r : results) {
        std::puts(format_criterion(r).c_str());
        all_pass = all_pass && r.pass;
    }
    if (!out.empty()) {
        json doc = json::array();
        for (const auto& r : results) {
            json row;
            row["id"] = r.id;
            row["name"] = r.name;
            row["pass"] = r.pass;
            row["detail"] = r.detail;
            row["seconds"] = r.seconds;
            doc.push_back(row);
        }
        write_text_file(join_path(out, "verify.json"), doc.dump(2) + "\n");
        std::printf("wrote %s\n", join_path(out, "verify.json").c_str());
    }
    return all_pass ? 0 : kExitViolations;
}

int error_code(const Error& e) {
    if (dynamic_cast<const ConfigError*>(&e))
        return 2;
    if (dynamic_cast<const HypothesisViolated*>(&e))
        return 3;
    if (dynamic_cast<const InsufficientTail*>(&e))
        return 4;
    if (dynamic_cast<const RatioOutOfRange*>(&e))
        return 5;
    if (dynamic_cast<const EmptyScan*>(&e))
        return 6;
    if (dynamic_cast<const ResolutionExceeded*>(&e))
        return 7;
    if (dynamic_cast<const IncompatibleSources*>(&e))
        return 8;
    if (dynamic_cast<const BudgetExceeded*>(&e))
        return 9;
    if (dynamic_cast<const GapBudgetExceeded*>(&e))
        return 10;
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Phi-dimension toolkit: constructions, estimators, oracle checks"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".", check_mode;
    std::int64_t seed_flag = 0;
    int threads_flag = 0;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* c = sub->add_option("--config", config_path, "JSON run configuration");
        if (needs_config)
            c->required();
        sub->add_option("--out", out_dir, "output directory (default .)");
        sub->add_option("--seed", seed_flag, "override the config seed");
        sub->add_option("--threads", threads_flag,
                        "worker threads (default: PHIDIM_THREADS or 4)");
    };

    auto* construct = app.add_subcommand("construct", "build a set, write report + tables");
    add_common(construct, true);
    auto* dim = app.add_subcommand("dim", "formula-path dimension estimates");
    add_common(dim, true);
    auto* oracle = app.add_subcommand("oracle", "covering-count estimates and checks");
    add_common(oracle, true);
    oracle->add_option("--check", check_mode, "run a comparability check instead")
        ->check(CLI::IsMember({"prop-dec", "lemma-box"}));
    auto* sweep = app.add_subcommand("sweep", "dimension estimates over phi x window grid");
    add_common(sweep, true);
    auto* verify = app.add_subcommand("verify", "run the full verification battery");
    add_common(verify, false);

    CLI11_PARSE(app, argc, argv);

    int threads = threads_flag;
    if (threads < 1) {
        if (const char* env = std::getenv("PHIDIM_THREADS"))
            threads = std::atoi(env);
        if (threads < 1)
            threads = 4;
    }

    CLI::App* sub = app.get_subcommands().at(0);
    try {
        if (!out_dir.empty() && out_dir != ".") {
            std::error_code ec;
            std::filesystem::create_directories(out_dir, ec);
            if (ec)
                throw ConfigError("cannot create output directory: " + out_dir);
        }
        if (sub == verify)
            return cmd_verify(verify->count("--out") ? out_dir : "", threads);
        json cfg = load_config(config_path);
        auto seed = opt<std::uint64_t>(cfg, "seed", 0);
        if (sub->count("--seed"))
            seed = static_cast<std::uint64_t>(seed_flag);
        if (sub == construct)
            return cmd_construct(cfg, out_dir, seed);
        if (sub == dim)
            return cmd_dim(cfg, out_dir, seed, threads);
        if (sub == oracle)
            return cmd_oracle(cfg, check_mode, out_dir, seed);
        return cmd_sweep(cfg, out_dir, seed, threads);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return error_code(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
