#include "phidim/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <system_error>

#include <json.hpp>

#include "phidim/errors.hpp"

namespace phidim {

namespace {

using nlohmann::json;

// Shortest round-trip decimal form, locale independent.
std::string num(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

json thinned(const std::vector<double>& v, std::int64_t max_entries,
             std::int64_t* stride_out) {
    std::int64_t n = static_cast<std::int64_t>(v.size());
    std::int64_t stride = std::max<std::int64_t>(1, (n + max_entries - 1) / max_entries);
    json arr = json::array();
    for (std::int64_t i = 0; i < n; i += stride)
        arr.push_back(v[static_cast<std::size_t>(i)]);
    *stride_out = stride;
    return arr;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

} // namespace

std::string to_json(const ConstructionReport& rep) {
    json j;
    j["name"] = rep.name;
    j["levels"] = rep.schedule.levels();
    json trail = json::array();
    for (const auto& row : rep.trail)
        trail.push_back({{"start", row.start},
                         {"len", row.len},
                         {"rule", row.rule},
                         {"value", row.value}});
    j["trail"] = trail;
    j["constants"] = json(rep.constants);
    j["targets"] = json(rep.targets);
    j["notes"] = json(rep.notes);
    return dump(j);
}

std::string to_json(const DimEstimate& est, const ScanWindow& w) {
    json j;
    j["value"] = est.value;
    j["mode"] = to_string(est.mode);
    j["k_star"] = est.k_star;
    j["n_star"] = est.n_star;
    j["window"] = {{"k0", w.k0}, {"K", w.K}, {"n_max", w.n_max}};
    j["pairs_scanned"] = est.pairs_scanned;
    j["skipped_unresolved"] = est.skipped_unresolved;
    std::int64_t stride = 1;
    j["partials"] = thinned(est.partials, 256, &stride);
    j["partials_stride"] = stride;
    return dump(j);
}

std::string to_json(const EmpiricalEstimate& est) {
    json j;
    j["value"] = est.value;
    j["slope"] = est.slope;
    j["mode"] = to_string(est.mode);
    j["scatter_rows"] = est.scatter.size();
    j["dropped_R"] = json(est.dropped_R);
    return dump(j);
}

std::string level_stats_csv(const LevelStats& stats) {
    std::string out = "n,log_s,s\n";
    for (std::size_t n = 0; n < stats.log_s.size(); ++n) {
        out += std::to_string(n);
        out += ',';
        out += num(stats.log_s[n]);
        out += ',';
        out += num(std::exp(stats.log_s[n]));
        out += '\n';
    }
    return out;
}

std::string intervals_csv(const FiniteApproximation& approx) {
    std::string out = "lo,hi\n";
    for (const auto& iv : approx.intervals) {
        out += num(iv.lo);
        out += ',';
        out += num(iv.hi);
        out += '\n';
    }
    return out;
}

std::string beta_surface_csv(const std::vector<BetaRow>& rows) {
    std::string out = "k,n,phi_k,beta,admissible\n";
    for (const auto& r : rows) {
        out += std::to_string(r.k);
        out += ',';
        out += std::to_string(r.n);
        out += ',';
        out += std::to_string(r.phi_k);
        out += ',';
        out += num(r.beta);
        out += ',';
        out += r.admissible ? '1' : '0';
        out += '\n';
    }
    return out;
}

std::string scatter_csv(const std::vector<ScatterRow>& rows) {
    std::string out = "R,r,log_R_over_r,stat,mode\n";
    for (const auto& r : rows) {
        out += num(r.R);
        out += ',';
        out += num(r.r);
        out += ',';
        out += num(r.log_R_over_r);
        out += ',';
        out += std::to_string(r.stat);
        out += ',';
        out += to_string(r.mode);
        out += '\n';
    }
    return out;
}

std::string violations_csv(const std::vector<ViolationRow>& rows) {
    std::string out = "z,R,r,lhs,rhs\n";
    for (const auto& r : rows) {
        out += num(r.z);
        out += ',';
        out += num(r.R);
        out += ',';
        out += num(r.r);
        out += ',';
        out += num(r.lhs);
        out += ',';
        out += num(r.rhs);
        out += '\n';
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            throw ConfigError("cannot open for writing: " + tmp);
        f.write(text.data(), static_cast<std::streamsize>(text.size()));
        f.flush();
        if (!f) {
            std::remove(tmp.c_str());
            throw ConfigError("write failed: " + tmp);
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw ConfigError("cannot replace: " + path);
    }
}

} // namespace phidim
