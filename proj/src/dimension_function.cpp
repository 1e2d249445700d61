#include "phidim/dimension_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "phidim/errors.hpp"

namespace phidim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_param(const char* name, double v) {
    std::ostringstream os;
    os << name << "(" << v << ")";
    return os.str();
}

} // namespace

DimensionFunction DimensionFunction::constant(double delta) {
    if (delta < 0)
        throw ConfigError("constant dimension function needs delta >= 0");
    DimensionFunction f;
    f.kind_ = Kind::Constant;
    f.param_ = delta;
    f.log_domain_floor_ = -kInf;
    f.label_ = format_param("constant", delta);
    return f;
}

DimensionFunction DimensionFunction::reciprocal_log(double c) {
    if (c <= 0)
        throw ConfigError("reciprocal_log dimension function needs c > 0");
    DimensionFunction f;
    f.kind_ = Kind::ReciprocalLog;
    f.param_ = c;
    f.log_domain_floor_ = -kInf;
    f.label_ = format_param("reciprocal_log", c);
    return f;
}

DimensionFunction DimensionFunction::power_log(double p) {
    if (p <= 0 || p >= 1)
        throw ConfigError("power_log dimension function needs p in (0,1)");
    DimensionFunction f;
    f.kind_ = Kind::PowerLog;
    f.param_ = p;
    f.log_domain_floor_ = -kInf;
    f.label_ = format_param("power_log", p);
    return f;
}

DimensionFunction DimensionFunction::log_log() {
    DimensionFunction f;
    f.kind_ = Kind::LogLog;
    f.log_domain_floor_ = -kInf;
    f.label_ = "log_log";
    return f;
}

DimensionFunction DimensionFunction::table(std::vector<double> log_x,
                                           std::vector<double> value,
                                           Interp interp) {
    if (log_x.empty() || log_x.size() != value.size())
        throw ConfigError("table dimension function needs matching nonempty samples");
    for (std::size_t i = 1; i < log_x.size(); ++i)
        if (!(log_x[i] < log_x[i - 1]))
            throw ConfigError("table sample log-x values must be strictly decreasing");
    DimensionFunction f;
    f.kind_ = Kind::TableDriven;
    f.interp_ = interp;
    f.log_domain_floor_ = log_x.back();
    f.log_x_ = std::move(log_x);
    f.value_ = std::move(value);
    f.label_ = "table[" + std::to_string(f.log_x_.size()) + "]";
    return f;
}

DimensionFunction
DimensionFunction::piecewise_on_levels(std::vector<double> log_thresholds,
                                       std::vector<double> values) {
    auto f = table(std::move(log_thresholds), std::move(values), Interp::StepLeft);
    f.kind_ = Kind::PiecewiseOnLevels;
    f.label_ = "piecewise[" + std::to_string(f.log_x_.size()) + "]";
    return f;
}

double DimensionFunction::at_log(double log_x) const {
    double v = 0;
    switch (kind_) {
    case Kind::Constant:
        v = param_;
        break;
    case Kind::ReciprocalLog: {
        double L = std::max(-log_x, 1e-300);
        v = param_ / L;
        break;
    }
    case Kind::PowerLog: {
        double L = std::max(-log_x, 1e-300);
        v = std::pow(L, param_ - 1.0);
        break;
    }
    case Kind::LogLog: {
        double L = -log_x;
        const double e = 2.718281828459045235;
        v = (L >= e) ? std::log(L) / L : 1.0 / e;
        break;
    }
    case Kind::TableDriven:
    case Kind::PiecewiseOnLevels: {
        // log_x_ is strictly decreasing; find the first sample <= log_x.
        auto it = std::lower_bound(log_x_.begin(), log_x_.end(), log_x,
                                   std::greater<double>());
        std::size_t j = static_cast<std::size_t>(it - log_x_.begin());
        if (j >= log_x_.size()) {
            v = value_.back(); // deeper than all samples: clamp
        } else if (log_x_[j] == log_x ||
                   std::abs(log_x_[j] - log_x) <= 1e-12 * std::abs(log_x)) {
            v = value_[j]; // exact threshold hit
        } else if (j == 0) {
            v = value_.front(); // shallower than all samples: clamp
        } else if (interp_ == Interp::StepLeft) {
            v = value_[j - 1]; // open interval (log_x_[j], log_x_[j-1])
        } else {
            double t = (log_x - log_x_[j]) / (log_x_[j - 1] - log_x_[j]);
            v = value_[j] + t * (value_[j - 1] - value_[j]);
        }
        break;
    }
    }
    return scale_ * v;
}

double DimensionFunction::operator()(double x) const {
    return at_log(std::log(x));
}

DimensionFunction DimensionFunction::scaled(double factor) const {
    // Shrinking preserves the defining monotonicity of x^{1 + phi(x)};
    // enlarging can break it, so factors above one are refused.
    if (factor <= 0 || factor > 1)
        throw ConfigError("dimension function scale factor must lie in (0, 1]");
    DimensionFunction f = *this;
    f.scale_ *= factor;
    std::ostringstream os;
    os << factor << "*" << label_;
    f.label_ = os.str();
    return f;
}

std::vector<ValidationIssue>
validate_dimension_function(const DimensionFunction& phi,
                            const std::vector<double>& log_x_grid,
                            double rel_tol) {
    std::vector<ValidationIssue> issues;
    double prev_lx = 0;
    double prev_h = 0;
    bool have_prev = false;
    for (double lx : log_x_grid) {
        if (have_prev && !(lx < prev_lx)) {
            issues.push_back({lx, prev_lx, "grid not strictly descending"});
            continue;
        }
        double v = phi.at_log(lx);
        if (v < 0)
            issues.push_back({lx, lx, "negative value"});
        // x^(1+Phi) non-increasing as x decreases <=> h = (1+Phi(x))*log x
        // non-decreasing in log x.
        double h = (1.0 + v) * lx;
        if (have_prev) {
            double slack = rel_tol * std::max(std::abs(h), std::abs(prev_h));
            if (h > prev_h + slack)
                issues.push_back({lx, prev_lx, "x^(1+Phi) increases as x decreases"});
        }
        prev_lx = lx;
        prev_h = h;
        have_prev = true;
    }
    return issues;
}

} // namespace phidim
