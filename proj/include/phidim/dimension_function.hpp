#pragma once

#include <string>
#include <vector>

namespace phidim {

// A dimension function assigns a nonnegative exponent offset Phi(x) to every
// scale x in (0,1), subject to x^(1+Phi(x)) being non-increasing as x
// decreases to 0. Evaluation happens in the log domain: callers pass
// log x (< 0), so scales far below double underflow remain usable.
//
// Built-in families (natural logs throughout, L = |log x|):
//   constant(d)        Phi = d
//   reciprocal_log(c)  Phi = c / L
//   power_log(p)       Phi = L^(p-1), p in (0,1)
//   log_log()          Phi = log(L)/L for L >= e, continued by its maximum
//                      value 1/e on the shallow side (keeps positivity and
//                      the defining monotonicity)
//   table(...)         samples (log x_i, Phi_i), log x strictly decreasing,
//                      with linear-in-log or step interpolation
//   piecewise_on_levels(...)  step function: value[i] on the scale interval
//                      (threshold[i+1], threshold[i]]; exact at thresholds
class DimensionFunction {
  public:
    enum class Kind {
        Constant,
        ReciprocalLog,
        PowerLog,
        LogLog,
        TableDriven,
        PiecewiseOnLevels,
    };
    enum class Interp { LinearInLog, StepLeft };

    static DimensionFunction constant(double delta);
    static DimensionFunction reciprocal_log(double c);
    static DimensionFunction power_log(double p);
    static DimensionFunction log_log();
    static DimensionFunction table(std::vector<double> log_x,
                                   std::vector<double> value, Interp interp);
    static DimensionFunction piecewise_on_levels(std::vector<double> log_thresholds,
                                                 std::vector<double> values);

    double at_log(double log_x) const;
    double operator()(double x) const;

    // factor * Phi. Valid as a dimension function for factor in (0,1] when
    // the base is valid (convex combination with the identity exponent);
    // larger factors should be revalidated by the caller.
    DimensionFunction scaled(double factor) const;

    Kind kind() const { return kind_; }
    const std::string& label() const { return label_; }
    // log of the deepest scale with sample data; -inf for analytic kinds.
    double log_domain_floor() const { return log_domain_floor_; }

  private:
    DimensionFunction() = default;

    Kind kind_ = Kind::Constant;
    Interp interp_ = Interp::StepLeft;
    double param_ = 0;
    double scale_ = 1;
    double log_domain_floor_ = 0; // set in factories
    std::vector<double> log_x_;
    std::vector<double> value_;
    std::string label_;
};

struct ValidationIssue {
    double log_x = 0;      // deeper end of the offending pair (or the point)
    double log_x_prev = 0; // shallower end; equal to log_x for sign issues
    std::string what;
};

// Checks Phi >= 0 and monotonicity of x^(1+Phi(x)) on a descending log-x
// grid; in the log domain the latter means (1+Phi)*log x is non-decreasing
// in log x. Returns every violating grid point / adjacent pair.
std::vector<ValidationIssue>
validate_dimension_function(const DimensionFunction& phi,
                            const std::vector<double>& log_x_grid,
                            double rel_tol = 1e-12);

} // namespace phidim
