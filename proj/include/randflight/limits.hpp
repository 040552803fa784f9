#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "randflight/model.hpp"
#include "randflight/simulate.hpp"

// Experiment drivers for the two scaling regimes of the random flight —
// fast diffusion (c, lambda -> inf with c^2/lambda -> rho^2: Gaussian limit)
// and slow diffusion (lambda*t -> a, c*t -> rho: stationary limit) — plus
// simulator-vs-analytic goodness of fit.
namespace randflight {

struct GofReport {
  double ks_statistic = 0.0;   // sup |empirical - analytic| conditional CDF
  double ks_threshold = 0.0;   // asymptotic Kolmogorov bound at alpha = 1e-3
  double singular_z_score = 0.0;  // binomial z of the zero-switch fraction
  double singular_threshold = 0.0;
  std::uint64_t n_paths = 0;
  std::uint64_t n_conditional = 0;
  bool ks_pass = true;
  bool singular_pass = true;
  // Extras reported by the m=3 asymptotic check.
  double mass_gap = 0.0;       // |int ac - (1 - e^{-a})|
  double hist_sup_dev = 0.0;   // sup_i |observed_frac_i - expected_frac_i|
  double hist_worst_z = 0.0;   // worst per-bin binomial z
  bool hist_pass = true;
  bool mass_pass = true;

  bool pass() const {
    return ks_pass && singular_pass && hist_pass && mass_pass;
  }
};

struct LimitTrace {
  std::vector<std::pair<double, double>> parameter_ladder;  // (lambda, c)
  std::vector<double> distances;        // sup-norm distance to limit density
  std::vector<double> singular_masses;  // residual e^{-lambda t} per rung
  std::string target;
};

// Fast-diffusion ladder: for each lambda set c = sqrt(rho2 * lambda),
// evaluate the AC transition density on a fixed radial grid (601 points on
// [0, min(3, 0.999 c t)]) and record the sup distance to the Gaussian with
// per-axis variance rho2*t (m = 1) or (2 rho2 / m) t (m >= 2).
LimitTrace kac_limit_trace(double rho2, double t,
                           const std::vector<double>& ladder, int m);

// Exact-ray identity: max relative discrepancy between
// transition_density({lambda = a/t, c = rho/t, t}) and stationary_density
// over 50 radii for each t.  The closed forms depend on (lambda, c, t) only
// through (lambda t, c t), so this is ~ulp-level for m in {1,2,4} and
// series-truncation-level for m = 6.
double sdc_invariance_check(const StationaryParams& sp,
                            const std::vector<double>& t_values);

// KS test of the conditional radial CDF against the analytic one, plus a
// binomial z-test of the zero-switch fraction against e^{-lambda t};
// thresholds at significance 1e-3.  Throws UnderpoweredError when fewer than
// 100 non-singular samples are available.
GofReport gof_against_analytic(const SampleSummary& summary,
                               const FlightParams& fp);

// m=3 asymptotic validation at (lambda = a, c = rho, t = 1), a <= 0.1:
// quadrature mass gap of the asymptotic AC density vs 1 - e^{-a} (expected
// O(a^3) at worst), and a 20-bin conditional radial histogram against the
// normalized AC density with per-bin binomial z-scores.
GofReport r3_asymptotic_check(double a, double rho, std::uint64_t n_paths,
                              std::uint64_t seed = 42);

// Serialization for the CLI: machine CSV and a human-readable table.
std::string to_csv(const GofReport& report);
std::string to_table(const GofReport& report);
std::string to_csv(const LimitTrace& trace);
std::string to_table(const LimitTrace& trace);

}  // namespace randflight
