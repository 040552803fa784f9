#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Core value types for finite-velocity random flights: motion at constant
// speed c whose direction is resampled at the events of a Poisson process of
// rate lambda, observed at time t in dimension m.  The long-time scaling
// regime with lambda*t -> a and c*t -> rho has a stationary distribution on
// the ball of radius rho; both parameterizations live here.
namespace randflight {

struct UnsupportedDimension : std::domain_error {
  explicit UnsupportedDimension(int m)
      : std::domain_error("unsupported dimension m=" + std::to_string(m) +
                          "; analytic densities exist for m in {1,2,3,4,6}"),
        m(m) {}
  int m;
};

struct AsymptoticValidityError : std::domain_error {
  explicit AsymptoticValidityError(double a)
      : std::domain_error(
            "m=3 density is a small-parameter asymptotic, valid only for "
            "lambda*t <= 0.1; got " +
            std::to_string(a)),
        a(a) {}
  double a;
};

struct QuadratureNonConvergence : std::runtime_error {
  QuadratureNonConvergence(double best, double achieved, double requested)
      : std::runtime_error("quadrature did not reach requested tolerance"),
        best_estimate(best),
        achieved_tol(achieved),
        requested_tol(requested) {}
  double best_estimate;
  double achieved_tol;
  double requested_tol;
};

struct UnderpoweredError : std::runtime_error {
  explicit UnderpoweredError(std::uint64_t n)
      : std::runtime_error("insufficient non-singular samples for the "
                           "goodness-of-fit test: " +
                           std::to_string(n) + " < 100"),
        n_samples(n) {}
  std::uint64_t n_samples;
};

// Transition-regime parameters: dimension m, speed c, switching rate lambda,
// elapsed time t.  Simulation accepts any m >= 1; analytic densities are
// restricted to m in {1,2,3,4,6}.
struct FlightParams {
  int m = 1;
  double c = 1.0;
  double lambda = 1.0;
  double t = 1.0;

  void validate() const;  // throws std::invalid_argument
};

// Stationary-regime parameters: a is the limit of lambda*t, rho the limit of
// c*t (the support radius).
struct StationaryParams {
  double a = 1.0;
  double rho = 1.0;
  int m = 1;

  void validate() const;
};

// The stationary parameters reached from fp along the scaling ray:
// a = lambda*t, rho = c*t.
StationaryParams sdc_limit_of(const FlightParams& fp);

// One density query.  The distribution splits into a singular part (mass
// singular_mass spread uniformly on the sphere of support_radius; carried as
// a mass, never as a pointwise value) and an absolutely continuous part
// (ac_density, zero at and outside support_radius).
struct DensityEval {
  double ac_density = 0.0;
  double singular_mass = 0.0;
  double support_radius = 0.0;
  bool in_support = false;
  // Query fell within 1e-12*support_radius of the boundary in a dimension
  // whose AC density diverges or is only defined by limit there (m in
  // {1,2,3}); the value is the density evaluated at the clamped radius.
  bool boundary_singular = false;
  // m=3 only: the value comes from the small-a asymptotic expansion with
  // error o(a^3).
  bool asymptotic = false;
};

// Terminal state of one simulated path.
struct FlightSample {
  std::vector<double> position;
  std::uint32_t switch_count = 0;
  double radius = 0.0;
};

// AC density sampled on a radial grid (sections of the isotropic density).
struct RadialProfile {
  std::vector<double> radii;
  std::vector<double> values;
  double singular_mass = 0.0;
  double support_radius = 0.0;
  bool boundary_divergent = false;  // density blows up as r -> support radius
};

// Flat serialization used by the CLI: space-separated key=value, and CSV.
std::string to_kv(const FlightParams& fp);
std::string to_kv(const StationaryParams& sp);
std::string to_kv(const DensityEval& de);
std::string csv_row(const DensityEval& de, double r);
std::string csv_row(const FlightSample& fs, std::uint64_t path_index,
                    bool with_coords);

// Shortest round-trip formatting for doubles (used by all CLI output so that
// identical runs are byte-identical).
std::string fmt_double(double v);

}  // namespace randflight
