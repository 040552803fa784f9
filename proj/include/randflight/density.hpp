#pragma once

#include <vector>

#include "randflight/model.hpp"

// Analytic engine: transition densities p(x,t) for m in {1,2,4,6}, the
// small-parameter asymptotic density for m=3, their stationary counterparts,
// radial profiles and radial CDFs.
//
// Every density is isotropic and, in the transition regime, depends on
// (lambda, c, t) only through the products a = lambda*t and rho = c*t.  Both
// entry points therefore share one radial kernel in the (a, rho)
// parameterization; the transition/stationary identity along the scaling ray
// is structural.
namespace randflight {

// Truncation control for the six-dimensional series.
struct SeriesControl {
  double rel_tail_tol = 1e-12;
  int n_max = 400;
};

DensityEval transition_density(const FlightParams& fp, double r,
                               const SeriesControl& sc = {});
DensityEval stationary_density(const StationaryParams& sp, double r,
                               const SeriesControl& sc = {});

// AC density on a uniform open radial grid in (0, support), endpoints inset
// by half a grid step.
RadialProfile radial_profile(const FlightParams& fp, int grid_size,
                             const SeriesControl& sc = {});
RadialProfile radial_profile(const StationaryParams& sp, int grid_size,
                             const SeriesControl& sc = {});

// P(||X|| <= r, at least one switch), or the same conditioned on at least
// one switch when conditional = true.  Boundary-aware quadrature; throws
// QuadratureNonConvergence if tol cannot be met.
double radial_cdf(const FlightParams& fp, double r, bool conditional = false,
                  double tol = 1e-9, const SeriesControl& sc = {});
double radial_cdf(const StationaryParams& sp, double r,
                  bool conditional = false, double tol = 1e-9,
                  const SeriesControl& sc = {});

// Cached cumulative radial distribution for repeated evaluation (the
// goodness-of-fit tests query it ~1e6 times).  Cell-wise Gauss-Kronrod
// integration on a grid graded toward a singular boundary, then monotone
// linear interpolation.
class RadialCdf {
 public:
  RadialCdf(const StationaryParams& sp, bool conditional, int cells = 4096,
            double tol = 1e-8, const SeriesControl& sc = {});

  double operator()(double r) const;
  double total_mass() const { return total_; }  // before conditioning

 private:
  std::vector<double> radii_;       // cell edges, radii_[0] = 0
  std::vector<double> cumulative_;  // cumulative_[i] = F(radii_[i])
  double total_ = 0.0;
  double norm_ = 1.0;
};

}  // namespace randflight
