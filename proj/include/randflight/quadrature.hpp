#pragma once

#include <functional>

// Boundary-aware numerical integration of isotropic densities over balls in
// R^m, tolerant of inverse-square-root singularities at the outer radius.
namespace randflight {

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  int nodes_used = 0;
};

// Integral over the ball of radius r_max of an isotropic function with
// radial part f:
//
//   integral = int_0^{r_max} f(r) * S_m * r^{m-1} dr,
//   S_m = 2 pi^{m/2} / Gamma(m/2)     (S_1 = 2: even integrand, doubled).
//
// Adaptive nested Gauss-Kronrod 7-15 rule.  With singular_boundary the
// substitution r = r_max * sin(theta) is applied first, which turns an
// integrable 1/sqrt(r_max^2 - r^2) blow-up into a bounded integrand; the
// quadrature never evaluates f at r_max itself in either mode.
//
// Throws QuadratureNonConvergence (carrying the best estimate) if the error
// estimate cannot be brought below tol within the subdivision cap.
QuadResult integrate_radial(const std::function<double(double)>& f, int m,
                            double r_max, bool singular_boundary, double tol);

}  // namespace randflight
