#pragma once

#include <functional>

#include "randflight/quadrature.hpp"

namespace randflight::detail {

// Adaptive Gauss-Kronrod 7-15 on a plain interval [a, b] (the building block
// behind integrate_radial; also used directly for partial radial integrals
// whose singular point lies outside [a, b]).
QuadResult integrate_interval(const std::function<double(double)>& g, double a,
                              double b, double tol);

// A single non-adaptive 7-15 evaluation over [a, b] with the QUADPACK-style
// error estimate (used for cell-wise cumulative integration).
QuadResult gk15_cell(const std::function<double(double)>& g, double a,
                     double b);

}  // namespace randflight::detail
