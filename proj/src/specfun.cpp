#include "randflight/specfun.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace randflight {

namespace {

using mp50 = boost::multiprecision::cpp_bin_float_50;

constexpr double kSeriesCutoff = 20.0;  // series below, asymptotic above

void check_bessel_arg(double z) {
  if (!std::isfinite(z) || z < 0)
    throw std::domain_error("Bessel argument must be finite and >= 0");
}

// Power series; all terms positive, no cancellation.  nu in {0, 1}.
double bessel_series(int nu, double z, const Accuracy& acc) {
  double q = z * z / 4;
  double term = nu == 0 ? 1.0 : z / 2;
  double sum = term;
  for (int k = 0; k < acc.max_terms; ++k) {
    term *= q / ((k + 1.0) * (k + 1.0 + nu));
    sum += term;
    if (term <= acc.rel_tol * sum * 0.1) break;
  }
  return sum;
}

// e^{-z} I_nu(z) for large z: 1/sqrt(2 pi z) * sum_k t_k with
// t_0 = 1, t_{k+1} = t_k * ((2k+1)^2 - 4 nu^2) / (8 (k+1) z).  Divergent
// asymptotic series; at z >= 20 the smallest term is ~e^{-2z} <= 4e-18, so
// truncating at the first negligible (or growing) term gives full double
// precision.
double bessel_scaled_asymptotic(int nu, double z) {
  double sum = 1.0;
  double term = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 40; ++k) {
    double num = (2.0 * k + 1) * (2.0 * k + 1) - 4.0 * nu * nu;
    term *= num / (8 * (k + 1) * z);
    if (std::abs(term) >= prev) break;  // past the optimal truncation point
    sum += term;
    prev = std::abs(term);
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return sum / std::sqrt(2 * std::numbers::pi * z);
}

}  // namespace

double bessel_i0(double z, const Accuracy& acc) {
  check_bessel_arg(z);
  if (z <= kSeriesCutoff) return bessel_series(0, z, acc);
  return std::exp(z) * bessel_scaled_asymptotic(0, z);
}

double bessel_i1(double z, const Accuracy& acc) {
  check_bessel_arg(z);
  if (z <= kSeriesCutoff) return bessel_series(1, z, acc);
  return std::exp(z) * bessel_scaled_asymptotic(1, z);
}

double bessel_i0_scaled(double z, const Accuracy& acc) {
  check_bessel_arg(z);
  if (z <= kSeriesCutoff) return std::exp(-z) * bessel_series(0, z, acc);
  return bessel_scaled_asymptotic(0, z);
}

double bessel_i1_scaled(double z, const Accuracy& acc) {
  check_bessel_arg(z);
  if (z <= kSeriesCutoff) return std::exp(-z) * bessel_series(1, z, acc);
  return bessel_scaled_asymptotic(1, z);
}

double gauss_f_terminating(int M, double b, double gamma, double z) {
  if (M < 0) throw std::domain_error("series order M must be >= 0");
  if (!(z >= 0.0 && z <= 1.0))
    throw std::domain_error("argument z must lie in [0, 1]");
  for (int k = 0; k < M; ++k)
    if (gamma + k == 0.0)
      throw std::domain_error(
          "pole: gamma hits a nonpositive integer within the series");
  mp50 term = 1;
  mp50 sum = 1;
  mp50 bb = b, gg = gamma, zz = z;
  for (int k = 0; k < M; ++k) {
    term *= (mp50(k) - M) * (bb + k) * zz / ((gg + k) * (k + 1));
    sum += term;
  }
  return static_cast<double>(sum);
}

double gamma_half_integer(int two_n) {
  if (two_n < 1) throw std::domain_error("argument must be >= 1/2");
  double g;
  int k;
  if (two_n % 2 == 0) {  // integer argument n = two_n / 2: (n-1)!
    g = 1.0;
    k = 2;
  } else {  // half-integer: Gamma(1/2) = sqrt(pi)
    g = std::sqrt(std::numbers::pi);
    k = 1;
  }
  for (; k + 2 <= two_n; k += 2) g *= k / 2.0;
  return g;
}

}  // namespace randflight
