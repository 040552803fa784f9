#pragma once

// Independent reference implementations used only by tests: 50-digit
// floating point (Boost.Multiprecision) and exact rationals, written
// directly from the defining series with no shared code or algorithmic
// shortcuts from the library under test.
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>

namespace oracles {

using mp = boost::multiprecision::cpp_bin_float_50;
using rational = boost::multiprecision::cpp_rational;

inline const mp& mp_pi() {
  static const mp v = 4 * atan(mp(1));
  return v;
}

inline mp mp_factorial(int n) {
  mp f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Modified Bessel function I_nu (nu in {0,1}) by direct power series.
inline mp bessel_i_mp(int nu, const mp& z, int max_terms = 3000) {
  const mp q = z * z / 4;
  mp term = nu == 0 ? mp(1) : z / 2;
  mp sum = term;
  for (int k = 1; k <= max_terms; ++k) {
    term *= q / (mp(k) * (k + nu));
    sum += term;
    if (k > 5 && term < abs(sum) * mp("1e-45")) break;
  }
  return sum;
}

// Terminating Gauss hypergeometric series F(-M, b; g; z) summed exactly in
// rational arithmetic.  If abs_terms is given it receives sum_k |t_k|, the
// natural scale against which a cancellation-induced zero must be judged.
inline rational gauss_f_exact(int M, const rational& b, const rational& g,
                              const rational& z, rational* abs_terms = nullptr) {
  rational term = 1, sum = 1, mag = 1;
  for (int k = 0; k < M; ++k) {
    term *= (rational(k) - M) * (b + k) * z / ((g + k) * (k + 1));
    sum += term;
    mag += abs(term);
  }
  if (abs_terms) *abs_terms = mag;
  return sum;
}

// Six-dimensional density bracket by brute-force double summation of the
// outer n-series and inner k-sum, every hypergeometric factor expanded
// term by term:
//
//   B(a, w) = 16 a (1 - 5w/6) + (1/2) sum_{n=2}^{n_cap} a^n (n+1)!
//             sum_{k=0}^{n+1} (k+1)(k+2)(n+2k+1) /
//                             (3^k (n-k+1)! (n+k-2)!) F(-(n+k-2), k+3; 3; w).
inline mp r6_bracket_brute(const mp& a, const mp& w, int n_cap = 60) {
  mp total = 16 * a * (1 - 5 * w / 6);
  mp a_pow = a;
  for (int n = 2; n <= n_cap; ++n) {
    a_pow *= a;
    mp block = 0;
    for (int k = 0; k <= n + 1; ++k) {
      const mp coeff = mp(k + 1) * (k + 2) * (n + 2 * k + 1) /
                       (pow(mp(3), k) * mp_factorial(n - k + 1) *
                        mp_factorial(n + k - 2));
      const int big_m = n + k - 2;
      mp f = 1, term = 1;
      for (int j = 1; j <= big_m; ++j) {
        term *= (mp(j - 1) - big_m) * (k + 2 + j) * w / (mp(2 + j) * j);
        f += term;
      }
      block += coeff * f;
    }
    total += a_pow * mp_factorial(n + 1) / 2 * block;
  }
  return total;
}

// Six-dimensional transition AC density at radius r.
inline mp r6_transition_ac(const mp& lambda, const mp& c, const mp& t,
                           const mp& r) {
  const mp a = lambda * t, rho = c * t;
  const mp w = (r / rho) * (r / rho);
  return exp(-a) / (pow(mp_pi(), 3) * pow(rho, 6)) * r6_bracket_brute(a, w);
}

// One-dimensional transition AC density at |x| = x.
inline mp m1_transition_ac(const mp& lambda, const mp& c, const mp& t,
                           const mp& x) {
  const mp a = lambda * t, rho = c * t;
  const mp srt = sqrt(rho * rho - x * x);
  const mp z = a * srt / rho;
  return a / (2 * rho) * exp(-a) *
         (bessel_i_mp(0, z) + rho / srt * bessel_i_mp(1, z));
}

// Three-dimensional small-a stationary AC density at radius r > 0.
inline mp m3_stationary_ac(const mp& a, const mp& rho, const mp& r) {
  const mp u = rho * rho - r * r;
  return exp(-a) * (a / (4 * mp_pi() * rho * rho) * log((rho + r) / (rho - r)) / r +
                    a * a / (2 * mp_pi() * mp_pi() * rho * rho * sqrt(u)) +
                    a * a * a / (8 * mp_pi() * pow(rho, 3)));
}

// Plain trapezoid radial integral int_0^r ac(x) S_m x^{m-1} dx at a fixed
// node count (brute-force cross-check for the adaptive quadrature).
inline double trapezoid_cdf(const std::function<double(double)>& ac, int m,
                            double r, std::int64_t nodes = 1000000) {
  const double surface = 2.0 * std::pow(std::numbers::pi, m / 2.0) /
                         std::tgamma(m / 2.0);
  auto g = [&](double x) { return ac(x) * surface * std::pow(x, m - 1); };
  const double h = r / static_cast<double>(nodes);
  double sum = 0.5 * (g(0.0) + g(r));
  for (std::int64_t i = 1; i < nodes; ++i) sum += g(h * static_cast<double>(i));
  return sum * h;
}

}  // namespace oracles
