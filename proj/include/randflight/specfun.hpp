#pragma once

// Self-contained special-function kernel: modified Bessel functions I0/I1
// (plain and exponentially scaled), the terminating Gauss hypergeometric
// series, and gamma at positive half-integers.  Everything here is pure and
// reentrant.
namespace randflight {

struct Accuracy {
  double rel_tol = 1e-12;
  int max_terms = 500;
};

// I0(z) = sum_k (z/2)^{2k} / (k!)^2.  Power series for z <= 20, asymptotic
// expansion beyond.  Overflows (returns inf) past z ~ 709; large arguments
// belong to the scaled variant.
double bessel_i0(double z, const Accuracy& acc = {});

// I1(z) = sum_k (z/2)^{2k+1} / (k! (k+1)!).
double bessel_i1(double z, const Accuracy& acc = {});

// e^{-z} I0(z) and e^{-z} I1(z); bounded for every representable z >= 0.
double bessel_i0_scaled(double z, const Accuracy& acc = {});
double bessel_i1_scaled(double z, const Accuracy& acc = {});

// Terminating Gauss hypergeometric F(-M, b; gamma; z) =
// sum_{k=0}^{M} (-M)_k (b)_k / (gamma)_k * z^k / k!, a degree-M polynomial
// in z, evaluated by forward term recurrence.  The alternating terms can
// cancel to ~1e-33 of their own magnitude on the supported parameter range,
// so the recurrence runs internally in 50-digit floats and rounds once at
// the end.  Throws std::domain_error if (gamma)_k hits a pole within range.
double gauss_f_terminating(int M, double b, double gamma, double z);

// Gamma(two_n / 2) by exact recurrence from Gamma(1/2) = sqrt(pi) and
// Gamma(1) = 1.
double gamma_half_integer(int two_n);

}  // namespace randflight
