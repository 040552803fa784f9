#pragma once

#include <cmath>

// Minimal double-double arithmetic (Dekker/Knuth error-free transforms).
// Used where a plain double accumulation would lose the ~1e13 of headroom
// needed by the alternating series in the six-dimensional density.
namespace randflight::detail {

struct dd {
  double hi = 0.0;
  double lo = 0.0;

  dd() = default;
  constexpr dd(double h) : hi(h), lo(0.0) {}
  constexpr dd(double h, double l) : hi(h), lo(l) {}

  double value() const { return hi + lo; }
};

inline dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline dd quick_two_sum(double a, double b) {  // requires |a| >= |b|
  double s = a + b;
  return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline dd add(const dd& a, const dd& b) {
  dd s = two_sum(a.hi, b.hi);
  double lo = s.lo + a.lo + b.lo;
  return quick_two_sum(s.hi, lo);
}

inline dd add(const dd& a, double b) {
  dd s = two_sum(a.hi, b);
  double lo = s.lo + a.lo;
  return quick_two_sum(s.hi, lo);
}

inline dd sub(const dd& a, const dd& b) { return add(a, dd{-b.hi, -b.lo}); }

inline dd mul(const dd& a, const dd& b) {
  dd p = two_prod(a.hi, b.hi);
  double lo = p.lo + a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, lo);
}

inline dd mul(const dd& a, double b) {
  dd p = two_prod(a.hi, b);
  double lo = p.lo + a.lo * b;
  return quick_two_sum(p.hi, lo);
}

inline dd div(const dd& a, double b) {
  double q1 = a.hi / b;
  dd p = two_prod(q1, b);
  double r = ((a.hi - p.hi) - p.lo) + a.lo;
  double q2 = r / b;
  return quick_two_sum(q1, q2);
}

}  // namespace randflight::detail
