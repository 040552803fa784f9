#include "randflight/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "randflight/detail/adaptive_gk.hpp"
#include "randflight/model.hpp"
#include "randflight/specfun.hpp"

namespace randflight {

namespace {

// 15-point Kronrod / 7-point Gauss pair on (-1, 1); positive abscissae only
// (the rule is symmetric).  Even indices of xgk are the embedded Gauss
// nodes.  Values as evaluated in 80-digit arithmetic (L. W. Fullerton).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct CellResult {
  double integral;
  double error;
};

// One Kronrod evaluation of g over [a, b] with the QUADPACK error estimate:
// the |K - G| difference is rescaled against the variation of g so the
// estimate stays meaningful when the rule is nearly exact.
CellResult gk15(const std::function<double(double)>& g, double a, double b) {
  double center = 0.5 * (a + b);
  double half = 0.5 * (b - a);

  double fc = g(center);
  double fv1[7], fv2[7];
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  for (int j = 0; j < 7; ++j) {
    double absc = half * kXgk[j];
    fv1[j] = g(center - absc);
    fv2[j] = g(center + absc);
    double fsum = fv1[j] + fv2[j];
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    resk += kWgk[j] * fsum;
    resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
  }
  double mean = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));

  double err = std::abs((resk - resg) * half);
  resasc *= std::abs(half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  double eps = std::numeric_limits<double>::epsilon();
  resabs *= std::abs(half);
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
    err = std::max(err, 50.0 * eps * resabs);
  return {resk * half, err};
}

struct Cell {
  double a, b, integral, error;
};

// Globally adaptive bisection: always split the cell with the largest error
// estimate.
QuadResult adaptive(const std::function<double(double)>& g, double a, double b,
                    double tol) {
  constexpr int kMaxCells = 4000;
  std::vector<Cell> cells;
  CellResult first = gk15(g, a, b);
  cells.push_back({a, b, first.integral, first.error});
  int evals = 15;

  auto totals = [&] {
    double v = 0, e = 0;
    for (const Cell& c : cells) {
      v += c.integral;
      e += c.error;
    }
    return std::pair{v, e};
  };

  while (true) {
    auto [value, error] = totals();
    if (error <= tol) return {value, error, evals};
    if (static_cast<int>(cells.size()) >= kMaxCells)
      throw QuadratureNonConvergence(value, error, tol);
    auto worst = std::max_element(
        cells.begin(), cells.end(),
        [](const Cell& x, const Cell& y) { return x.error < y.error; });
    double mid = 0.5 * (worst->a + worst->b);
    if (mid <= worst->a || mid >= worst->b)  // interval exhausted
      throw QuadratureNonConvergence(value, error, tol);
    Cell right = *worst;
    CellResult left_r = gk15(g, worst->a, mid);
    CellResult right_r = gk15(g, mid, right.b);
    evals += 30;
    *worst = {worst->a, mid, left_r.integral, left_r.error};
    cells.push_back({mid, right.b, right_r.integral, right_r.error});
  }
}

}  // namespace

QuadResult integrate_radial(const std::function<double(double)>& f, int m,
                            double r_max, bool singular_boundary, double tol) {
  if (!(r_max > 0)) throw std::invalid_argument("r_max must be positive");
  if (!(tol > 0)) throw std::invalid_argument("tol must be positive");
  if (m < 1) throw std::invalid_argument("dimension must be >= 1");

  double surface =
      2.0 * std::pow(std::numbers::pi, m / 2.0) / gamma_half_integer(m);

  if (!singular_boundary) {
    auto g = [&](double r) { return f(r) * surface * std::pow(r, m - 1); };
    return adaptive(g, 0.0, r_max, tol);
  }
  // r = r_max sin(theta): dr = r_max cos(theta) dtheta tames an integrable
  // 1/sqrt(r_max^2 - r^2) factor; theta stays strictly inside [0, pi/2]
  // because Gauss-Kronrod nodes are interior.
  auto g = [&](double theta) {
    double r = r_max * std::sin(theta);
    return f(r) * surface * std::pow(r, m - 1) * r_max * std::cos(theta);
  };
  return adaptive(g, 0.0, std::numbers::pi / 2, tol);
}

namespace detail {

QuadResult integrate_interval(const std::function<double(double)>& g, double a,
                              double b, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("tol must be positive");
  if (a == b) return {0.0, 0.0, 0};
  return adaptive(g, a, b, tol);
}

QuadResult gk15_cell(const std::function<double(double)>& g, double a,
                     double b) {
  CellResult r = gk15(g, a, b);
  return {r.integral, r.error, 15};
}

}  // namespace detail

}  // namespace randflight
