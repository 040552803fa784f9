#include "randflight/density.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

#include "randflight/detail/adaptive_gk.hpp"
#include "randflight/detail/dd.hpp"
#include "randflight/quadrature.hpp"
#include "randflight/specfun.hpp"

namespace randflight {

namespace {

using detail::dd;

constexpr double kPi = std::numbers::pi;
// Queries within this relative distance of the support boundary are clamped
// for the dimensions whose AC density diverges (m=2,3) or is defined only by
// limit (m=1) there.
constexpr double kBoundaryWindow = 1e-12;
// Validity guard for the three-dimensional small-parameter expansion: the
// neglected terms are o(a^3), so a <= 0.1 keeps them below ~1e-3 relative.
constexpr double kM3MaxA = 0.1;

bool dimension_supported(int m) {
  return m == 1 || m == 2 || m == 3 || m == 4 || m == 6;
}

// ---------------------------------------------------------------------------
// Six-dimensional series engine.
//
// The AC density in m=6 is e^{-a}/(pi^3 rho^6) * B(a, w) with w = r^2/rho^2
// and
//
//   B(a, w) = 16 a (1 - 5w/6)
//           + (1/2) sum_{n>=2} a^n (n+1)! sum_{k=0}^{n+1} c_{n,k} F_{n,k}(w),
//   c_{n,k} = (k+1)(k+2)(n+2k+1) / (3^k (n-k+1)! (n+k-2)!),
//   F_{n,k}(w) = F(-(n+k-2), k+3; 3; w)  (terminating Gauss series).
//
// Evaluating the hypergeometric factors pointwise loses up to ~14 digits to
// cancellation near w = 1, which is fatal for a 1e-10 target.  Instead the
// whole bracket is assembled once per 'a' as a polynomial sum_j C_j w^j: the
// F-series coefficients carry sign (-1)^j while every other factor is
// positive, so each C_j is built from same-signed contributions
// (cancellation-free) in double-double, and only the final alternating
// Horner pass needs the dd headroom.
// ---------------------------------------------------------------------------

struct R6Coeffs {
  std::vector<dd> c;             // C_j, coefficient of w^j
  int n_stop = 0;                // first outer index not included
  double tail_bound = 0.0;       // coefficient-mass bound on omitted blocks
  bool truncated_at_cap = false; // n_max reached before the stop rule held
};

R6Coeffs build_r6_coeffs(double a, const SeriesControl& sc) {
  R6Coeffs out;
  std::vector<dd>& c = out.c;
  c.resize(2);

  auto bump = [&c](int j, const dd& v) {
    if (static_cast<int>(c.size()) <= j) c.resize(j + 1);
    c[j] = add(c[j], v);
  };

  // n = 1 block: 16a - (40a/3) w.
  bump(0, dd(16.0 * a));
  dd lin = div(mul(dd(a), 40.0), 3.0);
  bump(1, dd{-lin.hi, -lin.lo});

  // The bracket is decreasing in w with minimum B(a, 1) = 8a/3; using that
  // as the scale makes the tail rule relative to the smallest value the
  // polynomial has to resolve.
  const double scale = 8.0 * a / 3.0;
  const double stop_below = sc.rel_tail_tol * scale;

  // Combined outer weight G_{n,k} = (1/2) a^n (n+1)! c_{n,k}, built purely
  // multiplicatively (running ratios of exact small integers), never forming
  // (n+1)! alone:
  //   G_{2,0} = 3 a^2,
  //   G_{n,0} = G_{n-1,0} * a (n+1) / (n (n-2)),
  //   G_{n,k+1} = G_{n,k} * (k+3)(n+2k+3)(n-k+1) / (3 (k+1)(n+2k+1)(n+k-1)).
  dd g_n0 = mul(mul(dd(a), a), 3.0);
  int consecutive_small = 0;
  int n = 2;
  for (; n <= sc.n_max; ++n) {
    if (n > 2) {
      double num = static_cast<double>(n + 1);
      double den = static_cast<double>(n) * (n - 2);
      g_n0 = div(mul(mul(g_n0, a), num), den);
    }
    if (!std::isfinite(g_n0.hi)) {  // far outside any supported regime
      out.truncated_at_cap = true;
      break;
    }

    dd g = g_n0;
    double block_mass = 0.0;
    for (int k = 0; k <= n + 1; ++k) {
      if (k > 0) {
        double num = static_cast<double>(k + 2) * (n + 2 * k + 1) * (n - k + 2);
        double den = 3.0 * k * (n + 2 * k - 1) * (n + k - 2);
        g = div(mul(g, num), den);
      }
      const int big_m = n + k - 2;  // F is a degree-(n+k-2) polynomial
      const double b = static_cast<double>(k + 3);
      dd f(1.0);
      double abs_f_sum = 0.0;
      for (int j = 0; j <= big_m; ++j) {
        if (j > 0) {
          double num = (static_cast<double>(j - 1) - big_m) * (b + j - 1);
          double den = (3.0 + j - 1) * j;
          f = div(mul(f, num), den);
        }
        bump(j, mul(g, f));
        abs_f_sum += std::abs(f.hi);
      }
      block_mass += g.hi * abs_f_sum;
    }

    out.tail_bound = block_mass;
    if (block_mass < stop_below) {
      if (++consecutive_small >= 3) {
        ++n;
        break;
      }
    } else {
      consecutive_small = 0;
    }
    if (g_n0.hi != 0.0 && g_n0.hi < 1e-280) {  // blocks below representability
      ++n;
      break;
    }
  }
  out.n_stop = n;
  if (n > sc.n_max && consecutive_small < 3) out.truncated_at_cap = true;
  return out;
}

double r6_bracket(const std::vector<dd>& c, double w) {
  dd acc = c.back();
  for (auto it = c.rbegin() + 1; it != c.rend(); ++it)
    acc = add(mul(acc, w), *it);
  return acc.value();
}

struct R6Key {
  std::uint64_t a_bits;
  std::uint64_t tol_bits;
  int n_max;
  auto operator<=>(const R6Key&) const = default;
};

std::shared_ptr<const R6Coeffs> r6_coeffs(double a, const SeriesControl& sc) {
  static std::mutex mu;
  static std::map<R6Key, std::shared_ptr<const R6Coeffs>> cache;
  R6Key key{std::bit_cast<std::uint64_t>(a),
            std::bit_cast<std::uint64_t>(sc.rel_tail_tol), sc.n_max};
  std::scoped_lock lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto built = std::make_shared<const R6Coeffs>(build_r6_coeffs(a, sc));
  cache.emplace(key, built);
  return built;
}

// ---------------------------------------------------------------------------
// Shared radial kernel, (a, rho) parameterization; precondition 0 <= r < rho.
// Exponents are always combined before a single exp() call, so no
// e^{-a} * (large series) product is ever formed in linear space; m=6
// additionally switches to an explicit log-space combination for a > 500.
// ---------------------------------------------------------------------------
double ac_kernel(int m, double a, double rho, double r,
                 const SeriesControl& sc) {
  const double u = (rho - r) * (rho + r);  // rho^2 - r^2, no cancellation
  switch (m) {
    case 1: {
      const double srt = std::sqrt(u);
      const double z = a * srt / rho;
      // z - a = -a r^2 / (rho (rho + sqrt(u))): exact rearrangement that
      // avoids the subtraction of nearly equal exponents near the origin.
      const double expo = -a * r * r / (rho * (rho + srt));
      return a / (2.0 * rho) * std::exp(expo) *
             (bessel_i0_scaled(z) + rho / srt * bessel_i1_scaled(z));
    }
    case 2: {
      const double srt = std::sqrt(u);
      const double expo = -a * r * r / (rho * (rho + srt));
      return a / (2.0 * kPi * rho) * std::exp(expo) / srt;
    }
    case 3: {
      const double x = r / rho;
      double lead;  // (1/r) ln((rho+r)/(rho-r)), finite limit 2/rho at r=0
      if (x < 1e-4) {
        const double x2 = x * x;
        lead = 2.0 / rho * (1.0 + x2 / 3.0 + x2 * x2 / 5.0);
      } else {
        lead = std::log((rho + r) / (rho - r)) / r;
      }
      const double rho2 = rho * rho;
      return std::exp(-a) *
             (a / (4.0 * kPi * rho2) * lead +
              a * a / (2.0 * kPi * kPi * rho2 * std::sqrt(u)) +
              a * a * a / (8.0 * kPi * rho2 * rho));
    }
    case 4: {
      const double rho2 = rho * rho;
      const double w = (r / rho) * (r / rho);
      const double one_minus_w = u / rho2;
      return a / (kPi * kPi * rho2 * rho2) * (2.0 + a * one_minus_w) *
             std::exp(-a * w);
    }
    case 6: {
      const auto coeffs = r6_coeffs(a, sc);
      const double w = (r / rho) * (r / rho);
      const double bracket = r6_bracket(coeffs->c, w);
      const double rho2 = rho * rho;
      const double rho6 = rho2 * rho2 * rho2;
      if (a > 500.0)
        return std::exp(-a + std::log(bracket) - std::log(kPi * kPi * kPi) -
                        std::log(rho6));
      return std::exp(-a) / (kPi * kPi * kPi * rho6) * bracket;
    }
    default:
      throw UnsupportedDimension(m);
  }
}

// Kernel evaluation with the boundary clamp applied (used by integrands
// whose quadrature nodes may land arbitrarily close to the support sphere).
double ac_kernel_clamped(int m, double a, double rho, double r,
                         const SeriesControl& sc) {
  if (rho - r <= kBoundaryWindow * rho) r = rho * (1.0 - kBoundaryWindow);
  return ac_kernel(m, a, rho, r, sc);
}

DensityEval eval_radial(int m, double a, double rho, double r,
                        const SeriesControl& sc) {
  if (!(r >= 0.0)) throw std::invalid_argument("radius must be >= 0");
  if (!dimension_supported(m)) throw UnsupportedDimension(m);
  if (m == 3 && a > kM3MaxA) throw AsymptoticValidityError(a);
  if (!(sc.rel_tail_tol > 0.0))
    throw std::invalid_argument("rel_tail_tol must be positive");

  DensityEval de;
  de.support_radius = rho;
  de.singular_mass = std::exp(-a);
  de.asymptotic = (m == 3);
  if (r >= rho) return de;  // AC part vanishes on and outside the sphere

  de.in_support = true;
  double r_eval = r;
  if ((m == 1 || m == 2 || m == 3) && rho - r <= kBoundaryWindow * rho) {
    de.boundary_singular = true;
    r_eval = rho * (1.0 - kBoundaryWindow);
  }
  de.ac_density = ac_kernel(m, a, rho, r_eval, sc);
  return de;
}

RadialProfile profile_radial(int m, double a, double rho, int grid_size,
                             const SeriesControl& sc) {
  if (grid_size < 2) throw std::invalid_argument("grid_size must be >= 2");
  RadialProfile rp;
  rp.support_radius = rho;
  rp.singular_mass = std::exp(-a);
  rp.boundary_divergent = (m == 2 || m == 3);
  rp.radii.reserve(grid_size);
  rp.values.reserve(grid_size);
  for (int i = 0; i < grid_size; ++i) {
    const double r = rho * (i + 0.5) / grid_size;
    rp.radii.push_back(r);
    rp.values.push_back(eval_radial(m, a, rho, r, sc).ac_density);
  }
  return rp;
}

double surface_coefficient(int m) {
  return 2.0 * std::pow(kPi, m / 2.0) / gamma_half_integer(m);
}

double cdf_radial(int m, double a, double rho, double r, bool conditional,
                  double tol, const SeriesControl& sc) {
  if (!dimension_supported(m)) throw UnsupportedDimension(m);
  if (m == 3 && a > kM3MaxA) throw AsymptoticValidityError(a);
  if (!(r >= 0.0)) throw std::invalid_argument("radius must be >= 0");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  r = std::min(r, rho);
  if (r <= 0.0) return 0.0;

  double mass;
  if (m <= 3) {
    // The integrand has a 1/sqrt(rho^2 - r^2) factor (m=2,3) or needs its
    // boundary limit (m=1); r = rho sin(theta) bounds it for any upper
    // radius, including r = rho itself.
    const double surface = surface_coefficient(m);
    const double theta_r = std::asin(std::min(r / rho, 1.0));
    auto g = [&](double theta) {
      const double rr = rho * std::sin(theta);
      return ac_kernel_clamped(m, a, rho, rr, sc) * surface *
             std::pow(rr, m - 1) * rho * std::cos(theta);
    };
    mass = detail::integrate_interval(g, 0.0, theta_r, tol).value;
  } else {
    auto f = [&](double rr) { return ac_kernel_clamped(m, a, rho, rr, sc); };
    mass = integrate_radial(f, m, r, false, tol).value;
  }
  if (conditional) mass /= -std::expm1(-a);
  return mass;
}

}  // namespace

DensityEval transition_density(const FlightParams& fp, double r,
                               const SeriesControl& sc) {
  fp.validate();
  return eval_radial(fp.m, fp.lambda * fp.t, fp.c * fp.t, r, sc);
}

DensityEval stationary_density(const StationaryParams& sp, double r,
                               const SeriesControl& sc) {
  sp.validate();
  return eval_radial(sp.m, sp.a, sp.rho, r, sc);
}

RadialProfile radial_profile(const FlightParams& fp, int grid_size,
                             const SeriesControl& sc) {
  fp.validate();
  if (!dimension_supported(fp.m)) throw UnsupportedDimension(fp.m);
  if (fp.m == 3 && fp.lambda * fp.t > kM3MaxA)
    throw AsymptoticValidityError(fp.lambda * fp.t);
  return profile_radial(fp.m, fp.lambda * fp.t, fp.c * fp.t, grid_size, sc);
}

RadialProfile radial_profile(const StationaryParams& sp, int grid_size,
                             const SeriesControl& sc) {
  sp.validate();
  if (!dimension_supported(sp.m)) throw UnsupportedDimension(sp.m);
  if (sp.m == 3 && sp.a > kM3MaxA) throw AsymptoticValidityError(sp.a);
  return profile_radial(sp.m, sp.a, sp.rho, grid_size, sc);
}

double radial_cdf(const FlightParams& fp, double r, bool conditional,
                  double tol, const SeriesControl& sc) {
  fp.validate();
  return cdf_radial(fp.m, fp.lambda * fp.t, fp.c * fp.t, r, conditional, tol,
                    sc);
}

double radial_cdf(const StationaryParams& sp, double r, bool conditional,
                  double tol, const SeriesControl& sc) {
  sp.validate();
  return cdf_radial(sp.m, sp.a, sp.rho, r, conditional, tol, sc);
}

RadialCdf::RadialCdf(const StationaryParams& sp, bool conditional, int cells,
                     double tol, const SeriesControl& sc) {
  sp.validate();
  if (!dimension_supported(sp.m)) throw UnsupportedDimension(sp.m);
  if (sp.m == 3 && sp.a > kM3MaxA) throw AsymptoticValidityError(sp.a);
  if (cells < 4) throw std::invalid_argument("cells must be >= 4");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");

  const int m = sp.m;
  const double a = sp.a;
  const double rho = sp.rho;
  const double surface = surface_coefficient(m);
  const bool graded = (m <= 3);  // grade cell edges toward the singular rim

  auto theta_integrand = [&](double theta) {
    const double rr = rho * std::sin(theta);
    return ac_kernel_clamped(m, a, rho, rr, sc) * surface *
           std::pow(rr, m - 1) * rho * std::cos(theta);
  };
  auto r_integrand = [&](double rr) {
    return ac_kernel_clamped(m, a, rho, rr, sc) * surface * std::pow(rr, m - 1);
  };

  double err_total = 0.0;
  for (int attempt = 0;; ++attempt) {
    radii_.assign(1, 0.0);
    cumulative_.assign(1, 0.0);
    radii_.reserve(cells + 1);
    cumulative_.reserve(cells + 1);
    err_total = 0.0;
    for (int i = 1; i <= cells; ++i) {
      QuadResult cell;
      double r_edge;
      if (graded) {
        const double th0 = kPi / 2 * (i - 1) / cells;
        const double th1 = kPi / 2 * i / cells;
        r_edge = (i == cells) ? rho : rho * std::sin(th1);
        cell = detail::gk15_cell(theta_integrand, th0, th1);
      } else {
        const double r0 = rho * (i - 1) / cells;
        r_edge = (i == cells) ? rho : rho * i / cells;
        cell = detail::gk15_cell(r_integrand, r0, r_edge);
      }
      radii_.push_back(r_edge);
      cumulative_.push_back(cumulative_.back() + cell.value);
      err_total += cell.abs_error_estimate;
    }
    if (err_total <= tol) break;
    if (attempt >= 3)
      throw QuadratureNonConvergence(cumulative_.back(), err_total, tol);
    cells *= 2;
  }
  total_ = cumulative_.back();
  // Conditioning divides by the exact at-least-one-switch probability rather
  // than the quadrature total, so the conditional CDF is exactly comparable
  // with the analytic singular mass.
  norm_ = conditional ? -std::expm1(-a) : 1.0;
}

double RadialCdf::operator()(double r) const {
  if (r <= 0.0) return 0.0;
  if (r >= radii_.back()) return total_ / norm_;
  auto it = std::upper_bound(radii_.begin(), radii_.end(), r);
  const std::size_t i = it - radii_.begin();  // radii_[i-1] <= r < radii_[i]
  const double r0 = radii_[i - 1];
  const double r1 = radii_[i];
  const double f0 = cumulative_[i - 1];
  const double f1 = cumulative_[i];
  return (f0 + (r - r0) / (r1 - r0) * (f1 - f0)) / norm_;
}

}  // namespace randflight
