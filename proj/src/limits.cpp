#include "randflight/limits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "randflight/density.hpp"
#include "randflight/quadrature.hpp"

namespace randflight {

namespace {

constexpr double kPi = std::numbers::pi;
// Asymptotic Kolmogorov quantile at significance 1e-3:
// sqrt(-ln(alpha/2) / 2).
constexpr double kKsCoefficient = 1.9494746035204052;
// Two-sided standard normal quantile at significance 1e-3.
constexpr double kZThreshold = 3.2905267314918948;

bool exact_density_dimension(int m) {
  return m == 1 || m == 2 || m == 4 || m == 6;
}

// Isotropic Gaussian density in R^m at radius r, per-axis variance sigma2.
double gaussian_density(int m, double sigma2, double r) {
  return std::exp(-r * r / (2.0 * sigma2)) /
         std::pow(2.0 * kPi * sigma2, m / 2.0);
}

double binomial_z(std::uint64_t hits, std::uint64_t trials, double p) {
  const double n = static_cast<double>(trials);
  const double se = std::sqrt(p * (1.0 - p) / n);
  return (static_cast<double>(hits) / n - p) / se;
}

}  // namespace

LimitTrace kac_limit_trace(double rho2, double t,
                           const std::vector<double>& ladder, int m) {
  if (!(rho2 > 0)) throw std::invalid_argument("rho2 must be positive");
  if (!(t > 0)) throw std::invalid_argument("t must be positive");
  if (ladder.empty()) throw std::invalid_argument("ladder must be non-empty");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (!(ladder[i] > 0))
      throw std::invalid_argument("ladder rates must be positive");
    if (i > 0 && !(ladder[i] > ladder[i - 1]))
      throw std::invalid_argument("ladder must be strictly increasing");
  }
  if (!exact_density_dimension(m))
    throw std::invalid_argument(
        "fast-diffusion trace needs an exact density: m in {1,2,4,6}");

  const double sigma2 = (m == 1 ? rho2 : 2.0 * rho2 / m) * t;
  LimitTrace trace;
  {
    std::ostringstream os;
    os << "isotropic Gaussian in R^" << m << ", per-axis variance "
       << fmt_double(sigma2);
    trace.target = os.str();
  }

  constexpr int kGridPoints = 601;
  for (double lambda : ladder) {
    const double c = std::sqrt(rho2 * lambda);
    const FlightParams fp{m, c, lambda, t};
    const double r_hi = std::min(3.0, 0.999 * c * t);
    double sup = 0.0;
    for (int i = 0; i < kGridPoints; ++i) {
      const double r = r_hi * i / (kGridPoints - 1.0);
      const double ac = transition_density(fp, r).ac_density;
      sup = std::max(sup, std::abs(ac - gaussian_density(m, sigma2, r)));
    }
    trace.parameter_ladder.emplace_back(lambda, c);
    trace.distances.push_back(sup);
    trace.singular_masses.push_back(std::exp(-lambda * t));
  }
  return trace;
}

double sdc_invariance_check(const StationaryParams& sp,
                            const std::vector<double>& t_values) {
  sp.validate();
  if (!exact_density_dimension(sp.m))
    throw std::invalid_argument(
        "scale-invariance check needs an exact density: m in {1,2,4,6}");
  if (t_values.empty())
    throw std::invalid_argument("t_values must be non-empty");

  constexpr int kRadii = 50;
  double worst = 0.0;
  for (double t : t_values) {
    if (!(t > 0)) throw std::invalid_argument("t values must be positive");
    const FlightParams fp{sp.m, sp.rho / t, sp.a / t, t};
    for (int i = 0; i < kRadii; ++i) {
      const double r = sp.rho * (i + 0.5) / kRadii;
      const double trans = transition_density(fp, r).ac_density;
      const double stat = stationary_density(sp, r).ac_density;
      const double denom = std::max(std::abs(trans), std::abs(stat));
      if (denom > 0.0)
        worst = std::max(worst, std::abs(trans - stat) / denom);
    }
  }
  return worst;
}

GofReport gof_against_analytic(const SampleSummary& summary,
                               const FlightParams& fp) {
  fp.validate();
  if (summary.radii_sorted.size() < 100)
    throw UnderpoweredError(summary.radii_sorted.size());

  GofReport rep;
  rep.n_paths = summary.n_paths;
  rep.n_conditional = summary.radii_sorted.size();

  const RadialCdf cdf(sdc_limit_of(fp), /*conditional=*/true);
  const std::vector<double>& r = summary.radii_sorted;
  const double n = static_cast<double>(r.size());
  double d = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double f = cdf(r[i]);
    d = std::max(d, std::max((i + 1) / n - f, f - i / n));
  }
  rep.ks_statistic = d;
  rep.ks_threshold = kKsCoefficient / std::sqrt(n);
  rep.ks_pass = d <= rep.ks_threshold;

  rep.singular_z_score = binomial_z(summary.n_zero_switch, summary.n_paths,
                                    std::exp(-fp.lambda * fp.t));
  rep.singular_threshold = kZThreshold;
  rep.singular_pass = std::abs(rep.singular_z_score) <= kZThreshold;
  return rep;
}

GofReport r3_asymptotic_check(double a, double rho, std::uint64_t n_paths,
                              std::uint64_t seed) {
  if (!(a > 0) || a > 0.1)
    throw std::invalid_argument("a must lie in (0, 0.1]");
  if (!(rho > 0)) throw std::invalid_argument("rho must be positive");

  GofReport rep;
  const StationaryParams sp{a, rho, 3};

  // Quadrature total of the asymptotic AC part against 1 - e^{-a}.  The
  // expansion drops o(a^3) terms, so the analytic gap is ~a^4/24 <= 4.2e-6
  // over the whole admissible range a <= 0.1; 1e-5 covers it plus
  // quadrature error.
  auto f = [&](double r) { return stationary_density(sp, r).ac_density; };
  const double total =
      integrate_radial(f, 3, rho, /*singular_boundary=*/true, 1e-10).value;
  rep.mass_gap = std::abs(total - (-std::expm1(-a)));
  rep.mass_pass = rep.mass_gap <= 1e-5;

  SimConfig cfg;
  cfg.fp = FlightParams{3, rho, a, 1.0};
  cfg.n_paths = n_paths;
  cfg.seed = seed;
  const SampleSummary summary = run(cfg);
  rep.n_paths = summary.n_paths;
  rep.n_conditional = summary.radii_sorted.size();
  if (rep.n_conditional < 100) throw UnderpoweredError(rep.n_conditional);

  rep.singular_z_score =
      binomial_z(summary.n_zero_switch, summary.n_paths, std::exp(-a));
  rep.singular_threshold = kZThreshold;
  rep.singular_pass = std::abs(rep.singular_z_score) <= kZThreshold;

  // 20 equal radial bins on (0, rho): observed conditional fractions vs the
  // analytic conditional CDF increments, each scored as a binomial z.
  constexpr int kBins = 20;
  const RadialCdf cdf(sp, /*conditional=*/true);
  const std::vector<double>& radii = summary.radii_sorted;
  const double nc = static_cast<double>(radii.size());
  std::size_t lo_idx = 0;
  double f_lo = 0.0;
  for (int bin = 0; bin < kBins; ++bin) {
    const double hi = rho * (bin + 1) / kBins;
    const double f_hi = (bin == kBins - 1) ? 1.0 : cdf(hi);
    const std::size_t hi_idx =
        std::upper_bound(radii.begin() + lo_idx, radii.end(), hi) -
        radii.begin();
    const double observed = static_cast<double>(hi_idx - lo_idx) / nc;
    const double expected = f_hi - f_lo;
    const double dev = std::abs(observed - expected);
    rep.hist_sup_dev = std::max(rep.hist_sup_dev, dev);
    const double se = std::sqrt(expected * (1.0 - expected) / nc);
    if (se > 0.0) rep.hist_worst_z = std::max(rep.hist_worst_z, dev / se);
    lo_idx = hi_idx;
    f_lo = f_hi;
  }
  rep.hist_pass = rep.hist_worst_z <= 3.0;
  return rep;
}

std::string to_csv(const GofReport& rep) {
  std::ostringstream os;
  os << "ks_statistic,ks_threshold,singular_z_score,singular_threshold,"
        "n_paths,n_conditional,mass_gap,hist_sup_dev,hist_worst_z,"
        "ks_pass,singular_pass,mass_pass,hist_pass,pass\n";
  os << fmt_double(rep.ks_statistic) << ',' << fmt_double(rep.ks_threshold)
     << ',' << fmt_double(rep.singular_z_score) << ','
     << fmt_double(rep.singular_threshold) << ',' << rep.n_paths << ','
     << rep.n_conditional << ',' << fmt_double(rep.mass_gap) << ','
     << fmt_double(rep.hist_sup_dev) << ',' << fmt_double(rep.hist_worst_z)
     << ',' << rep.ks_pass << ',' << rep.singular_pass << ',' << rep.mass_pass
     << ',' << rep.hist_pass << ',' << rep.pass() << "\n";
  return os.str();
}

std::string to_table(const GofReport& rep) {
  auto verdict = [](bool ok) { return ok ? "pass" : "FAIL"; };
  std::ostringstream os;
  os << "paths                 " << rep.n_paths << "\n"
     << "conditional samples   " << rep.n_conditional << "\n"
     << "ks statistic          " << fmt_double(rep.ks_statistic)
     << "  (threshold " << fmt_double(rep.ks_threshold) << ") "
     << verdict(rep.ks_pass) << "\n"
     << "singular z-score      " << fmt_double(rep.singular_z_score)
     << "  (threshold " << fmt_double(rep.singular_threshold) << ") "
     << verdict(rep.singular_pass) << "\n"
     << "mass gap              " << fmt_double(rep.mass_gap) << ' '
     << verdict(rep.mass_pass) << "\n"
     << "histogram sup dev     " << fmt_double(rep.hist_sup_dev) << "\n"
     << "histogram worst z     " << fmt_double(rep.hist_worst_z) << ' '
     << verdict(rep.hist_pass) << "\n"
     << "verdict               " << verdict(rep.pass()) << "\n";
  return os.str();
}

std::string to_csv(const LimitTrace& trace) {
  std::ostringstream os;
  os << "lambda,c,distance,singular_mass\n";
  for (std::size_t i = 0; i < trace.parameter_ladder.size(); ++i)
    os << fmt_double(trace.parameter_ladder[i].first) << ','
       << fmt_double(trace.parameter_ladder[i].second) << ','
       << fmt_double(trace.distances[i]) << ','
       << fmt_double(trace.singular_masses[i]) << "\n";
  return os.str();
}

std::string to_table(const LimitTrace& trace) {
  std::ostringstream os;
  os << "target: " << trace.target << "\n";
  os << "lambda            c                 sup distance      singular "
        "mass\n";
  for (std::size_t i = 0; i < trace.parameter_ladder.size(); ++i) {
    std::string cols[4] = {fmt_double(trace.parameter_ladder[i].first),
                           fmt_double(trace.parameter_ladder[i].second),
                           fmt_double(trace.distances[i]),
                           fmt_double(trace.singular_masses[i])};
    for (const std::string& col : cols) {
      os << col;
      for (std::size_t pad = col.size(); pad < 18; ++pad) os << ' ';
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace randflight
