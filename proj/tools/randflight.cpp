// Command-line front end: evaluate densities, emit figure-ready radial
// profiles, run Monte Carlo simulations, and run the validation suites.
//
// Exit codes: 0 success, 1 validation failure, 2 usage error,
// 3 numerical non-convergence / underpowered statistics.
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "randflight/density.hpp"
#include "randflight/limits.hpp"
#include "randflight/model.hpp"
#include "randflight/simulate.hpp"

namespace rf = randflight;

namespace {

constexpr const char* kVersion = "1.0.0";

// Writes to stdout for path "" or "-", otherwise to the named file.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_)
        throw std::invalid_argument("cannot open output file: " + path);
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_ = &std::cout;
};

struct DensityArgs {
  int m = 0;
  double a = 0, rho = 0, lambda = 0, c = 0, t = 0;
  bool has_a = false, has_rho = false;
  bool has_lambda = false, has_c = false, has_t = false;
  std::vector<double> radii;
  std::string out;
};

int cmd_density(const DensityArgs& args) {
  const bool stationary = args.has_a || args.has_rho;
  const bool transition = args.has_lambda || args.has_c || args.has_t;
  if (stationary == transition)
    throw std::invalid_argument(
        "specify exactly one parameterization: --a with --rho, or --lambda "
        "with --c and --t");
  Output out(args.out);
  std::ostream& os = out.stream();
  if (stationary) {
    if (!(args.has_a && args.has_rho))
      throw std::invalid_argument("--a and --rho must be given together");
    const rf::StationaryParams sp{args.a, args.rho, args.m};
    os << "# randflight density version=" << kVersion << " m=" << sp.m
       << " a=" << rf::fmt_double(sp.a) << " rho=" << rf::fmt_double(sp.rho)
       << "\n";
    os << "r,ac_density,singular_mass,support_radius\n";
    for (double r : args.radii)
      os << rf::csv_row(rf::stationary_density(sp, r), r) << "\n";
  } else {
    if (!(args.has_lambda && args.has_c && args.has_t))
      throw std::invalid_argument(
          "--lambda, --c and --t must be given together");
    const rf::FlightParams fp{args.m, args.c, args.lambda, args.t};
    os << "# randflight density version=" << kVersion << " m=" << fp.m
       << " lambda=" << rf::fmt_double(fp.lambda)
       << " c=" << rf::fmt_double(fp.c) << " t=" << rf::fmt_double(fp.t)
       << "\n";
    os << "r,ac_density,singular_mass,support_radius\n";
    for (double r : args.radii)
      os << rf::csv_row(rf::transition_density(fp, r), r) << "\n";
  }
  return 0;
}

int cmd_figure(const std::string& name, int grid, const std::string& out) {
  struct FigSpec {
    int m;
    double a, rho;
  };
  static const std::map<std::string, FigSpec> specs = {
      {"fig1", {1, 7.0, 5.0}},  {"fig2", {2, 7.0, 5.0}},
      {"fig3", {4, 4.0, 5.0}},  {"fig4", {6, 4.0, 5.0}},
      {"fig5", {3, 0.01, 5.0}},
  };
  const auto it = specs.find(name);
  if (it == specs.end())
    throw std::invalid_argument("unknown figure name: " + name +
                                " (expected fig1..fig5)");
  const FigSpec& spec = it->second;
  const rf::StationaryParams sp{spec.a, spec.rho, spec.m};
  const rf::RadialProfile prof = rf::radial_profile(sp, grid);

  Output output(out);
  std::ostream& os = output.stream();
  os << "# randflight figure " << name << " version=" << kVersion
     << " m=" << spec.m << " a=" << rf::fmt_double(spec.a)
     << " rho=" << rf::fmt_double(spec.rho) << " grid=" << grid
     << " singular_mass=" << rf::fmt_double(prof.singular_mass)
     << " support_radius=" << rf::fmt_double(prof.support_radius) << "\n";
  if (spec.m == 1) {
    // The one-dimensional profile is plotted over signed x in (-rho, rho).
    os << "x,ac_density\n";
    for (std::size_t i = prof.radii.size(); i-- > 0;)
      os << rf::fmt_double(-prof.radii[i]) << ','
         << rf::fmt_double(prof.values[i]) << "\n";
    for (std::size_t i = 0; i < prof.radii.size(); ++i)
      os << rf::fmt_double(prof.radii[i]) << ','
         << rf::fmt_double(prof.values[i]) << "\n";
  } else {
    os << "r,ac_density\n";
    for (std::size_t i = 0; i < prof.radii.size(); ++i)
      os << rf::fmt_double(prof.radii[i]) << ','
         << rf::fmt_double(prof.values[i]) << "\n";
  }
  return 0;
}

struct SimArgs {
  int m = 1;
  double lambda = 1.0, c = 1.0, t = 1.0;
  std::uint64_t paths = 10000;
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::uint32_t batch = 65536;
  int threads = 0;
  std::string dump;
  bool dump_coords = false;
  bool m1_resample = false;
  std::string out;
};

int cmd_simulate(SimArgs args) {
  if (!args.has_seed) {
    std::random_device rd;
    args.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  rf::SimConfig cfg;
  cfg.fp = rf::FlightParams{args.m, args.c, args.lambda, args.t};
  cfg.n_paths = args.paths;
  cfg.seed = args.seed;
  cfg.batch_size = args.batch;
  cfg.threads = args.threads;
  cfg.m1_resample = args.m1_resample;

  const rf::SampleSummary s = rf::run(cfg);
  Output out(args.out);
  std::ostream& os = out.stream();
  os << "# randflight simulate version=" << kVersion << " m=" << args.m
     << " lambda=" << rf::fmt_double(args.lambda)
     << " c=" << rf::fmt_double(args.c) << " t=" << rf::fmt_double(args.t)
     << " paths=" << args.paths << " seed=" << args.seed
     << (args.m1_resample ? " m1_resample=1" : "") << "\n";
  os << "n_paths=" << s.n_paths << "\n"
     << "n_zero_switch=" << s.n_zero_switch << "\n"
     << "zero_switch_fraction="
     << rf::fmt_double(static_cast<double>(s.n_zero_switch) /
                       static_cast<double>(s.n_paths))
     << "\n"
     << "conditional_samples=" << s.radii_sorted.size() << "\n"
     << "mean_radius=" << rf::fmt_double(s.mean_radius) << "\n"
     << "mean_switches=" << rf::fmt_double(s.mean_switches) << "\n"
     << "support_radius=" << rf::fmt_double(args.c * args.t) << "\n";

  if (!args.dump.empty()) {
    std::ofstream f(args.dump);
    if (!f)
      throw std::invalid_argument("cannot open dump file: " + args.dump);
    f << "# randflight simulate version=" << kVersion << " m=" << args.m
      << " lambda=" << rf::fmt_double(args.lambda)
      << " c=" << rf::fmt_double(args.c) << " t=" << rf::fmt_double(args.t)
      << " paths=" << args.paths << " seed=" << args.seed << "\n";
    rf::dump_samples_csv(f, cfg, args.dump_coords);
  }
  return 0;
}

struct ValidateArgs {
  std::string suite;
  std::uint64_t seed = 42;
  std::uint64_t paths = 0;  // 0: per-suite default
  int threads = 0;
};

bool suite_gof(const ValidateArgs& args, std::ostream& os) {
  const std::uint64_t paths = args.paths ? args.paths : 1000000;
  bool pass = true;
  for (int m : {1, 2, 4, 6}) {
    rf::SimConfig cfg;
    cfg.fp = rf::FlightParams{m, 1.0, 1.0, 3.0};
    cfg.n_paths = paths;
    cfg.seed = args.seed;
    cfg.threads = args.threads;
    const rf::GofReport rep = rf::gof_against_analytic(rf::run(cfg), cfg.fp);
    os << "## gof m=" << m << " lambda=1 c=1 t=3 paths=" << paths
       << " seed=" << args.seed << "\n"
       << rf::to_csv(rep) << rf::to_table(rep);
    pass = pass && rep.pass();
  }
  return pass;
}

bool suite_kac(std::ostream& os) {
  const std::vector<double> ladder = {10.0, 100.0, 1000.0};
  bool pass = true;
  for (int m : {1, 2, 4}) {
    const rf::LimitTrace trace = rf::kac_limit_trace(1.0, 1.0, ladder, m);
    os << "## kac m=" << m << " rho2=1 t=1\n"
       << rf::to_csv(trace) << rf::to_table(trace);
    bool decreasing = true;
    for (std::size_t i = 1; i < trace.distances.size(); ++i)
      decreasing = decreasing && trace.distances[i] < trace.distances[i - 1];
    bool close = (m != 1) || trace.distances.back() <= 0.02;
    os << "decreasing=" << decreasing << " final_below_0.02="
       << (m == 1 ? (close ? "1" : "0") : "n/a") << "\n";
    pass = pass && decreasing && close;
  }
  return pass;
}

bool suite_sdc(std::ostream& os) {
  const std::vector<double> t_values = {1.0, 10.0, 1000.0};
  bool pass = true;
  os << "## sdc t={1,10,1000} a={0.5,4,7} rho={1,5}\n";
  os << "m,max_rel_discrepancy,threshold,pass\n";
  for (int m : {1, 2, 4, 6}) {
    double worst = 0.0;
    for (double a : {0.5, 4.0, 7.0})
      for (double rho : {1.0, 5.0})
        worst = std::max(
            worst, rf::sdc_invariance_check({a, rho, m}, t_values));
    const double threshold = (m == 6) ? 1e-10 : 1e-12;
    const bool ok = worst <= threshold;
    os << m << ',' << rf::fmt_double(worst) << ','
       << rf::fmt_double(threshold) << ',' << ok << "\n";
    pass = pass && ok;
  }
  return pass;
}

bool suite_r3(const ValidateArgs& args, std::ostream& os) {
  const std::uint64_t paths = args.paths ? args.paths : 1000000;
  const rf::GofReport rep = rf::r3_asymptotic_check(0.01, 5.0, paths,
                                                    args.seed);
  os << "## r3 a=0.01 rho=5 paths=" << paths << " seed=" << args.seed << "\n"
     << rf::to_csv(rep) << rf::to_table(rep);
  return rep.pass();
}

int cmd_validate(const ValidateArgs& args) {
  std::ostream& os = std::cout;
  os << "# randflight validate " << args.suite << " version=" << kVersion
     << " seed=" << args.seed << "\n";
  bool pass = true;
  const bool all = args.suite == "all";
  if (all || args.suite == "sdc") pass = suite_sdc(os) && pass;
  if (all || args.suite == "kac") pass = suite_kac(os) && pass;
  if (all || args.suite == "gof") pass = suite_gof(args, os) && pass;
  if (all || args.suite == "r3") pass = suite_r3(args, os) && pass;
  os << "overall=" << (pass ? "pass" : "FAIL") << "\n";
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-velocity random flights: exact densities, slow- and "
               "fast-diffusion scaling checks, Monte Carlo simulation"};
  app.require_subcommand(1);

  DensityArgs da;
  CLI::App* density = app.add_subcommand(
      "density", "Evaluate the density at given radii (CSV to stdout)");
  density->add_option("--m", da.m, "dimension (1,2,3,4,6)")->required();
  auto* oa = density->add_option("--a", da.a, "stationary: a = lim lambda*t");
  auto* orho =
      density->add_option("--rho", da.rho, "stationary: support radius");
  auto* ol = density->add_option("--lambda", da.lambda,
                                 "transition: switching rate");
  auto* oc = density->add_option("--c", da.c, "transition: speed");
  auto* ot = density->add_option("--t", da.t, "transition: elapsed time");
  density->add_option("--r", da.radii, "radius (repeatable)")
      ->required()
      ->expected(-1);
  density->add_option("--out", da.out, "output file (default stdout)");

  std::string fig_name;
  int fig_grid = 1000;
  std::string fig_out;
  CLI::App* figure = app.add_subcommand(
      "figure", "Emit a radial profile at a canonical parameter set");
  figure->add_option("name", fig_name,
                     "fig1: m=1 a=7 rho=5 | fig2: m=2 a=7 rho=5 | "
                     "fig3: m=4 a=4 rho=5 | fig4: m=6 a=4 rho=5 | "
                     "fig5: m=3 a=0.01 rho=5")
      ->required();
  figure->add_option("--grid", fig_grid, "grid points (default 1000)")
      ->check(CLI::Range(2, 10000000));
  figure->add_option("--out", fig_out, "output file (default stdout)");

  SimArgs sa;
  CLI::App* simulate =
      app.add_subcommand("simulate", "Monte Carlo path simulation");
  simulate->add_option("--m", sa.m, "dimension (any m >= 1)")->required();
  simulate->add_option("--lambda", sa.lambda, "switching rate (default 1)");
  simulate->add_option("--c", sa.c, "speed (default 1)");
  simulate->add_option("--t", sa.t, "elapsed time (default 1)");
  simulate->add_option("--paths", sa.paths, "number of paths")
      ->required()
      ->check(CLI::Range(std::uint64_t{1},
                         std::numeric_limits<std::uint64_t>::max()));
  auto* oseed = simulate->add_option(
      "--seed", sa.seed, "RNG seed (drawn from entropy and printed if absent)");
  simulate->add_option("--batch", sa.batch, "batch size (default 65536)")
      ->check(CLI::Range(std::uint32_t{1},
                         std::numeric_limits<std::uint32_t>::max()));
  simulate->add_option(
      "--threads", sa.threads,
      "worker threads (default: RANDFLIGHT_THREADS or hardware); never "
      "affects results");
  simulate->add_option("--dump", sa.dump, "write per-path CSV to this file");
  simulate->add_flag("--dump-coords", sa.dump_coords,
                     "include terminal coordinates in the dump");
  simulate->add_flag(
      "--m1-resample", sa.m1_resample,
      "m=1 variant: resample the sign at events instead of alternating");
  simulate->add_option("--out", sa.out, "summary output file (default stdout)");

  ValidateArgs va;
  CLI::App* validate = app.add_subcommand(
      "validate",
      "Run validation suites; exit 0 iff all verdicts pass.\n"
      "  sdc: transition/stationary identity, m={1,2,4,6}, a={0.5,4,7}, "
      "rho={1,5}, t={1,10,1000}\n"
      "  kac: fast-diffusion Gaussian approach, m={1,2,4}, "
      "lambda={10,100,1000}, rho2=1, t=1\n"
      "  gof: simulator vs analytic CDF, m={1,2,4,6}, (lambda,c,t)=(1,1,3), "
      "1e6 paths\n"
      "  r3: m=3 asymptotic total mass and histogram, a=0.01, rho=5, 1e6 "
      "paths");
  validate->add_option("suite", va.suite, "gof|kac|sdc|r3|all")
      ->required()
      ->check(CLI::IsMember({"gof", "kac", "sdc", "r3", "all"}));
  validate->add_option("--seed", va.seed, "RNG seed (default 42)");
  validate->add_option("--paths", va.paths,
                       "override the per-suite default path count")
      ->check(CLI::Range(std::uint64_t{1},
                         std::numeric_limits<std::uint64_t>::max()));
  validate->add_option("--threads", va.threads,
                       "worker threads hint; never affects results");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  da.has_a = oa->count() > 0;
  da.has_rho = orho->count() > 0;
  da.has_lambda = ol->count() > 0;
  da.has_c = oc->count() > 0;
  da.has_t = ot->count() > 0;
  sa.has_seed = oseed->count() > 0;

  try {
    if (density->parsed()) return cmd_density(da);
    if (figure->parsed()) return cmd_figure(fig_name, fig_grid, fig_out);
    if (simulate->parsed()) return cmd_simulate(sa);
    if (validate->parsed()) return cmd_validate(va);
    return 2;
  } catch (const rf::QuadratureNonConvergence& e) {
    std::cerr << "numerical error: " << e.what()
              << " (best estimate " << rf::fmt_double(e.best_estimate)
              << ", achieved " << rf::fmt_double(e.achieved_tol)
              << ", requested " << rf::fmt_double(e.requested_tol) << ")\n";
    return 3;
  } catch (const rf::UnderpoweredError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const rf::UnsupportedDimension& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const rf::AsymptoticValidityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
