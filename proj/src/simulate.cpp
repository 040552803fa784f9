#include "randflight/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <vector>

namespace randflight {

namespace {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("RANDFLIGHT_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<int>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

std::vector<double> sample_direction(int m, PathRng& rng) {
  if (m < 2) throw std::invalid_argument("sample_direction requires m >= 2");
  std::vector<double> v(m);
  while (true) {
    double norm2 = 0.0;
    for (int i = 0; i < m; ++i) {
      v[i] = rng.normal();
      norm2 += v[i] * v[i];
    }
    if (norm2 > 0.0) {  // redraw the measure-zero degenerate vector
      const double inv = 1.0 / std::sqrt(norm2);
      for (double& x : v) x *= inv;
      return v;
    }
  }
}

FlightSample simulate_path(const FlightParams& fp, PathRng& rng,
                           bool m1_resample) {
  const int m = fp.m;
  FlightSample out;
  out.position.assign(m, 0.0);

  double sign = 0.0;        // current direction for m = 1
  std::vector<double> dir;  // current direction for m >= 2
  if (m == 1)
    sign = rng.u01() < 0.5 ? 1.0 : -1.0;
  else
    dir = sample_direction(m, rng);

  double now = 0.0;
  std::uint32_t switches = 0;
  while (true) {
    const double leg_end = now + rng.exponential() / fp.lambda;
    const bool final_leg = leg_end >= fp.t;
    const double step = fp.c * ((final_leg ? fp.t : leg_end) - now);
    if (m == 1)
      out.position[0] += sign * step;
    else
      for (int i = 0; i < m; ++i) out.position[i] += dir[i] * step;
    if (final_leg) break;
    now = leg_end;
    ++switches;
    if (m == 1) {
      if (m1_resample)
        sign = rng.u01() < 0.5 ? 1.0 : -1.0;
      else
        sign = -sign;  // each event flips the direction deterministically
    } else {
      dir = sample_direction(m, rng);
    }
  }
  out.switch_count = switches;
  double norm2 = 0.0;
  for (double x : out.position) norm2 += x * x;
  out.radius = std::sqrt(norm2);
  return out;
}

SampleSummary run(const SimConfig& cfg) {
  cfg.fp.validate();
  if (cfg.n_paths < 1) throw std::invalid_argument("n_paths must be >= 1");
  if (cfg.batch_size < 1)
    throw std::invalid_argument("batch_size must be >= 1");

  const std::uint64_t n = cfg.n_paths;
  std::vector<double> radii(n);
  std::vector<std::uint32_t> switches(n);

  const std::uint64_t batch = cfg.batch_size;
  const std::uint64_t n_batches = (n + batch - 1) / batch;
  std::uint64_t threads = static_cast<std::uint64_t>(
      std::max(1, resolve_threads(cfg.threads)));
  threads = std::min(threads, n_batches);

  // Each path draws only from its own counter-based stream (seed, i) and
  // writes only its own slots, so the fill is bit-identical under any
  // batch/thread schedule.
  std::atomic<std::uint64_t> next_batch{0};
  auto worker = [&] {
    while (true) {
      const std::uint64_t b = next_batch.fetch_add(1);
      if (b >= n_batches) return;
      const std::uint64_t lo = b * batch;
      const std::uint64_t hi = std::min(n, lo + batch);
      for (std::uint64_t i = lo; i < hi; ++i) {
        PathRng rng(cfg.seed, i);
        const FlightSample s = simulate_path(cfg.fp, rng, cfg.m1_resample);
        radii[i] = s.radius;
        switches[i] = s.switch_count;
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::uint64_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  // Reductions run in path-index order, which keeps floating-point sums
  // independent of the schedule as well.
  SampleSummary out;
  out.n_paths = n;
  std::uint64_t switch_total = 0;
  double radius_sum = 0.0;
  out.radii_sorted.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    if (switches[i] == 0)
      ++out.n_zero_switch;
    else
      out.radii_sorted.push_back(radii[i]);
    switch_total += switches[i];
    radius_sum += radii[i];
  }
  std::sort(out.radii_sorted.begin(), out.radii_sorted.end());
  out.mean_radius = radius_sum / static_cast<double>(n);
  out.mean_switches =
      static_cast<double>(switch_total) / static_cast<double>(n);
  return out;
}

void dump_samples_csv(std::ostream& os, const SimConfig& cfg,
                      bool with_coords) {
  cfg.fp.validate();
  os << "path_index,switches,radius";
  if (with_coords)
    for (int i = 1; i <= cfg.fp.m; ++i) os << ",x" << i;
  os << "\n";
  for (std::uint64_t i = 0; i < cfg.n_paths; ++i) {
    PathRng rng(cfg.seed, i);
    os << csv_row(simulate_path(cfg.fp, rng, cfg.m1_resample), i, with_coords)
       << "\n";
  }
}

}  // namespace randflight
