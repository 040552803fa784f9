#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "randflight/model.hpp"
#include "randflight/rng.hpp"

// Monte Carlo simulator of the symmetric random flight in any dimension
// m >= 1: exponential inter-arrival times, uniform directions on the unit
// sphere (deterministic alternation in one dimension), terminal positions.
namespace randflight {

struct SimConfig {
  FlightParams fp;
  std::uint64_t n_paths = 1;
  std::uint64_t seed = 0;
  std::uint32_t batch_size = 65536;
  int threads = 0;  // 0: RANDFLIGHT_THREADS env var, else hardware count
  // One-dimensional variant that resamples the sign uniformly at each event
  // instead of alternating (halves the effective switch rate; excluded from
  // validation defaults).
  bool m1_resample = false;
};

struct SampleSummary {
  std::uint64_t n_paths = 0;
  std::uint64_t n_zero_switch = 0;
  std::vector<double> radii_sorted;  // radii of paths with >= 1 switch
  double mean_radius = 0.0;          // over all paths
  double mean_switches = 0.0;
};

// Uniform direction on the unit sphere in R^m (m >= 2): normalized vector of
// iid standard normals; rotation-invariant by construction.
std::vector<double> sample_direction(int m, PathRng& rng);

// One path: initial direction uniform on the sphere (a sign for m=1), then
// legs between Poisson events; for m=1 every event flips the sign
// deterministically unless m1_resample.
FlightSample simulate_path(const FlightParams& fp, PathRng& rng,
                           bool m1_resample = false);

// n_paths independent paths.  Bit-identical result for fixed (seed, fp,
// n_paths) under any batch_size / thread count: path i draws from the
// counter-based stream (seed, i) and all reductions run in path order.
SampleSummary run(const SimConfig& cfg);

// Raw-sample dump: `path_index,switches,radius[,x1..xm]`, one row per path.
void dump_samples_csv(std::ostream& os, const SimConfig& cfg,
                      bool with_coords);

}  // namespace randflight
