#include "randflight/model.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace randflight {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

void FlightParams::validate() const {
  require(m >= 1, "dimension m must be >= 1");
  require(std::isfinite(c) && c > 0, "speed c must be positive and finite");
  require(std::isfinite(lambda) && lambda > 0,
          "switching rate lambda must be positive and finite");
  require(std::isfinite(t) && t > 0, "time t must be positive and finite");
}

void StationaryParams::validate() const {
  require(m >= 1, "dimension m must be >= 1");
  require(std::isfinite(a) && a > 0, "parameter a must be positive and finite");
  require(std::isfinite(rho) && rho > 0,
          "support radius rho must be positive and finite");
}

StationaryParams sdc_limit_of(const FlightParams& fp) {
  fp.validate();
  return {fp.lambda * fp.t, fp.c * fp.t, fp.m};
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_kv(const FlightParams& fp) {
  std::ostringstream os;
  os << "m=" << fp.m << " c=" << fmt_double(fp.c)
     << " lambda=" << fmt_double(fp.lambda) << " t=" << fmt_double(fp.t);
  return os.str();
}

std::string to_kv(const StationaryParams& sp) {
  std::ostringstream os;
  os << "m=" << sp.m << " a=" << fmt_double(sp.a)
     << " rho=" << fmt_double(sp.rho);
  return os.str();
}

std::string to_kv(const DensityEval& de) {
  std::ostringstream os;
  os << "ac_density=" << fmt_double(de.ac_density)
     << " singular_mass=" << fmt_double(de.singular_mass)
     << " support_radius=" << fmt_double(de.support_radius)
     << " in_support=" << (de.in_support ? 1 : 0)
     << " boundary_singular=" << (de.boundary_singular ? 1 : 0)
     << " asymptotic=" << (de.asymptotic ? 1 : 0);
  return os.str();
}

std::string csv_row(const DensityEval& de, double r) {
  std::ostringstream os;
  os << fmt_double(r) << ',' << fmt_double(de.ac_density) << ','
     << fmt_double(de.singular_mass) << ',' << fmt_double(de.support_radius);
  return os.str();
}

std::string csv_row(const FlightSample& fs, std::uint64_t path_index,
                    bool with_coords) {
  std::ostringstream os;
  os << path_index << ',' << fs.switch_count << ',' << fmt_double(fs.radius);
  if (with_coords)
    for (double x : fs.position) os << ',' << fmt_double(x);
  return os.str();
}

}  // namespace randflight
