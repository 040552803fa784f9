#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <string>

#include "randflight/model.hpp"

using namespace randflight;

TEST_CASE("parameter validation") {
  CHECK_NOTHROW((FlightParams{1, 1.0, 1.0, 1.0}.validate()));
  CHECK_NOTHROW((FlightParams{9, 0.5, 2.0, 4.0}.validate()));  // any m >= 1
  CHECK_THROWS_AS((FlightParams{0, 1, 1, 1}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((FlightParams{1, 0, 1, 1}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((FlightParams{1, 1, -2, 1}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((FlightParams{1, 1, 1, 0}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      (FlightParams{1, std::numeric_limits<double>::infinity(), 1, 1}
           .validate()),
      std::invalid_argument);

  CHECK_NOTHROW((StationaryParams{7.0, 5.0, 2}.validate()));
  CHECK_THROWS_AS((StationaryParams{0.0, 5.0, 2}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((StationaryParams{1.0, -1.0, 2}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((StationaryParams{1.0, 1.0, 0}.validate()),
                  std::invalid_argument);
}

TEST_CASE("scaling-limit parameters from transition parameters") {
  const StationaryParams sp = sdc_limit_of(FlightParams{2, 1.0, 1.0, 3.0});
  CHECK(sp.m == 2);
  CHECK(sp.a == 3.0);
  CHECK(sp.rho == 3.0);

  const StationaryParams sp2 = sdc_limit_of(FlightParams{6, 2.0, 0.5, 4.0});
  CHECK(sp2.a == 2.0);
  CHECK(sp2.rho == 8.0);
  CHECK_THROWS_AS(sdc_limit_of(FlightParams{2, 0.0, 1.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("exceptions carry their payloads") {
  const UnsupportedDimension ud(5);
  CHECK(ud.m == 5);
  CHECK(std::string(ud.what()).find("m=5") != std::string::npos);

  const AsymptoticValidityError ave(0.7);
  CHECK(ave.a == doctest::Approx(0.7));

  const QuadratureNonConvergence qnc(1.25, 1e-4, 1e-9);
  CHECK(qnc.best_estimate == 1.25);
  CHECK(qnc.achieved_tol == 1e-4);
  CHECK(qnc.requested_tol == 1e-9);

  const UnderpoweredError upe(17);
  CHECK(upe.n_samples == 17);
}

TEST_CASE("double formatting round-trips") {
  for (double v : {1.0 / 3.0, 0.1, 1e-300, 6.02e23, -0.0, 3.0}) {
    const std::string s = fmt_double(v);
    CHECK(std::stod(s) == v);
  }
}

TEST_CASE("serialization formats") {
  const FlightParams fp{2, 1.0, 0.5, 3.0};
  const std::string kv = to_kv(fp);
  CHECK(kv.find("m=2") != std::string::npos);
  CHECK(kv.find("lambda=0.5") != std::string::npos);

  DensityEval de;
  de.ac_density = 0.25;
  de.singular_mass = 0.5;
  de.support_radius = 2.0;
  de.in_support = true;
  CHECK(csv_row(de, 1.5) == "1.5,0.25,0.5,2");
  CHECK(to_kv(de).find("in_support=1") != std::string::npos);

  FlightSample fs;
  fs.position = {3.0, -4.0};
  fs.switch_count = 2;
  fs.radius = 5.0;
  CHECK(csv_row(fs, 7, false) == "7,2,5");
  CHECK(csv_row(fs, 7, true) == "7,2,5,3,-4");
}
