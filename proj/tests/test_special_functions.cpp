#include "mfwr/special_functions.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "mfwr/errors.hpp"
#include "oracles.hpp"

using mfwr::free_gas_density;
using mfwr::lambert_w0;
using mfwr::mean_density;
using mfwr::mean_density_dx;
using mfwr::potential_of_density;
using mfwr::species_pressure;

TEST_CASE("lambert_w0 closed-form points") {
  CHECK(lambert_w0(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(lambert_w0(0.5 * std::exp(0.5)) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(lambert_w0(1.0) == doctest::Approx(0.567143290409783873).epsilon(1e-14));
  CHECK(lambert_w0(10.0) == doctest::Approx(1.7455280027406993831).epsilon(1e-14));
  CHECK(lambert_w0(0.1) == doctest::Approx(0.0912765271608622643).epsilon(1e-14));
  CHECK(lambert_w0(1e8) == doctest::Approx(15.668996715450962187).epsilon(1e-14));
}

TEST_CASE("lambert_w0 residual identity over wide range") {
  for (double lt = -30.0; lt <= 300.0; lt += 0.37) {
    const double t = std::exp(lt);
    const double w = lambert_w0(t);
    // check w + ln w = ln t, the well-conditioned form of w e^w = t
    const double resid = w + std::log(w) - lt;
    CHECK(std::abs(resid) <= 1e-13 * (1.0 + std::abs(lt)));
  }
}

TEST_CASE("lambert_w0 tiny arguments and series seam") {
  // scale(0) turns Approx into a pure relative comparison
  CHECK(lambert_w0(1e-300) == doctest::Approx(1e-300).epsilon(1e-14).scale(0.0));
  CHECK(lambert_w0(1e-8) == doctest::Approx(1e-8 - 1e-16).epsilon(1e-14).scale(0.0));
  // both evaluation paths agree where they meet
  const double below = lambert_w0(0.99999e-4);
  const double above = lambert_w0(1.00001e-4);
  CHECK(std::abs(above - below) <= 3e-9);  // ~d/dt W * width
  CHECK(above > below);
  for (double t : {1e-6, 5e-5, 9.9e-5, 1.01e-4, 2e-4, 1e-3}) {
    CHECK(lambert_w0(t) ==
          doctest::Approx(oracles::lambert_w0_ref(t)).epsilon(5e-14).scale(0.0));
  }
}

TEST_CASE("lambert_w0 domain") {
  CHECK_THROWS_AS((void)lambert_w0(0.0), mfwr::DomainError);
  CHECK_THROWS_AS((void)lambert_w0(-1.0), mfwr::DomainError);
  CHECK_THROWS_AS((void)lambert_w0(std::nan("")), mfwr::DomainError);
}

TEST_CASE("mean_density closed-form and pinned points") {
  CHECK(mean_density(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(mean_density(2.0, 1.0 - std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(mean_density(3.0, 3.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(mean_density(1.0, 5.0) == doctest::Approx(3.6934413589606498043).epsilon(1e-14));
  CHECK(mean_density(0.5, 1.0) == doctest::Approx(1.3701538843091878921).epsilon(1e-14));
  CHECK(mean_density(2.0, -1.0) == doctest::Approx(0.2315277566827744287).epsilon(1e-14));
}

TEST_CASE("mean_density fixed-point identity on a grid") {
  for (double a : {1e-3, 0.1, 1.0, 2.0, 10.0, 300.0}) {
    for (double x = -40.0; x <= 40.0; x += 0.93) {
      const double u = mean_density(a, x);
      REQUIRE(u > 0.0);
      // rho = exp(x - a rho) in log form
      const double resid = std::log(u) - (x - a * u);
      CHECK(std::abs(resid) <= 1e-13 * (1.0 + std::abs(x) + a * u));
    }
  }
}

TEST_CASE("mean_density against high-precision reference") {
  for (double a : {0.25, 1.0, 4.0}) {
    for (double x = -20.0; x <= 20.0; x += 1.17) {
      const double ref = oracles::mean_density_ref(a, x);
      CHECK(mean_density(a, x) == doctest::Approx(ref).epsilon(5e-14).scale(0.0));
    }
  }
}

TEST_CASE("mean_density monotone increasing in x, bounded by free gas") {
  for (double a : {0.5, 1.0, 3.0}) {
    double prev = 0.0;
    for (double x = -30.0; x <= 30.0; x += 0.25) {
      const double u = mean_density(a, x);
      CHECK(u > prev);
      CHECK(u < std::exp(x));
      prev = u;
    }
  }
}

TEST_CASE("mean_density deep-tail asymptotics") {
  // for very negative x the density is exponentially small but exact in
  // relative terms: u ~ e^x (1 - a e^x)
  CHECK(mean_density(1.0, -700.0) ==
        doctest::Approx(std::exp(-700.0)).epsilon(1e-13).scale(0.0));
  CHECK(mean_density(2.0, -50.0) ==
        doctest::Approx(oracles::mean_density_ref(2.0, -50.0)).epsilon(5e-14).scale(0.0));
}

TEST_CASE("mean_density small-a limit matches free gas") {
  for (double x : {-2.0, 0.0, 1.0, 3.0}) {
    const double u = mean_density(1e-8, x);
    CHECK(u == doctest::Approx(free_gas_density(x)).epsilon(1e-6));
  }
  CHECK(free_gas_density(0.0) == 1.0);
  CHECK(free_gas_density(2.0) == doctest::Approx(std::exp(2.0)).epsilon(1e-15));
}

TEST_CASE("mean_density domain") {
  CHECK_THROWS_AS((void)mean_density(0.0, 1.0), mfwr::DomainError);
  CHECK_THROWS_AS((void)mean_density(-1.0, 1.0), mfwr::DomainError);
  CHECK_THROWS_AS((void)mean_density(1.0, std::nan("")), mfwr::DomainError);
}

TEST_CASE("mean_density_dx pinned values and bounds") {
  CHECK(mean_density_dx(1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(mean_density_dx(1.0, 0.0) ==
        doctest::Approx(0.36189625663488922148).epsilon(1e-14));
  for (double a : {0.5, 1.0, 4.0}) {
    for (double x = -10.0; x <= 10.0; x += 0.61) {
      const double up = mean_density_dx(a, x);
      const double u = mean_density(a, x);
      CHECK(up > 0.0);
      CHECK(up < u);
      CHECK(up < 1.0 / a);
    }
  }
}

TEST_CASE("mean_density_dx matches finite differences") {
  const double h = 1e-6;
  for (double a : {0.5, 1.0, 4.0}) {
    for (double x = -8.0; x <= 8.0; x += 0.77) {
      const double fd = (mean_density(a, x + h) - mean_density(a, x - h)) / (2.0 * h);
      CHECK(mean_density_dx(a, x) == doctest::Approx(fd).epsilon(1e-7));
    }
  }
}

TEST_CASE("species_pressure pinned values") {
  CHECK(species_pressure(1.0, 1.0) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(species_pressure(2.0, 1.0 - std::log(2.0)) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(species_pressure(1.0, 0.0) ==
        doctest::Approx(0.72796904633820209701).epsilon(1e-14));
  CHECK(species_pressure(2.0, 1.0) ==
        doctest::Approx(1.1599455100921141677).epsilon(1e-14));
}

TEST_CASE("species_pressure consistency with mean_density") {
  for (double a : {0.5, 1.0, 4.0}) {
    for (double x = -12.0; x <= 12.0; x += 0.83) {
      const double u = mean_density(a, x);
      const double f = species_pressure(a, x);
      CHECK(f == doctest::Approx(0.5 * a * u * u + u).epsilon(1e-13));
      // derivative identity: df/dx = u
      const double h = 1e-6;
      const double fd = (species_pressure(a, x + h) - species_pressure(a, x - h)) / (2.0 * h);
      CHECK(fd == doctest::Approx(u).epsilon(1e-7));
    }
  }
}

TEST_CASE("potential_of_density round trip") {
  for (double a : {0.3, 1.0, 5.0}) {
    for (double lr = -14.0; lr <= 14.0; lr += 0.91) {
      const double rho = std::exp(lr);
      const double x = potential_of_density(a, rho);
      CHECK(mean_density(a, x) == doctest::Approx(rho).epsilon(1e-12).scale(0.0));
    }
  }
  CHECK_THROWS_AS((void)potential_of_density(1.0, 0.0), mfwr::DomainError);
  CHECK_THROWS_AS((void)potential_of_density(1.0, -2.0), mfwr::DomainError);
}
