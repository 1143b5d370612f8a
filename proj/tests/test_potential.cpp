#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "errors.hpp"
#include "potential.hpp"
#include "test_support.hpp"

using namespace kgchain;
using testsupport::simpson;

namespace {

std::vector<Potential> builtins() {
  std::vector<Potential> out;
  out.push_back(Potential::harmonic(1.0));
  out.push_back(Potential::exp_decay());
  out.push_back(Potential::quartic());
  out.push_back(Potential::saturating());
  return out;
}

}  // namespace

TEST_CASE("harmonic potential evaluates its closed form") {
  const Potential p = Potential::harmonic(2.0);
  CHECK(p.psi(3.0) == 9.0);
  CHECK(p.dpsi(3.0) == 6.0);
  CHECK(p.ddpsi(3.0) == 2.0);
  CHECK(p.ddpsi(-7.0) == 2.0);

  CHECK_THROWS_AS(Potential::harmonic(0.0), std::invalid_argument);
  CHECK_THROWS_AS(Potential::harmonic(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(Potential::harmonic(std::nan("")), std::invalid_argument);
}

TEST_CASE("exp_decay and quartic spot values") {
  const Potential e = Potential::exp_decay();
  CHECK(e.psi(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(e.dpsi(-1.0) == doctest::Approx(1.0 - std::exp(1.0)).epsilon(1e-15));
  CHECK(e.ddpsi(2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));

  const Potential q = Potential::quartic();
  CHECK(q.psi(2.0) == doctest::Approx(10.0 / 3.0).epsilon(1e-15));
  CHECK(q.dpsi(2.0) == doctest::Approx(14.0 / 3.0).epsilon(1e-15));
  CHECK(q.ddpsi(2.0) == 5.0);
}

TEST_CASE("saturating potential: harmonic left half, frozen right values") {
  const Potential s = Potential::saturating();
  CHECK(s.psi(-2.0) == 2.0);
  CHECK(s.dpsi(-2.0) == -2.0);
  CHECK(s.ddpsi(-2.0) == 1.0);

  CHECK(s.dpsi(1.0) == doctest::Approx(0.74682413281242702).epsilon(1e-15));
  CHECK(s.ddpsi(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));

  // the right branch joins the harmonic half to second order at zero
  const double eps = 1e-7;
  CHECK(std::fabs(s.psi(eps) - 0.5 * eps * eps) <= 1e-16);
  CHECK(std::fabs(s.dpsi(eps) - eps) <= 1e-15);
  CHECK(std::fabs(s.ddpsi(eps) - 1.0) <= 1e-13);
}

TEST_CASE("all built-ins have a normalized strict minimum at zero") {
  for (const Potential& p : builtins()) {
    CAPTURE(p.name());
    CHECK(p.psi(0.0) == 0.0);
    CHECK(p.dpsi(0.0) == 0.0);
    CHECK(p.ddpsi(0.0) >= 1.0);
    for (double x : {-4.0, -0.5, -1e-3, 1e-3, 0.5, 4.0}) {
      CHECK(p.psi(x) > 0.0);
    }
  }
}

TEST_CASE("derivative chain is internally consistent") {
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (const Potential& p : builtins()) {
    CAPTURE(p.name());
    for (int rep = 0; rep < 25; ++rep) {
      const double x = u(rng);
      // quadrature of the stated derivative recovers the level above it
      const double ipsi = simpson([&p](double t) { return p.dpsi(t); }, 0.0, x);
      CHECK(std::fabs(ipsi - p.psi(x)) <= 1e-8 * (1.0 + std::fabs(p.psi(x))));
      const double idpsi = simpson([&p](double t) { return p.ddpsi(t); }, 0.0, x);
      CHECK(std::fabs(idpsi - p.dpsi(x)) <= 1e-8 * (1.0 + std::fabs(p.dpsi(x))));
      // centred difference of psi' matches psi''
      const double h = 1e-5;
      const double fd = (p.dpsi(x + h) - p.dpsi(x - h)) / (2.0 * h);
      CHECK(std::fabs(fd - p.ddpsi(x)) <= 1e-6 * (1.0 + std::fabs(p.ddpsi(x))));
    }
  }
}

TEST_CASE("convexity bounds bracket psi'' and are attained") {
  const Potential e = Potential::exp_decay();
  const ConvexityBounds be = e.bounds_on(-2.0, 3.0);
  CHECK(be.lower == doctest::Approx(std::exp(-3.0)).epsilon(1e-12));
  CHECK(be.upper == doctest::Approx(std::exp(2.0)).epsilon(1e-12));

  const Potential q = Potential::quartic();
  const ConvexityBounds bq = q.bounds_on(-2.0, 3.0);
  CHECK(bq.lower >= 1.0);
  CHECK(bq.lower <= 1.0 + 1e-4);  // interior minimum found by sampling
  CHECK(bq.upper == 10.0);

  const Potential s = Potential::saturating();
  const ConvexityBounds bs = s.bounds_on(-1.0, 2.0);
  CHECK(bs.lower == doctest::Approx(std::exp(-4.0)).epsilon(1e-12));
  CHECK(bs.upper == 1.0);

  CHECK_THROWS_AS(q.bounds_on(3.0, 2.0), PreconditionError);

  std::mt19937 rng(103);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (const Potential& p : builtins()) {
    const ConvexityBounds b = p.bounds_on(-3.0, 3.0);
    CHECK(b.lower > 0.0);
    for (int rep = 0; rep < 50; ++rep) {
      const double d = p.ddpsi(u(rng));
      CHECK(d >= b.lower - 1e-12);
      CHECK(d <= b.upper + 1e-12);
    }
  }
}

TEST_CASE("psi' is strictly increasing") {
  std::mt19937 rng(107);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (const Potential& p : builtins()) {
    CAPTURE(p.name());
    for (int rep = 0; rep < 50; ++rep) {
      double a = u(rng), b = u(rng);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      CHECK(p.dpsi(b) > p.dpsi(a));
    }
  }
}

TEST_CASE("parse round-trips the canonical name") {
  CHECK(Potential::parse("harmonic").name() == "harmonic:c=1");
  CHECK(Potential::parse("harmonic:c=2.5").ddpsi(0.0) == 2.5);
  CHECK(Potential::parse("exp_decay").name() == "exp_decay");
  CHECK(Potential::parse("quartic").name() == "quartic");
  CHECK(Potential::parse("saturating").name() == "saturating");

  for (const Potential& p : builtins()) {
    CHECK(Potential::parse(p.name()).name() == p.name());
  }
  const Potential h = Potential::harmonic(0.125);
  CHECK(Potential::parse(h.name()).ddpsi(1.0) == 0.125);

  CHECK_THROWS_AS(Potential::parse("junk"), std::invalid_argument);
  CHECK_THROWS_AS(Potential::parse("harmonic:c=abc"), std::invalid_argument);
  CHECK_THROWS_AS(Potential::parse("harmonic:c=1x"), std::invalid_argument);
  CHECK_THROWS_AS(Potential::parse("harmonic:c=-2"), std::invalid_argument);
  CHECK_THROWS_AS(Potential::parse(""), std::invalid_argument);
}
