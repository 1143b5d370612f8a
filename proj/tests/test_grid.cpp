#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "errors.hpp"
#include "grid.hpp"
#include "test_support.hpp"

using namespace kgchain;
using testsupport::kTau;
using testsupport::random_smooth;

TEST_CASE("grid constructor enforces even node counts of at least 8") {
  CHECK_NOTHROW(PeriodicGrid(8));
  CHECK_THROWS_AS(PeriodicGrid(7), PreconditionError);
  CHECK_THROWS_AS(PeriodicGrid(6), PreconditionError);
  CHECK_THROWS_AS(PeriodicGrid(0), PreconditionError);
  CHECK_THROWS_AS(PeriodicGrid(-8), PreconditionError);

  const PeriodicGrid g(64);
  CHECK(g.size() == 64);
  CHECK(g.spacing() * g.size() == 1.0);
  CHECK(g.node(0) == -0.5);
  CHECK(g.node(32) == 0.0);
  CHECK(g.wrap(-1) == 63);
  CHECK(g.wrap(64) == 0);
}

TEST_CASE("profile construction validates sample data") {
  const PeriodicGrid g(16);
  const Profile zero(g);
  for (int j = 0; j < 16; ++j) CHECK(zero[j] == 0.0);

  CHECK_THROWS_AS(Profile(g, std::vector<double>(15, 1.0)), PreconditionError);
  std::vector<double> bad(16, 0.0);
  bad[3] = std::nan("");
  CHECK_THROWS_AS(Profile(g, bad), PreconditionError);
}

TEST_CASE("wave numbers must be grid multiples and fold into [0, 1/2]") {
  const PeriodicGrid g(800);
  const WaveNumber k = WaveNumber::aligned(0.1, g);
  CHECK(k.shifts() == 80);
  CHECK(k.value() == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(k.half_aligned());

  CHECK_THROWS_AS(WaveNumber::aligned(0.1234, g), AlignmentError);

  CHECK(WaveNumber::aligned(0.0, g).shifts() == 0);
  CHECK(WaveNumber::aligned(0.5, g).shifts() == 400);
  // folding: k and -k generate the same dynamics, as do k and 1-k
  CHECK(WaveNumber::aligned(-0.1, g).shifts() == 80);
  CHECK(WaveNumber::aligned(0.9, g).shifts() == 80);
  CHECK_FALSE(WaveNumber::aligned(0.10125, g).half_aligned());  // p = 81
}

TEST_CASE("shift is an exact index rotation") {
  const PeriodicGrid g(128);
  const Profile c = sampled(g, [](double) { return 3.25; });
  const Profile cs = shift(c, 17);
  for (int j = 0; j < g.size(); ++j) CHECK(cs[j] == 3.25);

  std::mt19937 rng(11);
  const Profile x = random_smooth(g, rng);
  const Profile xs = shift(x, g.size());
  for (int j = 0; j < g.size(); ++j) CHECK(xs[j] == x[j]);

  // cos shifted by a quarter period lands on -sin samples, up to libm rounding
  const Profile cosx = sampled(g, [](double p) { return std::cos(kTau * p); });
  const Profile quarter = shift(cosx, g.size() / 4);
  for (int j = 0; j < g.size(); ++j) {
    CHECK(std::fabs(quarter[j] + std::sin(kTau * g.node(j))) <= 1e-14);
  }
}

TEST_CASE("laplacian_k annihilates constants and has cosine eigenvectors") {
  const PeriodicGrid g(256);
  const WaveNumber k = WaveNumber::aligned(0.125, g);

  const Profile c = sampled(g, [](double) { return -7.5; });
  const Profile lc = laplacian_k(c, k);
  for (int j = 0; j < g.size(); ++j) CHECK(lc[j] == 0.0);

  const double lam = -4.0 * std::pow(std::sin(M_PI * k.value()), 2);
  const Profile cosx = sampled(g, [](double p) { return std::cos(kTau * p); });
  const Profile lcos = laplacian_k(cosx, k);
  for (int j = 0; j < g.size(); ++j) {
    CHECK(std::fabs(lcos[j] - lam * cosx[j]) <= 1e-13);
  }
}

TEST_CASE("laplacian_k impulse stencil by hand") {
  const PeriodicGrid g(8);
  Profile x(g);
  x[0] = 1.0;
  const Profile l = laplacian_k(x, WaveNumber::aligned(0.25, g));  // p = 2
  const double want[8] = {-2, 0, 1, 0, 0, 0, 1, 0};
  for (int j = 0; j < 8; ++j) CHECK(l[j] == want[j]);
}

TEST_CASE("laplacian_k output has zero Riemann mean") {
  const PeriodicGrid g(200);
  std::mt19937 rng(23);
  for (int rep = 0; rep < 20; ++rep) {
    const Profile x = random_smooth(g, rng);
    const Profile l = laplacian_k(x, WaveNumber::aligned(0.1, g));
    CHECK(std::fabs(integrate(l)) <= 1e-13 * (1.0 + sup_norm(x)));
  }
}

TEST_CASE("nabla_k needs even shift counts and factorizes the laplacian") {
  const PeriodicGrid g(256);
  const WaveNumber k = WaveNumber::aligned(0.125, g);  // p = 32
  const WaveNumber kodd = WaveNumber::aligned(31.0 / 256.0, g);

  std::mt19937 rng(37);
  const Profile x = random_smooth(g, rng);
  CHECK_THROWS_AS(nabla_k(x, kodd), AlignmentError);

  const Profile c = sampled(g, [](double) { return 2.0; });
  const Profile nc = nabla_k(c, k);
  for (int j = 0; j < g.size(); ++j) CHECK(nc[j] == 0.0);

  const double fac = -2.0 * std::sin(M_PI * k.value());
  const Profile cosx = sampled(g, [](double p) { return std::cos(kTau * p); });
  const Profile ncos = nabla_k(cosx, k);
  for (int j = 0; j < g.size(); ++j) {
    CHECK(std::fabs(ncos[j] - fac * std::sin(kTau * g.node(j))) <= 1e-13);
  }

  for (int rep = 0; rep < 100; ++rep) {
    const Profile y = random_smooth(g, rng);
    const Profile twice = nabla_k(nabla_k(y, k), k);
    const Profile lap = laplacian_k(y, k);
    const double scale = 1.0 + sup_norm(y);
    for (int j = 0; j < g.size(); ++j) {
      CHECK(std::fabs(twice[j] - lap[j]) <= 1e-13 * scale);
    }
  }
}

TEST_CASE("nabla_k is antisymmetric under the L2 pairing") {
  const PeriodicGrid g(128);
  const WaveNumber k = WaveNumber::aligned(0.25, g);
  std::mt19937 rng(41);
  for (int rep = 0; rep < 100; ++rep) {
    const Profile a = random_smooth(g, rng);
    const Profile b = random_smooth(g, rng);
    const Profile na = nabla_k(a, k);
    const Profile nb = nabla_k(b, k);
    double lhs = 0.0, rhs = 0.0;
    for (int j = 0; j < g.size(); ++j) {
      lhs += na[j] * b[j];
      rhs += a[j] * nb[j];
    }
    lhs *= g.spacing();
    rhs *= g.spacing();
    const double scale = (1.0 + sup_norm(a)) * (1.0 + sup_norm(b));
    CHECK(std::fabs(lhs + rhs) <= 1e-13 * scale);
  }
}

TEST_CASE("averaging_k is a width-k moving window") {
  const PeriodicGrid g(400);
  const WaveNumber k = WaveNumber::aligned(0.1, g);

  // windowing a constant gives k times it, up to rounding in the spacing
  const Profile c = sampled(g, [](double) { return 5.0; });
  const Profile ac = averaging_k(c, k);
  for (int j = 0; j < g.size(); ++j) {
    CHECK(std::fabs(ac[j] - 0.5) <= 1e-14);
  }

  // window integral of cos(2 pi phi): (sin(pi k)/pi) cos(2 pi phi) + O(N^-2)
  const Profile cosx = sampled(g, [](double p) { return std::cos(kTau * p); });
  const Profile acos = averaging_k(cosx, k);
  const double fac = std::sin(M_PI * k.value()) / M_PI;
  const double budget = 10.0 / (g.size() * double(g.size()));
  for (int j = 0; j < g.size(); ++j) {
    CHECK(std::fabs(acos[j] - fac * cosx[j]) <= budget);
  }

  // nabla_k X = A_k X' up to the discretization error of the derivative
  std::mt19937 rng(43);
  for (int rep = 0; rep < 20; ++rep) {
    const Profile x = random_smooth(g, rng);
    const Profile lhs = nabla_k(x, k);
    const Profile rhs = averaging_k(derivative(x), k);
    const double tol = 600.0 / (g.size() * double(g.size()));
    for (int j = 0; j < g.size(); ++j) CHECK(std::fabs(lhs[j] - rhs[j]) <= tol);
  }

  const WaveNumber kodd = WaveNumber::aligned(41.0 / 400.0, g);
  CHECK_THROWS_AS(averaging_k(cosx, kodd), AlignmentError);
}

TEST_CASE("derivative: exactness on constants, order 2, parity flip") {
  const PeriodicGrid g(128);
  const Profile c = sampled(g, [](double) { return 4.0; });
  const Profile dc = derivative(c);
  for (int j = 0; j < g.size(); ++j) CHECK(dc[j] == 0.0);

  double errs[2];
  const int sizes[2] = {64, 128};
  for (int t = 0; t < 2; ++t) {
    const PeriodicGrid gt(sizes[t]);
    const Profile cosx = sampled(gt, [](double p) { return std::cos(kTau * p); });
    const Profile d = derivative(cosx);
    double e = 0.0;
    for (int j = 0; j < gt.size(); ++j) {
      e = std::max(e, std::fabs(d[j] + kTau * std::sin(kTau * gt.node(j))));
    }
    errs[t] = e;
  }
  CHECK(errs[0] / errs[1] >= 3.5);  // centred stencil converges at order 2

  std::mt19937 rng(53);
  const Profile even = random_smooth(g, rng, 6, /*even_only=*/true);
  CHECK(evenness_defect(even) == 0.0);
  CHECK(oddness_defect(derivative(even)) == 0.0);
}

TEST_CASE("integrate is the periodic rectangle rule") {
  const PeriodicGrid g(64);
  CHECK(integrate(sampled(g, [](double) { return 2.5; })) ==
        doctest::Approx(2.5).epsilon(1e-15));
  CHECK(std::fabs(integrate(sampled(g, [](double p) { return std::cos(kTau * p); }))) <=
        1e-14);
  const Profile cos2 = sampled(g, [](double p) {
    const double c = std::cos(kTau * p);
    return c * c;
  });
  CHECK(integrate(cos2) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("cumulative integrates mean-zero profiles to mean-zero antiderivatives") {
  const PeriodicGrid g(512);
  const Profile zero(g);
  const Profile cz = cumulative(zero);
  for (int j = 0; j < g.size(); ++j) CHECK(cz[j] == 0.0);

  // discrete closed form: cumulative(cos) = mu1 sin with mu1 = (h/2) cot(pi h)
  const double h = g.spacing();
  const double mu1 = 0.5 * h / std::tan(M_PI * h);
  const Profile cosx = sampled(g, [](double p) { return std::cos(kTau * p); });
  const Profile ccos = cumulative(cosx);
  for (int j = 0; j < g.size(); ++j) {
    CHECK(std::fabs(ccos[j] - mu1 * std::sin(kTau * g.node(j))) <= 1e-14);
  }
  // and mu1 -> 1/(2 pi), so the continuum antiderivative holds at order 2
  double errs[2];
  const int sizes[2] = {128, 256};
  for (int t = 0; t < 2; ++t) {
    const PeriodicGrid gt(sizes[t]);
    const Profile ct = cumulative(sampled(gt, [](double p) { return std::cos(kTau * p); }));
    double e = 0.0;
    for (int j = 0; j < gt.size(); ++j) {
      e = std::max(e, std::fabs(ct[j] - std::sin(kTau * gt.node(j)) / kTau));
    }
    errs[t] = e;
  }
  CHECK(errs[0] / errs[1] >= 3.5);

  const Profile sinx = sampled(g, [](double p) { return std::sin(kTau * p); });
  const Profile csin = cumulative(sinx);
  for (int j = 0; j < g.size(); ++j) {
    CHECK(std::fabs(csin[j] + std::cos(kTau * g.node(j)) / kTau) <= 1e-4);
  }
  CHECK(std::fabs(integrate(csin)) <= 1e-13);

  CHECK_THROWS_AS(cumulative(sampled(g, [](double) { return 1.0; })),
                  PreconditionError);
}

TEST_CASE("derivative(cumulative(.)) converges to the identity at order 2") {
  std::mt19937 rng(59);
  double errs[2];
  const int sizes[2] = {256, 512};
  for (int t = 0; t < 2; ++t) {
    const PeriodicGrid gt(sizes[t]);
    const Profile x = sampled(gt, [](double p) {
      return std::cos(kTau * p) + 0.5 * std::sin(2.0 * kTau * p);
    });
    const Profile back = derivative(cumulative(x));
    double e = 0.0;
    for (int j = 0; j < gt.size(); ++j) e = std::max(e, std::fabs(back[j] - x[j]));
    errs[t] = e;
  }
  CHECK(errs[0] / errs[1] >= 3.5);
}

TEST_CASE("norms and the embedding chain") {
  const PeriodicGrid g(256);
  const Norms nc = norms(sampled(g, [](double) { return 1.0; }));
  CHECK(nc.l2 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(nc.sup == 1.0);
  CHECK(nc.h1semi == 0.0);

  const double a = 0.7;
  const Norms na = norms(sampled(g, [a](double p) { return a * std::cos(kTau * p); }));
  CHECK(na.l2 == doctest::Approx(a / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(na.h1semi == doctest::Approx(std::sqrt(2.0) * M_PI * a).epsilon(1e-3));

  std::mt19937 rng(61);
  for (int rep = 0; rep < 100; ++rep) {
    const Norms n = norms(random_smooth(g, rng));
    CHECK(n.l2 <= n.sup);
    CHECK(n.sup <= n.h1semi + 1e-8);
  }
}

TEST_CASE("unimodal-even membership") {
  const PeriodicGrid g(128);
  const double tol = 1e-12;
  CHECK(is_unimodal_even(sampled(g, [](double p) { return std::cos(kTau * p); }), tol));
  CHECK_FALSE(
      is_unimodal_even(sampled(g, [](double p) { return std::sin(kTau * p); }), tol));
  CHECK_FALSE(is_unimodal_even(
      sampled(g, [](double p) { return std::cos(2.0 * kTau * p); }), tol));
}

TEST_CASE("operators preserve the reflection symmetry sample-exactly") {
  const PeriodicGrid g(192);
  const WaveNumber k = WaveNumber::aligned(0.125, g);
  std::mt19937 rng(67);
  for (int rep = 0; rep < 20; ++rep) {
    const Profile even = random_smooth(g, rng, 6, /*even_only=*/true);
    REQUIRE(evenness_defect(even) == 0.0);
    CHECK(evenness_defect(laplacian_k(even, k)) == 0.0);
    CHECK(evenness_defect(averaging_k(even, k)) == 0.0);
    CHECK(oddness_defect(derivative(even)) == 0.0);
    CHECK(oddness_defect(nabla_k(even, k)) == 0.0);
    // cumulative re-centres by subtracting a rounded mean, so its symmetry
    // holds only to roundoff, not bit-exactly
    const double tol = 1e-15 * (1.0 + sup_norm(even));
    CHECK(oddness_defect(cumulative(even)) <= tol);
    CHECK(evenness_defect(cumulative(cumulative(even))) <= tol);
  }
}
