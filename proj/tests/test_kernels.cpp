#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "faddeev/kernels.hpp"
#include "faddeev/verify.hpp"

using namespace faddeev;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

KernelParams with_alpha(double a) {
  KernelParams p;
  p.alpha = a;
  return p;
}

}  // namespace

TEST_CASE("oracle leading coefficients are the hand-derived Taylor limits") {
  for (double a : {0.3, 1.0, 2.5}) {
    const double a2 = a * a;
    CHECK(rel(kernel_series_oracle(0, 0.0, a), a2) < 1e-15);
    CHECK(rel(kernel_series_oracle(1, 0.0, a), 2.0 / 3.0) < 1e-15);
    CHECK(rel(kernel_series_oracle(2, 0.0, a), -a2 / 3.0) < 1e-15);
    CHECK(rel(kernel_series_oracle(3, 0.0, a), -a2) < 1e-15);
    CHECK(rel(kernel_series_oracle(4, 0.0, a), -2.0 * a2 / 3.0) < 1e-15);
  }
}

TEST_CASE("kernel limits at x = 0") {
  for (double a : {0.0, 0.5, 1.0, 3.0}) {
    const KernelParams p = with_alpha(a);
    for (int j = 0; j < 5; ++j) {
      const double want = kernel_series_oracle(j, 0.0, a);
      if (want == 0.0) CHECK(eval_ftilde(j, 0.0, p) == 0.0);
      else CHECK(rel(eval_ftilde(j, 0.0, p), want) <= 1e-12);
    }
  }
}

TEST_CASE("series and direct branches agree across the switchover") {
  const KernelParams p = with_alpha(1.3);
  for (double x : {0.5 * p.x_switch, p.x_switch, 2.0 * p.x_switch}) {
    const auto s = eval_ftilde_series(x, p);
    const auto d = eval_ftilde_direct(x, p);
    for (std::size_t j = 0; j < 5; ++j) CHECK(rel(s[j], d[j]) <= 1e-12);
  }
  for (int j = 0; j < 5; ++j) {
    const double below = eval_ftilde(j, std::nextafter(p.x_switch, 0.0), p);
    const double above = eval_ftilde(j, p.x_switch, p);
    CHECK(rel(below, above) <= 1e-12);
  }
}

TEST_CASE("compensated oracle matches direct evaluation on [1e-2, 1]") {
  const KernelParams p = with_alpha(0.7);
  for (int k = 0; k <= 100; ++k) {
    const double x = 1e-2 * std::pow(100.0, k / 100.0);
    const auto d = eval_ftilde_direct(x, p);
    for (int j = 0; j < 5; ++j) CHECK(rel(kernel_series_oracle(j, x, 0.7), d[static_cast<std::size_t>(j)]) <= 1e-12);
  }
}

TEST_CASE("kernels are even in x and F4 = 2 F2") {
  const KernelParams p;
  for (double x : {1e-4, 0.03, 0.8, 2.0, 7.0}) {
    const auto f = eval_ftilde_all(x, p);
    const auto g = eval_ftilde_all(-x, p);
    for (std::size_t j = 0; j < 5; ++j) CHECK(f[j] == doctest::Approx(g[j]).epsilon(1e-15));
    CHECK(f[4] == doctest::Approx(2.0 * f[2]).epsilon(1e-15));
  }
}

TEST_CASE("kernel index and parameter validation") {
  const KernelParams p;
  CHECK_THROWS_AS(eval_ftilde(5, 0.1, p), std::invalid_argument);
  CHECK_THROWS_AS(eval_ftilde(-1, 0.1, p), std::invalid_argument);
  KernelParams bad;
  bad.alpha = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = {};
  bad.x_switch = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = {};
  bad.cutoff.order = 6;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = {};
  bad.series_terms = 2;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_NOTHROW(KernelParams{}.validate());
}

TEST_CASE("cutoff plateaus and partition of unity") {
  for (double r : {0.0, 0.3, 0.5, 1.0}) CHECK(eval_cutoff(CutoffKind::phi, r, 0) == kPi);
  for (double r : {2.0, 2.5, 10.0}) CHECK(eval_cutoff(CutoffKind::phi, r, 0) == 0.0);
  for (double r : {0.0, 0.25, 0.5}) CHECK(eval_cutoff(CutoffKind::lower, r, 0) == 1.0);
  for (double r : {1.0, 3.0}) CHECK(eval_cutoff(CutoffKind::lower, r, 0) == 0.0);
  for (double r = 0.0; r < 3.0; r += 0.037)
    CHECK(eval_cutoff(CutoffKind::lower, r, 0) + eval_cutoff(CutoffKind::upper, r, 0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(eval_cutoff(CutoffKind::phi, 1.5, 3), std::invalid_argument);
}

TEST_CASE("cutoff derivatives match central differences and phi is monotone") {
  const double h = 1e-5;
  for (auto kind : {CutoffKind::phi, CutoffKind::lower, CutoffKind::upper}) {
    for (double r = 0.1; r < 2.9; r += 0.0731) {
      const double fd1 = (eval_cutoff(kind, r + h, 0) - eval_cutoff(kind, r - h, 0)) / (2 * h);
      const double fd2 =
          (eval_cutoff(kind, r + h, 1) - eval_cutoff(kind, r - h, 1)) / (2 * h);
      CHECK(eval_cutoff(kind, r, 1) == doctest::Approx(fd1).epsilon(1e-7).scale(1.0));
      CHECK(eval_cutoff(kind, r, 2) == doctest::Approx(fd2).epsilon(1e-6).scale(1.0));
    }
  }
  double prev = kPi;
  for (double r = 0.0; r < 3.0; r += 0.01) {
    const double v = eval_cutoff(CutoffKind::phi, r, 0);
    CHECK(v <= prev);
    prev = v;
  }
}

TEST_CASE("laplacian_phi in 2D and 4D") {
  for (double r : {1.1, 1.5, 1.9}) {
    const double d1 = eval_cutoff(CutoffKind::phi, r, 1);
    const double d2 = eval_cutoff(CutoffKind::phi, r, 2);
    CHECK(laplacian_phi(r, 2) == doctest::Approx(d2 + d1 / r));
    CHECK(laplacian_phi(r, 4) == doctest::Approx(d2 + 3.0 * d1 / r));
  }
  CHECK(laplacian_phi(0.5, 4) == 0.0);
  CHECK(laplacian_phi(2.5, 2) == 0.0);
}

TEST_CASE("A coefficients") {
  const KernelParams p = with_alpha(1.4);
  CHECK(eval_a4(0.7, 0.0, p) == doctest::Approx(1.0 + 1.96 * 0.49));
  for (double r : {0.2, 0.9, 1.3, 1.8, 3.0}) {
    const CutoffSample c = sample_cutoffs(r);
    for (double v : {-2.0, -0.1, 0.0, 0.6, 1.7}) {
      const double u = r * v + c.phi;
      CHECK(a1_from_v(v, c, p) == doctest::Approx(eval_a1(u, r, p)).epsilon(1e-13));
      CHECK(eval_a5(v, r, p) == doctest::Approx(eval_a1(u, r, p)).epsilon(1e-13));
      CHECK(eval_a1(u, r, p) >= 1.0);
      if (r <= 1.0) CHECK(eval_a4(v, r, p) == doctest::Approx(eval_a3(u, r, p)).epsilon(1e-13));
      const double h = 1e-6;
      const double vt = 0.8;
      const double fd = (a1_from_v(v + h * vt, c, p) - a1_from_v(v - h * vt, c, p)) / (2 * h);
      CHECK(da1_dt_from_v(v, vt, c, p) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
    }
  }
  CHECK_THROWS_AS(eval_a1(1.0, 0.0, p), std::invalid_argument);
  CHECK_THROWS_AS(eval_n(1.0, 0.0, 0.0, 0.0, p), std::invalid_argument);
}

TEST_CASE("two-path nonlinearity identity on 0.05 <= r <= 0.45") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> val(-3.0, 3.0), rad(0.05, 0.45);
  for (double a : {0.5, 1.0, 2.0}) {
    const KernelParams p = with_alpha(a);
    for (int k = 0; k < 1000; ++k) {
      const double v = val(rng), vt = val(rng), vr = val(rng), r = rad(rng);
      const double f = eval_f_rhs(v, vt, vr, r, p);
      const double other = v / (r * r) + eval_n(r * v + kPi, r * vt, v + r * vr, r, p) / r;
      CHECK(std::abs(f - other) <= 1e-9 * (1.0 + std::abs(f)));
    }
  }
}

TEST_CASE("F(0) vanishes off the support of the phi Laplacian") {
  const KernelParams p;
  // sin(pi) rounds to ~1e-16 where phi = pi and the N-branch is active.
  for (double r : {0.0, 0.3, 0.7, 1.0, 2.0, 2.5, 10.0}) CHECK(std::abs(eval_f_rhs(0.0, 0.0, 0.0, r, p)) <= 1e-15);
  CHECK(eval_f_rhs(0.0, 0.0, 0.0, 1.5, p) != 0.0);
}

TEST_CASE("sum form and blended F agree wherever phi = pi") {
  const KernelParams p;
  for (int k = 0; k <= 55; ++k) {
    const double r = 0.45 + 0.01 * k;
    const double f_sum = eval_f_sum(0.4, -0.2, 0.3, r, p);
    const double f = eval_f_rhs(0.4, -0.2, 0.3, r, p);
    CHECK(f == doctest::Approx(f_sum).epsilon(1e-10));
  }
}
