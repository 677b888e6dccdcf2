#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>

#include "faddeev/grid.hpp"

using namespace faddeev;

namespace {

double max_err(const RadialField& f, const std::function<double(double)>& exact, std::size_t from = 0,
               std::size_t to = 0) {
  double e = 0.0;
  const std::size_t end = to ? to : f.size();
  for (std::size_t i = from; i < end; ++i) e = std::max(e, std::abs(f[i] - exact(f.grid().r(i))));
  return e;
}

}  // namespace

TEST_CASE("grid nodes") {
  const RadialGrid g(64, 8.0, 4);
  CHECK(g.n_nodes() == 65);
  CHECK(g.r(0) == 0.0);
  CHECK(g.r(64) == 8.0);
  CHECK(g.dr() * 64 == 8.0);
  CHECK_THROWS_AS(RadialGrid(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(RadialGrid(8, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(RadialGrid(8, 1.0, 3), std::invalid_argument);
}

TEST_CASE("parity ghosts") {
  const RadialGrid g(16, 1.0);
  const auto even = RadialField::from_function(g, Parity::even, [](double r) { return 1.0 + r; });
  const auto odd = RadialField::from_function(g, Parity::odd, [](double r) { return 1.0 + r; });
  CHECK(odd[0] == 0.0);
  for (std::ptrdiff_t k = 1; k <= 3; ++k) {
    CHECK(even.at(-k) == even.at(k));
    CHECK(odd.at(-k) == -odd.at(k));
  }
  const RadialField none(g, Parity::none);
  CHECK_THROWS(none.at(-1));
  CHECK_THROWS_AS(RadialField(g, Parity::even, std::vector<double>(3)), std::invalid_argument);
}

TEST_CASE("d_r: polynomial exactness and constants") {
  const RadialGrid g(40, 2.0);
  const auto sq = RadialField::from_function(g, Parity::even, [](double r) { return r * r; });
  CHECK(max_err(d_r(sq, 1), [](double r) { return 2 * r; }) < 1e-12);
  CHECK(max_err(d_r(sq, 2), [](double) { return 2.0; }) < 1e-10);
  const auto c = RadialField::from_function(g, Parity::even, [](double) { return 3.0; });
  const RadialField dc = d_r(c, 1);
  for (double x : dc.values()) CHECK(x == 0.0);
  CHECK_THROWS_AS(d_r(sq, 3), std::invalid_argument);
  CHECK_THROWS_AS(d_r(RadialField(RadialGrid(4, 1.0), Parity::even), 1), std::invalid_argument);
}

TEST_CASE("d_r of sin r (odd) converges at fourth order") {
  std::vector<double> err;
  for (std::size_t n : {32, 64, 128}) {
    const RadialGrid g(n, 3.0);
    const auto f = RadialField::from_function(g, Parity::odd, [](double r) { return std::sin(r); });
    err.push_back(max_err(d_r(f, 1), [](double r) { return std::cos(r); }));
  }
  for (std::size_t k = 1; k < err.size(); ++k) CHECK(std::log2(err[k - 1] / err[k]) == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("parity none uses one-sided origin stencils") {
  const RadialGrid g(64, 2.0);
  const auto f = RadialField::from_function(g, Parity::none, [](double r) { return std::exp(r); });
  CHECK(max_err(d_r(f, 1), [](double r) { return std::exp(r); }) < 1e-5);
}

TEST_CASE("laplacian of r^2 and of a Gaussian") {
  const RadialGrid g4(64, 4.0, 4), g2(64, 4.0, 2);
  const auto sq4 = RadialField::from_function(g4, Parity::even, [](double r) { return r * r; });
  const auto sq2 = RadialField::from_function(g2, Parity::even, [](double r) { return r * r; });
  CHECK(max_err(laplacian(sq4), [](double) { return 8.0; }) < 1e-9);
  CHECK(max_err(laplacian(sq2), [](double) { return 4.0; }) < 1e-9);
  std::vector<double> err;
  for (std::size_t n : {64, 128, 256}) {
    const RadialGrid g(n, 8.0, 4);
    const auto f = RadialField::from_function(g, Parity::even, [](double r) { return std::exp(-r * r); });
    err.push_back(max_err(laplacian(f), [](double r) { return (4 * r * r - 8) * std::exp(-r * r); }));
  }
  CHECK(err.back() < 2e-5);
  CHECK(std::log2(err[1] / err[2]) > 3.7);
  CHECK_THROWS_AS(laplacian(RadialField(g4, Parity::odd)), std::invalid_argument);
}

TEST_CASE("radial Simpson quadrature") {
  const RadialGrid g1(200, 1.0, 2);
  CHECK(integrate_radial(RadialField::from_function(g1, Parity::even, [](double) { return 1.0; }), 1) ==
        doctest::Approx(0.5).epsilon(1e-10));
  // Simpson's end correction h^4 f'''(0)/180 is ~1e-11 at the reference spacing.
  for (std::size_t n : {2048, 2049}) {
    const RadialGrid g(n, 8.0, 4);
    const auto f = RadialField::from_function(g, Parity::even, [](double r) { return std::exp(-r * r); });
    CHECK(std::abs(integrate_radial(f, 1) - 0.5) < 1e-10);
    CHECK(std::abs(integrate_radial(f, 3) - 0.5) < 1e-10);
  }
}

TEST_CASE("Sobolev norms") {
  const RadialGrid g(512, 8.0, 4);
  CHECK(sobolev_norm(RadialField(g, Parity::even), 3) == 0.0);
  const auto f = RadialField::from_function(g, Parity::even, [](double r) { return std::exp(-r * r); });
  CHECK(sobolev_norm(f, 0) == l2_norm(f));
  // int r^3 e^{-2r^2} = 1/8, int 4 r^5 e^{-2r^2} = 1/2.
  CHECK(sobolev_norm(f, 1) == doctest::Approx(std::sqrt(5.0 / 8.0)).epsilon(1e-6));
  CHECK(sobolev_norm(f, 4) > sobolev_norm(f, 3));
  CHECK(sobolev_norm(f, 3) > sobolev_norm(f, 2));
  CHECK_THROWS_AS(sobolev_norm(f, 5), std::invalid_argument);
}

TEST_CASE("Gauss-Legendre panels") {
  CHECK(quadrature_1d([](double) { return 1e300; }, 0.0, 0.0, 8) == 0.0);
  CHECK(quadrature_1d([](double y) { return y; }, 0.0, 1.0, 1) == doctest::Approx(0.5).epsilon(1e-16));
  auto a3 = [](double y) { return std::pow(1.0 + std::sin(y) * std::sin(y) / 4.0, -1.5); };
  const double coarse = quadrature_1d(a3, 0.0, std::numbers::pi, 16);
  const double fine = quadrature_1d(a3, 0.0, std::numbers::pi, 32);
  CHECK(std::abs(coarse - fine) / fine <= 1e-12);
  CHECK_THROWS_AS(quadrature_1d([](double y) { return std::sqrt(y - 0.5); }, 0.0, 1.0, 2), std::domain_error);
}

TEST_CASE("field CSV round trip") {
  const RadialGrid g(50, 5.0, 4);
  const auto f = RadialField::from_function(g, Parity::even, [](double r) { return std::cos(r) / 3.0; });
  const auto path = (std::filesystem::temp_directory_path() / "faddeev_field_rt.csv").string();
  write_field_csv(path, f);
  const RadialField back = read_field_csv(path, Parity::even, 4);
  CHECK(back.grid() == g);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(back[i] == f[i]);
  std::remove(path.c_str());
}

TEST_CASE("serial and parallel operators agree bit for bit") {
  const RadialGrid g(1000, 10.0, 4);
  const auto f = RadialField::from_function(g, Parity::even, [](double r) { return std::exp(-r) * std::cos(r * r); });
  const auto a = laplacian(f, Exec::serial), b = laplacian(f, Exec::parallel);
  const auto c = d_r(f, 1, Exec::serial), d = d_r(f, 1, Exec::parallel);
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(a[i] == b[i]);
    CHECK(c[i] == d[i]);
  }
}
