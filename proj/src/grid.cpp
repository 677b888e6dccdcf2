#include "faddeev/grid.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "faddeev/io.hpp"
#include "faddeev/stencil.hpp"

namespace faddeev {

RadialGrid::RadialGrid(std::size_t n_cells_, double r_max_, int dim_)
    : n_cells(n_cells_), r_max(r_max_), dim(dim_) {
  if (n_cells == 0) throw std::invalid_argument("RadialGrid: n_cells must be positive");
  if (!(r_max > 0.0)) throw std::invalid_argument("RadialGrid: r_max must be positive");
  if (dim != 2 && dim != 4) throw std::invalid_argument("RadialGrid: dim must be 2 or 4");
}

std::vector<double> RadialGrid::nodes() const {
  std::vector<double> r(n_nodes());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = this->r(i);
  return r;
}

RadialField::RadialField(const RadialGrid& grid, Parity parity)
    : grid_(grid), parity_(parity), values_(grid.n_nodes(), 0.0) {}

RadialField::RadialField(const RadialGrid& grid, Parity parity, std::vector<double> values)
    : grid_(grid), parity_(parity), values_(std::move(values)) {
  if (values_.size() != grid_.n_nodes())
    throw std::invalid_argument("RadialField: value count does not match grid");
  enforce_parity();
}

RadialField RadialField::from_function(const RadialGrid& grid, Parity parity,
                                       const std::function<double(double)>& f) {
  RadialField out(grid, parity);
  for (std::size_t i = 0; i < out.size(); ++i) out.values_[i] = f(grid.r(i));
  out.enforce_parity();
  return out;
}

double RadialField::at(std::ptrdiff_t i) const {
  if (i >= 0) return values_[static_cast<std::size_t>(i)];
  const double mirrored = values_[static_cast<std::size_t>(-i)];
  switch (parity_) {
    case Parity::even: return mirrored;
    case Parity::odd: return -mirrored;
    case Parity::none: break;
  }
  throw std::logic_error("RadialField::at: ghost access on a field without parity");
}

std::vector<double> RadialField::with_ghosts() const {
  const auto ghost = static_cast<std::ptrdiff_t>(grid_.ghost);
  std::vector<double> out(values_.size() + static_cast<std::size_t>(ghost));
  for (std::ptrdiff_t k = 1; k <= ghost; ++k) {
    const double m = values_[static_cast<std::size_t>(k)];
    out[static_cast<std::size_t>(ghost - k)] = parity_ == Parity::odd ? -m : parity_ == Parity::even ? m : 0.0;
  }
  std::copy(values_.begin(), values_.end(), out.begin() + ghost);
  return out;
}

void RadialField::enforce_parity() {
  if (parity_ == Parity::odd && !values_.empty()) values_[0] = 0.0;
}

namespace {

void require_stencil_size(const RadialGrid& g) {
  if (g.n_nodes() < 7) throw std::invalid_argument("grid too small for fourth-order stencils (need >= 7 nodes)");
}

Parity derivative_parity(Parity p, int order) {
  if (p == Parity::none || order % 2 == 0) return p;
  return p == Parity::even ? Parity::odd : Parity::even;
}

}  // namespace

RadialField d_r(const RadialField& f, int order, Exec exec) {
  if (order != 1 && order != 2) throw std::invalid_argument("d_r: order must be 1 or 2");
  const RadialGrid& grid = f.grid();
  require_stencil_size(grid);
  const std::vector<double> padded = f.with_ghosts();
  const double* g = padded.data() + grid.ghost;
  const auto last = static_cast<std::ptrdiff_t>(grid.n_cells);
  const bool one_sided = f.parity() == Parity::none;
  const double h = grid.dr();
  const double inv12h = 1.0 / (12.0 * h);
  const double inv12h2 = 1.0 / (12.0 * h * h);
  RadialField out(grid, derivative_parity(f.parity(), order));
  auto vals = out.values();
  for_each_node(exec, grid.n_nodes(), [&](std::size_t i) {
    const auto ii = static_cast<std::ptrdiff_t>(i);
    vals[i] = order == 1 ? stencil::d1(g, ii, last, one_sided, inv12h) : stencil::d2(g, ii, last, one_sided, inv12h2);
  });
  out.enforce_parity();
  return out;
}

RadialField laplacian(const RadialField& f, Exec exec) {
  if (f.parity() != Parity::even) throw std::invalid_argument("laplacian: field must have even parity");
  const RadialGrid& grid = f.grid();
  require_stencil_size(grid);
  const std::vector<double> padded = f.with_ghosts();
  const double* g = padded.data() + grid.ghost;
  const auto last = static_cast<std::ptrdiff_t>(grid.n_cells);
  const double h = grid.dr();
  const double inv12h = 1.0 / (12.0 * h);
  const double inv12h2 = 1.0 / (12.0 * h * h);
  RadialField out(grid, Parity::even);
  auto vals = out.values();
  for_each_node(exec, grid.n_nodes(), [&](std::size_t i) {
    vals[i] = stencil::laplacian_even(g, static_cast<std::ptrdiff_t>(i), last, grid.dim, grid.r(i), inv12h, inv12h2);
  });
  return out;
}

double integrate_radial(std::span<const double> y, double h) {
  const std::size_t n = y.size() - 1;  // cells
  if (y.size() < 2) return 0.0;
  if (n == 1) return 0.5 * h * (y[0] + y[1]);
  if (n == 2) return h / 3.0 * (y[0] + 4.0 * y[1] + y[2]);
  const std::size_t simpson_cells = (n % 2 == 0) ? n : n - 3;
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 1; i < simpson_cells; i += 2) odd += y[i];
  for (std::size_t i = 2; i < simpson_cells; i += 2) even += y[i];
  double total = h / 3.0 * (y[0] + 4.0 * odd + 2.0 * even + y[simpson_cells]);
  if (simpson_cells != n) {
    const std::size_t k = simpson_cells;
    total += 3.0 * h / 8.0 * (y[k] + 3.0 * y[k + 1] + 3.0 * y[k + 2] + y[k + 3]);
  }
  return total;
}

double integrate_radial(const RadialField& f, int weight_power) {
  const RadialGrid& grid = f.grid();
  std::vector<double> y(f.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double r = grid.r(i);
    y[i] = f[i] * (weight_power == 0 ? 1.0 : std::pow(r, weight_power));
  }
  return integrate_radial(y, grid.dr());
}

double l2_norm(const RadialField& f) {
  RadialField sq(f.grid(), Parity::even);
  for (std::size_t i = 0; i < f.size(); ++i) sq[i] = f[i] * f[i];
  return std::sqrt(std::max(0.0, integrate_radial(sq, f.grid().dim - 1)));
}

double sobolev_norm(const RadialField& f, int s) {
  if (s < 0 || s > 4) throw std::invalid_argument("sobolev_norm: s must lie in 0..4");
  auto sq = [](double x) { return x * x; };
  double total = sq(l2_norm(f));
  if (s >= 1) total += sq(l2_norm(d_r(f, 1)));
  if (s >= 2) {
    const RadialField lap = laplacian(f);
    total += sq(l2_norm(lap));
    if (s >= 3) total += sq(l2_norm(d_r(lap, 1)));
    if (s >= 4) total += sq(l2_norm(laplacian(lap)));
  }
  return std::sqrt(total);
}

double quadrature_1d(const std::function<double(double)>& integrand, double lower, double upper, int panels) {
  if (panels < 1) throw std::invalid_argument("quadrature_1d: panels must be >= 1");
  return gauss_legendre(
      [&](double y) {
        const double value = integrand(y);
        if (!std::isfinite(value)) throw std::domain_error("quadrature_1d: non-finite integrand sample");
        return value;
      },
      lower, upper, panels);
}

void write_field_csv(std::ostream& os, const RadialField& f) {
  os << "r,value\n";
  for (std::size_t i = 0; i < f.size(); ++i) os << format_double(f.grid().r(i)) << ',' << format_double(f[i]) << '\n';
}

void write_field_csv(const std::string& path, const RadialField& f) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  write_field_csv(os, f);
}

RadialField read_field_csv(const std::string& path, Parity parity, int dim) {
  const CsvTable table = read_csv(path);
  const auto& r = table.column("r");
  const auto& value = table.column("value");
  if (r.size() < 2) throw std::runtime_error(path + ": need at least two rows");
  const RadialGrid grid(r.size() - 1, r.back(), dim);
  for (std::size_t i = 0; i < r.size(); ++i)
    if (std::abs(r[i] - grid.r(i)) > 1e-9 * grid.r_max)
      throw std::runtime_error(path + ": r column is not a uniform grid starting at 0");
  return RadialField(grid, parity, value);
}

}  // namespace faddeev
