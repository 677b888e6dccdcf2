/// @file grid.hpp
/// @brief Uniform radial meshes, parity-aware fourth-order derivatives,
///        radial quadrature and discrete Sobolev norms.

#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "faddeev/parallel.hpp"

namespace faddeev {

/// Nodes r_i = i * dr for i = 0..n_cells.
struct RadialGrid {
  std::size_t n_cells = 0;
  double r_max = 0.0;
  int dim = 4;
  int ghost = 3;

  RadialGrid() = default;
  RadialGrid(std::size_t n_cells, double r_max, int dim = 4);

  [[nodiscard]] std::size_t n_nodes() const { return n_cells + 1; }
  [[nodiscard]] double dr() const { return r_max / static_cast<double>(n_cells); }
  [[nodiscard]] double r(std::size_t i) const { return static_cast<double>(i) * dr(); }
  [[nodiscard]] std::vector<double> nodes() const;

  bool operator==(const RadialGrid&) const = default;
};

/// Behaviour under r -> -r. `none` is for fields such as u whose origin
/// value is pinned (u - pi is odd); their origin derivatives are one-sided.
enum class Parity { even, odd, none };

class RadialField {
 public:
  RadialField() = default;
  RadialField(const RadialGrid& grid, Parity parity);
  RadialField(const RadialGrid& grid, Parity parity, std::vector<double> values);

  /// Samples f(r_i); odd fields get f(0) = 0 exactly.
  static RadialField from_function(const RadialGrid& grid, Parity parity,
                                   const std::function<double(double)>& f);

  [[nodiscard]] const RadialGrid& grid() const { return grid_; }
  [[nodiscard]] Parity parity() const { return parity_; }
  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] std::span<double> values() { return values_; }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  /// Value at signed node index, ghost-filled for i < 0 according to parity.
  [[nodiscard]] double at(std::ptrdiff_t i) const;

  /// Parity-filled copy with `grid().ghost` ghost nodes prepended.
  [[nodiscard]] std::vector<double> with_ghosts() const;

  /// Forces f(0) = 0 on odd fields; no-op otherwise.
  void enforce_parity();

 private:
  RadialGrid grid_{};
  Parity parity_ = Parity::even;
  std::vector<double> values_;
};

/// Cauchy data (f, f_t) at one time.
struct FieldState {
  RadialField f;
  RadialField f_t;
  double time = 0.0;
};

/// First or second radial derivative, fourth order everywhere. Throws
/// std::invalid_argument for grids with fewer than 7 nodes or order not in {1,2}.
RadialField d_r(const RadialField& f, int order, Exec exec = Exec::parallel);

/// f_rr + (dim-1) r^-1 f_r, with the origin replaced by dim * f_rr(0).
/// Throws std::invalid_argument unless f is even.
RadialField laplacian(const RadialField& f, Exec exec = Exec::parallel);

/// Composite Simpson of f(r) r^weight_power over [0, r_max] (3/8 rule on the
/// last three cells when n_cells is odd).
double integrate_radial(const RadialField& f, int weight_power);
double integrate_radial(std::span<const double> integrand, double dr);

/// ||f||_{L^2(r^{dim-1} dr)}.
double l2_norm(const RadialField& f);

/// Integer-order Sobolev norm via the Laplacian-power equivalent form,
/// s in 0..4; std::invalid_argument otherwise.
double sobolev_norm(const RadialField& f, int s);

/// Composite 5-point Gauss-Legendre over `panels` equal panels. Throws
/// std::domain_error on a non-finite integrand sample.
double quadrature_1d(const std::function<double(double)>& integrand, double lower, double upper,
                     int panels);

/// Same rule with a plain function pointer + context, for hot loops.
template <class F>
double gauss_legendre(F&& integrand, double lower, double upper, int panels);

/// CSV `r,value` with 17 significant digits.
void write_field_csv(std::ostream& os, const RadialField& f);
void write_field_csv(const std::string& path, const RadialField& f);
/// Reads a `r,value` CSV; the grid is inferred from the node column.
RadialField read_field_csv(const std::string& path, Parity parity, int dim = 4);

// ---------------------------------------------------------------------------

namespace detail {
inline constexpr double kGaussNodes[5] = {-0.9061798459386639927976269, -0.5384693101056830910363144,
                                          0.0, 0.5384693101056830910363144,
                                          0.9061798459386639927976269};
inline constexpr double kGaussWeights[5] = {0.2369268850561890875142640, 0.4786286704993664680412915,
                                            0.5688888888888888888888889, 0.4786286704993664680412915,
                                            0.2369268850561890875142640};
}  // namespace detail

template <class F>
double gauss_legendre(F&& integrand, double lower, double upper, int panels) {
  if (lower == upper) return 0.0;
  const double width = (upper - lower) / panels;
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double mid = lower + (k + 0.5) * width;
    double panel = 0.0;
    for (int q = 0; q < 5; ++q) panel += detail::kGaussWeights[q] * integrand(mid + 0.5 * width * detail::kGaussNodes[q]);
    total += panel;
  }
  return 0.5 * width * total;
}

}  // namespace faddeev
