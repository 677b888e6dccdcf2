/// @file stencil.hpp
/// @brief Node-local fourth-order stencils shared by the grid operators and
///        the fused evolution kernel, so both produce identical bits.
///
/// `g` points at node 0 of a ghost-padded array (valid for g[-3]..g[n]).
/// Nodes n-1 and n use one-sided stencils; parity `none` uses one-sided
/// stencils at nodes 0 and 1.

#pragma once

#include <cstddef>

namespace faddeev::stencil {

inline double d1(const double* g, std::ptrdiff_t i, std::ptrdiff_t last, bool one_sided_origin,
                 double inv12h) {
  if (i >= last - 1) {
    if (i == last) return (3 * g[i - 4] - 16 * g[i - 3] + 36 * g[i - 2] - 48 * g[i - 1] + 25 * g[i]) * inv12h;
    return (-g[i - 3] + 6 * g[i - 2] - 18 * g[i - 1] + 10 * g[i] + 3 * g[i + 1]) * inv12h;
  }
  if (one_sided_origin && i <= 1) {
    if (i == 0) return (-25 * g[0] + 48 * g[1] - 36 * g[2] + 16 * g[3] - 3 * g[4]) * inv12h;
    return (-3 * g[0] - 10 * g[1] + 18 * g[2] - 6 * g[3] + g[4]) * inv12h;
  }
  return (g[i - 2] - 8 * g[i - 1] + 8 * g[i + 1] - g[i + 2]) * inv12h;
}

inline double d2(const double* g, std::ptrdiff_t i, std::ptrdiff_t last, bool one_sided_origin,
                 double inv12h2) {
  if (i >= last - 1) {
    if (i == last)
      return (-10 * g[i - 5] + 61 * g[i - 4] - 156 * g[i - 3] + 214 * g[i - 2] - 154 * g[i - 1] + 45 * g[i]) *
             inv12h2;
    return (g[i - 4] - 6 * g[i - 3] + 14 * g[i - 2] - 4 * g[i - 1] - 15 * g[i] + 10 * g[i + 1]) * inv12h2;
  }
  if (one_sided_origin && i <= 1) {
    if (i == 0)
      return (45 * g[0] - 154 * g[1] + 214 * g[2] - 156 * g[3] + 61 * g[4] - 10 * g[5]) * inv12h2;
    return (10 * g[0] - 15 * g[1] - 4 * g[2] + 14 * g[3] - 6 * g[4] + g[5]) * inv12h2;
  }
  return (-g[i - 2] + 16 * g[i - 1] - 30 * g[i] + 16 * g[i + 1] - g[i + 2]) * inv12h2;
}

/// Radial Laplacian of an even field: origin uses the limit dim * f''(0).
inline double laplacian_even(const double* g, std::ptrdiff_t i, std::ptrdiff_t last, int dim, double r,
                             double inv12h, double inv12h2) {
  const double frr = d2(g, i, last, false, inv12h2);
  if (i == 0) return dim * frr;
  return frr + (dim - 1) / r * d1(g, i, last, false, inv12h);
}

}  // namespace faddeev::stencil
