/// @file parallel.hpp
/// @brief Execution policy for node-parallel kernels.
///
/// Loops are split statically over independent output nodes, so results do
/// not depend on the thread count. Reductions use fixed-size blocks combined
/// in index order.

#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace faddeev {

enum class Exec { serial, parallel };

template <class Body>
void for_each_node(Exec exec, std::size_t n, Body&& body) {
  const auto count = static_cast<std::ptrdiff_t>(n);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
  } else {
    for (std::ptrdiff_t i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
  }
}

inline constexpr std::size_t kReductionBlock = 256;

/// Sum of term(i) over [0, n), bit-identical for any thread count.
template <class Term>
double deterministic_sum(Exec exec, std::size_t n, Term&& term) {
  const std::size_t blocks = (n + kReductionBlock - 1) / kReductionBlock;
  std::vector<double> partial(blocks, 0.0);
  for_each_node(exec, blocks, [&](std::size_t b) {
    const std::size_t end = std::min(n, (b + 1) * kReductionBlock);
    double acc = 0.0;
    for (std::size_t i = b * kReductionBlock; i < end; ++i) acc += term(i);
    partial[b] = acc;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace faddeev
