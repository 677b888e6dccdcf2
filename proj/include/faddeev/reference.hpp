/// @file reference.hpp
/// @brief Serial, unfused evaluation of the evolution right-hand side.
///
/// Kept as the yardstick for the fused OpenMP kernel in Evolver::rhs: it
/// assembles v_r and Lap4 v through the grid operators first and then applies
/// F node by node. Both paths must agree bit for bit.

#pragma once

#include <span>

#include "faddeev/evolve.hpp"

namespace faddeev::reference {

void rhs(const Evolver& ev, const FieldState& s, std::span<double> dv, std::span<double> dvt);

}  // namespace faddeev::reference
