/// @file transform.hpp
/// @brief The u <-> v <-> Phi change of variables and residual evaluators
///        for the wave equations satisfied by v, Phi and its time derivatives.
///
/// u lives on the 2D radial picture (u(0) = pi), v = (u - phi)/r and Phi on
/// the 4D one. All of them share one radial mesh.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "faddeev/grid.hpp"
#include "faddeev/kernels.hpp"

namespace faddeev {

/// Converts u-data to v-data. v(0) is filled by even-parity extrapolation
/// (degree 4 in r). Throws std::domain_error when |u(0) - pi| > 1e-10.
FieldState u_to_v(const FieldState& u, const KernelParams& p);

/// u = r v + phi, u_t = r v_t; exact. The result carries Parity::none.
FieldState v_to_u(const FieldState& v, const KernelParams& p);

/// Value at the origin of an even field from nodes 1..3.
double even_extrapolate_origin(double f1, double f2, double f3);

/// Small-r form  int_0^v A4^{1/2}(y, r) dy  (valid for r <= 1/2).
double phi_small_branch(double v, double r, const KernelParams& p);
/// r^-1 int_pi^u A3^{1/2} dy + phi_{>1} r^-1 int_0^pi A3^{-3/2} dy, u = r v + phi; r > 0.
double phi_large_branch(double v, double r, const KernelParams& p);
/// int_0^v A4^{-3/2}(y, r) dy.
double a4_inverse_integral(double v, double r, const KernelParams& p);

/// Panel count used for the y-integrals over an interval of this length.
int y_panels(double length);

RadialField compute_phi(const FieldState& v, const KernelParams& p, Exec exec = Exec::parallel);

/// Phi_t = A1^{1/2} v_t, i.e. r^-1 A1^{1/2} u_t written without the 1/r.
RadialField compute_phi_t(const FieldState& v, const KernelParams& p, Exec exec = Exec::parallel);

/// Literal r^-1 A1^{1/2} u_t on u-data; origin by even extrapolation.
RadialField compute_phi_t_from_u(const FieldState& u, const KernelParams& p);

struct TransformBundle {
  FieldState u;
  FieldState v;
  RadialField phi;
  RadialField phi_t;
};

TransformBundle make_bundle(const FieldState& v, const KernelParams& p);

/// CSV `r,u,u_t,v,v_t,Phi,Phi_t`.
void write_bundle_csv(std::ostream& os, const TransformBundle& b);
void write_bundle_csv(const std::string& path, const TransformBundle& b);

/// Consecutive v-states spaced by dt; residuals are evaluated at the middle level.
struct TimeWindow {
  std::vector<FieldState> levels;
  double dt = 0.0;

  [[nodiscard]] std::size_t center() const { return levels.size() / 2; }
  [[nodiscard]] const RadialGrid& grid() const { return levels.front().f.grid(); }
};

/// v_tt - Lap4 v - F(v) nodewise.
RadialField residual_v_equation(const FieldState& v, const RadialField& v_tt, const KernelParams& p);

/// Box4 Phi - alpha^-2 (Phi - int_0^v A4^{-3/2} dy) on nodes with r < r_limit;
/// other nodes are zero. Requires 3 levels, alpha > 0 and r_limit <= 1/2
/// (std::invalid_argument otherwise).
RadialField residual_phi_wave(const TimeWindow& w, const KernelParams& p, double r_limit = 0.5);

/// Box4 Phi_t - alpha^-2 (1 - A1^-2) Phi_t at every node. Requires 3 levels.
RadialField residual_phi_t_wave(const TimeWindow& w, const KernelParams& p);

/// Box4 Phi_tt - alpha^-2 [2 A1^-3 dA1/dt Phi_t + (1 - A1^-2) Phi_tt]. Requires 5 levels.
RadialField residual_phi_tt_wave(const TimeWindow& w, const KernelParams& p);

/// Third-derivative analogue. Requires 7 levels.
RadialField residual_phi_ttt_wave(const TimeWindow& w, const KernelParams& p);

/// L2(r^3 dr) norm of f restricted to [r_from, r_to] (trapezoid on nodes).
double region_l2(const RadialField& f, double r_from, double r_to);

}  // namespace faddeev
