/// @file kernels.hpp
/// @brief Pointwise analytic objects of the equivariant Faddeev model.
///
/// Conventions: the azimuthal angle u takes the value pi at the origin and
/// decays to 0 at infinity. The lifted unknown is v = (u - phi) / r on the
/// 4D radial grid, so that the semilinear equation reads  v_tt - Lap4 v = F(v).
///
/// Every function here is pure and may be called concurrently.

#pragma once

#include <array>
#include <cmath>
#include <numbers>

namespace faddeev {

/// Smoothstep cutoff shape. `order` is the polynomial degree 2N+1 of the
/// transition; the transition is C^N at both plateaus.
struct CutoffProfile {
  int order = 7;
};

struct KernelParams {
  double alpha = 1.0;      ///< coupling constant (length)
  double x_switch = 1e-2;  ///< below |x| < x_switch the Taylor branch is used
  int series_terms = 8;
  CutoffProfile cutoff{};

  /// Throws std::invalid_argument on a violated invariant.
  void validate() const;
};

// ---------------------------------------------------------------------------
// Cutoffs
// ---------------------------------------------------------------------------

enum class CutoffKind { phi, lower, upper };

/// phi: pi on r<=1, 0 on r>=2.  lower: 1 on r<=1/2, 0 on r>=1.
/// upper = 1 - lower.  `derivative` in {0,1,2}, otherwise std::invalid_argument.
double eval_cutoff(CutoffKind which, double r, int derivative, const CutoffProfile& profile = {});

/// Radial Laplacian phi'' + (dim-1) r^{-1} phi' of the phi cutoff (dim 2 or 4).
/// Identically zero outside [1, 2].
double laplacian_phi(double r, int dim, const CutoffProfile& profile = {});

/// Everything F(v) needs from the cutoffs at one radius. Cached per node by
/// the evolver.
struct CutoffSample {
  double r = 0.0;
  double phi = std::numbers::pi;
  double dphi = 0.0;
  double lap2_phi = 0.0;  ///< 2D radial Laplacian of phi
  double lower = 1.0;     ///< phi_{<1}
};

CutoffSample sample_cutoffs(double r, const CutoffProfile& profile = {});

// ---------------------------------------------------------------------------
// F-tilde kernels
// ---------------------------------------------------------------------------

/// F~_j(x) for j in 0..4, removable singularity at 0 resolved by series.
double eval_ftilde(int j, double x, const KernelParams& p);

/// All five kernels from a single sin/cos evaluation.
std::array<double, 5> eval_ftilde_all(double x, const KernelParams& p);

/// Direct closed forms (no series), evaluated in extended precision.
/// Undefined at x = 0. Exposed for the switchover tests.
std::array<double, 5> eval_ftilde_direct(double x, const KernelParams& p);

/// Truncated Taylor series about 0 with p.series_terms terms.
std::array<double, 5> eval_ftilde_series(double x, const KernelParams& p);

/// sin(x)/x with the series branch below x_switch.
double sinc(double x, const KernelParams& p);

// ---------------------------------------------------------------------------
// A-coefficients
// ---------------------------------------------------------------------------

/// A1 = 1 + alpha^2 r^-2 sin^2 u; requires r > 0.
double eval_a1(double u, double r, const KernelParams& p);
/// A3(y, r) = 1 + alpha^2 r^-2 sin^2 y; requires r > 0.
double eval_a3(double y, double r, const KernelParams& p);
/// A4(y, r) = 1 + alpha^2 r^-2 sin^2(r y); r = 0 gives 1 + alpha^2 y^2.
double eval_a4(double y, double r, const KernelParams& p);
/// A5(y, r) = 1 + alpha^2 r^-2 sin^2(r y + phi(r)); equals A4 where phi = pi.
double eval_a5(double y, double r, const KernelParams& p);
/// A1 expressed through v at any r >= 0 (A1 = A5(v, r)).
double a1_from_v(double v, const CutoffSample& c, const KernelParams& p);
/// d/dt A1 = alpha^2 r^-2 sin(2u) u_t, expressed through (v, v_t).
double da1_dt_from_v(double v, double v_t, const CutoffSample& c, const KernelParams& p);

// ---------------------------------------------------------------------------
// Nonlinearities
// ---------------------------------------------------------------------------

/// N(u) = -2 r^-1 (1 - A1^-1) u_r - r^-2 A1^-1 [alpha^2 (u_t^2 - u_r^2) + 1] sin u cos u.
/// Throws std::invalid_argument for r <= 0.
double eval_n(double u, double u_t, double u_r, double r, const KernelParams& p);

/// Small-r sum form  sum_j F~_j(rv) FFF_j(v) / (1 + F~_0(rv) v^2).
double eval_f_sum(double v, double v_t, double v_r, double r, const KernelParams& p);

/// Right-hand side F(v) with the cutoff blend of the semilinear equation.
double eval_f_rhs(double v, double v_t, double v_r, const CutoffSample& c, const KernelParams& p);
double eval_f_rhs(double v, double v_t, double v_r, double r, const KernelParams& p);

}  // namespace faddeev
