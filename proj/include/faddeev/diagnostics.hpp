/// @file diagnostics.hpp
/// @brief Scalar observables: energy, continuation monitors, decay ratios,
///        discrete Y_s and L^p_t L^q_x norms.
///
/// The energy is (1/2) int [A1 (u_t^2 + u_r^2) + r^-2 sin^2 u] r dr with no
/// angular prefactor. Norms on the 4D picture use the measure r^3 dr.

#pragma once

#include <cmath>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "faddeev/grid.hpp"
#include "faddeev/kernels.hpp"

namespace faddeev {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct EnergyValue {
  double value = 0.0;
  double tail = 0.0;  ///< estimated contribution beyond r_max assuming r^-3 decay
};

/// Energy of u-data (Parity::none field, u(0) = pi). Throws std::domain_error
/// on a non-finite integrand.
double energy(const FieldState& u, const KernelParams& p);

/// Same functional evaluated in the v chart, which is what runs use.
EnergyValue energy_from_v(const FieldState& v, const KernelParams& p);

struct ContinuationMonitor {
  double v = 0.0;       ///< sup <r> |v|
  double v_t = 0.0;     ///< sup <r> |v_t|
  double grad_v = 0.0;  ///< sup <r> |v_r|
};

ContinuationMonitor continuation_monitor(const FieldState& v);

inline double japanese_bracket(double r) { return std::sqrt(1.0 + r * r); }

/// Ratios sup_{r>=1} |f| r^{3/2} and sup_{r<=1} |f| r^{max(0, 2-s)}.
/// Reported only; nothing is asserted against them.
struct DecayReport {
  double outer = 0.0;
  double inner = 0.0;
};

DecayReport decay_report(const RadialField& f, int s_proxy);

/// (int |f|^q r^{dim-1} dr)^{1/q}; q = inf gives the grid supremum.
double lq_norm(const RadialField& f, double q);

/// sup_k sum_{j<=s} ||d_t^j w(t_k)||_{H^{s-j}} over uniformly spaced samples,
/// centered differences in time. s in 0..2, needs >= 2s+1 samples.
double ys_norm(const std::vector<RadialField>& samples, double dt, int s);

/// Discrete L^p_t L^q_x norm over uniformly spaced samples (trapezoid in t;
/// p = inf gives the max over samples).
double spacetime_norm(const std::vector<RadialField>& samples, double dt, double p, double q);

struct SpacetimePair {
  double p;
  double q;
};

/// Default tracked pairs: (2, 8), (4, 16/3), (inf, 4), (inf, 2).
std::vector<SpacetimePair> default_spacetime_pairs();

/// Running L^p_t L^q_x accumulator for samples that arrive one at a time.
class SpacetimeTracker {
 public:
  explicit SpacetimeTracker(std::vector<SpacetimePair> pairs = default_spacetime_pairs());

  void add(double time, const RadialField& f);
  [[nodiscard]] std::vector<double> values() const;
  [[nodiscard]] const std::vector<SpacetimePair>& pairs() const { return pairs_; }

 private:
  std::vector<SpacetimePair> pairs_;
  std::vector<double> accum_;
  std::vector<double> last_;
  double last_time_ = 0.0;
  bool have_last_ = false;
};

struct DiagnosticsRecord {
  double time = 0.0;
  std::size_t step = 0;
  double energy = 0.0;
  double energy_drift = 0.0;
  double energy_tail = 0.0;
  ContinuationMonitor monitor{};
  std::vector<double> sobolev;  ///< s = 1..4 of v
  DecayReport decay_v{};
  DecayReport decay_phi{};      ///< NaN when Phi diagnostics are disabled
  std::vector<double> spacetime;  ///< Phi_t, ordered as the tracker's pairs
};

struct DiagnosticsOptions {
  bool phi = true;
  int decay_s = 4;
};

/// Builds one record. `energy0` is the reference energy for the drift
/// (pass NaN on the first sample to use the current energy).
DiagnosticsRecord make_record(const FieldState& v, std::size_t step, const KernelParams& p, double energy0,
                              SpacetimeTracker& tracker, const DiagnosticsOptions& opts);

/// Column manifest of the diagnostics CSV.
std::vector<std::string> diagnostics_columns(const std::vector<SpacetimePair>& pairs);
void write_diagnostics_header(std::ostream& os, const std::vector<SpacetimePair>& pairs);
void write_diagnostics_row(std::ostream& os, const DiagnosticsRecord& rec);

}  // namespace faddeev
