/// @file evolve.hpp
/// @brief Method-of-lines evolution of (v, v_t) for v_tt = Lap4 v + F(v)
///        on the 4D radial grid: RK4 in time, fourth-order stencils in r,
///        parity ghosts at the origin and a sponge layer at r_max.

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "faddeev/diagnostics.hpp"
#include "faddeev/grid.hpp"
#include "faddeev/kernels.hpp"
#include "faddeev/parallel.hpp"

namespace faddeev {

struct SpongeSpec {
  double start = -1.0;  ///< radius where damping begins; negative means 0.85 r_max
  double strength = 1.0;
};

struct InitialDataSpec {
  enum class Family { gaussian_v, profile_u };
  Family family = Family::gaussian_v;
  // v0 = amplitude * exp(-((r - center)/width)^2)
  double amplitude = 1e-3;
  double center = 0.0;
  double width = 1.0;
  // v1 = velocity_amplitude * exp(-((r - velocity_center)/velocity_width)^2)
  double velocity_amplitude = 0.0;
  double velocity_center = 0.0;
  double velocity_width = 1.0;
  std::string profile_path;  ///< CSV `r,u,u_t` for profile_u
};

struct RunConfig {
  std::size_t n_cells = 2048;
  double r_max = 40.0;
  double t_end = 20.0;
  double cfl = 0.25;
  double dt = 0.0;  ///< 0 means cfl * dr; an explicit dt must satisfy dt <= cfl * dr
  std::string integrator = "rk4";
  SpongeSpec sponge{};
  InitialDataSpec initial{};
  KernelParams kernels{};
  bool nonlinear = true;  ///< false drops F(v): the free 4D radial wave equation
  std::size_t diag_every = 16;
  std::size_t snapshot_every = 0;
  bool diag_phi = true;
  int decay_s = 4;
  double monitor_ceiling = 1e6;
  double drift_ceiling = 1e-2;
  Exec exec = Exec::parallel;

  /// Throws std::invalid_argument naming the offending key.
  void validate() const;
  [[nodiscard]] RadialGrid grid() const { return RadialGrid(n_cells, r_max, 4); }
  [[nodiscard]] double sponge_start() const { return sponge.start < 0.0 ? 0.85 * r_max : sponge.start; }
  /// Step size actually used: t_end split into an integer number of steps no
  /// larger than the requested dt.
  [[nodiscard]] double resolved_dt() const;
  [[nodiscard]] std::size_t step_count() const;
};

/// Per-node forcing g(t, r_i) added to the v_t equation.
using Forcing = std::function<void(double t, std::span<double> out)>;

struct EvolverOptions {
  double sponge_start = 0.0;
  double sponge_strength = 0.0;
  bool nonlinear = true;
  Forcing forcing;
  Exec exec = Exec::parallel;
};

class Evolver {
 public:
  Evolver(const RadialGrid& grid, const KernelParams& params, EvolverOptions options);

  /// Writes (v_t, Lap4 v + F(v) + g - sigma v_t) into (dv, dvt). Returns false
  /// if any output is non-finite.
  bool rhs(const FieldState& s, std::span<double> dv, std::span<double> dvt) const;

  struct StepResult {
    FieldState state;
    bool finite = true;
  };
  /// One classical RK4 step.
  [[nodiscard]] StepResult step(const FieldState& s, double dt) const;

  [[nodiscard]] const RadialGrid& grid() const { return grid_; }
  [[nodiscard]] const KernelParams& params() const { return params_; }
  [[nodiscard]] const std::vector<double>& sponge_profile() const { return sigma_; }
  [[nodiscard]] const std::vector<CutoffSample>& cutoffs() const { return cutoffs_; }
  [[nodiscard]] const EvolverOptions& options() const { return options_; }

 private:
  RadialGrid grid_;
  KernelParams params_;
  EvolverOptions options_;
  std::vector<CutoffSample> cutoffs_;
  std::vector<double> sigma_;
  mutable std::vector<double> forcing_;
};

/// sigma(r) = strength * ((r - start)/(r_max - start))^2 beyond start, else 0.
std::vector<double> sponge_profile(const RadialGrid& grid, double start, double strength);

/// Builds the initial v-state for a config (gaussian family or tabulated u).
FieldState make_initial_state(const RunConfig& config);

enum class BlowupStatus { none, nan, monitor_ceiling, energy_drift };

struct BlowupLimits {
  double monitor_ceiling = 1e6;
  double drift_ceiling = 1e-2;
};

/// Fires on NaN/Inf, on any continuation monitor >= ceiling, or on energy
/// drift above the breakdown threshold.
BlowupStatus detect_blowup(const DiagnosticsRecord& rec, const BlowupLimits& limits);

std::string to_string(BlowupStatus s);

enum class RunStatus { completed, blowup_nan, blowup_monitor, scheme_breakdown };

std::string to_string(RunStatus s);

struct RunHooks {
  std::function<void(const DiagnosticsRecord&)> on_record;
  std::function<void(std::size_t step, const FieldState&)> on_snapshot;
};

struct RunResult {
  RunStatus status = RunStatus::completed;
  std::string reason;
  FieldState final_state;
  std::vector<DiagnosticsRecord> records;
  std::vector<SpacetimePair> spacetime_pairs;
  std::size_t steps = 0;
  double dt = 0.0;
};

/// Advances to t_end or until detect_blowup fires. Deterministic for a fixed
/// config.
RunResult run(const RunConfig& config, const RunHooks& hooks = {});

/// Evolves an arbitrary state with a prepared evolver, `steps` steps of size dt.
FieldState advance(const Evolver& ev, FieldState s, double dt, std::size_t steps);

}  // namespace faddeev
