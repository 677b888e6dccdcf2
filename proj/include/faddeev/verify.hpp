/// @file verify.hpp
/// @brief Manufactured solutions, forcing, Richardson studies and the check
///        suites behind `faddeev verify`.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "faddeev/evolve.hpp"
#include "faddeev/kernels.hpp"

namespace faddeev {

/// v(t, r) = a (1 + b sin(w t) r^2) exp(-r^2): even in r, Gaussian decay,
/// u = r v + phi keeps u(t, 0) = pi.
struct ManufacturedSolution {
  double a = 0.3;
  double b = 0.5;
  double omega = 1.0;

  [[nodiscard]] double v(double t, double r) const;
  [[nodiscard]] double v_t(double t, double r) const;
  [[nodiscard]] double v_tt(double t, double r) const;
  [[nodiscard]] double v_r(double t, double r) const;
  [[nodiscard]] double lap4(double t, double r) const;
  /// Exact v-state on a grid.
  [[nodiscard]] FieldState state(const RadialGrid& grid, double t) const;
  /// g = v_tt - Lap4 v - F(v), closed form in everything but F.
  [[nodiscard]] double forcing(double t, double r, const CutoffSample& c, const KernelParams& p) const;
};

/// Nodewise g(t, r_i) for the evolver. Throws std::domain_error on a
/// non-finite value.
Forcing make_forcing(const ManufacturedSolution& ms, const RadialGrid& grid, const KernelParams& p);

struct StudyLevel {
  std::size_t level = 0;
  double dr = 0.0;
  double error = 0.0;
  double order = 0.0;  ///< NaN on the first level
};

struct StudyReport {
  std::string observable;
  std::vector<StudyLevel> levels;
  bool monotone = true;  ///< false flags a bug or under-resolution

  /// Order measured between the two finest levels.
  [[nodiscard]] double final_order() const;
};

/// Orders log(e_k-1/e_k)/log(dr_k-1/dr_k) between successive levels.
StudyReport convergence_study(std::string observable, const std::vector<double>& drs,
                              const std::vector<double>& errors);

/// Columns observable,level,dr,error,order.
void write_study_header(std::ostream& os);
void write_study_rows(std::ostream& os, const StudyReport& r);

/// F~_j(x) from its Taylor series in x^2, summed in long double with Kahan
/// compensation (30 terms). At x = 0 it is the exact leading coefficient.
double kernel_series_oracle(int j, double x, double alpha);

struct StudyOptions {
  std::size_t n_cells = 64;  ///< coarsest level
  std::size_t levels = 3;
  double r_max = 6.0;
  double t_end = 1.0;
  double cfl = 0.25;
  KernelParams kernels{};
  Exec exec = Exec::parallel;
};

/// Forced run from exact data; L2(r^3 dr) error against the closed form at t_end.
StudyReport manufactured_study(const ManufacturedSolution& ms, const StudyOptions& o);

/// ||residual_v_equation(exact v, exact v_tt) - g|| at t_end on each level.
StudyReport v_residual_study(const ManufacturedSolution& ms, const StudyOptions& o);

/// Maximum relative energy drift of full runs at n_cells * 2^k.
StudyReport energy_drift_study(RunConfig base, std::size_t levels);

/// Linear free wave (nonlinear = false), self-convergence: errors are
/// differences between successive levels on the coarse nodes.
StudyReport free_wave_study(RunConfig base, std::size_t levels);

/// Residual norms of the Phi and Phi_t wave equations on evolved data. The
/// three-level time window is taken with the run's own step at t_end.
struct PhiResidualStudies {
  StudyReport phi;    ///< r < 1/2
  StudyReport phi_t;  ///< whole undamped domain
};
PhiResidualStudies phi_residual_studies(RunConfig base, std::size_t levels);

/// Centered difference of compute_phi over +-h against compute_phi_t, for
/// h = h0, h0/2, ... on one grid. `dr` of the report holds h.
StudyReport phi_t_identity_study(const RunConfig& base, double t0, double h0, std::size_t levels);

struct CheckRow {
  std::string suite;
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  bool pass = false;
};

/// One of kernels, transforms, convergence, energy. Throws
/// std::invalid_argument on an unknown suite. Studies behind the checks are
/// appended to `studies` when given.
std::vector<CheckRow> run_suite(const std::string& suite, Exec exec = Exec::parallel,
                                std::vector<StudyReport>* studies = nullptr);

void write_check_header(std::ostream& os);
void write_check_row(std::ostream& os, const CheckRow& row);

}  // namespace faddeev
