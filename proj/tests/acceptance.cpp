// Acceptance harness: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "faddeev/evolve.hpp"
#include "faddeev/transform.hpp"
#include "faddeev/verify.hpp"

using namespace faddeev;

namespace {

constexpr double kPi = std::numbers::pi;
int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int id, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("criterion %d %s %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

RunConfig acceptance_run(std::size_t n) {
  RunConfig c;
  c.n_cells = n;
  c.r_max = 40.0;
  c.cfl = 0.25;
  c.t_end = 20.0;
  c.initial.amplitude = 0.5;
  c.initial.center = 0.0;
  c.initial.width = 1.0;
  return c;
}

struct Captured {
  RunResult result;
  std::string csv;
  double max_drift = 0.0;
  ContinuationMonitor max_monitor{};
  bool finite = true;
};

Captured capture(const RunConfig& c) {
  Captured out;
  std::ostringstream os;
  write_diagnostics_header(os, default_spacetime_pairs());
  RunHooks hooks;
  hooks.on_record = [&os](const DiagnosticsRecord& r) { write_diagnostics_row(os, r); };
  out.result = run(c, hooks);
  out.csv = os.str();
  for (const auto& r : out.result.records) {
    out.finite = out.finite && std::isfinite(r.monitor.v) && std::isfinite(r.monitor.v_t) &&
                 std::isfinite(r.monitor.grad_v);
    out.max_drift = std::max(out.max_drift, r.energy_drift);
    out.max_monitor.v = std::max(out.max_monitor.v, r.monitor.v);
    out.max_monitor.v_t = std::max(out.max_monitor.v_t, r.monitor.v_t);
    out.max_monitor.grad_v = std::max(out.max_monitor.grad_v, r.monitor.grad_v);
  }
  return out;
}

void kernel_limits() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (double alpha : {0.5, 1.0, 2.0}) {
    KernelParams p;
    p.alpha = alpha;
    const double a2 = alpha * alpha;
    const double want[5] = {a2, 2.0 / 3.0, -a2 / 3.0, -a2, -2.0 * a2 / 3.0};
    for (int j = 0; j < 5; ++j) worst = std::max(worst, rel(eval_ftilde(j, 0.0, p), want[j]));
  }
  const double secs = seconds_since(t0);
  report(1, worst <= 1e-12 && secs < 1.0, fmt("max_rel_err=%.3e", worst) + fmt(" runtime_s=%.3f", secs));
}

void two_path_identity() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> val(-3.0, 3.0), rad(0.05, 0.45);
  const KernelParams p;
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double v = val(rng), v_t = val(rng), v_r = val(rng), r = rad(rng);
    const double f = eval_f_rhs(v, v_t, v_r, r, p);
    const double other = v / (r * r) + eval_n(r * v + kPi, r * v_t, v + r * v_r, r, p) / r;
    worst = std::max(worst, std::abs(f - other) / (1.0 + std::abs(f)));
  }
  const double secs = seconds_since(t0);
  report(2, worst <= 1e-9 && secs < 1.0, fmt("max_scaled_err=%.3e", worst) + fmt(" runtime_s=%.3f", secs));
}

void manufactured() {
  StudyOptions o;
  const StudyReport r = manufactured_study(ManufacturedSolution{}, o);
  report(4, r.final_order() >= 3.5 && r.monotone,
         fmt("order=%.3f", r.final_order()) + fmt(" finest_error=%.3e", r.levels.back().error));
}

void residuals() {
  StudyOptions o;
  const StudyReport v = v_residual_study(ManufacturedSolution{}, o);
  RunConfig c;
  c.n_cells = 64;
  c.r_max = 12.0;
  c.t_end = 1.0;
  c.initial.amplitude = 0.3;
  const PhiResidualStudies ph = phi_residual_studies(c, 3);
  // Order-2 targets are read with the Richardson band: >= 2 - 0.3.
  const bool pass = v.final_order() >= 3.5 && ph.phi.final_order() >= 1.7 && ph.phi_t.final_order() >= 1.7;
  report(5, pass,
         fmt("residual_v_order=%.3f", v.final_order()) + fmt(" residual_phi_order=%.3f", ph.phi.final_order()) +
             fmt(" residual_phi_t_order=%.3f", ph.phi_t.final_order()));
}

void phi_t_identity() {
  RunConfig c;
  c.n_cells = 256;
  c.r_max = 16.0;
  c.initial.amplitude = 0.3;
  const StudyReport r = phi_t_identity_study(c, 1.0, 0.2, 3);
  report(6, std::abs(r.final_order() - 2.0) <= 0.3, fmt("order=%.3f", r.final_order()));
}

void far_field() {
  const double phi10 = phi_large_branch(0.0, 10.0, KernelParams{});
  const double err = rel(phi10, -kPi * 1e-3);
  report(7, err <= 0.02, fmt("phi10=%.10e", phi10) + fmt(" rel_err=%.4f", err));
}

}  // namespace

int main() {
  kernel_limits();
  two_path_identity();

  // Criteria 3, 8 and 9 share the reference run.
  const auto t0 = std::chrono::steady_clock::now();
  const Captured ref = capture(acceptance_run(2048));
  const double ref_secs = seconds_since(t0);
  RunConfig fine = acceptance_run(4096);
  fine.diag_phi = false;
  const Captured fine_run = capture(fine);
  RunConfig finest = acceptance_run(8192);
  finest.diag_phi = false;
  const Captured finest_run = capture(finest);
  const bool completed = ref.result.status == RunStatus::completed &&
                         fine_run.result.status == RunStatus::completed &&
                         finest_run.result.status == RunStatus::completed;
  const double fit = std::log(ref.max_drift / finest_run.max_drift) / std::log(4.0);
  report(3, completed && ref.max_drift <= 1e-6 && fit >= 3.5 - 0.3,
         fmt("drift_n2048=%.3e", ref.max_drift) + fmt(" drift_n4096=%.3e", fine_run.max_drift) +
             fmt(" drift_n8192=%.3e", finest_run.max_drift) + fmt(" order_fit=%.3f", fit) +
             fmt(" runtime_s=%.1f", ref_secs));

  manufactured();
  residuals();
  phi_t_identity();
  far_field();

  const double dv = rel(fine_run.max_monitor.v, ref.max_monitor.v);
  const double dvt = rel(fine_run.max_monitor.v_t, ref.max_monitor.v_t);
  const double dg = rel(fine_run.max_monitor.grad_v, ref.max_monitor.grad_v);
  report(8, ref.finite && fine_run.finite && std::max({dv, dvt, dg}) <= 0.05,
         fmt("max_v=%.4f", ref.max_monitor.v) + fmt(" max_vt=%.4f", ref.max_monitor.v_t) +
             fmt(" max_gradv=%.4f", ref.max_monitor.grad_v) + fmt(" rel_diff_v=%.4f", dv) +
             fmt(" rel_diff_vt=%.4f", dvt) + fmt(" rel_diff_gradv=%.4f", dg));

  const Captured again = capture(acceptance_run(2048));
  report(9, !ref.csv.empty() && again.csv == ref.csv,
         "bytes=" + std::to_string(ref.csv.size()) + " identical=" + (again.csv == ref.csv ? "yes" : "no"));

  std::printf("acceptance %s failures=%d\n", failures == 0 ? "PASS" : "FAIL", failures);
  return failures == 0 ? 0 : 1;
}
