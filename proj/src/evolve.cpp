#include "faddeev/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "faddeev/io.hpp"
#include "faddeev/stencil.hpp"
#include "faddeev/transform.hpp"

namespace faddeev {

void RunConfig::validate() const {
  auto fail = [](const std::string& key, const std::string& why) {
    throw std::invalid_argument(key + ": " + why);
  };
  if (n_cells < 6) fail("grid.n_cells", "must be >= 6");
  if (!(r_max > 0.0)) fail("grid.r_max", "must be > 0");
  if (!(t_end > 0.0)) fail("integrator.t_end", "must be > 0");
  if (!(cfl > 0.0) || cfl > 0.5) fail("integrator.cfl", "must lie in (0, 0.5]");
  if (integrator != "rk4") fail("integrator.kind", "only rk4 is supported");
  if (dt < 0.0) fail("integrator.dt", "must be >= 0");
  const double dr = r_max / static_cast<double>(n_cells);
  if (dt > cfl * dr * (1.0 + 1e-12))
    fail("integrator.dt", "violates the CFL bound dt <= cfl * dr = " + format_double(cfl * dr));
  if (sponge.start >= r_max) fail("sponge.start", "must be < r_max");
  if (sponge.strength < 0.0) fail("sponge.strength", "must be >= 0");
  if (!(initial.width > 0.0)) fail("initial_data.width", "must be > 0");
  if (!(initial.velocity_width > 0.0)) fail("initial_data.velocity_width", "must be > 0");
  if (initial.family == InitialDataSpec::Family::profile_u && initial.profile_path.empty())
    fail("initial_data.profile_path", "required for family profile_u");
  if (diag_every == 0) fail("diagnostics.every", "must be >= 1");
  if (monitor_ceiling < 0.0) fail("diagnostics.monitor_ceiling", "must be >= 0");
  if (!(drift_ceiling > 0.0)) fail("diagnostics.drift_ceiling", "must be > 0");
  kernels.validate();
}

double RunConfig::resolved_dt() const { return t_end / static_cast<double>(step_count()); }

std::size_t RunConfig::step_count() const {
  const double dr = r_max / static_cast<double>(n_cells);
  const double target = dt > 0.0 ? dt : cfl * dr;
  return static_cast<std::size_t>(std::max(1.0, std::ceil(t_end / target - 1e-9)));
}

std::vector<double> sponge_profile(const RadialGrid& grid, double start, double strength) {
  std::vector<double> sigma(grid.n_nodes(), 0.0);
  const double width = grid.r_max - start;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const double r = grid.r(i);
    if (r > start && width > 0.0) {
      const double x = (r - start) / width;
      sigma[i] = strength * x * x;
    }
  }
  return sigma;
}

Evolver::Evolver(const RadialGrid& grid, const KernelParams& params, EvolverOptions options)
    : grid_(grid), params_(params), options_(std::move(options)) {
  if (grid_.dim != 4) throw std::invalid_argument("Evolver: the lifted equation lives on the 4D grid");
  if (grid_.n_nodes() < 7) throw std::invalid_argument("Evolver: grid too small");
  cutoffs_.resize(grid_.n_nodes());
  for (std::size_t i = 0; i < cutoffs_.size(); ++i) cutoffs_[i] = sample_cutoffs(grid_.r(i), params_.cutoff);
  sigma_ = faddeev::sponge_profile(grid_, options_.sponge_start, options_.sponge_strength);
}

bool Evolver::rhs(const FieldState& s, std::span<double> dv, std::span<double> dvt) const {
  const std::vector<double> padded = s.f.with_ghosts();
  const double* g = padded.data() + grid_.ghost;
  const auto last = static_cast<std::ptrdiff_t>(grid_.n_cells);
  const double h = grid_.dr();
  const double inv12h = 1.0 / (12.0 * h);
  const double inv12h2 = 1.0 / (12.0 * h * h);
  std::vector<double> forcing;
  if (options_.forcing) {
    forcing.assign(grid_.n_nodes(), 0.0);
    options_.forcing(s.time, forcing);
  }
  const auto v = s.f.values();
  const auto vt = s.f_t.values();
  for_each_node(options_.exec, grid_.n_nodes(), [&](std::size_t i) {
    const auto ii = static_cast<std::ptrdiff_t>(i);
    const double v_r = i == 0 ? 0.0 : stencil::d1(g, ii, last, false, inv12h);
    double acc = stencil::laplacian_even(g, ii, last, grid_.dim, grid_.r(i), inv12h, inv12h2);
    if (options_.nonlinear) acc += eval_f_rhs(v[i], vt[i], v_r, cutoffs_[i], params_);
    if (!forcing.empty()) acc += forcing[i];
    acc -= sigma_[i] * vt[i];
    dv[i] = vt[i];
    dvt[i] = acc;
  });
  for (std::size_t i = 0; i < grid_.n_nodes(); ++i)
    if (!std::isfinite(dvt[i]) || !std::isfinite(dv[i])) return false;
  return true;
}

Evolver::StepResult Evolver::step(const FieldState& s, double dt) const {
  const std::size_t n = grid_.n_nodes();
  std::vector<double> k1v(n), k1t(n), k2v(n), k2t(n), k3v(n), k3t(n), k4v(n), k4t(n);
  bool finite = rhs(s, k1v, k1t);

  FieldState stage{RadialField(grid_, Parity::even), RadialField(grid_, Parity::even), s.time};
  auto make_stage = [&](const std::vector<double>& kv, const std::vector<double>& kt, double c) {
    auto f = stage.f.values();
    auto ft = stage.f_t.values();
    for_each_node(options_.exec, n, [&](std::size_t i) {
      f[i] = s.f[i] + c * kv[i];
      ft[i] = s.f_t[i] + c * kt[i];
    });
    stage.time = s.time + c;
  };
  make_stage(k1v, k1t, 0.5 * dt);
  finite = rhs(stage, k2v, k2t) && finite;
  make_stage(k2v, k2t, 0.5 * dt);
  finite = rhs(stage, k3v, k3t) && finite;
  make_stage(k3v, k3t, dt);
  finite = rhs(stage, k4v, k4t) && finite;

  StepResult out{{RadialField(grid_, Parity::even), RadialField(grid_, Parity::even), s.time + dt}, finite};
  auto f = out.state.f.values();
  auto ft = out.state.f_t.values();
  const double w = dt / 6.0;
  for_each_node(options_.exec, n, [&](std::size_t i) {
    f[i] = s.f[i] + w * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
    ft[i] = s.f_t[i] + w * (k1t[i] + 2.0 * k2t[i] + 2.0 * k3t[i] + k4t[i]);
  });
  for (std::size_t i = 0; i < n && out.finite; ++i)
    if (!std::isfinite(f[i]) || !std::isfinite(ft[i])) out.finite = false;
  return out;
}

FieldState advance(const Evolver& ev, FieldState s, double dt, std::size_t steps) {
  const double t0 = s.time;
  for (std::size_t k = 1; k <= steps; ++k) {
    auto res = ev.step(s, dt);
    if (!res.finite) throw std::runtime_error("advance: non-finite state at step " + std::to_string(k));
    s = std::move(res.state);
    s.time = t0 + static_cast<double>(k) * dt;
  }
  return s;
}

namespace {

// Four-point Lagrange interpolation of a tabulated column at x.
double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  const std::size_t n = xs.size();
  std::size_t hi = static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), x) - xs.begin());
  hi = std::clamp<std::size_t>(hi, 2, n - 2);
  const std::size_t lo = hi - 2;
  double acc = 0.0;
  for (std::size_t a = lo; a < lo + 4; ++a) {
    double w = 1.0;
    for (std::size_t b = lo; b < lo + 4; ++b)
      if (b != a) w *= (x - xs[b]) / (xs[a] - xs[b]);
    acc += w * ys[a];
  }
  return acc;
}

}  // namespace

FieldState make_initial_state(const RunConfig& config) {
  const RadialGrid grid = config.grid();
  const InitialDataSpec& d = config.initial;
  if (d.family == InitialDataSpec::Family::gaussian_v) {
    auto gauss = [](double a, double c, double w) {
      return [=](double r) {
        const double x = (r - c) / w;
        return a * std::exp(-x * x);
      };
    };
    return {RadialField::from_function(grid, Parity::even, gauss(d.amplitude, d.center, d.width)),
            RadialField::from_function(grid, Parity::even,
                                       gauss(d.velocity_amplitude, d.velocity_center, d.velocity_width)),
            0.0};
  }
  const CsvTable table = read_csv(d.profile_path);
  const auto& r = table.column("r");
  const auto& u = table.column("u");
  const auto& u_t = table.column("u_t");
  if (r.size() < 4) throw std::invalid_argument("initial_data.profile_path: need at least 4 rows");
  if (r.back() < grid.r_max * (1.0 - 1e-12))
    throw std::invalid_argument("initial_data.profile_path: table does not cover r_max");
  FieldState us{RadialField(grid, Parity::none), RadialField(grid, Parity::none), 0.0};
  for (std::size_t i = 0; i < grid.n_nodes(); ++i) {
    us.f[i] = interpolate(r, u, grid.r(i));
    us.f_t[i] = interpolate(r, u_t, grid.r(i));
  }
  return u_to_v(us, config.kernels);
}

BlowupStatus detect_blowup(const DiagnosticsRecord& rec, const BlowupLimits& limits) {
  const ContinuationMonitor& m = rec.monitor;
  if (!std::isfinite(m.v) || !std::isfinite(m.v_t) || !std::isfinite(m.grad_v) || !std::isfinite(rec.energy))
    return BlowupStatus::nan;
  if (std::max({m.v, m.v_t, m.grad_v}) >= limits.monitor_ceiling) return BlowupStatus::monitor_ceiling;
  if (rec.energy_drift > limits.drift_ceiling) return BlowupStatus::energy_drift;
  return BlowupStatus::none;
}

std::string to_string(BlowupStatus s) {
  switch (s) {
    case BlowupStatus::none: return "none";
    case BlowupStatus::nan: return "nan";
    case BlowupStatus::monitor_ceiling: return "monitor_ceiling";
    case BlowupStatus::energy_drift: return "energy_drift";
  }
  return "unknown";
}

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::completed: return "completed";
    case RunStatus::blowup_nan: return "blowup_nan";
    case RunStatus::blowup_monitor: return "blowup_monitor";
    case RunStatus::scheme_breakdown: return "scheme_breakdown";
  }
  return "unknown";
}

RunResult run(const RunConfig& config, const RunHooks& hooks) {
  config.validate();
  const RadialGrid grid = config.grid();
  EvolverOptions opts;
  opts.sponge_start = config.sponge_start();
  opts.sponge_strength = config.sponge.strength;
  opts.nonlinear = config.nonlinear;
  opts.exec = config.exec;
  const Evolver ev(grid, config.kernels, std::move(opts));

  RunResult result;
  result.dt = config.resolved_dt();
  const std::size_t n_steps = config.step_count();
  SpacetimeTracker tracker;
  result.spacetime_pairs = tracker.pairs();
  const DiagnosticsOptions dopts{config.diag_phi, config.decay_s};
  const BlowupLimits limits{config.monitor_ceiling, config.drift_ceiling};
  double energy0 = std::numeric_limits<double>::quiet_NaN();

  FieldState state = make_initial_state(config);

  auto sample = [&](std::size_t step) {
    DiagnosticsRecord rec = make_record(state, step, config.kernels, energy0, tracker, dopts);
    if (step == 0) energy0 = rec.energy;
    result.records.push_back(rec);
    if (hooks.on_record) hooks.on_record(rec);
    switch (detect_blowup(rec, limits)) {
      case BlowupStatus::none: return false;
      case BlowupStatus::nan: result.status = RunStatus::blowup_nan; break;
      case BlowupStatus::monitor_ceiling: result.status = RunStatus::blowup_monitor; break;
      case BlowupStatus::energy_drift: result.status = RunStatus::scheme_breakdown; break;
    }
    result.reason = "blowup " + to_string(detect_blowup(rec, limits)) + " at t=" + format_double(rec.time) +
                    " step=" + std::to_string(step);
    return true;
  };

  bool stop = sample(0);
  if (!stop && config.snapshot_every > 0 && hooks.on_snapshot) hooks.on_snapshot(0, state);
  for (std::size_t n = 1; n <= n_steps && !stop; ++n) {
    auto res = ev.step(state, result.dt);
    state = std::move(res.state);
    state.time = static_cast<double>(n) * result.dt;
    result.steps = n;
    if (!res.finite) {
      stop = sample(n);
      if (!stop) {
        result.status = RunStatus::blowup_nan;
        result.reason = "blowup nan at t=" + format_double(state.time) + " step=" + std::to_string(n);
        stop = true;
      }
      break;
    }
    if (n % config.diag_every == 0 || n == n_steps) stop = sample(n);
    if (config.snapshot_every > 0 && n % config.snapshot_every == 0 && hooks.on_snapshot) hooks.on_snapshot(n, state);
  }
  result.final_state = std::move(state);
  return result;
}

}  // namespace faddeev
