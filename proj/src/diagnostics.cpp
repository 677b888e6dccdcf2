#include "faddeev/diagnostics.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "faddeev/io.hpp"
#include "faddeev/transform.hpp"

namespace faddeev {

namespace {

constexpr double kPi = std::numbers::pi;

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw std::domain_error(std::string("non-finite ") + what);
}

}  // namespace

double energy(const FieldState& u, const KernelParams& p) {
  const RadialGrid& grid = u.f.grid();
  const RadialField u_r = d_r(u.f, 1);
  std::vector<double> e(grid.n_nodes(), 0.0);
  for (std::size_t i = 1; i < e.size(); ++i) {
    const double r = grid.r(i);
    const double s = std::sin(u.f[i]);
    const double a1 = eval_a1(u.f[i], r, p);
    e[i] = 0.5 * (a1 * (u.f_t[i] * u.f_t[i] + u_r[i] * u_r[i]) + s * s / (r * r)) * r;
    require_finite(e[i], "energy integrand");
  }
  return integrate_radial(e, grid.dr());
}

EnergyValue energy_from_v(const FieldState& v, const KernelParams& p) {
  const RadialGrid& grid = v.f.grid();
  const RadialField v_r = d_r(v.f, 1);
  std::vector<double> e(grid.n_nodes(), 0.0);
  for (std::size_t i = 1; i < e.size(); ++i) {
    const double r = grid.r(i);
    const CutoffSample c = sample_cutoffs(r, p.cutoff);
    const double vv = v.f[i];
    double sin2_over_r2;
    if (c.phi == kPi) {
      const double sc = vv * sinc(r * vv, p);
      sin2_over_r2 = sc * sc;
    } else {
      const double s = std::sin(r * vv + c.phi);
      sin2_over_r2 = s * s / (r * r);
    }
    const double u_t = r * v.f_t[i];
    const double u_r = c.dphi + vv + r * v_r[i];
    e[i] = 0.5 * (a1_from_v(vv, c, p) * (u_t * u_t + u_r * u_r) + sin2_over_r2) * r;
    require_finite(e[i], "energy integrand");
  }
  return {integrate_radial(e, grid.dr()), 0.5 * e.back() * grid.r_max};
}

ContinuationMonitor continuation_monitor(const FieldState& v) {
  const RadialGrid& grid = v.f.grid();
  const RadialField v_r = d_r(v.f, 1);
  ContinuationMonitor m;
  for (std::size_t i = 0; i < grid.n_nodes(); ++i) {
    const double w = japanese_bracket(grid.r(i));
    m.v = std::max(m.v, w * std::abs(v.f[i]));
    m.v_t = std::max(m.v_t, w * std::abs(v.f_t[i]));
    m.grad_v = std::max(m.grad_v, w * std::abs(v_r[i]));
    if (!std::isfinite(v.f[i]) || !std::isfinite(v.f_t[i]) || !std::isfinite(v_r[i])) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      return {nan, nan, nan};
    }
  }
  return m;
}

DecayReport decay_report(const RadialField& f, int s_proxy) {
  const RadialGrid& grid = f.grid();
  const double inner_power = std::max(0.0, 2.0 - s_proxy);
  DecayReport d;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double r = grid.r(i);
    const double a = std::abs(f[i]);
    if (r >= 1.0) d.outer = std::max(d.outer, a * std::pow(r, 1.5));
    if (r <= 1.0) d.inner = std::max(d.inner, inner_power == 0.0 ? a : a * std::pow(r, inner_power));
  }
  return d;
}

double lq_norm(const RadialField& f, double q) {
  if (std::isinf(q)) {
    double m = 0.0;
    for (double x : f.values()) m = std::max(m, std::abs(x));
    return m;
  }
  if (q == 2.0) return l2_norm(f);
  RadialField g(f.grid(), Parity::even);
  for (std::size_t i = 0; i < f.size(); ++i) g[i] = std::pow(std::abs(f[i]), q);
  return std::pow(std::max(0.0, integrate_radial(g, f.grid().dim - 1)), 1.0 / q);
}

double ys_norm(const std::vector<RadialField>& samples, double dt, int s) {
  if (s < 0 || s > 2) throw std::invalid_argument("ys_norm: s must lie in 0..2");
  if (samples.size() < static_cast<std::size_t>(2 * s + 1))
    throw std::invalid_argument("ys_norm: needs at least 2s+1 snapshots");
  const std::size_t margin = s > 0 ? 1 : 0;
  double best = 0.0;
  for (std::size_t k = margin; k + margin < samples.size(); ++k) {
    double total = sobolev_norm(samples[k], s);
    if (s >= 1) {
      RadialField d1(samples[k].grid(), samples[k].parity());
      for (std::size_t i = 0; i < d1.size(); ++i) d1[i] = (samples[k + 1][i] - samples[k - 1][i]) / (2.0 * dt);
      total += sobolev_norm(d1, s - 1);
    }
    if (s >= 2) {
      RadialField d2(samples[k].grid(), samples[k].parity());
      for (std::size_t i = 0; i < d2.size(); ++i)
        d2[i] = (samples[k + 1][i] - 2.0 * samples[k][i] + samples[k - 1][i]) / (dt * dt);
      total += sobolev_norm(d2, 0);
    }
    best = std::max(best, total);
  }
  return best;
}

double spacetime_norm(const std::vector<RadialField>& samples, double dt, double p, double q) {
  if (samples.empty()) return 0.0;
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& f : samples) m = std::max(m, lq_norm(f, q));
    return m;
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double w = (k == 0 || k + 1 == samples.size()) ? 0.5 : 1.0;
    acc += w * std::pow(lq_norm(samples[k], q), p);
  }
  return std::pow(acc * dt, 1.0 / p);
}

std::vector<SpacetimePair> default_spacetime_pairs() { return {{2.0, 8.0}, {4.0, 16.0 / 3.0}, {kInf, 4.0}, {kInf, 2.0}}; }

SpacetimeTracker::SpacetimeTracker(std::vector<SpacetimePair> pairs)
    : pairs_(std::move(pairs)), accum_(pairs_.size(), 0.0), last_(pairs_.size(), 0.0) {}

void SpacetimeTracker::add(double time, const RadialField& f) {
  for (std::size_t k = 0; k < pairs_.size(); ++k) {
    const double norm = lq_norm(f, pairs_[k].q);
    if (std::isinf(pairs_[k].p)) {
      accum_[k] = std::max(accum_[k], norm);
      continue;
    }
    const double a = std::pow(norm, pairs_[k].p);
    if (have_last_) accum_[k] += 0.5 * (a + last_[k]) * (time - last_time_);
    last_[k] = a;
  }
  last_time_ = time;
  have_last_ = true;
}

std::vector<double> SpacetimeTracker::values() const {
  std::vector<double> out(pairs_.size());
  for (std::size_t k = 0; k < pairs_.size(); ++k)
    out[k] = std::isinf(pairs_[k].p) ? accum_[k] : std::pow(accum_[k], 1.0 / pairs_[k].p);
  return out;
}

DiagnosticsRecord make_record(const FieldState& v, std::size_t step, const KernelParams& p, double energy0,
                              SpacetimeTracker& tracker, const DiagnosticsOptions& opts) {
  DiagnosticsRecord rec;
  rec.time = v.time;
  rec.step = step;
  rec.monitor = continuation_monitor(v);
  if (!std::isfinite(rec.monitor.v)) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    rec.energy = rec.energy_drift = rec.energy_tail = nan;
    return rec;
  }
  const EnergyValue e = energy_from_v(v, p);
  rec.energy = e.value;
  rec.energy_tail = e.tail;
  const double ref = std::isnan(energy0) ? e.value : energy0;
  rec.energy_drift = ref != 0.0 ? std::abs(e.value - ref) / std::abs(ref) : std::abs(e.value);
  for (int s = 1; s <= 4; ++s) rec.sobolev.push_back(sobolev_norm(v.f, s));
  rec.decay_v = decay_report(v.f, opts.decay_s);
  if (opts.phi) {
    rec.decay_phi = decay_report(compute_phi(v, p), opts.decay_s);
  } else {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    rec.decay_phi = {nan, nan};
  }
  tracker.add(v.time, compute_phi_t(v, p));
  rec.spacetime = tracker.values();
  return rec;
}

namespace {

std::string pair_label(double x) {
  if (std::isinf(x)) return "inf";
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

std::vector<std::string> diagnostics_columns(const std::vector<SpacetimePair>& pairs) {
  std::vector<std::string> cols = {"time",          "step",          "energy",        "energy_drift",
                                   "energy_tail",   "monitor_v",     "monitor_vt",    "monitor_gradv",
                                   "sobolev_1",     "sobolev_2",     "sobolev_3",     "sobolev_4",
                                   "decay_v_outer", "decay_v_inner", "decay_phi_outer", "decay_phi_inner"};
  for (const auto& pq : pairs) cols.push_back("phit_L" + pair_label(pq.p) + "_L" + pair_label(pq.q));
  return cols;
}

void write_diagnostics_header(std::ostream& os, const std::vector<SpacetimePair>& pairs) {
  const auto cols = diagnostics_columns(pairs);
  for (std::size_t k = 0; k < cols.size(); ++k) os << (k ? "," : "") << cols[k];
  os << '\n';
}

void write_diagnostics_row(std::ostream& os, const DiagnosticsRecord& rec) {
  os << format_double(rec.time) << ',' << rec.step << ',' << format_double(rec.energy) << ','
     << format_double(rec.energy_drift) << ',' << format_double(rec.energy_tail) << ','
     << format_double(rec.monitor.v) << ',' << format_double(rec.monitor.v_t) << ','
     << format_double(rec.monitor.grad_v);
  for (std::size_t s = 0; s < 4; ++s)
    os << ',' << format_double(s < rec.sobolev.size() ? rec.sobolev[s] : std::numeric_limits<double>::quiet_NaN());
  os << ',' << format_double(rec.decay_v.outer) << ',' << format_double(rec.decay_v.inner) << ','
     << format_double(rec.decay_phi.outer) << ',' << format_double(rec.decay_phi.inner);
  for (double x : rec.spacetime) os << ',' << format_double(x);
  os << '\n';
}

}  // namespace faddeev
