#include "faddeev/transform.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "faddeev/io.hpp"

namespace faddeev {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<CutoffSample> cutoff_table(const RadialGrid& grid, const KernelParams& p) {
  std::vector<CutoffSample> table(grid.n_nodes());
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = sample_cutoffs(grid.r(i), p.cutoff);
  return table;
}

void require_levels(const TimeWindow& w, std::size_t needed, const char* who) {
  if (w.levels.size() < needed)
    throw std::invalid_argument(std::string(who) + ": needs at least " + std::to_string(needed) + " time levels");
  if (!(w.dt > 0.0)) throw std::invalid_argument(std::string(who) + ": dt must be positive");
}

void require_alpha(const KernelParams& p, const char* who) {
  if (!(p.alpha > 0.0)) throw std::invalid_argument(std::string(who) + ": alpha must be > 0");
}

RadialField combine(const RadialGrid& grid, const std::function<double(std::size_t)>& f) {
  RadialField out(grid, Parity::even);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(i);
  return out;
}

}  // namespace

double even_extrapolate_origin(double f1, double f2, double f3) { return 1.5 * f1 - 0.6 * f2 + 0.1 * f3; }

FieldState u_to_v(const FieldState& u, const KernelParams& p) {
  const RadialGrid& grid = u.f.grid();
  if (grid.n_nodes() < 4) throw std::invalid_argument("u_to_v: grid too small");
  if (std::abs(u.f[0] - kPi) > 1e-10)
    throw std::domain_error("u_to_v: boundary condition u(t,0) = pi violated (u(0) = " + format_double(u.f[0]) + ")");
  RadialField v(grid, Parity::even);
  RadialField v_t(grid, Parity::even);
  for (std::size_t i = 1; i < grid.n_nodes(); ++i) {
    const double r = grid.r(i);
    v[i] = (u.f[i] - eval_cutoff(CutoffKind::phi, r, 0, p.cutoff)) / r;
    v_t[i] = u.f_t[i] / r;
  }
  v[0] = even_extrapolate_origin(v[1], v[2], v[3]);
  v_t[0] = even_extrapolate_origin(v_t[1], v_t[2], v_t[3]);
  return {std::move(v), std::move(v_t), u.time};
}

FieldState v_to_u(const FieldState& v, const KernelParams& p) {
  const RadialGrid& grid = v.f.grid();
  RadialField u(grid, Parity::none);
  RadialField u_t(grid, Parity::none);
  for (std::size_t i = 0; i < grid.n_nodes(); ++i) {
    const double r = grid.r(i);
    u[i] = r * v.f[i] + eval_cutoff(CutoffKind::phi, r, 0, p.cutoff);
    u_t[i] = r * v.f_t[i];
  }
  return {std::move(u), std::move(u_t), v.time};
}

int y_panels(double length) { return std::max(8, static_cast<int>(std::ceil(16.0 * std::abs(length)))); }

double phi_small_branch(double v, double r, const KernelParams& p) {
  return gauss_legendre([&](double y) { return std::sqrt(eval_a4(y, r, p)); }, 0.0, v, y_panels(v));
}

double a4_inverse_integral(double v, double r, const KernelParams& p) {
  return gauss_legendre([&](double y) { return std::pow(eval_a4(y, r, p), -1.5); }, 0.0, v, y_panels(v));
}

double phi_large_branch(double v, double r, const KernelParams& p) {
  if (!(r > 0.0)) throw std::invalid_argument("phi_large_branch: r must be > 0");
  const CutoffSample c = sample_cutoffs(r, p.cutoff);
  const double u = r * v + c.phi;
  const double main = gauss_legendre([&](double y) { return std::sqrt(eval_a3(y, r, p)); }, kPi, u, y_panels(u - kPi));
  const double upper = 1.0 - c.lower;
  double correction = 0.0;
  if (upper > 0.0)
    correction = upper * gauss_legendre([&](double y) { return std::pow(eval_a3(y, r, p), -1.5); }, 0.0, kPi, y_panels(kPi));
  return (main + correction) / r;
}

RadialField compute_phi(const FieldState& v, const KernelParams& p, Exec exec) {
  const RadialGrid& grid = v.f.grid();
  RadialField out(grid, Parity::even);
  auto vals = out.values();
  for_each_node(exec, grid.n_nodes(), [&](std::size_t i) {
    const double r = grid.r(i);
    vals[i] = r <= 0.5 ? phi_small_branch(v.f[i], r, p) : phi_large_branch(v.f[i], r, p);
  });
  return out;
}

RadialField compute_phi_t(const FieldState& v, const KernelParams& p, Exec exec) {
  const RadialGrid& grid = v.f.grid();
  RadialField out(grid, Parity::even);
  auto vals = out.values();
  for_each_node(exec, grid.n_nodes(), [&](std::size_t i) {
    const CutoffSample c = sample_cutoffs(grid.r(i), p.cutoff);
    vals[i] = std::sqrt(a1_from_v(v.f[i], c, p)) * v.f_t[i];
  });
  return out;
}

RadialField compute_phi_t_from_u(const FieldState& u, const KernelParams& p) {
  const RadialGrid& grid = u.f.grid();
  RadialField out(grid, Parity::even);
  for (std::size_t i = 1; i < grid.n_nodes(); ++i) {
    const double r = grid.r(i);
    out[i] = std::sqrt(eval_a1(u.f[i], r, p)) * u.f_t[i] / r;
  }
  out[0] = even_extrapolate_origin(out[1], out[2], out[3]);
  return out;
}

TransformBundle make_bundle(const FieldState& v, const KernelParams& p) {
  return {v_to_u(v, p), v, compute_phi(v, p), compute_phi_t(v, p)};
}

void write_bundle_csv(std::ostream& os, const TransformBundle& b) {
  os << "r,u,u_t,v,v_t,Phi,Phi_t\n";
  const RadialGrid& grid = b.v.f.grid();
  for (std::size_t i = 0; i < grid.n_nodes(); ++i) {
    os << format_double(grid.r(i)) << ',' << format_double(b.u.f[i]) << ',' << format_double(b.u.f_t[i]) << ','
       << format_double(b.v.f[i]) << ',' << format_double(b.v.f_t[i]) << ',' << format_double(b.phi[i]) << ','
       << format_double(b.phi_t[i]) << '\n';
  }
}

void write_bundle_csv(const std::string& path, const TransformBundle& b) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  write_bundle_csv(os, b);
}

RadialField residual_v_equation(const FieldState& v, const RadialField& v_tt, const KernelParams& p) {
  const RadialGrid& grid = v.f.grid();
  const RadialField lap = laplacian(v.f);
  const RadialField v_r = d_r(v.f, 1);
  return combine(grid, [&](std::size_t i) {
    const CutoffSample c = sample_cutoffs(grid.r(i), p.cutoff);
    return v_tt[i] - lap[i] - eval_f_rhs(v.f[i], v.f_t[i], v_r[i], c, p);
  });
}

RadialField residual_phi_wave(const TimeWindow& w, const KernelParams& p, double r_limit) {
  require_levels(w, 3, "residual_phi_wave");
  require_alpha(p, "residual_phi_wave");
  if (r_limit > 0.5) throw std::invalid_argument("residual_phi_wave: region must satisfy r < 1/2");
  const std::size_t c = w.center();
  const RadialField prev = compute_phi(w.levels[c - 1], p);
  const RadialField mid = compute_phi(w.levels[c], p);
  const RadialField next = compute_phi(w.levels[c + 1], p);
  const RadialField lap = laplacian(mid);
  const RadialGrid& grid = w.grid();
  const double inv_a2 = 1.0 / (p.alpha * p.alpha);
  const double inv_dt2 = 1.0 / (w.dt * w.dt);
  return combine(grid, [&](std::size_t i) {
    const double r = grid.r(i);
    if (r >= r_limit) return 0.0;
    const double box = (next[i] - 2.0 * mid[i] + prev[i]) * inv_dt2 - lap[i];
    return box - inv_a2 * (mid[i] - a4_inverse_integral(w.levels[c].f[i], r, p));
  });
}

namespace {

struct PhiTLevels {
  std::vector<RadialField> phi_t;
  std::vector<RadialField> a1;
  std::vector<RadialField> da1;
};

PhiTLevels phi_t_levels(const TimeWindow& w, const KernelParams& p) {
  const RadialGrid& grid = w.grid();
  const auto cut = cutoff_table(grid, p);
  PhiTLevels out;
  for (const FieldState& s : w.levels) {
    out.phi_t.push_back(compute_phi_t(s, p));
    out.a1.push_back(combine(grid, [&](std::size_t i) { return a1_from_v(s.f[i], cut[i], p); }));
    out.da1.push_back(combine(grid, [&](std::size_t i) { return da1_dt_from_v(s.f[i], s.f_t[i], cut[i], p); }));
  }
  return out;
}

// Centered first difference of a sequence of fields at index j.
RadialField central_diff(const std::vector<RadialField>& seq, std::size_t j, double dt) {
  const RadialField& a = seq[j - 1];
  const RadialField& b = seq[j + 1];
  return combine(a.grid(), [&](std::size_t i) { return (b[i] - a[i]) / (2.0 * dt); });
}

// Box4 of the middle of three consecutive fields.
RadialField box(const RadialField& prev, const RadialField& mid, const RadialField& next, double dt) {
  const RadialField lap = laplacian(mid);
  return combine(mid.grid(), [&](std::size_t i) { return (next[i] - 2.0 * mid[i] + prev[i]) / (dt * dt) - lap[i]; });
}

}  // namespace

RadialField residual_phi_t_wave(const TimeWindow& w, const KernelParams& p) {
  require_levels(w, 3, "residual_phi_t_wave");
  require_alpha(p, "residual_phi_t_wave");
  const std::size_t c = w.center();
  const PhiTLevels L = phi_t_levels(w, p);
  const RadialField b = box(L.phi_t[c - 1], L.phi_t[c], L.phi_t[c + 1], w.dt);
  const double inv_a2 = 1.0 / (p.alpha * p.alpha);
  return combine(w.grid(), [&](std::size_t i) {
    const double a = L.a1[c][i];
    return b[i] - inv_a2 * (1.0 - 1.0 / (a * a)) * L.phi_t[c][i];
  });
}

RadialField residual_phi_tt_wave(const TimeWindow& w, const KernelParams& p) {
  require_levels(w, 5, "residual_phi_tt_wave");
  require_alpha(p, "residual_phi_tt_wave");
  const std::size_t c = w.center();
  const PhiTLevels L = phi_t_levels(w, p);
  std::vector<RadialField> tt;
  for (std::size_t j = c - 1; j <= c + 1; ++j) tt.push_back(central_diff(L.phi_t, j, w.dt));
  const RadialField b = box(tt[0], tt[1], tt[2], w.dt);
  const double inv_a2 = 1.0 / (p.alpha * p.alpha);
  return combine(w.grid(), [&](std::size_t i) {
    const double a = L.a1[c][i];
    const double rhs = 2.0 / (a * a * a) * L.da1[c][i] * L.phi_t[c][i] + (1.0 - 1.0 / (a * a)) * tt[1][i];
    return b[i] - inv_a2 * rhs;
  });
}

RadialField residual_phi_ttt_wave(const TimeWindow& w, const KernelParams& p) {
  require_levels(w, 7, "residual_phi_ttt_wave");
  require_alpha(p, "residual_phi_ttt_wave");
  const std::size_t c = w.center();
  const PhiTLevels L = phi_t_levels(w, p);
  // Phi_tt on levels c-2..c+2, then Phi_ttt on c-1..c+1.
  std::vector<RadialField> tt;
  for (std::size_t j = c - 2; j <= c + 2; ++j) tt.push_back(central_diff(L.phi_t, j, w.dt));
  std::vector<RadialField> ttt;
  for (std::size_t k = 1; k <= 3; ++k) ttt.push_back(central_diff(tt, k, w.dt));
  const RadialField b = box(ttt[0], ttt[1], ttt[2], w.dt);
  const RadialField da1_tt = central_diff(L.da1, c, w.dt);
  const double inv_a2 = 1.0 / (p.alpha * p.alpha);
  return combine(w.grid(), [&](std::size_t i) {
    const double a = L.a1[c][i];
    const double a3 = a * a * a;
    const double at = L.da1[c][i];
    const double pt = L.phi_t[c][i];
    const double rhs = -6.0 / (a3 * a) * at * at * pt + 2.0 / a3 * da1_tt[i] * pt + 4.0 / a3 * at * tt[2][i] +
                       (1.0 - 1.0 / (a * a)) * ttt[1][i];
    return b[i] - inv_a2 * rhs;
  });
}

double region_l2(const RadialField& f, double r_from, double r_to) {
  const RadialGrid& grid = f.grid();
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double r = grid.r(i);
    if (r < r_from || r > r_to) continue;
    acc += f[i] * f[i] * std::pow(r, grid.dim - 1);
  }
  return std::sqrt(acc * grid.dr());
}

}  // namespace faddeev
