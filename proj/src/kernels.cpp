#include "faddeev/kernels.hpp"

#include <stdexcept>
#include <string>

namespace faddeev {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxSeriesTerms = 20;

// Taylor coefficients in z = x^2, alpha factored out.
struct SeriesTables {
  std::array<long double, kMaxSeriesTerms> f0{};  // sin^2 x / x^2
  std::array<long double, kMaxSeriesTerms> f1{};  // (1 - sin x cos x / x) / x^2
  std::array<long double, kMaxSeriesTerms> f2{};  // sin x (cos x - sin x / x) / x^3
  std::array<long double, kMaxSeriesTerms> f3{};  // sin x cos x / x
  std::array<long double, kMaxSeriesTerms> sinc{};
};

long double factorial(int n) {
  long double f = 1.0L;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

SeriesTables build_tables() {
  SeriesTables t;
  for (int m = 0; m < kMaxSeriesTerms; ++m) {
    const long double sign = (m % 2 == 0) ? 1.0L : -1.0L;
    const long double four_m = std::pow(4.0L, m);
    t.f0[m] = sign * 2.0L * four_m / factorial(2 * m + 2);
    t.f1[m] = sign * 4.0L * four_m / factorial(2 * m + 3);
    t.f2[m] = -sign * 4.0L * four_m * (2 * m + 2) / factorial(2 * m + 4);
    t.f3[m] = sign * four_m / factorial(2 * m + 1);
    t.sinc[m] = sign / factorial(2 * m + 1);
  }
  return t;
}

const SeriesTables& tables() {
  static const SeriesTables t = build_tables();
  return t;
}

long double horner(const std::array<long double, kMaxSeriesTerms>& c, int terms, long double z) {
  long double acc = 0.0L;
  for (int k = terms - 1; k >= 0; --k) acc = acc * z + c[k];
  return acc;
}

// Regularized smoothstep of degree 2N+1 and its first two derivatives.
struct Smoothstep {
  double s, ds, d2s;
};

Smoothstep smoothstep(double t, int order) {
  if (t <= 0.0) return {0.0, 0.0, 0.0};
  if (t >= 1.0) return {1.0, 0.0, 0.0};
  const int n = (order - 1) / 2;
  const double omt = 1.0 - t;
  double sum = 0.0;
  double binom = 1.0;  // C(n+k, k)
  double pow_omt = 1.0;
  for (int k = 0; k <= n; ++k) {
    sum += binom * pow_omt;
    binom = binom * (n + k + 1) / (k + 1);
    pow_omt *= omt;
  }
  const double c = static_cast<double>(factorial(2 * n + 1) / (factorial(n) * factorial(n)));
  const double tn = std::pow(t, n);
  const double omtn = std::pow(omt, n);
  const double s = tn * t * sum;
  const double ds = c * tn * omtn;
  const double d2s = c * n * std::pow(t, n - 1) * std::pow(omt, n - 1) * (1.0 - 2.0 * t);
  return {s, ds, d2s};
}

}  // namespace

void KernelParams::validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("kernels.alpha must be finite and >= 0");
  if (!(x_switch > 0.0) || x_switch > 0.5)
    throw std::invalid_argument("kernels.x_switch must lie in (0, 0.5]");
  if (series_terms < 4 || series_terms > kMaxSeriesTerms)
    throw std::invalid_argument("kernels.series_terms must lie in [4, " +
                                std::to_string(kMaxSeriesTerms) + "]");
  if (cutoff.order < 5 || cutoff.order % 2 == 0 || cutoff.order > 15)
    throw std::invalid_argument("kernels.cutoff_order must be odd and in [5, 15]");
}

double eval_cutoff(CutoffKind which, double r, int derivative, const CutoffProfile& profile) {
  if (derivative < 0 || derivative > 2)
    throw std::invalid_argument("eval_cutoff: derivative order must be 0, 1 or 2");
  switch (which) {
    case CutoffKind::phi: {
      const Smoothstep s = smoothstep(r - 1.0, profile.order);
      if (derivative == 0) return kPi * (1.0 - s.s);
      if (derivative == 1) return -kPi * s.ds;
      return -kPi * s.d2s;
    }
    case CutoffKind::lower:
    case CutoffKind::upper: {
      const Smoothstep s = smoothstep(2.0 * (r - 0.5), profile.order);
      const double sign = which == CutoffKind::lower ? 1.0 : -1.0;
      if (derivative == 0) return which == CutoffKind::lower ? 1.0 - s.s : s.s;
      if (derivative == 1) return -sign * 2.0 * s.ds;
      return -sign * 4.0 * s.d2s;
    }
  }
  throw std::invalid_argument("eval_cutoff: unknown cutoff");
}

double laplacian_phi(double r, int dim, const CutoffProfile& profile) {
  if (r <= 1.0 || r >= 2.0) return 0.0;
  return eval_cutoff(CutoffKind::phi, r, 2, profile) +
         (dim - 1) / r * eval_cutoff(CutoffKind::phi, r, 1, profile);
}

CutoffSample sample_cutoffs(double r, const CutoffProfile& profile) {
  CutoffSample c;
  c.r = r;
  c.phi = eval_cutoff(CutoffKind::phi, r, 0, profile);
  c.dphi = eval_cutoff(CutoffKind::phi, r, 1, profile);
  c.lap2_phi = laplacian_phi(r, 2, profile);
  c.lower = eval_cutoff(CutoffKind::lower, r, 0, profile);
  return c;
}

std::array<double, 5> eval_ftilde_direct(double x, const KernelParams& p) {
  const long double xl = x;
  const long double s = std::sin(xl);
  const long double c = std::cos(xl);
  const long double a2 = static_cast<long double>(p.alpha) * p.alpha;
  const long double f0 = a2 * s * s / (xl * xl);
  const long double f1 = (1.0L - s * c / xl) / (xl * xl);
  const long double f2 = a2 * s * (c - s / xl) / (xl * xl * xl);
  const long double f3 = -a2 * s * c / xl;
  return {static_cast<double>(f0), static_cast<double>(f1), static_cast<double>(f2),
          static_cast<double>(f3), static_cast<double>(2.0L * f2)};
}

std::array<double, 5> eval_ftilde_series(double x, const KernelParams& p) {
  const SeriesTables& t = tables();
  const long double z = static_cast<long double>(x) * x;
  const int n = p.series_terms;
  const long double a2 = static_cast<long double>(p.alpha) * p.alpha;
  const long double f2 = a2 * horner(t.f2, n, z);
  return {static_cast<double>(a2 * horner(t.f0, n, z)), static_cast<double>(horner(t.f1, n, z)),
          static_cast<double>(f2), static_cast<double>(-a2 * horner(t.f3, n, z)),
          static_cast<double>(2.0L * f2)};
}

std::array<double, 5> eval_ftilde_all(double x, const KernelParams& p) {
  return std::abs(x) < p.x_switch ? eval_ftilde_series(x, p) : eval_ftilde_direct(x, p);
}

double eval_ftilde(int j, double x, const KernelParams& p) {
  if (j < 0 || j > 4) throw std::invalid_argument("eval_ftilde: kernel index must be in 0..4");
  return eval_ftilde_all(x, p)[static_cast<std::size_t>(j)];
}

double sinc(double x, const KernelParams& p) {
  if (std::abs(x) < p.x_switch)
    return static_cast<double>(horner(tables().sinc, p.series_terms, static_cast<long double>(x) * x));
  return std::sin(x) / x;
}

double eval_a1(double u, double r, const KernelParams& p) {
  if (!(r > 0.0)) throw std::invalid_argument("eval_a1: r must be > 0");
  const double s = std::sin(u);
  return 1.0 + p.alpha * p.alpha * s * s / (r * r);
}

double eval_a3(double y, double r, const KernelParams& p) { return eval_a1(y, r, p); }

double eval_a4(double y, double r, const KernelParams& p) {
  const double sc = y * sinc(r * y, p);
  return 1.0 + p.alpha * p.alpha * sc * sc;
}

double eval_a5(double y, double r, const KernelParams& p) {
  return a1_from_v(y, sample_cutoffs(r, p.cutoff), p);
}

double a1_from_v(double v, const CutoffSample& c, const KernelParams& p) {
  if (c.phi == kPi) return eval_a4(v, c.r, p);
  const double s = std::sin(c.r * v + c.phi);
  return 1.0 + p.alpha * p.alpha * s * s / (c.r * c.r);
}

double da1_dt_from_v(double v, double v_t, const CutoffSample& c, const KernelParams& p) {
  const double a2 = p.alpha * p.alpha;
  if (c.phi == kPi) return a2 * 2.0 * v * sinc(2.0 * c.r * v, p) * v_t;
  return a2 * std::sin(2.0 * (c.r * v + c.phi)) * v_t / c.r;
}

double eval_n(double u, double u_t, double u_r, double r, const KernelParams& p) {
  if (!(r > 0.0)) throw std::invalid_argument("eval_n: r must be > 0");
  const double a2 = p.alpha * p.alpha;
  const double s = std::sin(u);
  const double c = std::cos(u);
  const double r2 = r * r;
  const double a1 = 1.0 + a2 * s * s / r2;
  return -2.0 / r * (1.0 - 1.0 / a1) * u_r - (a2 * (u_t * u_t - u_r * u_r) + 1.0) * s * c / (r2 * a1);
}

double eval_f_sum(double v, double v_t, double v_r, double r, const KernelParams& p) {
  const auto f = eval_ftilde_all(r * v, p);
  const double v2 = v * v;
  const double v3 = v2 * v;
  const double num = f[1] * v3 + f[2] * v3 * v2 + f[3] * v * (v_t * v_t - v_r * v_r) +
                     f[4] * r * v2 * v2 * v_r;
  return num / (1.0 + f[0] * v2);
}

double eval_f_rhs(double v, double v_t, double v_r, const CutoffSample& c, const KernelParams& p) {
  double out = 0.0;
  const double lower = c.lower;
  const double upper = 1.0 - lower;
  if (lower > 0.0) out += lower * eval_f_sum(v, v_t, v_r, c.r, p);
  if (upper > 0.0) {
    const double r = c.r;
    const double u = r * v + c.phi;
    const double u_t = r * v_t;
    const double u_r = c.dphi + v + r * v_r;
    out += upper * (v / (r * r) + eval_n(u, u_t, u_r, r, p) / r);
  }
  if (c.lap2_phi != 0.0) out += c.lap2_phi / c.r;
  return out;
}

double eval_f_rhs(double v, double v_t, double v_r, double r, const KernelParams& p) {
  return eval_f_rhs(v, v_t, v_r, sample_cutoffs(r, p.cutoff), p);
}

}  // namespace faddeev
