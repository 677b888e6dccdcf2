#include "faddeev/reference.hpp"

#include <vector>

namespace faddeev::reference {

void rhs(const Evolver& ev, const FieldState& s, std::span<double> dv, std::span<double> dvt) {
  RadialField v_r = d_r(s.f, 1, Exec::serial);
  v_r[0] = 0.0;  // exact for an even field; the stencil leaves rounding residue
  const RadialField lap = laplacian(s.f, Exec::serial);
  const EvolverOptions& opts = ev.options();
  std::vector<double> forcing;
  if (opts.forcing) {
    forcing.assign(ev.grid().n_nodes(), 0.0);
    opts.forcing(s.time, forcing);
  }
  const auto& sigma = ev.sponge_profile();
  const auto& cut = ev.cutoffs();
  for (std::size_t i = 0; i < ev.grid().n_nodes(); ++i) {
    double acc = lap[i];
    if (opts.nonlinear) acc += eval_f_rhs(s.f[i], s.f_t[i], v_r[i], cut[i], ev.params());
    if (!forcing.empty()) acc += forcing[i];
    acc -= sigma[i] * s.f_t[i];
    dv[i] = s.f_t[i];
    dvt[i] = acc;
  }
}

}  // namespace faddeev::reference
