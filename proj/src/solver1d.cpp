#include "nvlasov/solver1d.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "nvlasov/characteristics.hpp"

namespace nvlasov {

SourceSlice compute_mu(const PhaseGrid& f) {
  const int nx = f.x.nodes(), np = f.p.nodes();
  SourceSlice mu(nx, 0.0);
  if (f.support.empty()) return mu;
  for (int i = f.support.i_lo; i <= f.support.i_hi; ++i) {
    double s = 0.0;
    for (int j = f.support.j_lo; j <= f.support.j_hi; ++j) {
      const double fij = f.at(i, j);
      if (fij == 0.0) continue;
      const double pj = f.p.coord(j);
      const double w = (j == 0 || j == np - 1) ? 0.5 : 1.0;
      s += w * fij / std::sqrt(1.0 + pj * pj);
    }
    mu[i] = s * f.p.step;
  }
  return mu;
}

namespace {

void check_grid_health(const PhaseGrid& f, int step, double t) {
  if (!f.finite())
    throw SolverAbort("non-finite f at step " + std::to_string(step) +
                      ", t = " + std::to_string(t));
  if (f.support.empty()) return;
  const bool x_ok = f.support.i_lo >= 2 && f.support.i_hi <= f.x.nodes() - 3;
  const bool p_ok = f.support.j_lo >= 2 && f.support.j_hi <= f.p.nodes() - 3;
  if (!x_ok || !p_ok)
    throw SolverAbort("domain exhausted: support within 2 cells of the " +
                      std::string(x_ok ? "p" : "x") + " boundary at step " +
                      std::to_string(step) + ", t = " + std::to_string(t));
}

// Transport f one step backward against the sampler built from (old, next)
// field levels. Only nodes whose backward feet can reach the current support
// are traced; everything else stays exactly zero.
PhaseGrid transport(const PhaseGrid& f, const FieldState1D& fld_old,
                    const FieldState1D& fld_new, const SolverOptions& opts) {
  PhaseGrid out(f.x, f.p);
  if (f.support.empty()) {
    out.support = SupportBox{};
    return out;
  }
  const double dt = fld_new.t - fld_old.t;
  const InterpolatedField1D sampler{&fld_old, &fld_new, opts.field_interp};

  // force bound |dp/ds| <= (|dtphi| + |dxphi|)(1 + |p|) + |dxphi| on the
  // padded support determines how far feet can move in p
  double dsup = 0.0;
  for (size_t i = 0; i < fld_old.u.size(); ++i) {
    dsup = std::max(dsup, std::fabs(0.5 * (fld_old.u[i] + fld_old.v[i])) +
                              std::fabs(0.5 * (fld_old.u[i] - fld_old.v[i])));
    dsup = std::max(dsup, std::fabs(0.5 * (fld_new.u[i] + fld_new.v[i])) +
                              std::fabs(0.5 * (fld_new.u[i] - fld_new.v[i])));
  }
  const double p_reach = std::max(std::fabs(f.p.coord(f.support.j_lo)),
                                  std::fabs(f.p.coord(f.support.j_hi))) +
                         std::fabs(f.p.step) * 4.0;
  const int pad_x = 4;  // |dx/ds| < 1 plus the cubic stencil width
  const int pad_p = 3 + static_cast<int>(std::ceil(dsup * (2.0 + p_reach) * dt / f.p.step));

  const int i_lo = std::max(0, f.support.i_lo - pad_x);
  const int i_hi = std::min(f.x.nodes() - 1, f.support.i_hi + pad_x);
  const int j_lo = std::max(1, f.support.j_lo - pad_p);
  const int j_hi = std::min(f.p.nodes() - 2, f.support.j_hi + pad_p);

  for (int i = i_lo; i <= i_hi; ++i) {
    const double xi = f.x.coord(i);
    const double phi_new_i = fld_new.phi[i];
    for (int j = j_lo; j <= j_hi; ++j) {
      CharPoint<1> node{{xi}, {f.p.coord(j)}};
      const CharPoint<1> foot = integrate_characteristic(
          fld_new.t, fld_old.t, node, sampler, opts.substeps, opts.rk_order);
      const double fval = interp_density(f, foot.x[0], foot.p[0], opts.f_interp);
      if (fval > 0.0) {
        const double phi_foot =
            interp1(fld_old.phi, fld_old.x,
                    std::clamp(foot.x[0], fld_old.x.min, fld_old.x.max()),
                    opts.field_interp);
        const double val = fval * transport_factor(phi_new_i, phi_foot, 1);
        out.at(i, j) = val;
        if (val != 0.0) out.support.include(i, j);
      }
    }
  }
  return out;
}

DiagnosticsRecord assemble_diagnostics(const PhaseGrid& f, const FieldState1D& field,
                                       const SourceSlice& mu, RunningSup& monitor) {
  DiagnosticsRecord d;
  d.t = field.t;
  const auto dt_phi = field.dt_phi();
  const auto dx_phi = field.dx_phi();
  const EnergyMoments em = energy_moments(f, dt_phi, dx_phi);
  d.kinetic_energy = em.kinetic_total;
  d.field_energy = em.field_total;
  d.total_energy = em.total;
  d.rest_mass = rest_mass(f, field.phi);
  const SupportMonitor sm = support_monitor(f, field.phi, monitor);
  d.p_sup = sm.p_sup;
  d.q_sup = sm.q_sup;
  d.lambda = sm.lambda;
  d.f_sup = f.max_abs();
  d.mu_sup = 0.0;
  for (double m : mu) d.mu_sup = std::max(d.mu_sup, std::fabs(m));
  d.mu_bound_slack = mu_bound_slack(d.f_sup, d.p_sup, d.mu_sup);
  d.energy_residual_sup = 0.0;
  return d;
}

}  // namespace

SimState make_sim_state(PhaseGrid f0, FieldState1D field0, const SolverOptions&) {
  if (f0.x.nodes() != field0.x.nodes() || f0.x.min != field0.x.min ||
      f0.x.step != field0.x.step)
    throw std::invalid_argument("make_sim_state: f and field must share the x-lattice");
  SimState st;
  st.step = 0;
  st.t = field0.t;
  st.f = std::move(f0);
  st.field = std::move(field0);
  st.f.rescan_support();
  check_grid_health(st.f, 0, st.t);
  st.mu = compute_mu(st.f);
  st.diag = assemble_diagnostics(st.f, st.field, st.mu, st.monitor);
  return st;
}

SimState coupled_step(const SimState& state, const SolverOptions& opts) {
  const double dt = state.field.x.step;  // magic timestep

  SimState next;
  next.step = state.step + 1;
  next.t = state.t + dt;
  next.monitor = state.monitor;

  SourceSlice mu_next = state.mu;  // predictor: freeze the source
  FieldState1D fld_new;
  PhaseGrid f_new;
  for (int pass = 0; pass <= std::max(0, opts.corrector_iters); ++pass) {
    fld_new = field_step(state.field, state.mu, mu_next, dt);
    f_new = transport(state.f, state.field, fld_new, opts);
    if (pass < opts.corrector_iters) mu_next = compute_mu(f_new);
  }

  // p-boundary rows stay identically zero by invariant
  for (int i = 0; i < f_new.x.nodes(); ++i) {
    f_new.at(i, 0) = 0.0;
    f_new.at(i, f_new.p.nodes() - 1) = 0.0;
  }

  check_grid_health(f_new, next.step, next.t);
  next.f = std::move(f_new);
  next.field = std::move(fld_new);
  next.mu = compute_mu(next.f);
  next.diag = assemble_diagnostics(next.f, next.field, next.mu, next.monitor);
  return next;
}

RunResult run(SimState state, double t_final, const SolverOptions& opts,
              int snapshot_every, const std::function<void(const SimState&)>& on_snapshot) {
  RunResult res;
  const double dt = state.field.x.step;
  const int n_steps = static_cast<int>(std::llround((t_final - state.t) / dt));

  // rolling energy/momentum levels for the centered conservation residual
  std::deque<std::pair<std::vector<double>, std::vector<double>>> levels;
  auto push_level = [&](const SimState& s) {
    EnergyMoments em = energy_moments(s.f, s.field.dt_phi(), s.field.dx_phi());
    levels.emplace_back(std::move(em.energy_density), std::move(em.momentum_density));
    if (levels.size() > 3) levels.pop_front();
  };

  push_level(state);
  res.records.push_back(state.diag);
  if (on_snapshot && snapshot_every > 0) on_snapshot(state);

  for (int k = 0; k < n_steps; ++k) {
    SimState next;
    try {
      next = coupled_step(state, opts);
    } catch (const SolverAbort& e) {
      res.aborted = true;
      res.abort_reason = e.what();
      break;
    }
    push_level(next);
    if (levels.size() == 3)
      next.diag.energy_residual_sup = local_conservation_residual(
          levels[0].first, levels[2].first, levels[1].second, dt, state.field.x.step);
    res.records.push_back(next.diag);
    state = std::move(next);
    if (on_snapshot && snapshot_every > 0 && state.step % snapshot_every == 0)
      on_snapshot(state);
  }
  res.final_state = std::move(state);
  return res;
}

PicardResult picard_solve(const PhaseGrid& f0, const FieldState1D& field0,
                          double T, double tol, int max_iter,
                          const SolverOptions& opts) {
  const double dt = field0.x.step;
  const int n_levels = static_cast<int>(std::llround(T / dt)) + 1;
  if (n_levels < 2) throw std::invalid_argument("picard_solve: horizon shorter than one step");

  PhaseGrid f_init = f0;
  f_init.rescan_support();

  // iterate 0: f frozen at f^in, field frozen at phi0 (so dt phi = 0)
  std::vector<PhaseGrid> prev_f(n_levels, f_init);
  std::vector<FieldState1D> prev_fld(n_levels, field0);
  for (int n = 0; n < n_levels; ++n) {
    prev_fld[n].t = field0.t + n * dt;
    for (int i = 0; i < field0.x.nodes(); ++i) {
      const double dphi0 = field0.data.dphi0(field0.x.coord(i));
      prev_fld[n].phi[i] = field0.data.phi0(field0.x.coord(i));
      prev_fld[n].u[i] = dphi0;
      prev_fld[n].v[i] = -dphi0;
    }
  }

  PicardResult result;
  int grow_streak = 0;
  double last_total = std::numeric_limits<double>::infinity();

  for (int k = 1; k <= max_iter; ++k) {
    std::vector<PhaseGrid> cur_f(n_levels, PhaseGrid(f0.x, f0.p));
    cur_f[0] = f_init;

    // linear transport along the previous iterate's characteristics, with the
    // multiplicative factor taken from the previous iterate's field
    for (int n = 0; n + 1 < n_levels; ++n) {
      const FieldState1D& flo = prev_fld[n];
      const FieldState1D& fhi = prev_fld[n + 1];
      const InterpolatedField1D sampler{&flo, &fhi, opts.field_interp};
      PhaseGrid& src = cur_f[n];
      PhaseGrid& dst = cur_f[n + 1];
      if (src.support.empty()) continue;
      const int pad = 4;
      const int i_lo = std::max(0, src.support.i_lo - pad);
      const int i_hi = std::min(src.x.nodes() - 1, src.support.i_hi + pad);
      const int j_lo = std::max(1, src.support.j_lo - pad);
      const int j_hi = std::min(src.p.nodes() - 2, src.support.j_hi + pad);
      for (int i = i_lo; i <= i_hi; ++i) {
        for (int j = j_lo; j <= j_hi; ++j) {
          CharPoint<1> node{{src.x.coord(i)}, {src.p.coord(j)}};
          const CharPoint<1> foot = integrate_characteristic(
              fhi.t, flo.t, node, sampler, opts.substeps, opts.rk_order);
          const double fval = interp_density(src, foot.x[0], foot.p[0], opts.f_interp);
          if (fval > 0.0) {
            const double phi_foot =
                interp1(flo.phi, flo.x,
                        std::clamp(foot.x[0], flo.x.min, flo.x.max()), opts.field_interp);
            const double val = fval * transport_factor(fhi.phi[i], phi_foot, 1);
            dst.at(i, j) = val;
            if (val != 0.0) dst.support.include(i, j);
          }
        }
      }
      check_grid_health(dst, n + 1, fhi.t);
    }

    // wave equation sourced by this iterate's own mu
    std::vector<SourceSlice> mu(n_levels);
    for (int n = 0; n < n_levels; ++n) mu[n] = compute_mu(cur_f[n]);
    std::vector<FieldState1D> cur_fld;
    cur_fld.reserve(n_levels);
    cur_fld.push_back(field0);
    for (int n = 0; n + 1 < n_levels; ++n)
      cur_fld.push_back(field_step(cur_fld.back(), mu[n], mu[n + 1], dt));

    PicardDeltas d{0.0, 0.0, 0.0};
    for (int n = 0; n < n_levels; ++n) {
      for (size_t m = 0; m < cur_f[n].f.size(); ++m)
        d.df = std::max(d.df, std::fabs(cur_f[n].f[m] - prev_f[n].f[m]));
      for (int i = 0; i < field0.x.nodes(); ++i) {
        d.dphi = std::max(d.dphi, std::fabs(cur_fld[n].phi[i] - prev_fld[n].phi[i]));
        const double du = cur_fld[n].u[i] - prev_fld[n].u[i];
        const double dv = cur_fld[n].v[i] - prev_fld[n].v[i];
        d.ddphi = std::max({d.ddphi, std::fabs(0.5 * (du + dv)), std::fabs(0.5 * (du - dv))});
      }
    }
    result.report.deltas.push_back(d);
    result.report.iterations = k;

    prev_f = std::move(cur_f);
    prev_fld = std::move(cur_fld);

    if (d.total() <= tol) {
      result.report.converged = true;
      break;
    }
    grow_streak = d.total() > last_total ? grow_streak + 1 : 0;
    last_total = d.total();
    if (grow_streak >= 3) {
      result.report.diverged = true;
      break;
    }
  }

  result.f_final = prev_f.back();
  result.field_final = prev_fld.back();
  return result;
}

}  // namespace nvlasov
