#include "nvlasov/blowup3d.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nvlasov {

namespace {
constexpr double kPhiCap = 600.0;  // e^{delta} representable safely below this
constexpr double kPi = 3.14159265358979323846;
}  // namespace

MomentumProfile make_bump_profile(double p0, double amplitude, int resolution) {
  if (!(p0 > 0.0) || resolution < 2)
    throw std::invalid_argument("make_bump_profile: bad parameters");
  MomentumProfile prof;
  prof.p0 = p0;
  prof.values.resize(resolution);
  for (int k = 0; k < resolution; ++k) {
    const double q = p0 * k / (resolution - 1);
    const double w = 1.0 - (q / p0) * (q / p0);
    prof.values[k] = amplitude * w * w;
  }
  return prof;
}

double mu_of_delta(const MomentumProfile& profile, double delta) {
  const int n = profile.resolution();
  if (n < 2) throw std::invalid_argument("mu_of_delta: profile too coarse");
  const double dq = profile.p0 / (n - 1);
  const double shrink = std::exp(-2.0 * std::min(delta, kPhiCap + 100.0));
  double integral = 0.0;
  for (int k = 0; k < n; ++k) {
    const double q = dq * k;
    const double w = (k == 0 || k == n - 1) ? 0.5 : 1.0;
    integral += w * profile.values[k] * q * q / std::sqrt(1.0 + q * q * shrink);
  }
  return std::exp(delta) * 4.0 * kPi * integral * dq;
}

void normalize_to_mu0(MomentumProfile& profile, double target) {
  if (!(mu_of_delta(profile, 0.0) > 0.0))
    throw std::invalid_argument("normalize_to_mu0: profile has zero mass");
  // two fixed-point passes pin the quadrature value to the target within ulps
  for (int pass = 0; pass < 2; ++pass) {
    const double scale = target / mu_of_delta(profile, 0.0);
    for (double& v : profile.values) v *= scale;
  }
}

HomTrajectory integrate_homogeneous(const HomogeneousState& state0,
                                    const MomentumProfile& profile,
                                    const HomogeneousControls& controls) {
  if (!std::isfinite(state0.phi) || !std::isfinite(state0.phi_dot))
    throw std::invalid_argument("integrate_homogeneous: non-finite initial state");

  HomTrajectory traj;
  const double phi_ref = state0.phi_ref;
  const double mu0 = mu_of_delta(profile, state0.phi - phi_ref);
  const double lambda = 2.0 * mu0 * std::exp(-state0.phi);
  const double phi_stop = std::min(controls.phi_max, kPhiCap);

  auto acc = [&](double phi) { return mu_of_delta(profile, phi - phi_ref); };

  double t = state0.t, phi = state0.phi, pd = state0.phi_dot;
  double mu_here = mu0;
  traj.points.push_back({t, phi, pd, mu_here});
  BlowupReport& rep = traj.report;
  rep.lyapunov_worst_slack = rep.mu_growth_worst_slack = rep.mu_lower_worst_slack = 0.0;

  for (long k = 0; k < controls.max_steps; ++k) {
    // crossing the threshold with mu > 0 is blow-up; with mu = 0 the growth
    // is exactly linear and the crossing proves nothing
    if (phi >= phi_stop && mu_here > 0.0) {
      rep.outcome = BlowupOutcome::blew_up;
      rep.bracket_lo = t;
      // phi_dot(s) >= phi_dot(t) and mu >= mu_here e^{phi - phi(t)} beyond the
      // stop point give remaining time <= pi / sqrt(2 mu_here)
      rep.bracket_hi = t + kPi / std::sqrt(2.0 * mu_here);
      rep.t_star = pd > 0.0 ? t + 2.0 / pd : t;  // linear zero of e^{-phi/2}
      break;
    }

    double dt = controls.dt_base;
    while (std::fabs(pd) * dt > controls.halve_when) dt *= 0.5;

    const double k1p = pd, k1v = acc(phi);
    const double k2p = pd + 0.5 * dt * k1v, k2v = acc(phi + 0.5 * dt * k1p);
    const double k3p = pd + 0.5 * dt * k2v, k3v = acc(phi + 0.5 * dt * k2p);
    const double k4p = pd + dt * k3v, k4v = acc(phi + dt * k3p);
    const double phi_n = phi + dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    const double pd_n = pd + dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    const double mu_n = acc(phi_n);

    // per-step checks of the proof's inequalities, recorded as worst slack
    // relative to the local scale
    if (pd >= 0.0) {
      const double L = pd * pd - lambda * std::exp(phi);
      const double Ln = pd_n * pd_n - lambda * std::exp(phi_n);
      const double scl = std::max({pd * pd, lambda * std::exp(phi), 1e-300});
      rep.lyapunov_worst_slack = std::min(rep.lyapunov_worst_slack, (Ln - L) / scl);
    }
    if (mu_n > 0.0) {
      rep.mu_growth_worst_slack =
          std::min(rep.mu_growth_worst_slack,
                   (mu_n - mu_here * std::exp(phi_n - phi)) / mu_n);
      rep.mu_lower_worst_slack =
          std::min(rep.mu_lower_worst_slack,
                   (mu_n - mu0 * std::exp(phi_n - state0.phi)) / mu_n);
    }
    if (pd_n < pd) rep.phi_dot_monotone = false;

    t += dt;
    phi = phi_n;
    pd = pd_n;
    mu_here = mu_n;
    rep.steps = k + 1;
    if (traj.points.size() < 100000) traj.points.push_back({t, phi, pd, mu_here});
  }

  rep.phi_final = phi;
  rep.phi_dot_final = pd;
  if (rep.outcome != BlowupOutcome::blew_up) {
    rep.bracket_lo = rep.bracket_hi = rep.t_star = 0.0;
  }
  return traj;
}

Theorem2Report verify_theorem2(double r, const MomentumProfile& profile,
                               double phi0, double phi_dot0,
                               const HomogeneousControls& controls) {
  Theorem2Report rep;
  rep.r = r;
  rep.phi0 = phi0;
  rep.phi_dot0 = phi_dot0;
  rep.mu0 = mu_of_delta(profile, 0.0);
  // equality-case hypotheses must survive the mu(0) normalization roundoff
  rep.hyp_radius = r * r * rep.mu0 >= 2.0 * (1.0 - 1e-12);
  rep.hyp_velocity = phi_dot0 >= std::sqrt(2.0 * rep.mu0) * (1.0 - 1e-12);
  rep.applicable = rep.hyp_radius && rep.hyp_velocity;
  rep.lambda = 2.0 * rep.mu0 * std::exp(-phi0);
  rep.t_bound = 2.0 * std::exp(-phi0 / 2.0) / std::sqrt(rep.lambda);

  HomogeneousState s0;
  s0.phi = phi0;
  s0.phi_ref = phi0;
  s0.phi_dot = phi_dot0;
  const HomTrajectory traj = integrate_homogeneous(s0, profile, controls);
  rep.blowup = traj.report;

  if (rep.applicable && rep.blowup.outcome == BlowupOutcome::blew_up)
    rep.bound_satisfied = rep.blowup.bracket_hi <= std::min(rep.t_bound, r) + 1e-12;
  return rep;
}

std::string Theorem2Report::summary() const {
  std::ostringstream os;
  os << "hypotheses: R^2 mu0 = " << r * r * mu0 << " >= 2: "
     << (hyp_radius ? "yes" : "no") << "; phi_dot0 = " << phi_dot0
     << " >= sqrt(2 mu0) = " << std::sqrt(2.0 * mu0) << ": "
     << (hyp_velocity ? "yes" : "no") << "\n";
  if (blowup.outcome == BlowupOutcome::blew_up) {
    os << "blow-up detected: t* = " << blowup.t_star << ", bracket ["
       << blowup.bracket_lo << ", " << blowup.bracket_hi << "], analytic bound "
       << t_bound << ", R = " << r << "\n";
    if (applicable)
      os << "bound t* <= min(t_bound, R): " << (bound_satisfied ? "satisfied" : "VIOLATED")
         << "\n";
    else
      os << "hypotheses fail, no bound asserted\n";
  } else {
    os << "no blow-up within the step budget (inconclusive)\n";
  }
  return os.str();
}

}  // namespace nvlasov
