#include "nvlasov/scenario.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "nvlasov/blowup3d.hpp"
#include "nvlasov/kernels3d.hpp"
#include "nvlasov/snapshot.hpp"

namespace nvlasov {

namespace fs = std::filesystem;

const char* version_string() { return "0.1.0"; }

SimState initial_state_from_config(const SimConfig& cfg) {
  const Axis xa = cfg.x_axis();
  const Axis pa = cfg.p_axis();
  PhaseGrid f0 = fill_phase_grid(xa, pa, make_f_function(cfg.f_data));
  FieldState1D field0 =
      make_field_state(xa, make_wave_data(cfg.phi0_data, cfg.phi1_data), cfg.sign);
  return make_sim_state(std::move(f0), std::move(field0), cfg.solver);
}

namespace {

std::string snapshot_name(int step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snapshot_%06d.txt", step);
  return buf;
}

void write_manifest(const SimConfig& cfg, const fs::path& dir, double wall_seconds,
                    const std::string& note) {
  std::ofstream os(dir / "manifest.txt");
  os << "nvlasov " << version_string() << "\n";
  os << "wall_time_seconds = " << wall_seconds << "\n";
  if (!note.empty()) os << "note = " << note << "\n";
  os << "--- config ---\n" << serialize_config(cfg);
}

ScenarioResult do_solve1d(const SimConfig& cfg, const fs::path& dir) {
  SimState st = initial_state_from_config(cfg);
  auto on_snapshot = [&](const SimState& s) {
    write_snapshot(s, (dir / snapshot_name(s.step)).string());
  };
  RunResult res = run(std::move(st), cfg.t_final, cfg.solver, cfg.snapshot_every,
                      cfg.snapshot_every > 0 ? on_snapshot : std::function<void(const SimState&)>{});
  write_diagnostics_csv(res.records, (dir / "diagnostics.csv").string());
  write_snapshot(res.final_state, (dir / "final.txt").string());
  if (res.aborted)
    return {2, "run aborted: " + res.abort_reason + " (last valid state in " +
                   (dir / "final.txt").string() + ")"};
  return {0, "completed " + std::to_string(res.final_state.step) + " steps"};
}

ScenarioResult do_picard1d(const SimConfig& cfg, const fs::path& dir) {
  const Axis xa = cfg.x_axis();
  const Axis pa = cfg.p_axis();
  PhaseGrid f0 = fill_phase_grid(xa, pa, make_f_function(cfg.f_data));
  FieldState1D field0 =
      make_field_state(xa, make_wave_data(cfg.phi0_data, cfg.phi1_data), cfg.sign);
  PicardResult res =
      picard_solve(f0, field0, cfg.t_final, cfg.picard_tol, cfg.picard_max_iter, cfg.solver);

  std::ofstream os(dir / "picard_report.csv");
  os << "iteration,delta_f,delta_phi,delta_dphi,total\n";
  for (size_t k = 0; k < res.report.deltas.size(); ++k) {
    const auto& d = res.report.deltas[k];
    os << (k + 1) << "," << format_double(d.df) << "," << format_double(d.dphi) << ","
       << format_double(d.ddphi) << "," << format_double(d.total()) << "\n";
  }
  os << "# converged = " << (res.report.converged ? 1 : 0)
     << ", diverged = " << (res.report.diverged ? 1 : 0) << "\n";
  if (res.report.diverged) return {0, "iteration diverged (reported, see picard_report.csv)"};
  return {0, "converged = " + std::to_string(res.report.converged) + " after " +
                 std::to_string(res.report.iterations) + " iterations"};
}

ScenarioResult do_blowup(const SimConfig& cfg, const fs::path& dir) {
  MomentumProfile prof = make_bump_profile(cfg.bu_p0, 1.0, cfg.bu_quad_n);
  normalize_to_mu0(prof, cfg.bu_mu0);

  HomogeneousControls controls;
  controls.dt_base = cfg.bu_dt;
  controls.phi_max = cfg.bu_phi_max;
  controls.max_steps = cfg.bu_max_steps;
  const Theorem2Report rep = verify_theorem2(cfg.bu_r, prof, cfg.bu_phi0, cfg.bu_phidot0, controls);

  {
    std::ofstream os(dir / "blowup_report.txt");
    os << rep.summary();
  }
  {
    std::ofstream os(dir / "blowup_report.csv");
    os << "mu0,phi0,phidot0,R,hyp_radius,hyp_velocity,applicable,t_bound,"
          "t_star,bracket_lo,bracket_hi,steps,bound_satisfied\n";
    os << format_double(rep.mu0) << "," << format_double(rep.phi0) << ","
       << format_double(rep.phi_dot0) << "," << format_double(rep.r) << ","
       << rep.hyp_radius << "," << rep.hyp_velocity << "," << rep.applicable << ","
       << format_double(rep.t_bound) << "," << format_double(rep.blowup.t_star) << ","
       << format_double(rep.blowup.bracket_lo) << ","
       << format_double(rep.blowup.bracket_hi) << "," << rep.blowup.steps << ","
       << rep.bound_satisfied << "\n";
  }
  if (rep.applicable && !rep.bound_satisfied)
    return {3, "blow-up bound violated, see blowup_report.txt"};
  return {0, rep.applicable ? "bound satisfied" : "hypotheses not satisfied, no assertion"};
}

ScenarioResult do_kernelcheck(const SimConfig& cfg, const fs::path& dir) {
  const KernelSweepResult sweep =
      kernel_property_sweep(cfg.kc_seed, cfg.kc_samples, cfg.kc_p_max);

  const Vec3 momenta[] = {{0.5, 0.0, 0.0}, {0.0, 0.0, 2.0}, {1.0, 1.0, 1.0}};
  double max_avg = 0.0;
  for (const Vec3& p : momenta) {
    const auto integral = sphere_average(
        [&p](const Vec3& omega) { return phi_tt_kernel({omega, p}); }, 64);
    max_avg = std::max(max_avg, std::fabs(integral.value));
  }

  std::ofstream os(dir / "kernelcheck.csv");
  os << "check,value\n";
  os << "samples," << sweep.samples << "\n";
  os << "seed," << cfg.kc_seed << "\n";
  os << "inequality_violations," << sweep.inequality_violations << "\n";
  os << "max_rel_err_a_phit," << format_double(sweep.max_rel_err_a_phit) << "\n";
  os << "max_rel_err_a_phix," << format_double(sweep.max_rel_err_a_phix) << "\n";
  os << "max_rel_err_b_phix," << format_double(sweep.max_rel_err_b_phix) << "\n";
  os << "max_rel_err_c_phix," << format_double(sweep.max_rel_err_c_phix) << "\n";
  os << "max_ratio_a_phit," << format_double(sweep.max_ratio_a) << "\n";
  os << "max_ratio_b_phit," << format_double(sweep.max_ratio_b) << "\n";
  os << "max_ratio_c_phit," << format_double(sweep.max_ratio_c) << "\n";
  os << "max_ratio_a_phix," << format_double(sweep.max_ratio_a_phix) << "\n";
  os << "max_ratio_b_phix," << format_double(sweep.max_ratio_b_phix) << "\n";
  os << "max_abs_sphere_avg_a_phitt," << format_double(max_avg) << "\n";

  const bool violated = sweep.inequality_violations > 0 ||
                        sweep.max_rel_err_a_phit > 1e-13 ||
                        sweep.max_rel_err_a_phix > 1e-13 ||
                        sweep.max_rel_err_b_phix > 1e-13 ||
                        sweep.max_rel_err_c_phix > 1e-13 || max_avg > 1e-8;
  if (violated) return {3, "kernel property violation, see kernelcheck.csv"};
  return {0, "all kernel properties hold on " + std::to_string(sweep.samples) + " samples"};
}

}  // namespace

ScenarioResult run_scenario(const SimConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  fs::path dir;
  ScenarioResult res;
  try {
    dir = fs::path(cfg.out_dir);
    fs::create_directories(dir);
    switch (cfg.mode) {
      case RunMode::solve1d: res = do_solve1d(cfg, dir); break;
      case RunMode::picard1d: res = do_picard1d(cfg, dir); break;
      case RunMode::blowup3d: res = do_blowup(cfg, dir); break;
      case RunMode::kernelcheck: res = do_kernelcheck(cfg, dir); break;
    }
  } catch (const ConfigError& e) {
    res = {1, e.what()};
  } catch (const SolverAbort& e) {
    res = {2, e.what()};
  } catch (const std::exception& e) {
    res = {2, std::string("runtime error: ") + e.what()};
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!dir.empty() && fs::exists(dir)) write_manifest(cfg, dir, wall, res.message);
  return res;
}

}  // namespace nvlasov
