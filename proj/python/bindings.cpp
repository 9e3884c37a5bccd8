#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nvlasov/blowup3d.hpp"
#include "nvlasov/characteristics.hpp"
#include "nvlasov/kernels3d.hpp"
#include "nvlasov/scenario.hpp"
#include "nvlasov/snapshot.hpp"

namespace py = pybind11;
using namespace nvlasov;

namespace {

PhaseGrid grid_from_array(py::array_t<double, py::array::c_style | py::array::forcecast> f,
                          double x_min, double x_max, double p_min, double p_max) {
  const auto buf = f.request();
  if (buf.ndim != 2) throw std::invalid_argument("f must be a 2D array (x outer, p inner)");
  PhaseGrid g(Axis(x_min, x_max, static_cast<int>(buf.shape[0]) - 1),
              Axis(p_min, p_max, static_cast<int>(buf.shape[1]) - 1));
  const double* src = static_cast<const double*>(buf.ptr);
  std::copy(src, src + buf.size, g.f.begin());
  g.rescan_support();
  return g;
}

py::dict record_to_dict(const DiagnosticsRecord& r) {
  py::dict d;
  d["t"] = r.t;
  d["total_energy"] = r.total_energy;
  d["field_energy"] = r.field_energy;
  d["kinetic_energy"] = r.kinetic_energy;
  d["rest_mass"] = r.rest_mass;
  d["P_sup"] = r.p_sup;
  d["Q_sup"] = r.q_sup;
  d["Lambda"] = r.lambda;
  d["f_sup"] = r.f_sup;
  d["mu_sup"] = r.mu_sup;
  d["energy_residual_sup"] = r.energy_residual_sup;
  d["mu_bound_slack"] = r.mu_bound_slack;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "kinetic scalar-gravity toolkit: 1D solver, homogeneous blow-up "
            "integrator and lightcone representation kernels";

  // kernels
  m.def("vm_kernels", [](Vec3 omega, Vec3 p) {
    const VmKernels k = vm_kernels({omega, p});
    return py::make_tuple(k.a_e, k.a_e_tilde, k.a_b, k.a_b_tilde);
  }, py::arg("omega"), py::arg("p"),
     "field kernels (a^E, a~^E, a^B, a~^B) at a unit direction and momentum");

  m.def("phi_t_kernels", [](Vec3 omega, Vec3 p) {
    const PhiTKernels k = phi_t_kernels({omega, p});
    return py::make_tuple(k.a, k.b, k.c);
  }, py::arg("omega"), py::arg("p"));

  m.def("phi_x_kernels", [](Vec3 omega, Vec3 p) {
    const PhiXKernels k = phi_x_kernels({omega, p});
    return py::make_tuple(k.a, k.b, std::vector<Vec3>{k.c[0], k.c[1], k.c[2]});
  }, py::arg("omega"), py::arg("p"));

  m.def("phi_tt_kernel", [](Vec3 omega, Vec3 p) { return phi_tt_kernel({omega, p}); },
        py::arg("omega"), py::arg("p"));

  m.def("momentum_inequalities", [](Vec3 omega, Vec3 p) {
    const MomentumInequalities r = momentum_inequalities({omega, p});
    return py::make_tuple(r.lhs1, r.rhs1, r.lhs2, r.rhs2, r.both_hold);
  }, py::arg("omega"), py::arg("p"));

  m.def("sphere_average_phi_tt", [](Vec3 p, int order) {
    const auto r = sphere_average(
        [&p](const Vec3& omega) { return phi_tt_kernel({omega, p}); }, order);
    return py::make_tuple(r.value, r.error_estimate);
  }, py::arg("p"), py::arg("order") = 64,
     "sphere integral of the second-derivative kernel (zero for every p)");

  m.def("kernel_property_sweep", [](uint64_t seed, long samples, double p_max) {
    const KernelSweepResult r = kernel_property_sweep(seed, samples, p_max);
    py::dict d;
    d["samples"] = r.samples;
    d["inequality_violations"] = r.inequality_violations;
    d["max_rel_err_a_phit"] = r.max_rel_err_a_phit;
    d["max_rel_err_a_phix"] = r.max_rel_err_a_phix;
    d["max_ratio_a_phit"] = r.max_ratio_a;
    d["max_ratio_b_phit"] = r.max_ratio_b;
    d["max_ratio_c_phit"] = r.max_ratio_c;
    return d;
  }, py::arg("seed") = 12345, py::arg("samples") = 100000, py::arg("p_max") = 1e3);

  // characteristics
  m.def("transport_factor", &transport_factor, py::arg("phi_end"), py::arg("phi_start"),
        py::arg("dim"), "exp[(1+N)(phi_end - phi_start)]");

  m.def("trace_backward_1d",
        [](double t_end, double t_start, double x, double p,
           const std::function<std::tuple<double, double, double>(double, double)>& field,
           int substeps, int order) {
          AnalyticField<1> sampler;
          sampler.eval = [&field](double t, const Vec1& xq) {
            const auto [phi, dtphi, dxphi] = field(t, xq[0]);
            FieldSample<1> s;
            s.phi = phi;
            s.dt_phi = dtphi;
            s.grad[0] = dxphi;
            return s;
          };
          const CharPoint<1> r =
              trace_backward(t_end, t_start, CharPoint<1>{{x}, {p}}, sampler, substeps, order);
          return py::make_tuple(r.x[0], r.p[0]);
        },
        py::arg("t_end"), py::arg("t_start"), py::arg("x"), py::arg("p"), py::arg("field"),
        py::arg("substeps") = 64, py::arg("order") = 4,
        "trace a 1D characteristic backward against field(t, x) -> (phi, dt_phi, dx_phi)");

  // solver / diagnostics on array data
  m.def("compute_mu",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> f, double x_min,
           double x_max, double p_min, double p_max) {
          return compute_mu(grid_from_array(f, x_min, x_max, p_min, p_max));
        },
        py::arg("f"), py::arg("x_min"), py::arg("x_max"), py::arg("p_min"), py::arg("p_max"));

  // blow-up
  m.def("mu_of_delta", [](double p0, double amplitude, int resolution, double delta) {
    return mu_of_delta(make_bump_profile(p0, amplitude, resolution), delta);
  }, py::arg("p0"), py::arg("amplitude"), py::arg("resolution"), py::arg("delta"));

  m.def("verify_blowup", [](double mu0, double phidot0, double radius, double phi0) {
    MomentumProfile prof = make_bump_profile(1.0, 1.0, 2048);
    normalize_to_mu0(prof, mu0);
    const Theorem2Report rep = verify_theorem2(radius, prof, phi0, phidot0);
    py::dict d;
    d["mu0"] = rep.mu0;
    d["applicable"] = rep.applicable;
    d["hyp_radius"] = rep.hyp_radius;
    d["hyp_velocity"] = rep.hyp_velocity;
    d["t_bound"] = rep.t_bound;
    d["blew_up"] = rep.blowup.outcome == BlowupOutcome::blew_up;
    d["t_star"] = rep.blowup.t_star;
    d["bracket_lo"] = rep.blowup.bracket_lo;
    d["bracket_hi"] = rep.blowup.bracket_hi;
    d["bound_satisfied"] = rep.bound_satisfied;
    d["summary"] = rep.summary();
    return d;
  }, py::arg("mu0") = 2.0, py::arg("phidot0") = 2.0, py::arg("radius") = 1.0,
     py::arg("phi0") = 0.0);

  // scenario front end
  m.def("parse_config", [](const std::string& text) {
    parse_config(text);  // throws ConfigError on invalid input
    return true;
  }, py::arg("text"), "validate a config document");

  m.def("run_config_text", [](const std::string& text) {
    const SimConfig cfg = parse_config(text);
    const ScenarioResult res = run_scenario(cfg);
    py::dict d;
    d["exit_code"] = res.exit_code;
    d["message"] = res.message;
    d["out_dir"] = cfg.out_dir;
    return d;
  }, py::arg("text"), "parse and run a scenario; artifacts land in output.dir");

  m.def("free_dalembert_standing_wave", [](double t, double x) {
    const auto d = make_wave_data({FieldDataSpec::Family::sine, 1.0, 1.0, 0.0, 1.0},
                                  {FieldDataSpec::Family::zero, 0.0, 1.0, 0.0, 1.0});
    const FieldSample<1> s = free_dalembert(d, t, x);
    return py::make_tuple(s.phi, s.dt_phi, s.grad[0]);
  }, py::arg("t"), py::arg("x"),
     "free wave solution for sin(x) initial data, (phi, dt_phi, dx_phi)");

#ifdef NVLASOV_VERSION
  m.attr("__version__") = NVLASOV_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
