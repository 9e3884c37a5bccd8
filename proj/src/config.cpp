#include "nvlasov/config.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

namespace nvlasov {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

struct KeyTable {
  std::map<std::string, std::string> kv;
  std::map<std::string, bool> used;
  std::vector<std::string> errors;

  bool has(const std::string& key) {
    used[key] = true;
    return kv.count(key) > 0;
  }

  std::string raw(const std::string& key) { return kv.at(key); }

  double num(const std::string& key, double dflt) {
    used[key] = true;
    auto it = kv.find(key);
    if (it == kv.end()) return dflt;
    try {
      size_t pos = 0;
      const double v = std::stod(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      errors.push_back(key + ": not a number: '" + it->second + "'");
      return dflt;
    }
  }

  long integer(const std::string& key, long dflt) {
    used[key] = true;
    auto it = kv.find(key);
    if (it == kv.end()) return dflt;
    try {
      size_t pos = 0;
      const long v = std::stol(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      errors.push_back(key + ": not an integer: '" + it->second + "'");
      return dflt;
    }
  }

  std::string word(const std::string& key, const std::string& dflt) {
    used[key] = true;
    auto it = kv.find(key);
    return it == kv.end() ? dflt : it->second;
  }
};

FDataSpec parse_f_data(KeyTable& t) {
  FDataSpec s;
  const std::string fam = t.word("init.f.family", "zero");
  if (fam == "zero")
    s.family = FDataSpec::Family::zero;
  else if (fam == "gaussian")
    s.family = FDataSpec::Family::gaussian;
  else if (fam == "box")
    s.family = FDataSpec::Family::box;
  else
    t.errors.push_back("init.f.family: unknown family '" + fam + "'");
  s.x0 = t.num("init.f.x0", 0.0);
  s.p0 = t.num("init.f.p0", 0.0);
  s.sigma_x = t.num("init.f.sigma_x", 0.8);
  s.sigma_p = t.num("init.f.sigma_p", 0.8);
  s.amplitude = t.num("init.f.amplitude", 0.5);
  s.cutoff = t.num("init.f.cutoff", 2.5);
  return s;
}

FieldDataSpec parse_field_data(KeyTable& t, const std::string& prefix) {
  FieldDataSpec s;
  const std::string fam = t.word(prefix + ".family", "zero");
  if (fam == "zero")
    s.family = FieldDataSpec::Family::zero;
  else if (fam == "sine")
    s.family = FieldDataSpec::Family::sine;
  else if (fam == "gaussian")
    s.family = FieldDataSpec::Family::gaussian;
  else
    t.errors.push_back(prefix + ".family: unknown family '" + fam + "'");
  s.amplitude = t.num(prefix + ".amplitude", 0.0);
  s.k = t.num(prefix + ".k", 1.0);
  s.x0 = t.num(prefix + ".x0", 0.0);
  s.sigma = t.num(prefix + ".sigma", 1.0);
  return s;
}

// extent of the x/p support of the data family, for the margin checks
bool f_support_extent(const FDataSpec& s, double* x_lo, double* x_hi,
                      double* p_lo, double* p_hi) {
  switch (s.family) {
    case FDataSpec::Family::zero:
      return false;
    case FDataSpec::Family::gaussian:
      *x_lo = s.x0 - s.cutoff * s.sigma_x;
      *x_hi = s.x0 + s.cutoff * s.sigma_x;
      *p_lo = s.p0 - s.cutoff * s.sigma_p;
      *p_hi = s.p0 + s.cutoff * s.sigma_p;
      return true;
    case FDataSpec::Family::box:
      *x_lo = s.x0 - s.sigma_x;
      *x_hi = s.x0 + s.sigma_x;
      *p_lo = s.p0 - s.sigma_p;
      *p_hi = s.p0 + s.sigma_p;
      return true;
  }
  return false;
}

}  // namespace

SimConfig parse_config(const std::string& text) {
  KeyTable t;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      t.errors.push_back("line " + std::to_string(lineno) + ": expected 'key = value'");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty()) {
      t.errors.push_back("line " + std::to_string(lineno) + ": empty key or value");
      continue;
    }
    if (t.kv.count(key)) t.errors.push_back(key + ": duplicate key");
    t.kv[key] = val;
  }

  SimConfig cfg;
  const std::string mode = t.word("mode", "");
  if (mode == "solve1d")
    cfg.mode = RunMode::solve1d;
  else if (mode == "picard1d")
    cfg.mode = RunMode::picard1d;
  else if (mode == "blowup3d")
    cfg.mode = RunMode::blowup3d;
  else if (mode == "kernelcheck")
    cfg.mode = RunMode::kernelcheck;
  else
    t.errors.push_back("mode: required, one of solve1d|picard1d|blowup3d|kernelcheck");

  const std::string sign = t.word("sign", "attractive");
  if (sign == "attractive")
    cfg.sign = FieldSign::attractive;
  else if (sign == "repulsive")
    cfg.sign = FieldSign::repulsive;
  else
    t.errors.push_back("sign: expected attractive|repulsive");

  cfg.out_dir = t.word("output.dir", "out");
  cfg.snapshot_every = static_cast<int>(t.integer("output.snapshot_every", 0));

  const bool needs_grid = cfg.mode == RunMode::solve1d || cfg.mode == RunMode::picard1d;

  cfg.x_min = t.num("grid.x_min", -8.0);
  cfg.x_max = t.num("grid.x_max", 8.0);
  cfg.nx = static_cast<int>(t.integer("grid.nx", 0));
  cfg.p_min = t.num("grid.p_min", -6.0);
  cfg.p_max = t.num("grid.p_max", 6.0);
  cfg.np = static_cast<int>(t.integer("grid.np", 0));
  cfg.t_final = t.num("time.t_final", 0.0);
  cfg.f_data = parse_f_data(t);
  cfg.phi0_data = parse_field_data(t, "init.phi0");
  cfg.phi1_data = parse_field_data(t, "init.phi1");

  cfg.picard_tol = t.num("picard.tol", 1e-10);
  cfg.picard_max_iter = static_cast<int>(t.integer("picard.max_iter", 25));

  cfg.solver.rk_order = static_cast<int>(t.integer("solver.rk_order", 2));
  cfg.solver.substeps = static_cast<int>(t.integer("solver.substeps", 1));
  cfg.solver.corrector_iters = static_cast<int>(t.integer("solver.corrector_iters", 1));
  const std::string interp = t.word("solver.interp", "cubic");
  if (interp == "cubic")
    cfg.solver.f_interp = cfg.solver.field_interp = InterpOrder::cubic;
  else if (interp == "linear")
    cfg.solver.f_interp = cfg.solver.field_interp = InterpOrder::linear;
  else
    t.errors.push_back("solver.interp: expected cubic|linear");

  cfg.bu_mu0 = t.num("blowup.mu0", 2.0);
  cfg.bu_p0 = t.num("blowup.p0", 1.0);
  cfg.bu_quad_n = static_cast<int>(t.integer("blowup.quad_n", 2048));
  cfg.bu_phi0 = t.num("blowup.phi0", 0.0);
  cfg.bu_phidot0 = t.num("blowup.phidot0", 0.0);
  cfg.bu_r = t.num("blowup.R", 1.0);
  cfg.bu_phi_max = t.num("blowup.phi_max", 1e3);
  cfg.bu_dt = t.num("blowup.dt", 1e-3);
  cfg.bu_max_steps = t.integer("blowup.max_steps", 2000000);

  cfg.kc_seed = static_cast<uint64_t>(t.integer("kernel.seed", 12345));
  cfg.kc_samples = t.integer("kernel.samples", 1000000);
  cfg.kc_p_max = t.num("kernel.p_max", 1e3);

  // invariants
  if (needs_grid) {
    if (cfg.nx < 8) t.errors.push_back("grid.nx: must be >= 8");
    if (cfg.np < 8) t.errors.push_back("grid.np: must be >= 8");
    if (!(cfg.x_max > cfg.x_min)) t.errors.push_back("grid.x_max: must exceed grid.x_min");
    if (!(cfg.p_max > cfg.p_min)) t.errors.push_back("grid.p_max: must exceed grid.p_min");
    if (!(cfg.t_final > 0.0)) t.errors.push_back("time.t_final: must be > 0");

    if (cfg.nx >= 8 && cfg.x_max > cfg.x_min) {
      const double dx = (cfg.x_max - cfg.x_min) / cfg.nx;
      if (t.has("time.dt")) {
        const double dt = t.num("time.dt", dx);
        if (dt != dx) {
          std::ostringstream os;
          os.precision(17);
          os << "time.dt: must equal (x_max - x_min)/nx exactly; got " << dt
             << ", lattice spacing is " << dx;
          t.errors.push_back(os.str());
        }
        cfg.dt = dx;
      } else {
        cfg.dt = dx;
      }

      // compact support inside the grid with a 2-cell margin, and the forward
      // lightcone of supp f^in inside the grid so free boundary inflow is exact
      double xs_lo, xs_hi, ps_lo, ps_hi;
      if (f_support_extent(cfg.f_data, &xs_lo, &xs_hi, &ps_lo, &ps_hi) &&
          cfg.np >= 8 && cfg.p_max > cfg.p_min) {
        const double dp = (cfg.p_max - cfg.p_min) / cfg.np;
        if (xs_lo < cfg.x_min + 2 * dx || xs_hi > cfg.x_max - 2 * dx)
          t.errors.push_back("init.f: x-support must stay >= 2 cells inside the grid");
        if (ps_lo < cfg.p_min + 2 * dp || ps_hi > cfg.p_max - 2 * dp)
          t.errors.push_back("init.f: p-support must stay >= 2 cells inside the grid");
        if (xs_lo - cfg.t_final < cfg.x_min + 2 * dx ||
            xs_hi + cfg.t_final > cfg.x_max - 2 * dx)
          t.errors.push_back(
              "grid: domain too small, the lightcone of supp f^in over t_final must stay"
              " >= 2 cells inside [x_min, x_max]");
      }
    }
  } else {
    cfg.dt = 0.0;
  }
  if (cfg.mode == RunMode::picard1d) {
    if (!(cfg.picard_tol > 0.0)) t.errors.push_back("picard.tol: must be > 0");
    if (cfg.picard_max_iter < 1) t.errors.push_back("picard.max_iter: must be >= 1");
  }
  if (cfg.mode == RunMode::blowup3d) {
    if (!(cfg.bu_mu0 > 0.0)) t.errors.push_back("blowup.mu0: must be > 0");
    if (!(cfg.bu_p0 > 0.0)) t.errors.push_back("blowup.p0: must be > 0");
    if (cfg.bu_quad_n < 16) t.errors.push_back("blowup.quad_n: must be >= 16");
    if (!(cfg.bu_dt > 0.0)) t.errors.push_back("blowup.dt: must be > 0");
  }
  if (cfg.mode == RunMode::kernelcheck) {
    if (cfg.kc_samples < 1) t.errors.push_back("kernel.samples: must be >= 1");
    if (!(cfg.kc_p_max > 0.0)) t.errors.push_back("kernel.p_max: must be > 0");
  }
  if (cfg.solver.rk_order != 2 && cfg.solver.rk_order != 4)
    t.errors.push_back("solver.rk_order: must be 2 or 4");
  if (cfg.solver.substeps < 1) t.errors.push_back("solver.substeps: must be >= 1");
  if (cfg.solver.corrector_iters < 0)
    t.errors.push_back("solver.corrector_iters: must be >= 0");
  if (cfg.snapshot_every < 0) t.errors.push_back("output.snapshot_every: must be >= 0");

  for (const auto& [key, val] : t.kv)
    if (!t.used.count(key)) t.errors.push_back(key + ": unknown key");

  if (!t.errors.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& e : t.errors) msg += "\n  " + e;
    throw ConfigError(msg);
  }
  return cfg;
}

std::string serialize_config(const SimConfig& cfg) {
  std::ostringstream os;
  os.precision(17);
  auto mode_name = [](RunMode m) {
    switch (m) {
      case RunMode::solve1d: return "solve1d";
      case RunMode::picard1d: return "picard1d";
      case RunMode::blowup3d: return "blowup3d";
      case RunMode::kernelcheck: return "kernelcheck";
    }
    return "solve1d";
  };
  os << "mode = " << mode_name(cfg.mode) << "\n";
  os << "sign = " << (cfg.sign == FieldSign::attractive ? "attractive" : "repulsive") << "\n";
  os << "output.dir = " << cfg.out_dir << "\n";
  os << "output.snapshot_every = " << cfg.snapshot_every << "\n";
  if (cfg.mode == RunMode::solve1d || cfg.mode == RunMode::picard1d) {
    os << "grid.x_min = " << cfg.x_min << "\n";
    os << "grid.x_max = " << cfg.x_max << "\n";
    os << "grid.nx = " << cfg.nx << "\n";
    os << "grid.p_min = " << cfg.p_min << "\n";
    os << "grid.p_max = " << cfg.p_max << "\n";
    os << "grid.np = " << cfg.np << "\n";
    os << "time.t_final = " << cfg.t_final << "\n";
    os << "time.dt = " << cfg.dt << "\n";
    auto f_fam = [](FDataSpec::Family f) {
      switch (f) {
        case FDataSpec::Family::zero: return "zero";
        case FDataSpec::Family::gaussian: return "gaussian";
        case FDataSpec::Family::box: return "box";
      }
      return "zero";
    };
    os << "init.f.family = " << f_fam(cfg.f_data.family) << "\n";
    os << "init.f.x0 = " << cfg.f_data.x0 << "\n";
    os << "init.f.p0 = " << cfg.f_data.p0 << "\n";
    os << "init.f.sigma_x = " << cfg.f_data.sigma_x << "\n";
    os << "init.f.sigma_p = " << cfg.f_data.sigma_p << "\n";
    os << "init.f.amplitude = " << cfg.f_data.amplitude << "\n";
    os << "init.f.cutoff = " << cfg.f_data.cutoff << "\n";
    auto w_fam = [](FieldDataSpec::Family f) {
      switch (f) {
        case FieldDataSpec::Family::zero: return "zero";
        case FieldDataSpec::Family::sine: return "sine";
        case FieldDataSpec::Family::gaussian: return "gaussian";
      }
      return "zero";
    };
    for (const auto* pair : {&cfg.phi0_data, &cfg.phi1_data}) {
      const std::string pfx = pair == &cfg.phi0_data ? "init.phi0" : "init.phi1";
      os << pfx << ".family = " << w_fam(pair->family) << "\n";
      os << pfx << ".amplitude = " << pair->amplitude << "\n";
      os << pfx << ".k = " << pair->k << "\n";
      os << pfx << ".x0 = " << pair->x0 << "\n";
      os << pfx << ".sigma = " << pair->sigma << "\n";
    }
    os << "solver.rk_order = " << cfg.solver.rk_order << "\n";
    os << "solver.substeps = " << cfg.solver.substeps << "\n";
    os << "solver.corrector_iters = " << cfg.solver.corrector_iters << "\n";
    os << "solver.interp = "
       << (cfg.solver.f_interp == InterpOrder::cubic ? "cubic" : "linear") << "\n";
  }
  if (cfg.mode == RunMode::picard1d) {
    os << "picard.tol = " << cfg.picard_tol << "\n";
    os << "picard.max_iter = " << cfg.picard_max_iter << "\n";
  }
  if (cfg.mode == RunMode::blowup3d) {
    os << "blowup.mu0 = " << cfg.bu_mu0 << "\n";
    os << "blowup.p0 = " << cfg.bu_p0 << "\n";
    os << "blowup.quad_n = " << cfg.bu_quad_n << "\n";
    os << "blowup.phi0 = " << cfg.bu_phi0 << "\n";
    os << "blowup.phidot0 = " << cfg.bu_phidot0 << "\n";
    os << "blowup.R = " << cfg.bu_r << "\n";
    os << "blowup.phi_max = " << cfg.bu_phi_max << "\n";
    os << "blowup.dt = " << cfg.bu_dt << "\n";
    os << "blowup.max_steps = " << cfg.bu_max_steps << "\n";
  }
  if (cfg.mode == RunMode::kernelcheck) {
    os << "kernel.seed = " << cfg.kc_seed << "\n";
    os << "kernel.samples = " << cfg.kc_samples << "\n";
    os << "kernel.p_max = " << cfg.kc_p_max << "\n";
  }
  return os.str();
}

}  // namespace nvlasov
