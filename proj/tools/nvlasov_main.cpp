// Command line front end: scenario runs, the seeded kernel property sweep and
// the homogeneous blow-up check.
//
// Exit codes: 0 success, 1 configuration error, 2 runtime abort, 3 property
// violation detected.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nvlasov/scenario.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw nvlasov::ConfigError("cannot open config file: " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

// NVLASOV_OUTDIR overrides output.dir from the environment
void apply_outdir_override(nvlasov::SimConfig& cfg, const std::string& cli_override) {
  if (!cli_override.empty()) {
    cfg.out_dir = cli_override;
    return;
  }
  if (const char* env = std::getenv("NVLASOV_OUTDIR"); env && *env) cfg.out_dir = env;
}

int finish(const nvlasov::ScenarioResult& res) {
  if (res.exit_code == 0)
    std::cout << res.message << "\n";
  else
    std::cerr << res.message << "\n";
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nvlasov: kinetic scalar-gravity toolkit (1D solver, homogeneous "
               "blow-up check, lightcone kernel suite)"};
  app.require_subcommand(1);

  std::string config_path, out_override;
  auto* run_cmd = app.add_subcommand("run", "run a scenario from a config file");
  run_cmd->add_option("config", config_path, "key = value config file")->required();
  run_cmd->add_option("--out", out_override, "override output.dir");

  uint64_t seed = 12345;
  long samples = 1000000;
  double p_max = 1e3;
  auto* kern_cmd = app.add_subcommand("check-kernels", "seeded kernel property sweep");
  kern_cmd->add_option("--seed", seed, "rng seed");
  kern_cmd->add_option("--samples", samples, "number of (omega, p) samples");
  kern_cmd->add_option("--p-max", p_max, "largest |p| sampled");
  kern_cmd->add_option("--out", out_override, "output directory");

  double mu0 = 2.0, phidot0 = 2.0, radius = 1.0, phi0 = 0.0;
  auto* blow_cmd = app.add_subcommand("verify-blowup", "homogeneous repulsive blow-up check");
  blow_cmd->add_option("--mu0", mu0, "target mu(0), profile amplitude normalized to it");
  blow_cmd->add_option("--phidot0", phidot0, "initial dphi/dt");
  blow_cmd->add_option("--R", radius, "homogeneity radius R");
  blow_cmd->add_option("--phi0", phi0, "initial phi");
  blow_cmd->add_option("--out", out_override, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    nvlasov::SimConfig cfg;
    if (run_cmd->parsed()) {
      cfg = nvlasov::parse_config(read_file(config_path));
    } else if (kern_cmd->parsed()) {
      cfg.mode = nvlasov::RunMode::kernelcheck;
      cfg.kc_seed = seed;
      cfg.kc_samples = samples;
      cfg.kc_p_max = p_max;
      cfg.out_dir = "out";
    } else {
      cfg.mode = nvlasov::RunMode::blowup3d;
      cfg.bu_mu0 = mu0;
      cfg.bu_phidot0 = phidot0;
      cfg.bu_r = radius;
      cfg.bu_phi0 = phi0;
      cfg.out_dir = "out";
    }
    apply_outdir_override(cfg, out_override);
    return finish(nvlasov::run_scenario(cfg));
  } catch (const nvlasov::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
