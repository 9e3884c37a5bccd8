#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nvlasov/config.hpp"
#include "nvlasov/scenario.hpp"
#include "nvlasov/snapshot.hpp"

using namespace nvlasov;

namespace {

std::string minimal_solve1d() {
  return "mode = solve1d\n"
         "grid.nx = 64\n"
         "grid.np = 32\n"
         "time.t_final = 1.0\n"
         "init.f.family = gaussian\n";
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& name) {
    path = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("minimal solve1d config resolves the magic timestep") {
  const SimConfig cfg = parse_config(minimal_solve1d());
  CHECK(cfg.mode == RunMode::solve1d);
  CHECK(cfg.dt == (cfg.x_max - cfg.x_min) / cfg.nx);
  CHECK(cfg.sign == FieldSign::attractive);
  CHECK(cfg.solver.corrector_iters == 1);
}

TEST_CASE("config round-trips through its canonical text form") {
  const SimConfig cfg = parse_config(minimal_solve1d());
  const std::string text = serialize_config(cfg);
  const SimConfig again = parse_config(text);
  CHECK(serialize_config(again) == text);

  SimConfig bu;
  bu.mode = RunMode::blowup3d;
  bu.bu_mu0 = 8.0;
  bu.bu_phidot0 = 4.0;
  bu.bu_r = 0.5;
  const std::string bu_text = serialize_config(bu);
  CHECK(serialize_config(parse_config(bu_text)) == bu_text);
}

TEST_CASE("mismatched dt is rejected naming both values") {
  std::string doc = minimal_solve1d() + "time.dt = 0.1\n";
  try {
    parse_config(doc);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("time.dt") != std::string::npos);
    CHECK(msg.find("0.1") != std::string::npos);
    CHECK(msg.find("0.25") != std::string::npos);  // (8 - (-8))/64
  }
}

TEST_CASE("unknown keys are rejected by name") {
  try {
    parse_config(minimal_solve1d() + "grid.nz = 4\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("grid.nz: unknown key") != std::string::npos);
  }
}

TEST_CASE("invariant violations carry their key paths") {
  try {
    parse_config("mode = solve1d\ngrid.nx = 4\ngrid.np = 32\ntime.t_final = -1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("grid.nx") != std::string::npos);
    CHECK(msg.find("time.t_final") != std::string::npos);
  }
}

TEST_CASE("support and lightcone margins are checked at parse time") {
  // support fits but its lightcone over t_final does not
  std::string doc =
      "mode = solve1d\n"
      "grid.x_min = -4\ngrid.x_max = 4\ngrid.nx = 64\n"
      "grid.np = 32\n"
      "time.t_final = 3.0\n"
      "init.f.family = gaussian\n"
      "init.f.sigma_x = 0.8\ninit.f.cutoff = 2.5\n";
  CHECK_THROWS_AS(parse_config(doc), ConfigError);
}

TEST_CASE("snapshot write/read round trip is bit exact") {
  const Axis xa(-1.0, 1.0, 8), pa(-2.0, 2.0, 8);
  PhaseGrid f(xa, pa);
  f.at(4, 4) = 0.1234567890123456789;
  f.at(3, 5) = 1e-17;
  f.rescan_support();
  SimState st = make_sim_state(std::move(f), make_field_state(xa, zero_wave_data(), FieldSign::attractive),
                               SolverOptions{});
  st.field.phi[2] = -0.333333333333333314829616256247;
  st.field.u[7] = 3.0000000000000004;
  st.t = 0.7071067811865476;

  std::ostringstream os;
  write_snapshot(st, os);
  std::istringstream is(os.str());
  const Snapshot snap = read_snapshot(is);

  CHECK(snap.t == st.t);
  for (int i = 0; i < xa.nodes(); ++i) {
    CHECK(snap.phi[i] == st.field.phi[i]);
    CHECK(snap.u[i] == st.field.u[i]);
    CHECK(snap.v[i] == st.field.v[i]);
    for (int j = 0; j < pa.nodes(); ++j) CHECK(snap.f.at(i, j) == st.f.at(i, j));
  }
}

TEST_CASE("zero-state snapshot has the exact expected bytes") {
  const Axis xa(0.0, 1.0, 2), pa(0.0, 1.0, 2);
  SimState st;
  st.t = 0.0;
  st.f = PhaseGrid(xa, pa);
  st.field = make_field_state(xa, zero_wave_data(), FieldSign::attractive);

  std::ostringstream os;
  write_snapshot(st, os);
  const std::string expected =
      "nvlasov-snapshot 1\n"
      "t = 0\n"
      "grid = 0 1 2 0 1 2\n"
      "f:\n"
      "0,0,0\n0,0,0\n0,0,0\n"
      "phi:\n0,0,0\n"
      "u:\n0,0,0\n"
      "v:\n0,0,0\n";
  CHECK(os.str() == expected);
  CHECK(os.str().size() == expected.size());
}

TEST_CASE("diagnostics CSV is deterministic") {
  DiagnosticsRecord r;
  r.t = 0.1;
  r.total_energy = 1.0 / 3.0;
  r.lambda = 2.7182818284590452;
  CHECK(diagnostics_csv_row(r) == diagnostics_csv_row(r));
  CHECK(diagnostics_csv_header().find("Lambda") != std::string::npos);
}

TEST_CASE("run_scenario: zero data writes all-zero diagnostics") {
  TempDir dir("nvlasov_test_zero_run");
  SimConfig cfg = parse_config(
      "mode = solve1d\ngrid.nx = 32\ngrid.np = 16\ntime.t_final = 0.5\n"
      "init.f.family = zero\n");
  cfg.out_dir = (dir.path / "out").string();
  const ScenarioResult res = run_scenario(cfg);
  CHECK(res.exit_code == 0);

  std::ifstream is(dir.path / "out" / "diagnostics.csv");
  std::string line;
  std::getline(is, line);  // header
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    // every column after t is zero
    const auto comma = line.find(',');
    CHECK(line.substr(comma) == ",0,0,0,0,0,0,0,0,0,0,0");
  }
  CHECK(rows == 33);  // level 0 plus 32 steps
  CHECK(std::filesystem::exists(dir.path / "out" / "manifest.txt"));
}

TEST_CASE("run_scenario reruns are byte-identical") {
  TempDir dir("nvlasov_test_determinism");
  SimConfig cfg = parse_config(
      "mode = solve1d\ngrid.nx = 32\ngrid.np = 16\ntime.t_final = 0.25\n"
      "init.f.family = gaussian\ninit.f.sigma_x = 0.4\ninit.f.sigma_p = 0.4\n"
      "init.f.cutoff = 2\noutput.snapshot_every = 4\n");
  cfg.out_dir = (dir.path / "a").string();
  CHECK(run_scenario(cfg).exit_code == 0);
  cfg.out_dir = (dir.path / "b").string();
  CHECK(run_scenario(cfg).exit_code == 0);
  CHECK(slurp(dir.path / "a" / "diagnostics.csv") == slurp(dir.path / "b" / "diagnostics.csv"));
  CHECK(slurp(dir.path / "a" / "snapshot_000008.txt") ==
        slurp(dir.path / "b" / "snapshot_000008.txt"));

  // seeded kernel sweep, same contract
  SimConfig kc;
  kc.mode = RunMode::kernelcheck;
  kc.kc_seed = 7;
  kc.kc_samples = 20000;
  kc.out_dir = (dir.path / "k1").string();
  CHECK(run_scenario(kc).exit_code == 0);
  kc.out_dir = (dir.path / "k2").string();
  CHECK(run_scenario(kc).exit_code == 0);
  CHECK(slurp(dir.path / "k1" / "kernelcheck.csv") == slurp(dir.path / "k2" / "kernelcheck.csv"));
}

TEST_CASE("run_scenario: blow-up instance report asserts the bound") {
  TempDir dir("nvlasov_test_blowup_run");
  SimConfig cfg;
  cfg.mode = RunMode::blowup3d;
  cfg.bu_mu0 = 2.0;
  cfg.bu_phidot0 = 2.0;
  cfg.bu_r = 1.0;
  cfg.out_dir = (dir.path / "out").string();
  const ScenarioResult res = run_scenario(cfg);
  CHECK(res.exit_code == 0);
  const std::string report = slurp(dir.path / "out" / "blowup_report.txt");
  CHECK(report.find("satisfied") != std::string::npos);

  // profile normalization puts mu(0) within 1e-10 of the target
  const std::string csv = slurp(dir.path / "out" / "blowup_report.csv");
  CHECK(csv.find("\n2,") != std::string::npos);
}
