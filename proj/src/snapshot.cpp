#include "nvlasov/snapshot.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nvlasov {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void write_array_line(std::ostream& os, const std::vector<double>& a) {
  for (size_t i = 0; i < a.size(); ++i)
    os << (i ? "," : "") << format_double(a[i]);
  os << "\n";
}

std::vector<double> parse_csv_line(const std::string& line) {
  std::vector<double> out;
  std::istringstream is(line);
  std::string tok;
  while (std::getline(is, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

}  // namespace

void write_snapshot(const SimState& state, std::ostream& os) {
  const PhaseGrid& g = state.f;
  os << "nvlasov-snapshot 1\n";
  os << "t = " << format_double(state.t) << "\n";
  os << "grid = " << format_double(g.x.min) << " " << format_double(g.x.max()) << " "
     << g.x.cells << " " << format_double(g.p.min) << " " << format_double(g.p.max())
     << " " << g.p.cells << "\n";
  os << "f:\n";
  std::vector<double> row(g.p.nodes());
  for (int i = 0; i < g.x.nodes(); ++i) {
    for (int j = 0; j < g.p.nodes(); ++j) row[j] = g.at(i, j);
    write_array_line(os, row);
  }
  os << "phi:\n";
  write_array_line(os, state.field.phi);
  os << "u:\n";
  write_array_line(os, state.field.u);
  os << "v:\n";
  write_array_line(os, state.field.v);
}

void write_snapshot(const SimState& state, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_snapshot: cannot open " + path);
  write_snapshot(state, os);
  if (!os.good()) throw std::runtime_error("write_snapshot: write failed for " + path);
}

Snapshot read_snapshot(std::istream& is) {
  std::string line;
  auto expect_line = [&](const char* what) {
    if (!std::getline(is, line))
      throw std::runtime_error(std::string("read_snapshot: truncated before ") + what);
    return line;
  };

  if (expect_line("header") != "nvlasov-snapshot 1")
    throw std::runtime_error("read_snapshot: bad format header");

  Snapshot snap;
  {
    std::istringstream ls(expect_line("t"));
    std::string k, eq;
    ls >> k >> eq >> snap.t;
    if (k != "t" || eq != "=") throw std::runtime_error("read_snapshot: bad t line");
  }
  double x_min, x_max, p_min, p_max;
  int nx, np;
  {
    std::istringstream ls(expect_line("grid"));
    std::string k, eq;
    ls >> k >> eq >> x_min >> x_max >> nx >> p_min >> p_max >> np;
    if (k != "grid" || eq != "=") throw std::runtime_error("read_snapshot: bad grid line");
  }
  snap.f = PhaseGrid(Axis(x_min, x_max, nx), Axis(p_min, p_max, np));

  if (expect_line("f:") != "f:") throw std::runtime_error("read_snapshot: expected f:");
  for (int i = 0; i <= nx; ++i) {
    const auto row = parse_csv_line(expect_line("f row"));
    if (static_cast<int>(row.size()) != np + 1)
      throw std::runtime_error("read_snapshot: f row length mismatch");
    for (int j = 0; j <= np; ++j) snap.f.at(i, j) = row[j];
  }
  snap.f.rescan_support();

  auto read_field = [&](const char* tag) {
    if (expect_line(tag) != tag)
      throw std::runtime_error(std::string("read_snapshot: expected ") + tag);
    auto arr = parse_csv_line(expect_line("field row"));
    if (static_cast<int>(arr.size()) != nx + 1)
      throw std::runtime_error("read_snapshot: field array length mismatch");
    return arr;
  };
  snap.phi = read_field("phi:");
  snap.u = read_field("u:");
  snap.v = read_field("v:");
  return snap;
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("read_snapshot: cannot open " + path);
  return read_snapshot(is);
}

std::string diagnostics_csv_header() {
  return "t,total_energy,field_energy,kinetic_energy,rest_mass,P_sup,Q_sup,Lambda,"
         "f_sup,mu_sup,energy_residual_sup,mu_bound_slack";
}

std::string diagnostics_csv_row(const DiagnosticsRecord& r) {
  std::string s;
  const double vals[] = {r.t,     r.total_energy, r.field_energy,        r.kinetic_energy,
                         r.rest_mass, r.p_sup,    r.q_sup,               r.lambda,
                         r.f_sup, r.mu_sup,       r.energy_residual_sup, r.mu_bound_slack};
  for (size_t i = 0; i < std::size(vals); ++i) {
    if (i) s += ",";
    s += format_double(vals[i]);
  }
  return s;
}

void write_diagnostics_csv(const std::vector<DiagnosticsRecord>& records,
                           const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_diagnostics_csv: cannot open " + path);
  os << diagnostics_csv_header() << "\n";
  for (const auto& r : records) os << diagnostics_csv_row(r) << "\n";
  if (!os.good()) throw std::runtime_error("write_diagnostics_csv: write failed");
}

}  // namespace nvlasov
