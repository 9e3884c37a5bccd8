#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nvlasov/diagnostics.hpp"
#include "nvlasov/solver1d.hpp"

namespace nvlasov {

// Snapshot text format, 17 significant digits throughout (lossless for
// 64-bit floats):
//   nvlasov-snapshot 1
//   t = <t>
//   grid = <x_min> <x_max> <nx> <p_min> <p_max> <np>
//   f:
//   <nx+1 lines of np+1 comma-separated values, x outer>
//   phi: / u: / v:
//   <one comma-separated line each>
void write_snapshot(const SimState& state, const std::string& path);
void write_snapshot(const SimState& state, std::ostream& os);

struct Snapshot {
  double t = 0.0;
  PhaseGrid f;
  std::vector<double> phi, u, v;
};

Snapshot read_snapshot(const std::string& path);
Snapshot read_snapshot(std::istream& is);

// One CSV row per record; header matches the DiagnosticsRecord fields.
void write_diagnostics_csv(const std::vector<DiagnosticsRecord>& records,
                           const std::string& path);
std::string diagnostics_csv_header();
std::string diagnostics_csv_row(const DiagnosticsRecord& r);

std::string format_double(double v);  // %.17g

}  // namespace nvlasov
