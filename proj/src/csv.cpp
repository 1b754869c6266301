// SPDX-License-Identifier: Apache-2.0

#include "hetnet/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace hetnet {

std::string format_real(double value) {
  // %g honours LC_NUMERIC; the CLI never changes the C locale.
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

void write_csv(const CsvTable& table, std::ostream& out) {
  auto write_line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';
  };
  write_line(table.header);
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) throw std::invalid_argument("write_csv: row width differs from header");
    write_line(row);
  }
}

void write_csv(const CsvTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_csv(table, out);
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

CsvTable cee_sweep_table(std::span<const CeeSweepRow> rows) {
  CsvTable t;
  t.header = {"sigma_e2", "cee_mode", "tier", "mean_sumrate_bps_per_hz", "std_sumrate", "ci95_lo", "ci95_hi",
              "n_realizations"};
  for (const auto& r : rows) {
    t.rows.push_back({format_real(r.sigma_e2), std::string(to_string(r.cee_mode)), std::string(to_string(r.tier)),
                      format_real(r.stats.mean), format_real(r.stats.std), format_real(r.stats.ci95_lo),
                      format_real(r.stats.ci95_hi), std::to_string(r.stats.n)});
  }
  return t;
}

CsvTable rate_region_table(std::span<const RateRegionPoint> points, double sigma_e2) {
  std::vector<RateRegionPoint> sorted(points.begin(), points.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.w < b.w; });
  CsvTable t;
  t.header = {"w", "macro_rate_bps_per_hz", "sc_rate_bps_per_hz", "sigma_e2"};
  for (const auto& p : sorted) {
    t.rows.push_back({format_real(p.w), format_real(p.macro_rate), format_real(p.sc_rate), format_real(sigma_e2)});
  }
  return t;
}

CsvTable topology_table(const NetworkTopology& topology) {
  CsvTable t;
  t.header = {"kind", "cell", "index", "x", "y"};
  auto add = [&t](const char* kind, int cell, std::size_t index, Position p) {
    t.rows.push_back({kind, std::to_string(cell), std::to_string(index), format_real(p.x), format_real(p.y)});
  };
  const auto& bs = topology.stations.macro.positions;
  for (std::size_t i = 0; i < bs.size(); ++i) add("bs", static_cast<int>(i), i, bs[i]);
  const auto& sc = topology.stations.sc_positions;
  for (std::size_t i = 0; i < sc.size(); ++i) add("sc", topology.stations.cell_of_small_cell(i), i, sc[i]);
  for (std::size_t i = 0; i < topology.mcu_positions.size(); ++i) {
    add("mcu", topology.mcu_cell(i), i, topology.mcu_positions[i]);
  }
  for (std::size_t i = 0; i < topology.scu_positions.size(); ++i) {
    add("scu", topology.scu_cell(i), i, topology.scu_positions[i]);
  }
  return t;
}

}  // namespace hetnet
