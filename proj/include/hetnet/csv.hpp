// SPDX-License-Identifier: Apache-2.0
//
// Result tables and their CSV serialization. Reals are written with 9
// significant digits in the classic locale.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hetnet/simulation.hpp"
#include "hetnet/topology.hpp"

namespace hetnet {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_real(double value);

void write_csv(const CsvTable& table, std::ostream& out);
/// Throws IoError naming `path` when the file cannot be written.
void write_csv(const CsvTable& table, const std::filesystem::path& path);

CsvTable cee_sweep_table(std::span<const CeeSweepRow> rows);
CsvTable rate_region_table(std::span<const RateRegionPoint> points, double sigma_e2);
/// Debug dump: kind,cell,index,x,y with kind in {bs, sc, mcu, scu}.
CsvTable topology_table(const NetworkTopology& topology);

}  // namespace hetnet
