// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hetnet/csv.hpp"

using namespace hetnet;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

std::string render(const CsvTable& t) {
  std::ostringstream out;
  write_csv(t, out);
  return out.str();
}

}  // namespace

TEST_CASE("format_real uses 9 significant digits") {
  CHECK(format_real(0.0) == "0");
  CHECK(format_real(1.0 / 3.0) == "0.333333333");
  CHECK(format_real(123456789.123) == "123456789");
  CHECK(format_real(1234567891.0) == "1.23456789e+09");
  CHECK(format_real(-2.5e-14) == "-2.5e-14");
}

TEST_CASE("empty sweep table is header only") {
  const auto text = render(cee_sweep_table({}));
  CHECK(text == "sigma_e2,cee_mode,tier,mean_sumrate_bps_per_hz,std_sumrate,ci95_lo,ci95_hi,n_realizations\n");
}

TEST_CASE("one sweep row gives header plus row") {
  CeeSweepRow row;
  row.sigma_e2 = 0.01;
  row.tier = Tier::smallcell;
  row.stats = {12.5, 1.25, 12.0, 13.0, 100};
  const auto lines = lines_of(render(cee_sweep_table(std::span<const CeeSweepRow>(&row, 1))));
  REQUIRE(lines.size() == 2);
  CHECK(lines[1] == "0.01,relative,smallcell,12.5,1.25,12,13,100");
}

TEST_CASE("rate region table is sorted by w") {
  std::vector<RateRegionPoint> pts;
  for (int i = 20; i >= 0; --i) pts.push_back({i / 20.0, i / 20.0 * 10.0, (1.0 - i / 20.0) * 5.0});
  const auto lines = lines_of(render(rate_region_table(pts, 0.1)));
  REQUIRE(lines.size() == 22);
  CHECK(lines[0] == "w,macro_rate_bps_per_hz,sc_rate_bps_per_hz,sigma_e2");
  CHECK(lines[1] == "0,0,5,0.1");
  CHECK(lines[21] == "1,10,0,0.1");
  double prev = -1.0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const double w = std::stod(lines[i].substr(0, lines[i].find(',')));
    CHECK(w > prev);
    prev = w;
  }
}

TEST_CASE("ragged rows are rejected") {
  CsvTable t;
  t.header = {"a", "b"};
  t.rows = {{"1"}};
  std::ostringstream out;
  CHECK_THROWS_AS(write_csv(t, out), std::invalid_argument);
}

TEST_CASE("file output and I/O failure") {
  const auto dir = std::filesystem::temp_directory_path() / "hetnet_csv_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "sweep.csv";
  write_csv(cee_sweep_table({}), path);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("sigma_e2,", 0) == 0);

  const auto bad = dir / "missing_dir" / "x.csv";
  try {
    write_csv(cee_sweep_table({}), bad);
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("missing_dir") != std::string::npos);
  }
  std::filesystem::remove_all(dir);
}
