// SPDX-License-Identifier: Apache-2.0
//
// Station layout, user drops and nearest-station association.
//
// Cells are indexed row-major: cell (i, j) covers [i*d, (i+1)*d] x [j*d, (j+1)*d]
// and has index i*grid_dim + j. Small cells, MCUs and SCUs are stored in flat
// cell-major arrays: small cell j of cell b has global index b*S + j, MCU k of
// cell b has index b*K + k, and SCU n is the user dropped around small cell n.

#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "hetnet/config.hpp"
#include "hetnet/random.hpp"

namespace hetnet {

struct Position {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Position&) const = default;
};

double distance(Position a, Position b);

/// Axis-aligned square cell.
struct CellSquare {
  double x0 = 0.0;
  double y0 = 0.0;
  double side = 0.0;

  Position center() const { return {x0 + 0.5 * side, y0 + 0.5 * side}; }
  bool contains(Position p) const {
    return p.x >= x0 && p.x <= x0 + side && p.y >= y0 && p.y <= y0 + side;
  }
};

struct BaseStationGrid {
  std::vector<Position> positions;
  std::vector<CellSquare> cells;
};

/// BS per cell at the centre of a grid_dim x grid_dim lattice of squares.
BaseStationGrid place_base_stations(int grid_dim, double site_distance_m);

/// Index of the centre cell ((grid_dim^2 - 1) / 2 for odd grid_dim).
int center_cell_index(int grid_dim);

/// First `s` nodes (row-major) of the r x c lattice of sub-square centres,
/// c = ceil(sqrt(s)), r = ceil(s / c).
std::vector<Position> place_small_cells(int s, const CellSquare& cell);

struct StationLayout {
  int grid_dim = 0;
  int sc_per_cell = 0;
  BaseStationGrid macro;
  std::vector<Position> sc_positions;

  int num_cells() const { return grid_dim * grid_dim; }
  int cell_of_small_cell(std::size_t sc) const { return static_cast<int>(sc) / sc_per_cell; }
};

StationLayout place_stations(const SimulationConfig& config);

struct NetworkTopology {
  StationLayout stations;
  int mcu_per_cell = 0;
  std::vector<Position> mcu_positions;
  std::vector<Position> scu_positions;
  std::vector<std::size_t> mcu_serving_bs;
  std::vector<std::size_t> scu_serving_sc;

  int num_cells() const { return stations.num_cells(); }
  int mcu_cell(std::size_t mcu) const { return static_cast<int>(mcu) / mcu_per_cell; }
  int scu_cell(std::size_t scu) const { return stations.cell_of_small_cell(scu); }
};

/// K uniform MCUs per cell square; one SCU uniform over the disc around each
/// small cell; nearest-station association for both tiers.
NetworkTopology drop_users(RandomStream& rng, const SimulationConfig& config, StationLayout stations);

/// Index of the closest station, ties to the lowest index. `stations` must be non-empty.
std::size_t nearest_station(Position p, std::span<const Position> stations);

/// Euclidean distance floored at `min_d`.
double link_distance(Position a, Position b, double min_d);

}  // namespace hetnet
