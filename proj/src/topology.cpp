// SPDX-License-Identifier: Apache-2.0

#include "hetnet/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace hetnet {

double distance(Position a, Position b) { return std::hypot(a.x - b.x, a.y - b.y); }

BaseStationGrid place_base_stations(int grid_dim, double site_distance_m) {
  if (grid_dim < 1) throw std::invalid_argument("place_base_stations: grid_dim must be >= 1");
  BaseStationGrid grid;
  grid.positions.reserve(static_cast<std::size_t>(grid_dim) * grid_dim);
  grid.cells.reserve(grid.positions.capacity());
  for (int i = 0; i < grid_dim; ++i) {
    for (int j = 0; j < grid_dim; ++j) {
      const CellSquare cell{i * site_distance_m, j * site_distance_m, site_distance_m};
      grid.cells.push_back(cell);
      grid.positions.push_back(cell.center());
    }
  }
  return grid;
}

int center_cell_index(int grid_dim) {
  const int mid = grid_dim / 2;
  return mid * grid_dim + mid;
}

std::vector<Position> place_small_cells(int s, const CellSquare& cell) {
  if (s < 0) throw std::invalid_argument("place_small_cells: s must be >= 0");
  std::vector<Position> out;
  if (s == 0) return out;
  const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(s))));
  const int rows = (s + cols - 1) / cols;
  const double dx = cell.side / cols;
  const double dy = cell.side / rows;
  out.reserve(static_cast<std::size_t>(s));
  for (int r = 0; r < rows && static_cast<int>(out.size()) < s; ++r) {
    for (int c = 0; c < cols && static_cast<int>(out.size()) < s; ++c) {
      out.push_back({cell.x0 + (c + 0.5) * dx, cell.y0 + (r + 0.5) * dy});
    }
  }
  return out;
}

StationLayout place_stations(const SimulationConfig& config) {
  StationLayout layout;
  layout.grid_dim = config.grid_dim;
  layout.sc_per_cell = config.s_sc_per_cell;
  layout.macro = place_base_stations(config.grid_dim, config.site_distance_m);
  for (const auto& cell : layout.macro.cells) {
    auto scs = place_small_cells(config.s_sc_per_cell, cell);
    layout.sc_positions.insert(layout.sc_positions.end(), scs.begin(), scs.end());
  }
  return layout;
}

NetworkTopology drop_users(RandomStream& rng, const SimulationConfig& config, StationLayout stations) {
  NetworkTopology topo;
  topo.stations = std::move(stations);
  topo.mcu_per_cell = config.k_mcu_per_cell;

  const auto& cells = topo.stations.macro.cells;
  topo.mcu_positions.reserve(cells.size() * static_cast<std::size_t>(config.k_mcu_per_cell));
  for (const auto& cell : cells) {
    for (int k = 0; k < config.k_mcu_per_cell; ++k) {
      const double x = rng.uniform(cell.x0, cell.x0 + cell.side);
      const double y = rng.uniform(cell.y0, cell.y0 + cell.side);
      topo.mcu_positions.push_back({x, y});
    }
  }

  // sqrt(U) radial sampling is uniform over the disc area.
  const double radius = config.scu_drop_radius_m;
  topo.scu_positions.reserve(topo.stations.sc_positions.size());
  for (const auto& sc : topo.stations.sc_positions) {
    const double r = radius * std::sqrt(rng.uniform());
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    topo.scu_positions.push_back({sc.x + r * std::cos(phi), sc.y + r * std::sin(phi)});
  }

  topo.mcu_serving_bs.reserve(topo.mcu_positions.size());
  for (const auto& p : topo.mcu_positions) {
    topo.mcu_serving_bs.push_back(nearest_station(p, topo.stations.macro.positions));
  }
  topo.scu_serving_sc.reserve(topo.scu_positions.size());
  for (const auto& p : topo.scu_positions) {
    topo.scu_serving_sc.push_back(nearest_station(p, topo.stations.sc_positions));
  }
  return topo;
}

std::size_t nearest_station(Position p, std::span<const Position> stations) {
  if (stations.empty()) throw std::invalid_argument("nearest_station: no stations");
  std::size_t best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < stations.size(); ++i) {
    const double dx = p.x - stations[i].x;
    const double dy = p.y - stations[i].y;
    const double d2 = dx * dx + dy * dy;
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return best;
}

double link_distance(Position a, Position b, double min_d) { return std::max(distance(a, b), min_d); }

}  // namespace hetnet
