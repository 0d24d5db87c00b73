#include "plotting/grid.hpp"

#include <algorithm>

#include "plotting/error.hpp"

namespace plotting {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::out_of_range: return "out of range";
    case ErrorCode::empty_selection: return "empty selection";
    case ErrorCode::infeasible_bound: return "infeasible bound";
    case ErrorCode::invalid_horizon: return "invalid horizon";
    case ErrorCode::malformed_model: return "malformed model";
    case ErrorCode::capacity_exceeded: return "capacity exceeded";
    case ErrorCode::infeasible_spec: return "infeasible spec";
    case ErrorCode::spawn_failure: return "spawn failure";
    case ErrorCode::parse_failure: return "parse failure";
    case ErrorCode::io_failure: return "i/o failure";
  }
  return "unknown error";
}

GridState::GridState(int height, int width)
    : GridState(height, width,
                std::vector<Cell>(static_cast<std::size_t>(std::max(height, 0) * std::max(width, 0)),
                                  kEmpty)) {}

GridState::GridState(int height, int width, std::vector<Cell> cells)
    : height_(height), width_(width), cells_(std::move(cells)) {
  if (height < 1 || width < 1) {
    throw Error(ErrorCode::invalid_argument, "grid dimensions must be positive");
  }
  if (cells_.size() != static_cast<std::size_t>(height * width)) {
    throw Error(ErrorCode::invalid_argument, "cell count does not match grid dimensions");
  }
}

GridState GridState::from_rows(std::initializer_list<std::initializer_list<int>> rows) {
  const int height = static_cast<int>(rows.size());
  const int width = height > 0 ? static_cast<int>(rows.begin()->size()) : 0;
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(height * width));
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != width) {
      throw Error(ErrorCode::invalid_argument, "ragged grid literal");
    }
    for (int value : row) {
      if (value < 0 || value > kMaxColours) {
        throw Error(ErrorCode::invalid_argument, "cell value out of range");
      }
      cells.push_back(static_cast<Cell>(value));
    }
  }
  return GridState(height, width, std::move(cells));
}

int GridState::max_colour() const noexcept {
  Cell best = kEmpty;
  for (Cell c : cells_) best = std::max(best, c);
  return best;
}

bool GridState::top_empty() const noexcept {
  for (int col = 1; col <= width_; ++col) {
    bool seen_block = false;
    for (int row = 1; row <= height_; ++row) {
      if (at(row, col) != kEmpty) {
        seen_block = true;
      } else if (seen_block) {
        return false;
      }
    }
  }
  return true;
}

std::string to_string(const Shot& shot) {
  return (shot.is_row() ? "row " : "col ") + std::to_string(shot.index());
}

void check_instance(const Instance& instance) {
  const GridState& grid = instance.init_grid;
  if (grid.height() < 1 || grid.width() < 1) {
    throw Error(ErrorCode::invalid_argument, "instance grid is empty");
  }
  for (Cell c : grid.cells()) {
    if (c == kEmpty) {
      throw Error(ErrorCode::invalid_argument, "initial grid must be full");
    }
    if (c > kMaxColours) {
      throw Error(ErrorCode::invalid_argument, "colour exceeds supported range");
    }
  }
  if (instance.goal < 0 || instance.goal > grid.cell_count()) {
    throw Error(ErrorCode::invalid_argument,
                "goal must lie in 0.." + std::to_string(grid.cell_count()));
  }
}

}  // namespace plotting
