#include "plotting/engine.hpp"

#include <vector>

namespace plotting {

const char* to_string(ShotError error) noexcept {
  switch (error) {
    case ShotError::null_move: return "null move";
    case ShotError::out_of_range: return "out of range";
  }
  return "unknown";
}

namespace {

ShotResult fire_row(const GridState& grid, Colour hand, int row) {
  const int height = grid.height();
  const int width = grid.width();
  GridState next = grid;
  std::vector<bool> row_consumed(static_cast<std::size_t>(width) + 1, false);
  std::vector<bool> wall_consumed(static_cast<std::size_t>(height) + 1, false);
  int consumed = 0;
  Colour next_hand = hand;
  bool swapped = false;
  bool hit_wall = true;

  for (int col = 1; col <= width; ++col) {
    const Cell v = grid.at(row, col);
    if (v == kEmpty) continue;
    if (v == hand) {
      row_consumed[static_cast<std::size_t>(col)] = true;
      ++consumed;
      continue;
    }
    if (consumed == 0) return ShotError::null_move;
    next.set(row, col, hand);
    next_hand = v;
    swapped = true;
    hit_wall = false;
    break;
  }

  // Past the wall the block drops down the last column below the firing row.
  int stop_row = height + 1;
  if (hit_wall) {
    for (int r = row + 1; r <= height; ++r) {
      const Cell v = grid.at(r, width);
      if (v == kEmpty) continue;
      if (v == hand) {
        wall_consumed[static_cast<std::size_t>(r)] = true;
        ++consumed;
        continue;
      }
      if (consumed == 0) return ShotError::null_move;
      next.set(r, width, hand);
      next_hand = v;
      swapped = true;
      stop_row = r;
      break;
    }
  }
  if (consumed == 0) return ShotError::null_move;

  for (int col = 1; col <= width; ++col) {
    if (!row_consumed[static_cast<std::size_t>(col)]) continue;
    if (hit_wall && col == width) continue;
    for (int r = row; r >= 2; --r) next.set(r, col, grid.at(r - 1, col));
    next.set(1, col, kEmpty);
  }

  int wall_fall_distance = 0;
  if (hit_wall) {
    wall_consumed[static_cast<std::size_t>(row)] = row_consumed[static_cast<std::size_t>(width)];
    // Compact rows 1..stop_row-1 of the last column: surviving cells keep
    // their order and settle onto the stopping point.
    std::vector<Cell> survivors;
    int vacated = 0;
    for (int r = 1; r < stop_row; ++r) {
      if (wall_consumed[static_cast<std::size_t>(r)]) {
        ++vacated;
      } else {
        survivors.push_back(grid.at(r, width));
      }
    }
    int r = stop_row - 1;
    for (auto it = survivors.rbegin(); it != survivors.rend(); ++it, --r) next.set(r, width, *it);
    for (; r >= 1; --r) next.set(r, width, kEmpty);
    if (row >= 2 && grid.at(row - 1, width) != kEmpty) wall_fall_distance = vacated;
  }

  return TransitionOutcome{std::move(next), next_hand, wall_fall_distance, consumed, swapped};
}

ShotResult fire_col(const GridState& grid, Colour hand, int col) {
  GridState next = grid;
  int consumed = 0;
  Colour next_hand = hand;
  bool swapped = false;
  for (int r = 1; r <= grid.height(); ++r) {
    const Cell v = grid.at(r, col);
    if (v == kEmpty) continue;
    if (v == hand) {
      next.set(r, col, kEmpty);
      ++consumed;
      continue;
    }
    if (consumed == 0) return ShotError::null_move;
    next.set(r, col, hand);
    next_hand = v;
    swapped = true;
    break;
  }
  if (consumed == 0) return ShotError::null_move;
  return TransitionOutcome{std::move(next), next_hand, 0, consumed, swapped};
}

}  // namespace

ShotResult apply_shot(const GridState& grid, Colour hand, Shot shot) {
  if (shot.is_row()) {
    if (shot.index() < 1 || shot.index() > grid.height()) return ShotError::out_of_range;
    return fire_row(grid, hand, shot.index());
  }
  if (shot.index() < 1 || shot.index() > grid.width()) return ShotError::out_of_range;
  return fire_col(grid, hand, shot.index());
}

std::vector<Shot> all_shots(int height, int width) {
  std::vector<Shot> shots;
  shots.reserve(static_cast<std::size_t>(height + width));
  for (int r = 1; r <= height; ++r) shots.push_back(Shot::row(r));
  for (int c = 1; c <= width; ++c) shots.push_back(Shot::col(c));
  return shots;
}

std::vector<Shot> legal_shots(const GridState& grid, Colour hand) {
  std::vector<Shot> shots;
  for (const Shot& shot : all_shots(grid.height(), grid.width())) {
    if (apply_shot(grid, hand, shot)) shots.push_back(shot);
  }
  return shots;
}

int block_count(const GridState& grid) noexcept {
  int count = 0;
  for (Cell c : grid.cells()) count += c != kEmpty ? 1 : 0;
  return count;
}

int colour_sum(const GridState& grid) noexcept {
  int sum = 0;
  for (Cell c : grid.cells()) sum += c;
  return sum;
}

bool is_goal(const GridState& grid, int goal) noexcept { return block_count(grid) <= goal; }

int wall_fall(const GridState& grid, Colour hand, int row) noexcept {
  const int height = grid.height();
  const int width = grid.width();
  if (row < 2 || row > height) return 0;
  for (int col = 1; col <= width; ++col) {
    const Cell v = grid.at(row, col);
    if (v != kEmpty && v != hand) return 0;
  }
  if (grid.at(row - 1, width) == kEmpty) return 0;
  int run = 0;
  while (row + run <= height && grid.at(row + run, width) == hand) ++run;
  return run;
}

}  // namespace plotting
