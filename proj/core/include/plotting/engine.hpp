#pragma once

#include <variant>
#include <vector>

#include "plotting/grid.hpp"

namespace plotting {

struct TransitionOutcome {
  GridState next_grid;
  Colour next_hand = 0;
  /// Distance the blocks above the firing row fall in the last column.
  int wall_fall = 0;
  /// Blocks removed from the grid; always >= 1.
  int consumed = 0;
  bool hand_swapped = false;

  friend bool operator==(const TransitionOutcome&, const TransitionOutcome&) = default;
};

enum class ShotError {
  /// The shot would leave the grid unchanged.
  null_move,
  out_of_range,
};

const char* to_string(ShotError error) noexcept;

class ShotResult {
 public:
  ShotResult(TransitionOutcome outcome) : value_(std::move(outcome)) {}  // NOLINT
  ShotResult(ShotError error) : value_(error) {}                          // NOLINT

  bool ok() const noexcept { return std::holds_alternative<TransitionOutcome>(value_); }
  explicit operator bool() const noexcept { return ok(); }

  const TransitionOutcome& outcome() const { return std::get<TransitionOutcome>(value_); }
  const TransitionOutcome* operator->() const { return &outcome(); }
  ShotError error() const { return std::get<ShotError>(value_); }

 private:
  std::variant<TransitionOutcome, ShotError> value_;
};

/// Successor of (grid, hand) under `shot`. Every rule condition reads the
/// step-input grid; gravity is applied once after the travelling block stops.
ShotResult apply_shot(const GridState& grid, Colour hand, Shot shot);

/// Shots for which apply_shot succeeds: rows 1..height, then columns 1..width.
std::vector<Shot> legal_shots(const GridState& grid, Colour hand);

/// All shots in the canonical order, legal or not.
std::vector<Shot> all_shots(int height, int width);

int block_count(const GridState& grid) noexcept;
int colour_sum(const GridState& grid) noexcept;

/// True iff at most `goal` blocks remain.
bool is_goal(const GridState& grid, int goal) noexcept;

/// Fall distance in the last column after a row shot through `row` reaches
/// the wall; 0 when nothing falls (including row 1).
int wall_fall(const GridState& grid, Colour hand, int row) noexcept;

}  // namespace plotting
