#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "plotting/grid.hpp"

namespace plotting {

/// Which revision of the state-and-action constraint model to evaluate.
///
/// `published` is the model exactly as printed. It rejects two kinds of legal
/// row shots that reach the wall:
///  - a wall fall of two or more cells leaves last-column cells between the
///    firing row and the bottom of the fall without any admissible value;
///  - the last-column "falls from above" case does not require the falling
///    cell to hold a block, so an empty cell dropping onto a block forces that
///    block to be both empty and a changed block.
/// `corrected` widens the three last-column wall-fall cases from
/// `fpRow >= gRow` (resp. `fpRow > gRow`) to `fpRow + wallFall > gRow` and
/// requires a block at `gRow - wallFall` for the change case, which is what
/// the engine implements. The revisions agree on grids of height <= 2.
enum class ModelRevision { published, corrected };

/// One time-slice pair of the constraint model: the step-input state, the
/// shot, and a proposed successor.
struct TransitionCandidate {
  GridState prev_grid;
  Colour prev_hand = 0;
  Shot shot = Shot::row(1);
  GridState next_grid;
  Colour next_hand = 0;
  int wall_fall = 0;

  friend bool operator==(const TransitionCandidate&, const TransitionCandidate&) = default;
};

/// Evaluates every transition constraint of the model directly (axis,
/// progress, hand-unchanged, empty, stay-same, change and wallFall blocks).
/// Out-of-range cell references make their comparison false. `colour_count`
/// bounds hand values and defaults to max(prev grid colour, prev hand).
bool check_transition(const TransitionCandidate& candidate,
                      ModelRevision revision = ModelRevision::corrected,
                      std::optional<int> colour_count = std::nullopt);

struct OracleLimits {
  /// Upper bound on candidate triples examined per shot by enumerate_successors.
  std::size_t max_candidates_per_shot = 50'000'000;
  /// Largest grid bfs_optimal accepts.
  int max_cells = 25;
  /// Upper bound on distinct (grid, hand) states visited by bfs_optimal.
  std::size_t max_states = 4'000'000;
};

struct Successor {
  Shot shot;
  TransitionCandidate candidate;
};

/// Every (shot, next grid, next hand, wallFall) accepted by check_transition,
/// found by enumerating all grids over 0..colour_count. Shots are visited in
/// the canonical order. Throws Error(capacity_exceeded) when a shot's
/// candidate space exceeds the limit.
std::vector<Successor> enumerate_successors(const GridState& prev_grid, Colour prev_hand,
                                            ModelRevision revision = ModelRevision::corrected,
                                            std::optional<int> colour_count = std::nullopt,
                                            const OracleLimits& limits = {});

struct OptimalResult {
  bool found = false;
  int length = 0;
  Colour hand0 = 0;
  std::vector<Shot> plan;
  std::size_t states_visited = 0;
};

/// Breadth-first search over (grid, hand) states for every initial hand
/// 1..colourCount. Returns the minimal plan length; ties go to the smallest
/// initial hand, then the lexicographically smallest shot sequence.
/// `found == false` proves no plan of length <= max_steps exists.
OptimalResult bfs_optimal(const Instance& instance, int max_steps, const OracleLimits& limits = {});

}  // namespace plotting
