#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "plotting/engine.hpp"
#include "support.hpp"

namespace plotting::testing {

struct InvariantTally {
  std::uint64_t shots = 0;
  std::uint64_t violations = 0;
  std::vector<std::string> first_failures;

  void fail(const std::string& what) {
    ++violations;
    if (first_failures.size() < 5) first_failures.push_back(what);
  }
};

/// Checks every engine invariant for one shot from a reachable state.
inline void check_shot_invariants(const GridState& grid, Colour hand, Shot shot, InvariantTally& tally) {
  const ShotResult result = apply_shot(grid, hand, shot);
  if (!result) return;
  ++tally.shots;
  const TransitionOutcome& out = result.outcome();
  const std::string where = to_string(shot) + " hand " + std::to_string(hand);

  if (grid.top_empty() && !out.next_grid.top_empty()) tally.fail("top-empty lost: " + where);

  // Progress: sum decrease <=> count decrease <=> some occupied cell emptied.
  const bool sum_down = colour_sum(out.next_grid) < colour_sum(grid);
  const bool count_down = block_count(out.next_grid) < block_count(grid);
  bool witness = false;
  for (int r = 1; r <= grid.height(); ++r) {
    for (int c = 1; c <= grid.width(); ++c) {
      witness = witness || (grid.at(r, c) != kEmpty && out.next_grid.at(r, c) == kEmpty);
    }
  }
  if (!(sum_down && count_down && witness)) tally.fail("progress: " + where);
  if (block_count(grid) - block_count(out.next_grid) != out.consumed) tally.fail("consumed count: " + where);

  // Hand conservation.
  if (!out.hand_swapped && out.next_hand != hand) tally.fail("hand changed without a swap: " + where);
  if (out.hand_swapped) {
    if (out.next_hand == hand) tally.fail("swap kept the hand colour: " + where);
    bool stop_cell_found = false;
    if (shot.is_row()) {
      for (int c = 1; c <= grid.width(); ++c) stop_cell_found = stop_cell_found || grid.at(shot.index(), c) == out.next_hand;
      for (int r = shot.index() + 1; r <= grid.height(); ++r) {
        stop_cell_found = stop_cell_found || grid.at(r, grid.width()) == out.next_hand;
      }
    } else {
      for (int r = 1; r <= grid.height(); ++r) stop_cell_found = stop_cell_found || grid.at(r, shot.index()) == out.next_hand;
    }
    if (!stop_cell_found) tally.fail("swapped-in colour not on the shot path: " + where);
  }

  // wallFall consistency.
  const int expected_fall = shot.is_row() ? wall_fall(grid, hand, shot.index()) : 0;
  if (out.wall_fall != expected_fall) tally.fail("wallFall: " + where);
}

/// Runs random legal shots from random reachable states until `target` shots
/// have been checked.
inline InvariantTally run_invariant_suite(std::uint64_t seed, std::uint64_t target) {
  std::mt19937_64 rng(seed);
  InvariantTally tally;
  while (tally.shots < target) {
    State state = random_reachable_state(rng, 6, 5);
    while (tally.shots < target) {
      const auto shots = legal_shots(state.grid, state.hand);
      if (shots.empty()) break;
      for (Shot s : shots) check_shot_invariants(state.grid, state.hand, s, tally);
      const Shot pick = shots[std::uniform_int_distribution<std::size_t>(0, shots.size() - 1)(rng)];
      const ShotResult r = apply_shot(state.grid, state.hand, pick);
      state = {r->next_grid, r->next_hand};
    }
  }
  return tally;
}

}  // namespace plotting::testing
