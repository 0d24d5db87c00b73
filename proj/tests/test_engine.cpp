#include <random>

#include "doctest.h"
#include "plotting/engine.hpp"
#include "plotting/oracle.hpp"
#include "support.hpp"

using namespace plotting;

namespace {

// The oracle's successors of (grid, hand) under one shot.
std::vector<TransitionCandidate> oracle_successors(const GridState& grid, Colour hand, Shot shot) {
  std::vector<TransitionCandidate> out;
  for (const Successor& s : enumerate_successors(grid, hand)) {
    if (s.shot == shot) out.push_back(s.candidate);
  }
  return out;
}

void check_against_oracle(const GridState& grid, Colour hand, Shot shot, const TransitionOutcome& expected) {
  const auto oracle = oracle_successors(grid, hand, shot);
  REQUIRE(oracle.size() == 1);
  CHECK(oracle[0].next_grid == expected.next_grid);
  CHECK(oracle[0].next_hand == expected.next_hand);
  CHECK(oracle[0].wall_fall == expected.wall_fall);

  const ShotResult engine = apply_shot(grid, hand, shot);
  REQUIRE(engine.ok());
  CHECK(engine->next_grid == expected.next_grid);
  CHECK(engine->next_hand == expected.next_hand);
  CHECK(engine->wall_fall == expected.wall_fall);
  CHECK(engine->consumed == expected.consumed);
}

}  // namespace

TEST_CASE("row shot through a full row falls down the last column") {
  const GridState grid = GridState::from_rows({{1, 1}, {1, 1}});
  check_against_oracle(grid, 1, Shot::row(1),
                       {GridState::from_rows({{0, 0}, {1, 0}}), 1, 0, 3, false});
}

TEST_CASE("wall fall of two cells rebounds off the floor") {
  const GridState grid = GridState::from_rows({{2, 2, 2}, {1, 1, 1}, {2, 3, 1}});
  const TransitionOutcome expected{GridState::from_rows({{0, 0, 0}, {2, 2, 0}, {2, 3, 2}}), 1, 2, 4, false};
  check_against_oracle(grid, 1, Shot::row(2), expected);
}

TEST_CASE("empty fall source leaves the last column cell empty") {
  const GridState grid = GridState::from_rows({{0, 0, 0}, {1, 1, 1}, {2, 2, 2}});
  check_against_oracle(grid, 2, Shot::row(3),
                       {GridState::from_rows({{0, 0, 0}, {0, 0, 0}, {1, 1, 1}}), 2, 1, 3, false});
}

TEST_CASE("column shot rebounds off the floor") {
  const GridState grid = GridState::from_rows({{1}, {1}});
  check_against_oracle(grid, 1, Shot::col(1), {GridState::from_rows({{0}, {0}}), 1, 0, 2, false});
}

TEST_CASE("row shot swaps with the first different block") {
  const GridState grid = GridState::from_rows({{1, 2}});
  check_against_oracle(grid, 1, Shot::row(1), {GridState::from_rows({{0, 1}}), 2, 0, 1, true});
}

TEST_CASE("null moves and out-of-range shots") {
  CHECK(apply_shot(GridState::from_rows({{2}}), 1, Shot::row(1)).error() == ShotError::null_move);
  CHECK(apply_shot(GridState::from_rows({{2}}), 1, Shot::col(1)).error() == ShotError::null_move);
  CHECK(apply_shot(GridState::from_rows({{0, 0}, {1, 1}}), 2, Shot::col(1)).error() == ShotError::null_move);
  CHECK(apply_shot(GridState::from_rows({{0}}), 1, Shot::row(1)).error() == ShotError::null_move);
  CHECK(apply_shot(GridState::from_rows({{1}}), 1, Shot::row(2)).error() == ShotError::out_of_range);
  CHECK(apply_shot(GridState::from_rows({{1}}), 1, Shot::col(0)).error() == ShotError::out_of_range);
}

TEST_CASE("empty row passes through to the wall") {
  // Row 1 is empty; the block falls down the last column and consumes (2,2).
  const GridState grid = GridState::from_rows({{0, 0}, {2, 1}});
  const ShotResult r = apply_shot(grid, 1, Shot::row(1));
  REQUIRE(r.ok());
  CHECK(r->next_grid == GridState::from_rows({{0, 0}, {2, 0}}));
  CHECK(r->wall_fall == 0);
  CHECK(r->consumed == 1);
  CHECK(oracle_successors(grid, 1, Shot::row(1)).size() == 1);
}

TEST_CASE("legal_shots") {
  CHECK(legal_shots(GridState::from_rows({{2}}), 1).empty());
  CHECK(legal_shots(GridState::from_rows({{1}}), 1) == std::vector<Shot>{Shot::row(1), Shot::col(1)});
  CHECK(legal_shots(GridState::from_rows({{1, 1}, {1, 1}}), 2).empty());
  CHECK(all_shots(2, 3) ==
        std::vector<Shot>{Shot::row(1), Shot::row(2), Shot::col(1), Shot::col(2), Shot::col(3)});
}

TEST_CASE("block_count, colour_sum and is_goal") {
  CHECK(block_count(GridState::from_rows({{0, 0}, {0, 0}})) == 0);
  CHECK(block_count(GridState::from_rows({{1, 2}, {3, 1}})) == 4);
  CHECK(block_count(GridState::from_rows({{0, 1}, {0, 2}})) == 2);
  CHECK(colour_sum(GridState::from_rows({{0}})) == 0);
  CHECK(colour_sum(GridState::from_rows({{1, 2}, {3, 1}})) == 7);
  CHECK(colour_sum(GridState::from_rows({{2, 2, 2}, {1, 1, 1}, {2, 3, 1}})) == 15);
  CHECK(is_goal(GridState::from_rows({{0, 1}, {0, 0}}), 1));
  CHECK_FALSE(is_goal(GridState::from_rows({{1, 1}, {1, 1}}), 3));
  CHECK(is_goal(GridState::from_rows({{0, 0}, {0, 0}}), 0));
}

TEST_CASE("wall_fall follows the model definition") {
  const GridState grid = GridState::from_rows({{2, 2, 2}, {1, 1, 1}, {2, 3, 1}});
  // Brute force: the unique i in 1..height whose conjunction holds.
  int unique = 0;
  for (int i = 1; i <= 3; ++i) {
    bool holds = true;
    for (int c = 1; c <= 3; ++c) holds = holds && (grid.at(2, c) == 0 || grid.at(2, c) == 1);
    holds = holds && grid.at(1, 3) != 0;
    for (int u = 2; u <= 2 + i - 1 && holds; ++u) holds = u <= 3 && grid.at(u, 3) == 1;
    holds = holds && (2 + i > 3 || grid.at(2 + i, 3) != 1);
    if (holds) unique = unique == 0 ? i : -1;
  }
  CHECK(unique == 2);
  CHECK(wall_fall(grid, 1, 2) == unique);
  CHECK(wall_fall(grid, 1, 1) == 0);
  CHECK(wall_fall(GridState::from_rows({{1, 1}, {2, 2}}), 1, 1) == 0);
  CHECK(wall_fall(GridState::from_rows({{0, 0}, {1, 1}}), 1, 2) == 0);
}

TEST_CASE("engine agrees with the oracle on every 2x2 state") {
  for (const GridState& full : testing::full_grids_up_to(2, 2, 2)) {
    // Also cover partially cleared grids reachable by one shot.
    std::vector<GridState> grids{full};
    for (Colour h = 1; h <= full.max_colour(); ++h) {
      for (Shot s : legal_shots(full, h)) grids.push_back(apply_shot(full, h, s)->next_grid);
    }
    for (const GridState& grid : grids) {
      const int colours = std::max(1, full.max_colour());
      for (Colour h = 1; h <= colours; ++h) {
        const auto successors = enumerate_successors(grid, h, ModelRevision::corrected, colours);
        for (Shot shot : all_shots(2, 2)) {
          std::vector<TransitionCandidate> oracle;
          for (const Successor& s : successors) {
            if (s.shot == shot) oracle.push_back(s.candidate);
          }
          const ShotResult engine = apply_shot(grid, h, shot);
          if (!engine) {
            CHECK(oracle.empty());
            continue;
          }
          REQUIRE(oracle.size() == 1);
          CHECK(oracle[0].next_grid == engine->next_grid);
          CHECK(oracle[0].next_hand == engine->next_hand);
          CHECK(oracle[0].wall_fall == engine->wall_fall);
        }
      }
    }
  }
}

TEST_CASE("determinism and shot axis exclusivity") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto state = testing::random_reachable_state(rng, 4, 3);
    for (Shot shot : all_shots(state.grid.height(), state.grid.width())) {
      CHECK((shot.fp_row() > 0) != (shot.fp_col() > 0));
      const ShotResult a = apply_shot(state.grid, state.hand, shot);
      const ShotResult b = apply_shot(state.grid, state.hand, shot);
      REQUIRE(a.ok() == b.ok());
      if (a) CHECK(a.outcome() == b.outcome());
    }
  }
}
