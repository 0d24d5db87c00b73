#include <random>

#include "doctest.h"
#include "plotting/engine.hpp"
#include "plotting/error.hpp"
#include "plotting/oracle.hpp"
#include "support.hpp"

using namespace plotting;

namespace {

std::vector<TransitionCandidate> branch(const GridState& grid, Colour hand, Shot shot,
                                        ModelRevision revision = ModelRevision::corrected) {
  std::vector<TransitionCandidate> out;
  for (const Successor& s : enumerate_successors(grid, hand, revision)) {
    if (s.shot == shot) out.push_back(s.candidate);
  }
  return out;
}

}  // namespace

TEST_CASE("check_transition rejects a move that changes nothing") {
  const GridState g = GridState::from_rows({{2}});
  CHECK_FALSE(check_transition({g, 1, Shot::row(1), g, 1, 0}));
}

TEST_CASE("check_transition pins the wall-fall distance") {
  const GridState prev = GridState::from_rows({{2, 2, 2}, {1, 1, 1}, {2, 3, 1}});
  const GridState next = GridState::from_rows({{0, 0, 0}, {2, 2, 0}, {2, 3, 2}});
  std::vector<int> accepted;
  for (int w = 0; w <= 3; ++w) {
    if (check_transition({prev, 1, Shot::row(2), next, 1, w})) accepted.push_back(w);
  }
  CHECK(accepted == std::vector<int>{2});
}

TEST_CASE("the published model has no successor for a two-cell wall fall") {
  const GridState prev = GridState::from_rows({{2, 2, 2}, {1, 1, 1}, {2, 3, 1}});
  CHECK(branch(prev, 1, Shot::row(2), ModelRevision::published).empty());
  CHECK(branch(prev, 1, Shot::row(2), ModelRevision::corrected).size() == 1);
}

TEST_CASE("the published model rejects an empty cell falling onto the last column") {
  const GridState prev = GridState::from_rows({{0, 0, 0}, {1, 1, 1}, {2, 2, 2}});
  CHECK(branch(prev, 2, Shot::row(3), ModelRevision::published).empty());
  const auto corrected = branch(prev, 2, Shot::row(3), ModelRevision::corrected);
  REQUIRE(corrected.size() == 1);
  CHECK(corrected[0].next_grid == apply_shot(prev, 2, Shot::row(3))->next_grid);
}

TEST_CASE("enumerate_successors on tiny grids") {
  CHECK(enumerate_successors(GridState::from_rows({{2}}), 1).empty());

  const auto single = branch(GridState::from_rows({{1}}), 1, Shot::row(1));
  REQUIRE(single.size() == 1);
  CHECK(single[0].next_grid == GridState::from_rows({{0}}));
  CHECK(single[0].next_hand == 1);
  CHECK(single[0].wall_fall == 0);

  const auto pair = branch(GridState::from_rows({{1, 2}}), 1, Shot::row(1));
  REQUIRE(pair.size() == 1);
  CHECK(pair[0].next_grid == GridState::from_rows({{0, 1}}));
  CHECK(pair[0].next_hand == 2);
  CHECK(pair[0].wall_fall == 0);
}

TEST_CASE("enumerate_successors enforces its candidate limit") {
  OracleLimits limits;
  limits.max_candidates_per_shot = 10;
  CHECK_THROWS_AS(enumerate_successors(GridState::from_rows({{1, 1}, {1, 1}}), 1, ModelRevision::corrected,
                                       std::nullopt, limits),
                  Error);
}

TEST_CASE("published and corrected revisions agree on grids of height two") {
  for (int width = 1; width <= 3; ++width) {
    for (const GridState& grid : testing::full_grids_up_to(2, width, 2)) {
      for (Colour h = 1; h <= grid.max_colour(); ++h) {
        const auto published = enumerate_successors(grid, h, ModelRevision::published, grid.max_colour());
        const auto corrected = enumerate_successors(grid, h, ModelRevision::corrected, grid.max_colour());
        REQUIRE(published.size() == corrected.size());
        for (std::size_t i = 0; i < published.size(); ++i) {
          CHECK(published[i].shot == corrected[i].shot);
          CHECK(published[i].candidate == corrected[i].candidate);
        }
      }
    }
  }
}

TEST_CASE("engine outcomes pass check_transition on random reachable states") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const auto state = testing::random_reachable_state(rng, 5, 4);
    for (Shot shot : legal_shots(state.grid, state.hand)) {
      const ShotResult r = apply_shot(state.grid, state.hand, shot);
      const TransitionCandidate c{state.grid, state.hand, shot, r->next_grid, r->next_hand, r->wall_fall};
      CHECK(check_transition(c));
      // Any other wallFall value is rejected.
      for (int w = 0; w <= state.grid.height(); ++w) {
        if (w == r->wall_fall) continue;
        TransitionCandidate other = c;
        other.wall_fall = w;
        CHECK_FALSE(check_transition(other));
      }
    }
  }
}

TEST_CASE("oracle successor sets match the engine on sampled 3x3 two-colour states") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 12; ++i) {
    testing::State state{random_instance({3, 3, 2}, rng()).init_grid, static_cast<Colour>(1 + i % 2)};
    for (int k = 0; k < i % 4; ++k) {
      const auto shots = legal_shots(state.grid, state.hand);
      if (shots.empty()) break;
      const ShotResult r = apply_shot(state.grid, state.hand, shots[rng() % shots.size()]);
      state = {r->next_grid, r->next_hand};
    }
    const auto successors = enumerate_successors(state.grid, state.hand, ModelRevision::corrected, 2);
    for (Shot shot : all_shots(3, 3)) {
      std::vector<TransitionCandidate> oracle;
      for (const Successor& s : successors) {
        if (s.shot == shot) oracle.push_back(s.candidate);
      }
      const ShotResult engine = apply_shot(state.grid, state.hand, shot);
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

TEST_CASE("bfs_optimal on the all-1 2x2 grid") {
  const Instance done = testing::make_instance({{1, 1}, {1, 1}}, 4);
  const OptimalResult zero = bfs_optimal(done, 4);
  CHECK(zero.found);
  CHECK(zero.length == 0);
  CHECK(zero.hand0 == 1);
  CHECK(zero.plan.empty());

  // Layered reachability gives the minimal lengths independently.
  for (int goal : {1, 0}) {
    const Instance inst = testing::make_instance({{1, 1}, {1, 1}}, goal);
    int minimal = -1;
    for (int s = 1; s <= 4 && minimal < 0; ++s) {
      if (testing::goal_reachable_in_exactly(inst, s)) minimal = s;
    }
    const OptimalResult r = bfs_optimal(inst, 4 - goal);
    REQUIRE(r.found);
    CHECK(r.length == minimal);
    CHECK(r.length == (goal == 1 ? 1 : 2));
    CHECK(static_cast<int>(r.plan.size()) == r.length);
  }
}

TEST_CASE("bfs_optimal picks the initial hand") {
  const OptimalResult r = bfs_optimal(testing::make_instance({{2}}, 0), 1);
  REQUIRE(r.found);
  CHECK(r.length == 1);
  CHECK(r.hand0 == 2);
  CHECK(r.plan == std::vector<Shot>{Shot::row(1)});
}

TEST_CASE("bfs_optimal matches layered reachability on small grids") {
  for (int width = 1; width <= 3; ++width) {
    for (const GridState& grid : testing::full_grids_up_to(2, width, 2)) {
      for (int goal = 0; goal < grid.cell_count(); ++goal) {
        const Instance inst{grid, goal};
        int minimal = -1;
        for (int s = 1; s <= grid.cell_count() - goal && minimal < 0; ++s) {
          if (testing::goal_reachable_in_exactly(inst, s)) minimal = s;
        }
        const OptimalResult r = bfs_optimal(inst, grid.cell_count() - goal);
        CHECK(r.found == (minimal > 0));
        if (minimal > 0) {
          CHECK(r.length == minimal);
          CHECK_FALSE(bfs_optimal(inst, minimal - 1).found);
        }
      }
    }
  }
}

TEST_CASE("bfs_optimal refuses grids above the capacity bound") {
  const Instance big{GridState(9, 9, std::vector<Cell>(81, 1)), 0};
  CHECK_THROWS_AS(bfs_optimal(big, 81), Error);
  try {
    bfs_optimal(big, 81);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::capacity_exceeded);
  }
}
