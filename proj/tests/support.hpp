#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "plotting/engine.hpp"
#include "plotting/generator.hpp"
#include "plotting/grid.hpp"

namespace plotting::testing {

inline Instance make_instance(std::initializer_list<std::initializer_list<int>> rows, int goal) {
  return Instance{GridState::from_rows(rows), goal};
}

/// Every full grid of the given size over exactly `colours` colours.
inline std::vector<GridState> full_grids(int height, int width, int colours) {
  std::vector<GridState> out;
  for (const Instance& inst : enumerate_instances({height, width, colours}, Enumeration::all)) {
    out.push_back(inst.init_grid);
  }
  return out;
}

/// Every full grid of the given size over 1..colours, for colours = 1..max_colours.
inline std::vector<GridState> full_grids_up_to(int height, int width, int max_colours) {
  std::vector<GridState> out;
  for (int k = 1; k <= max_colours && k <= height * width; ++k) {
    for (GridState& g : full_grids(height, width, k)) out.push_back(std::move(g));
  }
  return out;
}

struct State {
  GridState grid;
  Colour hand = 1;
};

/// A random full grid followed by a random number of random legal shots.
inline State random_reachable_state(std::mt19937_64& rng, int max_side, int max_colours) {
  std::uniform_int_distribution<int> side(1, max_side);
  const int height = side(rng);
  const int width = side(rng);
  const int colours = std::uniform_int_distribution<int>(1, std::min(max_colours, height * width))(rng);
  State state{random_instance({height, width, colours}, rng()).init_grid, 1};
  state.hand = static_cast<Colour>(std::uniform_int_distribution<int>(1, colours)(rng));
  const int steps = std::uniform_int_distribution<int>(0, height * width)(rng);
  for (int i = 0; i < steps; ++i) {
    const auto shots = legal_shots(state.grid, state.hand);
    if (shots.empty()) break;
    const Shot shot = shots[std::uniform_int_distribution<std::size_t>(0, shots.size() - 1)(rng)];
    const ShotResult result = apply_shot(state.grid, state.hand, shot);
    state.grid = result->next_grid;
    state.hand = result->next_hand;
  }
  return state;
}

/// True iff some initial hand admits exactly `steps` legal shots ending with
/// at most `goal` blocks. Layered forward search without cross-layer pruning.
inline bool goal_reachable_in_exactly(const Instance& instance, int steps) {
  using Key = std::pair<GridState, Colour>;
  std::set<Key> layer;
  for (int h = 1; h <= instance.colour_count(); ++h) layer.insert({instance.init_grid, static_cast<Colour>(h)});
  for (int s = 0; s < steps; ++s) {
    std::set<Key> next;
    for (const auto& [grid, hand] : layer) {
      for (const Shot shot : legal_shots(grid, hand)) {
        const ShotResult r = apply_shot(grid, hand, shot);
        next.insert({r->next_grid, r->next_hand});
      }
    }
    layer = std::move(next);
  }
  for (const auto& [grid, hand] : layer) {
    if (is_goal(grid, instance.goal)) return true;
  }
  return false;
}

}  // namespace plotting::testing
