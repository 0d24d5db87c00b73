#include "plotting/oracle.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <unordered_map>

#include "plotting/engine.hpp"
#include "plotting/error.hpp"

namespace plotting {

namespace {

using Value = std::optional<int>;

// Equality and disequality both fail when either side is undefined.
bool eq(Value a, Value b) { return a && b && *a == *b; }
bool ne(Value a, Value b) { return a && b && *a != *b; }

constexpr int kEmptyValue = 0;

// Constraint blocks of one step, evaluated over concrete values. `p` reads
// grid[step-1], `n` reads grid[step]; hands are always defined.
struct StepEval {
  const GridState& prev;
  const GridState& next;
  Value hand_prev;
  Value hand_next;
  int fp_row;
  int fp_col;
  int wall_fall;
  int height;
  int width;
  bool corrected;

  Value p(int r, int c) const {
    if (r < 1 || r > height || c < 1 || c > width) return std::nullopt;
    return prev.at(r, c);
  }
  Value n(int r, int c) const {
    if (r < 1 || r > height || c < 1 || c > width) return std::nullopt;
    return next.at(r, c);
  }
  bool consumable(int r, int c) const {
    return eq(p(r, c), hand_prev) || eq(p(r, c), kEmptyValue);
  }
  bool blocking(int r, int c) const {
    return ne(p(r, c), kEmptyValue) && ne(p(r, c), hand_prev);
  }
  // Wall-fall reach over the last column: the published model stops at the
  // firing row, the corrected one covers the whole fallen span.
  bool fall_reaches(int r, bool strict) const {
    if (corrected) return fp_row != 0 && fp_row + wall_fall > r;
    return strict ? fp_row > r : fp_row >= r;
  }

  bool hand_unchanged_block() const {
    bool fired_col_wall = true;
    for (int b = 1; b <= height; ++b) fired_col_wall = fired_col_wall && consumable(b, fp_col);

    bool along_row = true;
    for (int b = 1; b <= width; ++b) along_row = along_row && consumable(fp_row, b);
    bool down_col = true;
    for (int b = 1; b <= height; ++b) {
      if (b > fp_row) down_col = down_col && consumable(b, width);
    }
    const bool fired_row_wall = along_row && down_col;
    return eq(hand_prev, hand_next) == (fired_col_wall || fired_row_wall);
  }

  bool becomes_empty(int r, int c) const {
    if (eq(p(r, c), kEmptyValue)) return true;

    {  // deleted by shot down column
      bool ok = fp_col == c && eq(p(r, c), hand_prev);
      for (int b = 1; ok && b <= r - 1; ++b) ok = consumable(b, fp_col);
      if (ok) return true;
    }
    {  // deleted by shot along row
      bool ok = fp_row == r && eq(p(r, c), hand_prev) && (r == 1 || eq(p(r - 1, c), kEmptyValue));
      for (int b = 1; ok && b <= c - 1; ++b) ok = consumable(r, b);
      if (ok) return true;
    }
    {  // deleted by shot along row, then down the last column
      bool ok = c == width && fp_row < r && eq(p(r, width), hand_prev);
      for (int b = 1; ok && b <= width; ++b) ok = consumable(fp_row, b);
      for (int b = 1; ok && b <= r - 1; ++b) {
        if (b > fp_row) ok = consumable(b, width);
      }
      for (int b = 1; ok && b <= r - 1; ++b) {
        if (b < fp_row) ok = eq(p(b, width), kEmptyValue);
      }
      if (ok) return true;
    }
    {  // falls out of this cell: row shot underneath, nothing above
      bool ok = (eq(p(r - 1, c), kEmptyValue) || r == 1) && fp_row > r;
      for (int d = 1; ok && d <= c; ++d) ok = consumable(fp_row, d);
      if (ok) return true;
    }
    {  // last column emptied by a wall fall with nothing to fall in
      const bool ok = c == width && wall_fall > 0 && fall_reaches(r, true) &&
                      (eq(p(r - wall_fall, width), kEmptyValue) || r - wall_fall < 1);
      if (ok) return true;
    }
    return false;
  }

  bool stays_same(int r, int c) const {
    if (eq(p(r, c), kEmptyValue)) return true;

    // fired beneath this row, stopped before reaching this column
    if (fp_row > r) {
      for (int d = 1; d <= c; ++d) {
        if (blocking(fp_row, d)) return true;
      }
    }
    // fired along this row, something in the way
    if (fp_row == r) {
      for (int d = 1; d <= c - 1; ++d) {
        if (blocking(r, d)) return true;
      }
    }
    // fired along a row above, not the last column
    if (c < width && fp_row != 0 && fp_row < r) return true;
    // fired along a row above, last column, blocked on the row or the column
    if (c == width && fp_row != 0 && fp_row < r) {
      bool in_way = false;
      for (int d = 1; d <= width; ++d) in_way = in_way || blocking(fp_row, d);
      for (int b = 1; b <= r - 1; ++b) {
        in_way = in_way || (b >= fp_row && blocking(b, width));
      }
      if (in_way) return true;
    }
    // fired down this column, something in the way
    if (fp_col == c) {
      for (int b = 1; b <= r - 1; ++b) {
        if (blocking(b, c)) return true;
      }
    }
    // fired down a different column
    if (fp_col != 0 && fp_col != c) return true;
    // this row or below, same colour falls here, not the last column
    if (c < width && fp_row >= r) {
      bool ok = true;
      for (int d = 1; ok && d <= c; ++d) ok = consumable(fp_row, d);
      if (ok && eq(p(r - 1, c), p(r, c))) return true;
    }
    // this row or below, same colour falls here, last column
    if (c == width && fall_reaches(r, false) && wall_fall > 0 &&
        eq(p(r - wall_fall, c), p(r, c))) {
      return true;
    }
    return false;
  }

  bool changes_to_block(int r, int c) const {
    {  // falls from above, not the last column
      bool ok = c < width && ne(p(r - 1, c), kEmptyValue) && fp_row >= r;
      for (int d = 1; ok && d <= c; ++d) ok = consumable(fp_row, d);
      ok = ok && eq(n(r, c), p(r - 1, c)) && ne(p(r, c), p(r - 1, c));
      if (ok) return true;
    }
    {  // falls from above, last column
      const bool ok = c == width && wall_fall > 0 && fall_reaches(r, false) &&
                      (!corrected || ne(p(r - wall_fall, width), kEmptyValue)) &&
                      eq(n(r, width), p(r - wall_fall, width)) &&
                      ne(p(r, width), p(r - wall_fall, width));
      if (ok) return true;
    }
    {  // swaps with the hand on a row shot
      bool ok = r == fp_row;
      bool matched = false;
      for (int d = 1; ok && d <= c - 1; ++d) {
        ok = consumable(fp_row, d);
        matched = matched || eq(p(fp_row, d), hand_prev);
      }
      ok = ok && matched && eq(hand_next, p(fp_row, c)) && eq(hand_prev, n(fp_row, c)) &&
           ne(hand_prev, p(fp_row, c));
      if (ok) return true;
    }
    {  // swaps with the hand on a column shot
      bool ok = c == fp_col;
      bool matched = false;
      for (int b = 1; ok && b <= r - 1; ++b) {
        ok = consumable(b, fp_col);
        matched = matched || eq(p(b, fp_col), hand_prev);
      }
      ok = ok && matched && eq(hand_next, p(r, fp_col)) && eq(hand_prev, n(r, fp_col)) &&
           ne(hand_prev, p(r, fp_col));
      if (ok) return true;
    }
    {  // swaps with the hand after a row shot falls down the last column
      bool ok = c == width && fp_row < r;
      for (int d = 1; ok && d <= width - 1; ++d) ok = consumable(fp_row, d);
      for (int b = 1; ok && b <= r - 1; ++b) {
        if (b >= fp_row) ok = consumable(b, width);
      }
      bool matched = false;
      for (int d = 1; d <= width - 1; ++d) matched = matched || eq(p(fp_row, d), hand_prev);
      for (int b = 1; b <= r - 1; ++b) {
        matched = matched || (b >= fp_row && eq(p(b, width), hand_prev));
      }
      ok = ok && matched && eq(hand_next, p(r, width)) && eq(hand_prev, n(r, width)) &&
           ne(hand_prev, p(r, width));
      if (ok) return true;
    }
    return false;
  }

  bool wall_fall_block() const {
    for (int i = 1; i <= height; ++i) {
      bool exists = false;
      for (int row = 2; row <= height && !exists; ++row) {
        bool ok = fp_row == row;
        for (int col = 1; ok && col <= width; ++col) ok = consumable(row, col);
        ok = ok && ne(p(row - 1, width), kEmptyValue);
        for (int u = row; ok && u <= row + i - 1; ++u) ok = eq(p(u, width), hand_prev);
        ok = ok && (ne(p(row + i, width), hand_prev) || row + i > height);
        exists = ok;
      }
      if ((wall_fall == i) != exists) return false;
    }
    return true;
  }

  bool cells_block() const {
    for (int r = 1; r <= height; ++r) {
      for (int c = 1; c <= width; ++c) {
        const bool now_empty = eq(n(r, c), kEmptyValue);
        if (now_empty != becomes_empty(r, c)) return false;
        const bool same = eq(n(r, c), p(r, c));
        if (same != stays_same(r, c)) return false;
        const bool changed = ne(n(r, c), p(r, c)) && ne(n(r, c), kEmptyValue);
        if (changed != changes_to_block(r, c)) return false;
      }
    }
    return true;
  }
};

}  // namespace

bool check_transition(const TransitionCandidate& candidate, ModelRevision revision,
                      std::optional<int> colour_count) {
  const GridState& prev = candidate.prev_grid;
  const GridState& next = candidate.next_grid;
  if (prev.height() != next.height() || prev.width() != next.width()) return false;
  const int height = prev.height();
  const int width = prev.width();
  const int colours = colour_count.value_or(std::max<int>(prev.max_colour(), candidate.prev_hand));

  // Variable domains.
  auto is_colour = [&](int v) { return v >= 1 && v <= colours; };
  if (!is_colour(candidate.prev_hand) || !is_colour(candidate.next_hand)) return false;
  if (candidate.wall_fall < 0 || candidate.wall_fall > height) return false;
  for (Cell v : next.cells()) {
    if (v > colours) return false;
  }
  const int fp_row = candidate.shot.fp_row();
  const int fp_col = candidate.shot.fp_col();
  if (fp_row < 0 || fp_row > height || fp_col < 0 || fp_col > width) return false;

  // Exactly one fp axis is zero.
  if (!(fp_row * fp_col == 0 && fp_row + fp_col > 0)) return false;
  // Each move does something useful.
  if (!(colour_sum(prev) > colour_sum(next))) return false;

  const StepEval eval{prev,   next,   candidate.prev_hand, candidate.next_hand,
                      fp_row, fp_col, candidate.wall_fall, height,
                      width,  revision == ModelRevision::corrected};
  return eval.hand_unchanged_block() && eval.wall_fall_block() && eval.cells_block();
}

std::vector<Successor> enumerate_successors(const GridState& prev_grid, Colour prev_hand,
                                            ModelRevision revision,
                                            std::optional<int> colour_count,
                                            const OracleLimits& limits) {
  const int height = prev_grid.height();
  const int width = prev_grid.width();
  const int colours = colour_count.value_or(std::max<int>(prev_grid.max_colour(), prev_hand));
  const int cells = height * width;

  // (colours + 1)^cells grids, times hands, times wallFall values.
  std::size_t space = static_cast<std::size_t>(colours) * static_cast<std::size_t>(height + 1);
  for (int i = 0; i < cells; ++i) {
    space *= static_cast<std::size_t>(colours + 1);
    if (space > limits.max_candidates_per_shot) {
      throw Error(ErrorCode::capacity_exceeded, "successor enumeration space exceeds limit");
    }
  }

  std::vector<Successor> result;
  std::vector<Cell> digits(static_cast<std::size_t>(cells), kEmpty);
  for (const Shot& shot : all_shots(height, width)) {
    for (int hand = 1; hand <= colours; ++hand) {
      for (int fall = 0; fall <= height; ++fall) {
        std::fill(digits.begin(), digits.end(), kEmpty);
        while (true) {
          TransitionCandidate candidate{prev_grid,
                                        prev_hand,
                                        shot,
                                        GridState(height, width, digits),
                                        static_cast<Colour>(hand),
                                        fall};
          if (check_transition(candidate, revision, colours)) {
            result.push_back(Successor{shot, std::move(candidate)});
          }
          // Odometer over all grids, last cell fastest.
          int i = cells - 1;
          while (i >= 0 && digits[static_cast<std::size_t>(i)] == colours) {
            digits[static_cast<std::size_t>(i)] = kEmpty;
            --i;
          }
          if (i < 0) break;
          ++digits[static_cast<std::size_t>(i)];
        }
      }
    }
  }
  return result;
}

namespace {

struct StateKey {
  std::vector<Cell> cells;
  Colour hand;
  bool operator==(const StateKey&) const = default;
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& key) const noexcept {
    std::size_t h = 1469598103934665603ULL ^ key.hand;
    for (Cell c : key.cells) h = (h ^ c) * 1099511628211ULL;
    return h;
  }
};

struct Node {
  GridState grid;
  Colour hand;
  int parent;
  Shot via;
  int depth;
};

}  // namespace

OptimalResult bfs_optimal(const Instance& instance, int max_steps, const OracleLimits& limits) {
  check_instance(instance);
  if (instance.init_grid.cell_count() > limits.max_cells) {
    throw Error(ErrorCode::capacity_exceeded,
                "grid has " + std::to_string(instance.init_grid.cell_count()) +
                    " cells, above the search oracle capacity of " + std::to_string(limits.max_cells));
  }

  OptimalResult best;
  if (is_goal(instance.init_grid, instance.goal)) {
    best.found = true;
    best.hand0 = 1;
    return best;
  }

  const int colours = instance.colour_count();
  for (int hand0 = 1; hand0 <= colours; ++hand0) {
    // Only strictly shorter plans can beat an earlier hand.
    const int depth_limit = best.found ? std::min(max_steps, best.length - 1) : max_steps;
    if (depth_limit < 1) break;

    std::vector<Node> nodes;
    std::unordered_map<StateKey, int, StateKeyHash> seen;
    std::deque<int> queue;
    nodes.push_back(Node{instance.init_grid, static_cast<Colour>(hand0), -1, Shot::row(1), 0});
    seen.emplace(StateKey{std::vector<Cell>(instance.init_grid.cells().begin(),
                                            instance.init_grid.cells().end()),
                          static_cast<Colour>(hand0)},
                 0);
    queue.push_back(0);

    int goal_node = -1;
    while (!queue.empty() && goal_node < 0) {
      const int index = queue.front();
      queue.pop_front();
      if (nodes[static_cast<std::size_t>(index)].depth >= depth_limit) continue;
      for (const Shot& shot : all_shots(instance.height(), instance.width())) {
        const Node& node = nodes[static_cast<std::size_t>(index)];
        const ShotResult step = apply_shot(node.grid, node.hand, shot);
        if (!step) continue;
        StateKey key{std::vector<Cell>(step->next_grid.cells().begin(), step->next_grid.cells().end()),
                     step->next_hand};
        if (seen.contains(key)) continue;
        if (seen.size() + best.states_visited >= limits.max_states) {
          throw Error(ErrorCode::capacity_exceeded, "search oracle state bound reached");
        }
        const int child = static_cast<int>(nodes.size());
        seen.emplace(std::move(key), child);
        const int depth = node.depth + 1;
        nodes.push_back(Node{step->next_grid, step->next_hand, index, shot, depth});
        if (is_goal(nodes.back().grid, instance.goal)) {
          goal_node = child;
          break;
        }
        queue.push_back(child);
      }
    }
    best.states_visited += seen.size();

    if (goal_node >= 0) {
      std::vector<Shot> plan;
      for (int i = goal_node; nodes[static_cast<std::size_t>(i)].parent >= 0;
           i = nodes[static_cast<std::size_t>(i)].parent) {
        plan.push_back(nodes[static_cast<std::size_t>(i)].via);
      }
      std::reverse(plan.begin(), plan.end());
      best.found = true;
      best.length = static_cast<int>(plan.size());
      best.hand0 = static_cast<Colour>(hand0);
      best.plan = std::move(plan);
    }
  }
  return best;
}

}  // namespace plotting
