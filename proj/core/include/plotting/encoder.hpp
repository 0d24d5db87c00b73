#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "plotting/cnf.hpp"
#include "plotting/grid.hpp"
#include "plotting/oracle.hpp"

namespace plotting {

/// How the "each move does something useful" constraint is expressed.
enum class ProgressEncoding {
  /// Some cell is occupied before the step and empty after it.
  consumption_witness,
  /// The colour sum strictly decreases, via binary adders and a comparator.
  cardinality_compare,
};

struct EncodeOptions {
  int steps = 1;
  std::optional<Colour> fixed_initial_hand;
  ProgressEncoding progress = ProgressEncoding::consumption_witness;
  ModelRevision revision = ModelRevision::corrected;
};

/// One-hot variable layout for a horizon. Allocation is interleaved by step
/// so that lower indices belong to earlier steps:
///   step 0:  grid(0, r, c, 0..K), hand(0, 1..K)
///   step s:  fpRow(s, 0..H), fpCol(s, 0..W), wallFall(s, 0..H),
///            grid(s, r, c, 0..K), hand(s, 1..K)
/// Auxiliary (Tseitin and counter) variables follow all primaries.
class VarMap {
 public:
  VarMap() = default;
  VarMap(int steps, int height, int width, int colours);

  int steps() const noexcept { return steps_; }
  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  int colours() const noexcept { return colours_; }

  cnf::VarId grid(int step, int row, int col, int value) const;
  cnf::VarId hand(int step, int colour) const;
  cnf::VarId fp_row(int step, int value) const;
  cnf::VarId fp_col(int step, int value) const;
  cnf::VarId wall_fall(int step, int value) const;

  /// Number of primary (state and action) variables.
  std::uint32_t primary_count() const noexcept;

 private:
  std::uint32_t step_base(int step) const noexcept;
  std::uint32_t state_offset(int step) const noexcept;

  int steps_ = 0;
  int height_ = 0;
  int width_ = 0;
  int colours_ = 0;
};

struct Encoding {
  cnf::CnfFormula formula;
  VarMap vars;
};

/// Bounded-horizon formula: satisfiable iff some initial hand (or the fixed
/// one) admits exactly `steps` non-null shots ending in a goal state.
/// Throws Error(invalid_horizon) when steps < 1.
Encoding encode(const Instance& instance, const EncodeOptions& options);

struct DecodedTrace {
  Colour hand0 = 0;
  std::vector<Shot> plan;
  std::vector<int> wall_falls;      // per step 1..steps
  std::vector<GridState> grids;     // steps + 1 states
  std::vector<Colour> hands;        // steps + 1 hands
};

/// Reads plan and trajectory off a model. Throws Error(malformed_model) if any
/// one-hot group does not have exactly one true value.
DecodedTrace decode(const cnf::Assignment& model, const VarMap& vars);

}  // namespace plotting
