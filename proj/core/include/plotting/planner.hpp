#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "plotting/cnf.hpp"
#include "plotting/encoder.hpp"
#include "plotting/engine.hpp"
#include "plotting/grid.hpp"

namespace plotting {

struct InternalBackend {
  std::uint64_t max_decisions = UINT64_MAX;
};
struct ExternalBackend {
  std::string command;
};
using Backend = std::variant<InternalBackend, ExternalBackend>;

struct SolveOptions {
  /// Largest horizon probed; capped at NOBLOCKS - goal.
  std::optional<int> max_steps;
  std::optional<std::chrono::milliseconds> per_horizon_timeout;
  std::optional<Colour> fixed_initial_hand;
  ProgressEncoding progress = ProgressEncoding::consumption_witness;
  ModelRevision revision = ModelRevision::corrected;
  /// Horizons probed at once. The selected result equals the sequential one.
  int workers = 1;
  /// Called with every encoded formula before it is solved.
  std::function<void(int steps, const cnf::CnfFormula&)> on_formula;
};

struct HorizonStatus {
  int steps = 0;
  cnf::SatStatus status = cnf::SatStatus::unknown;
  std::chrono::duration<double> elapsed{};
};

struct Found {
  int horizon = 0;
  Colour hand0 = 1;
  std::vector<Shot> plan;
};
struct NoPlanWithinBound {
  int max_steps = 0;
};
struct UnknownResult {
  std::string reason;
};

struct PlanResult {
  std::variant<Found, NoPlanWithinBound, UnknownResult> verdict;
  /// Every horizon probed, in increasing order.
  std::vector<HorizonStatus> horizons;

  const Found* found() const { return std::get_if<Found>(&verdict); }
  bool no_plan() const { return std::holds_alternative<NoPlanWithinBound>(verdict); }
  bool unknown() const { return std::holds_alternative<UnknownResult>(verdict); }
};

/// Planning as satisfiability: probes horizons 1, 2, ... up to
/// min(max_steps, NOBLOCKS - goal) and returns the first satisfiable one,
/// decoded and replayed through the engine. A goal satisfied by the initial
/// grid yields horizon 0 with hand 1. An undecided horizon below the first
/// satisfiable one makes the result Unknown.
PlanResult solve(const Instance& instance, const Backend& backend, const SolveOptions& options = {});

struct ValidationReport {
  bool valid = false;
  /// 1-based index of the first shot that failed, if any.
  std::optional<int> failed_step;
  std::optional<ShotError> error;
  /// A step the constraint checker rejected although the engine applied it.
  bool oracle_disagreement = false;
  int final_blocks = 0;
  bool goal_reached = false;
  std::vector<GridState> grids;
  std::vector<Colour> hands;
};

/// Replays `plan` from (initial grid, hand0) through the engine, cross-checking
/// each step with check_transition.
ValidationReport validate_plan(const Instance& instance, Colour hand0, const std::vector<Shot>& plan);

}  // namespace plotting
