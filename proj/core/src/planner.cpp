#include "plotting/planner.hpp"

#include <algorithm>
#include <future>

#include "plotting/error.hpp"
#include "plotting/oracle.hpp"

namespace plotting {

namespace {

struct Probe {
  HorizonStatus status;
  std::optional<Found> plan;
};

cnf::SatOutcome run_backend(const cnf::CnfFormula& formula, const Backend& backend,
                            std::optional<std::chrono::milliseconds> timeout) {
  if (const auto* internal = std::get_if<InternalBackend>(&backend)) {
    cnf::DpllOptions options;
    options.max_decisions = internal->max_decisions;
    if (timeout) options.deadline = std::chrono::steady_clock::now() + *timeout;
    return cnf::dpll_solve(formula, options);
  }
  return cnf::external_solve(formula, std::get<ExternalBackend>(backend).command, timeout);
}

Probe finish_probe(const Instance& instance, const Encoding& encoding, const Backend& backend,
                   const SolveOptions& options) {
  const int steps = encoding.vars.steps();
  const auto start = std::chrono::steady_clock::now();
  Probe probe;
  probe.status.steps = steps;
  try {
    const cnf::SatOutcome outcome = run_backend(encoding.formula, backend, options.per_horizon_timeout);
    probe.status.status = cnf::status_of(outcome);
    if (const auto* sat = std::get_if<cnf::Sat>(&outcome)) {
      DecodedTrace trace = decode(sat->model, encoding.vars);
      const ValidationReport report = validate_plan(instance, trace.hand0, trace.plan);
      if (!report.valid) {
        throw Error(ErrorCode::malformed_model, "decoded plan does not replay under the engine");
      }
      probe.plan = Found{steps, trace.hand0, std::move(trace.plan)};
    }
  } catch (const Error& e) {
    throw Error(e.code(), "horizon " + std::to_string(steps) + ": " + e.what());
  }
  probe.status.elapsed = std::chrono::steady_clock::now() - start;
  return probe;
}

Encoding encode_horizon(const Instance& instance, int steps, const SolveOptions& options) {
  EncodeOptions encode_options;
  encode_options.steps = steps;
  encode_options.fixed_initial_hand = options.fixed_initial_hand;
  encode_options.progress = options.progress;
  encode_options.revision = options.revision;
  try {
    Encoding encoding = encode(instance, encode_options);
    if (options.on_formula) options.on_formula(steps, encoding.formula);
    return encoding;
  } catch (const Error& e) {
    throw Error(e.code(), "horizon " + std::to_string(steps) + ": " + e.what());
  }
}

}  // namespace

PlanResult solve(const Instance& instance, const Backend& backend, const SolveOptions& options) {
  check_instance(instance);
  PlanResult result{Found{}, {}};
  if (is_goal(instance.init_grid, instance.goal)) {
    result.verdict = Found{0, options.fixed_initial_hand.value_or(Colour{1}), {}};
    return result;
  }

  int bound = instance.block_limit() - instance.goal;
  if (options.max_steps) bound = std::min(bound, *options.max_steps);
  const int workers = std::max(1, options.workers);

  bool undecided = false;
  for (int first = 1; first <= bound; first += workers) {
    const int last = std::min(bound, first + workers - 1);
    std::vector<Probe> batch;
    if (workers == 1) {
      batch.push_back(finish_probe(instance, encode_horizon(instance, first, options), backend, options));
    } else {
      std::vector<Encoding> encodings;
      for (int steps = first; steps <= last; ++steps) encodings.push_back(encode_horizon(instance, steps, options));
      std::vector<std::future<Probe>> futures;
      for (const Encoding& encoding : encodings) {
        futures.push_back(std::async(std::launch::async, [&instance, &encoding, &backend, &options] {
          return finish_probe(instance, encoding, backend, options);
        }));
      }
      for (auto& f : futures) batch.push_back(f.get());
    }

    // Selection mirrors the sequential loop: stop at the first satisfiable horizon.
    for (Probe& probe : batch) {
      result.horizons.push_back(probe.status);
      if (probe.status.status == cnf::SatStatus::unknown) undecided = true;
      if (probe.plan) {
        if (undecided) {
          result.verdict = UnknownResult{"horizon " + std::to_string(probe.status.steps) +
                                         " is satisfiable but a smaller horizon is undecided"};
        } else {
          result.verdict = std::move(*probe.plan);
        }
        return result;
      }
    }
  }

  if (undecided) {
    result.verdict = UnknownResult{"no satisfiable horizon found and some horizons are undecided"};
  } else {
    result.verdict = NoPlanWithinBound{bound};
  }
  return result;
}

ValidationReport validate_plan(const Instance& instance, Colour hand0, const std::vector<Shot>& plan) {
  ValidationReport report;
  GridState grid = instance.init_grid;
  Colour hand = hand0;
  report.grids.push_back(grid);
  report.hands.push_back(hand);
  const int colours = instance.colour_count();
  bool steps_ok = hand0 >= 1 && hand0 <= colours;
  if (!steps_ok) {
    report.failed_step = 0;
    report.error = ShotError::out_of_range;
  }

  for (std::size_t i = 0; steps_ok && i < plan.size(); ++i) {
    const ShotResult step = apply_shot(grid, hand, plan[i]);
    if (!step) {
      report.failed_step = static_cast<int>(i) + 1;
      report.error = step.error();
      steps_ok = false;
      break;
    }
    const TransitionCandidate candidate{grid, hand, plan[i], step->next_grid, step->next_hand, step->wall_fall};
    if (!check_transition(candidate, ModelRevision::corrected, colours)) {
      report.failed_step = static_cast<int>(i) + 1;
      report.oracle_disagreement = true;
      steps_ok = false;
      break;
    }
    grid = step->next_grid;
    hand = step->next_hand;
    report.grids.push_back(grid);
    report.hands.push_back(hand);
  }

  report.final_blocks = block_count(grid);
  report.goal_reached = is_goal(grid, instance.goal);
  report.valid = steps_ok && report.goal_reached;
  return report;
}

}  // namespace plotting
