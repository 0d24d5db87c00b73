#include "cli.hpp"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "plotting/engine.hpp"
#include "plotting/error.hpp"
#include "plotting/generator.hpp"
#include "plotting/io.hpp"
#include "plotting/oracle.hpp"
#include "plotting/planner.hpp"

namespace plotting::cli {

namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GenerateArgs {
  int height = 0;
  int width = 0;
  int colours = 0;
  std::optional<std::uint64_t> seed;
  bool all = false;
  bool canonical = false;
  std::optional<int> goal;
  bool allow_missing_colours = false;
  std::string out_dir;
};

struct SolveArgs {
  std::string instance;
  std::optional<int> goal;
  std::string backend = "internal";
  std::optional<int> max_steps;
  std::optional<int> hand;
  std::string emit_cnf;
  std::optional<double> timeout;
  std::string progress = "witness";
};

struct PlanArgs {
  std::string instance;
  std::string plan;
  std::optional<int> goal;
};

struct OracleArgs {
  std::string instance;
  std::optional<int> goal;
  std::optional<int> max_steps;
};

/// Instance with the goal taken from the flag, else from the file.
Instance load_instance(const std::string& path, std::optional<int> goal_flag, bool goal_required = true) {
  const io::InstanceFile file = io::read_instance_file(path);
  const std::optional<int> goal = goal_flag ? goal_flag : file.goal;
  if (!goal && goal_required) throw UsageError("no goal: pass --goal or add a 'goal' line to " + path);
  Instance instance{file.grid, goal.value_or(file.grid.cell_count())};
  if (instance.goal < 0 || instance.goal > instance.block_limit()) {
    throw UsageError("goal must lie in 0.." + std::to_string(instance.block_limit()));
  }
  return instance;
}

Backend parse_backend(const std::string& text, const std::string& solver_env) {
  if (text == "internal") return InternalBackend{};
  if (text == "external") {
    if (solver_env.empty()) throw UsageError("--backend external needs PLOTTING_SOLVER or external:CMD");
    return ExternalBackend{solver_env};
  }
  const std::string prefix = "external:";
  if (text.rfind(prefix, 0) == 0 && text.size() > prefix.size()) return ExternalBackend{text.substr(prefix.size())};
  throw UsageError("unknown backend '" + text + "'");
}

std::string instance_name(const GenerateArgs& a, const std::string& tag) {
  return "plotting_" + std::to_string(a.height) + "x" + std::to_string(a.width) + "_c" + std::to_string(a.colours) +
         "_" + tag + ".txt";
}

void write_file(const fs::path& path, const io::InstanceFile& file) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io_failure, "cannot write '" + path.string() + "'");
  io::write_instance(out, file);
  if (!out) throw Error(ErrorCode::io_failure, "write to '" + path.string() + "' failed");
}

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  const int modes = (a.seed ? 1 : 0) + (a.all ? 1 : 0) + (a.canonical ? 1 : 0);
  if (modes != 1) throw UsageError("pass exactly one of --seed, --all, --canonical");

  GeneratorSpec spec{a.height, a.width, a.colours, a.goal.value_or(0), a.allow_missing_colours};
  auto as_file = [&](const Instance& instance) { return io::InstanceFile{instance.init_grid, a.goal}; };

  std::error_code ec;
  fs::create_directories(a.out_dir, ec);
  if (ec) throw Error(ErrorCode::io_failure, "cannot create '" + a.out_dir + "': " + ec.message());

  std::size_t count = 0;
  if (a.seed) {
    const Instance instance = random_instance(spec, *a.seed);
    write_file(fs::path(a.out_dir) / instance_name(a, "seed" + std::to_string(*a.seed)), as_file(instance));
    count = 1;
  } else {
    InstanceEnumerator it(spec, a.all ? Enumeration::all : Enumeration::canonical);
    while (auto instance = it.next()) {
      std::ostringstream tag;
      tag << std::setw(6) << std::setfill('0') << ++count;
      write_file(fs::path(a.out_dir) / instance_name(a, tag.str()), as_file(*instance));
    }
  }
  out << count << '\n';
  return kExitOk;
}

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err, const std::string& solver_env) {
  const Instance instance = load_instance(a.instance, a.goal);
  const Backend backend = parse_backend(a.backend, solver_env);

  SolveOptions options;
  options.max_steps = a.max_steps;
  if (a.hand) {
    if (*a.hand < 1 || *a.hand > instance.colour_count()) {
      throw UsageError("--hand must lie in 1.." + std::to_string(instance.colour_count()));
    }
    options.fixed_initial_hand = static_cast<Colour>(*a.hand);
  }
  if (a.timeout) {
    if (*a.timeout <= 0) throw UsageError("--timeout must be positive");
    options.per_horizon_timeout = std::chrono::milliseconds(static_cast<std::int64_t>(*a.timeout * 1000.0));
  }
  options.progress = a.progress == "cardinality" ? ProgressEncoding::cardinality_compare
                                                 : ProgressEncoding::consumption_witness;
  if (!a.emit_cnf.empty()) {
    std::error_code ec;
    fs::create_directories(a.emit_cnf, ec);
    if (ec) throw Error(ErrorCode::io_failure, "cannot create '" + a.emit_cnf + "': " + ec.message());
    options.on_formula = [dir = a.emit_cnf](int steps, const cnf::CnfFormula& formula) {
      const fs::path path = fs::path(dir) / ("phi_" + std::to_string(steps) + ".cnf");
      std::ofstream file(path);
      if (!file) throw Error(ErrorCode::io_failure, "cannot write '" + path.string() + "'");
      cnf::write_dimacs(formula, file);
    };
  }

  const PlanResult result = solve(instance, backend, options);
  if (const Found* found = result.found()) {
    io::write_plan(out, io::PlanFile{found->hand0, found->plan});
    return kExitOk;
  }
  if (result.no_plan()) {
    out << "UNSAT\n";
    return kExitUnsat;
  }
  out << "UNKNOWN\n";
  err << std::get<UnknownResult>(result.verdict).reason << '\n';
  return kExitUnknown;
}

std::string describe_failure(const ValidationReport& report, const std::vector<Shot>& plan, int goal) {
  if (report.failed_step && *report.failed_step == 0) {
    return "initial hand is not a colour of the grid";
  }
  if (report.failed_step) {
    const int step = *report.failed_step;
    std::string what = "step " + std::to_string(step) + " (" + to_string(plan[static_cast<std::size_t>(step - 1)]) + "): ";
    if (report.oracle_disagreement) return what + "rejected by the transition constraints";
    return what + (report.error == ShotError::null_move ? "null move" : "shot outside the grid");
  }
  return "goal not reached: " + std::to_string(report.final_blocks) + " blocks remain, goal is " +
         std::to_string(goal);
}

int cmd_validate(const PlanArgs& a, std::ostream& out, std::ostream& err) {
  const Instance instance = load_instance(a.instance, a.goal);
  const io::PlanFile plan = io::read_plan_file(a.plan);
  const ValidationReport report = validate_plan(instance, plan.hand, plan.shots);
  if (!report.valid) {
    err << "invalid plan: " << describe_failure(report, plan.shots, instance.goal) << '\n';
    return kExitInvalidPlan;
  }
  out << "valid: " << report.final_blocks << " blocks remain, goal " << instance.goal << '\n';
  return kExitOk;
}

int cmd_trace(const PlanArgs& a, std::ostream& out, std::ostream& err) {
  const Instance instance = load_instance(a.instance, a.goal, false);
  const io::PlanFile plan = io::read_plan_file(a.plan);
  const ValidationReport report = validate_plan(instance, plan.hand, plan.shots);
  for (std::size_t i = 0; i < report.grids.size(); ++i) {
    if (i > 0) out << '\n';
    out << "step " << i;
    if (i > 0) out << ": " << to_string(plan.shots[i - 1]);
    out << '\n' << io::render(report.grids[i]) << "hand " << static_cast<int>(report.hands[i]) << '\n';
  }
  if (!report.valid) {
    err << "invalid plan: " << describe_failure(report, plan.shots, instance.goal) << '\n';
    return kExitInvalidPlan;
  }
  return kExitOk;
}

int cmd_oracle(const OracleArgs& a, std::ostream& out) {
  const Instance instance = load_instance(a.instance, a.goal);
  const int bound = a.max_steps.value_or(instance.block_limit() - instance.goal);
  const OptimalResult result = bfs_optimal(instance, bound);
  if (!result.found) {
    out << "NONE\n";
    return kExitUnsat;
  }
  out << result.length << '\n';
  io::write_plan(out, io::PlanFile{result.hand0, result.plan});
  return kExitOk;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::io_failure:
    case ErrorCode::spawn_failure:
    case ErrorCode::malformed_model:
      return kExitIo;
    case ErrorCode::capacity_exceeded:
      return kExitCapacity;
    default:
      return kExitUsage;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const std::string& solver_env) {
  CLI::App app{"Plotting puzzle toolkit: engine, SAT planner and optimal search", "plotting"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write random or enumerated instances");
  generate->add_option("--height", gen.height, "Grid rows")->required()->check(CLI::PositiveNumber);
  generate->add_option("--width", gen.width, "Grid columns")->required()->check(CLI::PositiveNumber);
  generate->add_option("--colours", gen.colours, "Number of colours")->required();
  generate->add_option("--seed", gen.seed, "Random instance from this seed");
  generate->add_flag("--all", gen.all, "Every full grid");
  generate->add_flag("--canonical", gen.canonical, "Every full grid up to colour renaming");
  generate->add_option("--goal", gen.goal, "Goal line written into each file");
  generate->add_flag("--allow-missing-colours", gen.allow_missing_colours, "Do not require every colour to occur");
  generate->add_option("--out", gen.out_dir, "Output directory")->required();

  SolveArgs sol;
  auto* solve_cmd = app.add_subcommand("solve", "Find a minimal plan by planning as satisfiability");
  solve_cmd->add_option("--instance", sol.instance, "Instance file")->required();
  solve_cmd->add_option("--goal", sol.goal, "Blocks allowed to remain (overrides the file)");
  solve_cmd->add_option("--backend", sol.backend, "internal | external | external:CMD");
  solve_cmd->add_option("--max-steps", sol.max_steps, "Largest horizon probed")->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--hand", sol.hand, "Fix the initial held colour");
  solve_cmd->add_option("--emit-cnf", sol.emit_cnf, "Write phi_<steps>.cnf for every horizon into this directory");
  solve_cmd->add_option("--timeout", sol.timeout, "Per-horizon time limit in seconds");
  solve_cmd->add_option("--progress", sol.progress, "Progress encoding")
      ->check(CLI::IsMember({"witness", "cardinality"}));

  PlanArgs val;
  auto* validate_cmd = app.add_subcommand("validate", "Check that a plan is legal and reaches the goal");
  validate_cmd->add_option("--instance", val.instance, "Instance file")->required();
  validate_cmd->add_option("--plan", val.plan, "Plan file")->required();
  validate_cmd->add_option("--goal", val.goal, "Blocks allowed to remain (overrides the file)");

  PlanArgs tr;
  auto* trace_cmd = app.add_subcommand("trace", "Print the grid after every step of a plan");
  trace_cmd->add_option("--instance", tr.instance, "Instance file")->required();
  trace_cmd->add_option("--plan", tr.plan, "Plan file")->required();
  trace_cmd->add_option("--goal", tr.goal, "Blocks allowed to remain (overrides the file)");

  OracleArgs orc;
  auto* oracle_cmd = app.add_subcommand("oracle", "Minimal plan by breadth-first search (small grids)");
  oracle_cmd->add_option("--instance", orc.instance, "Instance file")->required();
  oracle_cmd->add_option("--goal", orc.goal, "Blocks allowed to remain (overrides the file)");
  oracle_cmd->add_option("--max-steps", orc.max_steps, "Search depth")->check(CLI::NonNegativeNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen, out);
    if (solve_cmd->parsed()) return cmd_solve(sol, out, err, solver_env);
    if (validate_cmd->parsed()) return cmd_validate(val, out, err);
    if (trace_cmd->parsed()) return cmd_trace(tr, out, err);
    return cmd_oracle(orc, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
}

}  // namespace plotting::cli
