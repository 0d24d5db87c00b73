#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace plotting::cnf {

/// Propositional variable, allocated densely from 1.
struct VarId {
  std::uint32_t index = 0;
  friend constexpr auto operator<=>(const VarId&, const VarId&) = default;
};

struct Literal {
  VarId var;
  bool negated = false;

  constexpr Literal operator~() const noexcept { return Literal{var, !negated}; }
  /// Signed DIMACS form.
  constexpr std::int64_t dimacs() const noexcept {
    return negated ? -static_cast<std::int64_t>(var.index) : static_cast<std::int64_t>(var.index);
  }
  static constexpr Literal from_dimacs(std::int64_t value) noexcept {
    return value < 0 ? Literal{VarId{static_cast<std::uint32_t>(-value)}, true}
                     : Literal{VarId{static_cast<std::uint32_t>(value)}, false};
  }

  friend constexpr auto operator<=>(const Literal&, const Literal&) = default;
};

using Clause = std::vector<Literal>;

class CnfFormula {
 public:
  VarId new_var();
  std::uint32_t var_count() const noexcept { return var_count_; }

  /// Appends a clause. Empty clauses and unallocated variables are rejected.
  void add_clause(std::span<const Literal> literals);
  void add_clause(std::initializer_list<Literal> literals);
  /// Makes the formula unsatisfiable without an empty clause: x and not-x.
  void add_contradiction();

  const std::vector<Clause>& clauses() const noexcept { return clauses_; }
  std::size_t clause_count() const noexcept { return clauses_.size(); }

  /// Builds a formula from already-validated parts (used by the DIMACS reader).
  static CnfFormula from_parts(std::uint32_t var_count, std::vector<Clause> clauses);

 private:
  std::uint32_t var_count_ = 0;
  std::vector<Clause> clauses_;
};

/// Model indexed by variable: model[v] for v in 1..varCount; model[0] is unused.
using Assignment = std::vector<bool>;

struct Sat {
  Assignment model;
};
struct Unsat {};
struct Unknown {
  std::string reason;
};
using SatOutcome = std::variant<Sat, Unsat, Unknown>;

enum class SatStatus { sat, unsat, unknown };
SatStatus status_of(const SatOutcome& outcome) noexcept;
const char* to_string(SatStatus status) noexcept;

bool satisfies(const CnfFormula& formula, const Assignment& model);

// -- Encodings -------------------------------------------------------------

/// At-least-one clause plus pairwise at-most-one clauses.
void exactly_one(CnfFormula& formula, std::span<const Literal> literals);

enum class Gate { and_, or_, iff };

/// Fresh literal equivalent to the gate over `inputs`, with clauses in both
/// directions. An n-ary iff folds left: ((x1 <-> x2) <-> x3) ...
Literal reify(CnfFormula& formula, Gate gate, std::span<const Literal> inputs);

/// Sequential-counter encoding of "at least k of `literals` are true".
/// Throws infeasible_bound when k exceeds the literal count.
void at_least_k(CnfFormula& formula, std::span<const Literal> literals, std::size_t k);

// -- DIMACS ----------------------------------------------------------------

void write_dimacs(const CnfFormula& formula, std::ostream& sink);
std::string to_dimacs(const CnfFormula& formula);
/// Reads `p cnf` text; comment lines (`c ...`) are skipped. Throws
/// Error(parse_failure) on grammar violations.
CnfFormula parse_dimacs(std::istream& source);

// -- Solvers ---------------------------------------------------------------

struct DpllOptions {
  /// Decision limit; exceeding it yields Unknown.
  std::uint64_t max_decisions = UINT64_MAX;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// DPLL with unit propagation and chronological backtracking. Branches on the
/// lowest-index unassigned variable, trying true first.
SatOutcome dpll_solve(const CnfFormula& formula, const DpllOptions& options = {});

/// Writes the formula to a temporary DIMACS file, runs `command` with the
/// file path appended as its last argument and reads SAT-competition output
/// (`s ...` status and `v ...` value lines). Exit codes are ignored.
/// `command` is split on whitespace. Throws Error(spawn_failure) if the
/// process cannot be started and Error(parse_failure) on malformed output or
/// a model that violates the formula; a timeout yields Unknown.
SatOutcome external_solve(const CnfFormula& formula, const std::string& command,
                          std::optional<std::chrono::milliseconds> timeout = std::nullopt);

/// Parses solver stdout in SAT-competition format against `var_count`.
SatOutcome parse_solver_output(const std::string& output, std::uint32_t var_count);

}  // namespace plotting::cnf
