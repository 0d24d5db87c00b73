#include "plotting/cnf.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "plotting/error.hpp"

namespace plotting::cnf {

VarId CnfFormula::new_var() { return VarId{++var_count_}; }

void CnfFormula::add_clause(std::span<const Literal> literals) {
  if (literals.empty()) {
    throw Error(ErrorCode::invalid_argument, "empty clause");
  }
  for (const Literal& lit : literals) {
    if (lit.var.index == 0 || lit.var.index > var_count_) {
      throw Error(ErrorCode::invalid_argument,
                  "clause references unallocated variable " + std::to_string(lit.var.index));
    }
  }
  clauses_.emplace_back(literals.begin(), literals.end());
}

void CnfFormula::add_clause(std::initializer_list<Literal> literals) {
  add_clause(std::span<const Literal>(literals.begin(), literals.size()));
}

void CnfFormula::add_contradiction() {
  const Literal x{new_var(), false};
  add_clause({x});
  add_clause({~x});
}

CnfFormula CnfFormula::from_parts(std::uint32_t var_count, std::vector<Clause> clauses) {
  CnfFormula formula;
  formula.var_count_ = var_count;
  for (auto& clause : clauses) formula.add_clause(clause);
  return formula;
}

SatStatus status_of(const SatOutcome& outcome) noexcept {
  if (std::holds_alternative<Sat>(outcome)) return SatStatus::sat;
  if (std::holds_alternative<Unsat>(outcome)) return SatStatus::unsat;
  return SatStatus::unknown;
}

const char* to_string(SatStatus status) noexcept {
  switch (status) {
    case SatStatus::sat: return "SAT";
    case SatStatus::unsat: return "UNSAT";
    case SatStatus::unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

bool satisfies(const CnfFormula& formula, const Assignment& model) {
  if (model.size() != static_cast<std::size_t>(formula.var_count()) + 1) return false;
  for (const Clause& clause : formula.clauses()) {
    bool ok = false;
    for (const Literal& lit : clause) {
      if (model[lit.var.index] != lit.negated) {
        ok = true;
        break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

void exactly_one(CnfFormula& formula, std::span<const Literal> literals) {
  if (literals.empty()) {
    throw Error(ErrorCode::empty_selection, "exactly_one over no literals");
  }
  formula.add_clause(literals);
  for (std::size_t i = 0; i < literals.size(); ++i) {
    for (std::size_t j = i + 1; j < literals.size(); ++j) {
      formula.add_clause({~literals[i], ~literals[j]});
    }
  }
}

Literal reify(CnfFormula& formula, Gate gate, std::span<const Literal> inputs) {
  if (inputs.empty()) {
    throw Error(ErrorCode::empty_selection, "reify over no inputs");
  }
  switch (gate) {
    case Gate::and_: {
      const Literal out{formula.new_var(), false};
      Clause back{out};
      for (const Literal& in : inputs) {
        formula.add_clause({~out, in});
        back.push_back(~in);
      }
      formula.add_clause(back);
      return out;
    }
    case Gate::or_: {
      const Literal out{formula.new_var(), false};
      Clause forward{~out};
      for (const Literal& in : inputs) {
        formula.add_clause({out, ~in});
        forward.push_back(in);
      }
      formula.add_clause(forward);
      return out;
    }
    case Gate::iff: {
      Literal acc = inputs.front();
      if (inputs.size() == 1) {
        const Literal out{formula.new_var(), false};
        formula.add_clause({~out, acc});
        formula.add_clause({out, ~acc});
        return out;
      }
      for (std::size_t i = 1; i < inputs.size(); ++i) {
        const Literal b = inputs[i];
        const Literal out{formula.new_var(), false};
        formula.add_clause({~out, ~acc, b});
        formula.add_clause({~out, acc, ~b});
        formula.add_clause({out, acc, b});
        formula.add_clause({out, ~acc, ~b});
        acc = out;
      }
      return acc;
    }
  }
  throw Error(ErrorCode::invalid_argument, "unknown gate");
}

void at_least_k(CnfFormula& formula, std::span<const Literal> literals, std::size_t k) {
  const std::size_t n = literals.size();
  if (k > n) {
    throw Error(ErrorCode::infeasible_bound,
                "at least " + std::to_string(k) + " of " + std::to_string(n) + " literals");
  }
  if (k == 0) return;

  // At least k of x  <=>  at most m = n - k of (not x), sequential counter.
  const std::size_t m = n - k;
  auto y = [&](std::size_t i) { return ~literals[i]; };
  if (m == 0) {
    for (std::size_t i = 0; i < n; ++i) formula.add_clause({~y(i)});
    return;
  }

  // s[i][j]: at least j+1 of y(0..i) are true.
  std::vector<std::vector<Literal>> s(n - 1, std::vector<Literal>(m));
  for (auto& row : s) {
    for (auto& lit : row) lit = Literal{formula.new_var(), false};
  }
  formula.add_clause({~y(0), s[0][0]});
  for (std::size_t j = 1; j < m; ++j) formula.add_clause({~s[0][j]});
  for (std::size_t i = 1; i + 1 < n; ++i) {
    formula.add_clause({~y(i), s[i][0]});
    formula.add_clause({~s[i - 1][0], s[i][0]});
    for (std::size_t j = 1; j < m; ++j) {
      formula.add_clause({~y(i), ~s[i - 1][j - 1], s[i][j]});
      formula.add_clause({~s[i - 1][j], s[i][j]});
    }
    formula.add_clause({~y(i), ~s[i - 1][m - 1]});
  }
  formula.add_clause({~y(n - 1), ~s[n - 2][m - 1]});
}

void write_dimacs(const CnfFormula& formula, std::ostream& sink) {
  sink << "p cnf " << formula.var_count() << ' ' << formula.clause_count() << '\n';
  for (const Clause& clause : formula.clauses()) {
    for (const Literal& lit : clause) sink << lit.dimacs() << ' ';
    sink << "0\n";
  }
  if (!sink) {
    throw Error(ErrorCode::io_failure, "failed to write DIMACS output");
  }
}

std::string to_dimacs(const CnfFormula& formula) {
  std::ostringstream out;
  write_dimacs(formula, out);
  return out.str();
}

CnfFormula parse_dimacs(std::istream& source) {
  auto fail = [](const std::string& why) -> CnfFormula {
    throw Error(ErrorCode::parse_failure, "DIMACS: " + why);
  };

  std::string line;
  long long vars = -1;
  long long declared_clauses = -1;
  while (std::getline(source, line)) {
    std::istringstream in(line);
    std::string head;
    if (!(in >> head) || head == "c" || head.front() == 'c') continue;
    if (head != "p") return fail("expected problem line, got '" + line + "'");
    std::string format;
    if (!(in >> format >> vars >> declared_clauses) || format != "cnf" || vars < 0 ||
        declared_clauses < 0) {
      return fail("malformed problem line '" + line + "'");
    }
    std::string extra;
    if (in >> extra) return fail("trailing tokens on problem line");
    break;
  }
  if (vars < 0) return fail("missing problem line");

  std::vector<Clause> clauses;
  Clause current;
  std::string token;
  while (source >> token) {
    if (token == "c") {
      std::getline(source, line);
      continue;
    }
    long long value = 0;
    std::size_t used = 0;
    try {
      value = std::stoll(token, &used);
    } catch (const std::exception&) {
      return fail("non-integer token '" + token + "'");
    }
    if (used != token.size()) return fail("non-integer token '" + token + "'");
    if (value == 0) {
      if (current.empty()) return fail("empty clause");
      clauses.push_back(std::move(current));
      current.clear();
      continue;
    }
    if (value > vars || -value > vars) return fail("literal " + token + " exceeds variable count");
    current.push_back(Literal::from_dimacs(value));
  }
  if (!current.empty()) return fail("unterminated clause");
  if (static_cast<long long>(clauses.size()) != declared_clauses) {
    return fail("declared " + std::to_string(declared_clauses) + " clauses, found " +
                std::to_string(clauses.size()));
  }
  return CnfFormula::from_parts(static_cast<std::uint32_t>(vars), std::move(clauses));
}

SatOutcome parse_solver_output(const std::string& output, std::uint32_t var_count) {
  std::istringstream in(output);
  std::string line;
  std::optional<SatStatus> status;
  Assignment model(static_cast<std::size_t>(var_count) + 1, false);
  bool terminated = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("s ", 0) == 0) {
      if (status) throw Error(ErrorCode::parse_failure, "duplicate status line");
      const std::string word = line.substr(2);
      if (word == "SATISFIABLE") {
        status = SatStatus::sat;
      } else if (word == "UNSATISFIABLE") {
        status = SatStatus::unsat;
      } else if (word == "UNKNOWN") {
        status = SatStatus::unknown;
      } else {
        throw Error(ErrorCode::parse_failure, "unrecognised status line '" + line + "'");
      }
    } else if (line.rfind("v", 0) == 0 && (line.size() == 1 || line[1] == ' ')) {
      std::istringstream values(line.substr(1));
      std::string token;
      while (values >> token) {
        long long value = 0;
        try {
          value = std::stoll(token);
        } catch (const std::exception&) {
          throw Error(ErrorCode::parse_failure, "bad value token '" + token + "'");
        }
        if (value == 0) {
          terminated = true;
          continue;
        }
        const long long var = value < 0 ? -value : value;
        if (var > var_count) {
          throw Error(ErrorCode::parse_failure, "value line names unknown variable " + token);
        }
        model[static_cast<std::size_t>(var)] = value > 0;
      }
    }
  }
  if (!status) return Unknown{"solver printed no status line"};
  switch (*status) {
    case SatStatus::unsat: return Unsat{};
    case SatStatus::unknown: return Unknown{"solver reported UNKNOWN"};
    case SatStatus::sat: break;
  }
  if (!terminated) throw Error(ErrorCode::parse_failure, "value lines not terminated by 0");
  // Variables the solver left out are unconstrained; they default to false.
  return Sat{std::move(model)};
}

}  // namespace plotting::cnf
