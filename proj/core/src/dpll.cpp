#include <algorithm>
#include <cstdint>
#include <vector>

#include "plotting/cnf.hpp"
#include "plotting/error.hpp"

namespace plotting::cnf {

namespace {

// Literal code: 2 * var + negated.
using Code = std::uint32_t;

constexpr Code code_of(const Literal& lit) noexcept {
  return 2 * lit.var.index + (lit.negated ? 1U : 0U);
}
constexpr Code negate(Code code) noexcept { return code ^ 1U; }
constexpr std::uint32_t var_of(Code code) noexcept { return code >> 1U; }

enum : std::int8_t { kFalse = 0, kTrue = 1, kUnassigned = -1 };

class Dpll {
 public:
  Dpll(const CnfFormula& formula, const DpllOptions& options)
      : options_(options),
        var_count_(formula.var_count()),
        values_(static_cast<std::size_t>(var_count_) + 1, kUnassigned),
        watches_(2 * (static_cast<std::size_t>(var_count_) + 1)) {
    std::vector<Code> lits;
    for (const Clause& clause : formula.clauses()) {
      lits.clear();
      for (const Literal& lit : clause) lits.push_back(code_of(lit));
      std::sort(lits.begin(), lits.end());
      lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
      bool tautology = false;
      for (std::size_t i = 1; i < lits.size(); ++i) {
        tautology = tautology || lits[i] == negate(lits[i - 1]);
      }
      if (tautology) continue;
      if (lits.size() == 1) {
        units_.push_back(lits[0]);
        continue;
      }
      const auto index = static_cast<std::uint32_t>(starts_.size());
      starts_.push_back(static_cast<std::uint32_t>(pool_.size()));
      sizes_.push_back(static_cast<std::uint32_t>(lits.size()));
      pool_.insert(pool_.end(), lits.begin(), lits.end());
      watches_[lits[0]].push_back(index);
      watches_[lits[1]].push_back(index);
    }
  }

  SatOutcome run() {
    for (Code unit : units_) {
      const std::int8_t v = value(unit);
      if (v == kFalse) return Unsat{};
      if (v == kUnassigned) assign(unit);
    }
    if (!propagate()) return Unsat{};

    std::uint32_t cursor = 1;
    std::uint64_t decisions = 0;
    while (true) {
      while (cursor <= var_count_ && values_[cursor] != kUnassigned) ++cursor;
      if (cursor > var_count_) return Sat{model()};

      if (decisions >= options_.max_decisions) return Unknown{"decision budget exhausted"};
      if (options_.deadline && (decisions & 1023U) == 0 &&
          std::chrono::steady_clock::now() >= *options_.deadline) {
        return Unknown{"timeout"};
      }
      ++decisions;

      levels_.push_back(Level{static_cast<std::uint32_t>(trail_.size()), 2 * cursor, false});
      assign(2 * cursor);
      while (!propagate()) {
        // Chronological backtracking: flip the most recent unflipped decision.
        while (!levels_.empty() && levels_.back().flipped) {
          undo_to(levels_.back().trail_start);
          levels_.pop_back();
        }
        if (levels_.empty()) return Unsat{};
        Level& level = levels_.back();
        undo_to(level.trail_start);
        level.flipped = true;
        level.decision = negate(level.decision);
        assign(level.decision);
        cursor = var_of(level.decision);
      }
    }
  }

 private:
  struct Level {
    std::uint32_t trail_start;
    Code decision;
    bool flipped;
  };

  std::int8_t value(Code lit) const noexcept {
    const std::int8_t v = values_[var_of(lit)];
    if (v == kUnassigned) return kUnassigned;
    return (lit & 1U) ? static_cast<std::int8_t>(1 - v) : v;
  }

  void assign(Code lit) {
    values_[var_of(lit)] = (lit & 1U) ? kFalse : kTrue;
    trail_.push_back(lit);
  }

  void undo_to(std::uint32_t size) {
    while (trail_.size() > size) {
      values_[var_of(trail_.back())] = kUnassigned;
      trail_.pop_back();
    }
    queue_head_ = std::min<std::size_t>(queue_head_, size);
  }

  bool propagate() {
    while (queue_head_ < trail_.size()) {
      const Code falsified = negate(trail_[queue_head_++]);
      std::vector<std::uint32_t>& list = watches_[falsified];
      std::size_t keep = 0;
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::uint32_t clause = list[i];
        Code* lits = pool_.data() + starts_[clause];
        const std::uint32_t size = sizes_[clause];
        if (lits[0] == falsified) std::swap(lits[0], lits[1]);
        if (value(lits[0]) == kTrue) {
          list[keep++] = clause;
          continue;
        }
        bool moved = false;
        for (std::uint32_t k = 2; k < size; ++k) {
          if (value(lits[k]) != kFalse) {
            std::swap(lits[1], lits[k]);
            watches_[lits[1]].push_back(clause);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        list[keep++] = clause;
        if (value(lits[0]) == kFalse) {
          for (++i; i < list.size(); ++i) list[keep++] = list[i];
          list.resize(keep);
          queue_head_ = trail_.size();
          return false;
        }
        assign(lits[0]);
      }
      list.resize(keep);
    }
    return true;
  }

  Assignment model() const {
    Assignment model(static_cast<std::size_t>(var_count_) + 1, false);
    for (std::uint32_t v = 1; v <= var_count_; ++v) model[v] = values_[v] == kTrue;
    return model;
  }

  DpllOptions options_;
  std::uint32_t var_count_;
  std::vector<std::int8_t> values_;
  std::vector<std::vector<std::uint32_t>> watches_;
  std::vector<Code> pool_;
  std::vector<std::uint32_t> starts_;
  std::vector<std::uint32_t> sizes_;
  std::vector<Code> units_;
  std::vector<Code> trail_;
  std::vector<Level> levels_;
  std::size_t queue_head_ = 0;
};

}  // namespace

SatOutcome dpll_solve(const CnfFormula& formula, const DpllOptions& options) {
  SatOutcome outcome = Dpll(formula, options).run();
  if (const auto* sat = std::get_if<Sat>(&outcome); sat && !satisfies(formula, sat->model)) {
    throw Error(ErrorCode::malformed_model, "internal solver produced a non-model");
  }
  return outcome;
}

}  // namespace plotting::cnf
