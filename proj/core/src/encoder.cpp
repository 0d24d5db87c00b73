#include "plotting/encoder.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <tuple>

#include "plotting/error.hpp"

namespace plotting {

using cnf::Literal;
using cnf::VarId;

// -- VarMap ------------------------------------------------------------------

VarMap::VarMap(int steps, int height, int width, int colours)
    : steps_(steps), height_(height), width_(width), colours_(colours) {}

namespace {

std::uint32_t state_block(int height, int width, int colours) {
  return static_cast<std::uint32_t>(height * width * (colours + 1) + colours);
}
std::uint32_t action_block(int height, int width) {
  return static_cast<std::uint32_t>(2 * (height + 1) + width + 1);
}

void check_index(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::out_of_range, std::string("VarMap: ") + what + " out of range");
}

}  // namespace

std::uint32_t VarMap::step_base(int step) const noexcept {
  const std::uint32_t state = state_block(height_, width_, colours_);
  if (step == 0) return 1;
  return 1 + state + static_cast<std::uint32_t>(step - 1) * (action_block(height_, width_) + state);
}

std::uint32_t VarMap::state_offset(int step) const noexcept {
  return step == 0 ? step_base(0) : step_base(step) + action_block(height_, width_);
}

VarId VarMap::grid(int step, int row, int col, int value) const {
  check_index(step >= 0 && step <= steps_ && row >= 1 && row <= height_ && col >= 1 &&
                  col <= width_ && value >= 0 && value <= colours_,
              "grid");
  const auto cell = static_cast<std::uint32_t>((row - 1) * width_ + (col - 1));
  return VarId{state_offset(step) + cell * static_cast<std::uint32_t>(colours_ + 1) +
               static_cast<std::uint32_t>(value)};
}

VarId VarMap::hand(int step, int colour) const {
  check_index(step >= 0 && step <= steps_ && colour >= 1 && colour <= colours_, "hand");
  return VarId{state_offset(step) + static_cast<std::uint32_t>(height_ * width_ * (colours_ + 1)) +
               static_cast<std::uint32_t>(colour - 1)};
}

VarId VarMap::fp_row(int step, int value) const {
  check_index(step >= 1 && step <= steps_ && value >= 0 && value <= height_, "fpRow");
  return VarId{step_base(step) + static_cast<std::uint32_t>(value)};
}

VarId VarMap::fp_col(int step, int value) const {
  check_index(step >= 1 && step <= steps_ && value >= 0 && value <= width_, "fpCol");
  return VarId{step_base(step) + static_cast<std::uint32_t>(height_ + 1 + value)};
}

VarId VarMap::wall_fall(int step, int value) const {
  check_index(step >= 1 && step <= steps_ && value >= 0 && value <= height_, "wallFall");
  return VarId{step_base(step) + static_cast<std::uint32_t>(height_ + 1 + width_ + 1 + value)};
}

std::uint32_t VarMap::primary_count() const noexcept {
  const auto steps = static_cast<std::uint32_t>(steps_);
  return (steps + 1) * state_block(height_, width_, colours_) + steps * action_block(height_, width_);
}

// -- Term builder ------------------------------------------------------------

namespace {

/// A Boolean term: a constant or a literal. Gates over terms fold constants
/// away, so out-of-range guards never reach the formula.
struct Term {
  enum class Kind : std::uint8_t { falsum, verum, literal };
  Kind kind = Kind::falsum;
  Literal lit{};

  static Term constant(bool value) { return Term{value ? Kind::verum : Kind::falsum, {}}; }
  static Term of(Literal lit) { return Term{Kind::literal, lit}; }
  static Term of(VarId var) { return of(Literal{var, false}); }

  bool is_true() const { return kind == Kind::verum; }
  bool is_false() const { return kind == Kind::falsum; }
  Term operator!() const {
    switch (kind) {
      case Kind::falsum: return constant(true);
      case Kind::verum: return constant(false);
      case Kind::literal: return of(~lit);
    }
    return *this;
  }
};

const Term kTrue = Term::constant(true);
const Term kFalse = Term::constant(false);

class Builder {
 public:
  explicit Builder(cnf::CnfFormula& formula) : formula_(formula) {}

  Term all(const std::vector<Term>& terms) { return gate(cnf::Gate::and_, terms); }
  Term any(const std::vector<Term>& terms) { return gate(cnf::Gate::or_, terms); }

  Term iff(Term a, Term b) {
    if (a.kind != Term::Kind::literal) return a.is_true() ? b : !b;
    if (b.kind != Term::Kind::literal) return b.is_true() ? a : !a;
    if (a.lit == b.lit) return kTrue;
    if (a.lit == ~b.lit) return kFalse;
    // x <-> y == ~x <-> ~y; normalise so the first literal is positive.
    bool flip = false;
    if (a.lit.negated) {
      a.lit = ~a.lit;
      flip = !flip;
    }
    if (b.lit.negated) {
      b.lit = ~b.lit;
      flip = !flip;
    }
    if (b.lit < a.lit) std::swap(a, b);
    std::vector<std::int64_t> key{a.lit.dimacs(), b.lit.dimacs()};
    auto [it, inserted] = iff_cache_.try_emplace(key, Literal{});
    if (inserted) {
      const Literal inputs[] = {a.lit, b.lit};
      it->second = cnf::reify(formula_, cnf::Gate::iff, inputs);
    }
    const Term out = Term::of(it->second);
    return flip ? !out : out;
  }

  void require(Term t) {
    if (t.is_true()) return;
    if (t.is_false()) {
      formula_.add_contradiction();
      return;
    }
    formula_.add_clause({t.lit});
  }

  void equivalent(Term a, Term b) {
    if (a.kind != Term::Kind::literal) {
      require(a.is_true() ? b : !b);
      return;
    }
    if (b.kind != Term::Kind::literal) {
      require(b.is_true() ? a : !a);
      return;
    }
    if (a.lit == b.lit) return;
    formula_.add_clause({~a.lit, b.lit});
    formula_.add_clause({a.lit, ~b.lit});
  }

 private:
  Term gate(cnf::Gate kind, const std::vector<Term>& terms) {
    const bool is_and = kind == cnf::Gate::and_;
    std::vector<Literal> inputs;
    inputs.reserve(terms.size());
    for (const Term& t : terms) {
      if (t.kind == Term::Kind::literal) {
        inputs.push_back(t.lit);
      } else if (t.is_true() != is_and) {
        return Term::constant(!is_and);  // absorbing constant
      }
    }
    std::sort(inputs.begin(), inputs.end());
    inputs.erase(std::unique(inputs.begin(), inputs.end()), inputs.end());
    for (std::size_t i = 1; i < inputs.size(); ++i) {
      if (inputs[i].var == inputs[i - 1].var) return Term::constant(!is_and);
    }
    if (inputs.empty()) return Term::constant(is_and);
    if (inputs.size() == 1) return Term::of(inputs.front());

    std::vector<std::int64_t> key;
    key.reserve(inputs.size());
    for (const Literal& lit : inputs) key.push_back(lit.dimacs());
    auto& cache = is_and ? and_cache_ : or_cache_;
    auto [it, inserted] = cache.try_emplace(std::move(key), Literal{});
    if (inserted) it->second = cnf::reify(formula_, kind, inputs);
    return Term::of(it->second);
  }

  cnf::CnfFormula& formula_;
  std::map<std::vector<std::int64_t>, Literal> and_cache_;
  std::map<std::vector<std::int64_t>, Literal> or_cache_;
  std::map<std::vector<std::int64_t>, Literal> iff_cache_;
};

// -- Model atoms ---------------------------------------------------------------

/// Atoms of the constraint model over the one-hot variables. Comparisons that
/// reference a cell outside the grid are false, for `=` and `!=` alike.
class Atoms {
 public:
  Atoms(Builder& builder, const VarMap& vars) : b_(builder), vars_(vars) {}

  int height() const { return vars_.height(); }
  int width() const { return vars_.width(); }
  int colours() const { return vars_.colours(); }

  bool defined(int r, int c) const { return r >= 1 && r <= height() && c >= 1 && c <= width(); }

  Term cell_is(int t, int r, int c, int v) const {
    if (!defined(r, c) || v < 0 || v > colours()) return kFalse;
    return Term::of(vars_.grid(t, r, c, v));
  }
  Term empty(int t, int r, int c) const { return cell_is(t, r, c, 0); }
  Term ne_empty(int t, int r, int c) const { return defined(r, c) ? !empty(t, r, c) : kFalse; }
  Term hand_is(int t, int k) const { return Term::of(vars_.hand(t, k)); }

  Term fp_row(int s, int v) const {
    return v >= 0 && v <= height() ? Term::of(vars_.fp_row(s, v)) : kFalse;
  }
  Term fp_col(int s, int u) const {
    return u >= 0 && u <= width() ? Term::of(vars_.fp_col(s, u)) : kFalse;
  }
  Term wall(int s, int w) const {
    return w >= 0 && w <= height() ? Term::of(vars_.wall_fall(s, w)) : kFalse;
  }

  /// grid[t, r, c] = hand[th]
  Term eq_hand(int t, int r, int c, int th) {
    if (!defined(r, c)) return kFalse;
    const auto key = std::make_tuple(t, r, c, th);
    if (auto it = eq_hand_.find(key); it != eq_hand_.end()) return it->second;
    std::vector<Term> terms;
    for (int k = 1; k <= colours(); ++k) terms.push_back(b_.all({cell_is(t, r, c, k), hand_is(th, k)}));
    return eq_hand_[key] = b_.any(terms);
  }
  Term ne_hand(int t, int r, int c, int th) { return defined(r, c) ? !eq_hand(t, r, c, th) : kFalse; }

  /// grid[t, r, c] = hand[t] or grid[t, r, c] = EMPTY
  Term consumable(int t, int r, int c) { return b_.any({eq_hand(t, r, c, t), empty(t, r, c)}); }
  /// grid[t, r, c] != EMPTY and grid[t, r, c] != hand[t]
  Term blocking(int t, int r, int c) { return b_.all({ne_empty(t, r, c), ne_hand(t, r, c, t)}); }

  /// grid[t1, r1, c1] = grid[t2, r2, c2]
  Term eq_cells(int t1, int r1, int c1, int t2, int r2, int c2) {
    if (!defined(r1, c1) || !defined(r2, c2)) return kFalse;
    auto key = std::make_tuple(t1, r1, c1, t2, r2, c2);
    if (std::tie(t2, r2, c2) < std::tie(t1, r1, c1)) key = std::make_tuple(t2, r2, c2, t1, r1, c1);
    if (auto it = eq_cells_.find(key); it != eq_cells_.end()) return it->second;
    std::vector<Term> terms;
    for (int v = 0; v <= colours(); ++v) {
      terms.push_back(b_.all({cell_is(t1, r1, c1, v), cell_is(t2, r2, c2, v)}));
    }
    return eq_cells_[key] = b_.any(terms);
  }
  Term ne_cells(int t1, int r1, int c1, int t2, int r2, int c2) {
    if (!defined(r1, c1) || !defined(r2, c2)) return kFalse;
    return !eq_cells(t1, r1, c1, t2, r2, c2);
  }

  /// hand[th] = grid[t, r, c]
  Term hand_eq_cell(int th, int t, int r, int c) {
    if (!defined(r, c)) return kFalse;
    const auto key = std::make_tuple(th, t, r, c);
    if (auto it = hand_eq_cell_.find(key); it != hand_eq_cell_.end()) return it->second;
    std::vector<Term> terms;
    for (int k = 1; k <= colours(); ++k) terms.push_back(b_.all({hand_is(th, k), cell_is(t, r, c, k)}));
    return hand_eq_cell_[key] = b_.any(terms);
  }
  Term hand_ne_cell(int th, int t, int r, int c) {
    return defined(r, c) ? !hand_eq_cell(th, t, r, c) : kFalse;
  }

  /// hand[t1] = hand[t2]
  Term hands_equal(int t1, int t2) {
    std::vector<Term> terms;
    for (int k = 1; k <= colours(); ++k) terms.push_back(b_.all({hand_is(t1, k), hand_is(t2, k)}));
    return b_.any(terms);
  }

 private:
  Builder& b_;
  const VarMap& vars_;
  std::map<std::tuple<int, int, int, int>, Term> eq_hand_;
  std::map<std::tuple<int, int, int, int, int, int>, Term> eq_cells_;
  std::map<std::tuple<int, int, int, int>, Term> hand_eq_cell_;
};

// -- Transition constraints ----------------------------------------------------

class StepEncoder {
 public:
  StepEncoder(Builder& builder, Atoms& atoms, int step, ModelRevision revision)
      : b_(builder), a_(atoms), s_(step), p_(step - 1), H_(atoms.height()), W_(atoms.width()),
        corrected_(revision == ModelRevision::corrected) {}

  void emit() {
    axis();
    hand_block();
    for (int r = 1; r <= H_; ++r) {
      for (int c = 1; c <= W_; ++c) {
        b_.equivalent(a_.empty(s_, r, c), becomes_empty(r, c));
        b_.equivalent(a_.eq_cells(s_, r, c, p_, r, c), stays_same(r, c));
        b_.equivalent(b_.all({a_.ne_cells(s_, r, c, p_, r, c), a_.ne_empty(s_, r, c)}),
                      changes_to_block(r, c));
      }
    }
    wall_fall_block();
  }

 private:
  // forAll over lo..hi of f(i); true on an empty range.
  template <typename F>
  Term all_of(int lo, int hi, F&& f) {
    std::vector<Term> terms;
    for (int i = lo; i <= hi; ++i) terms.push_back(f(i));
    return b_.all(terms);
  }
  // exists over lo..hi of f(i); false on an empty range.
  template <typename F>
  Term any_of(int lo, int hi, F&& f) {
    std::vector<Term> terms;
    for (int i = lo; i <= hi; ++i) terms.push_back(f(i));
    return b_.any(terms);
  }
  // Expands a condition on the fpRow value: OR over v of (fpRow = v /\ f(v)).
  template <typename F>
  Term over_fp_row(F&& f) {
    return any_of(0, H_, [&](int v) { return b_.all({a_.fp_row(s_, v), f(v)}); });
  }

  // Wall-fall reach over the last column for a wallFall value w > 0.
  Term fall_reaches(int r, int w, bool strict) {
    return over_fp_row([&](int v) {
      if (corrected_) return Term::constant(v != 0 && v + w > r);
      return Term::constant(strict ? v > r : v >= r);
    });
  }

  // The corrected revision only lets a block, not an empty cell, fall in.
  Term falling_block(int source_row) {
    return corrected_ ? a_.ne_empty(p_, source_row, W_) : kTrue;
  }

  void axis() {
    b_.require(b_.any({a_.fp_row(s_, 0), a_.fp_col(s_, 0)}));
    b_.require(b_.any({!a_.fp_row(s_, 0), !a_.fp_col(s_, 0)}));
  }

  void hand_block() {
    const Term fired_col_wall = any_of(0, W_, [&](int u) {
      return b_.all({a_.fp_col(s_, u), all_of(1, H_, [&](int b) { return a_.consumable(p_, b, u); })});
    });
    const Term fired_row_wall = over_fp_row([&](int v) {
      return b_.all({all_of(1, W_, [&](int b) { return a_.consumable(p_, v, b); }),
                     all_of(1, H_, [&](int b) {
                       return b > v ? a_.consumable(p_, b, W_) : kTrue;
                     })});
    });
    b_.equivalent(a_.hands_equal(p_, s_), b_.any({fired_col_wall, fired_row_wall}));
  }

  Term becomes_empty(int r, int c) {
    std::vector<Term> cases;
    cases.push_back(a_.empty(p_, r, c));
    // Deleted by a shot down this column.
    cases.push_back(b_.all({a_.fp_col(s_, c), a_.eq_hand(p_, r, c, p_),
                            all_of(1, r - 1, [&](int b) { return a_.consumable(p_, b, c); })}));
    // Deleted by a shot along this row.
    cases.push_back(b_.all({a_.fp_row(s_, r), a_.eq_hand(p_, r, c, p_),
                            b_.any({Term::constant(r == 1), a_.empty(p_, r - 1, c)}),
                            all_of(1, c - 1, [&](int b) { return a_.consumable(p_, r, b); })}));
    // Deleted by a row shot that then drops down the last column.
    if (c == W_) {
      cases.push_back(over_fp_row([&](int v) {
        if (!(v < r)) return kFalse;
        return b_.all({a_.eq_hand(p_, r, W_, p_),
                       all_of(1, W_, [&](int b) { return a_.consumable(p_, v, b); }),
                       all_of(1, r - 1, [&](int b) { return b > v ? a_.consumable(p_, b, W_) : kTrue; }),
                       all_of(1, r - 1, [&](int b) { return b < v ? a_.empty(p_, b, W_) : kTrue; })});
      }));
    }
    // Falls out of this cell: row shot underneath, nothing above.
    cases.push_back(b_.all({b_.any({a_.empty(p_, r - 1, c), Term::constant(r == 1)}),
                            over_fp_row([&](int v) {
                              if (!(v > r)) return kFalse;
                              return all_of(1, c, [&](int d) { return a_.consumable(p_, v, d); });
                            })}));
    // Last column after a wall fall with nothing to fall into this cell.
    if (c == W_) {
      cases.push_back(any_of(1, H_, [&](int w) {
        return b_.all({a_.wall(s_, w), fall_reaches(r, w, true),
                       b_.any({a_.empty(p_, r - w, W_), Term::constant(r - w < 1)})});
      }));
    }
    return b_.any(cases);
  }

  Term stays_same(int r, int c) {
    std::vector<Term> cases;
    cases.push_back(a_.empty(p_, r, c));
    // Fired beneath this row, stopped before reaching this column.
    cases.push_back(over_fp_row([&](int v) {
      if (!(v > r)) return kFalse;
      return any_of(1, c, [&](int d) { return a_.blocking(p_, v, d); });
    }));
    // Fired along this row, something in the way.
    cases.push_back(b_.all({a_.fp_row(s_, r), any_of(1, c - 1, [&](int d) { return a_.blocking(p_, r, d); })}));
    // Fired along a row above.
    if (c < W_) {
      cases.push_back(any_of(1, r - 1, [&](int v) { return a_.fp_row(s_, v); }));
    } else {
      cases.push_back(any_of(1, r - 1, [&](int v) {
        return b_.all({a_.fp_row(s_, v),
                       b_.any({any_of(1, W_, [&](int d) { return a_.blocking(p_, v, d); }),
                               any_of(1, r - 1, [&](int b) {
                                 return b >= v ? a_.blocking(p_, b, W_) : kFalse;
                               })})});
      }));
    }
    // Fired down this column, something in the way.
    cases.push_back(b_.all({a_.fp_col(s_, c), any_of(1, r - 1, [&](int b) { return a_.blocking(p_, b, c); })}));
    // Fired down a different column.
    cases.push_back(any_of(1, W_, [&](int u) { return u != c ? a_.fp_col(s_, u) : kFalse; }));
    // Same colour falls into this cell.
    if (c < W_) {
      cases.push_back(over_fp_row([&](int v) {
        if (!(v >= r)) return kFalse;
        return b_.all({all_of(1, c, [&](int d) { return a_.consumable(p_, v, d); }),
                       a_.eq_cells(p_, r - 1, c, p_, r, c)});
      }));
    } else {
      cases.push_back(any_of(1, H_, [&](int w) {
        return b_.all({a_.wall(s_, w), fall_reaches(r, w, false), a_.eq_cells(p_, r - w, c, p_, r, c)});
      }));
    }
    return b_.any(cases);
  }

  Term swap_with_hand(int r, int c) {
    return b_.all({a_.hand_eq_cell(s_, p_, r, c), a_.hand_eq_cell(p_, s_, r, c),
                   a_.hand_ne_cell(p_, p_, r, c)});
  }

  Term changes_to_block(int r, int c) {
    std::vector<Term> cases;
    if (c < W_) {
      // Falls from above.
      cases.push_back(b_.all({a_.ne_empty(p_, r - 1, c), over_fp_row([&](int v) {
                                if (!(v >= r)) return kFalse;
                                return all_of(1, c, [&](int d) { return a_.consumable(p_, v, d); });
                              }),
                              a_.eq_cells(s_, r, c, p_, r - 1, c), a_.ne_cells(p_, r, c, p_, r - 1, c)}));
    } else {
      // Falls from above in the last column, by the wall-fall distance.
      cases.push_back(any_of(1, H_, [&](int w) {
        return b_.all({a_.wall(s_, w), fall_reaches(r, w, false), falling_block(r - w),
                       a_.eq_cells(s_, r, W_, p_, r - w, W_), a_.ne_cells(p_, r, W_, p_, r - w, W_)});
      }));
    }
    // Swaps with the hand on a row shot.
    cases.push_back(b_.all({a_.fp_row(s_, r), all_of(1, c - 1, [&](int d) { return a_.consumable(p_, r, d); }),
                            any_of(1, c - 1, [&](int d) { return a_.eq_hand(p_, r, d, p_); }),
                            swap_with_hand(r, c)}));
    // Swaps with the hand on a column shot.
    cases.push_back(b_.all({a_.fp_col(s_, c), all_of(1, r - 1, [&](int b) { return a_.consumable(p_, b, c); }),
                            any_of(1, r - 1, [&](int b) { return a_.eq_hand(p_, b, c, p_); }),
                            swap_with_hand(r, c)}));
    // Swaps with the hand after dropping down the last column.
    if (c == W_) {
      cases.push_back(b_.all({over_fp_row([&](int v) {
                                if (!(v < r)) return kFalse;
                                return b_.all(
                                    {all_of(1, W_ - 1, [&](int d) { return a_.consumable(p_, v, d); }),
                                     all_of(1, r - 1, [&](int b) { return b >= v ? a_.consumable(p_, b, W_) : kTrue; }),
                                     b_.any({any_of(1, W_ - 1, [&](int d) { return a_.eq_hand(p_, v, d, p_); }),
                                             any_of(1, r - 1, [&](int b) {
                                               return b >= v ? a_.eq_hand(p_, b, W_, p_) : kFalse;
                                             })})});
                              }),
                              swap_with_hand(r, W_)}));
    }
    return b_.any(cases);
  }

  void wall_fall_block() {
    for (int i = 1; i <= H_; ++i) {
      const Term holds = any_of(2, H_, [&](int row) {
        return b_.all({a_.fp_row(s_, row), all_of(1, W_, [&](int col) { return a_.consumable(p_, row, col); }),
                       a_.ne_empty(p_, row - 1, W_),
                       all_of(row, row + i - 1, [&](int u) { return a_.eq_hand(p_, u, W_, p_); }),
                       b_.any({a_.ne_hand(p_, row + i, W_, p_), Term::constant(row + i > H_)})});
      });
      b_.equivalent(a_.wall(s_, i), holds);
    }
  }

  Builder& b_;
  Atoms& a_;
  int s_;
  int p_;
  int H_;
  int W_;
  bool corrected_;
};

// -- Progress as a colour-sum comparison ----------------------------------------

using Bits = std::vector<Term>;  // little-endian

Bits add(Builder& b, const Bits& x, const Bits& y) {
  Bits out;
  Term carry = kFalse;
  const std::size_t n = std::max(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Term xi = i < x.size() ? x[i] : kFalse;
    const Term yi = i < y.size() ? y[i] : kFalse;
    const Term half = !b.iff(xi, yi);
    out.push_back(!b.iff(half, carry));
    carry = b.any({b.all({xi, yi}), b.all({carry, half})});
  }
  out.push_back(carry);
  return out;
}

Bits colour_sum_bits(Builder& b, Atoms& a, int t) {
  const int bits = std::bit_width(static_cast<unsigned>(a.colours()));
  std::vector<Bits> terms;
  for (int r = 1; r <= a.height(); ++r) {
    for (int c = 1; c <= a.width(); ++c) {
      Bits value;
      for (int bit = 0; bit < bits; ++bit) {
        std::vector<Term> ones;
        for (int v = 1; v <= a.colours(); ++v) {
          if ((v >> bit) & 1) ones.push_back(a.cell_is(t, r, c, v));
        }
        value.push_back(b.any(ones));
      }
      terms.push_back(std::move(value));
    }
  }
  // Balanced adder tree.
  while (terms.size() > 1) {
    std::vector<Bits> next;
    for (std::size_t i = 0; i + 1 < terms.size(); i += 2) next.push_back(add(b, terms[i], terms[i + 1]));
    if (terms.size() % 2 == 1) next.push_back(terms.back());
    terms = std::move(next);
  }
  return terms.front();
}

Term greater_than(Builder& b, const Bits& x, const Bits& y) {
  const std::size_t n = std::max(x.size(), y.size());
  Term greater = kFalse;
  Term equal_above = kTrue;
  for (std::size_t k = n; k-- > 0;) {
    const Term xi = k < x.size() ? x[k] : kFalse;
    const Term yi = k < y.size() ? y[k] : kFalse;
    greater = b.any({greater, b.all({equal_above, xi, !yi})});
    equal_above = b.all({equal_above, b.iff(xi, yi)});
  }
  return greater;
}

}  // namespace

// -- encode / decode -------------------------------------------------------------

Encoding encode(const Instance& instance, const EncodeOptions& options) {
  check_instance(instance);
  if (options.steps < 1) {
    throw Error(ErrorCode::invalid_horizon, "horizon must be at least 1, got " + std::to_string(options.steps));
  }
  const int H = instance.height();
  const int W = instance.width();
  const int K = instance.colour_count();
  const int S = options.steps;
  if (options.fixed_initial_hand && (*options.fixed_initial_hand < 1 || *options.fixed_initial_hand > K)) {
    throw Error(ErrorCode::invalid_argument, "fixed initial hand outside 1.." + std::to_string(K));
  }

  Encoding enc{cnf::CnfFormula{}, VarMap(S, H, W, K)};
  const VarMap& vars = enc.vars;
  while (enc.formula.var_count() < vars.primary_count()) enc.formula.new_var();

  // One-hot domains.
  std::vector<Literal> group;
  auto one_hot = [&](auto&& var_of, int lo, int hi) {
    group.clear();
    for (int v = lo; v <= hi; ++v) group.push_back(Literal{var_of(v), false});
    cnf::exactly_one(enc.formula, group);
  };
  for (int t = 0; t <= S; ++t) {
    if (t >= 1) {
      one_hot([&](int v) { return vars.fp_row(t, v); }, 0, H);
      one_hot([&](int v) { return vars.fp_col(t, v); }, 0, W);
      one_hot([&](int v) { return vars.wall_fall(t, v); }, 0, H);
    }
    for (int r = 1; r <= H; ++r) {
      for (int c = 1; c <= W; ++c) one_hot([&](int v) { return vars.grid(t, r, c, v); }, 0, K);
    }
    one_hot([&](int k) { return vars.hand(t, k); }, 1, K);
  }

  Builder builder(enc.formula);
  Atoms atoms(builder, vars);

  // Initial state; hand 0 stays free unless pinned.
  for (int r = 1; r <= H; ++r) {
    for (int c = 1; c <= W; ++c) builder.require(atoms.cell_is(0, r, c, instance.init_grid.at(r, c)));
  }
  if (options.fixed_initial_hand) builder.require(atoms.hand_is(0, *options.fixed_initial_hand));

  // Goal: at least NOBLOCKS - goal empty cells at the final step.
  std::vector<Literal> finals;
  for (int r = 1; r <= H; ++r) {
    for (int c = 1; c <= W; ++c) finals.push_back(Literal{vars.grid(S, r, c, 0), false});
  }
  cnf::at_least_k(enc.formula, finals, static_cast<std::size_t>(H * W - instance.goal));

  for (int s = 1; s <= S; ++s) {
    // Each move does something useful.
    if (options.progress == ProgressEncoding::consumption_witness) {
      std::vector<Term> witnesses;
      for (int r = 1; r <= H; ++r) {
        for (int c = 1; c <= W; ++c) {
          witnesses.push_back(builder.all({atoms.ne_empty(s - 1, r, c), atoms.empty(s, r, c)}));
        }
      }
      builder.require(builder.any(witnesses));
    } else {
      builder.require(greater_than(builder, colour_sum_bits(builder, atoms, s - 1),
                                   colour_sum_bits(builder, atoms, s)));
    }
    StepEncoder(builder, atoms, s, options.revision).emit();
  }
  return enc;
}

DecodedTrace decode(const cnf::Assignment& model, const VarMap& vars) {
  if (model.size() < static_cast<std::size_t>(vars.primary_count()) + 1) {
    throw Error(ErrorCode::malformed_model, "model shorter than the variable map");
  }
  auto pick = [&](auto&& var_of, int lo, int hi, const char* what) {
    int chosen = -1;
    for (int v = lo; v <= hi; ++v) {
      if (model[var_of(v).index]) {
        if (chosen >= 0) throw Error(ErrorCode::malformed_model, std::string("two values for ") + what);
        chosen = v;
      }
    }
    if (chosen < 0) throw Error(ErrorCode::malformed_model, std::string("no value for ") + what);
    return chosen;
  };

  const int H = vars.height();
  const int W = vars.width();
  DecodedTrace trace;
  for (int t = 0; t <= vars.steps(); ++t) {
    GridState grid(H, W);
    for (int r = 1; r <= H; ++r) {
      for (int c = 1; c <= W; ++c) {
        grid.set(r, c, static_cast<Cell>(pick([&](int v) { return vars.grid(t, r, c, v); }, 0,
                                              vars.colours(), "grid cell")));
      }
    }
    trace.grids.push_back(std::move(grid));
    trace.hands.push_back(
        static_cast<Colour>(pick([&](int k) { return vars.hand(t, k); }, 1, vars.colours(), "hand")));
    if (t == 0) continue;
    const int row = pick([&](int v) { return vars.fp_row(t, v); }, 0, H, "fpRow");
    const int col = pick([&](int v) { return vars.fp_col(t, v); }, 0, W, "fpCol");
    if ((row == 0) == (col == 0)) {
      throw Error(ErrorCode::malformed_model, "step " + std::to_string(t) + " fires on both or neither axis");
    }
    trace.plan.push_back(row != 0 ? Shot::row(row) : Shot::col(col));
    trace.wall_falls.push_back(pick([&](int v) { return vars.wall_fall(t, v); }, 0, H, "wallFall"));
  }
  trace.hand0 = trace.hands.front();
  return trace;
}

}  // namespace plotting
