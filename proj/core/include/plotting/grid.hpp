#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace plotting {

/// A block colour. Colours are 1..colourCount; 0 is reserved for an empty cell.
using Colour = std::uint8_t;

/// Cell content: kEmpty or a Colour.
using Cell = std::uint8_t;
inline constexpr Cell kEmpty = 0;

/// Largest colour the toolkit handles (renders as 1-9 then a-z).
inline constexpr int kMaxColours = 35;

/// Rows x columns of cells. Indices are 1-based: row 1 is the top, column
/// `width()` adjoins the wall.
class GridState {
 public:
  GridState() = default;
  GridState(int height, int width);
  GridState(int height, int width, std::vector<Cell> cells);

  /// Row-major literal, e.g. GridState::from_rows({{1, 1}, {1, 1}}).
  static GridState from_rows(std::initializer_list<std::initializer_list<int>> rows);

  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  int cell_count() const noexcept { return height_ * width_; }

  bool in_bounds(int row, int col) const noexcept {
    return row >= 1 && row <= height_ && col >= 1 && col <= width_;
  }

  Cell at(int row, int col) const noexcept {
    return cells_[static_cast<std::size_t>((row - 1) * width_ + (col - 1))];
  }
  void set(int row, int col, Cell value) noexcept {
    cells_[static_cast<std::size_t>((row - 1) * width_ + (col - 1))] = value;
  }

  std::span<const Cell> cells() const noexcept { return cells_; }

  /// Largest cell value present (0 for an all-empty grid).
  int max_colour() const noexcept;

  /// Empty cells of every column form a prefix at the top.
  bool top_empty() const noexcept;

  friend bool operator==(const GridState&, const GridState&) = default;
  friend auto operator<=>(const GridState&, const GridState&) = default;

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<Cell> cells_;
};

/// Single action: fire the held block along a row or down a column.
class Shot {
 public:
  enum class Axis : std::uint8_t { row, col };

  static constexpr Shot row(int index) noexcept { return Shot(Axis::row, index); }
  static constexpr Shot col(int index) noexcept { return Shot(Axis::col, index); }

  constexpr Axis axis() const noexcept { return axis_; }
  constexpr int index() const noexcept { return index_; }
  constexpr bool is_row() const noexcept { return axis_ == Axis::row; }

  /// The model's fpRow / fpCol encoding: exactly one of them is nonzero.
  constexpr int fp_row() const noexcept { return is_row() ? index_ : 0; }
  constexpr int fp_col() const noexcept { return is_row() ? 0 : index_; }

  friend constexpr bool operator==(const Shot&, const Shot&) = default;
  friend constexpr auto operator<=>(const Shot&, const Shot&) = default;

 private:
  constexpr Shot(Axis axis, int index) noexcept : axis_(axis), index_(index) {}

  Axis axis_;
  int index_;
};

std::string to_string(const Shot& shot);

/// A puzzle level: a full initial grid plus the number of blocks allowed to remain.
struct Instance {
  GridState init_grid;
  int goal = 0;

  int height() const noexcept { return init_grid.height(); }
  int width() const noexcept { return init_grid.width(); }
  int block_limit() const noexcept { return init_grid.cell_count(); }
  int colour_count() const noexcept { return init_grid.max_colour(); }

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Throws Error(invalid_argument) unless the grid is full, colours are in
/// range and 0 <= goal <= height * width.
void check_instance(const Instance& instance);

}  // namespace plotting
