#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "plotting/grid.hpp"

namespace plotting::io {

// Instance file:
//   plotting-instance v1
//   size <height> <width>
//   goal <g>                  (optional)
//   grid
//   <height lines of width space-separated colours >= 1>
struct InstanceFile {
  GridState grid;
  std::optional<int> goal;

  friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

InstanceFile parse_instance(std::istream& in);
InstanceFile read_instance_file(const std::string& path);
void write_instance(std::ostream& out, const InstanceFile& file);

// Plan file:
//   plotting-plan v1
//   hand <colour>
//   row <r> | col <c>         (one line per shot, in order)
struct PlanFile {
  Colour hand = 1;
  std::vector<Shot> shots;

  friend bool operator==(const PlanFile&, const PlanFile&) = default;
};

PlanFile parse_plan(std::istream& in);
PlanFile read_plan_file(const std::string& path);
void write_plan(std::ostream& out, const PlanFile& plan);

/// '.' for empty, 1-9 then a-z for colours 10..35.
char glyph(Cell cell);
/// One line per row, each terminated by '\n'.
std::string render(const GridState& grid);

}  // namespace plotting::io
