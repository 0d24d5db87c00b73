#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "plotting/grid.hpp"

namespace plotting {

struct GeneratorSpec {
  int height = 1;
  int width = 1;
  int colours = 1;
  /// Goal written into every generated instance.
  int goal = 0;
  /// Drop the requirement that every colour 1..colours occurs.
  bool allow_missing_colours = false;
};

/// Uniform cells from std::mt19937_64 seeded with `seed`, resampled until all
/// colours occur. Throws Error(infeasible_spec) when colours > height * width.
Instance random_instance(const GeneratorSpec& spec, std::uint64_t seed);

enum class Enumeration {
  /// Every full grid in which all colours occur.
  all,
  /// Additionally, colours first occur in the order 1, 2, 3, ...
  canonical,
};

/// Full grids over 1..colours in row-major lexicographic order (last cell
/// varies fastest). Single-pass.
class InstanceEnumerator {
 public:
  InstanceEnumerator(const GeneratorSpec& spec, Enumeration mode);

  std::optional<Instance> next();

 private:
  bool accept() const;
  bool advance();

  GeneratorSpec spec_;
  Enumeration mode_;
  std::vector<Cell> cells_;
  bool started_ = false;
  bool done_ = false;
};

std::vector<Instance> enumerate_instances(const GeneratorSpec& spec, Enumeration mode);

}  // namespace plotting
