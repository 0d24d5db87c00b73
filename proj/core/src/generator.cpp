#include "plotting/generator.hpp"

#include <random>

#include "plotting/error.hpp"

namespace plotting {

namespace {

void check_spec(const GeneratorSpec& spec) {
  if (spec.height < 1 || spec.width < 1) {
    throw Error(ErrorCode::infeasible_spec, "grid dimensions must be positive");
  }
  if (spec.colours < 1 || spec.colours > kMaxColours) {
    throw Error(ErrorCode::infeasible_spec, "colours must lie in 1.." + std::to_string(kMaxColours));
  }
  if (!spec.allow_missing_colours && spec.colours > spec.height * spec.width) {
    throw Error(ErrorCode::infeasible_spec,
                std::to_string(spec.colours) + " colours cannot all occur in a " +
                    std::to_string(spec.height) + "x" + std::to_string(spec.width) + " grid");
  }
  if (spec.goal < 0 || spec.goal > spec.height * spec.width) {
    throw Error(ErrorCode::infeasible_spec, "goal outside 0..height*width");
  }
}

bool all_colours_present(const std::vector<Cell>& cells, int colours) {
  std::vector<bool> seen(static_cast<std::size_t>(colours) + 1, false);
  int distinct = 0;
  for (Cell c : cells) {
    if (!seen[c]) {
      seen[c] = true;
      ++distinct;
    }
  }
  return distinct == colours;
}

}  // namespace

Instance random_instance(const GeneratorSpec& spec, std::uint64_t seed) {
  check_spec(spec);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> colour(1, spec.colours);
  std::vector<Cell> cells(static_cast<std::size_t>(spec.height * spec.width));
  do {
    for (Cell& c : cells) c = static_cast<Cell>(colour(rng));
  } while (!spec.allow_missing_colours && !all_colours_present(cells, spec.colours));
  return Instance{GridState(spec.height, spec.width, std::move(cells)), spec.goal};
}

InstanceEnumerator::InstanceEnumerator(const GeneratorSpec& spec, Enumeration mode)
    : spec_(spec), mode_(mode), cells_(static_cast<std::size_t>(spec.height * spec.width), 1) {
  check_spec(spec);
}

bool InstanceEnumerator::accept() const {
  if (!spec_.allow_missing_colours && !all_colours_present(cells_, spec_.colours)) return false;
  if (mode_ == Enumeration::canonical) {
    // Restricted growth: each cell is at most one more than the largest seen so far.
    int largest = 0;
    for (Cell c : cells_) {
      if (c > largest + 1) return false;
      largest = std::max<int>(largest, c);
    }
  }
  return true;
}

bool InstanceEnumerator::advance() {
  for (std::size_t i = cells_.size(); i-- > 0;) {
    if (cells_[i] < spec_.colours) {
      ++cells_[i];
      return true;
    }
    cells_[i] = 1;
  }
  return false;
}

std::optional<Instance> InstanceEnumerator::next() {
  while (!done_) {
    if (started_ && !advance()) {
      done_ = true;
      break;
    }
    started_ = true;
    if (accept()) return Instance{GridState(spec_.height, spec_.width, cells_), spec_.goal};
  }
  return std::nullopt;
}

std::vector<Instance> enumerate_instances(const GeneratorSpec& spec, Enumeration mode) {
  InstanceEnumerator it(spec, mode);
  std::vector<Instance> out;
  while (auto inst = it.next()) out.push_back(std::move(*inst));
  return out;
}

}  // namespace plotting
