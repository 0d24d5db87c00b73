#include "plotting/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "plotting/error.hpp"

namespace plotting::io {

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  /// Next line with trailing whitespace removed; nullopt at end of input.
  std::optional<std::string> next() {
    std::string line;
    if (!std::getline(in_, line)) return std::nullopt;
    ++number_;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
    return line;
  }

  std::string require(const char* what) {
    auto line = next();
    if (!line) fail(std::string("unexpected end of file, expected ") + what);
    return *line;
  }

  /// Remaining lines must be blank.
  void expect_end() {
    while (auto line = next()) {
      if (!line->empty()) fail("unexpected trailing content '" + *line + "'");
    }
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::parse_failure, "line " + std::to_string(number_) + ": " + why);
  }

 private:
  std::istream& in_;
  int number_ = 0;
};

int parse_int(const std::string& token, const LineReader& reader) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(token, &used);
  } catch (const std::exception&) {
    reader.fail("expected an integer, got '" + token + "'");
  }
  if (used != token.size()) reader.fail("expected an integer, got '" + token + "'");
  return value;
}

std::vector<std::string> words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_failure, "cannot open '" + path + "'");
  return in;
}

}  // namespace

InstanceFile parse_instance(std::istream& in) {
  LineReader reader(in);
  if (reader.require("header") != "plotting-instance v1") reader.fail("expected 'plotting-instance v1'");

  const auto size = words(reader.require("size line"));
  if (size.size() != 3 || size[0] != "size") reader.fail("expected 'size <height> <width>'");
  const int height = parse_int(size[1], reader);
  const int width = parse_int(size[2], reader);
  if (height < 1 || width < 1) reader.fail("grid dimensions must be positive");

  InstanceFile file;
  auto line = words(reader.require("grid or goal line"));
  if (!line.empty() && line[0] == "goal") {
    if (line.size() != 2) reader.fail("expected 'goal <g>'");
    const int goal = parse_int(line[1], reader);
    if (goal < 0 || goal > height * width) reader.fail("goal must lie in 0.." + std::to_string(height * width));
    file.goal = goal;
    line = words(reader.require("grid line"));
  }
  if (line.size() != 1 || line[0] != "grid") reader.fail("expected 'grid'");

  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(height * width));
  for (int r = 1; r <= height; ++r) {
    const auto row = words(reader.require("grid row"));
    if (static_cast<int>(row.size()) != width) {
      reader.fail("expected " + std::to_string(width) + " cells, got " + std::to_string(row.size()));
    }
    for (const auto& token : row) {
      const int value = parse_int(token, reader);
      if (value < 1 || value > kMaxColours) {
        reader.fail("cell colours must lie in 1.." + std::to_string(kMaxColours));
      }
      cells.push_back(static_cast<Cell>(value));
    }
  }
  reader.expect_end();
  file.grid = GridState(height, width, std::move(cells));
  return file;
}

InstanceFile read_instance_file(const std::string& path) {
  auto in = open(path);
  return parse_instance(in);
}

void write_instance(std::ostream& out, const InstanceFile& file) {
  out << "plotting-instance v1\n";
  out << "size " << file.grid.height() << ' ' << file.grid.width() << '\n';
  if (file.goal) out << "goal " << *file.goal << '\n';
  out << "grid\n";
  for (int r = 1; r <= file.grid.height(); ++r) {
    for (int c = 1; c <= file.grid.width(); ++c) {
      if (c > 1) out << ' ';
      out << static_cast<int>(file.grid.at(r, c));
    }
    out << '\n';
  }
}

PlanFile parse_plan(std::istream& in) {
  LineReader reader(in);
  if (reader.require("header") != "plotting-plan v1") reader.fail("expected 'plotting-plan v1'");
  const auto hand = words(reader.require("hand line"));
  if (hand.size() != 2 || hand[0] != "hand") reader.fail("expected 'hand <colour>'");
  PlanFile plan;
  const int colour = parse_int(hand[1], reader);
  if (colour < 1 || colour > kMaxColours) reader.fail("hand colour out of range");
  plan.hand = static_cast<Colour>(colour);

  while (auto line = reader.next()) {
    const auto shot = words(*line);
    if (shot.empty()) continue;
    if (shot.size() != 2 || (shot[0] != "row" && shot[0] != "col")) reader.fail("expected 'row <r>' or 'col <c>'");
    const int index = parse_int(shot[1], reader);
    if (index < 1) reader.fail("shot index must be positive");
    plan.shots.push_back(shot[0] == "row" ? Shot::row(index) : Shot::col(index));
  }
  return plan;
}

PlanFile read_plan_file(const std::string& path) {
  auto in = open(path);
  return parse_plan(in);
}

void write_plan(std::ostream& out, const PlanFile& plan) {
  out << "plotting-plan v1\n";
  out << "hand " << static_cast<int>(plan.hand) << '\n';
  for (const Shot& shot : plan.shots) out << to_string(shot) << '\n';
}

char glyph(Cell cell) {
  if (cell == kEmpty) return '.';
  if (cell <= 9) return static_cast<char>('0' + cell);
  return static_cast<char>('a' + (cell - 10));
}

std::string render(const GridState& grid) {
  std::string out;
  for (int r = 1; r <= grid.height(); ++r) {
    for (int c = 1; c <= grid.width(); ++c) out.push_back(glyph(grid.at(r, c)));
    out.push_back('\n');
  }
  return out;
}

}  // namespace plotting::io
