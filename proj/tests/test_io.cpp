#include <random>
#include <sstream>

#include "doctest.h"
#include "plotting/error.hpp"
#include "plotting/generator.hpp"
#include "plotting/io.hpp"

using namespace plotting;

namespace {

io::InstanceFile parse_instance_text(const std::string& text) {
  std::istringstream in(text);
  return io::parse_instance(in);
}

io::PlanFile parse_plan_text(const std::string& text) {
  std::istringstream in(text);
  return io::parse_plan(in);
}

std::string error_of(const std::string& text) {
  try {
    parse_instance_text(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parse_failure);
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("instance file format") {
  const io::InstanceFile file{GridState::from_rows({{1, 2, 3}, {3, 2, 1}}), 2};
  std::ostringstream out;
  io::write_instance(out, file);
  CHECK(out.str() == "plotting-instance v1\nsize 2 3\ngoal 2\ngrid\n1 2 3\n3 2 1\n");
  CHECK(parse_instance_text(out.str()) == file);

  const auto no_goal = parse_instance_text("plotting-instance v1\nsize 1 2\ngrid\n1 1\n");
  CHECK_FALSE(no_goal.goal);
  CHECK(no_goal.grid == GridState::from_rows({{1, 1}}));
}

TEST_CASE("instance round trip on random grids") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const int h = 1 + static_cast<int>(rng() % 6);
    const int w = 1 + static_cast<int>(rng() % 6);
    const int k = 1 + static_cast<int>(rng() % std::min(12, h * w));
    io::InstanceFile file{random_instance({h, w, k}, rng()).init_grid, std::nullopt};
    if (rng() & 1u) file.goal = static_cast<int>(rng() % static_cast<unsigned>(h * w + 1));
    std::ostringstream out;
    io::write_instance(out, file);
    CHECK(parse_instance_text(out.str()) == file);
  }
}

TEST_CASE("instance parse errors name the line") {
  CHECK(error_of("plotting-instance v2\n").find("line 1") != std::string::npos);
  CHECK(error_of("plotting-instance v1\nsize 2\n").find("line 2") != std::string::npos);
  CHECK(error_of("plotting-instance v1\nsize 1 1\ngoal 2\ngrid\n1\n").find("line 3") != std::string::npos);
  CHECK(error_of("plotting-instance v1\nsize 1 2\ngrid\n1\n").find("line 4") != std::string::npos);
  CHECK(error_of("plotting-instance v1\nsize 1 1\ngrid\n0\n").find("line 4") != std::string::npos);
  CHECK(error_of("plotting-instance v1\nsize 1 1\ngrid\n1x\n").find("line 4") != std::string::npos);
  CHECK(error_of("plotting-instance v1\nsize 2 1\ngrid\n1\n").find("end of file") != std::string::npos);
  CHECK(error_of("plotting-instance v1\nsize 1 1\ngrid\n1\n1\n").find("line 5") != std::string::npos);
}

TEST_CASE("plan file format") {
  const io::PlanFile plan{2, {Shot::row(1), Shot::col(3), Shot::row(2)}};
  std::ostringstream out;
  io::write_plan(out, plan);
  CHECK(out.str() == "plotting-plan v1\nhand 2\nrow 1\ncol 3\nrow 2\n");
  CHECK(parse_plan_text(out.str()) == plan);
  CHECK(parse_plan_text("plotting-plan v1\nhand 1\n").shots.empty());
  CHECK_THROWS_AS(parse_plan_text("plotting-plan v1\nhand 0\n"), Error);
  CHECK_THROWS_AS(parse_plan_text("plotting-plan v1\nhand 1\ndiag 1\n"), Error);
  CHECK_THROWS_AS(parse_plan_text("plotting-plan v1\nhand 1\nrow 0\n"), Error);
  CHECK_THROWS_AS(parse_plan_text("plotting-plan\n"), Error);
}

TEST_CASE("missing files are I/O failures") {
  try {
    io::read_instance_file("/nonexistent/instance.txt");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io_failure);
  }
}

TEST_CASE("rendering") {
  CHECK(io::glyph(0) == '.');
  CHECK(io::glyph(9) == '9');
  CHECK(io::glyph(10) == 'a');
  CHECK(io::glyph(35) == 'z');
  CHECK(io::render(GridState::from_rows({{0, 1}, {12, 2}})) == ".1\nc2\n");
}
