#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "zdflp/render.hpp"

using namespace zdflp;

namespace {

std::size_t count_substr(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size()))
    ++n;
  return n;
}

LayoutSolution sample_solution() {
  LayoutSolution sol;
  sol.facility_x = 10.0;
  sol.facility_y = 8.0;
  sol.replaces["21"] = "4";
  for (int t = 0; t < 2; ++t) {
    PeriodLayout p;
    p.zone_bounds[0] = {0.0, 10.0, 0.0, 4.0};
    p.zone_bounds[1] = {0.0, 10.0, 4.0, 8.0};
    p.zone_orientation[0] = Axis::X;
    p.zone_orientation[1] = Axis::X;
    p.assignment["21"] = 0;
    p.assignment["7"] = 1;
    p.dept_center["21"] = {2.0, 2.0};
    p.dept_half["21"] = {1.0, 1.0};
    p.io_point["21"] = {2.0, 3.0};
    p.dept_center["7"] = {5.0, 6.0};
    p.dept_half["7"] = {2.0, 1.5};
    p.io_point["7"] = {5.0, 4.5};
    p.ordering.insert({"21", "7", Axis::X});
    sol.periods.push_back(std::move(p));
  }
  return sol;
}

}  // namespace

TEST_CASE("one svg document per period with the expected element counts") {
  const LayoutSolution sol = sample_solution();
  const auto docs = render_svg(sol);
  REQUIRE(docs.size() == 2);
  for (const auto& svg : docs) {
    CHECK(svg.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\"", 0) == 0);
    CHECK(count_substr(svg, "class=\"department\"") == 2);
    CHECK(count_substr(svg, "class=\"zone\"") == 2);
    CHECK(count_substr(svg, "class=\"facility\"") == 1);
    CHECK(count_substr(svg, "class=\"io\"") == 2);
    CHECK(svg.find("</svg>") != std::string::npos);
  }
}

TEST_CASE("replacement metadata renders as an arrow label") {
  const LayoutSolution sol = sample_solution();
  const std::string svg = render_svg_period(sol, 0);
  CHECK(svg.find("21 \xE2\x86\x92 4") != std::string::npos);

  RenderStyle plain;
  plain.replacement_labels = false;
  const std::string bare = render_svg_period(sol, 0, plain);
  CHECK(bare.find("\xE2\x86\x92") == std::string::npos);
  CHECK(bare.find(">21<") != std::string::npos);
}

TEST_CASE("style flags drop zone rectangles and io markers") {
  RenderStyle style;
  style.show_io = false;
  style.show_zone_bounds = false;
  const std::string svg = render_svg_period(sample_solution(), 0, style);
  CHECK(count_substr(svg, "class=\"zone\"") == 0);
  CHECK(count_substr(svg, "class=\"io\"") == 0);
  CHECK(count_substr(svg, "class=\"department\"") == 2);
}

TEST_CASE("coordinates are scaled and y-flipped into screen convention") {
  RenderStyle style;
  style.scale = 10.0;
  const std::string svg = render_svg_period(sample_solution(), 0, style);
  // department "21": rect top-left is (c_x - l_x, c_y + l_y) = (1, 3);
  // screen x = 10 + 1*10 = 20, screen y = 10 + (8 - 3)*10 = 60.
  CHECK(svg.find("x=\"20\" y=\"60\" width=\"20\" height=\"20\"") != std::string::npos);
  // facility frame is 100 x 80 plus margins
  CHECK(svg.find("width=\"120\" height=\"100\"") != std::string::npos);
}

TEST_CASE("invalid scale and period are refused") {
  RenderStyle bad;
  bad.scale = 0.0;
  CHECK_THROWS_AS(render_svg_period(sample_solution(), 0, bad), std::invalid_argument);
  CHECK_THROWS_AS(render_svg_period(sample_solution(), 5), std::out_of_range);
}

TEST_CASE("rendering is deterministic") {
  const LayoutSolution sol = sample_solution();
  CHECK(render_svg(sol) == render_svg(sol));
}
