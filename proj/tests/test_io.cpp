#include <gtest/gtest.h>

#include <cmath>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "poncelet/io.hpp"

using namespace poncelet;
namespace pio = poncelet::io;

namespace {

template <class Fn>
ErrorKind error_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::UnknownSet;
}

// Tag-balance check: one root element, every open tag closed in order.
bool well_formed(const std::string& doc, int& roots) {
  std::vector<std::string> stack;
  roots = 0;
  std::regex tag(R"(<(/?)([A-Za-z][\w:-]*)([^<>]*?)(/?)>)");
  std::size_t pos = 0;
  for (auto it = std::sregex_iterator(doc.begin(), doc.end(), tag); it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    std::string between = doc.substr(pos, m.position() - pos);
    if (between.find_first_of("<>") != std::string::npos) return false;
    pos = m.position() + m.length();
    bool closing = m[1].length() > 0, selfclose = m[4].length() > 0;
    std::string name = m[2];
    if (closing) {
      if (stack.empty() || stack.back() != name) return false;
      stack.pop_back();
    } else {
      if (stack.empty()) ++roots;
      if (!selfclose) stack.push_back(name);
    }
  }
  return stack.empty() && doc.substr(pos).find_first_of("<>") == std::string::npos;
}

std::vector<PlanePoint> parse_points(const std::string& attr) {
  std::vector<PlanePoint> out;
  std::istringstream is(attr);
  std::string pair;
  while (is >> pair) {
    auto comma = pair.find(',');
    out.push_back({std::stod(pair.substr(0, comma)), std::stod(pair.substr(comma + 1))});
  }
  return out;
}

double segment_distance(PlanePoint p, PlanePoint a, PlanePoint b) {
  double dx = b.x - a.x, dy = b.y - a.y;
  double t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / (dx * dx + dy * dy), 0.0, 1.0);
  return std::hypot(p.x - a.x - t * dx, p.y - a.y - t * dy);
}

std::string quad_svg() {
  Pencil P = diagonal_pencil({0.2, 0.125, 1.0 / 9});
  PencilParam nu = invert_rho(P, 0.25);
  auto orbit = polygon(P, nu, covering(P, 0.1), 10);
  return pio::render_svg(pio::pencil_scene(P, {nu, {-P.lambda.l3, 1}}, orbit.points));
}

}  // namespace

TEST(FormatDouble, ShortestRoundTrip) {
  for (double v : {0.1, 1.0 / 3, -2.5e-300, 6.02214076e23, 0.0, 1e-7}) {
    auto s = pio::format_double(v);
    EXPECT_EQ(std::stod(s), v) << s;
  }
  EXPECT_EQ(pio::format_double(0.25), "0.25");
  EXPECT_EQ(pio::format_double(2.0), "2");
}

TEST(ParseRotation, FractionsAndDecimals) {
  auto r = pio::parse_rotation("2/7");
  EXPECT_EQ(r.p, 2);
  EXPECT_EQ(r.q, 7);
  EXPECT_EQ(r.value, 2.0 / 7);
  auto d = pio::parse_rotation("0.3");
  EXPECT_EQ(d.q, 0);
  EXPECT_EQ(d.value, 0.3);
  for (const char* bad : {"0.6", "1/2", "0", "3/5", "x", "1/0", "1/-3", "0.25abc", ""})
    EXPECT_EQ(error_of([&] { pio::parse_rotation(bad); }), ErrorKind::InvalidRotation) << bad;
}

TEST(PencilJson, LambdaAndConicForms) {
  auto P = pio::pencil_from_json(pio::json::parse(R"({"lambda":[0.2,0.125,0.1111111111111111]})"));
  EXPECT_NEAR(P.e, std::sqrt(27.0 / 32), 1e-12);
  auto j = pio::pencil_to_json(P);
  auto Q = pio::pencil_from_json(j);
  EXPECT_NEAR(Q.e, P.e, 1e-14);
  EXPECT_EQ(j.begin().key(), "C1");
  EXPECT_EQ(error_of([] { pio::pencil_from_json(pio::json::parse(R"({"C1":{"c11":1}})")); }), ErrorKind::InvalidParameter);
  EXPECT_EQ(error_of([] { pio::pencil_from_json(pio::json::parse(R"({"lambda":[1,2]})")); }), ErrorKind::InvalidParameter);
  EXPECT_EQ(error_of([] { pio::pencil_from_json(pio::json::parse(R"({"lambda":[0.1,0.2,0.3]})")); }),
            ErrorKind::DegenerateSpectrum);
}

TEST(OrbitJson, FieldsAndDeterminism) {
  Pencil P = diagonal_pencil({0.2, 0.125, 1.0 / 9});
  auto o = polygon(P, invert_rho(P, 0.25), covering(P, 0.1), 10);
  auto a = pio::orbit_to_json(o).dump(), b = pio::orbit_to_json(polygon(P, invert_rho(P, 0.25), covering(P, 0.1), 10)).dump();
  EXPECT_EQ(a, b);
  auto j = pio::json::parse(a);
  EXPECT_EQ(j["steps"], 4);
  EXPECT_EQ(j["winding"], 1);
  EXPECT_EQ(j["points"].size(), 5u);
  EXPECT_LT(j["closure_residual"].get<double>(), 1e-8);
  EXPECT_EQ(a.find("\"points\""), 1u);
}

TEST(SweepCsv, HeaderAndRows) {
  auto csv = pio::sweep_csv({{0.8, 0.5, 0.1, 0.1001, 1e-4}});
  EXPECT_EQ(csv, "e,f,rho_closed_form,rho_numeric,residual\n0.8,0.5,0.1,0.1001,1e-04\n");
}

TEST(Svg, WellFormedWithSingleRoot) {
  auto svg = quad_svg();
  int roots = 0;
  EXPECT_TRUE(well_formed(svg, roots));
  EXPECT_EQ(roots, 1);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("<circle"), std::string::npos);
  EXPECT_EQ(svg.find("<script"), std::string::npos);
  EXPECT_EQ(svg, quad_svg());
}

TEST(Svg, OrbitVerticesLieOnOuterPath) {
  auto svg = quad_svg();
  std::smatch m;
  ASSERT_TRUE(std::regex_search(svg, m, std::regex(R"(viewBox="([^"]+)\")")));
  std::istringstream vb(m[1].str());
  double x0, y0, w, h;
  vb >> x0 >> y0 >> w >> h;
  std::regex pts(R"(<(polygon|polyline)[^>]*points="([^"]*)\")");
  std::vector<std::vector<PlanePoint>> polys;
  std::vector<std::string> kinds;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), pts); it != std::sregex_iterator(); ++it) {
    kinds.push_back((*it)[1]);
    polys.push_back(parse_points((*it)[2]));
  }
  ASSERT_EQ(polys.size(), 3u);
  EXPECT_EQ(kinds.back(), "polyline");
  const auto& outer = polys.front();
  EXPECT_EQ(outer.size(), static_cast<std::size_t>(pio::svg_segments + 1));
  for (const auto& p : polys.back()) {
    double best = INFINITY;
    for (std::size_t i = 0; i + 1 < outer.size(); ++i) best = std::min(best, segment_distance(p, outer[i], outer[i + 1]));
    EXPECT_LT(best, 1e-3 * std::max(w, h));
  }
  // Everything drawn sits inside the view box with a margin.
  for (const auto& poly : polys)
    for (const auto& p : poly) {
      EXPECT_GT(p.x, x0);
      EXPECT_LT(p.x, x0 + w);
      EXPECT_GT(p.y, y0);
      EXPECT_LT(p.y, y0 + h);
    }
}

TEST(Svg, MemberOutlineLiesOnMember) {
  Pencil P = diagonal_pencil({0.2, 0.125, 1.0 / 9});
  PencilParam nu{-0.05, 1};
  Ellipse c = member(P, nu);
  for (const auto& p : pio::member_outline(P, nu)) EXPECT_EQ(classify_point(c, p), PointClass::On);
  for (const auto& p : pio::outer_outline(P)) EXPECT_EQ(classify_point(P.C1, p), PointClass::On);
}
