#pragma once

// JSON, CSV and SVG emission for pencils and orbits.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "poncelet/error.hpp"
#include "poncelet/pencil.hpp"
#include "poncelet/poncelet.hpp"

namespace poncelet::io {

using json = nlohmann::ordered_json;

// Shortest decimal string that reads back to the same double.
inline std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline json conic_to_json(const SymmetricConic& c) {
  json j = json::object();
  j["c11"] = c.c11;
  j["c12"] = c.c12;
  j["c13"] = c.c13;
  j["c22"] = c.c22;
  j["c23"] = c.c23;
  j["c33"] = c.c33;
  return j;
}

inline SymmetricConic conic_from_json(const json& j) {
  try {
    return {j.at("c11").get<double>(), j.at("c12").get<double>(), j.at("c13").get<double>(),
            j.at("c22").get<double>(), j.at("c23").get<double>(), j.at("c33").get<double>()};
  } catch (const nlohmann::json::exception& ex) {
    fail(ErrorKind::InvalidParameter, std::string("conic fragment: ") + ex.what());
  }
}

inline Pencil pencil_from_json(const json& j) {
  if (j.contains("lambda")) {
    const auto& l = j.at("lambda");
    if (!l.is_array() || l.size() != 3) fail(ErrorKind::InvalidParameter, "lambda must hold three numbers");
    return diagonal_pencil({l[0].get<double>(), l[1].get<double>(), l[2].get<double>()});
  }
  if (!j.contains("C1") || !j.contains("C2")) fail(ErrorKind::InvalidParameter, "pencil needs C1 and C2 or lambda");
  return build_pencil(conic_from_json(j.at("C1")), conic_from_json(j.at("C2")));
}

inline json pencil_to_json(const Pencil& P) {
  json j = json::object();
  j["C1"] = conic_to_json(P.C1.conic());
  j["C2"] = conic_to_json(P.C2.conic());
  j["lambda"] = {P.lambda.l1, P.lambda.l2, P.lambda.l3};
  j["e"] = P.e;
  return j;
}

inline json orbit_to_json(const PolygonOrbit& o) {
  json pts = json::array();
  for (const auto& p : o.points) pts.push_back({p.x, p.y});
  json j = json::object();
  j["points"] = std::move(pts);
  j["steps"] = o.steps;
  j["winding"] = o.winding;
  j["closure_residual"] = o.closure_residual;
  j["closed"] = o.closed;
  j["rho"] = o.rho;
  return j;
}

// Rotation number given as "p/q" or as a decimal.
struct Rotation {
  double value = 0;
  long p = 0, q = 0;  // q == 0 for decimal input
};

inline Rotation parse_rotation(std::string_view s) {
  Rotation r;
  auto slash = s.find('/');
  auto parse_long = [&](std::string_view t, long& out) {
    auto res = std::from_chars(t.data(), t.data() + t.size(), out);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size())
      fail(ErrorKind::InvalidRotation, "cannot parse '" + std::string(s) + "'");
  };
  if (slash != std::string_view::npos) {
    parse_long(s.substr(0, slash), r.p);
    parse_long(s.substr(slash + 1), r.q);
    if (r.q <= 0) fail(ErrorKind::InvalidRotation, "denominator must be positive");
    if (!(2 * r.p > 0 && 2 * r.p < r.q)) fail(ErrorKind::InvalidRotation, "rotation number must lie in (0, 1/2)");
    r.value = static_cast<double>(r.p) / static_cast<double>(r.q);
  } else {
    auto res = std::from_chars(s.data(), s.data() + s.size(), r.value);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
      fail(ErrorKind::InvalidRotation, "cannot parse '" + std::string(s) + "'");
    if (!(r.value > 0 && r.value < 0.5)) fail(ErrorKind::InvalidRotation, "rotation number must lie in (0, 1/2)");
  }
  return r;
}

struct SweepRow {
  double e, f, rho_closed_form, rho_numeric, residual;
};

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "e,f,rho_closed_form,rho_numeric,residual\n";
  for (const auto& r : rows) {
    out += format_double(r.e) + ',' + format_double(r.f) + ',' + format_double(r.rho_closed_form) + ',' +
           format_double(r.rho_numeric) + ',' + format_double(r.residual) + '\n';
  }
  return out;
}

inline constexpr int svg_segments = 256;

// Closed polyline of the pencil member nu, traced through the standard chart.
inline std::vector<PlanePoint> member_outline(const Pencil& P, PencilParam nu) {
  const auto& s = P.lambda;
  double g = nu.nu1 + s.l3 * nu.nu2;
  double ax = std::sqrt(g / (nu.nu1 + s.l1 * nu.nu2)), ay = std::sqrt(g / (nu.nu1 + s.l2 * nu.nu2));
  std::vector<PlanePoint> pts;
  pts.reserve(svg_segments + 1);
  for (int i = 0; i <= svg_segments; ++i) {
    double t = 2 * std::numbers::pi * i / svg_segments;
    pts.push_back(P.from_standard({ax * std::cos(t), ay * std::sin(t)}));
  }
  return pts;
}

inline std::vector<PlanePoint> outer_outline(const Pencil& P) {
  std::vector<PlanePoint> pts;
  pts.reserve(svg_segments + 1);
  for (int i = 0; i <= svg_segments; ++i) pts.push_back(covering(P, static_cast<double>(i) / svg_segments));
  return pts;
}

struct Scene {
  struct Path {
    std::vector<PlanePoint> points;
    std::string stroke;
    bool closed;
  };
  std::vector<Path> paths;
  std::vector<PlanePoint> markers;
};

inline Scene pencil_scene(const Pencil& P, const std::vector<PencilParam>& members, const std::vector<PlanePoint>& orbit) {
  Scene sc;
  sc.paths.push_back({outer_outline(P), "black", true});
  for (const auto& nu : members) {
    if (P.classify(nu) == ParamKind::Interior) sc.paths.push_back({member_outline(P, nu), "steelblue", true});
    if (P.classify(nu) == ParamKind::Limiting) sc.markers.push_back(P.limiting_point());
  }
  if (!orbit.empty()) sc.paths.push_back({orbit, "firebrick", false});
  return sc;
}

// Stroke-only SVG; y is flipped so the plane's orientation is preserved on screen.
inline std::string render_svg(const Scene& sc) {
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  auto grow = [&](PlanePoint p) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, -p.y);
    ymax = std::max(ymax, -p.y);
  };
  for (const auto& path : sc.paths)
    for (auto p : path.points) grow(p);
  for (auto p : sc.markers) grow(p);
  double span = std::max(xmax - xmin, ymax - ymin);
  double m = 0.05 * span;
  double w = xmax - xmin + 2 * m, h = ymax - ymin + 2 * m;
  std::string stroke = format_double(span / 400);

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << format_double(xmin - m) << ' '
     << format_double(ymin - m) << ' ' << format_double(w) << ' ' << format_double(h) << "\">\n";
  for (const auto& path : sc.paths) {
    os << "  <" << (path.closed ? "polygon" : "polyline") << " fill=\"none\" stroke=\"" << path.stroke
       << "\" stroke-width=\"" << stroke << "\" points=\"";
    for (std::size_t i = 0; i < path.points.size(); ++i) {
      if (i) os << ' ';
      os << format_double(path.points[i].x) << ',' << format_double(-path.points[i].y);
    }
    os << "\"/>\n";
  }
  for (auto p : sc.markers)
    os << "  <circle cx=\"" << format_double(p.x) << "\" cy=\"" << format_double(-p.y) << "\" r=\"" << stroke
       << "\" fill=\"black\"/>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace poncelet::io
