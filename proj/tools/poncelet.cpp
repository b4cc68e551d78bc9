// poncelet: rotation numbers, porisms and polygons for pencils of nested ellipses.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "poncelet/billiard.hpp"
#include "poncelet/io.hpp"
#include "poncelet/pencil.hpp"
#include "poncelet/poncelet.hpp"
#include "poncelet/verify.hpp"

namespace {

using namespace poncelet;
using json = nlohmann::ordered_json;

struct Options {
  std::vector<double> lambda, confocal, nu;
  std::string pencil_file, ell, grid = "20x20", out, svg, suite = "all";
  std::optional<double> confocal_e;
  int steps = 0;
  double start = 0;
  bool human = false;
};

constexpr int exit_ok = 0, exit_failed = 1, exit_input = 2;

struct Setup {
  Pencil pencil;
  std::optional<EccPair> confocal;
};

Setup load_pencil(const Options& o) {
  int sources = !o.lambda.empty() + !o.pencil_file.empty() + !o.confocal.empty();
  if (sources > 1) fail(ErrorKind::InvalidParameter, "give only one of --lambda, --pencil, --confocal");
  if (!o.lambda.empty()) {
    if (o.lambda.size() != 3) fail(ErrorKind::InvalidParameter, "--lambda takes three numbers");
    return {diagonal_pencil({o.lambda[0], o.lambda[1], o.lambda[2]}), std::nullopt};
  }
  if (!o.pencil_file.empty()) {
    std::ifstream in(o.pencil_file);
    if (!in) fail(ErrorKind::InvalidParameter, "cannot open " + o.pencil_file);
    json j;
    try {
      j = json::parse(in);
    } catch (const nlohmann::json::exception& ex) {
      fail(ErrorKind::InvalidParameter, std::string("pencil file: ") + ex.what());
    }
    return {io::pencil_from_json(j), std::nullopt};
  }
  if (!o.confocal.empty()) {
    if (o.confocal.size() != 2) fail(ErrorKind::InvalidParameter, "--confocal takes e,f");
    EccPair p{o.confocal[0], o.confocal[1]};
    require_delta(p);
    return {confocal_pencil(p.e, p.f), p};
  }
  fail(ErrorKind::InvalidParameter, "no pencil given (--lambda, --pencil or --confocal)");
}

PencilParam param_of(const Options& o) {
  if (o.nu.empty()) return {0, 1};
  if (o.nu.size() != 2) fail(ErrorKind::InvalidParameter, "--nu takes two numbers");
  return {o.nu[0], o.nu[1]};
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) fail(ErrorKind::InvalidParameter, "cannot write " + o.out);
  f << text;
}

void write_svg(const std::string& path, const std::string& svg) {
  std::ofstream f(path);
  if (!f) fail(ErrorKind::InvalidParameter, "cannot write " + path);
  f << svg;
}

std::string sig6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

json nu_json(PencilParam nu) { return json::array({nu.nu1, nu.nu2}); }

int cmd_rotation(const Options& o) {
  Setup s = load_pencil(o);
  PencilParam nu = param_of(o);
  json j;
  j["e"] = s.pencil.e;
  j["lambda"] = {s.pencil.lambda.l1, s.pencil.lambda.l2, s.pencil.lambda.l3};
  j["nu"] = nu_json(nu);
  double rho;
  if (s.confocal && o.nu.empty()) {
    j["f"] = s.confocal->f;
    rho = rotation_confocal(*s.confocal);
  } else {
    if (s.pencil.classify(nu) == ParamKind::Interior) j["f"] = f_of_nu(s.pencil, nu);
    rho = rho_of_nu(s.pencil, nu);
  }
  j["rho"] = rho;
  if (o.steps > 0) {
    double est = estimate_rotation(s.pencil, nu, o.steps);
    j["rho_numeric"] = est;
    j["residual"] = std::fabs(est - rho);
  }
  if (o.human) {
    emit(o, "e = " + sig6(s.pencil.e) + "\nrho = " + sig6(rho) + "\n");
  } else {
    emit(o, j.dump(2) + "\n");
  }
  return exit_ok;
}

// Shared by invert and polygon: the orbit for nu from the start angle.
json orbit_block(const Setup& s, PencilParam nu, int max_steps, double start, const std::string& svg_path) {
  PlanePoint z0 = covering(s.pencil, start);
  PolygonOrbit orbit = polygon(s.pencil, nu, z0, max_steps);
  if (!svg_path.empty()) write_svg(svg_path, io::render_svg(io::pencil_scene(s.pencil, {nu}, orbit.points)));
  return io::orbit_to_json(orbit);
}

int cmd_invert(const Options& o) {
  if (o.ell.empty()) fail(ErrorKind::InvalidRotation, "--ell is required");
  io::Rotation rot = io::parse_rotation(o.ell);
  Setup s = [&] {
    if (o.confocal_e) {
      double f = porism_f(*o.confocal_e, rot.value);
      return Setup{confocal_pencil(*o.confocal_e, f), EccPair{*o.confocal_e, f}};
    }
    return load_pencil(o);
  }();
  PencilParam nu = s.confocal && o.confocal_e ? PencilParam{0, 1} : invert_rho(s.pencil, rot.value);
  json j;
  j["ell"] = o.ell;
  j["nu"] = nu_json(nu);
  j["nu_canonical"] = nu_json(nu.canonical());
  j["f"] = f_of_nu(s.pencil, nu);
  j["rho"] = rho_of_nu(s.pencil, nu);
  j["e"] = s.pencil.e;
  if (rot.q > 0) {
    int max_steps = o.steps > 0 ? o.steps : static_cast<int>(rot.q);
    j["orbit"] = orbit_block(s, nu, max_steps, o.start, o.svg);
  }
  emit(o, j.dump(2) + "\n");
  return exit_ok;
}

int cmd_polygon(const Options& o) {
  Setup s = load_pencil(o);
  PencilParam nu = o.ell.empty() ? param_of(o) : invert_rho(s.pencil, io::parse_rotation(o.ell).value);
  int max_steps = o.steps > 0 ? o.steps : 1000;
  json j = orbit_block(s, nu, max_steps, o.start, o.svg);
  emit(o, j.dump(2) + "\n");
  return exit_ok;
}

int cmd_sweep(const Options& o) {
  int g1 = 0, g2 = 0;
  if (std::sscanf(o.grid.c_str(), "%dx%d", &g1, &g2) != 2 || g1 < 1 || g2 < 1)
    fail(ErrorKind::InvalidParameter, "--grid expects GxG");
  int n = o.steps > 0 ? o.steps : 10000;
  std::vector<io::SweepRow> rows;
  for (int i = 0; i < g1; ++i)
    for (int k = 0; k < g2; ++k) {
      double e = (i + 0.5) / g1;
      double f = e * (k + 0.5) / g2;
      EccPair p{e, f};
      double rho = rotation_confocal(p);
      double est = billiard_rotation_estimate(f, caustic_state(p), n);
      rows.push_back({e, f, rho, est, std::fabs(est - rho)});
    }
  emit(o, io::sweep_csv(rows));
  return exit_ok;
}

int cmd_verify(const Options& o) {
  std::vector<std::string> names;
  if (o.suite == "all") {
    names = verify::suite_names();
  } else {
    names = {o.suite};
  }
  json suites = json::array();
  bool all_pass = true;
  for (const auto& name : names) {
    auto rep = verify::run_suite(name);
    json checks = json::array();
    for (const auto& c : rep.checks) {
      json cj;
      cj["name"] = c.name;
      cj["residual"] = c.value;
      cj[c.below ? "max" : "min"] = c.bound;
      cj["pass"] = c.pass();
      checks.push_back(cj);
    }
    json sj;
    sj["suite"] = name;
    sj["pass"] = rep.pass();
    sj["checks"] = checks;
    suites.push_back(sj);
    all_pass = all_pass && rep.pass();
  }
  json j;
  j["pass"] = all_pass;
  j["suites"] = suites;
  emit(o, j.dump(2) + "\n");
  return all_pass ? exit_ok : exit_failed;
}

int cmd_render(const Options& o) {
  Setup s = load_pencil(o);
  PencilParam nu = o.ell.empty() ? param_of(o) : invert_rho(s.pencil, io::parse_rotation(o.ell).value);
  std::vector<PlanePoint> orbit;
  if (o.steps > 0) orbit = polygon(s.pencil, nu, covering(s.pencil, o.start), o.steps).points;
  std::string svg = io::render_svg(io::pencil_scene(s.pencil, {nu}, orbit));
  if (!o.svg.empty()) {
    write_svg(o.svg, svg);
  } else {
    emit(o, svg);
  }
  return exit_ok;
}

void add_pencil_options(CLI::App* c, Options& o) {
  c->add_option("--lambda", o.lambda, "diagonal pencil eigenvalues l1,l2,l3")->delimiter(',');
  c->add_option("--pencil", o.pencil_file, "pencil JSON file");
  c->add_option("--confocal", o.confocal, "confocal pair e,f (caustic, boundary)")->delimiter(',');
  c->add_option("--nu", o.nu, "pencil parameter nu1,nu2")->delimiter(',');
  c->add_option("--out", o.out, "output file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poncelet maps on pencils of nested ellipses"};
  app.require_subcommand(1);
  Options o;

  auto* rotation = app.add_subcommand("rotation", "rotation number of a pencil member");
  add_pencil_options(rotation, o);
  rotation->add_option("--steps", o.steps, "iterates for a numeric estimate");
  rotation->add_flag("--human", o.human, "plain text with 6 significant digits");

  auto* invert = app.add_subcommand("invert", "pencil member with a given rotation number");
  add_pencil_options(invert, o);
  invert->add_option("--ell", o.ell, "rotation number, p/q or decimal");
  invert->add_option("--confocal-e", o.confocal_e, "caustic eccentricity for a confocal porism");
  invert->add_option("--steps", o.steps, "maximum polygon steps");
  invert->add_option("--start", o.start, "covering parameter of the first vertex");
  invert->add_option("--svg", o.svg, "write the polygon as SVG");

  auto* poly = app.add_subcommand("polygon", "iterate the Poncelet map");
  add_pencil_options(poly, o);
  poly->add_option("--ell", o.ell, "rotation number instead of --nu");
  poly->add_option("--steps", o.steps, "maximum steps");
  poly->add_option("--start", o.start, "covering parameter of the first vertex");
  poly->add_option("--svg", o.svg, "write the orbit as SVG");

  auto* sweep = app.add_subcommand("sweep", "closed form vs billiard orbits over a grid of confocal pairs");
  sweep->add_option("--grid", o.grid, "grid size GxG");
  sweep->add_option("--steps", o.steps, "bounces per orbit");
  sweep->add_option("--out", o.out, "CSV output file");

  auto* verify = app.add_subcommand("verify", "run self-check suites");
  verify->add_option("--suite", o.suite, "elliptic, confocal, pencil, cayley, composition or all");
  verify->add_option("--out", o.out, "JSON output file");

  auto* render = app.add_subcommand("render", "draw a pencil member and an orbit as SVG");
  add_pencil_options(render, o);
  render->add_option("--ell", o.ell, "rotation number instead of --nu");
  render->add_option("--steps", o.steps, "orbit steps to draw");
  render->add_option("--start", o.start, "covering parameter of the first vertex");
  render->add_option("--svg", o.svg, "SVG output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? exit_ok : exit_input;
  }

  try {
    if (*rotation) return cmd_rotation(o);
    if (*invert) return cmd_invert(o);
    if (*poly) return cmd_polygon(o);
    if (*sweep) return cmd_sweep(o);
    if (*verify) return cmd_verify(o);
    if (*render) return cmd_render(o);
  } catch (const Error& e) {
    json err;
    err["error"] = std::string(to_string(e.kind()));
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return exit_input;
  }
  return exit_input;
}
