// t11: verification front end for the T^{1,1} Sasaki-Einstein library.
//
//   t11 verify contact|einstein|flow [flags]
//   t11 emit grid [flags]

#include <iostream>

#include <CLI11.hpp>

#include "t11/cli.hpp"

int main(int argc, char** argv) {
  using namespace t11::cli;
  CLI::App app{"Sasaki-Einstein verification on T^{1,1}"};
  app.set_version_flag("--version", "t11 0.1");

  std::string verb, target, config_path, family, deriv, integrator;
  double c1 = 0, c2 = 0, eps = 0, tol = 0, dt = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<double> t_values;
  std::string out, format;
  int grid = 0;
  bool no_timing = false;

  app.add_option("verb", verb, "verify | emit");
  app.add_option("target", target, "contact | einstein | flow (verify), grid (emit)");
  app.add_option("--config", config_path, "JSON config file; flags override its values");
  auto* o_family = app.add_option("--family", family, "none | log_modulus | log_squared");
  auto* o_c1 = app.add_option("--c1", c1, "first family parameter");
  auto* o_c2 = app.add_option("--c2", c2, "second family parameter");
  auto* o_samples = app.add_option("--samples", samples, "number of sample points");
  auto* o_seed = app.add_option("--seed", seed, "sampling seed");
  auto* o_eps = app.add_option("--eps", eps, "distance of theta samples from the poles");
  auto* o_tol = app.add_option("--tol", tol, "pass threshold (default 1e-7 jets, 1e-4 fd)");
  auto* o_deriv = app.add_option("--deriv", deriv, "jets | fd");
  auto* o_t = app.add_option("--t", t_values, "flow times");
  auto* o_dt = app.add_option("--dt", dt, "integrator step");
  auto* o_int = app.add_option("--integrator", integrator, "euler | rk4");
  auto* o_out = app.add_option("--out", out, "output file (default stdout)");
  auto* o_format = app.add_option("--format", format, "json | csv");
  auto* o_grid = app.add_option("--grid", grid, "points per axis for emit grid");
  app.add_flag("--no-timing", no_timing, "report wall_time_s as null (byte-stable reports)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
    nlohmann::json flags = nlohmann::json::object();
    if (!verb.empty() || !target.empty()) flags["command"] = verb + " " + target;
    if (o_family->count()) flags["family"] = family;
    if (o_c1->count()) flags["c1"] = c1;
    if (o_c2->count()) flags["c2"] = c2;
    if (o_samples->count()) flags["samples"] = samples;
    if (o_seed->count()) flags["seed"] = seed;
    if (o_eps->count()) flags["eps"] = eps;
    if (o_tol->count()) flags["tol"] = tol;
    if (o_deriv->count()) flags["deriv"] = deriv;
    if (o_t->count()) flags["t"] = t_values;
    if (o_dt->count()) flags["dt"] = dt;
    if (o_int->count()) flags["integrator"] = integrator;
    if (o_out->count()) flags["out"] = out;
    if (o_format->count()) flags["format"] = format;
    if (o_grid->count()) flags["grid"] = grid;
    if (no_timing) flags["timing"] = false;
    if (verb.empty() && config_path.empty()) throw UsageError("missing command (verify ... or emit grid)");
    apply_json(cfg, flags);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
  return run(cfg, std::cout, std::cerr);
}
