#include "t11/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "t11/errors.hpp"
#include "t11/parallel.hpp"

namespace t11::cli {

using nlohmann::json;
using nlohmann::ordered_json;

std::string to_string(Command c) {
  switch (c) {
    case Command::VerifyContact: return "verify contact";
    case Command::VerifyEinstein: return "verify einstein";
    case Command::VerifyFlow: return "verify flow";
    case Command::EmitGrid: return "emit grid";
  }
  return "?";
}

Command parse_command(const std::string& verb, const std::string& target) {
  if (verb == "verify") {
    if (target == "contact") return Command::VerifyContact;
    if (target == "einstein") return Command::VerifyEinstein;
    if (target == "flow") return Command::VerifyFlow;
  } else if (verb == "emit" && target == "grid") {
    return Command::EmitGrid;
  }
  throw UsageError("unknown command '" + verb + " " + target + "'");
}

namespace {

Command parse_command_string(const std::string& s) {
  const auto sp = s.find(' ');
  if (sp == std::string::npos) throw UsageError("unknown command '" + s + "'");
  return parse_command(s.substr(0, sp), s.substr(sp + 1));
}

std::string to_string(DerivativeMode m) { return m == DerivativeMode::Jets ? "jets" : "fd"; }

DerivativeMode parse_deriv(const std::string& s) {
  if (s == "jets") return DerivativeMode::Jets;
  if (s == "fd") return DerivativeMode::FiniteDifference;
  throw UsageError("unknown derivative mode '" + s + "' (expected jets or fd)");
}

bool is_verify(Command c) { return c != Command::EmitGrid; }

}  // namespace

double RunConfig::effective_tol() const {
  if (tol) return *tol;
  return deriv == DerivativeMode::Jets ? kDefaultTolJets : kDefaultTolFd;
}

std::string RunConfig::effective_format() const {
  if (!out_format.empty()) return out_format;
  return is_verify(command) ? "json" : "csv";
}

void RunConfig::validate() const {
  if (tol && !(*tol > 0.0)) throw UsageError("tol must be positive");
  if (samples == 0) throw UsageError("samples must be positive");
  if (!(eps_theta > 0.0 && eps_theta < 0.5 * kPi)) throw UsageError("eps must lie in (0, pi/2)");
  if (!std::isfinite(c1) || !std::isfinite(c2)) throw UsageError("c1 and c2 must be finite");
  if (family == Family::Custom) throw UsageError("family must be none, log_modulus or log_squared");
  if (!(dt > 0.0)) throw UsageError("dt must be positive");
  if (command == Command::VerifyFlow && t_values.empty()) throw UsageError("verify flow needs at least one t");
  for (double t : t_values) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw UsageError("t values must be finite and non-negative");
  }
  if (grid < 2) throw UsageError("grid needs at least 2 points per axis");
  const std::string f = effective_format();
  if (f != "json" && f != "csv") throw UsageError("format must be json or csv");
  if (is_verify(command) && f == "csv") throw UsageError("reports are JSON only; csv is for emit grid");
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{"command", "family", "c1",  "c2",         "samples",
                                             "seed",    "eps",    "tol", "deriv",      "t",
                                             "dt",      "integrator", "format", "out", "grid",
                                             "timing"};
  return keys;
}

void apply_json(RunConfig& cfg, const json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  const auto& keys = config_keys();
  for (const auto& [k, v] : j.items()) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw UsageError("unknown config key '" + k + "'");
  }
  try {
    if (j.contains("command")) cfg.command = parse_command_string(j.at("command").get<std::string>());
    if (j.contains("family")) {
      try {
        cfg.family = parse_family(j.at("family").get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
    if (j.contains("c1")) cfg.c1 = j.at("c1").get<double>();
    if (j.contains("c2")) cfg.c2 = j.at("c2").get<double>();
    if (j.contains("samples")) cfg.samples = j.at("samples").get<std::size_t>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("eps")) cfg.eps_theta = j.at("eps").get<double>();
    if (j.contains("tol")) {
      if (j.at("tol").is_null()) {
        cfg.tol.reset();
      } else {
        cfg.tol = j.at("tol").get<double>();
      }
    }
    if (j.contains("deriv")) cfg.deriv = parse_deriv(j.at("deriv").get<std::string>());
    if (j.contains("t")) cfg.t_values = j.at("t").get<std::vector<double>>();
    if (j.contains("dt")) cfg.dt = j.at("dt").get<double>();
    if (j.contains("integrator")) {
      try {
        cfg.integrator = parse_integrator(j.at("integrator").get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
    if (j.contains("format")) cfg.out_format = j.at("format").get<std::string>();
    if (j.contains("out")) cfg.out_path = j.at("out").get<std::string>();
    if (j.contains("grid")) cfg.grid = j.at("grid").get<int>();
    if (j.contains("timing")) cfg.timing = j.at("timing").get<bool>();
  } catch (const json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("config file '" + path + "': " + e.what());
  }
  apply_json(base, j);
  return base;
}

ordered_json config_to_json(const RunConfig& cfg) {
  ordered_json j;
  j["command"] = to_string(cfg.command);
  j["family"] = to_string(cfg.family);
  j["c1"] = cfg.c1;
  j["c2"] = cfg.c2;
  j["samples"] = cfg.samples;
  j["seed"] = cfg.seed;
  j["eps"] = cfg.eps_theta;
  j["tol"] = cfg.effective_tol();
  j["deriv"] = to_string(cfg.deriv);
  j["t"] = cfg.t_values;
  j["dt"] = cfg.dt;
  j["integrator"] = to_string(cfg.integrator);
  j["format"] = cfg.effective_format();
  j["out"] = cfg.out_path;
  j["grid"] = cfg.grid;
  j["timing"] = cfg.timing;
  return j;
}

bool Report::pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

ordered_json Report::to_json() const {
  ordered_json j;
  j["command"] = to_string(config.command);
  j["config"] = config_to_json(config);
  j["n_points"] = n_points;
  j["checks"] = ordered_json::array();
  for (const auto& c : checks) {
    ordered_json e;
    e["name"] = c.name;
    e["max_residual"] = c.max_residual;
    e["mean_residual"] = c.mean_residual;
    e["tol"] = c.tol;
    e["pass"] = c.pass;
    j["checks"].push_back(std::move(e));
  }
  j["pass"] = pass();
  if (config.timing) {
    j["wall_time_s"] = wall_time_s;
  } else {
    j["wall_time_s"] = nullptr;
  }
  j["diagnostics"] = diagnostics;
  return j;
}

namespace {

std::vector<RealPoint> sample(const RunConfig& cfg) {
  return sample_points(ChartDomain{cfg.eps_theta, true}, cfg.samples, cfg.seed);
}

ordered_json point_json(const RealPoint& p) {
  const Vec5& x = p.coords();
  return ordered_json::array({x[0], x[1], x[2], x[3], x[4]});
}

// Adds a check from per-point values; records the worst point when given.
Check make_check(Report& r, const std::string& name, const std::vector<double>& values, double tol,
                 const std::vector<RealPoint>* points = nullptr) {
  const auto s = ResidualStats::from(values);
  Check c{name, s.max, s.mean, tol, std::isfinite(s.max) && s.max < tol};
  r.checks.push_back(c);
  if (points && !points->empty() && !values.empty()) {
    r.diagnostics["worst_point"][name] = point_json((*points)[s.argmax % points->size()]);
  }
  return c;
}

DerivativeOptions derivative_options(const RunConfig& cfg) {
  DerivativeOptions opt;
  opt.mode = cfg.deriv;
  return opt;
}

void common_diagnostics(Report& r, const RunConfig& cfg) {
  r.diagnostics["tol_source"] = cfg.tol ? "explicit" : "default";
}

}  // namespace

Report verify_contact(const RunConfig& cfg) {
  Report r;
  r.config = cfg;
  common_diagnostics(r, cfg);
  const auto K = standard_potential();
  SasakiStructure s;
  MetricField<5> reference;
  if (cfg.family == Family::None) {
    s = standard_structure();
    reference = assemble_metric(s.eta, transverse_metric(K));
  } else {
    s = deform(K, family_function(cfg.family, cfg.c1, cfg.c2)).structure();
    reference = family_metric(cfg.family, cfg.c1, cfg.c2);
  }
  const auto pts = sample(cfg);
  r.n_points = pts.size();

  struct Row {
    ContactResiduals c;
    double assembly = 0.0;
  };
  const auto rows = parallel_map<Row>(pts.size(), [&](std::size_t i) {
    const Vec5& x = pts[i].coords();
    return Row{contact_residuals(s, x), (s.metric(x) - reference(x)).cwiseAbs().maxCoeff()};
  });
  auto column = [&](auto get) {
    std::vector<double> v(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) v[i] = get(rows[i]);
    return v;
  };
  const double tol = cfg.effective_tol();
  make_check(r, "eta_reeb", column([](const Row& w) { return w.c.eta_reeb; }), tol, &pts);
  make_check(r, "phi_reeb", column([](const Row& w) { return w.c.phi_reeb; }), tol, &pts);
  make_check(r, "eta_phi", column([](const Row& w) { return w.c.eta_phi; }), tol, &pts);
  make_check(r, "phi_squared", column([](const Row& w) { return w.c.phi_squared; }), tol, &pts);
  make_check(r, "compatibility", column([](const Row& w) { return w.c.compatibility; }), tol, &pts);
  make_check(r, "reeb_dual", column([](const Row& w) { return w.c.reeb_dual; }), tol, &pts);
  make_check(r, "metric_assembly", column([](const Row& w) { return w.assembly; }), tol, &pts);
  r.diagnostics["structure"] = cfg.family == Family::None ? "standard" : "deformed[" + to_string(cfg.family) + "]";
  return r;
}

Report verify_einstein(const RunConfig& cfg) {
  Report r;
  r.config = cfg;
  common_diagnostics(r, cfg);
  const auto K = standard_potential();
  const auto h = transverse_metric(K);
  const MetricField<5> g = family_metric(cfg.family, cfg.c1, cfg.c2);
  ContactForm eta = eta_from_potential(K);
  Vec5 reeb = reeb_field();
  if (cfg.family != Family::None) {
    const auto d = deform(K, family_function(cfg.family, cfg.c1, cfg.c2));
    eta = d.eta_tilde;
    reeb = d.reeb;
  }
  const auto pts = sample(cfg);
  r.n_points = pts.size();
  const auto opt = derivative_options(cfg);

  struct Row {
    double einstein = 0.0;
    BoyerResiduals boyer;
  };
  const auto rows = parallel_map<Row>(pts.size(), [&](std::size_t i) {
    const Vec5& x = pts[i].coords();
    try {
      return Row{curvature(g, x, opt).einstein_residual(kEinsteinConstant),
                 boyer_residuals(g, eta, reeb, h, pts[i], opt)};
    } catch (const SingularMetricError& e) {
      std::ostringstream os;
      os.precision(10);
      os << e.what() << " at (" << x.transpose() << ")";
      throw SingularMetricError(os.str());
    }
  });
  auto column = [&](auto get) {
    std::vector<double> v(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) v[i] = get(rows[i]);
    return v;
  };
  const double tol = cfg.effective_tol();
  make_check(r, "einstein", column([](const Row& w) { return w.einstein; }), tol, &pts);
  make_check(r, "boyer_ric_xi_xi", column([](const Row& w) { return w.boyer.ric_xi_xi; }), tol, &pts);
  make_check(r, "boyer_ric_x_xi", column([](const Row& w) { return w.boyer.ric_x_xi; }), tol, &pts);
  make_check(r, "boyer_transverse", column([](const Row& w) { return w.boyer.transverse; }), 10.0 * tol, &pts);
  r.diagnostics["lambda"] = kEinsteinConstant;
  r.diagnostics["metric"] = g.name();
  return r;
}

Report verify_flow(const RunConfig& cfg) {
  Report r;
  r.config = cfg;
  common_diagnostics(r, cfg);
  const auto K = standard_potential();
  const BasicFunction phi0 = family_function(cfg.family, cfg.c1, cfg.c2);
  const auto real_pts = sample(cfg);
  std::vector<ComplexPoint> pts;
  pts.reserve(real_pts.size());
  for (const auto& p : real_pts) pts.push_back(to_complex(p));
  r.n_points = pts.size();

  const FlowState analytic = analytic_family(phi0);
  const FlowState exact = exponential_family(phi0);
  const std::size_t nt = cfg.t_values.size();
  const std::size_t np = pts.size();

  struct Row {
    double analytic = 0.0;
    double exact = 0.0;
    double metric = 0.0;
    double excess = 0.0;  // | analytic residual - 6 |phi0| |
  };
  const auto rows = parallel_map<Row>(nt * np, [&](std::size_t k) {
    const double t = cfg.t_values[k / np];
    const auto& q = pts[k % np];
    Row w;
    w.analytic = flow_residual(analytic, t, q, K);
    w.exact = flow_residual(exact, t, q, K);
    w.metric = metric_flow_residual(K, analytic, t, q);
    w.excess = std::abs(w.analytic - kFlowConstant * std::abs(phi0(q)));
    return w;
  });
  auto column = [&](auto get) {
    std::vector<double> v(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) v[i] = get(rows[i]);
    return v;
  };
  const double tol = cfg.effective_tol();
  make_check(r, "analytic_residual", column([](const Row& w) { return w.analytic; }), tol, &real_pts);
  make_check(r, "exponential_residual", column([](const Row& w) { return w.exact; }), tol, &real_pts);
  make_check(r, "metric_residual", column([](const Row& w) { return w.metric; }), tol, &real_pts);

  // Integrator from phi(0) = phi0 against the exact solution e^{6t} phi0.
  FlowConfig fc;
  fc.dt = cfg.dt;
  fc.t_end = *std::max_element(cfg.t_values.begin(), cfg.t_values.end());
  fc.integrator = cfg.integrator;
  fc.grid = pts;
  fc.local_error_tol = std::numeric_limits<double>::infinity();
  const FlowSeries series = integrate_flow(phi0, fc, K);
  std::vector<double> rel;
  rel.reserve(series.times.size() * np);
  for (std::size_t k = 0; k < series.times.size(); ++k) {
    const BasicFunction e = exact.at(series.times[k]);
    for (std::size_t i = 0; i < np; ++i) {
      const double ref = e(series.points[i]);
      const double d = std::abs(series.values[k][i] - ref);
      rel.push_back(ref != 0.0 ? d / std::abs(ref) : d);
    }
  }
  make_check(r, "integrator_vs_exact", rel, kIntegratorTol);

  const double excess = ResidualStats::from(column([](const Row& w) { return w.excess; })).max;
  r.diagnostics["analytic_rule"] = analytic.rule;
  r.diagnostics["exact_rule"] = exact.rule;
  r.diagnostics["analytic_minus_6_abs_phi0"] = excess;
  r.diagnostics["integrator_path"] = series.pointwise ? "pointwise" : "general";
  r.diagnostics["integrator_t_end"] = fc.t_end;
  r.diagnostics["integrator_steps"] = series.times.size() - 1;
  r.diagnostics["integrator_error_estimate"] = series.max_error_estimate;
  r.diagnostics["boundary_conditions"] = "none (interior sample points only)";
  return r;
}

std::vector<std::string> grid_components() {
  static const std::array<const char*, 5> names{"psi", "theta1", "phi1", "theta2", "phi2"};
  std::vector<std::string> out;
  for (int a = 0; a < 5; ++a)
    for (int b = a; b < 5; ++b) out.push_back(fmt::format("g_{}_{}", names[a], names[b]));
  out.emplace_back("einstein_residual");
  return out;
}

std::vector<GridRow> emit_grid(const RunConfig& cfg) {
  const MetricField<5> g = family_metric(cfg.family, cfg.c1, cfg.c2);
  const auto components = grid_components();
  const int n = cfg.grid;
  const double lo = cfg.eps_theta;
  const double step = (kPi - 2.0 * cfg.eps_theta) / (n - 1);
  const auto opt = derivative_options(cfg);
  const auto blocks = parallel_map<std::vector<GridRow>>(static_cast<std::size_t>(n) * n, [&](std::size_t k) {
    const double t1 = lo + step * static_cast<double>(k / n);
    const double t2 = lo + step * static_cast<double>(k % n);
    const Vec5 x = RealPoint(0.0, t1, kPi / 3.0, t2, kPi / 3.0).coords();
    const auto rep = curvature(g, x, opt);
    std::vector<GridRow> rows;
    std::size_t c = 0;
    for (int a = 0; a < 5; ++a)
      for (int b = a; b < 5; ++b) rows.push_back({t1, t2, components[c++], rep.metric(a, b)});
    rows.push_back({t1, t2, components[c], rep.einstein_residual(kEinsteinConstant)});
    return rows;
  });
  std::vector<GridRow> out;
  out.reserve(blocks.size() * components.size());
  for (const auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::string grid_to_csv(const std::vector<GridRow>& rows) {
  std::string s = "theta1,theta2,component,value\n";
  for (const auto& r : rows) s += fmt::format("{:.17g},{:.17g},{},{:.17g}\n", r.theta1, r.theta2, r.component, r.value);
  return s;
}

std::string grid_to_json(const std::vector<GridRow>& rows) {
  ordered_json j;
  j["columns"] = {"theta1", "theta2", "component", "value"};
  j["rows"] = ordered_json::array();
  for (const auto& r : rows) j["rows"].push_back({r.theta1, r.theta2, r.component, r.value});
  return j.dump(2) + "\n";
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    std::string text;
    int code = 0;
    if (cfg.command == Command::EmitGrid) {
      const auto rows = emit_grid(cfg);
      text = cfg.effective_format() == "csv" ? grid_to_csv(rows) : grid_to_json(rows);
    } else {
      Report rep = cfg.command == Command::VerifyContact    ? verify_contact(cfg)
                   : cfg.command == Command::VerifyEinstein ? verify_einstein(cfg)
                                                            : verify_flow(cfg);
      rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      text = rep.to_json().dump(2) + "\n";
      code = rep.pass() ? 0 : 1;
    }
    if (cfg.out_path.empty()) {
      out << text;
    } else {
      std::ofstream f(cfg.out_path, std::ios::binary);
      if (!(f << text)) throw std::runtime_error("cannot write '" + cfg.out_path + "'");
    }
    return code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ConeExitError& e) {
    err << "cone exit: " << e.what() << "\n";
    return 3;
  } catch (const SingularMetricError& e) {
    err << "definiteness: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace t11::cli
