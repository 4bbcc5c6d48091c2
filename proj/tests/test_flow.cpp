#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "t11/flow.hpp"

using namespace t11;

namespace {

std::vector<ComplexPoint> cpoints(std::size_t n, std::uint64_t seed) {
  std::vector<ComplexPoint> out;
  for (const auto& p : sample_points(ChartDomain{}, n, seed)) out.push_back(to_complex(p));
  return out;
}

const BasicFunction kFamilies[] = {log_modulus(0.3, -0.7), log_modulus(1.0, 1.0), log_squared(0.2, 0.5)};

double max_rel_error(const FlowSeries& s, const FlowState& exact) {
  double m = 0.0;
  for (std::size_t k = 0; k < s.times.size(); ++k) {
    const auto phi = exact.at(s.times[k]);
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      const double e = phi(s.points[i]);
      m = std::max(m, std::abs(s.values[k][i] - e) / std::max(std::abs(e), 1e-300));
    }
  }
  return m;
}

}  // namespace

TEST_CASE("zero potential is stationary") {
  const auto K = standard_potential();
  const auto z = zero_function();
  for (const auto& q : cpoints(20, 1)) CHECK(flow_residual(z, z, q, K) == 0.0);
}

TEST_CASE("exponential family solves the potential equation") {
  const auto K = standard_potential();
  for (const auto& phi0 : kFamilies) {
    const auto s = exponential_family(phi0);
    for (double t : {0.0, 0.1, 0.5, 1.0})
      for (const auto& q : cpoints(200, 2)) {
        // e^{6t} |phi0| reaches a few hundred at t = 1
        CHECK(flow_residual(s, t, q, K) < 1e-10 * std::max(1.0, std::abs(s.at(t)(q))));
      }
  }
}

TEST_CASE("(e^{6t} - 1) phi0 misses the equation by exactly 6 |phi0|") {
  const auto K = standard_potential();
  for (const auto& phi0 : kFamilies) {
    const auto s = analytic_family(phi0);
    for (double t : {0.0, 0.1, 0.5})
      for (const auto& q : cpoints(50, 3)) {
        const double expected = 6.0 * std::abs(phi0(q));
        CHECK(std::abs(flow_residual(s, t, q, K) - expected) < 1e-10 * std::max(1.0, std::exp(6 * t)));
      }
  }
}

TEST_CASE("non-pluriharmonic potential picks up the determinant term") {
  const auto K = standard_potential();
  const auto phi = modulus_squared(0);
  const auto rate = phi.scaled(6.0);
  for (const auto& q : cpoints(50, 4)) {
    const auto h = K.derivatives(q).hess;
    // det(h + E11) / det(h) = (h11 + 1) / h11 for diagonal h
    const double expected = std::log((h.h11 + 1.0) / h.h11);
    CHECK(std::abs(flow_residual(phi, rate, q, K) - expected) < 1e-12);
    CHECK(expected > 0.0);
  }
}

TEST_CASE("leaving the positive cone raises") {
  const auto K = standard_potential();
  const auto phi = modulus_squared(0).scaled(-10.0);
  const ComplexPoint q{{0.5, 0.2}, {1.0, 0.0}, 0.0};
  try {
    flow_residual(phi, phi, q, K);
    FAIL("expected a cone exit");
  } catch (const ConeExitError& e) {
    CHECK(e.min_eigenvalue() < 0.0);
    CHECK(std::string(e.what()).find("w1=") != std::string::npos);
  }
}

TEST_CASE("analytic solution") {
  const auto phi0 = log_modulus(0.3, -0.7);
  const auto qs = cpoints(20, 5);
  for (const auto& q : qs) {
    CHECK(analytic_solution(phi0, 0.0)(q) == 0.0);
    CHECK(std::abs(analytic_solution(phi0, std::log(2.0) / 6.0)(q) - phi0(q)) < 1e-15);
    CHECK(std::abs(analytic_solution(phi0, 0.1)(q) - (std::exp(0.6) - 1.0) * phi0(q)) < 1e-14);
  }
  CHECK(analytic_solution(phi0, 0.1).family() == Family::LogModulus);
  CHECK_THROWS_AS(analytic_solution(modulus_squared(0), 0.1), NotPluriharmonicError);
  CHECK_THROWS_AS(analytic_family(modulus_squared(1)), NotPluriharmonicError);
}

TEST_CASE("integrator on pluriharmonic data") {
  FlowConfig cfg;
  cfg.grid = cpoints(50, 6);

  SUBCASE("zero data stays zero") {
    const auto s = integrate_flow(zero_function(), cfg);
    CHECK(s.pointwise);
    for (const auto& v : s.values)
      for (double x : v) CHECK(x == 0.0);
  }
  SUBCASE("RK4 tracks the exact solution") {
    for (const auto& phi0 : kFamilies) {
      const auto s = integrate_flow(phi0, cfg);
      CHECK(s.pointwise);
      CHECK(s.times.size() == 501);
      CHECK(s.times.back() == 0.5);
      CHECK(max_rel_error(s, exponential_family(phi0)) < 1e-6);
      CHECK(s.max_error_estimate < 1e-6);
    }
  }
  SUBCASE("Euler at dt = 1e-3 is rejected by the local error check") {
    cfg.integrator = Integrator::Euler;
    CHECK_THROWS_AS(integrate_flow(kFamilies[0], cfg), StepRejectedError);
  }
}

TEST_CASE("observed convergence orders") {
  FlowConfig cfg;
  cfg.grid = cpoints(10, 7);
  cfg.local_error_tol = std::numeric_limits<double>::infinity();
  cfg.t_end = 0.5;
  const auto phi0 = kFamilies[2];
  const auto exact = exponential_family(phi0);
  auto err = [&](Integrator m, double dt) {
    cfg.integrator = m;
    cfg.dt = dt;
    return max_rel_error(integrate_flow(phi0, cfg), exact);
  };
  const double e1 = err(Integrator::Euler, 1e-3), e2 = err(Integrator::Euler, 5e-4);
  const double r1 = err(Integrator::RK4, 2e-2), r2 = err(Integrator::RK4, 1e-2);
  CHECK(std::log2(e1 / e2) == doctest::Approx(1.0).epsilon(0.05));
  CHECK(std::log2(r1 / r2) == doctest::Approx(4.0).epsilon(0.05));
  CHECK(e1 > err(Integrator::RK4, 1e-3));
}

TEST_CASE("grid complex Hessian") {
  TensorGrid g;
  g.counts = {16, 16, 12, 12};
  const auto pts = tensor_grid_points(g);
  CHECK(pts.size() == 16u * 16 * 12 * 12);

  auto values = [&](const BasicFunction& f) {
    std::vector<double> v;
    for (const auto& q : pts) v.push_back(f(q));
    return v;
  };
  const auto h = grid_complex_hessian(g, values(modulus_squared(0)));
  const auto hl = grid_complex_hessian(g, values(log_squared(0.2, 0.5)));
  double err = 0.0, err_l = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    err = std::max({err, std::abs(h[k].h11 - 1.0), std::abs(h[k].h22), std::abs(to_std(h[k].h12))});
    err_l = std::max({err_l, std::abs(hl[k].h11), std::abs(hl[k].h22), std::abs(to_std(hl[k].h12))});
  }
  CHECK(err < 0.05);
  CHECK(err_l < 0.05);

  g.counts = {5, 8, 8, 8};
  CHECK_THROWS_AS(grid_complex_hessian(g, std::vector<double>(5 * 8 * 8 * 8)), std::invalid_argument);
}

TEST_CASE("general path") {
  FlowConfig cfg;
  cfg.tensor_grid.counts = {12, 12, 8, 8};
  cfg.t_end = 0.01;
  cfg.dt = 1e-3;

  SUBCASE("forced on pluriharmonic data it stays close to the exact solution") {
    cfg.force_general = true;
    const auto phi0 = log_modulus(0.3, -0.7);
    const auto s = integrate_flow(phi0, cfg);
    CHECK_FALSE(s.pointwise);
    double m = 0.0;
    const auto exact = exponential_family(phi0).at(cfg.t_end);
    for (std::size_t i = 0; i < s.points.size(); ++i)
      m = std::max(m, std::abs(s.values.back()[i] - exact(s.points[i])));
    CHECK(m < 1e-8);
  }
  SUBCASE("initial slope matches the flow equation") {
    cfg.t_end = 1e-4;
    cfg.dt = 1e-4;
    const auto phi0 = modulus_squared(0).scaled(0.05);
    const auto s = integrate_flow(phi0, cfg);
    CHECK_FALSE(s.pointwise);
    const auto K = standard_potential();
    double worst = 0.0;
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      const double slope = (s.values[1][i] - s.values[0][i]) / cfg.dt;
      const auto q = s.points[i];
      const double rhs = log_det_ratio(K.derivatives(q).hess, phi0.derivatives(q).hess) + 6.0 * phi0(q);
      worst = std::max(worst, std::abs(slope - rhs) / std::max(1.0, std::abs(rhs)));
    }
    CHECK(worst < 5e-2);
  }
  SUBCASE("cone exit is reported with point and time") {
    cfg.t_end = 1e-3;
    cfg.dt = 1e-3;
    try {
      integrate_flow(modulus_squared(0).scaled(-5.0), cfg);
      FAIL("expected a cone exit");
    } catch (const ConeExitError& e) {
      const std::string what = e.what();
      CHECK(what.find("t = ") != std::string::npos);
      CHECK(e.min_eigenvalue() <= 0.0);
    }
  }
}

TEST_CASE("metric-level flow residual") {
  const auto K = standard_potential();
  for (const auto& phi0 : kFamilies) {
    const auto s = analytic_family(phi0);
    for (double t : {0.0, 0.1, 0.5, 1.0})
      for (const auto& q : cpoints(50, 8)) CHECK(metric_flow_residual(K, s, t, q) < 1e-6);
  }
  const FlowState zero{zero_function(), "0", [](double) { return zero_function(); },
                       [](double) { return zero_function(); }};
  for (const auto& q : cpoints(50, 9)) CHECK(metric_flow_residual(K, zero, 0.3, q) < 1e-6);

  // d_t g^T vanishes identically for the log-modulus family
  const auto s = analytic_family(log_modulus(0.3, -0.7));
  for (const auto& q : cpoints(20, 10)) {
    const auto h = s.rate(0.2).derivatives(q).hess;
    CHECK(h.h11 == 0.0);
    CHECK(h.h22 == 0.0);
    CHECK(to_std(h.h12) == std::complex<double>(0.0, 0.0));
  }
}

TEST_CASE("argument validation") {
  FlowConfig cfg;
  cfg.grid = cpoints(3, 11);
  cfg.dt = 0.0;
  CHECK_THROWS_AS(integrate_flow(kFamilies[0], cfg), std::invalid_argument);
  cfg.dt = 1e-3;
  cfg.t_end = -1.0;
  CHECK_THROWS_AS(integrate_flow(kFamilies[0], cfg), std::invalid_argument);
  CHECK(parse_integrator("euler") == Integrator::Euler);
  CHECK_THROWS_AS(parse_integrator("rk2"), std::invalid_argument);
}
