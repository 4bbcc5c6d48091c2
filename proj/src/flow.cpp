#include "t11/flow.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "t11/errors.hpp"

namespace t11 {

namespace {

double min_eigenvalue(const HermitianBlock<double>& m) {
  const double half_trace = 0.5 * (m.h11 + m.h22);
  const double half_gap = 0.5 * (m.h11 - m.h22);
  return half_trace - std::sqrt(half_gap * half_gap + m.h12.re * m.h12.re + m.h12.im * m.h12.im);
}

std::string describe(const ComplexPoint& q) {
  std::ostringstream os;
  os.precision(10);
  os << "(w1=" << q.w1 << ", w2=" << q.w2 << ")";
  return os.str();
}

}  // namespace

double log_det_ratio(const HermitianBlock<double>& gT, const HermitianBlock<double>& hess_phi) {
  const HermitianBlock<double> m = gT + hess_phi;
  const double lo = min_eigenvalue(m);
  if (!(lo > 0.0)) {
    throw ConeExitError("deformed transverse metric left the positive cone (min eigenvalue " +
                            std::to_string(lo) + ")",
                        lo);
  }
  return std::log(m.det()) - std::log(gT.det());
}

double flow_residual(const BasicFunction& phi_t, const BasicFunction& dphi_dt, const ComplexPoint& q,
                     const SasakiPotential& K) {
  const auto gT = K.derivatives(q).hess;
  const auto d = phi_t.derivatives(q);
  double ratio = 0.0;
  try {
    ratio = log_det_ratio(gT, d.hess);
  } catch (const ConeExitError& e) {
    throw ConeExitError(std::string(e.what()) + " at " + describe(q), e.min_eigenvalue());
  }
  return std::abs(dphi_dt(q) - ratio - kFlowConstant * d.value);
}

double flow_residual(const FlowState& s, double t, const ComplexPoint& q, const SasakiPotential& K) {
  try {
    return flow_residual(s.at(t), s.rate(t), q, K);
  } catch (const ConeExitError& e) {
    throw ConeExitError(std::string(e.what()) + ", t = " + std::to_string(t), e.min_eigenvalue());
  }
}

const std::vector<ComplexPoint>& pluriharmonic_probe() {
  static const std::vector<ComplexPoint> probe = [] {
    std::vector<ComplexPoint> out;
    for (const auto& p : sample_points(ChartDomain{0.2, true}, 32, 0x5eed)) out.push_back(to_complex(p));
    return out;
  }();
  return probe;
}

double max_pluriharmonic_residual(const BasicFunction& phi, const std::vector<ComplexPoint>& points) {
  const auto& pts = points.empty() ? pluriharmonic_probe() : points;
  double m = 0.0;
  for (const auto& q : pts) m = std::max(m, pluriharmonic_residual(phi, q));
  return m;
}

BasicFunction analytic_solution(const BasicFunction& phi0, double t) {
  const double r = max_pluriharmonic_residual(phi0);
  if (!(r < kPluriharmonicTolerance)) {
    throw NotPluriharmonicError("analytic solution needs a pluriharmonic initial potential ('" + phi0.name() +
                                "' has |phi_{j lbar}| up to " + std::to_string(r) + ")");
  }
  return phi0.scaled(std::expm1(kFlowConstant * t));
}

FlowState analytic_family(const BasicFunction& phi0) {
  // validates phi0 once up front
  (void)analytic_solution(phi0, 0.0);
  FlowState s;
  s.phi0 = phi0;
  s.rule = "(exp(6t) - 1) phi0";
  s.at = [phi0](double t) { return phi0.scaled(std::expm1(kFlowConstant * t)); };
  s.rate = [phi0](double t) { return phi0.scaled(kFlowConstant * std::exp(kFlowConstant * t)); };
  return s;
}

FlowState exponential_family(const BasicFunction& phi0) {
  FlowState s;
  s.phi0 = phi0;
  s.rule = "exp(6t) phi0";
  s.at = [phi0](double t) { return phi0.scaled(std::exp(kFlowConstant * t)); };
  s.rate = [phi0](double t) { return phi0.scaled(kFlowConstant * std::exp(kFlowConstant * t)); };
  return s;
}

std::string to_string(Integrator i) { return i == Integrator::Euler ? "euler" : "rk4"; }

Integrator parse_integrator(const std::string& s) {
  if (s == "euler" || s == "Euler") return Integrator::Euler;
  if (s == "rk4" || s == "RK4") return Integrator::RK4;
  throw std::invalid_argument("unknown integrator '" + s + "' (expected euler or rk4)");
}

namespace {

// Axis a of the grid: 0, 2 carry l_j = log tan(theta_j / 2), 1, 3 carry phi_j.
struct GridLayout {
  std::array<int, 4> n;
  std::array<std::size_t, 4> stride;
  std::array<double, 4> h;
  std::array<double, 4> lo;

  explicit GridLayout(const TensorGrid& g) : n(g.counts) {
    stride[3] = 1;
    for (int a = 2; a >= 0; --a) stride[a] = stride[a + 1] * static_cast<std::size_t>(n[a + 1]);
    for (int a = 0; a < 4; ++a) {
      const bool theta = (a % 2 == 0);
      lo[a] = theta ? std::log(std::tan(0.5 * g.theta_min)) : g.phi_min;
      const double hi = theta ? std::log(std::tan(0.5 * g.theta_max)) : g.phi_max;
      h[a] = (hi - lo[a]) / (n[a] - 1);
    }
  }
  std::size_t size() const { return stride[0] * static_cast<std::size_t>(n[0]); }
  int index(std::size_t flat, int a) const { return static_cast<int>((flat / stride[a]) % n[a]); }
  double coord(std::size_t flat, int a) const { return lo[a] + h[a] * index(flat, a); }
  std::complex<double> w(std::size_t flat, int j) const {
    return std::polar(std::exp(coord(flat, 2 * j)), coord(flat, 2 * j + 1));
  }
};

void check_grid(const TensorGrid& g) {
  for (int c : g.counts) {
    if (c < 6) throw std::invalid_argument("tensor grid needs at least 6 points per axis");
  }
  if (!(g.theta_min > 0.0 && g.theta_max < kPi && g.theta_min < g.theta_max)) {
    throw std::invalid_argument("tensor grid theta range must lie inside (0, pi)");
  }
  if (!(g.phi_min >= 0.0 && g.phi_max < 2.0 * kPi && g.phi_min < g.phi_max)) {
    throw std::invalid_argument("tensor grid phi range must lie inside [0, 2 pi)");
  }
}

}  // namespace

std::vector<ComplexPoint> tensor_grid_points(const TensorGrid& g) {
  check_grid(g);
  const GridLayout L(g);
  std::vector<ComplexPoint> pts(L.size());
  for (std::size_t k = 0; k < pts.size(); ++k) pts[k] = {L.w(k, 0), L.w(k, 1), 0.0};
  return pts;
}

namespace {

// Fourth-order stencils: weights over f[start .. start + len) scaled by 1 / (12 h^k).
struct Stencil {
  int start;
  std::array<double, 6> w;
};

// Near the left edge, i in {0, 1}; the right edge mirrors these.
constexpr std::array<double, 6> kD1Edge0{-25, 48, -36, 16, -3, 0};
constexpr std::array<double, 6> kD1Edge1{-3, -10, 18, -6, 1, 0};
constexpr std::array<double, 6> kD1Center{1, -8, 0, 8, -1, 0};
constexpr std::array<double, 6> kD2Edge0{45, -154, 214, -156, 61, -10};
constexpr std::array<double, 6> kD2Edge1{10, -15, -4, 14, -6, 1};
constexpr std::array<double, 6> kD2Center{-1, 16, -30, 16, -1, 0};

Stencil stencil(int order, int i, int n) {
  const bool d1 = (order == 1);
  if (i >= 2 && i <= n - 3) return {i - 2, d1 ? kD1Center : kD2Center};
  const bool left = (i < 2);
  const int e = left ? i : n - 1 - i;
  std::array<double, 6> w = d1 ? (e == 0 ? kD1Edge0 : kD1Edge1) : (e == 0 ? kD2Edge0 : kD2Edge1);
  if (left) return {0, w};
  // mirror: reverse the weights, odd derivatives change sign
  std::array<double, 6> r{};
  const int len = d1 ? 5 : 6;
  for (int m = 0; m < len; ++m) r[m] = (d1 ? -1.0 : 1.0) * w[len - 1 - m];
  return {n - len, r};
}

std::vector<double> diff(const GridLayout& L, const std::vector<double>& f, int a, int order) {
  std::vector<double> out(f.size());
  const std::size_t s = L.stride[a];
  const int n = L.n[a];
  const double scale = 12.0 * (order == 1 ? L.h[a] : L.h[a] * L.h[a]);
  for (std::size_t k = 0; k < f.size(); ++k) {
    const int i = L.index(k, a);
    const Stencil st = stencil(order, i, n);
    const std::size_t base = k - static_cast<std::size_t>(i) * s;
    double acc = 0.0;
    for (int m = 0; m < 6; ++m) {
      if (st.w[m] != 0.0) acc += st.w[m] * f[base + static_cast<std::size_t>(st.start + m) * s];
    }
    out[k] = acc / scale;
  }
  return out;
}

std::vector<double> diff1(const GridLayout& L, const std::vector<double>& f, int a) { return diff(L, f, a, 1); }
std::vector<double> diff2(const GridLayout& L, const std::vector<double>& f, int a) { return diff(L, f, a, 2); }

}  // namespace

std::vector<HermitianBlock<double>> grid_complex_hessian(const TensorGrid& g, const std::vector<double>& values) {
  check_grid(g);
  const GridLayout L(g);
  if (values.size() != L.size()) throw std::invalid_argument("grid values have the wrong size");

  std::array<std::vector<double>, 4> d1;
  for (int a = 0; a < 4; ++a) d1[a] = diff1(L, values, a);
  // d2[a][b] for a <= b
  std::array<std::array<std::vector<double>, 4>, 4> d2;
  for (int a = 0; a < 4; ++a) {
    d2[a][a] = diff2(L, values, a);
    for (int b = a + 1; b < 4; ++b) d2[a][b] = diff1(L, d1[b], a);
  }
  auto second = [&](int a, int b, std::size_t k) { return a <= b ? d2[a][b][k] : d2[b][a][k]; };

  std::vector<HermitianBlock<double>> out(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    const std::array<std::complex<double>, 2> w{L.w(k, 0), L.w(k, 1)};
    // axes 2j, 2j + 1 are l_j and a_j = phi_j
    auto entry = [&](int j, int l) {
      const double ll = second(2 * j, 2 * l, k);
      const double aa = second(2 * j + 1, 2 * l + 1, k);
      const double la = second(2 * j, 2 * l + 1, k);
      const double al = second(2 * j + 1, 2 * l, k);
      return std::complex<double>(ll + aa, la - al) / (4.0 * w[j] * std::conj(w[l]));
    };
    out[k].h11 = entry(0, 0).real();
    out[k].h22 = entry(1, 1).real();
    const auto e12 = entry(0, 1);
    out[k].h12 = Cplx<double>(e12.real(), e12.imag());
  }
  return out;
}

namespace {

using State = std::vector<double>;
using Rhs = std::function<State(double, const State&)>;

State axpy(const State& y, double a, const State& k) {
  State out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + a * k[i];
  return out;
}

State step(Integrator method, const Rhs& f, double t, const State& y, double h) {
  if (method == Integrator::Euler) return axpy(y, h, f(t, y));
  const State k1 = f(t, y);
  const State k2 = f(t + 0.5 * h, axpy(y, 0.5 * h, k1));
  const State k3 = f(t + 0.5 * h, axpy(y, 0.5 * h, k2));
  const State k4 = f(t + h, axpy(y, h, k3));
  State out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

}  // namespace

FlowSeries integrate_flow(const BasicFunction& phi0, const FlowConfig& cfg, const SasakiPotential& K) {
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("flow: dt must be positive");
  if (!(cfg.t_end >= 0.0)) throw std::invalid_argument("flow: t_end must be non-negative");
  if (cfg.record_every < 1) throw std::invalid_argument("flow: record_every must be at least 1");

  FlowSeries out;
  const bool pluriharmonic =
      max_pluriharmonic_residual(phi0, cfg.grid.empty() ? std::vector<ComplexPoint>{} : cfg.grid) <
      kPluriharmonicTolerance;
  out.pointwise = pluriharmonic && !cfg.force_general;

  Rhs rhs;
  if (out.pointwise) {
    if (cfg.grid.empty()) throw std::invalid_argument("flow: empty point grid");
    out.points = cfg.grid;
    rhs = [](double, const State& y) {
      State d(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) d[i] = kFlowConstant * y[i];
      return d;
    };
  } else {
    check_grid(cfg.tensor_grid);
    out.points = tensor_grid_points(cfg.tensor_grid);
    std::vector<HermitianBlock<double>> gT;
    gT.reserve(out.points.size());
    for (const auto& q : out.points) gT.push_back(K.derivatives(q).hess);
    const TensorGrid grid = cfg.tensor_grid;
    const std::vector<ComplexPoint> pts = out.points;
    rhs = [grid, gT, pts](double t, const State& y) {
      const auto hess = grid_complex_hessian(grid, y);
      State d(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) {
        try {
          d[i] = log_det_ratio(gT[i], hess[i]) + kFlowConstant * y[i];
        } catch (const ConeExitError& e) {
          throw ConeExitError(std::string(e.what()) + " at " + describe(pts[i]) + ", t = " + std::to_string(t),
                              e.min_eigenvalue());
        }
      }
      return d;
    };
  }

  State y(out.points.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = phi0(out.points[i]);
  out.times.push_back(0.0);
  out.values.push_back(y);

  const int order = cfg.integrator == Integrator::Euler ? 1 : 4;
  const double richardson = std::pow(2.0, order) - 1.0;
  const bool check = std::isfinite(cfg.local_error_tol);
  const auto n_steps = static_cast<long>(std::ceil(cfg.t_end / cfg.dt - 1e-9));

  double t = 0.0;
  for (long n = 1; n <= n_steps; ++n) {
    const double h = std::min(cfg.dt, cfg.t_end - t);
    State next = step(cfg.integrator, rhs, t, y, h);
    if (check) {
      const State half = step(cfg.integrator, rhs, t + 0.5 * h, step(cfg.integrator, rhs, t, y, 0.5 * h), 0.5 * h);
      for (std::size_t i = 0; i < y.size(); ++i) {
        const double est = std::abs(next[i] - half[i]) / richardson;
        out.max_error_estimate = std::max(out.max_error_estimate, est);
        if (est > cfg.local_error_tol * std::max(1.0, std::abs(half[i]))) {
          throw StepRejectedError("flow step rejected at t = " + std::to_string(t) + ": local error estimate " +
                                  std::to_string(est) + " exceeds " + std::to_string(cfg.local_error_tol) +
                                  " at " + describe(out.points[i]));
        }
      }
    }
    y = std::move(next);
    t = (n == n_steps) ? cfg.t_end : n * cfg.dt;
    if (n % cfg.record_every == 0 || n == n_steps) {
      out.times.push_back(t);
      out.values.push_back(y);
    }
  }
  return out;
}

double metric_flow_residual(const SasakiPotential& K, const FlowState& s, double t, const ComplexPoint& q) {
  const BasicFunction phi_t = s.at(t);
  const BasicFunction rate = s.rate(t);
  const auto gT0 = K.derivatives(q).hess;
  const auto gT = gT0 + phi_t.derivatives(q).hess;
  const double lo = min_eigenvalue(gT);
  if (!(lo > 0.0)) {
    throw ConeExitError("deformed transverse metric left the positive cone at " + describe(q) +
                            ", t = " + std::to_string(t),
                        lo);
  }
  const auto ric = kahler_ricci_block(
      [&K, &phi_t](const TransversePoint<J4>& p) { return K.derivatives(p).hess + phi_t.derivatives(p).hess; },
      transverse_point(q));
  const Eigen::Matrix2cd r = to_matrix(rate.derivatives(q).hess) + to_matrix(ric) - kFlowConstant * to_matrix(gT);
  return r.cwiseAbs().maxCoeff();
}

}  // namespace t11
