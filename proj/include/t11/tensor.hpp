#pragma once

// Levi-Civita curvature of a metric given by its components in a coordinate
// chart. Metric derivatives come from second-order jets threaded through the
// component evaluator, or from fourth-order central differences for
// cross-validation.

#include <array>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "t11/coords.hpp"
#include "t11/errors.hpp"
#include "t11/jet.hpp"
#include "t11/parallel.hpp"
#include "t11/polymorphic.hpp"
#include "t11/transverse.hpp"

namespace t11 {

template <class S, int N>
using VecN = Eigen::Matrix<S, N, 1>;
template <class S, int N>
using MatN = Eigen::Matrix<S, N, N>;

template <int N>
struct MetricSig {
  template <class S>
  using type = MatN<S, N>(const VecN<S, N>&);
};

/// Symmetric component field g_ij(x) on an N-dimensional chart.
template <int N>
class MetricField {
 public:
  using Jet = t11::Jet<double, N>;
  using Function = PolyFunction<MetricSig<N>::template type, double, Jet>;
  using ValueOnly = std::function<MatN<double, N>(const VecN<double, N>&)>;

  MetricField() = default;
  MetricField(std::string name, Function f) : name_(std::move(name)), f_(std::move(f)) {}

  /// Field without jet support; curvature falls back to finite differences.
  static MetricField value_only(std::string name, ValueOnly f) {
    MetricField m;
    m.name_ = std::move(name);
    m.value_only_ = std::move(f);
    return m;
  }

  const std::string& name() const { return name_; }
  bool has_jets() const { return static_cast<bool>(f_); }

  MatN<double, N> operator()(const VecN<double, N>& x) const {
    return has_jets() ? f_.template at<double>()(x) : value_only_(x);
  }
  MatN<double, N> operator()(const RealPoint& p) const
    requires(N == 5)
  {
    return (*this)(p.coords());
  }
  MatN<Jet, N> operator()(const VecN<Jet, N>& x) const {
    if (!has_jets()) throw std::logic_error("metric field '" + name_ + "' has no jet evaluator");
    return f_.template at<Jet>()(x);
  }

 private:
  std::string name_;
  Function f_;
  ValueOnly value_only_;
};

enum class DerivativeMode { Jets, FiniteDifference };

struct DerivativeOptions {
  DerivativeMode mode = DerivativeMode::Jets;
  double fd_step = 1e-3;
};

/// Metric components with first and second coordinate derivatives:
/// dg[k](i, j) = d_k g_ij, ddg[k][l](i, j) = d_k d_l g_ij.
template <int N>
struct MetricJet {
  MatN<double, N> g;
  std::array<MatN<double, N>, N> dg;
  std::array<std::array<MatN<double, N>, N>, N> ddg;
};

template <int N>
MetricJet<N> metric_jet_exact(const MetricField<N>& field, const VecN<double, N>& x) {
  using J = Jet<double, N>;
  VecN<J, N> xj;
  for (int i = 0; i < N; ++i) xj[i] = J::variable(x[i], i);
  const MatN<J, N> gj = field(xj);
  MetricJet<N> out;
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      out.g(i, j) = gj(i, j).v;
      for (int k = 0; k < N; ++k) {
        out.dg[k](i, j) = gj(i, j).d[k];
        for (int l = 0; l < N; ++l) out.ddg[k][l](i, j) = gj(i, j).hess(k, l);
      }
    }
  }
  return out;
}

template <int N>
MetricJet<N> metric_jet_fd(const MetricField<N>& field, const VecN<double, N>& x, double h) {
  // Fourth-order central stencils.
  constexpr std::array<int, 4> off{-2, -1, 1, 2};
  constexpr std::array<double, 4> w1{1.0, -8.0, 8.0, -1.0};           // / 12h
  constexpr std::array<double, 5> w2{-1.0, 16.0, -30.0, 16.0, -1.0};  // / 12h^2
  auto at = [&](int a, double sa, int b, double sb) {
    VecN<double, N> y = x;
    if (a >= 0) y[a] += sa;
    if (b >= 0) y[b] += sb;
    return field(y);
  };
  MetricJet<N> out;
  out.g = field(x);
  for (int k = 0; k < N; ++k) {
    MatN<double, N> d = MatN<double, N>::Zero();
    for (int s = 0; s < 4; ++s) d += w1[s] * at(k, off[s] * h, -1, 0.0);
    out.dg[k] = d / (12.0 * h);

    MatN<double, N> dd = w2[2] * out.g;
    for (int s = 0; s < 4; ++s) dd += w2[s < 2 ? s : s + 1] * at(k, off[s] * h, -1, 0.0);
    out.ddg[k][k] = dd / (12.0 * h * h);
  }
  for (int k = 0; k < N; ++k) {
    for (int l = k + 1; l < N; ++l) {
      MatN<double, N> dd = MatN<double, N>::Zero();
      for (int s = 0; s < 4; ++s) {
        for (int t = 0; t < 4; ++t) dd += w1[s] * w1[t] * at(k, off[s] * h, l, off[t] * h);
      }
      out.ddg[k][l] = out.ddg[l][k] = dd / (144.0 * h * h);
    }
  }
  return out;
}

template <int N>
MetricJet<N> metric_jet(const MetricField<N>& field, const VecN<double, N>& x,
                        const DerivativeOptions& opt = {}) {
  if (opt.mode == DerivativeMode::Jets && field.has_jets()) return metric_jet_exact(field, x);
  return metric_jet_fd(field, x, opt.fd_step);
}

/// Reciprocal condition number below which the metric counts as singular.
inline constexpr double kMinReciprocalCondition = 1e-10;

/// Throws SingularMetricError unless every leading principal minor is
/// positive and the reciprocal condition number exceeds the threshold.
template <int N>
void require_positive_definite(const MatN<double, N>& g) {
  for (int k = 1; k <= N; ++k) {
    const double minor = g.topLeftCorner(k, k).determinant();
    if (!(minor > 0.0)) {
      throw SingularMetricError("metric is not positive-definite (leading minor " +
                                std::to_string(k) + " = " + std::to_string(minor) + ")");
    }
  }
  Eigen::SelfAdjointEigenSolver<MatN<double, N>> es(g, Eigen::EigenvaluesOnly);
  const double rcond = es.eigenvalues().minCoeff() / es.eigenvalues().maxCoeff();
  if (!(rcond > kMinReciprocalCondition)) {
    std::ostringstream os;
    os << "metric is ill-conditioned (rcond " << rcond << ")";
    throw SingularMetricError(os.str());
  }
}

template <int N>
struct CurvatureReport {
  MatN<double, N> metric;
  MatN<double, N> inverse_metric;
  std::array<MatN<double, N>, N> christoffel;  // christoffel[k](i, j) = Gamma^k_ij
  MatN<double, N> ricci;
  double scalar = 0.0;

  /// max_ij |R_ij - lambda g_ij|
  double einstein_residual(double lambda) const {
    return (ricci - lambda * metric).cwiseAbs().maxCoeff();
  }
};

template <int N>
CurvatureReport<N> curvature(const MetricJet<N>& mj) {
  using M = MatN<double, N>;
  require_positive_definite<N>(mj.g);
  CurvatureReport<N> r;
  r.metric = mj.g;
  r.inverse_metric = mj.g.inverse();
  const M& gi = r.inverse_metric;

  // lowered[l](i, j) = d_i g_jl + d_j g_il - d_l g_ij
  std::array<M, N> lowered;
  for (int l = 0; l < N; ++l) {
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) {
        lowered[l](i, j) = mj.dg[i](j, l) + mj.dg[j](i, l) - mj.dg[l](i, j);
      }
    }
  }
  for (int k = 0; k < N; ++k) {
    r.christoffel[k].setZero();
    for (int l = 0; l < N; ++l) r.christoffel[k] += 0.5 * gi(k, l) * lowered[l];
  }

  // dgamma[m][k](i, j) = d_m Gamma^k_ij
  std::array<std::array<M, N>, N> dgamma;
  for (int m = 0; m < N; ++m) {
    const M dgi = -gi * mj.dg[m] * gi;
    for (int k = 0; k < N; ++k) dgamma[m][k].setZero();
    for (int l = 0; l < N; ++l) {
      M dlowered;
      for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
          dlowered(i, j) = mj.ddg[m][i](j, l) + mj.ddg[m][j](i, l) - mj.ddg[m][l](i, j);
        }
      }
      for (int k = 0; k < N; ++k) {
        dgamma[m][k] += 0.5 * (dgi(k, l) * lowered[l] + gi(k, l) * dlowered);
      }
    }
  }

  // R_ij = d_k G^k_ij - d_i G^k_kj + G^k_kl G^l_ij - G^k_il G^l_kj
  const auto& G = r.christoffel;
  r.ricci.setZero();
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      double s = 0.0;
      for (int k = 0; k < N; ++k) {
        s += dgamma[k][k](i, j) - dgamma[i][k](k, j);
        for (int l = 0; l < N; ++l) s += G[k](k, l) * G[l](i, j) - G[k](i, l) * G[l](k, j);
      }
      r.ricci(i, j) = s;
    }
  }
  r.scalar = (gi.cwiseProduct(r.ricci)).sum();
  return r;
}

template <int N>
CurvatureReport<N> curvature(const MetricField<N>& g, const VecN<double, N>& x,
                             const DerivativeOptions& opt = {}) {
  return curvature(metric_jet(g, x, opt));
}

template <int N>
std::array<MatN<double, N>, N> christoffel(const MetricField<N>& g, const VecN<double, N>& x,
                                           const DerivativeOptions& opt = {}) {
  return curvature(g, x, opt).christoffel;
}

template <int N>
MatN<double, N> ricci(const MetricField<N>& g, const VecN<double, N>& x,
                      const DerivativeOptions& opt = {}) {
  return curvature(g, x, opt).ricci;
}

template <int N>
double scalar_curvature(const MetricField<N>& g, const VecN<double, N>& x,
                        const DerivativeOptions& opt = {}) {
  return curvature(g, x, opt).scalar;
}

struct ResidualStats {
  double max = 0.0;
  double mean = 0.0;
  std::size_t count = 0;
  std::size_t argmax = 0;

  /// Folds per-point values in index order.
  static ResidualStats from(std::span<const double> values);
};

inline ResidualStats ResidualStats::from(std::span<const double> values) {
  ResidualStats s;
  s.count = values.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    sum += values[i];
    if (values[i] > s.max || i == 0) {
      s.max = values[i];
      s.argmax = i;
    }
  }
  s.mean = values.empty() ? 0.0 : sum / static_cast<double>(values.size());
  return s;
}

/// max and mean over points of max_ij |Ric - lambda g|.
template <int N>
ResidualStats einstein_residual(const MetricField<N>& g, double lambda,
                                std::span<const VecN<double, N>> points,
                                const DerivativeOptions& opt = {}) {
  const auto per_point = parallel_map<double>(
      points.size(), [&](std::size_t i) { return curvature(g, points[i], opt).einstein_residual(lambda); });
  return ResidualStats::from(per_point);
}

ResidualStats einstein_residual(const MetricField<5>& g, double lambda,
                                std::span<const RealPoint> points, const DerivativeOptions& opt = {});

/// Transverse Ricci form Ric^T_{j lbar} = -d_j d_lbar log det h at q.
Eigen::Matrix2cd kahler_ricci_2d(const TransverseMetric& h, const ComplexPoint& q);

/// Same, from the Hermitian block given as a function of the lifted point.
template <class HFn>
HermitianBlock<double> kahler_ricci_block(HFn&& h_of_lift, const TransversePoint<double>& p) {
  using std::log;
  const HermitianBlock<J4> h = h_of_lift(lift(p));
  const J4 det = h.det();
  if (!(det.v > 0.0) || !(h.h11.v > 0.0)) {
    throw SingularMetricError("transverse metric is not positive-definite");
  }
  const auto d = complex_derivatives(log(det));
  HermitianBlock<double> ric;
  ric.h11 = -d.hess.h11;
  ric.h22 = -d.hess.h22;
  ric.h12 = d.hess.h12 * -1.0;
  return ric;
}

}  // namespace t11
