#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "t11/sasaki.hpp"

using namespace t11;
using t11::testing::flat_metric;
using t11::testing::round_sphere;

namespace {

std::vector<Vec5> sample_coords(std::size_t n, std::uint64_t seed) {
  std::vector<Vec5> xs;
  for (const auto& p : sample_points(ChartDomain{}, n, seed)) xs.push_back(p.coords());
  return xs;
}

// Hermitian block h_{jj} = (1/3) / (1 + |w_j|^2)^2, written directly.
TransverseMetric fubini_study_block() {
  return TransverseMetric("fs", TransverseMetric::Function([]<class S>(const TransversePoint<S>& p) {
                            HermitianBlock<S> h;
                            const S a = 1.0 + p.modulus_squared(0);
                            const S b = 1.0 + p.modulus_squared(1);
                            h.h11 = (1.0 / 3.0) / (a * a);
                            h.h22 = (1.0 / 3.0) / (b * b);
                            h.h12 = Cplx<S>(S(0.0), S(0.0));
                            return h;
                          }));
}

}  // namespace

TEST_CASE("flat space has vanishing connection and curvature") {
  const auto g = flat_metric<5>();
  for (const auto& x : sample_coords(1000, 21)) {
    const auto r = curvature(g, x);
    for (const auto& G : r.christoffel) CHECK(G.cwiseAbs().maxCoeff() == 0.0);
    CHECK(r.ricci.cwiseAbs().maxCoeff() < 1e-10);
    CHECK(r.scalar == 0.0);
  }
  std::vector<Vec5> xs = sample_coords(10, 1);
  CHECK(einstein_residual<5>(g, 0.0, xs).max == 0.0);
}

TEST_CASE("unit round 2-sphere") {
  const auto g = round_sphere();
  for (double theta : {0.3, 1.0, 2.2}) {
    const Eigen::Vector2d x(theta, 0.4);
    const auto r = curvature(g, x);
    // Gamma^theta_{phi phi} = -sin cos, Gamma^phi_{theta phi} = cot
    CHECK(std::abs(r.christoffel[0](1, 1) + std::sin(theta) * std::cos(theta)) < 1e-12);
    CHECK(std::abs(r.christoffel[1](0, 1) - std::cos(theta) / std::sin(theta)) < 1e-12);
    CHECK((r.ricci - r.metric).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(std::abs(r.scalar - 2.0) < 1e-10);
  }
}

TEST_CASE("standard T11 metric is Einstein with constant 4") {
  const auto g = standard_metric();
  const auto xs = sample_coords(500, 4);
  const auto stats = einstein_residual<5>(g, 4.0, xs);
  CHECK(stats.count == 500);
  CHECK(stats.max < 1e-7);

  for (std::size_t i = 0; i < 100; ++i) {
    const auto r = curvature(g, xs[i]);
    CHECK(std::abs(r.scalar - 20.0) < 1e-9);
    CHECK((r.ricci - r.ricci.transpose()).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(std::abs((r.inverse_metric.cwiseProduct(r.ricci)).sum() - r.scalar) < 1e-9);
    for (const auto& G : r.christoffel) CHECK((G - G.transpose()).cwiseAbs().maxCoeff() < 1e-14);

    // with lambda = 3 the residual is |Ric - 3g| = |g|
    CHECK(std::abs(r.einstein_residual(3.0) - r.metric.cwiseAbs().maxCoeff()) < 1e-7);
  }
}

TEST_CASE("wrong Einstein constant is detected") {
  const auto g = standard_metric();
  const RealPoint p(0.1, 1.2, 0.3, 2.0, 4.0);
  const auto stats = einstein_residual(g, 3.0, std::span<const RealPoint>(&p, 1));
  CHECK(stats.max > 0.1);
}

TEST_CASE("jets agree with fourth-order central differences") {
  DerivativeOptions fd{DerivativeMode::FiniteDifference, 1e-3};
  for (const auto& field : {standard_metric(), assemble_metric(eta_from_potential(standard_potential()),
                                                               transverse_metric(standard_potential()))}) {
    for (const auto& x : sample_coords(20, 8)) {
      const auto a = metric_jet_exact(field, x);
      const auto b = metric_jet_fd(field, x, fd.fd_step);
      for (int k = 0; k < 5; ++k) {
        CHECK((a.dg[k] - b.dg[k]).cwiseAbs().maxCoeff() < 1e-5);
        for (int l = 0; l < 5; ++l) {
          CHECK((a.ddg[k][l] - b.ddg[k][l]).cwiseAbs().maxCoeff() < 1e-5);
          CHECK((a.ddg[k][l] - a.ddg[l][k]).cwiseAbs().maxCoeff() < 1e-12);
        }
      }
      CHECK((curvature(a).ricci - curvature(b).ricci).cwiseAbs().maxCoeff() < 1e-5);
    }
  }
}

TEST_CASE("value-only fields fall back to finite differences") {
  const auto g0 = standard_metric();
  const auto g = MetricField<5>::value_only("values", [g0](const Vec5& x) { return g0(x); });
  CHECK_FALSE(g.has_jets());
  const Vec5 x = RealPoint(0, 1.0, 2.0, 1.5, 0.5).coords();
  CHECK(curvature(g, x).einstein_residual(4.0) < 1e-4);
}

TEST_CASE("degenerate metrics raise") {
  Mat5 g = Mat5::Identity();
  g(2, 2) = 0.0;
  CHECK_THROWS_AS(require_positive_definite<5>(g), SingularMetricError);
  g(2, 2) = 1e-13;
  CHECK_THROWS_AS(require_positive_definite<5>(g), SingularMetricError);
  g(2, 2) = -1.0;
  CHECK_THROWS_AS(require_positive_definite<5>(g), SingularMetricError);
}

TEST_CASE("transverse Ricci form of the K-Hessian block is 6 h") {
  const auto h = fubini_study_block();
  for (const auto& p : sample_points(ChartDomain{}, 100, 6)) {
    const auto q = to_complex(p);
    const Eigen::Matrix2cd ric = kahler_ricci_2d(h, q);
    const Eigen::Matrix2cd hm = to_matrix(h(q));
    CHECK((ric - 6.0 * hm).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(ric(0, 1)) < 1e-15);

    // oracle: numerical d dbar of -log det h
    auto logdet = [](std::complex<long double> a, std::complex<long double> b) {
      const long double x = 1 + std::norm(a), y = 1 + std::norm(b);
      return -std::log((1.0L / 9.0L) / (x * x * y * y));
    };
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < 2; ++l)
        CHECK(std::abs(t11::testing::fd_mixed(logdet, q.w1, q.w2, j, l) - ric(j, l)) < 1e-6);
  }
}

TEST_CASE("constant transverse metric has zero Ricci form") {
  const TransverseMetric h("const", TransverseMetric::Function([]<class S>(const TransversePoint<S>&) {
                             HermitianBlock<S> b;
                             b.h11 = S(2.0);
                             b.h22 = S(1.0);
                             b.h12 = Cplx<S>(S(0.3), S(-0.2));
                             return b;
                           }));
  const auto ric = kahler_ricci_2d(h, {{0.4, 0.2}, {-1.0, 0.7}, 0.0});
  CHECK(ric.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("residual statistics fold in index order") {
  const std::vector<double> v{0.5, 2.0, 1.0, 2.0};
  const auto s = ResidualStats::from(v);
  CHECK(s.max == 2.0);
  CHECK(s.argmax == 1);
  CHECK(s.mean == doctest::Approx(1.375));
}
