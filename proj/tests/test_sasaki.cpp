#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "t11/sasaki.hpp"

using namespace t11;

namespace {

std::vector<RealPoint> points(std::size_t n, std::uint64_t seed) {
  return sample_points(ChartDomain{}, n, seed);
}

HolomorphicFunction linear_w1(double a) {
  return HolomorphicFunction([a]<class S>(const TransversePoint<S>& p) {
    return Cplx<S>(a * p.re[0], a * p.im[0]);
  });
}

}  // namespace

TEST_CASE("standard potential Hessian") {
  const auto K = standard_potential();
  // (1/3) cos^4(pi/4) = 1/12
  const auto d = K.derivatives(to_complex(RealPoint(0, kPi / 2, 0.3, kPi / 2, 1.0)));
  CHECK(std::abs(d.hess.h11 - 1.0L / 12.0L) < 1e-15);
  CHECK(std::abs(d.hess.h22 - 1.0L / 12.0L) < 1e-15);

  auto k = [](std::complex<long double> a, std::complex<long double> b) {
    return (std::log(1 + std::norm(a)) + std::log(1 + std::norm(b))) / 3 -
           (std::log(std::norm(a)) + std::log(std::norm(b))) / 6;
  };
  for (const auto& p : points(100, 1)) {
    const auto q = to_complex(p);
    const auto dd = K.derivatives(q);
    CHECK(std::abs(to_std(dd.hess.h12)) == 0.0);
    const long double c = std::cos(0.5L * p.theta(0));
    // log|w|^2 has large higher derivatives near w = 0
    const long double step = 1e-4L * std::min(std::abs(q.w1), std::abs(q.w2));
    CHECK(std::abs(dd.hess.h11 - c * c * c * c / 3) < 1e-14);
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < 2; ++l)
        CHECK(std::abs(t11::testing::fd_mixed(k, q.w1, q.w2, j, l, step) - to_std(dd.hess.entry(j, l))) < 1e-5);
  }
}

TEST_CASE("potential has no psi dependence") {
  const auto K = standard_potential();
  const auto q = to_complex(RealPoint(0.0, 1.0, 2.0, 0.5, 3.0));
  auto q2 = q;
  q2.psi = 3.7;
  CHECK(K(q) == K(q2));
}

TEST_CASE("contact form from the potential matches the real display") {
  const auto eta = eta_from_potential(standard_potential());
  for (const auto& p : points(200, 2)) {
    const Vec5 e = eta(p);
    CHECK(std::abs(e[kPsi] - 1.0 / 3.0) < 1e-15);
    CHECK(std::abs(e[kTheta1]) < 1e-14);
    CHECK(std::abs(e[kTheta2]) < 1e-14);
    CHECK(std::abs(e[kPhi1] - std::cos(p.theta(0)) / 3.0) < 1e-13);
    CHECK(std::abs(e[kPhi2] - std::cos(p.theta(1)) / 3.0) < 1e-13);
  }
  const Vec5 e = eta(RealPoint(0, kPi / 3, 0, 1, 0));
  CHECK(std::abs(e[kPhi1] - 1.0 / 6.0) < 1e-15);
}

TEST_CASE("closed-form d eta agrees with the jet derivative") {
  const auto eta = eta_from_potential(standard_potential());
  CHECK(eta.has_exterior());
  for (const auto& p : points(200, 3)) {
    const Mat5 a = eta.exterior<double>(p.coords());
    const Mat5 b = eta.exterior_by_jets(p.coords());
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-9);
    // d eta = -(1/3) sin theta_j dtheta_j ^ dphi_j
    CHECK(std::abs(a(kTheta1, kPhi1) + std::sin(p.theta(0)) / 3.0) < 1e-13);
  }
}

TEST_CASE("Reeb field") {
  const auto s = standard_structure();
  for (const auto& p : points(100, 4)) {
    CHECK(std::abs(s.eta(p).dot(s.reeb) - 1.0) < 1e-15);
    CHECK((s.eta.exterior_derivative(p.coords()) * s.reeb).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(std::abs(s.reeb.dot(s.metric(p) * s.reeb) - 1.0) < 1e-15);
  }
}

TEST_CASE("almost-contact identities") {
  const auto s = standard_structure();
  for (const auto& p : points(100, 5)) {
    const auto r = contact_residuals(s, p.coords());
    CHECK(r.eta_reeb < 1e-9);
    CHECK(r.phi_reeb < 1e-9);
    CHECK(r.eta_phi < 1e-9);
    CHECK(r.phi_squared < 1e-9);
    CHECK(r.compatibility < 1e-9);
    CHECK(r.reeb_dual < 1e-9);
  }
}

TEST_CASE("Phi has eigenvalues 0 and +-i twice") {
  const auto K = standard_potential();
  for (const auto& p : points(20, 6)) {
    Eigen::EigenSolver<Mat5> es(phi_tensor(K, p));
    int zero = 0, plus = 0, minus = 0;
    for (const auto& ev : es.eigenvalues()) {
      if (std::abs(ev) < 1e-7) ++zero;
      if (std::abs(ev - std::complex<double>(0, 1)) < 1e-7) ++plus;
      if (std::abs(ev - std::complex<double>(0, -1)) < 1e-7) ++minus;
    }
    CHECK(zero == 1);
    CHECK(plus == 2);
    CHECK(minus == 2);
  }
}

TEST_CASE("g = (1/2) d eta(., Phi .) + eta (x) eta") {
  const auto s = standard_structure();
  for (const auto& p : points(50, 7)) {
    const Vec5 e = s.eta(p);
    const Mat5 deta = s.eta.exterior_derivative(p.coords());
    CHECK((0.5 * deta * s.phi(p) + e * e.transpose() - s.metric(p)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("transverse metric components") {
  const auto h = transverse_metric(standard_potential());
  const auto b = h(to_complex(RealPoint(0, kPi / 2, 0, kPi / 2, 0)));
  CHECK(std::abs(b.h11 - 1.0 / 12.0) < 1e-15);
  CHECK(std::abs(b.h22 - 1.0 / 12.0) < 1e-15);
  for (const auto& p : points(100, 8)) {
    const Mat5 m = hermitian_to_real(h(to_complex(p)), p.coords());
    for (int j = 0; j < 2; ++j) {
      const double s = std::sin(p.theta(j));
      CHECK(std::abs(m(theta_index(j), theta_index(j)) - 1.0 / 6.0) < 1e-13);
      CHECK(std::abs(m(phi_index(j), phi_index(j)) - s * s / 6.0) < 1e-13);
      CHECK(std::abs(m(theta_index(j), phi_index(j))) < 1e-13);
    }
  }
}

TEST_CASE("assembled metric reproduces the standard metric") {
  const auto K = standard_potential();
  const auto g = assemble_metric(eta_from_potential(K), transverse_metric(K));
  const auto g0 = standard_metric();
  for (const auto& p : points(1000, 9)) {
    const Mat5 a = g(p.coords());
    CHECK((a - g0(p.coords())).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(a(kPsi, kPsi) == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
    CHECK(std::abs(a(kTheta1, kTheta1) - 1.0 / 6.0) < 1e-13);
    CHECK(std::abs(a(kPhi1, kPhi2) - std::cos(p.theta(0)) * std::cos(p.theta(1)) / 9.0) < 1e-13);
  }
}

TEST_CASE("metric components do not depend on psi") {
  const auto K = standard_potential();
  const auto g = assemble_metric(eta_from_potential(K), transverse_metric(K));
  for (const auto& p : points(50, 10)) {
    const auto mj = metric_jet_exact(g, p.coords());
    CHECK(mj.dg[kPsi].cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("Boyer decomposition on the standard structure") {
  const auto K = standard_potential();
  const auto s = standard_structure();
  const auto h = transverse_metric(K);
  for (const auto& p : points(100, 11)) {
    const auto r = boyer_residuals(s.metric, s.eta, s.reeb, h, p);
    CHECK(r.ric_xi_xi < 1e-7);
    CHECK(r.ric_x_xi < 1e-7);
    CHECK(r.transverse < 1e-6);
  }
}

TEST_CASE("gauge transformations leave the line element unchanged") {
  const auto K = standard_potential();
  const auto g = assemble_metric(eta_from_potential(K), transverse_metric(K));

  SUBCASE("f = 0") {
    const auto t = gauge_transform(K, HolomorphicFunction([]<class S>(const TransversePoint<S>&) {
                                     return Cplx<S>(S(0.0), S(0.0));
                                   }));
    for (const auto& p : points(20, 12)) CHECK(std::abs(t.potential(to_complex(p)) - K(to_complex(p))) == 0.0);
  }
  SUBCASE("real constant") {
    const auto t = gauge_transform(K, HolomorphicFunction([]<class S>(const TransversePoint<S>&) {
                                     return Cplx<S>(S(2.5), S(0.0));
                                   }));
    const auto g2 = assemble_metric(eta_from_potential(t.potential), transverse_metric(t.potential));
    for (const auto& p : points(20, 13)) {
      CHECK(t.psi_shift(p.coords()) == 0.0);
      CHECK((g2(p.coords()) - g(p.coords())).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
  SUBCASE("f = a w1") {
    const auto t = gauge_transform(K, linear_w1(0.7));
    const auto g2 = assemble_metric(eta_from_potential(t.potential), transverse_metric(t.potential));
    const auto pulled = t.pullback(g2);
    double naive = 0.0;
    for (const auto& p : points(100, 14)) {
      CHECK((pulled(p.coords()) - g(p.coords())).cwiseAbs().maxCoeff() < 1e-9);
      naive = std::max(naive, (g2(p.coords()) - g(p.coords())).cwiseAbs().maxCoeff());
    }
    // without the compensating psi shift the components differ
    CHECK(naive > 1e-3);
  }
}
