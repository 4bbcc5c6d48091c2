#include "t11/sasaki.hpp"

#include <cmath>

#include "t11/detail/forms.hpp"

namespace t11 {

using detail::im_product;
using detail::hermitian_form;
using detail::zero_mat;
using detail::zero_vec;

Mat5 ContactForm::exterior_by_jets(const Vec5& x) const {
  Vec5T<J5> xj;
  for (int i = 0; i < 5; ++i) xj[i] = J5::variable(x[i], i);
  const Vec5T<J5> e = (*this)(xj);
  Mat5 d;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) d(a, b) = e[b].d[a] - e[a].d[b];
  return d;
}

SasakiPotential standard_potential() {
  return SasakiPotential(
      "standard", TransverseFunction([]<class S>(const TransversePoint<S>& p) -> S {
        using std::log;
        S k(0.0);
        for (int j = 0; j < 2; ++j) {
          // log|w|^2 = 2 log|w|
          k = k + (1.0 / 3.0) * log(1.0 + p.modulus_squared(j)) - (1.0 / 3.0) * p.log_modulus[j];
        }
        return k;
      }));
}

ContactForm eta_from_potential(const SasakiPotential& K) {
  auto coefficients = [K]<class S>(const Vec5T<S>& x) -> Vec5T<S> {
    const auto d = K.derivatives(transverse_point(x));
    const auto dw = coframe(x);
    Vec5T<S> eta = -2.0 * detail::imaginary_one_form(d.grad, dw);
    eta[kPsi] = S(1.0 / 3.0);
    return eta;
  };
  auto exterior = [K]<class S>(const Vec5T<S>& x) -> Mat5T<S> {
    const auto d = K.derivatives(transverse_point(x));
    const auto dw = coframe(x);
    return Mat5T<S>(-2.0 * detail::imaginary_two_form(d.hess, dw));
  };
  return ContactForm("eta[" + K.name() + "]", ContactForm::Coefficients(coefficients),
                     ContactForm::Exterior(exterior));
}

Vec5 reeb_field() {
  Vec5 xi = Vec5::Zero();
  xi[kPsi] = 3.0;
  return xi;
}

EndomorphismField phi_field(const SasakiPotential& K) {
  auto phi = [K]<class S>(const Vec5T<S>& x) -> Mat5T<S> {
    const auto d = K.derivatives(transverse_point(x));
    const auto dw = coframe(x);
    const auto e = wirtinger_frame(x);
    Mat5T<S> m = zero_mat<S>();
    for (int j = 0; j < 2; ++j) {
      // X_j = d/dw^j - i K_{,j} d/dx with d/dx = 3 d/dpsi.
      std::array<Cplx<S>, 5> X = e[j];
      X[kPsi] = Cplx<S>(3.0 * d.grad[j].im, -3.0 * d.grad[j].re);
      for (int a = 0; a < 5; ++a) {
        for (int b = 1; b < 5; ++b) m(a, b) += 2.0 * im_product(X[a], dw[j][b]);
      }
    }
    return m;
  };
  return EndomorphismField("Phi[" + K.name() + "]", EndomorphismField::Function(phi));
}

Mat5 phi_tensor(const SasakiPotential& K, const RealPoint& p) { return phi_field(K)(p); }

TransverseMetric transverse_metric(const SasakiPotential& K) {
  return TransverseMetric(
      "gT[" + K.name() + "]",
      TransverseMetric::Function([K]<class S>(const TransversePoint<S>& p) -> HermitianBlock<S> {
        return K.derivatives(p).hess;
      }));
}

MetricField<5> assemble_metric(const ContactForm& eta, const TransverseMetric& h) {
  auto g = [eta, h]<class S>(const Vec5T<S>& x) -> Mat5T<S> {
    const Vec5T<S> e = eta(x);
    Mat5T<S> m = hermitian_form(h(transverse_point(x)), coframe(x));
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b) m(a, b) += e[a] * e[b];
    return m;
  };
  return MetricField<5>("assembled[" + eta.name() + ", " + h.name() + "]",
                        MetricField<5>::Function(g));
}

MetricField<5> standard_metric() {
  auto g = []<class S>(const Vec5T<S>& x) -> Mat5T<S> {
    using std::cos;
    using std::sin;
    Vec5T<S> e = zero_vec<S>();
    e[kPsi] = S(1.0);
    e[kPhi1] = cos(x[kTheta1]);
    e[kPhi2] = cos(x[kTheta2]);
    Mat5T<S> m = zero_mat<S>();
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b) m(a, b) = (1.0 / 9.0) * (e[a] * e[b]);
    for (int j = 0; j < 2; ++j) {
      const S s = sin(x[theta_index(j)]);
      m(theta_index(j), theta_index(j)) += S(1.0 / 6.0);
      m(phi_index(j), phi_index(j)) += (1.0 / 6.0) * (s * s);
    }
    return m;
  };
  return MetricField<5>("standard", MetricField<5>::Function(g));
}

SasakiStructure standard_structure() {
  const auto K = standard_potential();
  return {eta_from_potential(K), reeb_field(), phi_field(K), standard_metric()};
}

double GaugeTransform::psi_shift(const Vec5& x) const {
  return 6.0 * f.at<double>()(transverse_point(x)).im;
}

MetricField<5> GaugeTransform::pullback(const MetricField<5>& transformed) const {
  const auto fn = f;
  return MetricField<5>::value_only("pullback[" + transformed.name() + "]", [fn, transformed](const Vec5& x) {
    Vec5T<J5> xj;
    for (int i = 0; i < 5; ++i) xj[i] = J5::variable(x[i], i);
    const J5 shift = 6.0 * fn.at<J5>()(transverse_point(xj)).im;
    Mat5 J = Mat5::Identity();
    for (int b = 0; b < 5; ++b) J(kPsi, b) += shift.d[b];
    Vec5 y = x;
    y[kPsi] += shift.v;
    return Mat5(J.transpose() * transformed(y) * J);
  });
}

GaugeTransform gauge_transform(const SasakiPotential& K, HolomorphicFunction f, const std::string& label) {
  auto k2 = [K, f]<class S>(const TransversePoint<S>& p) -> S {
    return K(p) + 2.0 * f.at<S>()(p).re;
  };
  return {SasakiPotential(K.name() + "+" + label, TransverseFunction(k2)), std::move(f)};
}

ContactResiduals contact_residuals(const SasakiStructure& s, const Vec5& x) {
  const Vec5 eta = s.eta(x);
  const Mat5 phi = s.phi(x);
  const Mat5 g = s.metric(x);
  const Vec5& xi = s.reeb;
  ContactResiduals r;
  r.eta_reeb = std::abs(eta.dot(xi) - 1.0);
  r.phi_reeb = (phi * xi).cwiseAbs().maxCoeff();
  r.eta_phi = (eta.transpose() * phi).cwiseAbs().maxCoeff();
  r.phi_squared = (phi * phi + Mat5::Identity() - xi * eta.transpose()).cwiseAbs().maxCoeff();
  r.compatibility = (phi.transpose() * g * phi - g + eta * eta.transpose()).cwiseAbs().maxCoeff();
  r.reeb_dual = (s.eta.exterior_derivative(x).transpose() * xi).cwiseAbs().maxCoeff();
  return r;
}

Mat5 hermitian_to_real(const HermitianBlock<double>& H, const Vec5& x) {
  return hermitian_form(H, coframe(x));
}

BoyerResiduals boyer_residuals(const MetricField<5>& g, const ContactForm& eta, const Vec5& reeb,
                               const TransverseMetric& h, const RealPoint& p, const DerivativeOptions& opt) {
  const Vec5& x = p.coords();
  const auto rep = curvature(g, x, opt);
  const Mat5& ric = rep.ricci;
  const Vec5 e = eta(x);

  // Columns 1..4: d_a - eta_a xi, spanning Ker eta.
  Mat5 frame = Mat5::Identity() - reeb * e.transpose();
  const auto ric_t = kahler_ricci_block([&h](const TransversePoint<J4>& q) { return h(q); },
                                        transverse_point(x));
  const Mat5 target_t = hermitian_to_real(ric_t, x);

  BoyerResiduals r;
  r.ric_xi_xi = std::abs(reeb.dot(ric * reeb) - kEinsteinConstant);
  const Mat5 ric_frame = frame.transpose() * ric * frame;
  const Mat5 g_frame = frame.transpose() * rep.metric * frame;
  const Vec5 ric_xi = frame.transpose() * ric * reeb;
  for (int a = 1; a < 5; ++a) {
    r.ric_x_xi = std::max(r.ric_x_xi, std::abs(ric_xi[a]));
    for (int b = 1; b < 5; ++b) {
      const double expected = target_t(a, b) - 2.0 * g_frame(a, b);
      r.transverse = std::max(r.transverse, std::abs(ric_frame(a, b) - expected));
    }
  }
  return r;
}

}  // namespace t11
