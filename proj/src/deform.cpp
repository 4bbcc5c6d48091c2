#include "t11/deform.hpp"

#include <cmath>
#include <stdexcept>

#include "t11/detail/forms.hpp"
#include "t11/errors.hpp"

namespace t11 {

using detail::zero_mat;
using detail::zero_vec;

std::string to_string(Family f) {
  switch (f) {
    case Family::None: return "none";
    case Family::LogModulus: return "log_modulus";
    case Family::LogSquared: return "log_squared";
    case Family::Custom: return "custom";
  }
  return "custom";
}

Family parse_family(const std::string& s) {
  if (s == "none" || s == "None") return Family::None;
  if (s == "log_modulus" || s == "LogModulus") return Family::LogModulus;
  if (s == "log_squared" || s == "LogSquared") return Family::LogSquared;
  throw std::invalid_argument("unknown family '" + s + "' (expected none, log_modulus or log_squared)");
}

BasicFunction BasicFunction::scaled(double s) const {
  const TransverseFunction f = function();
  auto g = [f, s]<class S>(const TransversePoint<S>& p) -> S { return f.at<S>()(p) * s; };
  return BasicFunction(name() + "*" + std::to_string(s), TransverseFunction(g), family_,
                       {c_[0] * s, c_[1] * s});
}

BasicFunction zero_function() {
  return BasicFunction("zero", TransverseFunction([]<class S>(const TransversePoint<S>&) { return S(0.0); }),
                       Family::None);
}

BasicFunction log_modulus(double c1, double c2) {
  auto f = [c1, c2]<class S>(const TransversePoint<S>& p) -> S {
    // (1/6) c log|w|^2 = (1/3) c log|w|
    return (c1 / 3.0) * p.log_modulus[0] + (c2 / 3.0) * p.log_modulus[1];
  };
  return BasicFunction("log_modulus", TransverseFunction(f), Family::LogModulus, {c1, c2});
}

BasicFunction log_squared(double c1, double c2) {
  auto f = [c1, c2]<class S>(const TransversePoint<S>& p) -> S {
    const std::array<double, 2> c{c1, c2};
    S v(0.0);
    for (int j = 0; j < 2; ++j) {
      v = v + (0.5 * c[j]) * (p.log_modulus[j] * p.log_modulus[j] - p.arg[j] * p.arg[j]);
    }
    return v;
  };
  return BasicFunction("log_squared", TransverseFunction(f), Family::LogSquared, {c1, c2});
}

BasicFunction modulus_squared(int j) {
  if (j != 0 && j != 1) throw std::invalid_argument("modulus_squared: index must be 0 or 1");
  return BasicFunction("modulus_squared_" + std::to_string(j + 1),
                       TransverseFunction([j]<class S>(const TransversePoint<S>& p) { return p.modulus_squared(j); }));
}

BasicFunction family_function(Family f, double c1, double c2) {
  switch (f) {
    case Family::None: return zero_function();
    case Family::LogModulus: return log_modulus(c1, c2);
    case Family::LogSquared: return log_squared(c1, c2);
    case Family::Custom: break;
  }
  throw std::invalid_argument("family_function: custom family has no built-in function");
}

double pluriharmonic_residual(const BasicFunction& phi, const ComplexPoint& q) {
  const auto h = phi.derivatives(q).hess;
  return std::max({std::abs(h.h11), std::abs(h.h22), std::hypot(h.h12.re, h.h12.im)});
}

double pluriharmonic_residual(const BasicFunction& phi, const RealPoint& p) {
  const auto h = phi.derivatives(transverse_point<double>(p.coords())).hess;
  return std::max({std::abs(h.h11), std::abs(h.h22), std::hypot(h.h12.re, h.h12.im)});
}

template <class S>
Vec5T<S> basic_dc(const BasicFunction& phi, const Vec5T<S>& x) {
  return detail::imaginary_one_form(phi.derivatives(transverse_point(x)).grad, coframe(x));
}

template Vec5T<double> basic_dc<double>(const BasicFunction&, const Vec5T<double>&);
template Vec5T<J5> basic_dc<J5>(const BasicFunction&, const Vec5T<J5>&);

Vec5 basic_dc_real(const BasicFunction& phi, const Vec5& x) {
  Vec5T<J5> xj;
  for (int i = 0; i < 5; ++i) xj[i] = J5::variable(x[i], i);
  const J5 f = phi(transverse_point(xj));
  Vec5 v = Vec5::Zero();
  for (int j = 0; j < 2; ++j) {
    const double s = std::sin(x[theta_index(j)]);
    v[phi_index(j)] = 0.5 * s * f.d[theta_index(j)];
    v[theta_index(j)] = -0.5 * f.d[phi_index(j)] / s;
  }
  return v;
}

ContactForm deform_eta(const ContactForm& eta, const BasicFunction& phi) {
  auto coefficients = [eta, phi]<class S>(const Vec5T<S>& x) -> Vec5T<S> {
    return eta(x) + basic_dc(phi, x);
  };
  ContactForm::Exterior exterior;
  if (eta.has_exterior()) {
    exterior = ContactForm::Exterior([eta, phi]<class S>(const Vec5T<S>& x) -> Mat5T<S> {
      const auto h = phi.derivatives(transverse_point(x)).hess;
      return eta.exterior(x) + detail::imaginary_two_form(h, coframe(x));
    });
  }
  return ContactForm(eta.name() + "+dc[" + phi.name() + "]", ContactForm::Coefficients(coefficients),
                     std::move(exterior));
}

DeformedFrame deform_frame(const SasakiPotential& K, const BasicFunction& phi, const RealPoint& p) {
  using namespace std::complex_literals;
  const Vec5& x = p.coords();
  const auto tp = transverse_point<double>(x);
  const auto dk = K.derivatives(tp);
  const auto dphi = phi.derivatives(tp);
  const auto e = wirtinger_frame<double>(x);
  DeformedFrame f;
  for (int j = 0; j < 2; ++j) {
    for (int a = 0; a < 5; ++a) f.X(a, j) = to_std(e[j][a]);
    // d/dx = 3 d/dpsi
    f.X(kPsi, j) = -1i * to_std(dk.grad[j]) * 3.0;
    f.X_tilde.col(j) = f.X.col(j);
    f.X_tilde(kPsi, j) += 0.5i * to_std(dphi.grad[j]) * 3.0;
  }
  return f;
}

DeformedFrame deform_frame(const SasakiPotential& K, const BasicFunction& phi, const ComplexPoint& q) {
  return deform_frame(K, phi, to_real(q));
}

EndomorphismField deform_phi(const SasakiStructure& s, const BasicFunction& phi) {
  const EndomorphismField base = s.phi;
  const Vec5 xi = s.reeb;
  auto f = [base, xi, phi]<class S>(const Vec5T<S>& x) -> Mat5T<S> {
    Mat5T<S> m = base(x);
    const Vec5T<S> dc = basic_dc(phi, x);
    for (int b = 0; b < 5; ++b) {
      S row(0.0);
      for (int c = 0; c < 5; ++c) row += dc[c] * m(c, b);
      for (int a = 0; a < 5; ++a) {
        if (xi[a] != 0.0) m(a, b) -= xi[a] * row;
      }
    }
    return m;
  };
  return EndomorphismField(base.name() + "~[" + phi.name() + "]", EndomorphismField::Function(f));
}

namespace {

template <class S>
Mat5T<S> raw_deformed_metric(const ContactForm& eta, const EndomorphismField& phi, const Vec5T<S>& x) {
  const Mat5T<S> d = eta.exterior(x);
  const Mat5T<S> p = phi(x);
  const Vec5T<S> e = eta(x);
  Mat5T<S> m = zero_mat<S>();
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 5; ++b) {
      S v = e[a] * e[b];
      for (int c = 0; c < 5; ++c) v += 0.5 * (d(a, c) * p(c, b));
      m(a, b) = v;
    }
  }
  return m;
}

}  // namespace

MetricField<5> assemble_deformed_metric(const ContactForm& eta_tilde, const EndomorphismField& phi_tilde) {
  if (!eta_tilde.has_exterior()) {
    throw std::invalid_argument("assemble_deformed_metric: contact form needs a closed-form exterior derivative");
  }
  auto g = [eta_tilde, phi_tilde]<class S>(const Vec5T<S>& x) -> Mat5T<S> {
    const Mat5T<S> m = raw_deformed_metric(eta_tilde, phi_tilde, x);
    Mat5T<S> sym;
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b) sym(a, b) = 0.5 * (m(a, b) + m(b, a));
    return sym;
  };
  return MetricField<5>("g~[" + eta_tilde.name() + "]", MetricField<5>::Function(g));
}

double deformed_metric_asymmetry(const ContactForm& eta_tilde, const EndomorphismField& phi_tilde,
                                 const Vec5& x) {
  const Mat5 m = raw_deformed_metric<double>(eta_tilde, phi_tilde, x);
  return (m - m.transpose()).cwiseAbs().maxCoeff();
}

DeformedStructure deform(const SasakiPotential& K, const BasicFunction& phi) {
  const SasakiStructure base{eta_from_potential(K), reeb_field(), phi_field(K), {}};
  DeformedStructure d;
  d.potential = K;
  d.phi = phi;
  d.eta_tilde = deform_eta(base.eta, phi);
  d.reeb = base.reeb;
  d.phi_tilde = deform_phi(base, phi);
  d.metric_tilde = assemble_deformed_metric(d.eta_tilde, d.phi_tilde);
  return d;
}

namespace {

// (1/6) sum (dtheta_j^2 + sin^2 theta_j dphi_j^2) + e (x) e
template <class S>
Mat5T<S> round_blocks_plus(const Vec5T<S>& x, const Vec5T<S>& e) {
  using std::sin;
  Mat5T<S> m = zero_mat<S>();
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) m(a, b) = e[a] * e[b];
  for (int j = 0; j < 2; ++j) {
    const S s = sin(x[theta_index(j)]);
    m(theta_index(j), theta_index(j)) += S(1.0 / 6.0);
    m(phi_index(j), phi_index(j)) += (1.0 / 6.0) * (s * s);
  }
  return m;
}

}  // namespace

MetricField<5> family_metric(Family f, double c1, double c2) {
  const std::array<double, 2> c{c1, c2};
  switch (f) {
    case Family::None:
      return standard_metric();
    case Family::LogModulus:
      return MetricField<5>("family[log_modulus]", MetricField<5>::Function([c]<class S>(const Vec5T<S>& x) {
                              using std::cos;
                              Vec5T<S> e = zero_vec<S>();
                              e[kPsi] = S(1.0 / 3.0);
                              for (int j = 0; j < 2; ++j)
                                e[phi_index(j)] = (1.0 / 3.0) * (cos(x[theta_index(j)]) + 0.5 * c[j]);
                              return round_blocks_plus(x, e);
                            }));
    case Family::LogSquared:
      return MetricField<5>("family[log_squared]", MetricField<5>::Function([c]<class S>(const Vec5T<S>& x) {
                              using std::cos;
                              using std::log;
                              using std::sin;
                              using std::tan;
                              Vec5T<S> e = zero_vec<S>();
                              e[kPsi] = S(1.0 / 3.0);
                              for (int j = 0; j < 2; ++j) {
                                const S& theta = x[theta_index(j)];
                                e[phi_index(j)] = (1.0 / 3.0) * cos(theta) + (0.5 * c[j]) * log(tan(0.5 * theta));
                                e[theta_index(j)] = (0.5 * c[j]) * x[phi_index(j)] / sin(theta);
                              }
                              return round_blocks_plus(x, e);
                            }));
    case Family::Custom:
      break;
  }
  throw std::invalid_argument("family_metric: no closed form for a custom family");
}

MetricField<5> general_deformed_metric(const BasicFunction& phi) {
  return MetricField<5>::value_only("general[" + phi.name() + "]", [phi](const Vec5& x) {
    Vec5 e = basic_dc_real(phi, x);
    e[kPsi] += 1.0 / 3.0;
    for (int j = 0; j < 2; ++j) e[phi_index(j)] += std::cos(x[theta_index(j)]) / 3.0;
    return round_blocks_plus<double>(x, e);
  });
}

SasakiStructure d_homothety(const SasakiStructure& s, double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError("D-homothety needs a positive constant, got " + std::to_string(a));
  }
  const ContactForm eta = s.eta;
  ContactForm::Exterior exterior;
  if (eta.has_exterior()) {
    exterior = ContactForm::Exterior(
        [eta, a]<class S>(const Vec5T<S>& x) -> Mat5T<S> { return Mat5T<S>(a * eta.exterior(x)); });
  }
  ContactForm eta_bar(eta.name() + "*a",
                      ContactForm::Coefficients([eta, a]<class S>(const Vec5T<S>& x) -> Vec5T<S> {
                        return Vec5T<S>(a * eta(x));
                      }),
                      std::move(exterior));
  const MetricField<5> g = s.metric;
  MetricField<5> g_bar;
  auto gb = [g, eta, a]<class S>(const Vec5T<S>& x) -> Mat5T<S> {
    const Vec5T<S> e = eta(x);
    const Mat5T<S> m = g(x);
    Mat5T<S> out;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) out(i, j) = a * m(i, j) + (a * (a - 1.0)) * (e[i] * e[j]);
    return out;
  };
  if (g.has_jets()) {
    g_bar = MetricField<5>(g.name() + "*a", MetricField<5>::Function(gb));
  } else {
    g_bar = MetricField<5>::value_only(g.name() + "*a", [gb](const Vec5& x) { return gb(x); });
  }
  return {std::move(eta_bar), s.reeb / a, s.phi, std::move(g_bar)};
}

Eigen::Matrix2cd frame_block(const Mat5& g, const Eigen::Matrix<std::complex<double>, 5, 2>& X) {
  const Eigen::Matrix<std::complex<double>, 5, 5> gc = g.cast<std::complex<double>>();
  return X.transpose() * gc * X.conjugate();
}

double transverse_j_mismatch(const SasakiStructure& s, const DeformedStructure& d, const RealPoint& p) {
  const auto cf = complex_coframe_in_real(p).topRows<2>();
  const auto frame = d.frame(p);
  const Eigen::Matrix<std::complex<double>, 5, 5> phi = s.phi(p).cast<std::complex<double>>();
  const Eigen::Matrix<std::complex<double>, 5, 5> phi_t = d.phi_tilde(p).cast<std::complex<double>>();
  const Eigen::Matrix2cd a = cf * phi * frame.X;
  const Eigen::Matrix2cd b = cf * phi_t * frame.X_tilde;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace t11
