#include "t11/coords.hpp"

#include <cmath>
#include <random>
#include <string>

#include "t11/errors.hpp"

namespace t11 {

double canonical_angle(double a, double period) {
  double r = std::fmod(a, period);
  if (r < 0.0) r += period;
  // fmod of a tiny negative number can round up to the period itself
  if (r >= period) r = 0.0;
  return r;
}

RealPoint::RealPoint(double psi, double theta1, double phi1, double theta2, double phi2) {
  for (double theta : {theta1, theta2}) {
    if (!(theta > 0.0 && theta < kPi)) {
      throw DomainError("theta must lie strictly inside (0, pi), got " + std::to_string(theta));
    }
  }
  x_ << canonical_angle(psi, 4.0 * kPi), theta1, canonical_angle(phi1, 2.0 * kPi), theta2,
      canonical_angle(phi2, 2.0 * kPi);
}

RealPoint::RealPoint(const Vec5& x) : RealPoint(x[0], x[1], x[2], x[3], x[4]) {}

bool ChartDomain::contains(const RealPoint& p) const {
  for (int j = 0; j < 2; ++j) {
    if (p.theta(j) < eps_theta || p.theta(j) > kPi - eps_theta) return false;
  }
  return true;
}

ComplexPoint to_complex(const RealPoint& p, double pole_tolerance) {
  ComplexPoint q;
  q.psi = p.psi();
  for (int j = 0; j < 2; ++j) {
    const double theta = p.theta(j);
    if (theta < pole_tolerance || theta > kPi - pole_tolerance) {
      throw DomainError("point too close to a pole for the complex chart");
    }
    const auto w = std::polar(std::tan(0.5 * theta), p.phi(j));
    (j == 0 ? q.w1 : q.w2) = w;
  }
  return q;
}

RealPoint to_real(const ComplexPoint& q) {
  std::array<double, 2> theta{};
  std::array<double, 2> phi{};
  for (int j = 0; j < 2; ++j) {
    const double r = std::abs(q.w(j));
    if (r == 0.0) throw DomainError("w = 0 is outside the transverse chart");
    theta[j] = 2.0 * std::atan(r);
    phi[j] = canonical_angle(std::arg(q.w(j)), 2.0 * kPi);
  }
  return RealPoint(q.psi, theta[0], phi[0], theta[1], phi[1]);
}

ComplexFrame complex_frame_in_real(const RealPoint& p) {
  using namespace std::complex_literals;
  ComplexFrame f;
  f.vectors.setZero();
  for (int j = 0; j < 2; ++j) {
    const double theta = p.theta(j);
    const double sin_theta = std::sin(theta);
    if (sin_theta < kPoleTolerance) throw DomainError("Wirtinger frame undefined at a pole");
    const double c2 = std::pow(std::cos(0.5 * theta), 2);
    const auto e = std::polar(1.0, -p.phi(j));
    f.d_w[j] = {-1i * c2 * e, 1i, 1.0 / sin_theta};
    f.d_wbar[j] = {-1i * c2 * std::conj(e), 1i, -1.0 / sin_theta};
    f.vectors(theta_index(j), j) = f.d_w[j].theta_component();
    f.vectors(phi_index(j), j) = f.d_w[j].phi_component();
    f.vectors(theta_index(j), 2 + j) = f.d_wbar[j].theta_component();
    f.vectors(phi_index(j), 2 + j) = f.d_wbar[j].phi_component();
  }
  return f;
}

Eigen::Matrix<std::complex<double>, 4, 5> complex_coframe_in_real(const RealPoint& p) {
  Eigen::Matrix<std::complex<double>, 4, 5> m;
  m.setZero();
  const auto dw = coframe<double>(p.coords());
  for (int j = 0; j < 2; ++j) {
    for (int a = 0; a < 5; ++a) {
      m(j, a) = to_std(dw[j][a]);
      m(2 + j, a) = std::conj(m(j, a));
    }
  }
  return m;
}

std::vector<RealPoint> sample_points(const ChartDomain& dom, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> psi(0.0, 4.0 * kPi);
  std::uniform_real_distribution<double> theta(dom.eps_theta, kPi - dom.eps_theta);
  std::uniform_real_distribution<double> phi(0.0, 2.0 * kPi);
  std::vector<RealPoint> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = psi(rng);
    const double t1 = theta(rng);
    const double p1 = phi(rng);
    const double t2 = theta(rng);
    const double p2 = phi(rng);
    out.emplace_back(s, t1, p1, t2, p2);
  }
  return out;
}

TransversePoint<double> transverse_point(const ComplexPoint& q) {
  TransversePoint<double> p;
  for (int j = 0; j < 2; ++j) {
    const auto& w = q.w(j);
    if (w == 0.0) throw DomainError("w = 0 is outside the transverse chart");
    p.re[j] = w.real();
    p.im[j] = w.imag();
    p.log_modulus[j] = std::log(std::abs(w));
    p.arg[j] = canonical_angle(std::arg(w), 2.0 * kPi);
  }
  return p;
}

}  // namespace t11
