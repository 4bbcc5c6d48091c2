#pragma once

// Charts on T^{1,1}: real angular coordinates (psi, theta1, phi1, theta2, phi2),
// transverse complex coordinates w^j = tan(theta_j / 2) exp(i phi_j), the
// Wirtinger frame expressed in the real coordinate basis, and seeded sampling.

#include <array>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include <Eigen/Core>

#include "t11/jet.hpp"

namespace t11 {

inline constexpr double kPi = std::numbers::pi;
inline constexpr int kDim = 5;

// Index of each chart coordinate in a coordinate vector.
enum Coord : int { kPsi = 0, kTheta1 = 1, kPhi1 = 2, kTheta2 = 3, kPhi2 = 4 };

constexpr int theta_index(int j) { return 1 + 2 * j; }
constexpr int phi_index(int j) { return 2 + 2 * j; }

template <class S>
using Vec5T = Eigen::Matrix<S, 5, 1>;
template <class S>
using Mat5T = Eigen::Matrix<S, 5, 5>;
using Vec5 = Vec5T<double>;
using Mat5 = Mat5T<double>;
using CVec5 = Eigen::Matrix<std::complex<double>, 5, 1>;

/// Point of the chart with theta_j strictly inside (0, pi) and periodic
/// coordinates reduced to [0, 4 pi) and [0, 2 pi).
class RealPoint {
 public:
  RealPoint(double psi, double theta1, double phi1, double theta2, double phi2);
  explicit RealPoint(const Vec5& x);

  double psi() const { return x_[kPsi]; }
  double theta(int j) const { return x_[theta_index(j)]; }
  double phi(int j) const { return x_[phi_index(j)]; }
  const Vec5& coords() const { return x_; }

  friend bool operator==(const RealPoint& a, const RealPoint& b) { return a.x_ == b.x_; }

 private:
  Vec5 x_;
};

struct ComplexPoint {
  std::complex<double> w1;
  std::complex<double> w2;
  double psi = 0.0;

  const std::complex<double>& w(int j) const { return j == 0 ? w1 : w2; }
};

struct ChartDomain {
  double eps_theta = 0.1;
  // The family potentials contain log(w w-bar); sampling never reaches w = 0
  // while eps_theta > 0, and contains() rejects it when this flag is set.
  bool exclude_w_zero = true;

  bool contains(const RealPoint& p) const;
};

/// Poles closer than this are rejected by the complex conversion.
inline constexpr double kPoleTolerance = 1e-10;

double canonical_angle(double a, double period);

ComplexPoint to_complex(const RealPoint& p, double pole_tolerance = kPoleTolerance);
RealPoint to_real(const ComplexPoint& q);

/// One Wirtinger derivative written as in the coordinate formula
///   d/dw = prefactor * (i d/dtheta + phi_bracket * d/dphi),
/// with prefactor = -i cos^2(theta/2) e^{-/+ i phi} and phi_bracket = +/- 1/sin(theta).
struct WirtingerRow {
  std::complex<double> prefactor;
  std::complex<double> theta_bracket;  // always i
  std::complex<double> phi_bracket;

  std::complex<double> theta_component() const { return prefactor * theta_bracket; }
  std::complex<double> phi_component() const { return prefactor * phi_bracket; }
};

struct ComplexFrame {
  std::array<WirtingerRow, 2> d_w;
  std::array<WirtingerRow, 2> d_wbar;
  // Columns d/dw^1, d/dw^2, d/dwbar^1, d/dwbar^2 in the real coordinate basis.
  Eigen::Matrix<std::complex<double>, 5, 4> vectors;
};

ComplexFrame complex_frame_in_real(const RealPoint& p);

/// Rows dw^1, dw^2, dwbar^1, dwbar^2 as covectors in the real coordinate basis.
Eigen::Matrix<std::complex<double>, 4, 5> complex_coframe_in_real(const RealPoint& p);

std::vector<RealPoint> sample_points(const ChartDomain& dom, std::size_t n, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Scalar-generic pieces used by the curvature and deformation code.

/// Minimal complex number over an arbitrary real scalar (std::complex is only
/// specified for floating-point types).
template <class S>
struct Cplx {
  S re{};
  S im{};

  Cplx() : re(0.0), im(0.0) {}
  Cplx(S r, S i) : re(std::move(r)), im(std::move(i)) {}

  friend Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
  friend Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
  friend Cplx operator*(const Cplx& a, const Cplx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Cplx operator*(const Cplx& a, double s) { return {a.re * s, a.im * s}; }
  friend Cplx operator*(double s, const Cplx& a) { return {a.re * s, a.im * s}; }
  Cplx& operator+=(const Cplx& b) { return *this = *this + b; }
};

template <class S>
Cplx<S> conj(const Cplx<S>& z) {
  return {z.re, -z.im};
}
template <class S>
Cplx<S> scale(const Cplx<S>& z, const S& s) {
  return {z.re * s, z.im * s};
}
template <class S>
Cplx<S> times_i(const Cplx<S>& z) {
  return {-z.im, z.re};
}
inline std::complex<double> to_std(const Cplx<double>& z) { return {z.re, z.im}; }

/// Transverse point carrying the Cartesian, log-modulus and argument
/// representations of (w^1, w^2), all consistent as functions of whichever
/// variables the scalar type differentiates. The argument is never
/// re-wrapped, so functions using it stay smooth in the angle phi_j.
template <class S>
struct TransversePoint {
  std::array<S, 2> re;
  std::array<S, 2> im;
  std::array<S, 2> log_modulus;
  std::array<S, 2> arg;

  S modulus_squared(int j) const { return re[j] * re[j] + im[j] * im[j]; }
};

TransversePoint<double> transverse_point(const ComplexPoint& q);

template <class S>
TransversePoint<S> transverse_point(const Vec5T<S>& x) {
  using std::cos;
  using std::log;
  using std::sin;
  using std::tan;
  TransversePoint<S> p;
  for (int j = 0; j < 2; ++j) {
    const S& theta = x[theta_index(j)];
    const S& phi = x[phi_index(j)];
    const S r = tan(0.5 * theta);
    p.re[j] = r * cos(phi);
    p.im[j] = r * sin(phi);
    p.log_modulus[j] = log(r);
    p.arg[j] = phi;
  }
  return p;
}

/// dw^j as complex covectors over the chart coordinates.
template <class S>
std::array<std::array<Cplx<S>, 5>, 2> coframe(const Vec5T<S>& x) {
  using std::cos;
  using std::sin;
  using std::tan;
  std::array<std::array<Cplx<S>, 5>, 2> dw;
  for (int j = 0; j < 2; ++j) {
    const S& theta = x[theta_index(j)];
    const S& phi = x[phi_index(j)];
    const S c = cos(0.5 * theta);
    const S half_sec2 = 0.5 / (c * c);
    const S t = tan(0.5 * theta);
    const S cp = cos(phi);
    const S sp = sin(phi);
    dw[j][theta_index(j)] = Cplx<S>(half_sec2 * cp, half_sec2 * sp);
    dw[j][phi_index(j)] = Cplx<S>(-(t * sp), t * cp);
  }
  return dw;
}

/// d/dw^j as complex vectors over the chart coordinates (psi component zero).
template <class S>
std::array<std::array<Cplx<S>, 5>, 2> wirtinger_frame(const Vec5T<S>& x) {
  using std::cos;
  using std::sin;
  std::array<std::array<Cplx<S>, 5>, 2> e;
  for (int j = 0; j < 2; ++j) {
    const S& theta = x[theta_index(j)];
    const S& phi = x[phi_index(j)];
    const S c = cos(0.5 * theta);
    const S c2 = c * c;
    const S cp = cos(phi);
    const S sp = sin(phi);
    const S k = c2 / sin(theta);
    e[j][theta_index(j)] = Cplx<S>(c2 * cp, -(c2 * sp));
    e[j][phi_index(j)] = Cplx<S>(-(k * sp), -(k * cp));
  }
  return e;
}

}  // namespace t11
