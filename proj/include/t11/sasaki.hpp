#pragma once

// Sasaki geometry of T^{1,1} generated by a Sasaki potential K(w, wbar):
// contact form, Reeb field, the endomorphism Phi, transverse metric and the
// assembled metric g = eta (x) eta + 2 K_{j lbar} dw^j dwbar^l.

#include <string>

#include "t11/coords.hpp"
#include "t11/tensor.hpp"
#include "t11/transverse.hpp"

namespace t11 {

/// Complex dimension of the transverse space.
inline constexpr int kTransverseDim = 2;
/// Einstein constant 2n of a (2n+1)-dimensional Sasaki-Einstein metric.
inline constexpr double kEinsteinConstant = 2.0 * kTransverseDim;
/// Transverse Einstein constant 2n+2.
inline constexpr double kTransverseEinsteinConstant = 2.0 * kTransverseDim + 2.0;

class SasakiPotential : public TransverseScalar {
 public:
  using TransverseScalar::TransverseScalar;
};

template <class S>
using CovectorSig = Vec5T<S>(const Vec5T<S>&);
template <class S>
using MatrixSig = Mat5T<S>(const Vec5T<S>&);

/// A contact 1-form by its coefficients against (dpsi, dtheta1, dphi1, dtheta2,
/// dphi2). May carry a closed-form exterior derivative.
class ContactForm {
 public:
  using Coefficients = PolyFunction<CovectorSig, double, J5>;
  using Exterior = PolyFunction<MatrixSig, double, J5>;

  ContactForm() = default;
  ContactForm(std::string name, Coefficients c, Exterior d = {})
      : name_(std::move(name)), c_(std::move(c)), d_(std::move(d)) {}

  const std::string& name() const { return name_; }

  template <class S>
  Vec5T<S> operator()(const Vec5T<S>& x) const {
    return c_.at<S>()(x);
  }
  Vec5 operator()(const RealPoint& p) const { return (*this)(p.coords()); }

  bool has_exterior() const { return static_cast<bool>(d_); }

  /// Closed-form exterior derivative, (d eta)_ab = d_a eta_b - d_b eta_a.
  template <class S>
  Mat5T<S> exterior(const Vec5T<S>& x) const {
    if (!has_exterior()) throw std::logic_error("contact form '" + name_ + "' has no closed-form d");
    return d_.at<S>()(x);
  }

  /// Exterior derivative by differentiating the coefficients with jets.
  Mat5 exterior_by_jets(const Vec5& x) const;

  Mat5 exterior_derivative(const Vec5& x) const {
    return has_exterior() ? exterior<double>(x) : exterior_by_jets(x);
  }

  const Coefficients& coefficients() const { return c_; }
  const Exterior& exterior_function() const { return d_; }

 private:
  std::string name_;
  Coefficients c_;
  Exterior d_;
};

/// (1,1)-tensor field as a 5x5 matrix acting on coordinate vectors.
class EndomorphismField {
 public:
  using Function = PolyFunction<MatrixSig, double, J5>;

  EndomorphismField() = default;
  EndomorphismField(std::string name, Function f) : name_(std::move(name)), f_(std::move(f)) {}

  const std::string& name() const { return name_; }
  template <class S>
  Mat5T<S> operator()(const Vec5T<S>& x) const {
    return f_.at<S>()(x);
  }
  Mat5 operator()(const RealPoint& p) const { return (*this)(p.coords()); }

 private:
  std::string name_;
  Function f_;
};

struct SasakiStructure {
  ContactForm eta;
  Vec5 reeb;
  EndomorphismField phi;
  MetricField<5> metric;
};

/// K = (1/3) sum log(1 + |w^j|^2) - (1/6) sum log |w^j|^2.
SasakiPotential standard_potential();

/// eta = (1/3) dpsi + i K_{,j} dw^j - i K_{,jbar} dwbar^j, with the leafwise
/// coordinate x = psi / 3. Carries d eta = -2i K_{j kbar} dw^j ^ dwbar^k.
ContactForm eta_from_potential(const SasakiPotential& K);

/// xi = 3 d/dpsi, normalized so that eta(xi) = 1.
Vec5 reeb_field();

/// Phi = 2 Re[-i sum_j (d/dw^j - i K_{,j} d/dx) (x) dw^j] in the real basis.
EndomorphismField phi_field(const SasakiPotential& K);
Mat5 phi_tensor(const SasakiPotential& K, const RealPoint& p);

/// h_{j lbar} = K_{,j lbar}.
TransverseMetric transverse_metric(const SasakiPotential& K);

/// g = eta (x) eta + 2 Re(h_{j lbar} dw^j (x) dwbar^l).
MetricField<5> assemble_metric(const ContactForm& eta, const TransverseMetric& h);

/// Closed form (1/6) sum (dtheta_j^2 + sin^2 theta_j dphi_j^2)
///   + (1/9) (dpsi + cos theta_1 dphi_1 + cos theta_2 dphi_2)^2.
MetricField<5> standard_metric();

/// Standard structure: eta, Phi from the standard potential, closed-form metric.
SasakiStructure standard_structure();

/// K -> K + f + fbar for holomorphic f, with the compensating chart change
/// psi' = psi + 6 Im f (x' = x + i fbar - i f).
struct GaugeTransform {
  SasakiPotential potential;
  HolomorphicFunction f;

  double psi_shift(const Vec5& x) const;
  /// Metric on the original chart obtained by pulling back a metric given in
  /// the transformed chart (psi', w).
  MetricField<5> pullback(const MetricField<5>& transformed) const;
};

GaugeTransform gauge_transform(const SasakiPotential& K, HolomorphicFunction f,
                               const std::string& label = "gauge");

struct ContactResiduals {
  double eta_reeb = 0.0;       // |eta(xi) - 1|
  double phi_reeb = 0.0;       // |Phi xi|
  double eta_phi = 0.0;        // |eta o Phi|
  double phi_squared = 0.0;    // |Phi^2 + Id - xi (x) eta|
  double compatibility = 0.0;  // |g(Phi., Phi.) - g + eta (x) eta|
  double reeb_dual = 0.0;      // |d eta(xi, .)|
};

ContactResiduals contact_residuals(const SasakiStructure& s, const Vec5& x);

/// Residuals of Ric(xi, xi) = 2n, Ric(X, xi) = 0 and Ric|_D = Ric^T - 2g on the
/// contact distribution Ker eta, in the frame d_a - eta(d_a) xi.
struct BoyerResiduals {
  double ric_xi_xi = 0.0;
  double ric_x_xi = 0.0;
  double transverse = 0.0;
};

BoyerResiduals boyer_residuals(const MetricField<5>& g, const ContactForm& eta, const Vec5& reeb,
                               const TransverseMetric& h, const RealPoint& p,
                               const DerivativeOptions& opt = {});

/// Real symmetric 5x5 form 2 Re(H_{j lbar} dw^j (x) dwbar^l) at x.
Mat5 hermitian_to_real(const HermitianBlock<double>& H, const Vec5& x);

}  // namespace t11
