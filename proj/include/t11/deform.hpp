#pragma once

// Deformations of the contact form by basic functions:
//   eta~ = eta + d^c phi,  X~_j = X_j + (i/2) phi_{,j} d/dx,
//   Phi~ = Phi - xi (x) (d^c phi o Phi),  g~ = (1/2) d eta~(., Phi~ .) + eta~ (x) eta~,
// with d^c = (i/2)(dbar - d) acting on functions of (w, wbar).

#include <array>
#include <string>

#include "t11/sasaki.hpp"

namespace t11 {

enum class Family { None, LogModulus, LogSquared, Custom };

std::string to_string(Family f);
/// Accepts "none", "log_modulus", "log_squared" (also the CamelCase spellings).
Family parse_family(const std::string& s);

/// A basic (psi-independent) real function of the transverse coordinates.
class BasicFunction : public TransverseScalar {
 public:
  BasicFunction() = default;
  BasicFunction(std::string name, TransverseFunction f, Family family = Family::Custom,
                std::array<double, 2> c = {0.0, 0.0})
      : TransverseScalar(std::move(name), std::move(f)), family_(family), c_(c) {}

  Family family() const { return family_; }
  const std::array<double, 2>& c() const { return c_; }

  /// s * phi, keeping the family tag with scaled parameters.
  BasicFunction scaled(double s) const;

 private:
  Family family_ = Family::Custom;
  std::array<double, 2> c_{0.0, 0.0};
};

BasicFunction zero_function();

/// phi = (1/6) sum c_j log(w^j wbar^j).
BasicFunction log_modulus(double c1, double c2);

/// phi = (1/2) sum c_j Re(log^2 w^j) = (1/2) sum c_j (log^2 tan(theta_j/2) - phi_j^2).
/// The argument is taken on the cut plane phi_j in [0, 2 pi).
BasicFunction log_squared(double c1, double c2);

/// phi = |w^j|^2, not pluriharmonic.
BasicFunction modulus_squared(int j = 0);

BasicFunction family_function(Family f, double c1, double c2);

/// max_{j,l} |phi_{,j lbar}(q)|.
double pluriharmonic_residual(const BasicFunction& phi, const ComplexPoint& q);
double pluriharmonic_residual(const BasicFunction& phi, const RealPoint& p);

/// d^c phi = Im(sum_j phi_{,j} dw^j) as a covector over the chart, through
/// the complex derivatives.
template <class S>
Vec5T<S> basic_dc(const BasicFunction& phi, const Vec5T<S>& x);

/// The same covector from real partial derivatives:
///   (1/2) sum_j [sin(theta_j) d_theta phi dphi_j - (1/sin theta_j) d_phi phi dtheta_j].
Vec5 basic_dc_real(const BasicFunction& phi, const Vec5& x);

/// eta~ = eta + d^c phi, with closed-form d eta~ = d eta + d d^c phi.
ContactForm deform_eta(const ContactForm& eta, const BasicFunction& phi);

/// X_j = d/dw^j - i K_{,j} d/dx and the deformed X~_j, as complex vectors over
/// the chart (columns j = 0, 1).
struct DeformedFrame {
  Eigen::Matrix<std::complex<double>, 5, 2> X;
  Eigen::Matrix<std::complex<double>, 5, 2> X_tilde;
};

DeformedFrame deform_frame(const SasakiPotential& K, const BasicFunction& phi, const RealPoint& p);
DeformedFrame deform_frame(const SasakiPotential& K, const BasicFunction& phi, const ComplexPoint& q);

/// Phi~ = Phi - xi (x) (d^c phi o Phi).
EndomorphismField deform_phi(const SasakiStructure& s, const BasicFunction& phi);

/// g~ = (1/2) d eta~(., Phi~ .) + eta~ (x) eta~, symmetrized. Needs the closed-form d eta~.
MetricField<5> assemble_deformed_metric(const ContactForm& eta_tilde, const EndomorphismField& phi_tilde);

/// max |M - M^T| of the unsymmetrized assembly at x.
double deformed_metric_asymmetry(const ContactForm& eta_tilde, const EndomorphismField& phi_tilde,
                                 const Vec5& x);

struct DeformedStructure {
  SasakiPotential potential;
  BasicFunction phi;
  ContactForm eta_tilde;
  Vec5 reeb;
  EndomorphismField phi_tilde;
  MetricField<5> metric_tilde;

  SasakiStructure structure() const { return {eta_tilde, reeb, phi_tilde, metric_tilde}; }
  DeformedFrame frame(const RealPoint& p) const { return deform_frame(potential, phi, p); }
};

/// Deforms the structure generated by K.
DeformedStructure deform(const SasakiPotential& K, const BasicFunction& phi);

/// Closed-form metrics of the two families:
///   LogModulus: (1/9)(dpsi + sum (cos theta_j + c_j/2) dphi_j)^2 + g^T,
///   LogSquared: eta~ (x) eta~ + g^T with
///     eta~ = (1/3)(dpsi + sum cos theta_j dphi_j)
///            + (1/2) sum c_j (log tan(theta_j/2) dphi_j + (phi_j / sin theta_j) dtheta_j),
/// where g^T = (1/6) sum (dtheta_j^2 + sin^2 theta_j dphi_j^2).
MetricField<5> family_metric(Family f, double c1, double c2);

/// (1/9)(dpsi + sum cos theta_j dphi_j + 3 d^c phi)^2 + g^T for any basic phi,
/// with d^c phi from real partials. Value-only.
MetricField<5> general_deformed_metric(const BasicFunction& phi);

/// eta -> a eta, xi -> xi / a, Phi -> Phi, g -> a g + a(a - 1) eta (x) eta.
SasakiStructure d_homothety(const SasakiStructure& s, double a);

/// H_{j lbar} = g(X_j, conj(X_l)) for complex frame vectors X.
Eigen::Matrix2cd frame_block(const Mat5& g, const Eigen::Matrix<std::complex<double>, 5, 2>& X);

/// max_j |dw(Phi~ X~_j) - dw(Phi X_j)|, the transverse complex-structure mismatch.
double transverse_j_mismatch(const SasakiStructure& s, const DeformedStructure& d, const RealPoint& p);

}  // namespace t11
