#pragma once

// Transverse Kaehler-Ricci flow at the level of the basic potential,
//   d phi / dt = log det(g^T_{j lbar} + phi_{,j lbar}) - log det(g^T_{j lbar}) + 6 phi,
// and at the level of the transverse metric,
//   d g^T / dt = -Ric^T + 6 g^T.

#include <functional>
#include <array>
#include <string>
#include <vector>

#include "t11/deform.hpp"

namespace t11 {

/// Constant 2n + 2 in front of phi and g^T.
inline constexpr double kFlowConstant = kTransverseEinsteinConstant;

/// A time-indexed basic potential phi(t, .) with its time derivative.
struct FlowState {
  BasicFunction phi0;
  std::string rule;
  std::function<BasicFunction(double)> at;
  std::function<BasicFunction(double)> rate;
};

/// |d_t phi - log det(g^T + phi_{j lbar}) + log det g^T - 6 phi| at q.
/// Throws ConeExitError if g^T + phi_{j lbar} is not positive-definite.
double flow_residual(const BasicFunction& phi_t, const BasicFunction& dphi_dt, const ComplexPoint& q,
                     const SasakiPotential& K);
double flow_residual(const FlowState& s, double t, const ComplexPoint& q, const SasakiPotential& K);

/// log det(g^T + phi_{j lbar}) - log det(g^T) at q, with the cone check.
double log_det_ratio(const HermitianBlock<double>& gT, const HermitianBlock<double>& hess_phi);

/// Probe points used to decide whether a function is pluriharmonic.
const std::vector<ComplexPoint>& pluriharmonic_probe();

/// max over the probe set (or the given points) of the pluriharmonic residual.
double max_pluriharmonic_residual(const BasicFunction& phi, const std::vector<ComplexPoint>& points = {});

inline constexpr double kPluriharmonicTolerance = 1e-9;

/// (e^{6t} - 1) phi0. Throws NotPluriharmonicError unless phi0 passes the probe.
BasicFunction analytic_solution(const BasicFunction& phi0, double t);

/// t -> (e^{6t} - 1) phi0 with rate 6 e^{6t} phi0.
FlowState analytic_family(const BasicFunction& phi0);

/// t -> e^{6t} phi0, the solution of the flow equation with phi(0) = phi0 for
/// pluriharmonic phi0.
FlowState exponential_family(const BasicFunction& phi0);

enum class Integrator { Euler, RK4 };

std::string to_string(Integrator i);
Integrator parse_integrator(const std::string& s);

/// Tensor grid for the general path over (theta1, phi1, theta2, phi2): uniform
/// in log|w_j| = log tan(theta_j / 2) between the theta bounds and uniform in phi_j.
struct TensorGrid {
  std::array<int, 4> counts{16, 16, 8, 8};
  double theta_min = 0.6;
  double theta_max = kPi - 0.6;
  double phi_min = 0.5;
  double phi_max = 2.0 * kPi - 0.5;
};

struct FlowConfig {
  double dt = 1e-3;
  double t_end = 0.5;
  Integrator integrator = Integrator::RK4;
  /// Points for the pointwise (pluriharmonic) path.
  std::vector<ComplexPoint> grid;
  /// Grid for the general path.
  TensorGrid tensor_grid;
  /// Steps whose step-doubling error estimate exceeds tol * max(1, |phi|) are
  /// rejected with StepRejectedError. Infinity disables the check.
  double local_error_tol = 1e-6;
  /// Evaluate the full determinant term even for pluriharmonic data.
  bool force_general = false;
  /// Keep every k-th step in the output (the final time is always kept).
  int record_every = 1;
};

struct FlowSeries {
  bool pointwise = true;
  std::vector<ComplexPoint> points;
  std::vector<double> times;
  /// values[k][i] = phi(times[k], points[i])
  std::vector<std::vector<double>> values;
  double max_error_estimate = 0.0;
};

/// Steps the flow from phi(0) = phi0. Pluriharmonic phi0 decouples pointwise
/// into d_t phi = 6 phi on cfg.grid; otherwise the determinant term is
/// evaluated each stage with finite-difference complex Hessians on the
/// tensor grid. No boundary conditions are imposed and edge points use
/// off-centre stencils, so roundoff modes near the edges grow over long
/// horizons (t of order 0.05 on the default grid); keep t_end short there.
FlowSeries integrate_flow(const BasicFunction& phi0, const FlowConfig& cfg,
                          const SasakiPotential& K = standard_potential());

/// Points of a tensor grid, index = ((i0 * n1 + i1) * n2 + i2) * n3 + i3 over
/// the axes (theta1, phi1, theta2, phi2).
std::vector<ComplexPoint> tensor_grid_points(const TensorGrid& g);

/// Complex Hessians of grid values by fourth-order finite differences in
/// (log|w|, arg w), off-centre near the edges. Needs 6 points per axis.
std::vector<HermitianBlock<double>> grid_complex_hessian(const TensorGrid& g, const std::vector<double>& values);

/// Max-abs entry of d_t g^T + Ric^T - 6 g^T at q, with g^T(t) = g^T + phi_t{,j lbar}.
double metric_flow_residual(const SasakiPotential& K, const FlowState& s, double t, const ComplexPoint& q);

}  // namespace t11
