#include "t11/tensor.hpp"

namespace t11 {

ResidualStats einstein_residual(const MetricField<5>& g, double lambda,
                                std::span<const RealPoint> points, const DerivativeOptions& opt) {
  std::vector<Vec5> xs;
  xs.reserve(points.size());
  for (const auto& p : points) xs.push_back(p.coords());
  return einstein_residual<5>(g, lambda, std::span<const Vec5>(xs), opt);
}

Eigen::Matrix2cd kahler_ricci_2d(const TransverseMetric& h, const ComplexPoint& q) {
  const auto ric =
      kahler_ricci_block([&h](const TransversePoint<J4>& p) { return h(p); }, transverse_point(q));
  return to_matrix(ric);
}

}  // namespace t11
