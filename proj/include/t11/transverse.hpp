#pragma once

// Complex (Wirtinger) derivatives of real functions of the transverse
// coordinates (w^1, w^2), computed by lifting a transverse point into a
// second-order jet over (Re w^1, Im w^1, Re w^2, Im w^2).

#include <string>
#include <utility>

#include "t11/coords.hpp"
#include "t11/jet.hpp"
#include "t11/polymorphic.hpp"

namespace t11 {

/// Variables of the lift: 0 = Re w^1, 1 = Im w^1, 2 = Re w^2, 3 = Im w^2.
template <class S>
TransversePoint<Jet<S, 4>> lift(const TransversePoint<S>& p) {
  using J = Jet<S, 4>;
  TransversePoint<J> q;
  for (int j = 0; j < 2; ++j) {
    const int iu = 2 * j;
    const int iv = 2 * j + 1;
    const S& u = p.re[j];
    const S& v = p.im[j];
    q.re[j] = J::variable(u, iu);
    q.im[j] = J::variable(v, iv);

    const S r2 = u * u + v * v;
    const S inv = 1.0 / r2;
    const S inv2 = inv * inv;
    const S uu = u * u;
    const S vv = v * v;
    const S uv = u * v;

    J lm(p.log_modulus[j]);
    lm.d[iu] = u * inv;
    lm.d[iv] = v * inv;
    lm.hess(iu, iu) = (vv - uu) * inv2;
    lm.hess(iv, iv) = (uu - vv) * inv2;
    lm.hess(iu, iv) = lm.hess(iv, iu) = -2.0 * uv * inv2;
    q.log_modulus[j] = std::move(lm);

    J arg(p.arg[j]);
    arg.d[iu] = -(v * inv);
    arg.d[iv] = u * inv;
    arg.hess(iu, iu) = 2.0 * uv * inv2;
    arg.hess(iv, iv) = -2.0 * uv * inv2;
    arg.hess(iu, iv) = arg.hess(iv, iu) = (vv - uu) * inv2;
    q.arg[j] = std::move(arg);
  }
  return q;
}

/// 2x2 Hermitian matrix with real diagonal and the (1, 2-bar) entry.
template <class S>
struct HermitianBlock {
  S h11{};
  S h22{};
  Cplx<S> h12{};

  Cplx<S> entry(int j, int l) const {
    if (j == l) return {j == 0 ? h11 : h22, S(0.0)};
    return j == 0 ? h12 : conj(h12);
  }
  S det() const { return h11 * h22 - (h12.re * h12.re + h12.im * h12.im); }

  friend HermitianBlock operator+(const HermitianBlock& a, const HermitianBlock& b) {
    return {a.h11 + b.h11, a.h22 + b.h22, a.h12 + b.h12};
  }
};

inline Eigen::Matrix2cd to_matrix(const HermitianBlock<double>& h) {
  Eigen::Matrix2cd m;
  m << h.h11, to_std(h.h12), std::conj(to_std(h.h12)), h.h22;
  return m;
}

/// Value, complex gradient f_{,j} and complex Hessian f_{,j lbar}.
template <class S>
struct ComplexDerivatives {
  S value{};
  std::array<Cplx<S>, 2> grad{};
  HermitianBlock<S> hess{};
};

template <class S>
ComplexDerivatives<S> complex_derivatives(const Jet<S, 4>& f) {
  ComplexDerivatives<S> out;
  out.value = f.v;
  for (int j = 0; j < 2; ++j) {
    out.grad[j] = Cplx<S>(0.5 * f.d[2 * j], -0.5 * f.d[2 * j + 1]);
  }
  auto entry = [&f](int j, int l) {
    const int uj = 2 * j, vj = 2 * j + 1, ul = 2 * l, vl = 2 * l + 1;
    return Cplx<S>(0.25 * (f.hess(uj, ul) + f.hess(vj, vl)),
                   0.25 * (f.hess(uj, vl) - f.hess(vj, ul)));
  };
  out.hess.h11 = entry(0, 0).re;
  out.hess.h22 = entry(1, 1).re;
  out.hess.h12 = entry(0, 1);
  return out;
}

template <class S>
using TransverseScalarSig = S(const TransversePoint<S>&);

/// Real function of the transverse coordinates, evaluable for every scalar
/// type the library differentiates with.
using TransverseFunction = PolyFunction<TransverseScalarSig, double, J4, J5, JJ4, JJ5>;

template <class S>
using HolomorphicSig = Cplx<S>(const TransversePoint<S>&);
using HolomorphicFunction = PolyFunction<HolomorphicSig, double, J4, J5, JJ4, JJ5>;

/// A named real transverse function with complex-derivative access up to
/// order two at doubles, J4 and J5.
class TransverseScalar {
 public:
  TransverseScalar() = default;
  TransverseScalar(std::string name, TransverseFunction f)
      : name_(std::move(name)), f_(std::move(f)) {}

  const std::string& name() const { return name_; }
  const TransverseFunction& function() const { return f_; }

  template <class S>
  S operator()(const TransversePoint<S>& p) const {
    return f_.at<S>()(p);
  }
  double operator()(const ComplexPoint& q) const { return (*this)(transverse_point(q)); }

  template <class S>
  ComplexDerivatives<S> derivatives(const TransversePoint<S>& p) const {
    return complex_derivatives(f_.at<Jet<S, 4>>()(lift(p)));
  }
  ComplexDerivatives<double> derivatives(const ComplexPoint& q) const {
    return derivatives(transverse_point(q));
  }

 private:
  std::string name_;
  TransverseFunction f_;
};

template <class S>
using HermitianSig = HermitianBlock<S>(const TransversePoint<S>&);

/// Hermitian 2x2 component field h_{j lbar} of a transverse Kaehler metric.
class TransverseMetric {
 public:
  using Function = PolyFunction<HermitianSig, double, J4, J5>;

  TransverseMetric() = default;
  TransverseMetric(std::string name, Function f) : name_(std::move(name)), f_(std::move(f)) {}

  const std::string& name() const { return name_; }

  template <class S>
  HermitianBlock<S> operator()(const TransversePoint<S>& p) const {
    return f_.at<S>()(p);
  }
  HermitianBlock<double> operator()(const ComplexPoint& q) const {
    return (*this)(transverse_point(q));
  }

 private:
  std::string name_;
  Function f_;
};

}  // namespace t11
