#pragma once

// Shared fixtures and independent oracles for the unit tests.

#include <cmath>
#include <complex>
#include <functional>

#include "t11/tensor.hpp"

namespace t11::testing {

template <int N>
MetricField<N> flat_metric() {
  return MetricField<N>("flat", typename MetricField<N>::Function([]<class S>(const VecN<S, N>&) {
                          MatN<S, N> m;
                          for (int i = 0; i < N; ++i)
                            for (int j = 0; j < N; ++j) m(i, j) = S(i == j ? 1.0 : 0.0);
                          return m;
                        }));
}

/// Unit round 2-sphere in (theta, phi).
inline MetricField<2> round_sphere() {
  return MetricField<2>("sphere", MetricField<2>::Function([]<class S>(const VecN<S, 2>& x) {
                          using std::sin;
                          const S s = sin(x[0]);
                          MatN<S, 2> m;
                          m(0, 0) = S(1.0);
                          m(0, 1) = S(0.0);
                          m(1, 0) = S(0.0);
                          m(1, 1) = s * s;
                          return m;
                        }));
}

/// Wirtinger second derivative d^2 f / dw^j dwbar^l by central differences
/// in long double over (Re w, Im w).
inline std::complex<double> fd_mixed(const std::function<long double(std::complex<long double>,
                                                                    std::complex<long double>)>& f,
                                     std::complex<double> w1, std::complex<double> w2, int j, int l,
                                     long double h = 1e-4L) {
  auto eval = [&](int a, long double da, int b, long double db) {
    std::complex<long double> z[2] = {w1, w2};
    auto shift = [&](int idx, long double d) {
      if (idx < 0) return;
      const int k = idx / 2;
      z[k] += (idx % 2 == 0) ? std::complex<long double>(d, 0) : std::complex<long double>(0, d);
    };
    shift(a, da);
    shift(b, db);
    return f(z[0], z[1]);
  };
  auto d2 = [&](int a, int b) {
    return (eval(a, h, b, h) - eval(a, h, b, -h) - eval(a, -h, b, h) + eval(a, -h, b, -h)) /
           (4 * h * h);
  };
  const int uj = 2 * j, vj = 2 * j + 1, ul = 2 * l, vl = 2 * l + 1;
  const long double re = 0.25L * (d2(uj, ul) + d2(vj, vl));
  const long double im = 0.25L * (d2(uj, vl) - d2(vj, ul));
  return {static_cast<double>(re), static_cast<double>(im)};
}

}  // namespace t11::testing
