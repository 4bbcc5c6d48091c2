#pragma once

// Forward-mode second-order jets: value, gradient and full Hessian with
// respect to N seeded variables. The coefficient type T may itself be a jet,
// which gives mixed derivatives of order four when two jets are nested.

#include <array>
#include <cmath>
#include <type_traits>

#include <Eigen/Core>

namespace t11 {

template <class T, int N>
struct Jet {
  static_assert(N > 0);
  using Coefficient = T;
  static constexpr int size = N;

  T v{};
  std::array<T, N> d{};
  std::array<T, N * N> h{};  // row-major, symmetric

  Jet() : v(0.0) { fill_zero(); }

  template <class U>
    requires std::is_arithmetic_v<U>
  explicit Jet(U c) : v(static_cast<double>(c)) {
    fill_zero();
  }

  explicit Jet(const T& c)
    requires(!std::is_arithmetic_v<T>)
      : v(c) {
    fill_zero();
  }

  /// Jet for the i-th independent variable with the given value.
  static Jet variable(const T& value, int i) {
    Jet r(value);
    r.d[i] = T(1.0);
    return r;
  }

  const T& hess(int i, int k) const { return h[i * N + k]; }
  T& hess(int i, int k) { return h[i * N + k]; }

  Jet& operator+=(const Jet& b) {
    v += b.v;
    for (int i = 0; i < N; ++i) d[i] += b.d[i];
    for (int i = 0; i < N * N; ++i) h[i] += b.h[i];
    return *this;
  }
  Jet& operator-=(const Jet& b) {
    v -= b.v;
    for (int i = 0; i < N; ++i) d[i] -= b.d[i];
    for (int i = 0; i < N * N; ++i) h[i] -= b.h[i];
    return *this;
  }
  Jet& operator*=(const Jet& b) { return *this = *this * b; }
  Jet& operator/=(const Jet& b) { return *this = *this / b; }

 private:
  void fill_zero() {
    for (auto& x : d) x = T(0.0);
    for (auto& x : h) x = T(0.0);
  }
};

template <class T>
struct is_jet : std::false_type {};
template <class T, int N>
struct is_jet<Jet<T, N>> : std::true_type {};
template <class T>
inline constexpr bool is_jet_v = is_jet<T>::value;

/// Innermost double value of a (possibly nested) jet.
inline double value_of(double x) { return x; }
template <class T, int N>
double value_of(const Jet<T, N>& x) {
  return value_of(x.v);
}

// Composition with a scalar function given its value and first two
// derivatives at a.v.
template <class T, int N>
Jet<T, N> chain(const Jet<T, N>& a, const T& f0, const T& f1, const T& f2) {
  Jet<T, N> r(f0);
  for (int i = 0; i < N; ++i) r.d[i] = f1 * a.d[i];
  for (int i = 0; i < N; ++i) {
    const T f2di = f2 * a.d[i];
    for (int k = i; k < N; ++k) {
      T x = f1 * a.hess(i, k) + f2di * a.d[k];
      r.hess(k, i) = x;
      r.hess(i, k) = std::move(x);
    }
  }
  return r;
}

template <class T, int N>
Jet<T, N> operator-(const Jet<T, N>& a) {
  Jet<T, N> r;
  r.v = -a.v;
  for (int i = 0; i < N; ++i) r.d[i] = -a.d[i];
  for (int i = 0; i < N * N; ++i) r.h[i] = -a.h[i];
  return r;
}

template <class T, int N>
Jet<T, N> operator+(Jet<T, N> a, const Jet<T, N>& b) {
  return a += b;
}
template <class T, int N>
Jet<T, N> operator-(Jet<T, N> a, const Jet<T, N>& b) {
  return a -= b;
}

template <class T, int N>
Jet<T, N> operator*(const Jet<T, N>& a, const Jet<T, N>& b) {
  Jet<T, N> r(a.v * b.v);
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
  for (int i = 0; i < N; ++i) {
    for (int k = i; k < N; ++k) {
      T x = a.hess(i, k) * b.v + a.v * b.hess(i, k) + a.d[i] * b.d[k] + a.d[k] * b.d[i];
      r.hess(k, i) = x;
      r.hess(i, k) = std::move(x);
    }
  }
  return r;
}

template <class T, int N>
Jet<T, N> operator/(const Jet<T, N>& a, const Jet<T, N>& b) {
  const T inv = T(1.0) / b.v;
  const T inv2 = inv * inv;
  return a * chain(b, inv, -inv2, 2.0 * inv2 * inv);
}

// Mixed operations with the coefficient type T.
template <class T, int N>
Jet<T, N> operator+(Jet<T, N> a, const T& s) {
  a.v += s;
  return a;
}
template <class T, int N>
Jet<T, N> operator+(const T& s, Jet<T, N> a) {
  a.v += s;
  return a;
}
template <class T, int N>
Jet<T, N> operator-(Jet<T, N> a, const T& s) {
  a.v -= s;
  return a;
}
template <class T, int N>
Jet<T, N> operator-(const T& s, const Jet<T, N>& a) {
  Jet<T, N> r = -a;
  r.v += s;
  return r;
}
template <class T, int N>
Jet<T, N> operator*(Jet<T, N> a, const T& s) {
  a.v *= s;
  for (auto& x : a.d) x *= s;
  for (auto& x : a.h) x *= s;
  return a;
}
template <class T, int N>
Jet<T, N> operator*(const T& s, Jet<T, N> a) {
  return std::move(a) * s;
}
template <class T, int N>
Jet<T, N> operator/(const Jet<T, N>& a, const T& s) {
  return a * (T(1.0) / s);
}
template <class T, int N>
Jet<T, N> operator/(const T& s, const Jet<T, N>& b) {
  const T inv = T(1.0) / b.v;
  const T inv2 = inv * inv;
  return chain(b, inv, -inv2, 2.0 * inv2 * inv) * s;
}

// Mixed operations with double when the coefficient type is itself a jet.
template <class T, int N>
  requires is_jet_v<T>
Jet<T, N> operator+(const Jet<T, N>& a, double s) {
  return a + T(s);
}
template <class T, int N>
  requires is_jet_v<T>
Jet<T, N> operator+(double s, const Jet<T, N>& a) {
  return a + T(s);
}
template <class T, int N>
  requires is_jet_v<T>
Jet<T, N> operator-(const Jet<T, N>& a, double s) {
  return a - T(s);
}
template <class T, int N>
  requires is_jet_v<T>
Jet<T, N> operator-(double s, const Jet<T, N>& a) {
  return T(s) - a;
}
template <class T, int N>
  requires is_jet_v<T>
Jet<T, N> operator*(const Jet<T, N>& a, double s) {
  Jet<T, N> r = a;
  r.v = r.v * s;
  for (auto& x : r.d) x = x * s;
  for (auto& x : r.h) x = x * s;
  return r;
}
template <class T, int N>
  requires is_jet_v<T>
Jet<T, N> operator*(double s, const Jet<T, N>& a) {
  return a * s;
}
template <class T, int N>
  requires is_jet_v<T>
Jet<T, N> operator/(const Jet<T, N>& a, double s) {
  return a * (1.0 / s);
}
template <class T, int N>
  requires is_jet_v<T>
Jet<T, N> operator/(double s, const Jet<T, N>& b) {
  return T(s) / b;
}

// Elementary functions. Coefficients recurse through ADL so nested jets work.
template <class T, int N>
Jet<T, N> sin(const Jet<T, N>& a) {
  using std::cos;
  using std::sin;
  const T s = sin(a.v);
  return chain(a, s, cos(a.v), -s);
}
template <class T, int N>
Jet<T, N> cos(const Jet<T, N>& a) {
  using std::cos;
  using std::sin;
  const T c = cos(a.v);
  return chain(a, c, -sin(a.v), -c);
}
template <class T, int N>
Jet<T, N> tan(const Jet<T, N>& a) {
  using std::tan;
  const T t = tan(a.v);
  const T sec2 = 1.0 + t * t;
  return chain(a, t, sec2, 2.0 * t * sec2);
}
template <class T, int N>
Jet<T, N> exp(const Jet<T, N>& a) {
  using std::exp;
  const T e = exp(a.v);
  return chain(a, e, e, e);
}
template <class T, int N>
Jet<T, N> log(const Jet<T, N>& a) {
  using std::log;
  const T inv = T(1.0) / a.v;
  return chain(a, log(a.v), inv, -(inv * inv));
}
template <class T, int N>
Jet<T, N> sqrt(const Jet<T, N>& a) {
  using std::sqrt;
  const T s = sqrt(a.v);
  const T inv = T(1.0) / s;
  return chain(a, s, 0.5 * inv, -0.25 * inv / a.v);
}
template <class T, int N>
Jet<T, N> atan(const Jet<T, N>& a) {
  using std::atan;
  const T q = T(1.0) / (1.0 + a.v * a.v);
  return chain(a, atan(a.v), q, -2.0 * a.v * q * q);
}

template <class S>
S square(const S& x) {
  return x * x;
}

/// Convenience aliases for the jet types used across the library.
using J4 = Jet<double, 4>;
using J5 = Jet<double, 5>;
using JJ4 = Jet<J4, 4>;
using JJ5 = Jet<J5, 4>;

}  // namespace t11

namespace Eigen {

template <class T, int N>
struct NumTraits<t11::Jet<T, N>> : GenericNumTraits<t11::Jet<T, N>> {
  using Real = t11::Jet<T, N>;
  using NonInteger = t11::Jet<T, N>;
  using Nested = t11::Jet<T, N>;
  using Literal = t11::Jet<T, N>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1 + N + N * N,
    AddCost = 1 + N + N * N,
    MulCost = 4 * (1 + N + N * N),
  };
  static inline Real epsilon() { return Real(std::numeric_limits<double>::epsilon()); }
  static inline Real dummy_precision() { return Real(1e-12); }
  static inline int digits10() { return std::numeric_limits<double>::digits10; }
};

// Mixed double * jet expressions, e.g. 2.0 * Vec5T<J5>.
template <class T, int N, typename BinaryOp>
struct ScalarBinaryOpTraits<t11::Jet<T, N>, double, BinaryOp> {
  using ReturnType = t11::Jet<T, N>;
};
template <class T, int N, typename BinaryOp>
struct ScalarBinaryOpTraits<double, t11::Jet<T, N>, BinaryOp> {
  using ReturnType = t11::Jet<T, N>;
};

}  // namespace Eigen
