#pragma once

// Scalar-generic helpers for building real 5x5 forms out of complex
// (co)frame components.

#include <array>

#include "t11/coords.hpp"
#include "t11/transverse.hpp"

namespace t11::detail {

// Im(a * b)
template <class S>
S im_product(const Cplx<S>& a, const Cplx<S>& b) {
  return a.re * b.im + a.im * b.re;
}

// Re(a * conj(b))
template <class S>
S re_product_conj(const Cplx<S>& a, const Cplx<S>& b) {
  return a.re * b.re + a.im * b.im;
}

template <class S>
Vec5T<S> zero_vec() {
  Vec5T<S> v;
  for (int i = 0; i < 5; ++i) v[i] = S(0.0);
  return v;
}

template <class S>
Mat5T<S> zero_mat() {
  Mat5T<S> m;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) m(i, j) = S(0.0);
  return m;
}

using Coframe = std::array<std::array<Cplx<double>, 5>, 2>;

// 2 Re(H_{j lbar} dw^j_a conj(dw^l_b))
template <class S>
Mat5T<S> hermitian_form(const HermitianBlock<S>& H, const std::array<std::array<Cplx<S>, 5>, 2>& dw) {
  Mat5T<S> m = zero_mat<S>();
  for (int j = 0; j < 2; ++j) {
    for (int l = 0; l < 2; ++l) {
      const Cplx<S> h = H.entry(j, l);
      for (int a = 1; a < 5; ++a) {
        const Cplx<S> ha = h * dw[j][a];
        for (int b = 1; b < 5; ++b) m(a, b) += 2.0 * re_product_conj(ha, dw[l][b]);
      }
    }
  }
  return m;
}

// Components of the real 2-form Im(H_{j kbar} dwbar^k ^ dw^j):
// Im sum H_{j kbar} (conj(dw^k_a) dw^j_b - conj(dw^k_b) dw^j_a).
template <class S>
Mat5T<S> imaginary_two_form(const HermitianBlock<S>& H, const std::array<std::array<Cplx<S>, 5>, 2>& dw) {
  Mat5T<S> m = zero_mat<S>();
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      const Cplx<S> h = H.entry(j, k);
      for (int a = 1; a < 5; ++a) {
        for (int b = 1; b < 5; ++b) {
          const Cplx<S> t = h * (conj(dw[k][a]) * dw[j][b] - conj(dw[k][b]) * dw[j][a]);
          m(a, b) += t.im;
        }
      }
    }
  }
  return m;
}

// Components of Im(sum_j f_{,j} dw^j).
template <class S>
Vec5T<S> imaginary_one_form(const std::array<Cplx<S>, 2>& grad, const std::array<std::array<Cplx<S>, 5>, 2>& dw) {
  Vec5T<S> v = zero_vec<S>();
  for (int j = 0; j < 2; ++j)
    for (int a = 1; a < 5; ++a) v[a] += im_product(grad[j], dw[j][a]);
  return v;
}

}  // namespace t11::detail
