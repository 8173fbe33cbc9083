#pragma once

#include <array>
#include <span>

#include "hopfcx/quaternion.hpp"

namespace hopfcx {

// Moment maps of the diagonal U(1) and Sp(1) actions on H^{n+1}:
//   mu(h) = sum_a conj(h_a) i h_a
//   nu(h) = (sum conj(h_a) i h_a, sum conj(h_a) j h_a, sum conj(h_a) k h_a)
// Both are purely imaginary; mu is invariant under entrywise left
// multiplication by unit complex numbers and Sp(1)-equivariant under
// entrywise right multiplication: mu(h q) = conj(q) mu(h) q.

template <class T>
QuatT<T> moment_component(std::span<const T> coords, const QuatT<T>& sigma) {
  QuatT<T> s;
  const int n1 = static_cast<int>(coords.size() / 4);
  for (int a = 0; a < n1; ++a) {
    QuatT<T> h = quat_at(coords, a);
    s = s + qmul(qconj(h), qmul(sigma, h));
  }
  return s;
}

template <class T>
QuatT<T> moment_mu_flat(std::span<const T> coords) {
  return moment_component(coords, QuatT<T>::i());
}

template <class T>
std::array<QuatT<T>, 3> moment_nu_flat(std::span<const T> coords) {
  return {moment_component(coords, QuatT<T>::i()),
          moment_component(coords, QuatT<T>::j()),
          moment_component(coords, QuatT<T>::k())};
}

inline Quaternion moment_mu(const QuaternionVector& h) {
  auto f = h.flat();
  return moment_mu_flat<double>(f);
}

inline std::array<Quaternion, 3> moment_nu(const QuaternionVector& h) {
  auto f = h.flat();
  return moment_nu_flat<double>(f);
}

}  // namespace hopfcx
