#pragma once

#include <array>
#include <cmath>

#include "hopfcx/quaternion.hpp"

namespace hopfcx {

// Cayley numbers built by Cayley-Dickson doubling of the quaternions:
// (a,b)(c,d) = (ac - conj(d) b, da + b conj(c)), with doubling unit
// e4 = (0,1). Basis order: e0=1, e1=i, e2=j, e3=k, e4, e5=e1e4, e6=e2e4,
// e7=e3e4. The full 8x8 table is reproduced in the README.
template <class T>
struct OctT {
  QuatT<T> a{}, b{};

  constexpr OctT() = default;
  constexpr OctT(QuatT<T> a_, QuatT<T> b_) : a(a_), b(b_) {}

  static constexpr OctT basis(int i) {
    OctT e;
    QuatT<T>& half = i < 4 ? e.a : e.b;
    switch (i % 4) {
      case 0: half.w = T(1.0); break;
      case 1: half.x = T(1.0); break;
      case 2: half.y = T(1.0); break;
      default: half.z = T(1.0); break;
    }
    return e;
  }

  constexpr T component(int i) const {
    const QuatT<T>& half = i < 4 ? a : b;
    switch (i % 4) {
      case 0: return half.w;
      case 1: return half.x;
      case 2: return half.y;
      default: return half.z;
    }
  }
};

using Octonion = OctT<double>;

template <class T>
constexpr OctT<T> operator+(const OctT<T>& x, const OctT<T>& y) {
  return {x.a + y.a, x.b + y.b};
}
template <class T>
constexpr OctT<T> operator-(const OctT<T>& x, const OctT<T>& y) {
  return {x.a - y.a, x.b - y.b};
}
template <class T>
constexpr OctT<T> operator-(const OctT<T>& x) {
  return {-x.a, -x.b};
}
template <class T, class S>
constexpr OctT<T> operator*(const S& c, const OctT<T>& x) {
  return {c * x.a, c * x.b};
}

template <class T>
constexpr OctT<T> omul(const OctT<T>& x, const OctT<T>& y) {
  return {qmul(x.a, y.a) - qmul(qconj(y.b), x.b),
          qmul(y.b, x.a) + qmul(x.b, qconj(y.a))};
}

template <class T>
constexpr OctT<T> oconj(const OctT<T>& x) {
  return {qconj(x.a), -x.b};
}

template <class T>
constexpr T onorm_sq(const OctT<T>& x) {
  return qnorm_sq(x.a) + qnorm_sq(x.b);
}

inline double onorm(const Octonion& x) { return std::sqrt(onorm_sq(x)); }

template <class T>
constexpr T odot(const OctT<T>& x, const OctT<T>& y) {
  return qdot(x.a, y.a) + qdot(x.b, y.b);
}

// Associator (xy)z - x(yz); nonzero for generic imaginary triples.
template <class T>
constexpr OctT<T> associator(const OctT<T>& x, const OctT<T>& y, const OctT<T>& z) {
  return omul(omul(x, y), z) - omul(x, omul(y, z));
}

// Triple (double) cross product (1/2)(x (conj(y) z) - z (conj(y) x)). For
// orthonormal x,y,z it is a unit vector orthogonal to all three.
template <class T>
constexpr OctT<T> triple_cross(const OctT<T>& x, const OctT<T>& y, const OctT<T>& z) {
  OctT<T> yc = oconj(y);
  return 0.5 * (omul(x, omul(yc, z)) - omul(z, omul(yc, x)));
}

// Imaginary octonion from 7 reals (components e1..e7); used by the special
// Stiefel level sets in R^7.
template <class T>
constexpr OctT<T> imaginary_from(std::span<const T> v) {
  return {QuatT<T>(T(0.0), v[0], v[1], v[2]), QuatT<T>(v[3], v[4], v[5], v[6])};
}

// Octonion from 8 reals.
template <class T>
constexpr OctT<T> octonion_from(std::span<const T> v) {
  return {QuatT<T>(v[0], v[1], v[2], v[3]), QuatT<T>(v[4], v[5], v[6], v[7])};
}

}  // namespace hopfcx
