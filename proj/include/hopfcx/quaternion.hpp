#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "hopfcx/dual.hpp"

namespace hopfcx {

// Hamilton quaternion over any scalar supporting +,-,*. The fixed table is
// i*j = k, j*k = i, k*i = j.
template <class T>
struct QuatT {
  T w{}, x{}, y{}, z{};

  constexpr QuatT() = default;
  constexpr QuatT(T w_, T x_, T y_, T z_) : w(w_), x(x_), y(y_), z(z_) {}

  static constexpr QuatT one() { return {T(1.0), T(0.0), T(0.0), T(0.0)}; }
  static constexpr QuatT i() { return {T(0.0), T(1.0), T(0.0), T(0.0)}; }
  static constexpr QuatT j() { return {T(0.0), T(0.0), T(1.0), T(0.0)}; }
  static constexpr QuatT k() { return {T(0.0), T(0.0), T(0.0), T(1.0)}; }
};

using Quaternion = QuatT<double>;

template <class T>
constexpr QuatT<T> operator+(const QuatT<T>& a, const QuatT<T>& b) {
  return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
}
template <class T>
constexpr QuatT<T> operator-(const QuatT<T>& a, const QuatT<T>& b) {
  return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
}
template <class T>
constexpr QuatT<T> operator-(const QuatT<T>& a) {
  return {-a.w, -a.x, -a.y, -a.z};
}
template <class T, class S>
constexpr QuatT<T> operator*(const S& c, const QuatT<T>& a) {
  return {c * a.w, c * a.x, c * a.y, c * a.z};
}

// Hamilton product.
template <class T>
constexpr QuatT<T> qmul(const QuatT<T>& a, const QuatT<T>& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

template <class T>
constexpr QuatT<T> qconj(const QuatT<T>& a) {
  return {a.w, -a.x, -a.y, -a.z};
}

template <class T>
constexpr T qnorm_sq(const QuatT<T>& a) {
  return a.w * a.w + a.x * a.x + a.y * a.y + a.z * a.z;
}

inline double qnorm(const Quaternion& a) { return std::sqrt(qnorm_sq(a)); }

// Re part and the Euclidean R^4 pairing Re(conj(a) b).
template <class T>
constexpr T qdot(const QuatT<T>& a, const QuatT<T>& b) {
  return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

// --- quaternion vectors over flat coordinate spans ------------------------
//
// A point of H^{n+1} is stored as 4(n+1) reals (w,x,y,z per entry). The
// geometry layer hands coordinates around as flat spans; these helpers view
// them quaternionically.

template <class T>
constexpr QuatT<T> quat_at(std::span<const T> coords, int a) {
  return {coords[4 * a], coords[4 * a + 1], coords[4 * a + 2], coords[4 * a + 3]};
}

template <class T>
constexpr void set_quat(std::span<T> coords, int a, const QuatT<T>& q) {
  coords[4 * a] = q.w;
  coords[4 * a + 1] = q.x;
  coords[4 * a + 2] = q.y;
  coords[4 * a + 3] = q.z;
}

// Ordered list of quaternions h = (h_0, ..., h_n); the algebra-layer value
// type. Entrywise actions distinguish left from right multiplication
// everywhere to keep the sign conventions auditable.
struct QuaternionVector {
  std::vector<Quaternion> entries;

  QuaternionVector() = default;
  explicit QuaternionVector(int n_plus_1) : entries(n_plus_1) {}

  int size() const { return static_cast<int>(entries.size()); }
  Quaternion& operator[](int a) { return entries[a]; }
  const Quaternion& operator[](int a) const { return entries[a]; }

  std::vector<double> flat() const {
    std::vector<double> out(4 * entries.size());
    for (int a = 0; a < size(); ++a) set_quat<double>(out, a, entries[a]);
    return out;
  }
  static QuaternionVector from_flat(std::span<const double> coords) {
    QuaternionVector h(static_cast<int>(coords.size() / 4));
    for (int a = 0; a < h.size(); ++a) h[a] = quat_at(coords, a);
    return h;
  }
};

inline double qv_norm_sq(const QuaternionVector& h) {
  double s = 0.0;
  for (const auto& q : h.entries) s += qnorm_sq(q);
  return s;
}

// <u,v> = Re sum conj(u_a) v_a, the Euclidean inner product of R^{4(n+1)}.
inline double qv_dot(const QuaternionVector& u, const QuaternionVector& v) {
  double s = 0.0;
  for (int a = 0; a < u.size(); ++a) s += qdot(u[a], v[a]);
  return s;
}

// h -> q h (entrywise left multiplication)
inline QuaternionVector left_mul(const Quaternion& q, const QuaternionVector& h) {
  QuaternionVector out(h.size());
  for (int a = 0; a < h.size(); ++a) out[a] = qmul(q, h[a]);
  return out;
}

// h -> h q (entrywise right multiplication)
inline QuaternionVector right_mul(const QuaternionVector& h, const Quaternion& q) {
  QuaternionVector out(h.size());
  for (int a = 0; a < h.size(); ++a) out[a] = qmul(h[a], q);
  return out;
}

}  // namespace hopfcx
