#pragma once

#include <cmath>

namespace hopfcx {

// Forward-mode dual number: value + directional derivative, propagated
// through arithmetic. Nesting DualT<DualT<double>> yields exact second
// directional derivatives; the engine never needs a third level.
template <class T>
struct DualT {
  T v{};
  T d{};

  constexpr DualT() = default;
  constexpr DualT(double c) : v(c), d() {}  // constants lift with zero derivative
  constexpr DualT(T value, T deriv) : v(value), d(deriv) {}

  constexpr DualT& operator+=(const DualT& o) {
    v += o.v;
    d += o.d;
    return *this;
  }
  constexpr DualT& operator-=(const DualT& o) {
    v -= o.v;
    d -= o.d;
    return *this;
  }
  constexpr DualT& operator*=(const DualT& o) {
    d = d * o.v + v * o.d;
    v = v * o.v;
    return *this;
  }
  constexpr DualT& operator/=(const DualT& o) {
    v = v / o.v;
    d = (d - v * o.d) / o.v;
    return *this;
  }
};

template <class T>
constexpr DualT<T> operator+(DualT<T> a, const DualT<T>& b) {
  return a += b;
}
template <class T>
constexpr DualT<T> operator-(DualT<T> a, const DualT<T>& b) {
  return a -= b;
}
template <class T>
constexpr DualT<T> operator*(DualT<T> a, const DualT<T>& b) {
  return a *= b;
}
template <class T>
constexpr DualT<T> operator/(DualT<T> a, const DualT<T>& b) {
  return a /= b;
}
template <class T>
constexpr DualT<T> operator-(const DualT<T>& a) {
  return DualT<T>(-a.v, -a.d);
}
template <class T>
constexpr DualT<T> operator+(const DualT<T>& a) {
  return a;
}

// double on either side
template <class T>
constexpr DualT<T> operator+(double c, DualT<T> a) {
  return DualT<T>(c) + a;
}
template <class T>
constexpr DualT<T> operator+(DualT<T> a, double c) {
  return a + DualT<T>(c);
}
template <class T>
constexpr DualT<T> operator-(double c, const DualT<T>& a) {
  return DualT<T>(c) - a;
}
template <class T>
constexpr DualT<T> operator-(DualT<T> a, double c) {
  return a - DualT<T>(c);
}
template <class T>
constexpr DualT<T> operator*(double c, const DualT<T>& a) {
  return DualT<T>(T(a.v * c), T(a.d * c));
}
template <class T>
constexpr DualT<T> operator*(const DualT<T>& a, double c) {
  return c * a;
}
template <class T>
constexpr DualT<T> operator/(const DualT<T>& a, double c) {
  return DualT<T>(T(a.v / c), T(a.d / c));
}
template <class T>
constexpr DualT<T> operator/(double c, const DualT<T>& a) {
  return DualT<T>(c) / a;
}

using D1 = DualT<double>;
using D2 = DualT<D1>;

// Underlying value, through any nesting depth.
constexpr double scalar_value(double x) { return x; }
template <class T>
constexpr double scalar_value(const DualT<T>& x) {
  return scalar_value(x.v);
}

inline double dual_sqrt(double x) { return std::sqrt(x); }
template <class T>
DualT<T> dual_sqrt(const DualT<T>& a) {
  T r = dual_sqrt(a.v);
  return DualT<T>(r, a.d / (2.0 * r));
}

}  // namespace hopfcx
