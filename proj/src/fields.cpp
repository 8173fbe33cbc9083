#include "hopfcx/fields.hpp"

#include <vector>

#include "hopfcx/rng.hpp"

namespace hopfcx {

VectorField tangent_extension(const LevelSetManifold& M, [[maybe_unused]] const Point& p,
                              const Vec& v) {
  const int m = M.ambient_dim();
  ConstraintMap F = M.constraint();
  std::vector<double> vv(v.data(), v.data() + m);
  return VectorField("ext(" + M.name() + ")", m, [F, vv](auto x, auto out) {
    using T = std::remove_cvref_t<decltype(out[0])>;
    std::vector<T> w(x.size());
    for (size_t i = 0; i < x.size(); ++i) w[i] = T(vv[i]);
    project_tangent_level(F, x, std::span<const T>(w), out);
  });
}

VectorField tangent_extension_perturbed(const LevelSetManifold& M, const Point& p, const Vec& v,
                                        std::uint64_t seed) {
  const int m = M.ambient_dim();
  ConstraintMap F = M.constraint();
  std::vector<double> vv(v.data(), v.data() + m);
  std::vector<double> base(p.coords.data(), p.coords.data() + m);
  Rng rng(seed, 0xa17);
  std::vector<double> L(static_cast<size_t>(m) * m);
  for (auto& e : L) e = rng.next_gaussian();
  return VectorField("ext'(" + M.name() + ")", m, [F, vv, base, L, m](auto x, auto out) {
    using T = std::remove_cvref_t<decltype(out[0])>;
    std::vector<T> w(x.size());
    for (int i = 0; i < m; ++i) {
      T acc(vv[i]);
      for (int j = 0; j < m; ++j) acc += L[static_cast<size_t>(i) * m + j] * (x[j] - base[j]);
      w[i] = acc;
    }
    project_tangent_level(F, x, std::span<const T>(w), out);
  });
}

VectorField endo_applied(const EndoField& J, const VectorField& X) {
  const int m = X.dim();
  return VectorField(J.name() + "(" + X.name() + ")", m, [J, X](auto x, auto out) {
    using T = std::remove_cvref_t<decltype(out[0])>;
    std::vector<T> u(x.size());
    X.eval(x, std::span<T>(u));
    J.eval(x, std::span<const T>(u), out);
  });
}

VectorField field_combination(double a, const VectorField& X, double b, const VectorField& Y) {
  const int m = X.dim();
  return VectorField("lin(" + X.name() + "," + Y.name() + ")", m, [a, X, b, Y](auto x, auto out) {
    using T = std::remove_cvref_t<decltype(out[0])>;
    std::vector<T> u(x.size()), w(x.size());
    X.eval(x, std::span<T>(u));
    Y.eval(x, std::span<T>(w));
    for (size_t i = 0; i < x.size(); ++i) out[i] = a * u[i] + b * w[i];
  });
}

VectorField constant_field(int dim, const Vec& v) {
  std::vector<double> vv(v.data(), v.data() + dim);
  return VectorField("const", dim, [vv](auto, auto out) {
    using T = std::remove_cvref_t<decltype(out[0])>;
    for (size_t i = 0; i < out.size(); ++i) out[i] = T(vv[i]);
  });
}

VectorField linear_field(const Mat& A) {
  const int m = static_cast<int>(A.rows());
  std::vector<double> a(A.data(), A.data() + A.size());  // column-major
  return VectorField("linear", m, [a, m](auto x, auto out) {
    using T = std::remove_cvref_t<decltype(out[0])>;
    for (int r = 0; r < m; ++r) {
      T acc(0.0);
      for (int c = 0; c < m; ++c) acc += a[static_cast<size_t>(c) * m + r] * x[c];
      out[r] = acc;
    }
  });
}

}  // namespace hopfcx
