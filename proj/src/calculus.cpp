#include "hopfcx/calculus.hpp"

#include <vector>

#include "hopfcx/errors.hpp"

namespace hopfcx {

namespace {

void require_tangent(const VectorField& X, const Point& p) {
  const auto& M = *p.owner;
  double err = M.tangency_error(p.coords, X(p.coords));
  if (err > M.tol().tangency)
    throw TangencyViolation(X.name() + " not tangent to " + M.name() + " at sample, defect " +
                            std::to_string(err));
}

}  // namespace

Vec lie_bracket(const VectorField& X, const VectorField& Y, const Point& p) {
  require_tangent(X, p);
  require_tangent(Y, p);
  return Y.derivative(p.coords, X(p.coords)) - X.derivative(p.coords, Y(p.coords));
}

double derivative_of_inner(const VectorField& A, const VectorField& B, const Vec& x, const Vec& v) {
  const int m = A.dim();
  std::vector<D1> xd(m), a(m), b(m);
  for (int i = 0; i < m; ++i) xd[i] = D1(x[i], v[i]);
  A.eval(std::span<const D1>(xd), std::span<D1>(a));
  B.eval(std::span<const D1>(xd), std::span<D1>(b));
  D1 s(0.0);
  for (int i = 0; i < m; ++i) s += a[i] * b[i];
  return s.d;
}

double exterior_d(const OneForm& eta, const VectorField& X, const VectorField& Y, const Point& p) {
  Vec xp = X(p.coords), yp = Y(p.coords);
  double x_of_etaY = derivative_of_inner(eta.dual, Y, p.coords, xp);
  double y_of_etaX = derivative_of_inner(eta.dual, X, p.coords, yp);
  Vec br = lie_bracket(X, Y, p);
  return x_of_etaY - y_of_etaX - eta.dual(p.coords).dot(br);
}

double d_omega(const EndoField& J, const VectorField& X, const VectorField& Y,
               const VectorField& Z, const Point& p) {
  VectorField JX = endo_applied(J, X), JY = endo_applied(J, Y);
  Vec xp = X(p.coords), yp = Y(p.coords), zp = Z(p.coords);
  // derivative terms
  double t1 = derivative_of_inner(JY, Z, p.coords, xp);
  double t2 = derivative_of_inner(JX, Z, p.coords, yp);
  double t3 = derivative_of_inner(JX, Y, p.coords, zp);
  // bracket terms
  Vec bxy = lie_bracket(X, Y, p);
  Vec bxz = lie_bracket(X, Z, p);
  Vec byz = lie_bracket(Y, Z, p);
  double u1 = J.apply(p.coords, bxy).dot(zp);
  double u2 = J.apply(p.coords, bxz).dot(yp);
  double u3 = J.apply(p.coords, byz).dot(xp);
  return t1 - t2 + t3 - u1 + u2 - u3;
}

Vec covariant_derivative(const LevelSetManifold& M, const VectorField& X, const Point& p,
                         const Vec& v) {
  require_tangent(X, p);
  if (M.tangency_error(p.coords, v) > M.tol().tangency)
    throw TangencyViolation("direction not tangent to " + M.name());
  return M.project_tangent(p, X.derivative(p.coords, v));
}

double killing_residual(const LevelSetManifold& M, const VectorField& X, const Point& p,
                        const Vec& v, const Vec& w) {
  Vec dv = covariant_derivative(M, X, p, v);
  Vec dw = covariant_derivative(M, X, p, w);
  return dv.dot(w) + dw.dot(v);
}

Vec lie_derivative_endo(const VectorField& xi, const EndoField& J, const VectorField& X,
                        const Point& p) {
  VectorField JX = endo_applied(J, X);
  Vec term1 = lie_bracket(xi, JX, p);
  Vec term2 = J.apply(p.coords, lie_bracket(xi, X, p));
  return term1 - term2;
}

}  // namespace hopfcx
