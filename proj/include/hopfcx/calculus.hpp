#pragma once

#include "hopfcx/fields.hpp"
#include "hopfcx/manifold.hpp"

namespace hopfcx {

// First-order calculus on level-set manifolds. Brackets and derivatives use
// exact forward-mode directional differentiation of the ambient formulas;
// values restricted to the manifold agree with the intrinsic operations
// whenever the input fields are tangent along it.

// [X,Y](p) = DY(p)[X(p)] - DX(p)[Y(p)]. Throws TangencyViolation if either
// field fails the tangency check at p.
Vec lie_bracket(const VectorField& X, const VectorField& Y, const Point& p);

// Exterior derivative of a one-form by the Cartan formula (no 1/2 factor):
// d eta (X,Y) = X(eta(Y)) - Y(eta(X)) - eta([X,Y]).
double exterior_d(const OneForm& eta, const VectorField& X, const VectorField& Y, const Point& p);

// Cartan formula for the 3-form d omega with omega(U,V) = <J U, V>:
// sum of cyclic derivative terms minus bracket terms.
double d_omega(const EndoField& J, const VectorField& X, const VectorField& Y,
               const VectorField& Z, const Point& p);

// Levi-Civita connection of the induced metric via the Gauss formula:
// nabla_v X = tangential part of the ambient directional derivative.
Vec covariant_derivative(const LevelSetManifold& M, const VectorField& X, const Point& p,
                         const Vec& v);

// <nabla_v X, w> + <nabla_w X, v>; zero iff X is infinitesimally isometric
// in the directions v, w.
double killing_residual(const LevelSetManifold& M, const VectorField& X, const Point& p,
                        const Vec& v, const Vec& w);

// (L_xi J)(X) = [xi, J X] - J [xi, X], tensorial in X.
Vec lie_derivative_endo(const VectorField& xi, const EndoField& J, const VectorField& X,
                        const Point& p);

// d/dt <A(x+tv), B(x+tv)> at t=0 (derivative of the pointwise inner product
// of two fields along an ambient direction).
double derivative_of_inner(const VectorField& A, const VectorField& B, const Vec& x, const Vec& v);

}  // namespace hopfcx
