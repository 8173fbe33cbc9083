#pragma once

#include <cstdint>

#include "hopfcx/manifold.hpp"
#include "hopfcx/smooth_map.hpp"

namespace hopfcx {

// Pointwise-evaluable tensor fields are all ambient formulas; tangency is a
// checked property, never an assumption.
using VectorField = AmbientField;

// Metric dual of a vector field: value at (p, v) is <field(p), v> under the
// induced Euclidean metric.
struct OneForm {
  VectorField dual;

  double value(const Vec& x, const Vec& v) const { return dual(x).dot(v); }
};

// Canonical tangent extension of an ambient vector v near p:
// X(x) = P(x) v with P the smooth tangent projector. Exactly tangent on the
// manifold and differentiable where the constraint is regular.
VectorField tangent_extension(const LevelSetManifold& M, const Point& p, const Vec& v);

// Alternative extension used for tensoriality cross-checks:
// X(x) = P(x)(v + L(x - p)) with a seeded random linear perturbation L. It
// agrees with v at p but varies differently away from it.
VectorField tangent_extension_perturbed(const LevelSetManifold& M, const Point& p, const Vec& v,
                                        std::uint64_t seed);

// Pointwise composition x -> J(x) X(x).
VectorField endo_applied(const EndoField& J, const VectorField& X);

// Pointwise linear combination a X + b Y.
VectorField field_combination(double a, const VectorField& X, double b, const VectorField& Y);

// Constant ambient field.
VectorField constant_field(int dim, const Vec& v);

// Linear field x -> A x.
VectorField linear_field(const Mat& A);

}  // namespace hopfcx
