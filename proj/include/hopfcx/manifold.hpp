#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hopfcx/smooth_map.hpp"

namespace hopfcx {

struct Tolerances {
  double feasibility = 1e-10;
  double tangency = 1e-8;
  double tensoriality = 1e-8;
  int newton_max_iter = 50;
  double rank_threshold = 1e-6;  // singular values below this count as zero
};

class LevelSetManifold;

// A feasible point of a level-set manifold. Constructed through the owning
// manifold, which validates |F| against the feasibility tolerance.
struct Point {
  Vec coords;
  const LevelSetManifold* owner = nullptr;
};

struct TangentVector {
  Point base;
  Vec dir;
};

// Submanifold {x in R^M : F(x) = 0} of Euclidean space, with F smooth,
// full row rank at regular points, and expected_dim = M - out_dim(F). The
// metric is always the restriction of the ambient Euclidean inner product.
class LevelSetManifold {
 public:
  LevelSetManifold(std::string name, ConstraintMap constraint, Tolerances tol = {});

  const std::string& name() const { return name_; }
  int ambient_dim() const { return constraint_.in_dim(); }
  int codim() const { return constraint_.out_dim(); }
  int expected_dim() const { return ambient_dim() - codim(); }
  const ConstraintMap& constraint() const { return constraint_; }
  const Tolerances& tol() const { return tol_; }

  Vec residual(const Vec& x) const { return constraint_.value(x); }
  double feasibility_error(const Vec& x) const;
  bool is_feasible(const Vec& x) const;

  // Wraps already-feasible coordinates; throws if infeasible.
  Point make_point(const Vec& x) const;

  // Gauss-Newton retraction onto F = 0. Feasible inputs are returned
  // unchanged (exact fixed point). Throws NoConvergence.
  Point project(const Vec& x) const;

  // Orthogonal projector onto the tangent space at p (symmetric, idempotent,
  // rank expected_dim). Throws RankDeficient at irregular points.
  Mat tangent_projector(const Point& p) const;

  // Applies the tangent projector without forming the matrix.
  Vec project_tangent(const Point& p, const Vec& v) const;

  // |JF(x) v|, the defect of v from tangency at x.
  double tangency_error(const Vec& x, const Vec& v) const;

  // Numerical rank of JF(x) via singular values.
  int jacobian_rank(const Vec& x) const;

  // Deterministic rejection sampling: ambient Gaussian seeds (optionally
  // preprocessed) followed by Newton projection. Stream (seed, index,
  // attempt) makes the output independent of how work is scheduled.
  std::vector<Point> sample(int count, std::uint64_t seed) const;

  // Hook mapping a raw ambient Gaussian vector to the Newton initial guess
  // (e.g. factor-wise normalization or Gram-Schmidt frames).
  void set_sample_initializer(std::function<Vec(const Vec&)> init) { init_ = std::move(init); }

 private:
  std::string name_;
  ConstraintMap constraint_;
  Tolerances tol_;
  std::function<Vec(const Vec&)> init_;
};

// Convenience: the unit sphere |x|^2 = 1 in R^dim.
std::shared_ptr<LevelSetManifold> make_sphere(int ambient_dim, std::string name = "");

// Whole-space "manifold" with no constraints (flat test harness).
std::shared_ptr<LevelSetManifold> make_flat(int ambient_dim, std::string name = "");

}  // namespace hopfcx
