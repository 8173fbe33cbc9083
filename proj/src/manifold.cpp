#include "hopfcx/manifold.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "hopfcx/errors.hpp"
#include "hopfcx/rng.hpp"

namespace hopfcx {

LevelSetManifold::LevelSetManifold(std::string name, ConstraintMap constraint, Tolerances tol)
    : name_(std::move(name)), constraint_(std::move(constraint)), tol_(tol) {}

double LevelSetManifold::feasibility_error(const Vec& x) const {
  if (codim() == 0) return 0.0;
  return residual(x).norm();
}

bool LevelSetManifold::is_feasible(const Vec& x) const {
  return feasibility_error(x) < tol_.feasibility;
}

Point LevelSetManifold::make_point(const Vec& x) const {
  if (!is_feasible(x))
    throw Error(name_ + ": point infeasible, |F| = " + std::to_string(feasibility_error(x)));
  return Point{x, this};
}

Point LevelSetManifold::project(const Vec& x) const {
  if (is_feasible(x)) return Point{x, this};
  // Newton iterates until machine-level residuals, well inside the
  // feasibility tolerance, so downstream field residuals are not capped by
  // the acceptance threshold for points.
  const double target = std::min(tol_.feasibility * 1e-4, 1e-14);
  Vec y = x;
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < tol_.newton_max_iter; ++it) {
    Vec f = constraint_.value(y);
    double nf = f.norm();
    if (nf < target) return Point{y, this};
    if (nf >= 0.9 * prev) {
      // stalled; accept if inside the feasibility tolerance
      if (nf < tol_.feasibility) return Point{y, this};
      throw NoConvergence(name_ + ": Newton projection stalled at |F| = " + std::to_string(nf));
    }
    prev = nf;
    Mat J = constraint_.jacobian(y);
    // minimum-norm Gauss-Newton step: y -= J^T (J J^T)^{-1} f
    Mat G = J * J.transpose();
    Eigen::LDLT<Mat> ldlt(G);
    if (ldlt.info() != Eigen::Success)
      throw NoConvergence(name_ + ": singular Gram matrix during projection");
    y -= J.transpose() * ldlt.solve(f);
    if (!y.allFinite()) throw NoConvergence(name_ + ": projection diverged");
  }
  if (constraint_.value(y).norm() < tol_.feasibility) return Point{y, this};
  throw NoConvergence(name_ + ": Newton projection did not converge in " +
                      std::to_string(tol_.newton_max_iter) + " iterations");
}

Mat LevelSetManifold::tangent_projector(const Point& p) const {
  const int m = ambient_dim();
  Mat P = Mat::Identity(m, m);
  if (codim() == 0) return P;
  Mat J = constraint_.jacobian(p.coords);
  Eigen::JacobiSVD<Mat> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s[i] > tol_.rank_threshold * s[0]) ++rank;
  if (rank != codim())
    throw RankDeficient(name_ + ": Jacobian rank " + std::to_string(rank) + " below declared " +
                        std::to_string(codim()));
  Mat V = svd.matrixV().leftCols(rank);
  P -= V * V.transpose();
  return P;
}

Vec LevelSetManifold::project_tangent(const Point& p, const Vec& v) const {
  Vec out(ambient_dim());
  project_tangent_level<double>(constraint_, {p.coords.data(), static_cast<size_t>(p.coords.size())},
                                {v.data(), static_cast<size_t>(v.size())},
                                {out.data(), static_cast<size_t>(out.size())});
  return out;
}

double LevelSetManifold::tangency_error(const Vec& x, const Vec& v) const {
  if (codim() == 0) return 0.0;
  return constraint_.jvp(x, v).norm();
}

int LevelSetManifold::jacobian_rank(const Vec& x) const {
  if (codim() == 0) return 0;
  Mat J = constraint_.jacobian(x);
  Eigen::JacobiSVD<Mat> svd(J);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s[i] > tol_.rank_threshold * s[0]) ++rank;
  return rank;
}

std::vector<Point> LevelSetManifold::sample(int count, std::uint64_t seed) const {
  std::vector<Point> pts;
  pts.reserve(count);
  const int m = ambient_dim();
  long long attempts = 0, failures = 0;
  constexpr int kMaxAttemptsPerPoint = 128;
  for (int idx = 0; idx < count; ++idx) {
    bool found = false;
    for (int a = 0; a < kMaxAttemptsPerPoint && !found; ++a) {
      ++attempts;
      Rng rng(seed, 0x5a, static_cast<std::uint64_t>(idx), static_cast<std::uint64_t>(a));
      Vec raw(m);
      for (int i = 0; i < m; ++i) raw[i] = rng.next_gaussian();
      Vec guess = init_ ? init_(raw) : raw;
      try {
        Point p = project(guess);
        if (jacobian_rank(p.coords) != codim()) {
          ++failures;
          continue;
        }
        pts.push_back(std::move(p));
        found = true;
      } catch (const NoConvergence&) {
        ++failures;
      }
    }
    if (!found)
      throw SamplingExhausted(name_ + ": rejection rate " + std::to_string(failures) + "/" +
                              std::to_string(attempts) + " while sampling");
  }
  return pts;
}

std::shared_ptr<LevelSetManifold> make_sphere(int ambient_dim, std::string name) {
  if (name.empty()) name = "S^" + std::to_string(ambient_dim - 1);
  ConstraintMap f(ambient_dim, 1, [](auto x, auto out) {
    using T = std::remove_cvref_t<decltype(out[0])>;
    T s(0.0);
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * x[i];
    out[0] = s - 1.0;
  });
  auto M = std::make_shared<LevelSetManifold>(std::move(name), std::move(f));
  M->set_sample_initializer([](const Vec& raw) { return Vec(raw / raw.norm()); });
  return M;
}

std::shared_ptr<LevelSetManifold> make_flat(int ambient_dim, std::string name) {
  if (name.empty()) name = "R^" + std::to_string(ambient_dim);
  ConstraintMap f(ambient_dim, 0, [](auto, auto) {});
  return std::make_shared<LevelSetManifold>(std::move(name), std::move(f));
}

}  // namespace hopfcx
