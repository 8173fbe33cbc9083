#include <doctest.h>

#include "hopfcx/errors.hpp"
#include "hopfcx/manifold.hpp"
#include "hopfcx/moment_maps.hpp"
#include "hopfcx/rng.hpp"

using namespace hopfcx;

namespace {

std::shared_ptr<LevelSetManifold> mu_level_set(int n1) {
  ConstraintMap F(4 * n1, 4, [](auto x, auto out) {
    using T = std::remove_cvref_t<decltype(out[0])>;
    T norm(0.0);
    for (size_t i = 0; i < x.size(); ++i) norm += x[i] * x[i];
    out[0] = norm - 1.0;
    QuatT<T> mu = moment_component(x, QuatT<T>::i());
    out[1] = mu.x;
    out[2] = mu.y;
    out[3] = mu.z;
  });
  auto M = std::make_shared<LevelSetManifold>("mu-level", std::move(F));
  M->set_sample_initializer([](const Vec& raw) { return Vec(raw / raw.norm()); });
  return M;
}

}  // namespace

TEST_CASE("sphere projection is radial and idempotent") {
  auto S = make_sphere(5);
  Vec x(5);
  x << 2.0, 0.0, 1.0, -1.0, 0.5;
  Point p = S->project(x);
  CHECK((p.coords - x / x.norm()).norm() < 1e-12);

  // feasible input: exact fixed point
  Point q = S->project(p.coords);
  CHECK((q.coords - p.coords).norm() == 0.0);
}

TEST_CASE("projection onto the mu level set from random ambient points") {
  auto M = mu_level_set(3);  // n = 2
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    Vec x(12);
    for (int i = 0; i < 12; ++i) x[i] = rng.next_gaussian();
    Point p = M->project(x);
    CHECK(M->feasibility_error(p.coords) < 1e-10);
  }
}

TEST_CASE("tangent projector on the sphere") {
  auto S = make_sphere(4);
  Vec e1 = Vec::Zero(4);
  e1[0] = 1.0;
  Point p = S->make_point(e1);
  Mat P = S->tangent_projector(p);
  Mat expect = Mat::Identity(4, 4) - e1 * e1.transpose();
  CHECK((P - expect).norm() < 1e-14);
  CHECK((P * P - P).norm() < 1e-12);

  // trace equals the manifold dimension over sampled points
  for (const auto& q : S->sample(20, 3)) {
    Mat Pq = S->tangent_projector(q);
    CHECK(Pq.trace() == doctest::Approx(3.0).epsilon(1e-12));
    CHECK((Pq - Pq.transpose()).norm() < 1e-12);
  }
}

TEST_CASE("tangent projector trace on the mu level set") {
  auto M = mu_level_set(2);  // n = 1, dimension 4
  for (const auto& p : M->sample(20, 11)) {
    Mat P = M->tangent_projector(p);
    CHECK(P.trace() == doctest::Approx(4.0).epsilon(1e-10));
    CHECK((P * P - P).norm() < 1e-12);
  }
}

TEST_CASE("rank-deficient constraint is reported") {
  // duplicated constraint row: declared codim 2 but rank 1 everywhere
  ConstraintMap F(3, 2, [](auto x, auto out) {
    out[0] = x[0] - 1.0;
    out[1] = x[0] - 1.0;
  });
  LevelSetManifold M("degenerate", std::move(F));
  Vec x(3);
  x << 1.0, 0.3, -0.2;
  Point p = M.make_point(x);
  CHECK_THROWS_AS((void)M.tangent_projector(p), RankDeficient);
}

TEST_CASE("sampling determinism and degenerate count") {
  auto S = make_sphere(6);
  auto a = S->sample(10, 42);
  auto b = S->sample(10, 42);
  REQUIRE(a.size() == 10);
  for (int i = 0; i < 10; ++i) {
    CHECK((a[i].coords - b[i].coords).norm() == 0.0);  // bit-exact
    CHECK(std::abs(a[i].coords.norm() - 1.0) < 1e-12);
  }
  auto c = S->sample(10, 43);
  CHECK((a[0].coords - c[0].coords).norm() > 1e-3);  // seed matters

  CHECK(S->sample(0, 42).empty());
}

TEST_CASE("feasible sampling on the nu level set") {
  ConstraintMap F(16, 10, [](auto x, auto out) {
    using T = std::remove_cvref_t<decltype(out[0])>;
    T norm(0.0);
    for (size_t i = 0; i < x.size(); ++i) norm += x[i] * x[i];
    out[0] = norm - 1.0;
    auto nu = moment_nu_flat(x);
    int idx = 1;
    for (const auto& c : nu) {
      out[idx++] = c.x;
      out[idx++] = c.y;
      out[idx++] = c.z;
    }
  });
  LevelSetManifold M("nu-level", std::move(F));
  M.set_sample_initializer([](const Vec& raw) { return Vec(raw / raw.norm()); });
  auto pts = M.sample(10, 9);
  for (const auto& p : pts) CHECK(M.feasibility_error(p.coords) < 1e-10);
}

TEST_CASE("make_point rejects infeasible coordinates") {
  auto S = make_sphere(3);
  Vec x(3);
  x << 2.0, 0.0, 0.0;
  CHECK_THROWS_AS((void)S->make_point(x), Error);
}

TEST_CASE("flat harness has identity projector") {
  auto M = make_flat(4);
  Vec x = Vec::Zero(4);
  Point p = M->make_point(x);
  CHECK((M->tangent_projector(p) - Mat::Identity(4, 4)).norm() == 0.0);
  CHECK(M->feasibility_error(x) == 0.0);
}
