#include <doctest.h>

#include "hopfcx/errors.hpp"
#include "hopfcx/hopf.hpp"
#include "hopfcx/instances.hpp"
#include "hopfcx/rng.hpp"

using namespace hopfcx;

namespace {

VerifyOptions quick() {
  VerifyOptions o;
  o.samples = 10;
  o.tangent_args = 4;
  o.workers = 2;
  return o;
}

const CheckRecord* find(const VerificationReport& rep, const std::string& id) {
  for (const auto& c : rep.checks)
    if (c.id == id) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("fiber matrix admissibility") {
  CHECK(FiberMatrix::standard().admissible());
  CHECK(FiberMatrix{1.0, -2.0, 1.0, -1.0}.admissible());  // det = -1 + 2 = 1
  CHECK_FALSE(FiberMatrix{1.0, 0.0, 0.0, 1.0}.admissible());

  for (int t = 0; t < 20; ++t) {
    FiberMatrix m = random_admissible_fiber_matrix(99, t);
    CHECK(std::abs(m.trace()) < 1e-14);
    CHECK(m.det() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("build_J rejects inadmissible matrices") {
  auto inst = product_instance(1);
  CHECK_THROWS_AS((void)build_J(*inst.bundle, FiberMatrix{1.0, 0.0, 0.0, 1.0}), BadFiberMatrix);
  CHECK_THROWS_AS((void)fiber_matrix_for_real_scale(0.5), BadFiberMatrix);
  CHECK(fiber_matrix_for_real_scale(2.0).is_standard());

  // accepted non-standard matrix keeps J^2 = -I
  JStructure J = build_J(*inst.bundle, FiberMatrix{1.0, -2.0, 1.0, -1.0});
  auto pts = inst.manifold->sample(5, 3);
  Rng rng(5);
  for (const auto& p : pts) {
    Vec g(inst.manifold->ambient_dim());
    for (int i = 0; i < g.size(); ++i) g[i] = rng.next_gaussian();
    Vec u = inst.manifold->project_tangent(p, g);
    CHECK((J.endo.apply(p.coords, J.endo.apply(p.coords, u)) + u).norm() < 1e-12);
  }
}

TEST_CASE("standard bullets: J xi_3 = xi*, J xi* = -xi_3") {
  auto inst = product_instance(1);
  JStructure J = build_J(*inst.bundle, FiberMatrix::standard());
  for (const auto& p : inst.manifold->sample(5, 7)) {
    Vec xi3 = inst.bundle->vertical[2](p.coords);
    Vec xs = inst.bundle->xi_star(p.coords);
    CHECK((J.endo.apply(p.coords, xi3) - xs).norm() < 1e-13);
    CHECK((J.endo.apply(p.coords, xs) + xi3).norm() < 1e-13);
  }
}

TEST_CASE("build_bundle flags constructed violations") {
  auto good = product_instance(1);
  const auto& b = *good.bundle;

  // one vertical sign flipped: the bracket convention fails
  auto flipped = b.vertical;
  VectorField v0 = flipped[0];
  flipped[0] = VectorField("-xi_1", v0.dim(), [v0](auto x, auto out) {
    v0.eval(x, out);
    for (size_t i = 0; i < out.size(); ++i) out[i] = -out[i];
  });
  CHECK_THROWS_WITH_AS(
      (void)build_bundle(b.name, good.manifold, flipped, b.xi_star, b.phi_hat, b.right_action),
      doctest::Contains("bracket_convention"), StructureViolation);

  // xi* not orthogonal to the verticals
  VectorField xs = b.xi_star;
  VectorField v1 = b.vertical[0];
  VectorField bad_xs("xi*+xi_1", xs.dim(), [xs, v1](auto x, auto out) {
    using T = std::remove_cvref_t<decltype(out[0])>;
    std::vector<T> a(out.size());
    xs.eval(x, std::span<T>(a));
    v1.eval(x, out);
    for (size_t i = 0; i < out.size(); ++i) out[i] = a[i] + 0.5 * out[i];
  });
  CHECK_THROWS_WITH_AS(
      (void)build_bundle(b.name, good.manifold, b.vertical, bad_xs, b.phi_hat, b.right_action),
      doctest::Contains("xistar"), StructureViolation);
}

TEST_CASE("horizontal prime projector") {
  auto prod = product_instance(1);
  for (const auto& p : prod.manifold->sample(5, 11)) {
    Mat P = horizontal_prime_projector(*prod.bundle, p);
    CHECK(P.norm() < 1e-12);  // H' = 0 on S^1 x S^3
  }

  auto st = stiefel_complex(2);
  for (const auto& p : st.manifold->sample(5, 13)) {
    Mat P = horizontal_prime_projector(*st.bundle, p);
    CHECK(P.trace() == doctest::Approx(4.0).epsilon(1e-10));  // dim 8 - 4
    CHECK((P * P - P).norm() < 1e-12);
    CHECK((P * st.bundle->vertical[1](p.coords)).norm() < 1e-12);
  }
}

TEST_CASE("curvature of the flat product bundle") {
  auto prod = product_instance(5);
  const auto& b = *prod.bundle;
  Rng rng(17);
  for (const auto& p : prod.manifold->sample(5, 17)) {
    Mat P = horizontal_prime_projector(b, p);
    Vec g1(P.rows()), g2(P.rows());
    for (int i = 0; i < P.rows(); ++i) {
      g1[i] = rng.next_gaussian();
      g2[i] = rng.next_gaussian();
    }
    Vec X = P * g1, Y = P * g2;
    for (int i = 0; i < 3; ++i) {
      double om = curvature(b, i, X, Y, p);
      CHECK(std::abs(om) < 1e-12);
      CHECK(curvature(b, i, Y, X, p) == doctest::Approx(-om).epsilon(1e-12));
    }
    // non-horizontal argument is rejected
    CHECK_THROWS_AS((void)curvature(b, 0, b.vertical[0](p.coords), Y, p), TangencyViolation);
  }
}

TEST_CASE("curvature values are extension independent on a curved instance") {
  auto st = stiefel_complex(2);
  const auto& b = *st.bundle;
  const auto& M = *st.manifold;
  Rng rng(19);
  for (const auto& p : M.sample(5, 19)) {
    Mat P = horizontal_prime_projector(b, p);
    Vec g1(P.rows()), g2(P.rows());
    for (int i = 0; i < P.rows(); ++i) {
      g1[i] = rng.next_gaussian();
      g2[i] = rng.next_gaussian();
    }
    Vec X = P * g1, Y = P * g2;
    OneForm eta = b.eta_hat(1);
    double d1 = exterior_d(eta, tangent_extension(M, p, X), tangent_extension(M, p, Y), p);
    double d2 = exterior_d(eta, tangent_extension_perturbed(M, p, X, 23),
                           tangent_extension_perturbed(M, p, Y, 29), p);
    CHECK(std::isfinite(d1));
    CHECK(std::abs(d1 - d2) < 1e-8);
  }
}

TEST_CASE("nijenhuis degeneracies and the flat harness") {
  auto prod = product_instance(1);
  JStructure J = build_J(*prod.bundle, FiberMatrix::standard());
  Rng rng(23);
  for (const auto& p : prod.manifold->sample(5, 23)) {
    Vec g(prod.manifold->ambient_dim());
    for (int i = 0; i < g.size(); ++i) g[i] = rng.next_gaussian();
    Vec a = prod.manifold->project_tangent(p, g);
    CHECK(nijenhuis(J, a, a, p).norm() < 1e-12);  // N(A, A) = 0
  }

  // constant complex structure on flat C^2: identically integrable
  auto Fl = make_flat(4);
  EndoField Jc("Jc", 4, [](auto, auto u, auto out) {
    out[0] = -u[1];
    out[1] = u[0];
    out[2] = -u[3];
    out[3] = u[2];
  });
  Mat A = Mat::Random(4, 4), B = Mat::Random(4, 4);
  Point q = Fl->make_point(Vec::Random(4));
  VectorField X = linear_field(A), Y = linear_field(B);
  VectorField JX = endo_applied(Jc, X), JY = endo_applied(Jc, Y);
  Vec n = lie_bracket(X, Y, q) + Jc.apply(q.coords, lie_bracket(JX, Y, q)) +
          Jc.apply(q.coords, lie_bracket(X, JY, q)) - lie_bracket(JX, JY, q);
  CHECK(n.norm() < 1e-12);
}

TEST_CASE("falsification: broken phi-hat is caught and localized") {
  auto st = stiefel_complex(2);
  const auto& good = *st.bundle;
  // identity on H': fails J^2 = -I on H' and the horizontal Nijenhuis case
  EndoField broken("id-on-H'", good.total->ambient_dim(),
                   [vert = good.vertical, xs = good.xi_star](auto x, auto u, auto out) {
                     subtract_frame_components_level(vert, xs, x, u, out);
                   });
  HopfBundleInstance bb{good.name, st.manifold, good.vertical, good.xi_star, broken,
                        good.right_action};
  JStructure J = build_J(bb, FiberMatrix::standard());
  auto rep = verify_complex_structure(J, quick());
  CHECK_FALSE(rep.all_passed());
  CHECK(find(rep, "J.square")->status == CheckStatus::Fail);
  CHECK(find(rep, "nijenhuis.case_h_h")->status == CheckStatus::Fail);
  // the exact fiber cases stay clean, so the failure is localized to H'
  CHECK(find(rep, "nijenhuis.case_fiber12")->status == CheckStatus::Pass);
  CHECK(find(rep, "nijenhuis.case_fiber_mixed")->status == CheckStatus::Pass);
  CHECK(find(rep, "nijenhuis.case_vert_reeb")->status == CheckStatus::Pass);
}

TEST_CASE("theorem conditions on the flat product and the n=1 level set") {
  auto prod = product_instance(5);
  auto rep = check_theorem_conditions(*prod.bundle, quick());
  CHECK(rep.all_passed());
  for (const auto& c : rep.checks)
    if (c.status == CheckStatus::Pass) CHECK(c.max_residual < 1e-10);

  auto st1 = stiefel_complex(1);
  auto rep1 = check_theorem_conditions(*st1.bundle, quick());
  CHECK(rep1.all_passed());
  CHECK(find(rep1, "curvature.phi_invariance")->status == CheckStatus::VacuousPass);
  CHECK(find(rep1, "curvature.reeb_horizontal")->status == CheckStatus::VacuousPass);
  CHECK(find(rep1, "curvature.vertical_mixed")->max_residual < 1e-10);
}

TEST_CASE("integrability of the product instances for random admissible matrices") {
  for (int base : {1, 5}) {
    auto inst = product_instance(base);
    for (int t = 0; t < 2; ++t) {
      FiberMatrix m = random_admissible_fiber_matrix(7, t);
      JStructure J = build_J(*inst.bundle, m);
      auto rep = verify_complex_structure(J, quick());
      INFO("base ", base, " matrix ", t);
      CHECK(rep.all_passed());
      CHECK(find(rep, "nijenhuis.total")->max_residual < 1e-7);
    }
  }
}

TEST_CASE("automorphism and non-Kaehler checks on the Hopf surface") {
  auto inst = product_instance(1);
  JStructure J = build_J(*inst.bundle, FiberMatrix::standard());
  VerifyOptions o = quick();
  o.samples = 20;
  auto rep = automorphism_and_nonkaehler_checks(J, o);
  CHECK(rep.all_passed());
  CHECK(find(rep, "automorphism.xi_star")->max_residual < 1e-8);
  CHECK(find(rep, "automorphism.xi_3")->max_residual < 1e-8);
  CHECK(find(rep, "nonkaehler.domega_witness")->status == CheckStatus::Pass);

  // flat harness with constant J: d omega vanishes identically
  auto Fl = make_flat(4);
  EndoField Jc("Jc", 4, [](auto, auto u, auto out) {
    out[0] = -u[1];
    out[1] = u[0];
    out[2] = -u[3];
    out[3] = u[2];
  });
  Point q = Fl->make_point(Vec::Random(4));
  Rng rng(31);
  for (int t = 0; t < 5; ++t) {
    Vec a(4), bvec(4), c(4);
    for (int i = 0; i < 4; ++i) {
      a[i] = rng.next_gaussian();
      bvec[i] = rng.next_gaussian();
      c[i] = rng.next_gaussian();
    }
    double d = d_omega(Jc, constant_field(4, a), constant_field(4, bvec), constant_field(4, c), q);
    CHECK(std::abs(d) < 1e-13);
  }
}
