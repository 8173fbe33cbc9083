#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>

#include "hopfcx/calculus.hpp"
#include "hopfcx/fields.hpp"
#include "hopfcx/manifold.hpp"
#include "hopfcx/quaternion.hpp"
#include "hopfcx/report.hpp"
#include "hopfcx/sasaki.hpp"

namespace hopfcx {

// Total space of an induced S^3-bundle, carried entirely upstairs: three
// vertical fields (fundamental fields of the right action), the horizontal
// unit field xi*, and the phi-hat candidate acting on H', the horizontal
// complement of xi*. Duals eta-hat_i are metric duals of the verticals.
struct HopfBundleInstance {
  std::string name;
  std::shared_ptr<const LevelSetManifold> total;
  std::array<VectorField, 3> vertical;
  VectorField xi_star;
  EndoField phi_hat;
  // Ambient matrix of the right action h -> h q (or its instance analog);
  // used for the connection-equivariance checks.
  std::function<Mat(const Quaternion&)> right_action;

  int hprime_dim() const { return total->expected_dim() - 4; }
  OneForm eta_hat(int i) const { return OneForm{vertical[i]}; }
};

// Constant real 2x2 matrix acting on span(xi*, xi_3):
// J xi* = alpha xi* + beta xi_3, J xi_3 = gamma xi* + delta xi_3.
// Admissible when trace = 0 and determinant = 1; (0,-1,1,0) reproduces the
// standard J xi_3 = xi*, J xi* = -xi_3.
struct FiberMatrix {
  double alpha = 0.0, beta = -1.0, gamma = 1.0, delta = 0.0;

  static FiberMatrix standard() { return {}; }
  double trace() const { return alpha + delta; }
  double det() const { return alpha * delta - beta * gamma; }
  bool admissible(double tol = 1e-12) const {
    return std::abs(trace()) < tol && std::abs(det() - 1.0) < tol;
  }
  bool is_standard() const {
    return alpha == 0.0 && beta == -1.0 && gamma == 1.0 && delta == 0.0;
  }
};

// Draws trace-0, det-1 matrices with entries O(1).
FiberMatrix random_admissible_fiber_matrix(std::uint64_t seed, std::uint64_t index);

// Real fiber scale factors correspond to the standard matrix; the general
// complex family is parametrized here by the admissible matrix directly.
FiberMatrix fiber_matrix_for_real_scale(double scale);

// The constructed almost complex structure: J xi_1 = xi_2, J xi_2 = -xi_1,
// the fiber matrix on span(xi*, xi_3), and J = phi-hat on H'. Evaluation
// decomposes the input against the pointwise frame; no global frame is used.
struct JStructure {
  HopfBundleInstance bundle;
  FiberMatrix fiber;
  EndoField endo;
};

// Container-invariant probes: vertical tangency/orthonormality/Killing,
// bracket convention, xi* unit and orthogonal, right-action equivariance of
// the horizontal distribution, and phi-hat mapping H' to H' equivariantly.
std::vector<CheckRecord> probe_bundle(const HopfBundleInstance& b, const VerifyOptions& opts);

// Probe budget used when validating at construction time.
VerifyOptions bundle_probe_defaults();

// Validates the container invariants on a seeded probe set; throws
// StructureViolation listing every failed check.
HopfBundleInstance build_bundle(std::string name, std::shared_ptr<const LevelSetManifold> total,
                                std::array<VectorField, 3> verticals, VectorField xi_star,
                                EndoField phi_hat,
                                std::function<Mat(const Quaternion&)> right_action,
                                const VerifyOptions& opts = bundle_probe_defaults());

// Orthogonal projector onto H' at p (annihilates the verticals and xi*).
Mat horizontal_prime_projector(const HopfBundleInstance& b, const Point& p);

// d eta-hat_i evaluated on tangent extensions of two horizontal vectors;
// the vertical parts of the connection curvature. Throws TangencyViolation
// if X or Y is not horizontal at p.
double curvature(const HopfBundleInstance& b, int i, const Vec& X, const Vec& Y, const Point& p);

// Residuals of the integrability conditions on the curvature form:
//   d eta-hat_i(phi X, phi Y) = d eta-hat_i(X, Y)   (X, Y in H')
//   d eta-hat_i(X, xi*) = 0                         (X in H')
//   d eta-hat_k(xi_i, xi*) = 0
VerificationReport check_theorem_conditions(const HopfBundleInstance& b, const VerifyOptions& opts);

// Assembles the almost complex structure for an admissible fiber matrix.
// Throws BadFiberMatrix when trace/det are violated (tol 1e-12).
JStructure build_J(const HopfBundleInstance& b, const FiberMatrix& m);

// Nijenhuis tensor [J,J](A,B) = [A,B] + J[JA,B] + J[A,JB] - [JA,JB] on
// tangent extensions of a and b.
Vec nijenhuis(const JStructure& J, const Vec& a, const Vec& b, const Point& p);

// Same, on caller-supplied tangent fields.
Vec nijenhuis_fields(const JStructure& J, const VectorField& A, const VectorField& B,
                     const Point& p);

// Full integrability report: J^2 = -I, Hermitian compatibility (H' and
// fiber-plane recorded separately), the curvature conditions, the total
// Nijenhuis sup, the per-case residuals mirroring the vertical/horizontal
// argument positions, and an extension-independence cross-check.
VerificationReport verify_complex_structure(const JStructure& J, const VerifyOptions& opts);

// L_{xi*} J and L_{xi_3} J residuals, plus the non-closedness witness for
// the Kaehler form omega(X,Y) = g(JX, Y): the fraction of sampled tangent
// triples with |d omega| above 1e-3.
VerificationReport automorphism_and_nonkaehler_checks(const JStructure& J,
                                                      const VerifyOptions& opts);

// --- frame-complement projection, shared with the instance catalog --------

// out = u minus its Gram components along the four frame fields (verticals
// and xi*); smooth in x. For tangent u at on-shell points this is the
// orthogonal projection onto H'.
template <class T>
void subtract_frame_components_level(const std::array<VectorField, 3>& vertical,
                                     const VectorField& xi_star, std::span<const T> x,
                                     std::span<const T> u, std::span<T> out) {
  const int m = static_cast<int>(x.size());
  std::vector<T> frame(static_cast<size_t>(4) * m);
  for (int i = 0; i < 3; ++i) vertical[i].eval(x, std::span<T>(frame).subspan(i * m, m));
  xi_star.eval(x, std::span<T>(frame).subspan(3 * m, m));
  std::vector<T> G(16, T(0.0)), rhs(4, T(0.0));
  for (int r = 0; r < 4; ++r) {
    for (int s = 0; s <= r; ++s) {
      T acc(0.0);
      for (int t = 0; t < m; ++t)
        acc += frame[static_cast<size_t>(r) * m + t] * frame[static_cast<size_t>(s) * m + t];
      G[r * 4 + s] = acc;
      G[s * 4 + r] = acc;
    }
    T acc(0.0);
    for (int t = 0; t < m; ++t) acc += frame[static_cast<size_t>(r) * m + t] * u[t];
    rhs[r] = acc;
  }
  solve_linear_inplace(4, G, rhs.data());
  for (int t = 0; t < m; ++t) {
    T acc = u[t];
    for (int r = 0; r < 4; ++r) acc -= rhs[r] * frame[static_cast<size_t>(r) * m + t];
    out[t] = acc;
  }
}

}  // namespace hopfcx
