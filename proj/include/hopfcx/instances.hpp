#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "hopfcx/hopf.hpp"
#include "hopfcx/quaternion.hpp"

namespace hopfcx {

// One vertex of the finite sign/conjugation lattice: vertical signs with
// product +1 (the bracket convention fixes the rest), the xi* and phi-hat
// candidate signs, and the frame-embedding conjugation flag. 4*2*2*2 = 32.
struct ConventionPoint {
  std::array<int, 3> vertical_signs{1, 1, 1};
  int xi_star_sign = 1;
  int phihat_sign = 1;
  bool conjugate_first = false;  // conjugate u1 instead of u2 when embedding frames

  static std::vector<ConventionPoint> lattice();
  std::string label() const;
};

struct InstanceDescriptor {
  std::string name;
  int n = 0;
  int expected_dim = 0;
  ConventionPoint convention;
  std::shared_ptr<const LevelSetManifold> manifold;
  std::optional<HopfBundleInstance> bundle;
};

// {h in H^{n+1} : |h| = 1, mu(h) = 0} with right-action verticals
// xi_i(h) = s_i h sigma_i, candidate xi*(h) = s* i h, and phi-hat the
// H'-projection of left multiplication by s_phi i. Dimension 4n.
InstanceDescriptor stiefel_complex(int n, const ConventionPoint& conv = {});

// {|h| = 1, nu(h) = 0}, dimension 4n - 6; requires n >= 3.
InstanceDescriptor stiefel_real(int n, const ConventionPoint& conv = {});

// S^{base_dim} x S^3 with verticals from the fiber factor, xi* the base
// Reeb field and phi-hat the lift of the base phi; flat connection.
InstanceDescriptor product_instance(int base_dim, const ConventionPoint& conv = {});

// Orthonormal triples (e1, e2, e4) in R^7 with e4 _|_ e1 e2 under the Cayley
// product; dimension 14. Completion (e1, e2, e1 e2, e4) gives the 4-frame.
InstanceDescriptor g2_instance();

// Orthonormal 4-frames in R^8 spanning planes closed under the triple cross
// product: e4 = s X(e1, e2, e3); dimension 18. The sign s is the audit flag;
// the default makes the quaternionic frame (1, i, j, k) feasible.
InstanceDescriptor spin7_instance(int cross_sign = -1);

// h = (z + j w) with (z, w) = (u1, conj(u2))/sqrt(2) (or the flipped
// conjugation); mu(h) = 0 for Hermitian-orthonormal pairs. Throws NotAFrame.
QuaternionVector complex_pair_to_quaternion(const std::vector<std::complex<double>>& u1,
                                            const std::vector<std::complex<double>>& u2,
                                            bool conjugate_first = false);

// Orthonormal real 4-frame -> feasible point of the nu level set via
// u1 = (f1 + i f2)/sqrt(2), u2 = (f3 + i f4)/sqrt(2).
QuaternionVector real_frame_to_quaternion(const Vec& f1, const Vec& f2, const Vec& f3,
                                          const Vec& f4, bool conjugate_first = false);

// G2 frame completion (e1, e2, e4) -> (e1, e2, e1 e2, e4) as four R^7
// vectors packed in columns.
std::array<Vec, 4> g2_complete_frame(const Vec& e1, const Vec& e2, const Vec& e4);

// --- convention audit ------------------------------------------------------

struct AuditRow {
  int index = 0;
  ConventionPoint convention;
  bool constructible = false;
  std::string error;
  std::vector<CheckRecord> guaranteed;  // bundle invariants + the vertical-mixed curvature zero
  std::vector<CheckRecord> recorded;    // curvature conditions + Nijenhuis outcomes
  double worst_guaranteed = 0.0;
  double worst_recorded = 0.0;
  bool guaranteed_pass = false;
};

struct AuditReport {
  std::string instance;
  nlohmann::ordered_json manifest;
  std::vector<AuditRow> rows;  // ranked by worst recorded residual, stable by index

  bool any_guaranteed_pass() const;
  const AuditRow* default_row() const;  // the row for ConventionPoint{} defaults
  nlohmann::ordered_json to_json() const;
  std::string serialize() const;
};

// Enumerates the whole lattice for a bundle-carrying instance, runs the
// bundle invariants, the curvature conditions and the full Nijenhuis suite
// for each vertex, and ranks the vertices. Failures are data, not errors.
AuditReport convention_audit(const std::string& name, int n, const VerifyOptions& opts);

// Catalog construction by CLI name ("stiefel-complex", "stiefel-real",
// "product", "g2", "spin7").
InstanceDescriptor build_instance(const std::string& name, int n,
                                  const ConventionPoint& conv = {});

std::vector<std::string> instance_names();

}  // namespace hopfcx
