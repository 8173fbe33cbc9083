#pragma once

#include <array>
#include <cstdint>
#include <memory>

#include "hopfcx/calculus.hpp"
#include "hopfcx/fields.hpp"
#include "hopfcx/manifold.hpp"
#include "hopfcx/report.hpp"

namespace hopfcx {

struct VerifyOptions {
  long samples = 200;
  int tangent_args = 20;       // random tangent pairs (or triples) per point
  std::uint64_t seed = 42;
  double tol_override = 0.0;   // <= 0 keeps each check's pinned tolerance
  int workers = 1;
};

// (phi, xi, eta, g) on a level-set manifold; g is always the ambient
// restriction and eta the metric dual of xi, so only xi and phi are stored.
struct SasakianStructure {
  std::string name;
  std::shared_ptr<const LevelSetManifold> manifold;
  VectorField xi;
  EndoField phi;
  int reeb_sign = -1;

  OneForm eta() const { return OneForm{xi}; }
};

// Three mutually orthogonal unit Killing fields with the quaternionic
// bracket relations [xi_i, xi_j] = 2 eps_{ijk} xi_k.
struct ThreeSasakianTriple {
  std::string name;
  std::shared_ptr<const LevelSetManifold> manifold;
  std::array<VectorField, 3> xi;

  OneForm eta(int i) const { return OneForm{xi[i]}; }
};

// Reeb sign selected once by the convention audit: with the engine's
// exterior-derivative convention, xi = -ix is the choice satisfying the
// contact identity on unit spheres (it matches the S^3 fields -ix,-jx,-kx).
inline constexpr int kAuditedReebSign = -1;

// Sasakian structure of the unit sphere S^m in C^{(m+1)/2}: xi(x) = sign*ix,
// phi = tangential projection of multiplication by i. Throws BadDimension
// for even m.
SasakianStructure standard_sphere_sasaki(int m, int reeb_sign = kAuditedReebSign);

// The 1-dimensional base (phi = 0 is forced).
SasakianStructure trivial_circle_sasaki();

// Left-multiplication triple xi_i(x) = -sigma_i x on S^{4n+3} in H^{n+1}.
ThreeSasakianTriple sphere_three_sasaki(int n);

// The Sasakian structure carried by one leg of a triple (phi_i = tangential
// projection of left multiplication by sigma_i).
SasakianStructure sasaki_from_triple(const ThreeSasakianTriple& T, int i);

// Per-axiom residual report: unit Killing Reeb, eta(xi)=1, phi^2 = -I +
// eta (x) xi, the contact identity, and normality (standard tensor plus the
// literal horizontal-argument variant, reported separately).
VerificationReport verify_sasakian(const SasakianStructure& S, const VerifyOptions& opts);

// Orthonormality, Killing property and bracket conventions of a triple,
// including the exact value [xi_1, xi_3] = -2 xi_2.
VerificationReport verify_three_sasakian(const ThreeSasakianTriple& T, const VerifyOptions& opts);

// Runs the contact check for both signs of the Reeb candidate and returns
// the unique passing one.
int audit_reeb_sign(int m, const VerifyOptions& opts);

}  // namespace hopfcx
