#include "hopfcx/sasaki.hpp"

#include <cmath>

#include "hopfcx/errors.hpp"
#include "hopfcx/parallel.hpp"
#include "hopfcx/quaternion.hpp"
#include "hopfcx/rng.hpp"

namespace hopfcx {

namespace {

constexpr std::uint64_t kDomainTangent = 0x7a;

// Multiplication by i on C^{N+1} stored as coordinate pairs (x, y).
template <class T>
void complex_i_apply(std::span<const T> u, std::span<T> out) {
  for (size_t t = 0; t + 1 < u.size(); t += 2) {
    out[t] = -u[t + 1];
    out[t + 1] = u[t];
  }
}

double eff_tol(const VerifyOptions& opts, double def) {
  return opts.tol_override > 0 ? opts.tol_override : def;
}

Vec random_unit_tangent(const LevelSetManifold& M, const Point& p, Rng& rng) {
  const int m = M.ambient_dim();
  for (int tries = 0; tries < 64; ++tries) {
    Vec g(m);
    for (int i = 0; i < m; ++i) g[i] = rng.next_gaussian();
    Vec v = M.project_tangent(p, g);
    double n = v.norm();
    if (n > 1e-8) return Vec(v / n);
  }
  throw Error(M.name() + ": could not draw a unit tangent vector");
}

struct PointErrors {
  std::vector<std::string> messages;  // one slot per point, empty = ok

  explicit PointErrors(long n) : messages(n) {}
  bool any() const {
    for (const auto& s : messages)
      if (!s.empty()) return true;
    return false;
  }
  std::string first() const {
    for (size_t i = 0; i < messages.size(); ++i)
      if (!messages[i].empty()) return "point " + std::to_string(i) + ": " + messages[i];
    return {};
  }
};

// Applies error status to every record when any sampled point failed.
void finalize(VerificationReport& rep, const PointErrors& errs) {
  if (!errs.any()) return;
  for (auto& c : rep.checks) {
    c.status = CheckStatus::Error;
    if (c.note.empty()) c.note = errs.first();
  }
}

}  // namespace

SasakianStructure standard_sphere_sasaki(int m, int reeb_sign) {
  if (m < 1 || m % 2 == 0)
    throw BadDimension("standard_sphere_sasaki requires odd m >= 1, got " + std::to_string(m));
  const int dim = m + 1;
  auto M = make_sphere(dim);
  double s = reeb_sign;
  VectorField xi("xi", dim, [s](auto x, auto out) {
    complex_i_apply(x, out);
    for (size_t i = 0; i < out.size(); ++i) out[i] = s * out[i];
  });
  EndoField phi("phi", dim, [](auto x, auto u, auto out) {
    using T = std::remove_cvref_t<decltype(out[0])>;
    complex_i_apply(u, out);
    T dot(0.0), nrm(0.0);
    for (size_t i = 0; i < x.size(); ++i) {
      dot += out[i] * x[i];
      nrm += x[i] * x[i];
    }
    T c = dot / nrm;
    for (size_t i = 0; i < x.size(); ++i) out[i] -= c * x[i];
  });
  return SasakianStructure{"sphere-sasaki(S^" + std::to_string(m) + ")", M, std::move(xi),
                           std::move(phi), reeb_sign};
}

SasakianStructure trivial_circle_sasaki() { return standard_sphere_sasaki(1); }

ThreeSasakianTriple sphere_three_sasaki(int n) {
  if (n < 0) throw BadDimension("sphere_three_sasaki requires n >= 0");
  const int dim = 4 * (n + 1);
  auto M = make_sphere(dim);
  std::array<VectorField, 3> xi;
  const Quaternion sigmas[3] = {Quaternion::i(), Quaternion::j(), Quaternion::k()};
  for (int i = 0; i < 3; ++i) {
    Quaternion sig = sigmas[i];
    xi[i] = VectorField("xi_" + std::to_string(i + 1), dim, [sig](auto x, auto out) {
      using T = std::remove_cvref_t<decltype(out[0])>;
      QuatT<T> sq(T(sig.w), T(sig.x), T(sig.y), T(sig.z));
      const int n1 = static_cast<int>(x.size() / 4);
      for (int a = 0; a < n1; ++a) set_quat(out, a, -qmul(sq, quat_at(x, a)));
    });
  }
  return ThreeSasakianTriple{"three-sasaki(S^" + std::to_string(dim - 1) + ")", M, std::move(xi)};
}

SasakianStructure sasaki_from_triple(const ThreeSasakianTriple& T, int i) {
  const int dim = T.manifold->ambient_dim();
  const Quaternion sigmas[3] = {Quaternion::i(), Quaternion::j(), Quaternion::k()};
  Quaternion sig = sigmas[i];
  EndoField phi("phi_" + std::to_string(i + 1), dim, [sig](auto x, auto u, auto out) {
    using S = std::remove_cvref_t<decltype(out[0])>;
    QuatT<S> sq(S(sig.w), S(sig.x), S(sig.y), S(sig.z));
    const int n1 = static_cast<int>(x.size() / 4);
    for (int a = 0; a < n1; ++a) set_quat(out, a, qmul(sq, quat_at(u, a)));
    S dot(0.0), nrm(0.0);
    for (size_t t = 0; t < x.size(); ++t) {
      dot += out[t] * x[t];
      nrm += x[t] * x[t];
    }
    S c = dot / nrm;
    for (size_t t = 0; t < x.size(); ++t) out[t] -= c * x[t];
  });
  return SasakianStructure{T.name + "/leg" + std::to_string(i + 1), T.manifold, T.xi[i],
                           std::move(phi), -1};
}

VerificationReport verify_sasakian(const SasakianStructure& S, const VerifyOptions& opts) {
  VerificationReport rep;
  rep.kind = "verify";
  rep.instance = S.name;
  const auto& M = *S.manifold;

  std::vector<Point> pts;
  try {
    pts = M.sample(static_cast<int>(opts.samples), opts.seed);
  } catch (const Error& e) {
    rep.append(vacuous_check("sampling", "feasible point generation", ""));
    rep.checks.back().status = CheckStatus::Error;
    rep.checks.back().note = e.what();
    return rep;
  }

  const long n = static_cast<long>(pts.size());
  const int ta = opts.tangent_args;
  std::vector<double> r_unit(n), r_eta(n), r_tangent(n);
  std::vector<double> r_killing(n * ta), r_phisq(n * ta), r_contact(n * ta), r_normal(n * ta);
  std::vector<double> r_literal(n * ta, -1.0);  // -1 marks skipped slots
  PointErrors errs(n);

  OneForm eta = S.eta();
  parallel_for(n, opts.workers, [&](long pi) {
    try {
      const Point& p = pts[pi];
      const Vec& x = p.coords;
      Vec xi_p = S.xi(x);
      r_unit[pi] = std::abs(xi_p.norm() - 1.0);
      r_eta[pi] = std::abs(xi_p.dot(xi_p) - 1.0);
      r_tangent[pi] = M.tangency_error(x, xi_p);

      for (int a = 0; a < ta; ++a) {
        Rng rng(opts.seed, kDomainTangent, static_cast<std::uint64_t>(pi), static_cast<std::uint64_t>(a));
        Vec v = random_unit_tangent(M, p, rng);
        Vec w = random_unit_tangent(M, p, rng);
        long slot = pi * ta + a;

        r_killing[slot] = std::abs(killing_residual(M, S.xi, p, v, w));

        Vec phiv = S.phi.apply(x, v);
        Vec phi2v = S.phi.apply(x, phiv);
        r_phisq[slot] = (phi2v + v - xi_p.dot(v) * xi_p).norm();

        VectorField V = tangent_extension(M, p, v), W = tangent_extension(M, p, w);
        double deta = exterior_d(eta, V, W, p);
        r_contact[slot] = std::abs(0.5 * deta - v.dot(S.phi.apply(x, w)));

        VectorField phiV = endo_applied(S.phi, V), phiW = endo_applied(S.phi, W);
        Vec b_pp = lie_bracket(phiV, phiW, p);
        Vec b_pw = lie_bracket(phiV, W, p);
        Vec b_vp = lie_bracket(V, phiW, p);
        Vec b_vw = lie_bracket(V, W, p);
        Vec torsion = b_pp - S.phi.apply(x, b_pw) - S.phi.apply(x, b_vp) +
                      S.phi.apply(x, S.phi.apply(x, b_vw));
        r_normal[slot] = (torsion + deta * xi_p).norm();

        // literal variant, arguments orthogonal to xi
        Vec vh = v - xi_p.dot(v) * xi_p;
        Vec wh = w - xi_p.dot(w) * xi_p;
        if (vh.norm() > 1e-6 && wh.norm() > 1e-6) {
          vh /= vh.norm();
          wh /= wh.norm();
          VectorField Vh = tangent_extension(M, p, vh), Wh = tangent_extension(M, p, wh);
          VectorField phiVh = endo_applied(S.phi, Vh), phiWh = endo_applied(S.phi, Wh);
          Vec bh = lie_bracket(phiVh, phiWh, p);
          double detah = exterior_d(eta, Vh, Wh, p);
          r_literal[slot] = (bh + detah * xi_p).norm();
        }
      }
    } catch (const Error& e) {
      errs.messages[pi] = e.what();
    }
  });

  std::vector<double> lit;
  for (double v : r_literal)
    if (v >= 0.0) lit.push_back(v);

  const double tol = eff_tol(opts, 1e-9);
  rep.append(make_check("reeb.unit", "|xi| = 1", r_unit, tol));
  rep.append(make_check("reeb.eta_xi", "eta(xi) = 1", r_eta, tol));
  rep.append(make_check("reeb.tangent", "xi tangent to the level set", r_tangent, tol));
  rep.append(make_check("reeb.killing", "L_xi g = 0", r_killing, tol));
  rep.append(make_check("phi.square", "phi^2 X = -X + eta(X) xi", r_phisq, tol));
  rep.append(make_check("contact.deta", "d eta(X,Y) = g(X, phi Y) [1/2-normalized d]", r_contact, tol));
  rep.append(make_check("normality.standard",
                        "[phi,phi](X,Y) + 2 d eta(X,Y) xi = 0 [1/2-normalized d]", r_normal, tol));
  if (lit.empty()) {
    rep.append(vacuous_check("normality.literal_horizontal",
                             "[phi X, phi Y] + 2 d eta(X,Y) xi = 0 for X,Y _|_ xi [1/2-normalized d]",
                             "no tangent directions orthogonal to xi"));
  } else {
    rep.append(make_check("normality.literal_horizontal",
                          "[phi X, phi Y] + 2 d eta(X,Y) xi = 0 for X,Y _|_ xi [1/2-normalized d]",
                          lit, tol));
  }
  finalize(rep, errs);
  return rep;
}

VerificationReport verify_three_sasakian(const ThreeSasakianTriple& T, const VerifyOptions& opts) {
  VerificationReport rep;
  rep.kind = "verify";
  rep.instance = T.name;
  const auto& M = *T.manifold;

  std::vector<Point> pts;
  try {
    pts = M.sample(static_cast<int>(opts.samples), opts.seed);
  } catch (const Error& e) {
    rep.append(vacuous_check("sampling", "feasible point generation", ""));
    rep.checks.back().status = CheckStatus::Error;
    rep.checks.back().note = e.what();
    return rep;
  }

  const long n = static_cast<long>(pts.size());
  const int ta = opts.tangent_args;
  std::vector<double> r_ortho(n), r_tangent(n), r_bracket(n), r_b13(n);
  std::vector<double> r_killing(n * ta);
  PointErrors errs(n);

  parallel_for(n, opts.workers, [&](long pi) {
    try {
      const Point& p = pts[pi];
      const Vec& x = p.coords;
      Vec xv[3];
      double ortho = 0.0, tangent = 0.0;
      for (int i = 0; i < 3; ++i) {
        xv[i] = T.xi[i](x);
        tangent = std::max(tangent, M.tangency_error(x, xv[i]));
      }
      for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j)
          ortho = std::max(ortho, std::abs(xv[i].dot(xv[j]) - (i == j ? 1.0 : 0.0)));
      r_ortho[pi] = ortho;
      r_tangent[pi] = tangent;

      double bmax = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          if (i == j) continue;
          int k = 3 - i - j;
          double eps = ((j - i + 3) % 3 == 1) ? 1.0 : -1.0;  // eps_{ijk} for cyclic order
          Vec br = lie_bracket(T.xi[i], T.xi[j], p);
          bmax = std::max(bmax, (br - 2.0 * eps * xv[k]).norm());
        }
      r_bracket[pi] = bmax;
      r_b13[pi] = (lie_bracket(T.xi[0], T.xi[2], p) + 2.0 * xv[1]).norm();

      for (int a = 0; a < ta; ++a) {
        Rng rng(opts.seed, kDomainTangent, static_cast<std::uint64_t>(pi), static_cast<std::uint64_t>(a));
        Vec v = random_unit_tangent(M, p, rng);
        Vec w = random_unit_tangent(M, p, rng);
        double kr = 0.0;
        for (int i = 0; i < 3; ++i)
          kr = std::max(kr, std::abs(killing_residual(M, T.xi[i], p, v, w)));
        r_killing[pi * ta + a] = kr;
      }
    } catch (const Error& e) {
      errs.messages[pi] = e.what();
    }
  });

  const double tol = eff_tol(opts, 1e-9);
  rep.append(make_check("triple.unit_orthonormal", "<xi_i, xi_j> = delta_ij", r_ortho, tol));
  rep.append(make_check("triple.tangent", "xi_i tangent to the sphere", r_tangent, tol));
  rep.append(make_check("triple.killing", "L_{xi_i} g = 0", r_killing, tol));
  rep.append(make_check("triple.bracket_convention", "[xi_i, xi_j] = 2 eps_ijk xi_k", r_bracket, tol));
  rep.append(make_check("triple.bracket_13", "[xi_1, xi_3] = -2 xi_2", r_b13, tol));
  finalize(rep, errs);
  return rep;
}

int audit_reeb_sign(int m, const VerifyOptions& opts) {
  VerifyOptions small = opts;
  small.samples = std::min<long>(opts.samples, 20);
  small.tangent_args = std::min(opts.tangent_args, 5);
  int passing = 0;
  for (int sign : {-1, +1}) {
    auto S = standard_sphere_sasaki(m, sign);
    auto rep = verify_sasakian(S, small);
    for (const auto& c : rep.checks)
      if (c.id == "contact.deta" && c.status == CheckStatus::Pass) {
        if (passing != 0) throw Error("both Reeb signs satisfy the contact identity");
        passing = sign;
      }
  }
  if (passing == 0) throw Error("no Reeb sign satisfies the contact identity");
  return passing;
}

}  // namespace hopfcx
