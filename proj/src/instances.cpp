#include "hopfcx/instances.hpp"

#include <algorithm>
#include <cmath>

#include "hopfcx/errors.hpp"
#include "hopfcx/moment_maps.hpp"
#include "hopfcx/octonion.hpp"
#include "hopfcx/rng.hpp"

namespace hopfcx {

namespace {

constexpr std::uint64_t kDomainFrames = 0x7c;

Mat right_mult_matrix(const Quaternion& q) {
  Mat R(4, 4);
  const Quaternion basis[4] = {Quaternion::one(), Quaternion::i(), Quaternion::j(),
                               Quaternion::k()};
  for (int b = 0; b < 4; ++b) {
    Quaternion col = qmul(basis[b], q);
    R(0, b) = col.w;
    R(1, b) = col.x;
    R(2, b) = col.y;
    R(3, b) = col.z;
  }
  return R;
}

// Entrywise right multiplication h -> h q on H^{n+1} as an ambient matrix.
Mat block_right_action(int n1, const Quaternion& q) {
  Mat R = Mat::Zero(4 * n1, 4 * n1);
  Mat R4 = right_mult_matrix(q);
  for (int a = 0; a < n1; ++a) R.block(4 * a, 4 * a, 4, 4) = R4;
  return R;
}

VectorField make_right_vertical(int dim, int sign, const Quaternion& sigma, std::string name) {
  return VectorField(std::move(name), dim, [sign, sigma](auto x, auto out) {
    using T = std::remove_cvref_t<decltype(out[0])>;
    QuatT<T> sq(T(sigma.w), T(sigma.x), T(sigma.y), T(sigma.z));
    const int n1 = static_cast<int>(x.size() / 4);
    for (int a = 0; a < n1; ++a) {
      QuatT<T> v = qmul(quat_at(x, a), sq);
      set_quat(out, a, sign > 0 ? v : -v);
    }
  });
}

VectorField make_left_i_field(int dim, int sign, std::string name) {
  return VectorField(std::move(name), dim, [sign](auto x, auto out) {
    using T = std::remove_cvref_t<decltype(out[0])>;
    const int n1 = static_cast<int>(x.size() / 4);
    for (int a = 0; a < n1; ++a) {
      QuatT<T> v = qmul(QuatT<T>::i(), quat_at(x, a));
      set_quat(out, a, sign > 0 ? v : -v);
    }
  });
}

// phi-hat candidate: H'-projection of entrywise left multiplication by
// sign * i (Gram components along the frame removed).
EndoField make_left_i_phihat(int dim, int sign, std::array<VectorField, 3> vertical,
                             VectorField xi_star) {
  return EndoField("phi-hat", dim, [sign, vertical, xi_star](auto x, auto u, auto out) {
    using T = std::remove_cvref_t<decltype(out[0])>;
    std::vector<T> w(x.size());
    const int n1 = static_cast<int>(x.size() / 4);
    for (int a = 0; a < n1; ++a) {
      QuatT<T> v = qmul(QuatT<T>::i(), quat_at(u, a));
      set_quat(std::span<T>(w), a, sign > 0 ? v : -v);
    }
    subtract_frame_components_level(vertical, xi_star, x, std::span<const T>(w), out);
  });
}

ConstraintMap stiefel_constraint(int n1, bool full_nu) {
  const int dim = 4 * n1;
  const int k = full_nu ? 10 : 4;
  return ConstraintMap(dim, k, [full_nu](auto x, auto out) {
    using T = std::remove_cvref_t<decltype(out[0])>;
    T norm(0.0);
    for (size_t i = 0; i < x.size(); ++i) norm += x[i] * x[i];
    out[0] = norm - 1.0;
    QuatT<T> mu = moment_component(x, QuatT<T>::i());
    out[1] = mu.x;
    out[2] = mu.y;
    out[3] = mu.z;
    if (full_nu) {
      QuatT<T> nj = moment_component(x, QuatT<T>::j());
      QuatT<T> nk = moment_component(x, QuatT<T>::k());
      out[4] = nj.x;
      out[5] = nj.y;
      out[6] = nj.z;
      out[7] = nk.x;
      out[8] = nk.y;
      out[9] = nk.z;
    }
  });
}

void check_regularity(const InstanceDescriptor& inst, int probes, std::uint64_t seed) {
  auto pts = inst.manifold->sample(probes, seed);
  for (const auto& p : pts) {
    int corank = inst.manifold->ambient_dim() - inst.manifold->jacobian_rank(p.coords);
    if (corank != inst.expected_dim)
      throw RegularityFailure(inst.name + ": Jacobian corank " + std::to_string(corank) +
                              " != expected dimension " + std::to_string(inst.expected_dim));
  }
}

InstanceDescriptor make_stiefel(int n, const ConventionPoint& conv, bool full_nu, bool validate) {
  const int n1 = n + 1;
  const int dim = 4 * n1;
  auto M = std::make_shared<LevelSetManifold>(
      full_nu ? "stiefel-real(n=" + std::to_string(n) + ")"
              : "stiefel-complex(n=" + std::to_string(n) + ")",
      stiefel_constraint(n1, full_nu));
  M->set_sample_initializer([](const Vec& raw) { return Vec(raw / raw.norm()); });

  const Quaternion sigmas[3] = {Quaternion::i(), Quaternion::j(), Quaternion::k()};
  std::array<VectorField, 3> vertical;
  for (int i = 0; i < 3; ++i)
    vertical[i] = make_right_vertical(dim, conv.vertical_signs[i], sigmas[i],
                                      "xi_" + std::to_string(i + 1));
  VectorField xi_star = make_left_i_field(dim, conv.xi_star_sign, "xi*");
  EndoField phi_hat = make_left_i_phihat(dim, conv.phihat_sign, vertical, xi_star);
  auto action = [n1](const Quaternion& q) { return block_right_action(n1, q); };

  InstanceDescriptor inst;
  inst.name = M->name();
  inst.n = n;
  inst.expected_dim = full_nu ? 4 * n - 6 : 4 * n;
  inst.convention = conv;
  inst.manifold = M;
  if (validate) {
    check_regularity(inst, 5, 2024);
    inst.bundle = build_bundle(inst.name, M, vertical, xi_star, phi_hat, action);
  } else {
    inst.bundle = HopfBundleInstance{inst.name, M, vertical, xi_star, phi_hat, action};
  }
  return inst;
}

InstanceDescriptor make_product(int base_dim, const ConventionPoint& conv, bool validate) {
  if (base_dim < 1 || base_dim % 2 == 0)
    throw BadDimension("product base must be an odd-dimensional sphere");
  const int nb = base_dim + 1;  // base ambient block
  const int dim = nb + 4;
  ConstraintMap F(dim, 2, [nb](auto x, auto out) {
    using T = std::remove_cvref_t<decltype(out[0])>;
    T a(0.0), b(0.0);
    for (int i = 0; i < nb; ++i) a += x[i] * x[i];
    for (size_t i = nb; i < x.size(); ++i) b += x[i] * x[i];
    out[0] = a - 1.0;
    out[1] = b - 1.0;
  });
  auto M = std::make_shared<LevelSetManifold>(
      "product(S^" + std::to_string(base_dim) + "xS^3)", std::move(F));
  M->set_sample_initializer([nb](const Vec& raw) {
    Vec out = raw;
    out.head(nb).normalize();
    out.tail(out.size() - nb).normalize();
    return out;
  });

  const Quaternion sigmas[3] = {Quaternion::i(), Quaternion::j(), Quaternion::k()};
  std::array<VectorField, 3> vertical;
  for (int i = 0; i < 3; ++i) {
    int sign = conv.vertical_signs[i];
    Quaternion sig = sigmas[i];
    vertical[i] =
        VectorField("xi_" + std::to_string(i + 1), dim, [nb, sign, sig](auto x, auto out) {
          using T = std::remove_cvref_t<decltype(out[0])>;
          for (int i2 = 0; i2 < nb; ++i2) out[i2] = T(0.0);
          QuatT<T> sq(T(sig.w), T(sig.x), T(sig.y), T(sig.z));
          QuatT<T> y(x[nb], x[nb + 1], x[nb + 2], x[nb + 3]);
          QuatT<T> v = qmul(y, sq);
          if (sign < 0) v = -v;
          out[nb] = v.w;
          out[nb + 1] = v.x;
          out[nb + 2] = v.y;
          out[nb + 3] = v.z;
        });
  }
  // xi* lifts the base Reeb field (audited sign: -i x on the base factor)
  int xs_sign = -conv.xi_star_sign;
  VectorField xi_star("xi*", dim, [nb, xs_sign](auto x, auto out) {
    using T = std::remove_cvref_t<decltype(out[0])>;
    for (int t = 0; t + 1 < nb; t += 2) {
      out[t] = -x[t + 1];
      out[t + 1] = x[t];
    }
    for (size_t t = nb; t < x.size(); ++t) out[t] = T(0.0);
    for (int t = 0; t < nb; ++t) out[t] = xs_sign * out[t];
  });
  int ph_sign = conv.phihat_sign;
  std::array<VectorField, 3> vert_copy = vertical;
  VectorField xs_copy = xi_star;
  EndoField phi_hat("phi-hat", dim, [nb, ph_sign, vert_copy, xs_copy](auto x, auto u, auto out) {
    using T = std::remove_cvref_t<decltype(out[0])>;
    std::vector<T> w(x.size(), T(0.0));
    for (int t = 0; t + 1 < nb; t += 2) {
      w[t] = -u[t + 1];
      w[t + 1] = u[t];
    }
    if (ph_sign < 0)
      for (int t = 0; t < nb; ++t) w[t] = -w[t];
    subtract_frame_components_level(vert_copy, xs_copy, x, std::span<const T>(w), out);
  });
  auto action = [nb, dim](const Quaternion& q) {
    Mat R = Mat::Identity(dim, dim);
    R.block(nb, nb, 4, 4) = right_mult_matrix(q);
    return R;
  };

  InstanceDescriptor inst;
  inst.name = M->name();
  inst.n = base_dim;
  inst.expected_dim = base_dim + 3;
  inst.convention = conv;
  inst.manifold = M;
  if (validate) {
    check_regularity(inst, 5, 2024);
    inst.bundle = build_bundle(inst.name, M, vertical, xi_star, phi_hat, action);
  } else {
    inst.bundle = HopfBundleInstance{inst.name, M, vertical, xi_star, phi_hat, action};
  }
  return inst;
}

Vec gram_schmidt_block(const Vec& raw, int vecs, int dim) {
  std::vector<Vec> basis;
  for (int v = 0; v < vecs; ++v) {
    Vec u = raw.segment(v * dim, dim);
    for (const auto& b : basis) u -= u.dot(b) * b;
    double n = u.norm();
    if (n < 1e-8) throw NoConvergence("degenerate Gram-Schmidt seed");
    basis.push_back(Vec(u / n));
  }
  Vec out(vecs * dim);
  for (int v = 0; v < vecs; ++v) out.segment(v * dim, dim) = basis[v];
  return out;
}

}  // namespace

std::vector<ConventionPoint> ConventionPoint::lattice() {
  static const std::array<std::array<int, 3>, 4> vsigns = {
      {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}};
  std::vector<ConventionPoint> out;
  for (const auto& vs : vsigns)
    for (int xs : {1, -1})
      for (int ph : {1, -1})
        for (bool cf : {false, true}) {
          ConventionPoint c;
          c.vertical_signs = vs;
          c.xi_star_sign = xs;
          c.phihat_sign = ph;
          c.conjugate_first = cf;
          out.push_back(c);
        }
  return out;
}

std::string ConventionPoint::label() const {
  auto sgn = [](int s) { return s > 0 ? "+" : "-"; };
  std::string l = "v";
  for (int i = 0; i < 3; ++i) l += sgn(vertical_signs[i]);
  l += " xs";
  l += sgn(xi_star_sign);
  l += " ph";
  l += sgn(phihat_sign);
  l += conjugate_first ? " conj-u1" : " conj-u2";
  return l;
}

InstanceDescriptor stiefel_complex(int n, const ConventionPoint& conv) {
  if (n < 1) throw BadDimension("stiefel_complex requires n >= 1");
  return make_stiefel(n, conv, false, true);
}

InstanceDescriptor stiefel_real(int n, const ConventionPoint& conv) {
  if (n < 3)
    throw InfeasibleForSmallN("stiefel_real requires n >= 3 (dimension 4n-6 must hold the fiber)");
  return make_stiefel(n, conv, true, true);
}

InstanceDescriptor product_instance(int base_dim, const ConventionPoint& conv) {
  return make_product(base_dim, conv, true);
}

InstanceDescriptor g2_instance() {
  const int dim = 21;
  ConstraintMap F(dim, 7, [](auto x, auto out) {
    using T = std::remove_cvref_t<decltype(out[0])>;
    auto e1 = x.subspan(0, 7), e2 = x.subspan(7, 7), e4 = x.subspan(14, 7);
    auto dot = [](auto a, auto b) {
      T s(0.0);
      for (int i = 0; i < 7; ++i) s += a[i] * b[i];
      return s;
    };
    out[0] = dot(e1, e1) - 1.0;
    out[1] = dot(e2, e2) - 1.0;
    out[2] = dot(e4, e4) - 1.0;
    out[3] = dot(e1, e2);
    out[4] = dot(e1, e4);
    out[5] = dot(e2, e4);
    OctT<T> prod = omul(imaginary_from(e1), imaginary_from(e2));
    out[6] = odot(prod, imaginary_from(e4));
  });
  auto M = std::make_shared<LevelSetManifold>("g2", std::move(F));
  M->set_sample_initializer([](const Vec& raw) {
    Vec f = gram_schmidt_block(raw, 3, 7);
    // strip the e1 e2 direction from e4: every constraint then holds exactly
    std::array<double, 7> a1, a2;
    for (int i = 0; i < 7; ++i) {
      a1[i] = f[i];
      a2[i] = f[7 + i];
    }
    Octonion prod = omul(imaginary_from<double>(a1), imaginary_from<double>(a2));
    Vec n3(7);
    for (int i = 0; i < 7; ++i) n3[i] = prod.component(i + 1);
    Vec e4 = f.segment(14, 7);
    e4 -= e4.dot(n3) * n3 / n3.squaredNorm();
    if (e4.norm() < 1e-8) throw NoConvergence("degenerate coassociative seed");
    f.segment(14, 7) = e4 / e4.norm();
    return f;
  });
  InstanceDescriptor inst;
  inst.name = "g2";
  inst.n = 0;
  inst.expected_dim = 14;
  inst.convention = {};
  inst.manifold = M;
  check_regularity(inst, 5, 2024);
  return inst;
}

InstanceDescriptor spin7_instance(int cross_sign) {
  const int dim = 32;
  const double s = cross_sign;
  ConstraintMap F(dim, 14, [s](auto x, auto out) {
    using T = std::remove_cvref_t<decltype(out[0])>;
    auto f1 = x.subspan(0, 8), f2 = x.subspan(8, 8), f3 = x.subspan(16, 8), f4 = x.subspan(24, 8);
    auto dot = [](auto a, auto b) {
      T v(0.0);
      for (int i = 0; i < 8; ++i) v += a[i] * b[i];
      return v;
    };
    out[0] = dot(f1, f1) - 1.0;
    out[1] = dot(f2, f2) - 1.0;
    out[2] = dot(f3, f3) - 1.0;
    out[3] = dot(f1, f2);
    out[4] = dot(f1, f3);
    out[5] = dot(f2, f3);
    OctT<T> cr = triple_cross(octonion_from(f1), octonion_from(f2), octonion_from(f3));
    for (int i = 0; i < 8; ++i) out[6 + i] = f4[i] - s * cr.component(i);
  });
  auto M = std::make_shared<LevelSetManifold>("spin7", std::move(F));
  M->set_sample_initializer([s](const Vec& raw) {
    Vec f = gram_schmidt_block(raw, 3, 8);
    std::array<double, 8> a1, a2, a3;
    for (int i = 0; i < 8; ++i) {
      a1[i] = f[i];
      a2[i] = f[8 + i];
      a3[i] = f[16 + i];
    }
    Octonion cr = triple_cross(octonion_from<double>(a1), octonion_from<double>(a2),
                               octonion_from<double>(a3));
    Vec out(32);
    out.head(24) = f.head(24);
    for (int i = 0; i < 8; ++i) out[24 + i] = s * cr.component(i);
    return out;
  });
  InstanceDescriptor inst;
  inst.name = "spin7";
  inst.n = 0;
  inst.expected_dim = 18;
  inst.convention = {};
  inst.convention.phihat_sign = cross_sign;  // reuse: records the cross-product sign flag
  inst.manifold = M;
  check_regularity(inst, 5, 2024);
  return inst;
}

QuaternionVector complex_pair_to_quaternion(const std::vector<std::complex<double>>& u1,
                                            const std::vector<std::complex<double>>& u2,
                                            bool conjugate_first) {
  if (u1.size() != u2.size() || u1.empty()) throw NotAFrame("size mismatch in complex pair");
  std::complex<double> herm(0.0, 0.0);
  double n1 = 0.0, n2 = 0.0;
  for (size_t a = 0; a < u1.size(); ++a) {
    herm += std::conj(u1[a]) * u2[a];
    n1 += std::norm(u1[a]);
    n2 += std::norm(u2[a]);
  }
  if (std::abs(n1 - 1.0) > 1e-10 || std::abs(n2 - 1.0) > 1e-10 || std::abs(herm) > 1e-10)
    throw NotAFrame("complex pair not orthonormal");
  const double s = 1.0 / std::sqrt(2.0);
  QuaternionVector h(static_cast<int>(u1.size()));
  for (size_t a = 0; a < u1.size(); ++a) {
    std::complex<double> z = conjugate_first ? std::conj(u1[a]) : u1[a];
    std::complex<double> w = conjugate_first ? u2[a] : std::conj(u2[a]);
    // h_a = z + j w; with w = c + d i this contributes (0,0,c,-d)
    h[static_cast<int>(a)] =
        Quaternion{s * z.real(), s * z.imag(), s * w.real(), -s * w.imag()};
  }
  return h;
}

QuaternionVector real_frame_to_quaternion(const Vec& f1, const Vec& f2, const Vec& f3,
                                          const Vec& f4, bool conjugate_first) {
  const Vec* fs[4] = {&f1, &f2, &f3, &f4};
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      double want = (i == j) ? 1.0 : 0.0;
      if (fs[i]->size() != f1.size() || std::abs(fs[i]->dot(*fs[j]) - want) > 1e-10)
        throw NotAFrame("real 4-frame not orthonormal");
    }
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<std::complex<double>> u1(f1.size()), u2(f1.size());
  for (int a = 0; a < f1.size(); ++a) {
    u1[a] = std::complex<double>(f1[a], f2[a]) * s;
    u2[a] = std::complex<double>(f3[a], f4[a]) * s;
  }
  return complex_pair_to_quaternion(u1, u2, conjugate_first);
}

std::array<Vec, 4> g2_complete_frame(const Vec& e1, const Vec& e2, const Vec& e4) {
  if (e1.size() != 7 || e2.size() != 7 || e4.size() != 7) throw NotAFrame("expected R^7 vectors");
  std::array<double, 7> a1, a2;
  for (int i = 0; i < 7; ++i) {
    a1[i] = e1[i];
    a2[i] = e2[i];
  }
  Octonion prod = omul(imaginary_from<double>(a1), imaginary_from<double>(a2));
  Vec n3(7);
  for (int i = 0; i < 7; ++i) n3[i] = prod.component(i + 1);
  return {e1, e2, n3, e4};
}

InstanceDescriptor build_instance(const std::string& name, int n, const ConventionPoint& conv) {
  if (name == "stiefel-complex") return stiefel_complex(n, conv);
  if (name == "stiefel-real") return stiefel_real(n, conv);
  if (name == "product") return product_instance(n, conv);
  if (name == "g2") return g2_instance();
  if (name == "spin7") return spin7_instance();
  throw ManifestError("unknown instance '" + name + "'");
}

std::vector<std::string> instance_names() {
  return {"sphere", "three-sasaki", "product", "stiefel-complex", "stiefel-real", "g2", "spin7"};
}

bool AuditReport::any_guaranteed_pass() const {
  return std::any_of(rows.begin(), rows.end(), [](const AuditRow& r) { return r.guaranteed_pass; });
}

const AuditRow* AuditReport::default_row() const {
  for (const auto& r : rows)
    if (r.index == 0) return &r;
  return nullptr;
}

nlohmann::ordered_json AuditReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = "hopfcx-audit-v1";
  j["kind"] = "audit";
  j["instance"] = instance;
  j["manifest"] = manifest;
  j["manifest_hash"] = fnv1a_hex(manifest.dump());
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json row;
    row["rank"] = &r - rows.data() + 1;
    row["index"] = r.index;
    row["convention"] = r.convention.label();
    row["constructible"] = r.constructible;
    if (!r.constructible) {
      row["error"] = r.error;
    } else {
      row["guaranteed_pass"] = r.guaranteed_pass;
      row["worst_guaranteed_residual"] = fmt_g17(r.worst_guaranteed);
      row["worst_recorded_residual"] = fmt_g17(r.worst_recorded);
      auto g = nlohmann::ordered_json::array();
      for (const auto& c : r.guaranteed) g.push_back(check_to_json(c));
      row["guaranteed"] = std::move(g);
      auto rec = nlohmann::ordered_json::array();
      for (const auto& c : r.recorded) rec.push_back(check_to_json(c));
      row["recorded"] = std::move(rec);
    }
    arr.push_back(std::move(row));
  }
  j["conventions"] = std::move(arr);
  j["any_guaranteed_pass"] = any_guaranteed_pass();
  return j;
}

std::string AuditReport::serialize() const { return to_json().dump(2) + "\n"; }

AuditReport convention_audit(const std::string& name, int n, const VerifyOptions& opts) {
  if (name != "stiefel-complex" && name != "stiefel-real" && name != "product")
    throw ManifestError("audit supports bundle-carrying instances, not '" + name + "'");

  AuditReport report;
  auto lattice = ConventionPoint::lattice();
  report.rows.reserve(lattice.size());

  for (size_t idx = 0; idx < lattice.size(); ++idx) {
    AuditRow row;
    row.index = static_cast<int>(idx);
    row.convention = lattice[idx];
    try {
      InstanceDescriptor inst;
      if (name == "stiefel-complex")
        inst = make_stiefel(n, lattice[idx], false, false);
      else if (name == "stiefel-real")
        inst = make_stiefel(n, lattice[idx], true, false);
      else
        inst = make_product(n, lattice[idx], false);
      report.instance = inst.name;
      const HopfBundleInstance& b = *inst.bundle;

      row.guaranteed = probe_bundle(b, opts);

      // frame-embedding feasibility under this vertex's conjugation flag
      {
        std::vector<double> feas;
        const int n1 = n + 1;
        for (int t = 0; t < 5; ++t) {
          Rng rng(opts.seed, kDomainFrames, static_cast<std::uint64_t>(idx),
                  static_cast<std::uint64_t>(t));
          Vec raw(4 * n1);
          for (int i = 0; i < raw.size(); ++i) raw[i] = rng.next_gaussian();
          if (name == "stiefel-real") {
            Vec f = gram_schmidt_block(raw, 4, n1);
            auto h = real_frame_to_quaternion(f.segment(0, n1), f.segment(n1, n1),
                                              f.segment(2 * n1, n1), f.segment(3 * n1, n1),
                                              lattice[idx].conjugate_first);
            feas.push_back(inst.manifold->feasibility_error(
                Eigen::Map<const Vec>(h.flat().data(), 4 * n1)));
          } else if (name == "stiefel-complex") {
            // random Hermitian-orthonormal pair via complex Gram-Schmidt
            std::vector<std::complex<double>> u1(n1), u2(n1);
            for (int a = 0; a < n1; ++a) {
              u1[a] = {rng.next_gaussian(), rng.next_gaussian()};
              u2[a] = {rng.next_gaussian(), rng.next_gaussian()};
            }
            std::complex<double> nn(0.0);
            double m1 = 0.0;
            for (auto& c : u1) m1 += std::norm(c);
            for (auto& c : u1) c /= std::sqrt(m1);
            for (int a = 0; a < n1; ++a) nn += std::conj(u1[a]) * u2[a];
            for (int a = 0; a < n1; ++a) u2[a] -= nn * u1[a];
            double m2 = 0.0;
            for (auto& c : u2) m2 += std::norm(c);
            for (auto& c : u2) c /= std::sqrt(m2);
            auto h = complex_pair_to_quaternion(u1, u2, lattice[idx].conjugate_first);
            feas.push_back(inst.manifold->feasibility_error(
                Eigen::Map<const Vec>(h.flat().data(), 4 * n1)));
          }
        }
        if (!feas.empty())
          row.guaranteed.push_back(make_check("frame.embedding_feasible",
                                              "embedded frames land on the level set", feas,
                                              1e-10));
        else
          row.guaranteed.push_back(vacuous_check("frame.embedding_feasible",
                                                 "embedded frames land on the level set",
                                                 "no frame embedding for this instance"));
      }

      JStructure J = build_J(b, FiberMatrix::standard());
      VerificationReport full = verify_complex_structure(J, opts);
      for (auto& c : full.checks) {
        if (c.id == "curvature.vertical_mixed")
          row.guaranteed.push_back(c);
        else
          row.recorded.push_back(c);
      }

      row.constructible = true;
      row.guaranteed_pass = true;
      for (const auto& c : row.guaranteed) {
        if (c.status == CheckStatus::Fail || c.status == CheckStatus::Error)
          row.guaranteed_pass = false;
        if (c.status != CheckStatus::VacuousPass)
          row.worst_guaranteed = std::max(row.worst_guaranteed, c.max_residual);
      }
      for (const auto& c : row.recorded)
        if (c.status != CheckStatus::VacuousPass)
          row.worst_recorded = std::max(row.worst_recorded, c.max_residual);
    } catch (const Error& e) {
      row.constructible = false;
      row.error = e.what();
    }
    report.rows.push_back(std::move(row));
  }

  // rank by worst overall residual, decade-bucketed so that ties keep the
  // catalog order (the documented default sits at index 0)
  std::stable_sort(report.rows.begin(), report.rows.end(), [](const AuditRow& a, const AuditRow& b) {
    auto key = [](const AuditRow& r) {
      if (!r.constructible) return 1000;
      double worst = std::max(r.worst_guaranteed, r.worst_recorded);
      return static_cast<int>(std::ceil(std::log10(std::max(worst, 1e-18))));
    };
    return key(a) < key(b);
  });
  return report;
}

}  // namespace hopfcx
