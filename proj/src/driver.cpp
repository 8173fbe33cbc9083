#include "hopfcx/driver.hpp"

#include <fstream>
#include <iostream>

#include "hopfcx/errors.hpp"
#include "hopfcx/moment_maps.hpp"
#include "hopfcx/octonion.hpp"
#include "hopfcx/rng.hpp"

namespace hopfcx {

namespace {

void write_output(const std::string& path, const std::string& bytes) {
  if (path.empty()) {
    std::cout << bytes;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open output path " + path);
  f << bytes;
}

// Dimension / regularity record for any catalog instance.
CheckRecord dimension_check(const InstanceDescriptor& inst, const VerifyOptions& opts) {
  auto pts = inst.manifold->sample(std::min<long>(opts.samples, 50), opts.seed);
  std::vector<double> defects;
  defects.reserve(pts.size());
  for (const auto& p : pts) {
    int corank = inst.manifold->ambient_dim() - inst.manifold->jacobian_rank(p.coords);
    defects.push_back(std::abs(corank - inst.expected_dim));
  }
  return make_check("instance.dimension",
                    "Jacobian corank equals the expected dimension " +
                        std::to_string(inst.expected_dim),
                    defects, 0.5);
}

VerificationReport verify_special_instance(const InstanceDescriptor& inst,
                                           const VerifyOptions& opts) {
  VerificationReport rep;
  rep.kind = "verify";
  rep.instance = inst.name;
  rep.append(dimension_check(inst, opts));

  auto pts = inst.manifold->sample(std::min<long>(opts.samples, 50), opts.seed);
  if (inst.name == "g2") {
    std::vector<double> comp_ortho, assoc, roundtrip;
    for (const auto& p : pts) {
      Vec e1 = p.coords.segment(0, 7), e2 = p.coords.segment(7, 7), e4 = p.coords.segment(14, 7);
      auto frame = g2_complete_frame(e1, e2, e4);
      double ortho = 0.0;
      for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j)
          ortho = std::max(ortho,
                           std::abs(frame[i].dot(frame[j]) - (i == j ? 1.0 : 0.0)));
      comp_ortho.push_back(ortho);

      // associative 3-plane: products of the triple stay in its span with 1
      std::array<Octonion, 3> t;
      std::array<double, 7> buf;
      for (int v = 0; v < 3; ++v) {
        for (int i = 0; i < 7; ++i) buf[i] = frame[v][i];
        t[v] = imaginary_from<double>(buf);
      }
      double worst = 0.0;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          Octonion prod = omul(t[a], t[b]);
          Octonion res = prod;
          res = res - odot(prod, Octonion::basis(0)) * Octonion::basis(0);
          for (int v = 0; v < 3; ++v) res = res - odot(prod, t[v]) * t[v];
          worst = std::max(worst, onorm(res));
        }
      assoc.push_back(worst);

      // completion then forgetting the third leg returns the input
      roundtrip.push_back((frame[0] - e1).norm() + (frame[1] - e2).norm() +
                          (frame[3] - e4).norm());
    }
    rep.append(make_check("g2.completion_orthonormal",
                          "(e1, e2, e1 e2, e4) is an orthonormal 4-frame", comp_ortho, 1e-10));
    rep.append(make_check("g2.associative_span",
                          "pairwise products of (e1, e2, e1 e2) stay in span{1, e1, e2, e1 e2}",
                          assoc, 1e-10));
    rep.append(make_check("g2.completion_roundtrip",
                          "completing then forgetting reproduces (e1, e2, e4)", roundtrip, 1e-14));
  } else if (inst.name == "spin7") {
    std::vector<double> closure, ortho;
    for (const auto& p : pts) {
      std::array<Octonion, 4> f;
      std::array<double, 8> buf;
      for (int v = 0; v < 4; ++v) {
        for (int i = 0; i < 8; ++i) buf[i] = p.coords[8 * v + i];
        f[v] = octonion_from<double>(buf);
      }
      double o = 0.0;
      for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j)
          o = std::max(o, std::abs(odot(f[i], f[j]) - (i == j ? 1.0 : 0.0)));
      ortho.push_back(o);
      Octonion cr = triple_cross(f[0], f[1], f[2]);
      closure.push_back(
          std::min(onorm(cr - f[3]), onorm(cr + f[3])));  // e4 = +/- X(e1,e2,e3)
    }
    rep.append(make_check("spin7.frame_orthonormal", "(e1..e4) is an orthonormal 4-frame", ortho,
                          1e-10));
    rep.append(make_check("spin7.cayley_closure",
                          "e4 = s X(e1, e2, e3): the span is closed under the triple cross product",
                          closure, 1e-10));
  }
  return rep;
}

VerificationReport verify_bundle_instance(const InstanceDescriptor& inst,
                                          const VerifyOptions& opts, const FiberMatrix& fm) {
  VerificationReport rep;
  rep.kind = "verify";
  rep.instance = inst.name;
  rep.append(dimension_check(inst, opts));
  rep.append(probe_bundle(*inst.bundle, opts));

  // xi* horizontality as an algebraic identity at random ambient points
  if (inst.name.rfind("stiefel", 0) == 0) {
    const int n1 = inst.n + 1;
    std::vector<double> resid;
    Rng rng(opts.seed, 0x7d);
    const Quaternion sigmas[3] = {Quaternion::i(), Quaternion::j(), Quaternion::k()};
    for (int t = 0; t < 100; ++t) {
      QuaternionVector h(n1);
      for (int a = 0; a < n1; ++a)
        h[a] = Quaternion{rng.next_gaussian(), rng.next_gaussian(), rng.next_gaussian(),
                          rng.next_gaussian()};
      Quaternion mu = moment_mu(h);
      double worst = 0.0;
      for (int i = 0; i < 3; ++i) {
        double lhs = qv_dot(left_mul(Quaternion::i(), h), right_mul(h, sigmas[i]));
        double rhs = -qmul(mu, sigmas[i]).w;
        worst = std::max(worst, std::abs(lhs - rhs));
      }
      resid.push_back(worst);
    }
    rep.append(make_check("instance.xistar_horizontal_identity",
                          "<i h, h sigma> = -Re(mu(h) sigma) at arbitrary ambient points", resid,
                          1e-12));
  }

  JStructure J = build_J(*inst.bundle, fm);
  VerificationReport cx = verify_complex_structure(J, opts);
  rep.append(cx.checks);
  VerificationReport aut = automorphism_and_nonkaehler_checks(J, opts);
  rep.append(aut.checks);
  return rep;
}

}  // namespace

VerifyOptions RunConfig::verify_options() const {
  VerifyOptions o;
  o.samples = samples;
  o.tangent_args = tangent_args;
  o.seed = seed;
  o.tol_override = tol;
  o.workers = workers;
  return o;
}

nlohmann::ordered_json RunConfig::manifest() const {
  nlohmann::ordered_json j;
  j["instance"] = instance;
  j["n"] = n;
  j["samples"] = samples;
  j["tangent_args"] = tangent_args;
  j["seed"] = seed;
  j["tol"] = fmt_g17(tol);
  j["convention"] = convention.label();
  j["fiber_matrix"] = {fmt_g17(fiber.alpha), fmt_g17(fiber.beta), fmt_g17(fiber.gamma),
                       fmt_g17(fiber.delta)};
  return j;
}

RunConfig config_from_manifest(const nlohmann::json& doc) {
  try {
    RunConfig cfg;
    cfg.instance = doc.at("instance").get<std::string>();
    cfg.n = doc.value("n", 1);
    cfg.samples = doc.value("samples", 100L);
    cfg.tangent_args = doc.value("tangent_args", 8);
    cfg.seed = doc.value("seed", 42ULL);
    cfg.tol = doc.value("tol", 0.0);
    cfg.workers = doc.value("workers", 1);
    cfg.out_path = doc.value("out", std::string());
    if (doc.contains("convention")) {
      const auto& c = doc.at("convention");
      if (c.contains("vertical_signs")) {
        auto vs = c.at("vertical_signs").get<std::vector<int>>();
        if (vs.size() != 3 || std::abs(vs[0] * vs[1] * vs[2]) != 1)
          throw ManifestError("vertical_signs must be three entries from {-1, +1}");
        // sign combinations violating the bracket convention are allowed
        // here; they surface as check failures, not manifest errors
        for (int i = 0; i < 3; ++i) cfg.convention.vertical_signs[i] = vs[i];
      }
      cfg.convention.xi_star_sign = c.value("xi_star_sign", 1);
      cfg.convention.phihat_sign = c.value("phihat_sign", 1);
      cfg.convention.conjugate_first = c.value("conjugate_first", false);
    }
    if (doc.contains("fiber_matrix")) {
      auto fm = doc.at("fiber_matrix").get<std::vector<double>>();
      if (fm.size() != 4) throw ManifestError("fiber_matrix must have 4 entries");
      cfg.fiber = FiberMatrix{fm[0], fm[1], fm[2], fm[3]};
    }
    if (cfg.samples < 1 || cfg.tol < 0.0 || cfg.workers < 1)
      throw ManifestError("samples >= 1, tol >= 0 and workers >= 1 required");
    return cfg;
  } catch (const ManifestError&) {
    throw;
  } catch (const std::exception& e) {
    throw ManifestError(std::string("malformed manifest: ") + e.what());
  }
}

RunConfig config_from_manifest_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ManifestError("cannot read manifest " + path);
  nlohmann::json doc;
  try {
    f >> doc;
  } catch (const std::exception& e) {
    throw ManifestError(std::string("manifest parse error: ") + e.what());
  }
  return config_from_manifest(doc);
}

VerificationReport run_verification(const RunConfig& cfg) {
  VerifyOptions opts = cfg.verify_options();
  VerificationReport rep;
  if (cfg.instance == "sphere") {
    rep = verify_sasakian(standard_sphere_sasaki(cfg.n), opts);
  } else if (cfg.instance == "three-sasaki") {
    rep = verify_three_sasakian(sphere_three_sasaki(cfg.n), opts);
  } else if (cfg.instance == "g2" || cfg.instance == "spin7") {
    rep = verify_special_instance(build_instance(cfg.instance, cfg.n, cfg.convention), opts);
  } else if (cfg.instance == "product" || cfg.instance == "stiefel-complex" ||
             cfg.instance == "stiefel-real") {
    InstanceDescriptor inst;
    if (cfg.instance == "product")
      inst = product_instance(cfg.n, cfg.convention);
    else if (cfg.instance == "stiefel-complex")
      inst = stiefel_complex(cfg.n, cfg.convention);
    else
      inst = stiefel_real(cfg.n, cfg.convention);
    rep = verify_bundle_instance(inst, opts, cfg.fiber);
  } else {
    throw ManifestError("unknown instance '" + cfg.instance + "'");
  }
  rep.instance = cfg.instance;
  rep.manifest = cfg.manifest();
  return rep;
}

int run_verify(const RunConfig& cfg) {
  try {
    VerificationReport rep;
    try {
      rep = run_verification(cfg);
    } catch (const StructureViolation& e) {
      // construction-time invariant failures are check failures, not crashes
      rep.kind = "verify";
      rep.instance = cfg.instance;
      rep.manifest = cfg.manifest();
      CheckRecord c;
      c.id = "bundle.invariants";
      c.anchor = "container invariants at construction probes";
      c.status = CheckStatus::Fail;
      c.note = e.what();
      rep.append(std::move(c));
    }
    write_output(cfg.out_path, rep.serialize());
    if (rep.any_error()) return kExitRuntimeError;
    return rep.all_passed() ? kExitPass : kExitCheckFailure;
  } catch (const ManifestError& e) {
    std::cerr << "manifest error: " << e.what() << "\n";
    return kExitManifestError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
}

int run_audit(const RunConfig& cfg) {
  try {
    AuditReport rep = convention_audit(cfg.instance, cfg.n, cfg.verify_options());
    rep.manifest = cfg.manifest();
    write_output(cfg.out_path, rep.serialize());
    return rep.any_guaranteed_pass() ? kExitPass : kExitCheckFailure;
  } catch (const ManifestError& e) {
    std::cerr << "manifest error: " << e.what() << "\n";
    return kExitManifestError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
}

std::string list_instances_text() {
  std::string out;
  out += "sphere           Sasakian structure of S^n (n odd); axioms suite\n";
  out += "three-sasaki     left-multiplication triple on S^{4n+3}\n";
  out += "product          S^n x S^3 bundle (n odd), flat connection\n";
  out += "stiefel-complex  {|h|=1, mu(h)=0} in H^{n+1}, n >= 1\n";
  out += "stiefel-real     {|h|=1, nu(h)=0} in H^{n+1}, n >= 3\n";
  out += "g2               coassociative triples (e1,e2,e4) in R^7\n";
  out += "spin7            Cayley 4-frames in R^8\n";
  return out;
}

}  // namespace hopfcx
