// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exit code 0 iff all criteria pass.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "hopfcx/driver.hpp"
#include "hopfcx/hopf.hpp"
#include "hopfcx/instances.hpp"
#include "hopfcx/moment_maps.hpp"
#include "hopfcx/octonion.hpp"
#include "hopfcx/rng.hpp"
#include "hopfcx/sasaki.hpp"

using namespace hopfcx;

namespace {

struct Harness {
  int failures = 0;
  int current = 0;
  bool current_ok = true;
  std::string detail;

  void criterion(int id, const std::string& title, const std::function<void(Harness&)>& body) {
    current = id;
    current_ok = true;
    detail.clear();
    try {
      body(*this);
    } catch (const std::exception& e) {
      current_ok = false;
      detail = std::string("exception: ") + e.what();
    }
    if (!current_ok) ++failures;
    std::printf("[%s] criterion %d: %s%s%s\n", current_ok ? "PASS" : "FAIL", id, title.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
  }

  void require(bool ok, const std::string& what) {
    if (!ok && current_ok) {
      current_ok = false;
      detail = what;
    }
  }

  void require_below(double value, double bound, const std::string& what) {
    require(value < bound, what + " = " + fmt_g17(value) + " (bound " + fmt_g17(bound) + ")");
  }
};

const CheckRecord* find(const VerificationReport& rep, const std::string& id) {
  for (const auto& c : rep.checks)
    if (c.id == id) return &c;
  return nullptr;
}

const CheckRecord* find(const std::vector<CheckRecord>& checks, const std::string& id) {
  for (const auto& c : checks)
    if (c.id == id) return &c;
  return nullptr;
}

VerifyOptions standard_opts(long samples, int args) {
  VerifyOptions o;
  o.samples = samples;
  o.tangent_args = args;
  o.seed = 42;
  o.workers = 8;
  return o;
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(HOPFVERIFY_BIN) + " " + args + " > /dev/null 2>&1";
  return WEXITSTATUS(std::system(cmd.c_str()));
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  Harness h;

  h.criterion(1, "Sasakian axiom suite on S^1, S^3, S^5, S^9 (200 x 20, < 1e-9)", [](Harness& h) {
    for (int m : {1, 3, 5, 9}) {
      auto rep = verify_sasakian(standard_sphere_sasaki(m), standard_opts(200, 20));
      h.require(rep.all_passed(), "S^" + std::to_string(m) + " suite failed");
      for (const auto& c : rep.checks)
        if (c.status == CheckStatus::Pass)
          h.require_below(c.max_residual, 1e-9, "S^" + std::to_string(m) + " " + c.id);
    }
  });

  h.criterion(2, "three-Sasakian triples on S^3, S^7, S^11 with [xi1,xi3] = -2 xi2", [](Harness& h) {
    for (int n : {0, 1, 2}) {
      auto T = sphere_three_sasaki(n);
      auto rep = verify_three_sasakian(T, standard_opts(200, 10));
      h.require(rep.all_passed(), T.name + " suite failed");
      for (const char* id : {"triple.unit_orthonormal", "triple.bracket_convention"})
        h.require_below(find(rep, id)->max_residual, 1e-9, T.name + " " + id);
      h.require_below(find(rep, "triple.bracket_13")->max_residual, 1e-12,
                      T.name + " exact bracket value");
    }
  });

  h.criterion(3, "moment-map equivariance and imaginarity at 1000 random draws", [](Harness& h) {
    Rng rng(42, 0x90);
    double worst_eq = 0, worst_inv = 0, worst_re = 0;
    for (int t = 0; t < 1000; ++t) {
      QuaternionVector hv(4);
      for (int a = 0; a < 4; ++a)
        hv[a] = Quaternion{rng.next_gaussian(), rng.next_gaussian(), rng.next_gaussian(),
                           rng.next_gaussian()};
      double nh = std::sqrt(qv_norm_sq(hv));
      for (int a = 0; a < 4; ++a) hv[a] = (1.0 / nh) * hv[a];  // the action lives on the sphere
      Quaternion q{rng.next_gaussian(), rng.next_gaussian(), rng.next_gaussian(),
                   rng.next_gaussian()};
      q = (1.0 / qnorm(q)) * q;
      double th = rng.next_uniform() * 6.283185307179586;
      Quaternion u{std::cos(th), std::sin(th), 0, 0};

      Quaternion mu = moment_mu(hv);
      worst_eq = std::max(worst_eq,
                          qnorm(moment_mu(right_mul(hv, q)) - qmul(qconj(q), qmul(mu, q))));
      worst_inv = std::max(worst_inv, qnorm(moment_mu(left_mul(u, hv)) - mu));
      worst_re = std::max(worst_re, std::abs(mu.w));
      for (const auto& c : moment_nu(hv)) worst_re = std::max(worst_re, std::abs(c.w));
    }
    h.require_below(worst_eq, 1e-12, "Sp(1) equivariance");
    h.require_below(worst_inv, 1e-12, "U(1) invariance");
    h.require_below(worst_re, 1e-14, "real parts of mu and nu");
  });

  h.criterion(4, "Jacobian corank at 50 samples per instance", [](Harness& h) {
    auto check_corank = [&](const InstanceDescriptor& inst) {
      auto pts = inst.manifold->sample(50, 42);
      for (const auto& p : pts) {
        int corank = inst.manifold->ambient_dim() - inst.manifold->jacobian_rank(p.coords);
        if (corank != inst.expected_dim) {
          h.require(false, inst.name + " corank " + std::to_string(corank) + " != " +
                               std::to_string(inst.expected_dim));
          return;
        }
      }
    };
    for (int n : {1, 2, 3}) check_corank(stiefel_complex(n));
    for (int n : {3, 4}) check_corank(stiefel_real(n));
    check_corank(g2_instance());
    check_corank(spin7_instance());
  });

  h.criterion(5, "integrability on S^1xS^3 and S^5xS^3, standard + 5 random fiber matrices",
              [](Harness& h) {
    for (int base : {1, 5}) {
      auto inst = product_instance(base);
      std::vector<FiberMatrix> mats = {FiberMatrix::standard()};
      for (int t = 0; t < 5; ++t) mats.push_back(random_admissible_fiber_matrix(42, t));
      for (size_t mi = 0; mi < mats.size(); ++mi) {
        JStructure J = build_J(*inst.bundle, mats[mi]);
        auto rep = verify_complex_structure(J, standard_opts(100, 20));
        std::string tag = inst.name + " matrix " + std::to_string(mi);
        h.require_below(find(rep, "nijenhuis.total")->max_residual, 1e-7, tag + " nijenhuis");
        h.require_below(find(rep, "J.square")->max_residual, 1e-10, tag + " J^2+I");
        if (mi == 0) {
          h.require_below(find(rep, "J.hermitian_offfiber")->max_residual, 1e-10,
                          tag + " hermitian (H' block)");
          h.require_below(find(rep, "J.hermitian_fiber")->max_residual, 1e-10,
                          tag + " hermitian (fiber block)");
        }
      }
    }
  });

  h.criterion(6, "stiefel-complex n=1: full integrability certificate", [](Harness& h) {
    auto inst = stiefel_complex(1);
    JStructure J = build_J(*inst.bundle, FiberMatrix::standard());
    auto rep = verify_complex_structure(J, standard_opts(100, 10));
    h.require_below(find(rep, "curvature.vertical_mixed")->max_residual, 1e-10,
                    "d eta-hat_k(xi_i, xi*)");
    h.require_below(find(rep, "nijenhuis.case_fiber12")->max_residual, 1e-10, "fiber case 1-2");
    h.require_below(find(rep, "nijenhuis.case_fiber_mixed")->max_residual, 1e-10,
                    "fiber mixed cases");
    h.require_below(find(rep, "nijenhuis.case_vert_reeb")->max_residual, 1e-10,
                    "vertical-reeb case");
    h.require_below(find(rep, "nijenhuis.total")->max_residual, 1e-7, "total nijenhuis");
  });

  h.criterion(7, "convention audits: stiefel-complex n=2,3 and stiefel-real n=3", [](Harness& h) {
    struct Target {
      const char* name;
      int n;
    };
    for (Target t : {Target{"stiefel-complex", 2}, Target{"stiefel-complex", 3},
                     Target{"stiefel-real", 3}}) {
      auto audit = convention_audit(t.name, t.n, standard_opts(10, 3));
      std::string tag = std::string(t.name) + " n=" + std::to_string(t.n);
      h.require(audit.rows.size() == 32, tag + ": lattice not fully enumerated");
      const AuditRow* def = audit.default_row();
      h.require(def != nullptr && def->constructible, tag + ": default vertex missing");
      if (!def || !def->constructible) continue;
      h.require(def->guaranteed_pass, tag + ": guaranteed sub-checks failed");
      auto* ortho = find(def->guaranteed, "bundle.vertical_orthonormal");
      auto* killing = find(def->guaranteed, "bundle.vertical_killing");
      auto* equiv = find(def->guaranteed, "bundle.horizontal_equivariant");
      auto* xsu = find(def->guaranteed, "bundle.xistar_unit");
      auto* xso = find(def->guaranteed, "bundle.xistar_orthogonal");
      auto* eq12 = find(def->guaranteed, "curvature.vertical_mixed");
      h.require_below(ortho->max_residual, 1e-10, tag + " vertical orthonormality");
      h.require_below(killing->max_residual, 1e-10, tag + " vertical Killing");
      h.require_below(equiv->max_residual, 1e-12, tag + " horizontal equivariance");
      h.require_below(xsu->max_residual, 1e-12, tag + " xi* unit");
      h.require_below(xso->max_residual, 1e-12, tag + " xi* orthogonal");
      h.require_below(eq12->max_residual, 1e-10, tag + " d eta-hat_k(xi_i, xi*)");
      // the theorem-condition and Nijenhuis outcomes are recorded in the table
      for (const char* id : {"curvature.phi_invariance", "curvature.reeb_horizontal",
                             "nijenhuis.total", "nijenhuis.case_h_h"})
        h.require(find(def->recorded, id) != nullptr, tag + ": missing recorded check " + id);
    }

    // failure localization: a broken phi-hat is pinned to specific cases
    auto st = stiefel_complex(2);
    EndoField broken("id-on-H'", st.manifold->ambient_dim(),
                     [vert = st.bundle->vertical, xs = st.bundle->xi_star](auto x, auto u, auto out) {
                       subtract_frame_components_level(vert, xs, x, u, out);
                     });
    HopfBundleInstance bb{st.name, st.manifold, st.bundle->vertical, st.bundle->xi_star, broken,
                          st.bundle->right_action};
    auto rep = verify_complex_structure(build_J(bb, FiberMatrix::standard()),
                                        standard_opts(8, 3));
    h.require(!rep.all_passed(), "broken phi-hat not detected");
    h.require(find(rep, "nijenhuis.case_h_h")->status == CheckStatus::Fail,
              "failure not localized to the horizontal case");
    h.require(find(rep, "nijenhuis.case_fiber12")->status == CheckStatus::Pass,
              "fiber case falsely implicated");
  });

  h.criterion(8, "automorphisms and non-closed Kaehler form on the product instances",
              [](Harness& h) {
    for (int base : {1, 5}) {
      auto inst = product_instance(base);
      JStructure J = build_J(*inst.bundle, FiberMatrix::standard());
      auto rep = automorphism_and_nonkaehler_checks(J, standard_opts(25, 4));  // 100 triples
      std::string tag = inst.name;
      h.require_below(find(rep, "automorphism.xi_star")->max_residual, 1e-8, tag + " L_{xi*} J");
      h.require_below(find(rep, "automorphism.xi_3")->max_residual, 1e-8, tag + " L_{xi_3} J");
      const auto* nk = find(rep, "nonkaehler.domega_witness");
      h.require(nk->status == CheckStatus::Pass,
                tag + " d omega witness fraction " + fmt_g17(1.0 - nk->max_residual));
    }
  });

  h.criterion(9, "octonion layer: alternativity, associator, triple cross, frame correspondence",
              [](Harness& h) {
    Rng rng(42, 0x91);
    auto random_oct = [&rng]() {
      std::array<double, 8> c;
      for (auto& v : c) v = rng.next_gaussian();
      return octonion_from<double>(c);
    };
    double alt = 0, comp = 0;
    for (int t = 0; t < 1000; ++t) {
      Octonion x = random_oct(), y = random_oct();
      double scale = onorm(x) * onorm(x) * onorm(y);
      alt = std::max(alt, onorm(omul(omul(x, x), y) - omul(x, omul(x, y))) / scale);
      comp = std::max(comp, std::abs(onorm(omul(x, y)) - onorm(x) * onorm(y)) /
                               (onorm(x) * onorm(y)));
    }
    h.require_below(alt, 1e-12, "alternativity (relative)");
    h.require_below(comp, 1e-12, "norm multiplicativity (relative)");
    h.require(onorm(associator(Octonion::basis(1), Octonion::basis(2), Octonion::basis(4))) > 0.5,
              "associator of (e1, e2, e4) too small");

    double cross = 0;
    for (int t = 0; t < 200; ++t) {
      Octonion x = random_oct(), y = random_oct(), z = random_oct();
      x = (1.0 / onorm(x)) * x;
      y = y - odot(y, x) * x;
      y = (1.0 / onorm(y)) * y;
      z = z - odot(z, x) * x - odot(z, y) * y;
      z = (1.0 / onorm(z)) * z;
      Octonion w = triple_cross(x, y, z);
      cross = std::max(cross, std::abs(onorm(w) - 1.0));
      cross = std::max(cross, std::abs(odot(w, x)));
      cross = std::max(cross, std::abs(odot(w, y)));
      cross = std::max(cross, std::abs(odot(w, z)));
    }
    h.require_below(cross, 1e-12, "triple cross on orthonormal triples");

    auto g2 = g2_instance();
    for (const auto& p : g2.manifold->sample(20, 42)) {
      Vec e1 = p.coords.segment(0, 7), e2 = p.coords.segment(7, 7), e4 = p.coords.segment(14, 7);
      auto frame = g2_complete_frame(e1, e2, e4);
      double ortho = 0;
      for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j)
          ortho = std::max(ortho, std::abs(frame[i].dot(frame[j]) - (i == j ? 1.0 : 0.0)));
      h.require_below(ortho, 1e-10, "completion orthonormality");
      double rt = (frame[0] - e1).norm() + (frame[1] - e2).norm() + (frame[3] - e4).norm();
      h.require(rt == 0.0, "completion/forgetting round trip not exact");
    }
  });

  h.criterion(10, "determinism, exit codes and golden reports", [](Harness& h) {
    std::string w1 = "/tmp/hopfcx_acc_w1.json", w8 = "/tmp/hopfcx_acc_w8.json";
    std::string base = "verify --instance stiefel-complex --n 2 --samples 8 --tangent-args 3 "
                       "--seed 11 ";
    h.require(run_cli(base + "--workers 1 --out " + w1) == 0, "verify (workers 1) exit code");
    h.require(run_cli(base + "--workers 8 --out " + w8) == 0, "verify (workers 8) exit code");
    h.require(slurp(w1) == slurp(w8), "reports differ across worker counts");

    h.require(run_cli("verify --instance product --n 1 --samples 6 --tangent-args 3") == 0,
              "exit 0 on a passing run");
    {
      std::ofstream f("/tmp/hopfcx_acc_broken.json");
      f << R"({"instance":"stiefel-complex","n":2,"samples":6,"tangent_args":3,
              "convention":{"vertical_signs":[-1,1,1]}})";
    }
    h.require(run_cli("verify --manifest /tmp/hopfcx_acc_broken.json") == 1,
              "exit 1 on a failing check");
    h.require(run_cli("verify --instance stiefel-real --n 2") == 2,
              "exit 2 on regularity/infeasibility errors");
    {
      std::ofstream f("/tmp/hopfcx_acc_bad.json");
      f << "{malformed";
    }
    h.require(run_cli("verify --manifest /tmp/hopfcx_acc_bad.json") == 3,
              "exit 3 on malformed manifests");

    std::string g1 = "/tmp/hopfcx_acc_g1.json", g2p = "/tmp/hopfcx_acc_g2.json";
    std::string gold = "verify --instance product --n 1 --samples 6 --tangent-args 3 --seed 7 ";
    h.require(run_cli(gold + "--out " + g1) == 0, "golden run 1");
    h.require(run_cli(gold + "--workers 4 --out " + g2p) == 0, "golden run 2");
    h.require(slurp(g1) == slurp(g2p), "golden bytes differ across runs");
    std::string committed = slurp(std::string(GOLDEN_DIR) + "/product_s1_verify.json");
    h.require(slurp(g1) == committed, "golden bytes differ from the committed file");
  });

  std::printf("%d/10 criteria passed\n", 10 - h.failures);
  return h.failures == 0 ? 0 : 1;
}
