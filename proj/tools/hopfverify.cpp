#include <CLI11.hpp>
#include <iostream>

#include "hopfcx/driver.hpp"

using namespace hopfcx;

namespace {

void add_run_flags(CLI::App* cmd, RunConfig& cfg, std::string& manifest_path) {
  cmd->add_option("--manifest", manifest_path, "JSON manifest file (flags override its fields)");
  cmd->add_option("--instance", cfg.instance, "instance name (see list-instances)");
  cmd->add_option("--n", cfg.n, "instance parameter n");
  cmd->add_option("--samples", cfg.samples, "sampled points")->check(CLI::PositiveNumber);
  cmd->add_option("--tangent-args", cfg.tangent_args, "random tangent arguments per point")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", cfg.seed, "RNG seed");
  cmd->add_option("--tol", cfg.tol, "override every check tolerance (0 keeps defaults)");
  cmd->add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--out", cfg.out_path, "report output path (stdout when omitted)");
}

RunConfig merge_config(const CLI::App* cmd, RunConfig flags, const std::string& manifest_path) {
  if (manifest_path.empty()) {
    if (flags.instance.empty()) throw ManifestError("--instance or --manifest required");
    return flags;
  }
  RunConfig cfg = config_from_manifest_file(manifest_path);
  if (cmd->count("--instance")) cfg.instance = flags.instance;
  if (cmd->count("--n")) cfg.n = flags.n;
  if (cmd->count("--samples")) cfg.samples = flags.samples;
  if (cmd->count("--tangent-args")) cfg.tangent_args = flags.tangent_args;
  if (cmd->count("--seed")) cfg.seed = flags.seed;
  if (cmd->count("--tol")) cfg.tol = flags.tol;
  if (cmd->count("--workers")) cfg.workers = flags.workers;
  if (cmd->count("--out")) cfg.out_path = flags.out_path;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical verification of almost-complex structures on induced S^3-bundles"};
  app.require_subcommand(1);

  RunConfig vcfg, acfg;
  std::string vmanifest, amanifest;
  CLI::App* verify = app.add_subcommand("verify", "run the verification suite for an instance");
  add_run_flags(verify, vcfg, vmanifest);
  CLI::App* audit = app.add_subcommand("audit", "enumerate the convention lattice and rank it");
  add_run_flags(audit, acfg, amanifest);
  CLI::App* list = app.add_subcommand("list-instances", "print the instance catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitManifestError;
  }

  try {
    if (list->parsed()) {
      std::cout << list_instances_text();
      return kExitPass;
    }
    if (verify->parsed()) return run_verify(merge_config(verify, vcfg, vmanifest));
    if (audit->parsed()) return run_audit(merge_config(audit, acfg, amanifest));
  } catch (const ManifestError& e) {
    std::cerr << "manifest error: " << e.what() << "\n";
    return kExitManifestError;
  }
  return kExitManifestError;
}
