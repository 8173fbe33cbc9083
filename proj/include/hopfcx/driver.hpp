#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "hopfcx/instances.hpp"
#include "hopfcx/report.hpp"
#include "hopfcx/sasaki.hpp"

namespace hopfcx {

// Exit codes of the batch front end.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitRuntimeError = 2;  // regularity / sampling errors
inline constexpr int kExitManifestError = 3;

struct RunConfig {
  std::string instance;
  int n = 1;
  long samples = 100;
  int tangent_args = 8;
  std::uint64_t seed = 42;
  double tol = 0.0;  // <= 0 keeps per-check defaults
  int workers = 1;
  std::string out_path;
  ConventionPoint convention;
  FiberMatrix fiber = FiberMatrix::standard();

  VerifyOptions verify_options() const;
  // Canonical manifest (excludes workers and output path, which must not
  // influence report bytes).
  nlohmann::ordered_json manifest() const;
};

// Parses a manifest document; throws ManifestError on malformed input.
RunConfig config_from_manifest(const nlohmann::json& doc);
RunConfig config_from_manifest_file(const std::string& path);

// Assembles the full verification report for a catalog instance.
VerificationReport run_verification(const RunConfig& cfg);

// Writes the report (or audit table) and returns the process exit code.
int run_verify(const RunConfig& cfg);
int run_audit(const RunConfig& cfg);

std::string list_instances_text();

}  // namespace hopfcx
