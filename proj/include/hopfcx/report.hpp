#pragma once

#include <json.hpp>
#include <string>
#include <vector>

namespace hopfcx {

enum class CheckStatus { Pass, Fail, VacuousPass, Error };

std::string to_string(CheckStatus s);

// One verified identity: residual statistics over the sampled points plus
// the anchor text of the identity itself, so reports are self-documenting.
struct CheckRecord {
  std::string id;
  std::string anchor;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  long long samples = 0;
  double tolerance = 0.0;
  CheckStatus status = CheckStatus::Pass;
  std::string note;
};

// Builds a record from per-sample residuals reduced in index order (keeps
// aggregation independent of worker scheduling).
CheckRecord make_check(std::string id, std::string anchor, const std::vector<double>& residuals,
                       double tolerance, std::string note = "");

CheckRecord vacuous_check(std::string id, std::string anchor, std::string note);

struct VerificationReport {
  std::string kind;  // "verify" or "audit"
  std::string instance;
  nlohmann::ordered_json manifest;  // canonical run configuration
  std::vector<CheckRecord> checks;

  void append(CheckRecord r) { checks.push_back(std::move(r)); }
  void append(const std::vector<CheckRecord>& rs) { checks.insert(checks.end(), rs.begin(), rs.end()); }

  bool all_passed() const;       // no Fail and no Error
  bool any_error() const;
  const CheckRecord* first_failure() const;

  nlohmann::ordered_json to_json() const;
  // Stable bytes: fixed field order, %.17g decimal floats.
  std::string serialize() const;
};

// %.17g decimal rendering used everywhere a float enters a report.
std::string fmt_g17(double v);

// FNV-1a hash of a string, hex-encoded; used to fingerprint manifests.
std::string fnv1a_hex(const std::string& s);

nlohmann::ordered_json check_to_json(const CheckRecord& r);

}  // namespace hopfcx
