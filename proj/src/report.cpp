#include "hopfcx/report.hpp"

#include <algorithm>
#include <cstdio>

namespace hopfcx {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::VacuousPass: return "vacuous-pass";
    case CheckStatus::Error: return "error";
  }
  return "unknown";
}

std::string fmt_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CheckRecord make_check(std::string id, std::string anchor, const std::vector<double>& residuals,
                       double tolerance, std::string note) {
  CheckRecord r;
  r.id = std::move(id);
  r.anchor = std::move(anchor);
  r.tolerance = tolerance;
  r.note = std::move(note);
  r.samples = static_cast<long long>(residuals.size());
  if (residuals.empty()) {
    r.status = CheckStatus::VacuousPass;
    return r;
  }
  double mx = 0.0, sum = 0.0;
  for (double v : residuals) {
    mx = std::max(mx, v);
    sum += v;
  }
  r.max_residual = mx;
  r.mean_residual = sum / static_cast<double>(residuals.size());
  r.status = mx < tolerance ? CheckStatus::Pass : CheckStatus::Fail;
  return r;
}

CheckRecord vacuous_check(std::string id, std::string anchor, std::string note) {
  CheckRecord r;
  r.id = std::move(id);
  r.anchor = std::move(anchor);
  r.status = CheckStatus::VacuousPass;
  r.note = std::move(note);
  return r;
}

bool VerificationReport::all_passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckRecord& r) {
    return r.status == CheckStatus::Fail || r.status == CheckStatus::Error;
  });
}

bool VerificationReport::any_error() const {
  return std::any_of(checks.begin(), checks.end(),
                     [](const CheckRecord& r) { return r.status == CheckStatus::Error; });
}

const CheckRecord* VerificationReport::first_failure() const {
  for (const auto& r : checks)
    if (r.status == CheckStatus::Fail || r.status == CheckStatus::Error) return &r;
  return nullptr;
}

nlohmann::ordered_json check_to_json(const CheckRecord& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["anchor"] = r.anchor;
  j["status"] = to_string(r.status);
  j["max_residual"] = fmt_g17(r.max_residual);
  j["mean_residual"] = fmt_g17(r.mean_residual);
  j["samples"] = r.samples;
  j["tolerance"] = fmt_g17(r.tolerance);
  j["note"] = r.note;
  return j;
}

nlohmann::ordered_json VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = "hopfcx-report-v1";
  j["kind"] = kind;
  j["instance"] = instance;
  j["manifest"] = manifest;
  j["manifest_hash"] = fnv1a_hex(manifest.dump());
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  long long pass = 0, fail = 0, vacuous = 0, errors = 0;
  for (const auto& r : checks) {
    arr.push_back(check_to_json(r));
    switch (r.status) {
      case CheckStatus::Pass: ++pass; break;
      case CheckStatus::Fail: ++fail; break;
      case CheckStatus::VacuousPass: ++vacuous; break;
      case CheckStatus::Error: ++errors; break;
    }
  }
  j["checks"] = std::move(arr);
  j["summary"] = {{"passed", pass}, {"failed", fail}, {"vacuous", vacuous}, {"errors", errors}};
  return j;
}

std::string VerificationReport::serialize() const { return to_json().dump(2) + "\n"; }

}  // namespace hopfcx
