#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "equispec/fock.hpp"

namespace equispec {

/// One verification record. status is "pass" exactly when the residual is
/// exactly zero (exact checks) or within the check's documented tolerance
/// (numeric checks).
struct CheckReport {
  std::string check_id;
  std::map<std::string, std::string> parameters;
  std::string status;    // pass | fail | inconclusive
  std::string residual;  // exact string or decimal
  long runtime_ms = 0;

  bool passed() const { return status == "pass"; }
};

inline CheckReport from_identity_check(const IdentityCheck& c,
                                       std::map<std::string, std::string> params) {
  const char* status = c.status == IdentityCheck::Status::pass ? "pass"
                       : c.status == IdentityCheck::Status::fail ? "fail"
                                                                 : "inconclusive";
  params["frontier"] = std::to_string(c.frontier);
  return {c.name, std::move(params), status, c.worst, 0};
}

inline void sort_reports(std::vector<CheckReport>& reports) {
  std::stable_sort(reports.begin(), reports.end(),
                   [](const CheckReport& a, const CheckReport& b) {
                     if (a.check_id != b.check_id) return a.check_id < b.check_id;
                     return a.parameters < b.parameters;
                   });
}

inline bool all_passed(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const CheckReport& r) { return r.passed(); });
}

/// Deterministic JSON: fixed key order, exact-number strings, no timings.
inline nlohmann::ordered_json to_json(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["check_id"] = r.check_id;
  nlohmann::ordered_json params;
  for (const auto& [key, value] : r.parameters) params[key] = value;
  j["parameters"] = params;
  j["status"] = r.status;
  j["residual"] = r.residual;
  return j;
}

inline nlohmann::ordered_json to_json(const std::vector<CheckReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return arr;
}

/// Fock-suite record shape: {check, k, q, N, status, worst_residual, frontier}.
inline nlohmann::ordered_json fock_record(const IdentityCheck& c, const std::string& k,
                                          const std::string& q, int levels) {
  nlohmann::ordered_json j;
  j["check"] = c.name;
  j["k"] = k;
  j["q"] = q;
  j["N"] = levels;
  j["status"] = c.status == IdentityCheck::Status::pass ? "pass"
                : c.status == IdentityCheck::Status::fail ? "fail"
                                                          : "inconclusive";
  j["worst_residual"] = c.worst;
  j["frontier"] = c.frontier;
  return j;
}

}  // namespace equispec
