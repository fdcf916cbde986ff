#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace chabauty {

const char* version();

enum class Verdict { Pass, Fail, Inconclusive };

const char* to_string(Verdict v);
// Fail dominates Inconclusive, which dominates Pass.
Verdict worst(Verdict a, Verdict b);

struct ReportCase {
  std::string input;
  Verdict verdict = Verdict::Pass;
  nlohmann::json data = nlohmann::json::object();
};

struct ReportSummary {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t inconclusive = 0;
};

class VerificationReport {
 public:
  VerificationReport() = default;
  VerificationReport(std::string suite, std::uint64_t seed, nlohmann::json params = nlohmann::json::object());

  void add(ReportCase c) { cases_.push_back(std::move(c)); }
  void set_extra(const std::string& key, nlohmann::json value) { extra_[key] = std::move(value); }

  const std::string& suite() const { return suite_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<ReportCase>& cases() const { return cases_; }
  const nlohmann::json& params() const { return params_; }
  const nlohmann::json& extra() const { return extra_; }

  ReportSummary summary() const;
  std::vector<const ReportCase*> failures() const;
  Verdict overall() const;
  bool ok() const { return summary().failed == 0; }

  nlohmann::json to_json() const;

 private:
  std::string suite_;
  std::uint64_t seed_ = 0;
  nlohmann::json params_ = nlohmann::json::object();
  nlohmann::json extra_ = nlohmann::json::object();
  std::vector<ReportCase> cases_;
};

}  // namespace chabauty
