#include "chabauty/report.hpp"

namespace chabauty {

const char* version() { return CHABAUTY_VERSION; }

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "PASS";
    case Verdict::Fail:
      return "FAIL";
    case Verdict::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

Verdict worst(Verdict a, Verdict b) {
  if (a == Verdict::Fail || b == Verdict::Fail) return Verdict::Fail;
  if (a == Verdict::Inconclusive || b == Verdict::Inconclusive) return Verdict::Inconclusive;
  return Verdict::Pass;
}

VerificationReport::VerificationReport(std::string suite, std::uint64_t seed, nlohmann::json params)
    : suite_(std::move(suite)), seed_(seed), params_(std::move(params)) {}

ReportSummary VerificationReport::summary() const {
  ReportSummary s;
  s.total = cases_.size();
  for (const auto& c : cases_) {
    switch (c.verdict) {
      case Verdict::Pass:
        ++s.passed;
        break;
      case Verdict::Fail:
        ++s.failed;
        break;
      case Verdict::Inconclusive:
        ++s.inconclusive;
        break;
    }
  }
  return s;
}

std::vector<const ReportCase*> VerificationReport::failures() const {
  std::vector<const ReportCase*> out;
  for (const auto& c : cases_) {
    if (c.verdict == Verdict::Fail) out.push_back(&c);
  }
  return out;
}

Verdict VerificationReport::overall() const {
  Verdict v = Verdict::Pass;
  for (const auto& c : cases_) v = worst(v, c.verdict);
  return v;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& c : cases_) {
    cases.push_back({{"input", c.input}, {"verdict", to_string(c.verdict)}, {"data", c.data}});
  }
  nlohmann::json failures = nlohmann::json::array();
  for (const auto* c : this->failures()) failures.push_back(c->input);
  auto s = summary();
  nlohmann::json out = {
      {"suite", suite_},
      {"seed", seed_},
      {"version", version()},
      {"params", params_},
      {"cases", cases},
      {"failures", failures},
      {"summary", {{"total", s.total}, {"pass", s.passed}, {"fail", s.failed}, {"inconclusive", s.inconclusive}}},
  };
  if (!extra_.empty()) out["extra"] = extra_;
  return out;
}

}  // namespace chabauty
