#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "chabauty/finite_lattice.hpp"
#include "chabauty/metric.hpp"
#include "chabauty/report.hpp"

namespace chabauty::cli {

struct RunConfig {
  std::uint64_t seed = 42;
  MetricParams params{12, Rational(1, 40)};
  Rational eps{1, 10};
  std::size_t net_cap = kDefaultNetCap;
  std::int64_t order_cap = kDefaultOrderCap;
  // Transference constant; zero means C_d = d.
  Rational cd = 0;
  // Zero means the suite default.
  std::size_t trials = 0;
  std::int64_t max_order = 64;
};

const std::vector<std::string>& suite_names();

// Throws PreconditionError for an unknown suite.
VerificationReport run_suite(std::string_view name, const RunConfig& config);

VerificationReport duality_suite(const RunConfig& config);
VerificationReport transference_suite(const RunConfig& config);
VerificationReport paths_suite(const RunConfig& config);
VerificationReport finite_suite(const RunConfig& config);
VerificationReport components_suite(const RunConfig& config);

nlohmann::json config_to_json(const RunConfig& config);

}  // namespace chabauty::cli
