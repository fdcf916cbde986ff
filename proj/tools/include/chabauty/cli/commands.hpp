#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

namespace chabauty::cli {

// Environment lookup, injectable for tests.
using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

inline constexpr const char* kEnvPrefix = "CHABAUTY_";

// Exit codes: 0 success, 1 a FAIL verdict, 2 usage or input error,
// 3 resource cap exceeded.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err,
        const EnvLookup& env);

// Same, reading the process environment.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace chabauty::cli
