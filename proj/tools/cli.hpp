#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace lsqsub::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1; ///< I/O failure, or replay outputs that differ
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

/// Built-in test functions of the denoising experiments, plus "linear".
[[nodiscard]] std::function<double(double)> test_function(const std::string& id);
[[nodiscard]] std::vector<std::string> test_function_ids();

/// "3", "2:10" (inclusive range) or "1,3,5"; throws std::invalid_argument
/// on malformed or empty input.
[[nodiscard]] std::vector<int> parse_int_list(const std::string& text);

/// Runs one command line (without the program name). When `honour_env` is
/// set, LSQSUBDIV_SEED overrides --seed.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool honour_env = true);

} // namespace lsqsub::cli
