#pragma once

#include "lsqsubdiv/analysis.hpp"
#include "lsqsubdiv/llr.hpp"
#include "lsqsubdiv/noise.hpp"
#include "lsqsubdiv/schemes.hpp"
#include "lsqsubdiv/subdivide.hpp"

#include <json.hpp>

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lsqsub::io {

using Json = nlohmann::ordered_json;

/// Shortest decimal that parses back to the same double.
[[nodiscard]] std::string format_double(double v);

/// Comma separated, header row, LF line endings. All columns must have the
/// same length.
[[nodiscard]] std::string csv(const std::vector<std::string>& header,
                              const std::vector<std::span<const double>>& columns);

[[nodiscard]] std::string samples_csv(const LimitSamples& s, std::string_view value_name = "value");
[[nodiscard]] std::string psi_stats_csv(const std::vector<ConjectureRow>& rows);

/// Numerators are JSON integers when they fit in 64 bits, strings otherwise.
[[nodiscard]] Json mask_json(const SchemeSpec& spec, const Mask& m);
[[nodiscard]] Json regularity_json(const SchemeSpec& spec, const RegularityReport& r);
[[nodiscard]] Json decomposition_json(double x, double sigma, const ErrorDecomposition& e);
[[nodiscard]] Json bandwidth_json(const BandwidthSelection& sel);

void write_file(const std::filesystem::path& path, std::string_view content);
[[nodiscard]] std::string read_file(const std::filesystem::path& path);

} // namespace lsqsub::io
