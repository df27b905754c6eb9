#include "lsqsubdiv/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace lsqsub::io {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv(const std::vector<std::string>& header, const std::vector<std::span<const double>>& columns) {
  if (header.size() != columns.size()) throw std::invalid_argument("csv: header and column count differ");
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns)
    if (c.size() != rows) throw std::invalid_argument("csv: ragged columns");
  std::string out;
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (k) out += ',';
    out += header[k];
  }
  out += '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t k = 0; k < columns.size(); ++k) {
      if (k) out += ',';
      out += format_double(columns[k][r]);
    }
    out += '\n';
  }
  return out;
}

std::string samples_csv(const LimitSamples& s, std::string_view value_name) {
  std::vector<double> xs(s.values.size());
  for (std::size_t k = 0; k < xs.size(); ++k) xs[k] = s.x(s.first_index + static_cast<long>(k));
  return csv({"x", std::string(value_name)}, {xs, s.values});
}

std::string psi_stats_csv(const std::vector<ConjectureRow>& rows) {
  std::string out = "degree,n,min,max,integral\n";
  for (const auto& r : rows) {
    out += std::to_string(r.degree) + ',' + std::to_string(r.n) + ',' + format_double(r.stats.min) + ',' +
           format_double(r.stats.max) + ',' + format_double(r.stats.integral) + '\n';
  }
  return out;
}

Json mask_json(const SchemeSpec& spec, const Mask& m) {
  Json j;
  j["family"] = std::string(to_string(spec.family));
  j["n"] = spec.n;
  j["degree"] = spec.degree;
  j["first_index"] = m.first_index;
  if (auto im = integer_form(m)) {
    Json nums = Json::array();
    for (const auto& v : im->numerators) {
      if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        nums.push_back(static_cast<std::int64_t>(v));
      else
        nums.push_back(v.str());
    }
    j["numerators"] = nums;
    if (im->denominator <= std::numeric_limits<std::int64_t>::max())
      j["denominator"] = static_cast<std::int64_t>(im->denominator);
    else
      j["denominator"] = im->denominator.str();
  }
  j["coefficients"] = m.coefficients;
  return j;
}

Json regularity_json(const SchemeSpec& spec, const RegularityReport& r) {
  Json j;
  j["family"] = std::string(to_string(spec.family));
  j["n"] = spec.n;
  j["degree"] = spec.degree;
  j["m"] = r.smoothness_factor_multiplicity;
  j["L"] = r.iterations;
  j["iterated_norm"] = r.iterated_norm;
  j["lower_bound"] = r.lower_bound;
  return j;
}

Json decomposition_json(double x, double sigma, const ErrorDecomposition& e) {
  Json j;
  j["x"] = x;
  j["sigma"] = sigma;
  j["variance_term"] = e.variance_term;
  j["bias_sq_term"] = e.bias_sq_term;
  j["total"] = e.total;
  return j;
}

Json bandwidth_json(const BandwidthSelection& sel) {
  Json j;
  j["bandwidth"] = sel.bandwidth;
  j["candidates"] = sel.candidates;
  // JSON has no infinity; singular candidates are reported as null.
  Json scores = Json::array();
  for (double s : sel.loo_scores) {
    if (std::isfinite(s))
      scores.push_back(s);
    else
      scores.push_back(nullptr);
  }
  j["loo_scores"] = scores;
  return j;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace lsqsub::io
