#include "cli.hpp"

#include "lsqsubdiv/analysis.hpp"
#include "lsqsubdiv/errors.hpp"
#include "lsqsubdiv/io.hpp"
#include "lsqsubdiv/llr.hpp"
#include "lsqsubdiv/noise.hpp"
#include "lsqsubdiv/schemes.hpp"
#include "lsqsubdiv/subdivide.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>

#ifndef LSQSUBDIV_VERSION
#define LSQSUBDIV_VERSION "0.0.0"
#endif

namespace lsqsub::cli {

namespace fs = std::filesystem;
using io::Json;

std::function<double(double)> test_function(const std::string& id) {
  if (id == "fig4") return [](double x) { return std::sin(x / 10.0) + (x / 50.0) * (x / 50.0); };
  if (id == "fig6") return [](double x) { return std::cos(0.4 * x) + std::pow(x / 40.0 - 1.0, 3); };
  if (id == "fig7") return [](double x) { return x >= 50.0 ? 1.0 : 0.0; };
  if (id == "fig10") return [](double x) { return std::cos(0.1 * x) - std::pow(x / 50.0 - 1.0, 3); };
  if (id == "fig11") return [](double x) { return std::cos(0.4 * x) - std::pow(x / 50.0 - 0.8, 3); };
  if (id == "linear") return [](double x) { return 0.5 + 0.02 * x; };
  throw std::invalid_argument("unknown function id '" + id + "'");
}

std::vector<std::string> test_function_ids() { return {"fig4", "fig6", "fig7", "fig10", "fig11", "linear"}; }

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("not an integer: '" + s + "'");
    }
    if (used != s.size()) throw std::invalid_argument("not an integer: '" + s + "'");
    return v;
  };
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (item.empty()) throw std::invalid_argument("empty entry in integer list '" + text + "'");
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos) {
      out.push_back(to_int(item));
    } else {
      const int a = to_int(item.substr(0, colon)), b = to_int(item.substr(colon + 1));
      if (a > b) throw std::invalid_argument("empty range '" + item + "'");
      for (int v = a; v <= b; ++v) out.push_back(v);
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

namespace {

struct OutputFile {
  std::string name;
  std::string content;
};

// What a command produced; written either to stdout or to an output directory
// together with a manifest.
struct Result {
  std::string command;
  std::vector<std::string> argv; ///< canonical re-invocation
  Json parameters = Json::object();
  std::optional<std::uint64_t> seed;
  Json grid = Json::object();
  std::vector<OutputFile> files;
  std::string stdout_text;
};

std::string fnv1a64(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string num(double v) { return io::format_double(v); }

void emit(const Result& r, const std::string& out_dir, const std::vector<std::string>& command_line,
          std::ostream& out) {
  if (!out_dir.empty()) {
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    Json outputs = Json::array();
    for (const auto& f : r.files) {
      io::write_file(dir / f.name, f.content);
      Json o;
      o["file"] = f.name;
      o["bytes"] = f.content.size();
      o["fnv1a64"] = fnv1a64(f.content);
      outputs.push_back(o);
    }
    Json m;
    m["artifact"] = "lsqsubdiv";
    m["version"] = LSQSUBDIV_VERSION;
    m["command"] = r.command;
    m["command_line"] = command_line;
    m["argv"] = r.argv;
    m["parameters"] = r.parameters;
    m["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
    m["grid"] = r.grid;
    m["outputs"] = outputs;
    io::write_file(dir / "manifest.json", m.dump(2) + "\n");
  }
  out << r.stdout_text;
}

// Replaces any --out-dir in argv by `out_dir` (dropped when empty).
std::vector<std::string> with_out_dir(std::vector<std::string> argv, const std::string& out_dir) {
  const auto it = std::find(argv.begin(), argv.end(), "--out-dir");
  if (it != argv.end()) argv.erase(it, std::min(it + 2, argv.end()));
  if (!out_dir.empty()) {
    argv.push_back("--out-dir");
    argv.push_back(out_dir);
  }
  return argv;
}

SchemeSpec make_spec(const std::string& family, int n, int degree) {
  SchemeSpec s{parse_family(family), n, degree};
  s.validate();
  return s;
}

Json spec_json(const SchemeSpec& s) {
  Json j;
  j["family"] = std::string(to_string(s.family));
  j["n"] = s.n;
  j["degree"] = s.degree;
  return j;
}

struct Preset {
  std::string function;
  std::string family;
  int n;
  int degree;
  bool llr;
};

const std::map<std::string, Preset>& presets() {
  // fig7-text follows the body text (S_5 on the step function), fig7-caption
  // the caption (S_3 on the oscillatory function).
  static const std::map<std::string, Preset> p = {
      {"fig4", {"fig4", "primal-even", 3, 1, true}},      {"fig5", {"fig4", "primal-even", 5, 1, true}},
      {"fig6", {"fig6", "primal-even", 3, 1, true}},      {"fig7-text", {"fig7", "primal-even", 5, 1, true}},
      {"fig7-caption", {"fig6", "primal-even", 3, 1, true}}, {"fig10-n6", {"fig10", "primal-even", 6, 3, false}},
      {"fig10-n9", {"fig10", "primal-even", 9, 3, false}}, {"fig11-n6", {"fig11", "primal-even", 6, 3, false}},
      {"fig11-n9", {"fig11", "primal-even", 9, 3, false}},
  };
  return p;
}

std::uint64_t parse_seed(const std::string& s) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("LSQSUBDIV_SEED is not an unsigned integer: '" + s + "'");
  }
  if (used != s.size() || s.front() == '-')
    throw std::invalid_argument("LSQSUBDIV_SEED is not an unsigned integer: '" + s + "'");
  return v;
}

const char* kFooter = R"(Exit codes:
  0  success
  1  I/O failure, or replay outputs differ from the manifest
  2  usage error (bad flag, invalid scheme parameters, empty lists)
  3  numeric failure (singular fit, nonzero division remainder, degenerate eigenspace)

Environment:
  LSQSUBDIV_SEED  overrides --seed of the denoise command when set

With --out-dir every command writes its CSV/JSON files and a manifest.json
that `replay` re-runs; otherwise results go to stdout.)";

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool honour_env) {
  CLI::App app{"Least squares subdivision schemes: masks, regularity bounds, limit functions and denoising "
               "experiments.",
               "lsqsubdiv"};
  app.footer(kFooter);
  app.set_version_flag("--version", std::string(LSQSUBDIV_VERSION));
  app.require_subcommand(1, 1);

  std::string out_dir;
  auto add_out_dir = [&](CLI::App* sub) {
    sub->add_option("--out-dir", out_dir, "Write files and manifest.json to this directory");
  };
  auto add_family = [](CLI::App* sub, std::string& family) {
    return sub->add_option("--family", family, "primal-even | dual-even | primal-odd | dual-odd")
        ->capture_default_str();
  };

  // mask
  std::string m_family = "primal-even";
  int m_n = 1, m_degree = 1;
  bool m_json = false;
  auto* c_mask = app.add_subcommand("mask", "Print the exact refinement mask");
  add_family(c_mask, m_family);
  c_mask->add_option("--n", m_n, "Locality parameter n >= 1")->required();
  c_mask->add_option("--degree", m_degree, "Fitting degree")->capture_default_str();
  c_mask->add_flag("--json", m_json, "Print JSON instead of [..]/denominator");
  add_out_dir(c_mask);

  // regularity
  std::string r_family = "primal-even", r_ns;
  int r_degree = 1, r_L = 16;
  auto* c_reg = app.add_subcommand("regularity", "Hoelder regularity lower bounds as CSV");
  add_family(c_reg, r_family);
  c_reg->add_option("--n", r_ns, "n values: 5, 2:10 or 2,4,6")->required();
  c_reg->add_option("--degree", r_degree, "Fitting degree")->capture_default_str();
  c_reg->add_option("--L", r_L, "Number of iterations L (1..24)")->capture_default_str();
  add_out_dir(c_reg);

  // blf / psi
  std::string b_family = "primal-even";
  int b_n = 1, b_degree = 1, b_K = 10;
  bool b_derivative = false;
  auto* c_blf = app.add_subcommand("blf", "Basic limit function samples as CSV");
  add_family(c_blf, b_family);
  c_blf->add_option("--n", b_n, "Locality parameter")->required();
  c_blf->add_option("--degree", b_degree, "Fitting degree")->capture_default_str();
  c_blf->add_option("--K", b_K, "Refinement levels (grid 2^-K)")->capture_default_str();
  c_blf->add_flag("--derivative", b_derivative, "Sample the derivative at cell midpoints instead");
  add_out_dir(c_blf);

  std::string p_family = "primal-even";
  int p_n = 1, p_degree = 1, p_K = 10;
  auto* c_psi = app.add_subcommand("psi", "psi(x) = sum_i phi(x-i)^2 on [0,1] as CSV");
  add_family(c_psi, p_family);
  c_psi->add_option("--n", p_n, "Locality parameter")->required();
  c_psi->add_option("--degree", p_degree, "Fitting degree")->capture_default_str();
  c_psi->add_option("--K", p_K, "Refinement levels (grid 2^-K)")->capture_default_str();
  add_out_dir(c_psi);

  // psistats
  std::string s_family = "primal-even", s_ns, s_degrees = "1";
  int s_K = 12;
  double s_h = 0.002;
  auto* c_stats = app.add_subcommand("psistats", "min, max and integral of psi as CSV");
  add_family(c_stats, s_family);
  c_stats->add_option("--n", s_ns, "n values: 5, 2:10 or 2,4,6")->required();
  c_stats->add_option("--degree", s_degrees, "Degree values, same syntax")->capture_default_str();
  c_stats->add_option("--K", s_K, "Refinement levels")->capture_default_str();
  c_stats->add_option("--step", s_h, "Trapezoid step over [0,1]")->capture_default_str();
  add_out_dir(c_stats);

  // denoise
  std::string d_preset, d_function = "fig4", d_family = "primal-even";
  double d_sigma = 0.5;
  std::uint64_t d_seed = 1;
  int d_n = 3, d_degree = 1, d_K = 6;
  long d_xmin = 0, d_xmax = 100;
  bool d_llr = false;
  auto* c_den = app.add_subcommand("denoise", "Subdivision limit (and optionally LLR) of noisy samples");
  c_den->add_option("--preset", d_preset,
                                     "fig4 | fig5 | fig6 | fig7-text | fig7-caption | fig10-n6 | fig10-n9 | "
                                     "fig11-n6 | fig11-n9; explicit flags override it");
  auto* o_function =
      c_den->add_option("--function", d_function, "fig4 | fig6 | fig7 | fig10 | fig11 | linear")->capture_default_str();
  c_den->add_option("--sigma", d_sigma, "Noise standard deviation")->capture_default_str();
  c_den->add_option("--seed", d_seed, "Noise seed (LSQSUBDIV_SEED overrides)")->capture_default_str();
  auto* o_dfamily = add_family(c_den, d_family);
  auto* o_dn = c_den->add_option("--n", d_n, "Locality parameter")->capture_default_str();
  auto* o_ddeg = c_den->add_option("--degree", d_degree, "Fitting degree")->capture_default_str();
  c_den->add_option("--K", d_K, "Limit reported on the 2^-K grid")->capture_default_str();
  c_den->add_option("--x-min", d_xmin, "Left end of the reporting interval")->capture_default_str();
  c_den->add_option("--x-max", d_xmax, "Right end of the reporting interval (dual families report [x-min + 1/2, x-max - 1/2])")->capture_default_str();
  auto* o_llr = c_den->add_flag("--llr", d_llr, "Also fit local linear regression (LOO bandwidth)");
  c_den->add_option("--out-dir", out_dir, "Output directory")->required();

  // conjectures
  std::string c_degrees, c_ns;
  int c_K = 12;
  auto* c_conj = app.add_subcommand("conjectures", "psi statistics over a (degree, n) grid of primal-even schemes");
  c_conj->add_option("--degrees", c_degrees, "Degree values: 1,3,5 or 1:5")->required();
  c_conj->add_option("--ns", c_ns, "n values: 1,3,5,7 or 2:10")->required();
  c_conj->add_option("--K", c_K, "Refinement levels")->capture_default_str();
  add_out_dir(c_conj);

  // replay
  std::string rp_manifest;
  auto* c_replay = app.add_subcommand("replay", "Re-run a manifest into a directory and compare digests");
  c_replay->add_option("--manifest", rp_manifest, "manifest.json to replay")->required();
  c_replay->add_option("--out-dir", out_dir, "Directory for the replayed outputs")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Result r;
    if (c_mask->parsed()) {
      const SchemeSpec spec = make_spec(m_family, m_n, m_degree);
      const Mask a = mask(spec);
      const Json j = io::mask_json(spec, a);
      r.command = "mask";
      r.argv = {"mask", "--family", m_family, "--n", std::to_string(m_n), "--degree", std::to_string(m_degree)};
      if (m_json) r.argv.push_back("--json");
      r.parameters = spec_json(spec);
      r.files = {{"mask.json", j.dump(2) + "\n"}, {"mask.txt", format_mask(a) + "\n"}};
      r.stdout_text = m_json ? j.dump(2) + "\n" : format_mask(a) + "\n";
    } else if (c_reg->parsed()) {
      const auto ns = parse_int_list(r_ns);
      std::string text = "family,n,degree,m,L,iterated_norm,lower_bound\n";
      for (int n : ns) {
        const SchemeSpec spec = make_spec(r_family, n, r_degree);
        const RegularityReport rep = holder_lower_bound(mask(spec), r_L);
        text += std::string(to_string(spec.family)) + ',' + std::to_string(n) + ',' + std::to_string(r_degree) + ',' +
                std::to_string(rep.smoothness_factor_multiplicity) + ',' + std::to_string(rep.iterations) + ',' +
                num(rep.iterated_norm) + ',' + num(rep.lower_bound) + '\n';
      }
      r.command = "regularity";
      r.argv = {"regularity", "--family", r_family, "--n", r_ns, "--degree", std::to_string(r_degree),
                "--L", std::to_string(r_L)};
      r.parameters = {{"family", std::string(to_string(parse_family(r_family)))}, {"n", ns}, {"degree", r_degree},
                      {"L", r_L}};
      r.files = {{"regularity.csv", text}};
      r.stdout_text = text;
    } else if (c_blf->parsed()) {
      const SchemeSpec spec = make_spec(b_family, b_n, b_degree);
      const LimitSamples s = b_derivative ? blf_derivative(spec, b_K) : basic_limit_function(spec, b_K);
      const std::string text = io::samples_csv(s, b_derivative ? "dphi" : "phi");
      r.command = "blf";
      r.argv = {"blf", "--family", b_family, "--n", std::to_string(b_n), "--degree", std::to_string(b_degree),
                "--K", std::to_string(b_K)};
      if (b_derivative) r.argv.push_back("--derivative");
      r.parameters = spec_json(spec);
      r.parameters["derivative"] = b_derivative;
      r.grid = {{"resolution", b_K}, {"offset", s.offset}};
      r.files = {{"blf.csv", text}};
      r.stdout_text = text;
    } else if (c_psi->parsed()) {
      const SchemeSpec spec = make_spec(p_family, p_n, p_degree);
      const std::string text = io::samples_csv(psi(spec, p_K), "psi");
      r.command = "psi";
      r.argv = {"psi", "--family", p_family, "--n", std::to_string(p_n), "--degree", std::to_string(p_degree),
                "--K", std::to_string(p_K)};
      r.parameters = spec_json(spec);
      r.grid = {{"resolution", p_K}, {"interval", {0, 1}}};
      r.files = {{"psi.csv", text}};
      r.stdout_text = text;
    } else if (c_stats->parsed()) {
      const auto ns = parse_int_list(s_ns);
      const auto ds = parse_int_list(s_degrees);
      std::vector<ConjectureRow> rows;
      for (int d : ds)
        for (int n : ns) rows.push_back({d, n, psi_stats(make_spec(s_family, n, d), s_K, s_h)});
      const std::string text = io::psi_stats_csv(rows);
      r.command = "psistats";
      r.argv = {"psistats", "--family", s_family, "--n", s_ns, "--degree", s_degrees, "--K", std::to_string(s_K),
                "--step", num(s_h)};
      r.parameters = {{"family", std::string(to_string(parse_family(s_family)))}, {"n", ns}, {"degree", ds}};
      r.grid = {{"resolution", s_K}, {"trapezoid_step", s_h}};
      r.files = {{"psistats.csv", text}};
      r.stdout_text = text;
    } else if (c_conj->parsed()) {
      const auto ds = parse_int_list(c_degrees);
      const auto ns = parse_int_list(c_ns);
      const ConjectureReport rep = conjecture_probe(ds, ns, c_K);
      const std::string text = io::psi_stats_csv(rep.rows);
      Json verdict;
      Json by_degree = Json::object(), by_n = Json::object();
      for (const auto& [d, ok] : rep.max_decreasing_in_n) by_degree[std::to_string(d)] = ok;
      for (const auto& [n, ok] : rep.integral_increasing_in_degree) by_n[std::to_string(n)] = ok;
      verdict["max_psi_decreasing_in_n"] = by_degree;
      verdict["integral_increasing_in_degree"] = by_n;
      r.command = "conjectures";
      r.argv = {"conjectures", "--degrees", c_degrees, "--ns", c_ns, "--K", std::to_string(c_K)};
      r.parameters = {{"family", "primal-even"}, {"degrees", ds}, {"ns", ns}};
      r.grid = {{"resolution", c_K}, {"trapezoid_step", 0.002}};
      r.files = {{"conjectures.csv", text}, {"conjectures.json", verdict.dump(2) + "\n"}};
      r.stdout_text = text;
    } else if (c_den->parsed()) {
      if (!d_preset.empty()) {
        const auto it = presets().find(d_preset);
        if (it == presets().end()) throw std::invalid_argument("unknown preset '" + d_preset + "'");
        const Preset& p = it->second;
        if (o_function->count() == 0) d_function = p.function;
        if (o_dfamily->count() == 0) d_family = p.family;
        if (o_dn->count() == 0) d_n = p.n;
        if (o_ddeg->count() == 0) d_degree = p.degree;
        if (o_llr->count() == 0) d_llr = p.llr;
      }
      if (honour_env) {
        if (const char* env = std::getenv("LSQSUBDIV_SEED"); env && *env) d_seed = parse_seed(env);
      }
      if (!(d_sigma >= 0.0) || !std::isfinite(d_sigma)) throw std::invalid_argument("--sigma must be >= 0");
      if (d_xmin >= d_xmax) throw std::invalid_argument("--x-min must be below --x-max");
      if (d_K < 0 || d_K > 12) throw std::invalid_argument("--K must be in [0, 12]");
      const SchemeSpec spec = make_spec(d_family, d_n, d_degree);
      const auto f = test_function(d_function);

      // Samples extend past the reporting interval far enough that the limit
      // on [x_min, x_max] never sees the edge of the data. The padding is
      // that of the widest mask with n <= 10, so the same seed gives the
      // same samples for every scheme up to n = 10 and runs compare directly.
      const auto [lo, hi] = mask_support(Family::dual_odd, std::max(spec.n, 10));
      const long pad = 2L * (hi - lo) + 2;
      const NodeSet nodes(static_cast<double>(d_xmin - pad), 1.0, static_cast<int>(d_xmax - d_xmin + 2 * pad + 1));
      std::mt19937_64 engine(d_seed);
      const std::vector<double> ys = sample_noisy(f, nodes, d_sigma, engine);
      const std::vector<double> xs = nodes.points();
      const SignalLevel f0{0, d_xmin - pad, ys};

      // A dual limit at t reproduces the data at t + 1/2, so its grid is
      // reported half a unit right over [x_min + 1/2, x_max - 1/2].
      const bool dual = is_dual(spec.family);
      const LimitSamples lim = limit_on_interval(spec, f0, d_K, d_xmin, dual ? d_xmax - 1 : d_xmax);
      const double step = std::ldexp(1.0, -d_K);
      const NodeSet grid(d_xmin + (dual ? 0.5 : 0.0), step, static_cast<int>(lim.values.size()));
      const std::vector<double> gx = grid.points();
      std::vector<double> truth(gx.size());
      for (std::size_t i = 0; i < gx.size(); ++i) truth[i] = f(gx[i]);

      Json errors;
      errors["function"] = d_function;
      errors["family"] = std::string(to_string(spec.family));
      errors["n"] = spec.n;
      errors["degree"] = spec.degree;
      errors["sigma"] = d_sigma;
      errors["seed"] = d_seed;
      errors["limit_l2"] = l2_error(lim.values, truth, step);

      r.files.push_back({"truth.csv", io::csv({"x", "truth"}, {gx, truth})});
      r.files.push_back({"samples.csv", io::csv({"x", "y"}, {xs, ys})});
      r.files.push_back({"limit.csv", io::csv({"x", "limit"}, {gx, lim.values})});
      if (d_llr) {
        const auto cands = default_bandwidth_candidates(1.0);
        const BandwidthSelection sel = select_bandwidth(xs, ys, cands);
        const std::vector<double> est = llr_curve(xs, ys, grid, sel.bandwidth);
        errors["llr_l2"] = l2_error(est, truth, step);
        errors["llr_bandwidth"] = sel.bandwidth;
        r.files.push_back({"llr.csv", io::csv({"x", "estimate"}, {gx, est})});
        r.files.push_back({"bandwidth.json", io::bandwidth_json(sel).dump(2) + "\n"});
      } else {
        errors["llr_l2"] = nullptr;
      }
      r.files.push_back({"errors.json", errors.dump(2) + "\n"});

      r.command = "denoise";
      r.argv = {"denoise", "--function", d_function, "--sigma", num(d_sigma), "--seed", std::to_string(d_seed),
                "--family", d_family, "--n", std::to_string(d_n), "--degree", std::to_string(d_degree), "--K",
                std::to_string(d_K), "--x-min", std::to_string(d_xmin), "--x-max", std::to_string(d_xmax)};
      if (d_llr) r.argv.push_back("--llr");
      r.parameters = spec_json(spec);
      r.parameters["preset"] = d_preset.empty() ? Json(nullptr) : Json(d_preset);
      r.parameters["function"] = d_function;
      r.parameters["sigma"] = d_sigma;
      r.parameters["llr"] = d_llr;
      r.seed = d_seed;
      r.grid = {{"sample_first", d_xmin - pad}, {"sample_last", d_xmax + pad}, {"sample_step", 1},
                {"x_min", d_xmin},           {"x_max", d_xmax},          {"resolution", d_K},
                {"grid_first", grid.node(0)}, {"grid_count", grid.count}};
      r.stdout_text = errors.dump(2) + "\n";
    } else if (c_replay->parsed()) {
      Json m;
      try {
        m = Json::parse(io::read_file(rp_manifest));
      } catch (const Json::exception& e) {
        throw std::invalid_argument("cannot parse manifest: " + std::string(e.what()));
      }
      if (!m.contains("argv") || !m.contains("outputs")) throw std::invalid_argument("manifest lacks argv/outputs");
      const auto argv = m["argv"].get<std::vector<std::string>>();
      const int code = run(with_out_dir(argv, out_dir), out, err, false);
      if (code != kExitOk) return code;
      bool same = true;
      for (const auto& o : m["outputs"]) {
        const std::string name = o["file"].get<std::string>();
        const std::string digest = fnv1a64(io::read_file(fs::path(out_dir) / name));
        const bool ok = digest == o["fnv1a64"].get<std::string>();
        same = same && ok;
        err << (ok ? "identical " : "differs ") << name << "\n";
      }
      return same ? kExitOk : kExitFailure;
    }
    r.argv = with_out_dir(r.argv, out_dir);
    emit(r, out_dir, args, out);
    return kExitOk;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

} // namespace lsqsub::cli
