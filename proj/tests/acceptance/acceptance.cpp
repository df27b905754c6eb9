// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "cli.hpp"

#include "lsqsubdiv/analysis.hpp"
#include "lsqsubdiv/io.hpp"
#include "lsqsubdiv/llr.hpp"
#include "lsqsubdiv/noise.hpp"
#include "lsqsubdiv/schemes.hpp"
#include "lsqsubdiv/subdivide.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace lsqsub;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failures; later checks still run so the detail is complete.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    pass_ = false;
    if (++failures_ <= 3) detail_ += (detail_.empty() ? "" : "; ") + what;
  }
  void note(const std::string& what) { notes_ += (notes_.empty() ? "" : "; ") + what; }
  [[nodiscard]] Outcome done() const {
    std::string d = detail_;
    if (failures_ > 3) d += "; +" + std::to_string(failures_ - 3) + " more";
    if (!notes_.empty()) d += (d.empty() ? "" : " | ") + notes_;
    return {pass_, d};
  }

 private:
  bool pass_ = true;
  int failures_ = 0;
  std::string detail_, notes_;
};

std::string fmt(double v, int prec = 6) {
  std::ostringstream s;
  s.precision(prec);
  s << v;
  return s.str();
}

SchemeSpec pe(int n, int d = 1) { return {Family::primal_even, n, d}; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

Outcome masks_exact() {
  struct Printed {
    Family family;
    int n;
    std::vector<int> num;
    int den;
  };
  const std::vector<Printed> printed = {
      {Family::primal_even, 1, {1, 2, 1}, 2},
      {Family::primal_even, 2, {3, 4, 3, 4, 3, 4, 3}, 12},
      {Family::primal_even, 3, {5, 6, 5, 6, 5, 6, 5, 6, 5, 6, 5}, 30},
      {Family::dual_even, 1, {1, 3, 3, 1}, 4},
      {Family::dual_even, 2, {7, 13, 9, 11, 11, 9, 13, 7}, 40},
      {Family::dual_even, 3, {55, 85, 61, 79, 67, 73, 73, 67, 79, 61, 85, 55}, 420},
      {Family::primal_odd, 1, {2, 3, 2, 3, 2}, 6},
      {Family::primal_odd, 2, {4, 5, 4, 5, 4, 5, 4, 5, 4}, 20},
      {Family::primal_odd, 3, {6, 7, 6, 7, 6, 7, 6, 7, 6, 7, 6, 7, 6}, 42},
      {Family::dual_odd, 1, {5, 11, 8, 8, 11, 5}, 24},
      {Family::dual_odd, 2, {6, 10, 7, 9, 8, 8, 9, 7, 10, 6}, 40},
      {Family::dual_odd, 3, {13, 19, 14, 18, 15, 17, 16, 16, 17, 15, 18, 14, 19, 13}, 112},
  };
  const auto t0 = std::chrono::steady_clock::now();
  Check c;
  for (const auto& p : printed) {
    const Mask m = mask({p.family, p.n, 1});
    const std::string tag = std::string(to_string(p.family)) + " n=" + std::to_string(p.n);
    bool same = m.exact && m.exact->size() == p.num.size();
    for (std::size_t k = 0; same && k < p.num.size(); ++k) same = (*m.exact)[k] == Rational(p.num[k], p.den);
    c.expect(same, tag + " differs");
  }
  const double t = seconds_since(t0);
  c.expect(t < 1.0, "runtime " + fmt(t) + " s");
  c.note("12 masks, " + fmt(t, 3) + " s");
  return c.done();
}

Outcome parity_collapse() {
  const auto t0 = std::chrono::steady_clock::now();
  Check c;
  int pairs = 0;
  for (int n = 1; n <= 5; ++n)
    for (int k = 0; 2 * k + 1 <= 2 * n - 1; ++k) {
      if (2 * k < 1) continue;  // degree 0 is not a valid fitting degree
      const Mask a = mask(pe(n, 2 * k)), b = mask(pe(n, 2 * k + 1));
      c.expect(a.exact && b.exact && a.first_index == b.first_index && *a.exact == *b.exact,
               "n=" + std::to_string(n) + " d=" + std::to_string(2 * k));
      ++pairs;
    }
  const double t = seconds_since(t0);
  c.expect(t < 1.0, "runtime " + fmt(t) + " s");
  c.note(std::to_string(pairs) + " pairs, " + fmt(t, 3) + " s");
  return c.done();
}

Outcome dd_degeneration() {
  Check c;
  double worst = 0.0;
  for (int n : {2, 3}) {
    // oracle: interpolant of degree 2n-1 through nodes -n+1..n, evaluated at 1/2
    std::vector<double> nodes;
    for (int j = -n + 1; j <= n; ++j) nodes.push_back(j);
    std::vector<double> dd(4 * n - 1, 0.0);  // indices -(2n-1)..2n-1
    const int off = 2 * n - 1;
    dd[off] = 1.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      double w = 1.0;
      for (std::size_t j = 0; j < nodes.size(); ++j)
        if (i != j) w *= (0.5 - nodes[j]) / (nodes[i] - nodes[j]);
      // f_{2i+1} = sum_m w_m f_{i+m} means a_{1-2m} = w_m
      dd[static_cast<std::size_t>(1 - 2 * static_cast<int>(nodes[i]) + off)] = w;
    }
    const Mask m = mask(pe(n, 2 * n - 1));
    c.expect(m.first_index == -off && m.size() == dd.size(), "n=" + std::to_string(n) + " support");
    for (int p = -off; p <= off; ++p) worst = std::max(worst, std::abs(m.at(p) - dd[static_cast<std::size_t>(p + off)]));
  }
  c.expect(worst <= 1e-12, "max deviation " + fmt(worst));
  c.note("max deviation " + fmt(worst, 3));
  return c.done();
}

Outcome difference_norm_half() {
  Check c;
  for (int n = 1; n <= 10; ++n) {
    const Symbol q = divide_out(symbol(mask(pe(n))), 1);
    Rational even(0), odd(0);
    for (std::size_t k = 0; k < q.exact->coeffs.size(); ++k) {
      const Rational v = abs(q.exact->coeffs[k]);
      ((q.first_index() + static_cast<int>(k)) % 2 == 0 ? even : odd) += v;
    }
    c.expect(scheme_norm(q) == 0.5 && std::max(even, odd) == Rational(1, 2), "n=" + std::to_string(n));
  }
  c.note("n=1..10");
  return c.done();
}

Outcome holder_table(Family family, const std::vector<double>& want) {
  Check c;
  std::string got;
  for (int n = 2; n <= 10; ++n) {
    const auto t0 = std::chrono::steady_clock::now();
    const double nu = holder_lower_bound(mask({family, n, 1}), 16).lower_bound;
    const double t = seconds_since(t0);
    const double ref = want[static_cast<std::size_t>(n - 2)];
    c.expect(std::abs(nu - ref) <= 0.02, "n=" + std::to_string(n) + " " + fmt(nu, 4) + " vs " + fmt(ref, 4));
    c.expect(t <= 120.0, "n=" + std::to_string(n) + " took " + fmt(t) + " s");
    got += (got.empty() ? "" : " ") + fmt(nu, 4);
  }
  c.note(got);
  return c.done();
}

Outcome blf_properties() {
  const int K = 12;
  const long scale = 1L << K;
  Check c;
  for (int n = 2; n <= 6; ++n) {
    const std::string tag = "n=" + std::to_string(n) + " ";
    const LimitSamples phi = basic_limit_function(pe(n), K);
    double pu = 0.0, sym = 0.0, sup = 0.0;
    for (long t = 0; t < scale; ++t) {
      double s = 0.0;
      for (long j = -2 * n; j <= 2 * n; ++j) s += phi.at(t - j * scale);
      pu = std::max(pu, std::abs(s - 1.0));
    }
    for (long i = 0; i <= phi.last_index(); ++i) sym = std::max(sym, std::abs(phi.at(i) - phi.at(-i)));
    for (double v : phi.values) sup = std::max(sup, v);
    c.expect(pu <= 1e-9, tag + "partition of unity " + fmt(pu));
    c.expect(sym <= 1e-12, tag + "symmetry " + fmt(sym));
    c.expect(sup <= 1.0 / (2 * n - 1), tag + "sup " + fmt(sup));

    // strict positivity on exact limit values of a padded delta
    const long pad = 8L * n;
    SignalLevel d{0, -pad, std::vector<double>(static_cast<std::size_t>(2 * pad + 1), 0.0)};
    d.values[static_cast<std::size_t>(pad)] = 1.0;
    const LimitSamples exact = limit_on_interval(pe(n), d, K, -(2 * n - 1), 2 * n - 1);
    bool positive = true;
    for (std::size_t k = 1; k + 1 < exact.values.size(); ++k) positive = positive && exact.values[k] > 0.0;
    c.expect(positive, tag + "not positive inside support");

    bool increasing = true;
    for (long j = -2 * n + 2; j < 0; ++j) increasing = increasing && phi.at(j * scale) < phi.at((j + 1) * scale);
    c.expect(increasing, tag + "integer values not strictly increasing");
    const double ratio = phi.at(-n * scale) / phi.at(0);
    c.expect(std::abs(ratio - (n - 1.0) / (2.0 * n - 1.0)) <= 1e-6, tag + "ratio " + fmt(ratio, 10));

    const SignalLevel w = limit_filter_at_integers(pe(n), SignalLevel::delta());
    for (long j = w.first_index; j <= w.last_index(); ++j)
      if (std::abs(j) >= n) c.expect(w.at(j) <= 0.5 * w.at(0), tag + "weight ratio at j=" + std::to_string(j));
  }
  c.note("n=2..6, K=12");
  return c.done();
}

Outcome eigen_consistency() {
  Check c;
  double worst = 0.0;
  for (int n = 2; n <= 5; ++n) {
    const SignalLevel v = integer_values_eigen(pe(n));
    const LimitSamples phi = basic_limit_function(pe(n), 16);
    for (long j = v.first_index; j <= v.last_index(); ++j) worst = std::max(worst, std::abs(v.at(j) - phi.at(j << 16)));
  }
  c.expect(worst <= 1e-8, "max deviation " + fmt(worst));
  c.note("max deviation " + fmt(worst, 3));
  return c.done();
}

Outcome psi_table() {
  struct Row {
    int d, n;
    double min, max, integral;
  };
  const std::vector<Row> rows = {
      {1, 1, .5, 1, 0.6647},          {1, 3, 0.1484, 0.1489, 0.1485}, {1, 5, 0.0847, 0.0849, 0.0847},
      {1, 7, 0.0591, 0.0592, 0.0591}, {3, 2, 0.6406, 1, 0.7990},      {3, 3, 0.4074, 0.4156, 0.4115},
      {3, 5, 0.2252, 0.2254, 0.2252}, {3, 7, 0.1563, 0.1565, 0.1564}, {5, 3, 0.7060, 1, 0.8447},
      {5, 5, 0.3790, 0.3793, 0.3791}, {5, 7, 0.2573, 0.2574, 0.2573},
  };
  const auto t0 = std::chrono::steady_clock::now();
  Check c;
  double worst = 0.0;
  for (const Row& r : rows) {
    const PsiStats st = psi_stats(pe(r.n, r.d), 14);
    const std::string tag = "(" + std::to_string(r.d) + "," + std::to_string(r.n) + ") ";
    auto cell = [&](double got, double want, const char* what) {
      worst = std::max(worst, std::abs(got - want));
      c.expect(std::abs(got - want) <= 0.002, tag + what + " " + fmt(got, 5) + " vs " + fmt(want, 5));
    };
    cell(st.min, r.min, "min");
    cell(st.max, r.max, "max");
    if (r.d == 1 && r.n == 1) {
      // the printed 0.6647 is below the analytic 2/3 of the hat function
      c.expect(st.integral >= 0.6647 - 0.002 && st.integral <= 2.0 / 3.0 + 0.002,
               tag + "integral " + fmt(st.integral, 6));
      c.note("(1,1) integral " + fmt(st.integral, 6) + ", printed 0.6647, analytic 2/3");
    } else {
      cell(st.integral, r.integral, "integral");
    }
  }
  const double t = seconds_since(t0);
  c.expect(t < 60.0, "runtime " + fmt(t) + " s");
  c.note("max cell deviation " + fmt(worst, 3) + ", " + fmt(t, 3) + " s");
  return c.done();
}

Outcome psi_shape() {
  const int K = 12;
  Check c;
  for (int n = 1; n <= 10; ++n) {
    const std::string tag = "n=" + std::to_string(n) + " ";
    const LimitSamples phi = basic_limit_function(pe(n), K);
    const LimitSamples p = psi_from_phi(phi);
    const long last = p.last_index();
    bool positive = true;
    double sym = 0.0;
    for (long i = 0; i <= last; ++i) {
      positive = positive && p.at(i) > 0.0;
      sym = std::max(sym, std::abs(p.at(i) - p.at(last - i)));
    }
    c.expect(positive, tag + "psi not positive");
    c.expect(std::abs(p.at(0) - p.at(last)) <= 1e-10, tag + "periodicity");
    c.expect(sym <= 1e-10, tag + "symmetry " + fmt(sym));
    if (n >= 2) {
      const double sup = *std::max_element(p.values.begin(), p.values.end());
      c.expect(sup <= (4.0 * n + 1) / (2.0 * n * n - n), tag + "sup " + fmt(sup));
    }
    const double gap = std::abs(psi_stats_from(p).integral - l2_norm_sq(phi));
    c.expect(gap <= 2e-3, tag + "integral vs |phi|^2 " + fmt(gap));
  }
  c.note("n=1..10 (sup bound n=2..10), K=12");
  return c.done();
}

Outcome decomposition_monte_carlo() {
  const auto f = [](double x) { return std::sin(x / 10.0) + (x / 50.0) * (x / 50.0); };
  const auto t0 = std::chrono::steady_clock::now();
  Check c;
  std::uint64_t seed = 20240;
  for (double sigma : {0.25, 0.5})
    for (double x : {30.0, 50.5}) {
      const double want = expected_sq_error(pe(3), f, sigma, x, 16).total;
      const MonteCarloResult mc = monte_carlo_mse(pe(3), f, sigma, x, 100000, seed++, 16);
      const double z = std::abs(mc.mse - want) / mc.std_error;
      c.expect(z <= 3.0, "sigma=" + fmt(sigma) + " x=" + fmt(x) + " z=" + fmt(z, 3));
      c.note("s=" + fmt(sigma) + ",x=" + fmt(x) + ": " + fmt(mc.mse, 5) + " vs " + fmt(want, 5) + " (z=" + fmt(z, 2) + ")");
    }
  const double t = seconds_since(t0);
  c.expect(t < 60.0, "runtime " + fmt(t) + " s");
  return c.done();
}

Outcome derivative_bound() {
  Check c;
  std::string got;
  for (int n = 2; n <= 6; ++n) {
    const LimitSamples d = blf_derivative(pe(n), 12);
    double sup = 0.0;
    for (double v : d.values) sup = std::max(sup, std::abs(v));
    const double bound = (2.0 * n + 3) / (n * (2.0 * n - 1));
    c.expect(sup <= bound + 1e-6, "n=" + std::to_string(n) + " " + fmt(sup) + " > " + fmt(bound));
    got += (got.empty() ? "" : " ") + fmt(sup, 4) + "<=" + fmt(bound, 4);
  }
  c.note(got);
  return c.done();
}

Outcome llr_contracts() {
  Check c;
  std::vector<double> xs, line;
  for (int i = 0; i <= 100; ++i) {
    xs.push_back(i);
    line.push_back(0.5 + 0.02 * i);
  }
  double worst = 0.0;
  for (double h : {0.3, 1.0, 5.0, 50.0}) {
    const auto est = llr_curve(xs, line, NodeSet(0.0, 0.125, 801), h);
    for (std::size_t i = 0; i < est.size(); ++i) worst = std::max(worst, std::abs(est[i] - (0.5 + 0.02 * 0.125 * i)));
  }
  c.expect(worst <= 1e-10, "linear reproduction " + fmt(worst));

  std::mt19937_64 gen(77);
  std::normal_distribution<double> eps(0.0, 0.3);
  std::vector<double> ys;
  for (double x : xs) ys.push_back(std::sin(x / 8.0) + eps(gen));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double N = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double slope = (N * sxy - sx * sy) / (N * sxx - sx * sx), icpt = (sy - slope * sx) / N;
  const NodeSet grid(0.0, 0.5, 201);
  const auto wide = llr_curve(xs, ys, grid, 1e6 * 100.0);
  double dev = 0.0;
  for (int i = 0; i < grid.count; ++i) dev = std::max(dev, std::abs(wide[static_cast<std::size_t>(i)] - (icpt + slope * grid.node(i))));
  c.expect(dev <= 1e-6, "wide bandwidth vs least squares " + fmt(dev));

  // brute-force leave-one-out over the candidates
  const std::vector<double> cands{0.5, 1, 2, 4, 8};
  double best = INFINITY, pick = 0.0;
  for (double h : cands) {
    double score = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      double A = 0, B = 0, C = 0, P = 0, Q = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i == k) continue;
        const double w = std::exp(-std::pow(xs[i] - xs[k], 2) / (2 * h * h));
        A += w;
        B += w * xs[i];
        C += w * xs[i] * xs[i];
        P += w * ys[i];
        Q += w * xs[i] * ys[i];
      }
      const double det = A * C - B * B;
      const double pred = ((C * P - B * Q) + (A * Q - B * P) * xs[k]) / det;
      score += (ys[k] - pred) * (ys[k] - pred);
    }
    if (score < best) {
      best = score;
      pick = h;
    }
  }
  const double chosen = select_bandwidth(xs, ys, cands).bandwidth;
  c.expect(chosen == pick, "LOO picked " + fmt(chosen) + ", scan " + fmt(pick));
  c.note("line err " + fmt(worst, 3) + ", wide dev " + fmt(dev, 3) + ", h=" + fmt(chosen));
  return c.done();
}

Outcome determinism(const fs::path& work) {
  Check c;
  const std::vector<std::vector<std::string>> runs = {
      {"--preset", "fig4"},         {"--preset", "fig5"},         {"--preset", "fig6"},
      {"--preset", "fig7-text"},    {"--preset", "fig7-caption"}, {"--preset", "fig10-n6"},
      {"--preset", "fig10-n9"},     {"--preset", "fig11-n6"},     {"--preset", "fig11-n9"},
      {"--function", "fig6", "--family", "dual-odd", "--n", "2", "--degree", "3", "--sigma", "1"},
  };
  int k = 0;
  for (const auto& extra : runs) {
    const fs::path a = work / ("run" + std::to_string(k)), b = work / ("replay" + std::to_string(k));
    ++k;
    fs::remove_all(a);
    fs::remove_all(b);
    std::vector<std::string> args{"denoise", "--seed", "2024"};
    args.insert(args.end(), extra.begin(), extra.end());
    args.insert(args.end(), {"--out-dir", a.string()});
    std::ostringstream out, err;
    const std::string tag = extra[1];
    if (cli::run(args, out, err, false) != cli::kExitOk) {
      c.expect(false, tag + ": run failed: " + err.str());
      continue;
    }
    std::ostringstream rout, rerr;
    const int code = cli::run({"replay", "--manifest", (a / "manifest.json").string(), "--out-dir", b.string()}, rout,
                              rerr, false);
    c.expect(code == cli::kExitOk, tag + ": replay exit " + std::to_string(code));
    const io::Json m = io::Json::parse(io::read_file(a / "manifest.json"));
    for (const auto& o : m["outputs"]) {
      const std::string name = o["file"].get<std::string>();
      c.expect(fs::exists(b / name) && io::read_file(a / name) == io::read_file(b / name), tag + ": " + name + " differs");
    }
  }
  c.note(std::to_string(runs.size()) + " denoise runs replayed");
  return c.done();
}

} // namespace

int main(int argc, char** argv) {
  fs::path work = fs::temp_directory_path() / "lsqsubdiv_acceptance";
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--work-dir" && i + 1 < argc) {
      work = argv[++i];
    } else {
      std::cerr << "usage: acceptance [--work-dir DIR]\n";
      return 2;
    }
  }
  fs::create_directories(work);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"mask exactness", masks_exact},
      {"degree-parity collapse", parity_collapse},
      {"interpolatory degeneration", dd_degeneration},
      {"difference scheme norm 1/2", difference_norm_half},
      {"primal regularity table",
       [] { return holder_table(Family::primal_even, {1.649, 1.777, 1.816, 1.794, 1.786, 1.776, 1.771, 1.761, 1.753}); }},
      {"dual regularity table",
       [] { return holder_table(Family::dual_even, {2.285, 2.647, 2.729, 2.677, 2.664, 2.633, 2.616, 2.594, 2.577}); }},
      {"basic limit function properties", blf_properties},
      {"eigenvector vs refinement", eigen_consistency},
      {"psi statistics table", psi_table},
      {"psi shape and bounds", psi_shape},
      {"error decomposition by Monte Carlo", decomposition_monte_carlo},
      {"derivative bound", derivative_bound},
      {"local linear regression contracts", llr_contracts},
      {"denoise replay determinism", [&] { return determinism(work); }},
  };

  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double t = seconds_since(t0);
    if (!o.pass) ++failed;
    std::printf("%s %2zu %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), t,
                o.detail.empty() ? "" : ": ", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
