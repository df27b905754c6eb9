#include "lsqsubdiv/lsqfit.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace lsqsub {

namespace {

void check_degree(int degree) {
  if (degree < 0) throw std::invalid_argument("lsqfit: degree must be >= 0");
}

void check_values(const NodeSet& nodes, std::span<const double> values) {
  if (static_cast<int>(values.size()) != nodes.count)
    throw std::invalid_argument("lsqfit: expected " + std::to_string(nodes.count) +
                                " values, got " + std::to_string(values.size()));
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("lsqfit: non-finite data value");
}

// Monic orthogonal polynomials on the local abscissae u_i = i - (m-1)/2
// built by the Stieltjes three-term recurrence, which is Gram-Schmidt of the
// monomials under the discrete inner product.
struct LocalOrtho {
  std::vector<double> u;                    // local node coordinates
  std::vector<std::vector<double>> at_node; // at_node[j][i] = P_j(u_i)
  std::vector<double> alpha, beta;          // recurrence coefficients
  std::vector<double> norm2;                // |P_j|^2

  LocalOrtho(int count, int degree) {
    u.resize(count);
    for (int i = 0; i < count; ++i) u[i] = i - 0.5 * (count - 1);
    at_node.assign(degree + 1, std::vector<double>(count, 0.0));
    alpha.assign(degree + 1, 0.0);
    beta.assign(degree + 1, 0.0);
    norm2.assign(degree + 1, 0.0);
    for (int j = 0; j <= degree; ++j) {
      auto& cur = at_node[j];
      for (int i = 0; i < count; ++i) {
        if (j == 0) {
          cur[i] = 1.0;
        } else {
          const double prev2 = j >= 2 ? at_node[j - 2][i] : 0.0;
          cur[i] = (u[i] - alpha[j - 1]) * at_node[j - 1][i] - beta[j - 1] * prev2;
        }
      }
      double nn = 0.0, xn = 0.0;
      for (int i = 0; i < count; ++i) {
        nn += cur[i] * cur[i];
        xn += u[i] * cur[i] * cur[i];
      }
      norm2[j] = nn;
      alpha[j] = xn / nn;
      beta[j] = j == 0 ? 0.0 : nn / norm2[j - 1];
    }
  }

  [[nodiscard]] std::vector<double> values_at(double x) const {
    std::vector<double> p(norm2.size());
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (j == 0) {
        p[j] = 1.0;
      } else {
        const double prev2 = j >= 2 ? p[j - 2] : 0.0;
        p[j] = (x - alpha[j - 1]) * p[j - 1] - beta[j - 1] * prev2;
      }
    }
    return p;
  }

  // Monomial coefficients (in u) of P_0..P_d.
  [[nodiscard]] std::vector<std::vector<double>> monomials() const {
    const std::size_t d = norm2.size() - 1;
    std::vector<std::vector<double>> c(d + 1, std::vector<double>(d + 1, 0.0));
    c[0][0] = 1.0;
    for (std::size_t j = 1; j <= d; ++j) {
      for (std::size_t k = 0; k < j; ++k) {
        c[j][k + 1] += c[j - 1][k];
        c[j][k] -= alpha[j - 1] * c[j - 1][k];
        if (j >= 2) c[j][k] -= beta[j - 1] * c[j - 2][k];
      }
    }
    return c;
  }
};

// Coefficients in x of q(x) = sum_k g_k ((x - c)/h)^k.
std::vector<double> to_global_monomials(const std::vector<double>& g, double c, double h) {
  std::vector<double> out(g.size(), 0.0);
  // Horner: acc <- acc * ((x - c)/h) + g_k
  std::vector<double> acc;
  for (auto it = g.rbegin(); it != g.rend(); ++it) {
    std::vector<double> next(acc.size() + 1, 0.0);
    for (std::size_t k = 0; k < acc.size(); ++k) {
      next[k + 1] += acc[k] / h;
      next[k] -= acc[k] * c / h;
    }
    next[0] += *it;
    acc = std::move(next);
  }
  for (std::size_t k = 0; k < acc.size() && k < out.size(); ++k) out[k] = acc[k];
  return out;
}

Eigen::MatrixXd vandermonde(const NodeSet& nodes, int degree) {
  Eigen::MatrixXd v(nodes.count, degree + 1);
  for (int i = 0; i < nodes.count; ++i) {
    double p = 1.0;
    const double x = nodes.node(i);
    for (int k = 0; k <= degree; ++k) {
      v(i, k) = p;
      p *= x;
    }
  }
  return v;
}

// Exact Gauss-Jordan solve of a nonsingular square system.
std::vector<Rational> solve_exact(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw std::invalid_argument("lsqfit: singular exact system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

} // namespace

NodeSet::NodeSet(double start_, double step_, int count_) : start(start_), step(step_), count(count_) {
  if (count < 1) throw std::invalid_argument("NodeSet: empty node set");
  if (!(step > 0.0)) throw std::invalid_argument("NodeSet: step must be positive");
  if (!std::isfinite(start) || !std::isfinite(step))
    throw std::invalid_argument("NodeSet: non-finite start or step");
}

std::vector<double> NodeSet::points() const {
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = node(i);
  return out;
}

double eval_poly(const PolyCoeffs& p, double x) {
  double acc = 0.0;
  for (auto it = p.coefficients.rbegin(); it != p.coefficients.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double EvalFilter::apply(std::span<const double> values) const {
  if (values.size() != weights.size())
    throw std::invalid_argument("EvalFilter::apply: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += weights[i] * values[i];
  return s;
}

PolyCoeffs fit_least_squares(const NodeSet& nodes, std::span<const double> values, int degree) {
  check_degree(degree);
  if (nodes.count < 1) throw std::invalid_argument("fit_least_squares: empty node set");
  check_values(nodes, values);

  if (degree < nodes.count) {
    const LocalOrtho ortho(nodes.count, degree);
    const auto mono = ortho.monomials();
    std::vector<double> local(degree + 1, 0.0);
    for (int j = 0; j <= degree; ++j) {
      double proj = 0.0;
      for (int i = 0; i < nodes.count; ++i) proj += ortho.at_node[j][i] * values[i];
      proj /= ortho.norm2[j];
      for (int k = 0; k <= j; ++k) local[k] += proj * mono[j][k];
    }
    return {to_global_monomials(local, nodes.center(), nodes.step)};
  }

  const Eigen::MatrixXd v = vandermonde(nodes, degree);
  const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(values.data(), nodes.count);
  const Eigen::VectorXd beta = v.completeOrthogonalDecomposition().solve(y);
  return {std::vector<double>(beta.data(), beta.data() + beta.size())};
}

OrthoBasis ortho_polynomials(const NodeSet& nodes, int degree) {
  check_degree(degree);
  if (degree >= nodes.count)
    throw std::invalid_argument("ortho_polynomials: degree must be < node count (Gram matrix singular)");
  const LocalOrtho ortho(nodes.count, degree);
  const auto mono = ortho.monomials();
  OrthoBasis basis;
  basis.degree = degree;
  basis.nodes = nodes;
  for (int j = 0; j <= degree; ++j) {
    std::vector<double> local(mono[j].begin(), mono[j].begin() + j + 1);
    const double inv = 1.0 / std::sqrt(ortho.norm2[j]);
    for (auto& c : local) c *= inv;
    basis.polys.push_back({to_global_monomials(local, nodes.center(), nodes.step)});
  }
  return basis;
}

EvalFilter evaluation_filter(const NodeSet& nodes, int degree, double x) {
  check_degree(degree);
  if (nodes.count < 1) throw std::invalid_argument("evaluation_filter: empty node set");
  if (!std::isfinite(x)) throw std::invalid_argument("evaluation_filter: non-finite abscissa");

  EvalFilter filter;
  filter.point = x;
  filter.weights.assign(nodes.count, 0.0);
  if (degree < nodes.count) {
    const LocalOrtho ortho(nodes.count, degree);
    const auto px = ortho.values_at((x - nodes.center()) / nodes.step);
    for (int i = 0; i < nodes.count; ++i) {
      double w = 0.0;
      for (int j = 0; j <= degree; ++j) w += ortho.at_node[j][i] * px[j] / ortho.norm2[j];
      filter.weights[i] = w;
    }
    return filter;
  }

  const Eigen::MatrixXd v = vandermonde(nodes, degree);
  const Eigen::MatrixXd pinv = v.completeOrthogonalDecomposition().pseudoInverse();
  Eigen::VectorXd vx(degree + 1);
  double p = 1.0;
  for (int k = 0; k <= degree; ++k) {
    vx(k) = p;
    p *= x;
  }
  const Eigen::VectorXd w = pinv.transpose() * vx;
  for (int i = 0; i < nodes.count; ++i) filter.weights[i] = w(i);
  return filter;
}

std::vector<Rational> exact_evaluation_filter(int first, int count, int degree, const Rational& x) {
  check_degree(degree);
  if (count < 1) throw std::invalid_argument("exact_evaluation_filter: empty node set");
  std::vector<Rational> nodes(count);
  for (int i = 0; i < count; ++i) nodes[i] = Rational(first + i);

  std::vector<Rational> w(count, Rational(0));
  if (degree < count) {
    std::vector<Rational> prev(count, Rational(0)), cur(count, Rational(1));
    Rational prev_x(0), cur_x(1);
    Rational prev_norm(1);
    for (int j = 0; j <= degree; ++j) {
      Rational nn(0), xn(0);
      for (int i = 0; i < count; ++i) {
        nn += cur[i] * cur[i];
        xn += nodes[i] * cur[i] * cur[i];
      }
      for (int i = 0; i < count; ++i) w[i] += cur[i] * cur_x / nn;
      if (j == degree) break;
      const Rational alpha = xn / nn;
      const Rational beta = j == 0 ? Rational(0) : nn / prev_norm;
      std::vector<Rational> next(count);
      for (int i = 0; i < count; ++i) next[i] = (nodes[i] - alpha) * cur[i] - beta * prev[i];
      const Rational next_x = (x - alpha) * cur_x - beta * prev_x;
      prev = std::move(cur);
      cur = std::move(next);
      prev_x = cur_x;
      cur_x = next_x;
      prev_norm = nn;
    }
    return w;
  }

  // Minimal-norm interpolant: w = (V V^T)^{-1} V v(x).
  std::vector<std::vector<Rational>> powers(count, std::vector<Rational>(degree + 1));
  for (int i = 0; i < count; ++i) {
    Rational p(1);
    for (int k = 0; k <= degree; ++k) {
      powers[i][k] = p;
      p *= nodes[i];
    }
  }
  std::vector<Rational> vx(degree + 1);
  {
    Rational p(1);
    for (int k = 0; k <= degree; ++k) {
      vx[k] = p;
      p *= x;
    }
  }
  std::vector<std::vector<Rational>> gram(count, std::vector<Rational>(count, Rational(0)));
  std::vector<Rational> rhs(count, Rational(0));
  for (int i = 0; i < count; ++i) {
    for (int k = 0; k < count; ++k)
      for (int e = 0; e <= degree; ++e) gram[i][k] += powers[i][e] * powers[k][e];
    for (int e = 0; e <= degree; ++e) rhs[i] += powers[i][e] * vx[e];
  }
  return solve_exact(std::move(gram), std::move(rhs));
}

} // namespace lsqsub
