#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lsqsub {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Finitely supported Laurent polynomial sum_j c_j z^j, stored densely from
/// first_index. Works for double and Rational coefficients.
template <class T>
struct Laurent {
  int first_index = 0;
  std::vector<T> coeffs;

  [[nodiscard]] bool empty() const { return coeffs.empty(); }
  [[nodiscard]] int last_index() const {
    return first_index + static_cast<int>(coeffs.size()) - 1;
  }
  [[nodiscard]] T at(int j) const {
    if (j < first_index || j > last_index()) return T(0);
    return coeffs[static_cast<std::size_t>(j - first_index)];
  }

  [[nodiscard]] T operator()(const T& z) const {
    // Horner on the polynomial part, then multiply by z^first_index.
    T acc(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    T scale(1);
    if (first_index >= 0) {
      for (int k = 0; k < first_index; ++k) scale *= z;
    } else {
      for (int k = 0; k < -first_index; ++k) scale /= z;
    }
    return acc * scale;
  }

  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent out;
    if (a.empty() || b.empty()) return out;
    out.first_index = a.first_index + b.first_index;
    out.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, T(0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs.size(); ++j)
        out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    return out;
  }

  friend Laurent operator+(const Laurent& a, const Laurent& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    Laurent out;
    out.first_index = std::min(a.first_index, b.first_index);
    const int last = std::max(a.last_index(), b.last_index());
    out.coeffs.reserve(static_cast<std::size_t>(last - out.first_index + 1));
    for (int j = out.first_index; j <= last; ++j) out.coeffs.push_back(a.at(j) + b.at(j));
    return out;
  }

  friend Laurent operator*(const T& s, Laurent a) {
    for (auto& c : a.coeffs) c *= s;
    return a;
  }

  /// Coefficients of p(z^factor).
  [[nodiscard]] Laurent dilate(int factor) const {
    if (factor < 1) throw std::invalid_argument("Laurent::dilate: factor must be >= 1");
    Laurent out;
    if (empty()) return out;
    out.first_index = first_index * factor;
    out.coeffs.assign((coeffs.size() - 1) * static_cast<std::size_t>(factor) + 1, T(0));
    for (std::size_t j = 0; j < coeffs.size(); ++j) out.coeffs[j * factor] = coeffs[j];
    return out;
  }
};

/// Synthetic division by (1+z), carried from the lowest coefficient upward.
/// The remainder vanishes iff (1+z) divides p; its magnitude is |p(-1)|.
template <class T>
std::pair<Laurent<T>, T> divide_by_one_plus_z(const Laurent<T>& p) {
  Laurent<T> q;
  if (p.coeffs.size() < 2) return {q, p.empty() ? T(0) : p.coeffs.front()};
  q.first_index = p.first_index;
  q.coeffs.resize(p.coeffs.size() - 1);
  T carry(0);
  for (std::size_t i = 0; i + 1 < p.coeffs.size(); ++i) {
    q.coeffs[i] = p.coeffs[i] - carry;
    carry = q.coeffs[i];
  }
  return {q, p.coeffs.back() - carry};
}

inline Laurent<double> to_double(const Laurent<Rational>& p) {
  Laurent<double> out;
  out.first_index = p.first_index;
  out.coeffs.reserve(p.coeffs.size());
  for (const auto& c : p.coeffs) out.coeffs.push_back(static_cast<double>(c));
  return out;
}

} // namespace lsqsub
