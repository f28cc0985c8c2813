#include "legcs/basis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace legcs {

int IndexSet::max_degree() const {
  int md = 0;
  for (const auto& j : indices)
    for (int jk : j) md = std::max(md, jk);
  return md;
}

namespace {

double clamp_domain(double y, double tol) {
  if (std::abs(y) > 1.0 + tol)
    throw std::domain_error("eval_legendre_1d: |y| > 1 (y=" + std::to_string(y) + ")");
  return std::clamp(y, -1.0, 1.0);
}

}  // namespace

double eval_legendre_1d(int degree, double y, double tol) {
  if (degree < 0) throw std::invalid_argument("eval_legendre_1d: negative degree");
  y = clamp_domain(y, tol);
  if (degree == 0) return 1.0;
  double prev = 1.0;
  double cur = std::sqrt(3.0) * y;
  for (int j = 2; j <= degree; ++j) {
    const double a = std::sqrt((2.0 * j + 1.0) * (2.0 * j - 1.0)) / j;
    const double b = (j - 1.0) / j * std::sqrt((2.0 * j + 1.0) / (2.0 * j - 3.0));
    const double next = a * y * cur - b * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

void eval_legendre_all(int max_degree, double y, std::vector<double>& out) {
  out.resize(static_cast<std::size_t>(max_degree) + 1);
  out[0] = 1.0;
  if (max_degree == 0) return;
  out[1] = std::sqrt(3.0) * y;
  for (int j = 2; j <= max_degree; ++j) {
    const double a = std::sqrt((2.0 * j + 1.0) * (2.0 * j - 1.0)) / j;
    const double b = (j - 1.0) / j * std::sqrt((2.0 * j + 1.0) / (2.0 * j - 3.0));
    out[j] = a * y * out[j - 1] - b * out[j - 2];
  }
}

double eval_legendre_multi(const MultiIndex& j, const Point& y) {
  if (j.size() != y.size())
    throw std::invalid_argument("eval_legendre_multi: dimension mismatch");
  double prod = 1.0;
  for (std::size_t k = 0; k < j.size(); ++k) prod *= eval_legendre_1d(j[k], y[k]);
  return prod;
}

double envelope_1d(double y) {
  const double t = 1.0 - y * y;
  if (t <= 0.0) throw std::domain_error("envelope: |y| = 1 (envelope diverges)");
  return 2.0 / std::sqrt(M_PI) / std::pow(t, 0.25);
}

double envelope(const Point& y) {
  double prod = 1.0;
  for (double yk : y) prod *= envelope_1d(yk);
  return prod;
}

double eval_expansion(const Eigen::VectorXd& z, const IndexSet& J, const Point& y) {
  if (z.size() != J.size())
    throw std::invalid_argument("eval_expansion: coefficient length != index set size");
  if (static_cast<int>(y.size()) != J.dim)
    throw std::invalid_argument("eval_expansion: point dimension mismatch");
  const int md = J.max_degree();
  // One recurrence sweep per coordinate, shared across all indices.
  std::vector<std::vector<double>> table(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) eval_legendre_all(md, y[k], table[k]);
  double sum = 0.0;
  for (int i = 0; i < J.size(); ++i) {
    double prod = z[i];
    const MultiIndex& j = J.indices[i];
    for (std::size_t k = 0; k < j.size(); ++k) prod *= table[k][j[k]];
    sum += prod;
  }
  return sum;
}

IndexSet make_window_set(int a, int b) {
  if (a < 0 || b < a) throw std::invalid_argument("make_window_set: need 0 <= a <= b");
  IndexSet J;
  J.dim = 1;
  J.indices.reserve(b - a + 1);
  for (int j = a; j <= b; ++j) J.indices.push_back({j});
  return J;
}

namespace {
void fill_total_degree(int d, int w, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (static_cast<int>(cur.size()) == d - 1) {
    for (int j = 0; j <= w; ++j) {
      cur.push_back(j);
      out.push_back(cur);
      cur.pop_back();
    }
    return;
  }
  for (int j = 0; j <= w; ++j) {
    cur.push_back(j);
    fill_total_degree(d, w - j, cur, out);
    cur.pop_back();
  }
}
}  // namespace

IndexSet make_total_degree_set(int d, int w, std::int64_t cap) {
  if (d < 1 || w < 0) throw std::invalid_argument("make_total_degree_set: need d >= 1, w >= 0");
  // N = binom(w+d, d); overflow-guarded running product.
  std::int64_t n = 1;
  for (int i = 1; i <= d; ++i) {
    n = n * (w + i) / i;
    if (n > cap) throw std::invalid_argument("make_total_degree_set: index set exceeds cap");
  }
  IndexSet J;
  J.dim = d;
  J.indices.reserve(static_cast<std::size_t>(n));
  MultiIndex cur;
  fill_total_degree(d, w, cur, J.indices);
  return J;
}

}  // namespace legcs
