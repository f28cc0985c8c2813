#include "legcs/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "legcs/rng.hpp"

namespace legcs {

std::string to_string(Distribution d) {
  return d == Distribution::Uniform ? "uniform" : "chebyshev";
}

Distribution distribution_from_string(const std::string& s) {
  if (s == "uniform") return Distribution::Uniform;
  if (s == "chebyshev") return Distribution::Chebyshev;
  throw std::invalid_argument("unknown distribution: " + s);
}

SampleSet draw_uniform(int m, int d, std::uint64_t seed) {
  if (m < 1 || d < 1) throw std::invalid_argument("draw_uniform: need m >= 1, d >= 1");
  SampleSet q;
  q.dim = d;
  q.distribution = Distribution::Uniform;
  q.seed = seed;
  q.points.resize(m);
  Rng rng(seed);
  for (auto& p : q.points) {
    p.resize(d);
    for (double& c : p) c = rng.uniform_sym();
  }
  return q;
}

SampleSet draw_chebyshev(int m, int d, std::uint64_t seed) {
  if (m < 1 || d < 1) throw std::invalid_argument("draw_chebyshev: need m >= 1, d >= 1");
  SampleSet q;
  q.dim = d;
  q.distribution = Distribution::Chebyshev;
  q.seed = seed;
  q.points.resize(m);
  Rng rng(seed);
  for (auto& p : q.points) {
    p.resize(d);
    for (double& c : p) c = std::cos(M_PI * rng.uniform01_open());
  }
  return q;
}

TestStatistic test_value(const SampleSet& q, double gamma0) {
  if (gamma0 <= 0.0 || gamma0 >= 1.0)
    throw std::invalid_argument("test_value: gamma0 must be in (0,1)");
  const int m = q.size();
  TestStatistic t;
  t.gamma0 = gamma0;
  t.per_sample.resize(m);
  const double rate = std::sqrt(static_cast<double>(m) / gamma0);
  double sum = 0.0;
  for (int i = 0; i < m; ++i) {
    double om2 = 1.0;  // Omega^2(y_i)
    bool boundary = false;
    for (double yk : q.points[i]) {
      const double u = 1.0 - yk * yk;
      if (u <= 0.0) {
        boundary = true;
        break;
      }
      om2 *= 4.0 / M_PI / std::sqrt(u);
    }
    // Z -> 0 as any coordinate reaches the boundary.
    const double z = boundary ? 0.0 : std::sqrt(om2) * std::exp(-rate / (2.0 * om2));
    t.per_sample[i] = z;
    sum += z;
  }
  t.value = sum;
  q.test_value = sum;
  q.test_gamma0 = gamma0;
  return t;
}

double preferable_threshold_1d(int m, double gamma0) {
  if (m < 1 || gamma0 <= 0.0 || gamma0 >= 1.0)
    throw std::invalid_argument("preferable_threshold_1d: need m >= 1, gamma0 in (0,1)");
  const double m4 = std::pow(static_cast<double>(m), 0.25);
  return 32.0 * std::sqrt(2.0) / (M_PI * std::sqrt(M_PI)) * m4 * std::pow(gamma0, 0.75) +
         4.0 * std::sqrt(2.0) / M_PI * m4 * std::pow(gamma0, -0.25);
}

bool is_preferable_1d(const SampleSet& q, double gamma0) {
  if (q.dim != 1) throw std::invalid_argument("is_preferable_1d: 1d sets only");
  return test_value(q, gamma0).value <= preferable_threshold_1d(q.size(), gamma0);
}

double estimate_percentile_threshold(int m, int d, double gamma0, int n_ref, std::uint64_t seed) {
  if (n_ref < 100) throw std::invalid_argument("estimate_percentile_threshold: n_ref >= 100");
  std::vector<double> values(n_ref);
  for (int i = 0; i < n_ref; ++i) {
    const SampleSet q = draw_uniform(m, d, derive_seed(seed, {hash_tag("percentile-ref"),
                                                             static_cast<std::uint64_t>(i)}));
    values[i] = test_value(q, gamma0).value;
  }
  std::sort(values.begin(), values.end());
  const double q = 1.0 - gamma0;
  const double h = q * (n_ref - 1);
  const int lo = static_cast<int>(std::floor(h));
  if (lo >= n_ref - 1) return values.back();
  const double frac = h - lo;
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

std::vector<std::vector<int>> rank_into_groups(const std::vector<SampleSet>& sets, double gamma0,
                                               int n_groups) {
  if (sets.empty()) throw std::invalid_argument("rank_into_groups: empty input");
  if (n_groups < 2) throw std::invalid_argument("rank_into_groups: need n_groups >= 2");
  const int n = static_cast<int>(sets.size());
  std::vector<double> tv(n);
  for (int i = 0; i < n; ++i) {
    if (sets[i].test_value && sets[i].test_gamma0 == gamma0)
      tv[i] = *sets[i].test_value;
    else
      tv[i] = test_value(sets[i], gamma0).value;
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (tv[a] != tv[b]) return tv[a] < tv[b];
    if (sets[a].seed != sets[b].seed) return sets[a].seed < sets[b].seed;
    return a < b;
  });
  std::vector<std::vector<int>> groups(n_groups);
  const int base = n / n_groups;
  const int rem = n % n_groups;
  int pos = 0;
  for (int gi = 0; gi < n_groups; ++gi) {
    const int sz = base + (gi < rem ? 1 : 0);
    groups[gi].assign(order.begin() + pos, order.begin() + pos + sz);
    pos += sz;
  }
  return groups;
}

void write_sample_set_csv(const SampleSet& q, std::ostream& os) {
  os << "# m,d,distribution,seed,gamma0,test_value\n";
  os << q.size() << ',' << q.dim << ',' << to_string(q.distribution) << ',' << q.seed << ',';
  char buf[64];
  if (q.test_value) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", q.test_gamma0, *q.test_value);
    os << buf;
  } else {
    os << ",\n";
  }
  for (const auto& p : q.points) {
    for (std::size_t k = 0; k < p.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", p[k]);
      os << (k ? "," : "") << buf;
    }
    os << '\n';
  }
}

SampleSet read_sample_set_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("# m,d,distribution", 0) != 0)
    throw std::runtime_error("sample set CSV: bad header");
  if (!std::getline(is, line)) throw std::runtime_error("sample set CSV: missing meta row");
  std::stringstream meta(line);
  std::string tok;
  SampleSet q;
  std::getline(meta, tok, ',');
  const int m = std::stoi(tok);
  std::getline(meta, tok, ',');
  q.dim = std::stoi(tok);
  std::getline(meta, tok, ',');
  q.distribution = distribution_from_string(tok);
  std::getline(meta, tok, ',');
  q.seed = std::stoull(tok);
  if (std::getline(meta, tok, ',') && !tok.empty()) {
    q.test_gamma0 = std::stod(tok);
    if (std::getline(meta, tok, ',') && !tok.empty()) q.test_value = std::stod(tok);
  }
  q.points.reserve(m);
  while (static_cast<int>(q.points.size()) < m && std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    Point p;
    while (std::getline(row, tok, ',')) p.push_back(std::stod(tok));
    if (static_cast<int>(p.size()) != q.dim)
      throw std::runtime_error("sample set CSV: row dimension mismatch");
    q.points.push_back(std::move(p));
  }
  if (static_cast<int>(q.points.size()) != m)
    throw std::runtime_error("sample set CSV: truncated point list");
  return q;
}

}  // namespace legcs
