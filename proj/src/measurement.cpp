#include "legcs/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "legcs/rng.hpp"

namespace legcs {

Eigen::VectorXd SparseSignal::dense() const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(length);
  for (std::size_t i = 0; i < support.size(); ++i) v[support[i]] = values[i];
  return v;
}

namespace {

SensingMatrix assemble_impl(const IndexSet& J, const SampleSet& q, bool preconditioned) {
  if (J.dim != q.dim) throw std::invalid_argument("assemble: index set / sample dimension mismatch");
  const int m = q.size();
  const int n = J.size();
  const int md = J.max_degree();
  SensingMatrix a;
  a.preconditioned = preconditioned;
  a.sample_seed = q.seed;
  a.entries.resize(m, n);
  const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(m));
  std::vector<std::vector<double>> table(J.dim);
  for (int i = 0; i < m; ++i) {
    const Point& y = q.points[i];
    double w = inv_sqrt_m;
    for (int k = 0; k < J.dim; ++k) {
      eval_legendre_all(md, y[k], table[k]);
      if (preconditioned) w *= std::sqrt(M_PI / 2.0) * std::pow(1.0 - y[k] * y[k], 0.25);
    }
    for (int j = 0; j < n; ++j) {
      double prod = w;
      const MultiIndex& idx = J.indices[j];
      for (int k = 0; k < J.dim; ++k) prod *= table[k][idx[k]];
      a.entries(i, j) = prod;
    }
  }
  return a;
}

}  // namespace

SensingMatrix assemble(const IndexSet& J, const SampleSet& q) {
  return assemble_impl(J, q, false);
}

SensingMatrix assemble_preconditioned(const IndexSet& J, const SampleSet& q) {
  if (q.distribution != Distribution::Chebyshev)
    throw std::invalid_argument(
        "assemble_preconditioned: sample set was not drawn from the Chebyshev distribution");
  return assemble_impl(J, q, true);
}

SparseSignal gen_sparse_signal(int n, int s, std::uint64_t seed) {
  if (s < 1 || s > n) throw std::invalid_argument("gen_sparse_signal: need 1 <= s <= N");
  SparseSignal c;
  c.length = n;
  c.seed = seed;
  Rng rng(seed);
  // Partial Fisher-Yates over 0..n-1 for the support.
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  for (int i = 0; i < s; ++i) {
    const int j = i + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(n - i));
    std::swap(pool[i], pool[j]);
  }
  c.support.assign(pool.begin(), pool.begin() + s);
  std::sort(c.support.begin(), c.support.end());
  c.values.resize(s);
  for (double& v : c.values) {
    do {
      v = rng.gaussian();
    } while (v == 0.0);
  }
  return c;
}

Observation observe(const SensingMatrix& a, const SparseSignal& c, double eta, std::uint64_t seed) {
  if (a.cols() != c.length) throw std::invalid_argument("observe: dimension mismatch");
  if (eta < 0.0) throw std::invalid_argument("observe: eta >= 0");
  Observation g;
  g.noise_level = eta;
  g.values = a.entries * c.dense();
  if (eta > 0.0) {
    Eigen::VectorXd e(a.rows());
    Rng rng(seed);
    double norm = 0.0;
    do {
      for (int i = 0; i < e.size(); ++i) e[i] = rng.gaussian();
      norm = e.norm();
    } while (norm == 0.0);
    g.values += (eta / norm) * e;
  }
  return g;
}

void write_matrix_csv(const SensingMatrix& a, std::ostream& os) {
  os << "# m,N,preconditioned,sample_seed\n"
     << a.rows() << ',' << a.cols() << ',' << (a.preconditioned ? 1 : 0) << ',' << a.sample_seed
     << '\n';
  char buf[40];
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", a.entries(i, j));
      os << (j ? "," : "") << buf;
    }
    os << '\n';
  }
}

void write_signal_csv(const SparseSignal& c, std::ostream& os) {
  os << "# N,s,seed\n" << c.length << ',' << c.sparsity() << ',' << c.seed << '\n';
  char buf[40];
  for (std::size_t i = 0; i < c.support.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", c.values[i]);
    os << c.support[i] << ',' << buf << '\n';
  }
}

}  // namespace legcs
