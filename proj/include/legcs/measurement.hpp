#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "legcs/basis.hpp"
#include "legcs/sampling.hpp"

namespace legcs {

// Normalized sampling matrix A[i][j] = Psi_j(y_i)/sqrt(m), optionally
// Chebyshev-preconditioned.
struct SensingMatrix {
  Eigen::MatrixXd entries;
  bool preconditioned = false;
  std::uint64_t sample_seed = 0;

  int rows() const { return static_cast<int>(entries.rows()); }
  int cols() const { return static_cast<int>(entries.cols()); }
};

// Exactly s-sparse coefficient vector with Gaussian values on a random
// support.
struct SparseSignal {
  int length = 0;
  std::vector<int> support;  // sorted
  std::vector<double> values;
  std::uint64_t seed = 0;

  Eigen::VectorXd dense() const;
  int sparsity() const { return static_cast<int>(support.size()); }
};

struct Observation {
  Eigen::VectorXd values;
  double noise_level = 0.0;
};

// A[i][j] = L_j(y_i)/sqrt(m), columns ordered as J.
SensingMatrix assemble(const IndexSet& J, const SampleSet& q);

// Preconditioned entries w(y_i) L_j(y_i)/sqrt(m) with
// w(y) = (pi/2)^{d/2} prod_k (1-y_k^2)^{1/4}; {w L_j} is orthonormal under
// the Chebyshev measure and uniformly bounded.  Requires Chebyshev samples.
SensingMatrix assemble_preconditioned(const IndexSet& J, const SampleSet& q);

// Uniform random s-subset support, i.i.d. standard normal values (resampled
// on exact zeros).
SparseSignal gen_sparse_signal(int n, int s, std::uint64_t seed);

// g = A c + e with ||e||_2 = eta exactly (e = eta * u, u uniform on the unit
// sphere).  eta = 0 gives the exact noiseless observation.
Observation observe(const SensingMatrix& a, const SparseSignal& c, double eta, std::uint64_t seed);

// CSV: header "# m,N,preconditioned,sample_seed", then entries row-major.
void write_matrix_csv(const SensingMatrix& a, std::ostream& os);
// CSV: header "# N,s,seed", then support,value rows.
void write_signal_csv(const SparseSignal& c, std::ostream& os);

}  // namespace legcs
