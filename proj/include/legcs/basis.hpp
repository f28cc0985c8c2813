#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace legcs {

// Expansion index: one polynomial degree per coordinate.
using MultiIndex = std::vector<int>;

// Point in [-1,1]^d.
using Point = std::vector<double>;

// Ordered set of multi-indices, all of the same dimension.  Ordering is part
// of the contract: matrix columns and coefficient vectors follow it.
struct IndexSet {
  int dim = 1;
  std::vector<MultiIndex> indices;

  int size() const { return static_cast<int>(indices.size()); }
  int max_degree() const;
};

// Orthonormal Legendre polynomial L_j, L2-normalized against the uniform
// probability measure on [-1,1]: L_0 = 1, L_1 = sqrt(3) y, and
//   L_j = y L_{j-1} sqrt((2j+1)(2j-1))/j - L_{j-2} (j-1)/j sqrt((2j+1)/(2j-3)).
// Values stay O(sqrt(2j+1)), so the recurrence is stable to degree 2000+.
// |y| may exceed 1 by at most `tol` (clamped); beyond that a domain error is
// thrown.
double eval_legendre_1d(int degree, double y, double tol = 1e-12);

// All of L_0..L_max_degree at y, one recurrence sweep.
void eval_legendre_all(int max_degree, double y, std::vector<double>& out);

// Tensor product over coordinates.
double eval_legendre_multi(const MultiIndex& j, const Point& y);

// Envelope majorant of the whole Legendre family,
//   Omega(y) = prod_k (2/sqrt(pi)) / (1-y_k^2)^{1/4}.
// Diverges on the boundary: |y_k| = 1 throws.
double envelope(const Point& y);
double envelope_1d(double y);

// psi(y, z) = sum_j z_j L_j(y); shares one recurrence sweep per coordinate.
double eval_expansion(const Eigen::VectorXd& z, const IndexSet& J, const Point& y);

// 1d window {a, a+1, ..., b} of polynomial degrees.
IndexSet make_window_set(int a, int b);

// All multi-indices in d dimensions with total degree <= w, lexicographic.
// Guards against index sets bigger than `cap`.
IndexSet make_total_degree_set(int d, int w, std::int64_t cap = 1000000);

}  // namespace legcs
