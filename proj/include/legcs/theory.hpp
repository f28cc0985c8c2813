#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace legcs {

// Parameter bundle for the restricted-eigenvalue machinery.  delta0 is
// always recomputed from alpha, never stored.
struct REParams {
  int s = 1;
  double alpha = 2.0;   // > 1
  double delta = 0.5;   // in (0,1)
  double gamma = 0.1;   // in (0,1)
  double gamma0 = 0.1;  // in (0,1)
  int N = 1;
  int d = 1;
  double C = 1.0;  // stand-in for the universal constant

  double delta0() const { return 1.0 / (1.0 + alpha); }
  void validate(bool require_gamma_sum = false) const;
};

// Membership certificate for the cone C(s;alpha): the witness support S of
// size s satisfies ||z_{S^c}||_1 <= alpha sqrt(s) ||z_S||_2.
struct ConeVector {
  Eigen::VectorXd vector;
  std::vector<int> witness_support;
};

// Checks the optimal witness (top-s magnitudes, ties by lowest index).
std::optional<ConeVector> cone_member(const Eigen::VectorXd& z, int s, double alpha);

// Random unit vector in the cone boundary slice: random support, random
// Gaussian head, tail with ||tail||_1 = u alpha sqrt(s) ||head||_2 for
// uniform u, then normalized to ||z||_2 = 1.
ConeVector sample_cone(int n, int s, double alpha, std::uint64_t seed);

// min ||A z||_2^2 over random cone probes, plus exact sparse minima over all
// C(N,s) supports when that count is <= 5000.  An upper bound on the true
// restricted-eigenvalue infimum.
double empirical_re_constant(const Eigen::MatrixXd& a, int s, double alpha, int n_probes,
                             std::uint64_t seed);

enum class SparseEigMode { Exhaustive, Random };

// min over supports S of lambda_min(A_S^T A_S); exhaustive requires
// C(N,s) <= 1e5, random mode draws n_random supports.
double sparse_min_eig(const Eigen::MatrixXd& a, int s, SparseEigMode mode, int n_random = 200,
                      std::uint64_t seed = 0);

// (rho, tau) = (1/alpha, 1/sqrt(1-delta)).
std::pair<double, double> nsp_constants(double alpha, double delta);

// Reconstruction error bound
//   2/(1-2 delta0) sigma_s + 4/sqrt(1-delta) (1-delta0)/(1-2 delta0) eta sqrt(s).
double l1_error_bound(double sigma_s, double eta, int s, double alpha, double delta);

// Sample-complexity evaluator for the univariate theorem; `preferable_variant`
// replaces gamma by (1-gamma0)*gamma inside the last log.
double complexity_1d(const REParams& p, bool preferable_variant = false);

struct FixedPointResult {
  double m = 0.0;
  int iterations = 0;
  double residual = 0.0;  // |m - RHS(m)| / m
  bool converged = false;
};

// Multivariate sample-complexity condition; m appears inside the log factors,
// so m = RHS(m) is solved by fixed-point iteration from m0 = s_alpha^2.
FixedPointResult complexity_multi(const REParams& p, bool preferable_variant = false);

// Bounded-orthonormal-system baseline with uniform bound theta.
double complexity_bos(const REParams& p, double theta);

// H_d(beta) = beta log(1/beta)^{d-1}, strictly increasing on (0, e^{-(d-1)}).
double H_d(double beta, int d);

// Inverse of H_d on the increasing branch, for 0 < M < ((d-1)/e)^{d-1};
// bisection to ~machine precision in beta.
double K_d(double M, int d);

// Monte Carlo estimate of v_d(r) = rho(prod(1-y_k^2) <= r) with a reported
// 3-sigma half width.
struct McEstimate {
  double value = 0.0;
  double half_width_3sigma = 0.0;
};
McEstimate v_d_mc(double r, int d, int n_samples, std::uint64_t seed);

// One lemma-validator row: estimated LHS vs analytic RHS with 3-sigma MC
// slack (quadrature rows have sigma3 = 0).  Rows checking an unspecified
// constant report it in `implied_constant` instead of pass/fail.
struct LemmaCheck {
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;
  double sigma3 = 0.0;
  bool pass = false;
  std::optional<double> implied_constant;
};

struct LemmaValidatorConfig {
  int mc_budget = 100000;
  std::uint64_t seed = 20260809;
};

std::vector<LemmaCheck> lemma_validators(const LemmaValidatorConfig& cfg = {});

}  // namespace legcs
