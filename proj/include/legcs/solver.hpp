#pragma once

#include <optional>
#include <string>

#include <Eigen/Core>

#include "legcs/measurement.hpp"

namespace legcs {

struct SolverConfig {
  int max_iters = 50000;
  double feas_tol = 1e-9;   // relative constraint violation
  double gap_tol = 1e-10;   // relative objective stagnation over the window
  double step_scale = 0.99; // applied to the inverse operator-norm step
};

struct RecoveryResult {
  Eigen::VectorXd solution;
  int iterations = 0;
  double primal_residual = 0.0;  // ||A z - g||_2
  double objective = 0.0;        // ||z||_1
  bool converged = false;
  std::string message;
};

// min ||z||_1 subject to A z = g, by primal-dual proximal splitting: the
// primal prox is soft-thresholding, the dual step is ascent on the affine
// constraint.  Steps are sized by a 20-iteration power-method estimate of
// ||A||_2 inflated by 1%.  Stops when ||Az-g|| <= feas_tol (1 + ||g||) and
// the objective has moved less than gap_tol (1 + objective) over the last 50
// iterations.
RecoveryResult solve_bp(const Eigen::MatrixXd& a, const Eigen::VectorXd& g,
                        const SolverConfig& cfg = {});

// min ||z||_1 subject to ||A z - g||_2 <= eta; same scheme with the dual
// update shrunk onto the eta-ball's support function.  eta = 0 reduces to
// solve_bp.  Feasibility at convergence means
// ||Az-g|| <= eta (1 + feas_tol) + feas_tol.
RecoveryResult solve_bpdn(const Eigen::MatrixXd& a, const Eigen::VectorXd& g, double eta,
                          const SolverConfig& cfg = {});

// Exhaustive sparsest-fit oracle for tiny instances (N <= 20, s_max <= 4):
// least squares on every support of size <= s_max, smallest support with
// residual <= tol (1 + ||g||) wins; ties by residual.
std::optional<SparseSignal> l0_oracle(const Eigen::MatrixXd& a, const Eigen::VectorXd& g,
                                      int s_max, double tol);

struct RecoveryMetrics {
  double rel_l2 = 0.0;
  double rel_l1 = 0.0;
  bool success = false;
};

RecoveryMetrics recovery_metrics(const SparseSignal& truth, const RecoveryResult& result,
                                 double success_tol = 1e-4);

// sigma_s(z)_1: sum of the N-s smallest magnitudes.
double best_s_term_error(const Eigen::VectorXd& z, int s);

// Elementwise soft-threshold S_tau(v) = sign(v) max(|v| - tau, 0).
Eigen::VectorXd soft_threshold(const Eigen::VectorXd& v, double tau);

// Power-method estimate of ||A||_2 (largest singular value).
double operator_norm_estimate(const Eigen::MatrixXd& a, int iters = 20);

}  // namespace legcs
