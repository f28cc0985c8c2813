#include "legcs/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace legcs {

Eigen::VectorXd soft_threshold(const Eigen::VectorXd& v, double tau) {
  return v.unaryExpr([tau](double x) {
    const double m = std::abs(x) - tau;
    return m > 0.0 ? (x > 0.0 ? m : -m) : 0.0;
  });
}

double operator_norm_estimate(const Eigen::MatrixXd& a, int iters) {
  if (a.size() == 0) return 0.0;
  Eigen::VectorXd v = Eigen::VectorXd::Ones(a.cols());
  v.normalize();
  double norm = 0.0;
  for (int k = 0; k < iters; ++k) {
    Eigen::VectorXd w = a.transpose() * (a * v);
    const double wn = w.norm();
    if (wn == 0.0) return 0.0;
    v = w / wn;
    norm = std::sqrt(wn);
  }
  return norm;
}

namespace {

RecoveryResult pdhg(const Eigen::MatrixXd& a, const Eigen::VectorXd& g, double eta,
                    const SolverConfig& cfg) {
  if (!a.allFinite() || !g.allFinite())
    throw std::invalid_argument("solver: non-finite inputs");
  if (a.rows() != g.size()) throw std::invalid_argument("solver: A rows != g length");
  if (cfg.max_iters < 1 || cfg.feas_tol <= 0.0 || cfg.gap_tol <= 0.0 || cfg.step_scale <= 0.0 ||
      cfg.step_scale > 1.0)
    throw std::invalid_argument("solver: bad config");

  const int n = static_cast<int>(a.cols());
  const double gnorm = g.norm();
  RecoveryResult res;
  res.solution = Eigen::VectorXd::Zero(n);

  const double feas_target =
      eta > 0.0 ? eta * (1.0 + cfg.feas_tol) + cfg.feas_tol : cfg.feas_tol * (1.0 + gnorm);

  const double opnorm = operator_norm_estimate(a, 20) * 1.01;
  if (opnorm == 0.0) {
    if (gnorm <= feas_target) {
      res.converged = true;
      res.message = "zero operator, zero solution feasible";
    } else {
      res.message = "zero operator with nonzero observation: infeasible";
    }
    res.primal_residual = gnorm;
    return res;
  }
  const double step = cfg.step_scale / opnorm;  // tau = sigma = step

  Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd az = Eigen::VectorXd::Zero(a.rows());
  Eigen::VectorXd az_prev = az;
  Eigen::VectorXd u = Eigen::VectorXd::Zero(a.rows());

  constexpr int kWindow = 50;
  std::vector<double> obj_hist;
  obj_hist.reserve(kWindow + 1);

  int it = 0;
  for (; it < cfg.max_iters; ++it) {
    // Dual ascent on the constraint; A zbar = 2 A z - A z_prev by linearity.
    Eigen::VectorXd v = u + step * (2.0 * az - az_prev - g);
    if (eta > 0.0) {
      const double vn = v.norm();
      const double scale = vn > 0.0 ? std::max(0.0, 1.0 - step * eta / vn) : 0.0;
      v *= scale;
    }
    u = v;
    // Primal prox: soft-thresholding.
    z = soft_threshold(z - step * (a.transpose() * u), step);
    az_prev.swap(az);
    az.noalias() = a * z;

    const double resid = (az - g).norm();
    const double obj = z.lpNorm<1>();
    obj_hist.push_back(obj);
    if (static_cast<int>(obj_hist.size()) > kWindow) {
      const double past = obj_hist[obj_hist.size() - kWindow - 1];
      const bool stalled = std::abs(obj - past) <= cfg.gap_tol * (1.0 + obj);
      if (resid <= feas_target && stalled) {
        ++it;
        res.converged = true;
        break;
      }
      if (obj_hist.size() > 4096) obj_hist.erase(obj_hist.begin(), obj_hist.end() - kWindow - 1);
    }
  }

  res.solution = z;
  res.iterations = it;
  res.primal_residual = (az - g).norm();
  res.objective = z.lpNorm<1>();
  if (!res.converged) res.message = "max iterations reached";
  return res;
}

}  // namespace

RecoveryResult solve_bp(const Eigen::MatrixXd& a, const Eigen::VectorXd& g,
                        const SolverConfig& cfg) {
  return pdhg(a, g, 0.0, cfg);
}

RecoveryResult solve_bpdn(const Eigen::MatrixXd& a, const Eigen::VectorXd& g, double eta,
                          const SolverConfig& cfg) {
  if (eta < 0.0) throw std::invalid_argument("solve_bpdn: eta >= 0");
  return pdhg(a, g, eta, cfg);
}

namespace {

void enumerate_supports(int n, int k, std::vector<int>& cur, int start,
                        const std::function<void(const std::vector<int>&)>& visit) {
  if (static_cast<int>(cur.size()) == k) {
    visit(cur);
    return;
  }
  for (int i = start; i <= n - (k - static_cast<int>(cur.size())); ++i) {
    cur.push_back(i);
    enumerate_supports(n, k, cur, i + 1, visit);
    cur.pop_back();
  }
}

}  // namespace

std::optional<SparseSignal> l0_oracle(const Eigen::MatrixXd& a, const Eigen::VectorXd& g,
                                      int s_max, double tol) {
  const int n = static_cast<int>(a.cols());
  if (n > 20 || s_max > 4)
    throw std::invalid_argument("l0_oracle: combinatorial guard (N <= 20, s_max <= 4)");
  const double thresh = tol * (1.0 + g.norm());

  for (int k = 0; k <= s_max; ++k) {
    double best_resid = std::numeric_limits<double>::infinity();
    std::optional<SparseSignal> best;
    auto visit = [&](const std::vector<int>& supp) {
      Eigen::MatrixXd sub(a.rows(), k);
      for (int j = 0; j < k; ++j) sub.col(j) = a.col(supp[j]);
      Eigen::VectorXd coef =
          k == 0 ? Eigen::VectorXd() : sub.colPivHouseholderQr().solve(g).eval();
      const double resid = k == 0 ? g.norm() : (sub * coef - g).norm();
      if (resid <= thresh && resid < best_resid) {
        best_resid = resid;
        SparseSignal s;
        s.length = n;
        s.support = supp;
        s.values.assign(coef.data(), coef.data() + coef.size());
        best = std::move(s);
      }
    };
    if (k == 0) {
      visit({});
    } else {
      std::vector<int> cur;
      enumerate_supports(n, k, cur, 0, visit);
    }
    if (best) return best;
  }
  return std::nullopt;
}

RecoveryMetrics recovery_metrics(const SparseSignal& truth, const RecoveryResult& result,
                                 double success_tol) {
  if (truth.length != result.solution.size())
    throw std::invalid_argument("recovery_metrics: length mismatch");
  const Eigen::VectorXd c = truth.dense();
  const Eigen::VectorXd diff = c - result.solution;
  RecoveryMetrics m;
  const double c2 = c.norm();
  const double c1 = c.lpNorm<1>();
  m.rel_l2 = c2 > 0.0 ? diff.norm() / c2 : (diff.norm() > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  m.rel_l1 = c1 > 0.0 ? diff.lpNorm<1>() / c1 : (diff.lpNorm<1>() > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  m.success = m.rel_l2 <= success_tol;
  return m;
}

double best_s_term_error(const Eigen::VectorXd& z, int s) {
  const int n = static_cast<int>(z.size());
  if (s < 0 || s > n) throw std::invalid_argument("best_s_term_error: need 0 <= s <= N");
  if (s == n) return 0.0;
  std::vector<double> mags(n);
  for (int i = 0; i < n; ++i) mags[i] = std::abs(z[i]);
  // Partition descending: the N-s smallest magnitudes land at the tail.
  std::nth_element(mags.begin(), mags.begin() + s, mags.end(), std::greater<>());
  double sum = 0.0;
  for (int i = s; i < n; ++i) sum += mags[i];
  return sum;
}

}  // namespace legcs
