#include "legcs/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "legcs/basis.hpp"
#include "legcs/quadrature.hpp"
#include "legcs/rng.hpp"
#include "legcs/sampling.hpp"

namespace legcs {

void REParams::validate(bool require_gamma_sum) const {
  if (s < 1 || N < 1 || d < 1 || C <= 0.0) throw std::invalid_argument("REParams: bad s/N/d/C");
  if (alpha <= 1.0) throw std::invalid_argument("REParams: alpha must exceed 1");
  if (delta <= 0.0 || delta >= 1.0) throw std::invalid_argument("REParams: delta in (0,1)");
  if (gamma <= 0.0 || gamma >= 1.0 || gamma0 <= 0.0 || gamma0 >= 1.0)
    throw std::invalid_argument("REParams: gamma, gamma0 in (0,1)");
  if (require_gamma_sum && gamma + gamma0 >= 1.0)
    throw std::invalid_argument("REParams: gamma + gamma0 < 1 required");
}

namespace {

std::vector<int> top_s_support(const Eigen::VectorXd& z, int s) {
  std::vector<int> idx(z.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    const double ma = std::abs(z[a]), mb = std::abs(z[b]);
    if (ma != mb) return ma > mb;
    return a < b;
  });
  idx.resize(s);
  std::sort(idx.begin(), idx.end());
  return idx;
}

// C(n,k) capped; returns cap+1 on overflow past cap.
std::int64_t binom_capped(int n, int k, std::int64_t cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > cap) return cap + 1;
  }
  return r;
}

template <typename Visit>
void for_each_support(int n, int k, Visit&& visit) {
  std::vector<int> supp(k);
  std::iota(supp.begin(), supp.end(), 0);
  while (true) {
    visit(supp);
    int i = k - 1;
    while (i >= 0 && supp[i] == n - k + i) --i;
    if (i < 0) break;
    ++supp[i];
    for (int j = i + 1; j < k; ++j) supp[j] = supp[j - 1] + 1;
  }
}

double min_eig_on_support(const Eigen::MatrixXd& a, const std::vector<int>& supp) {
  const int k = static_cast<int>(supp.size());
  Eigen::MatrixXd sub(a.rows(), k);
  for (int j = 0; j < k; ++j) sub.col(j) = a.col(supp[j]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sub.transpose() * sub);
  return es.eigenvalues().minCoeff();
}

}  // namespace

std::optional<ConeVector> cone_member(const Eigen::VectorXd& z, int s, double alpha) {
  if (s < 1 || s > z.size()) throw std::invalid_argument("cone_member: need 1 <= s <= N");
  if (alpha <= 1.0) throw std::invalid_argument("cone_member: alpha > 1");
  const std::vector<int> supp = top_s_support(z, s);
  double head2 = 0.0;
  for (int i : supp) head2 += z[i] * z[i];
  double tail1 = z.lpNorm<1>();
  for (int i : supp) tail1 -= std::abs(z[i]);
  if (tail1 <= alpha * std::sqrt(static_cast<double>(s)) * std::sqrt(head2)) {
    return ConeVector{z, supp};
  }
  return std::nullopt;
}

ConeVector sample_cone(int n, int s, double alpha, std::uint64_t seed) {
  if (s < 1 || s > n) throw std::invalid_argument("sample_cone: need 1 <= s <= N");
  if (alpha <= 1.0) throw std::invalid_argument("sample_cone: alpha > 1");
  Rng rng(seed);
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < s; ++i) {
    const int j = i + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(n - i));
    std::swap(pool[i], pool[j]);
  }
  Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
  double head2 = 0.0;
  do {
    for (int i = 0; i < s; ++i) {
      z[pool[i]] = rng.gaussian();
      head2 += z[pool[i]] * z[pool[i]];
    }
  } while (head2 == 0.0);
  const double head_norm = std::sqrt(head2);

  if (n > s) {
    const double u = rng.uniform01();
    const double target_l1 = u * alpha * std::sqrt(static_cast<double>(s)) * head_norm;
    double tail_l1 = 0.0;
    std::vector<double> tail(n - s);
    for (double& t : tail) {
      t = rng.gaussian();
      tail_l1 += std::abs(t);
    }
    const double scale = tail_l1 > 0.0 ? target_l1 / tail_l1 : 0.0;
    for (int i = s; i < n; ++i) z[pool[i]] = tail[i - s] * scale;
  }
  z /= z.norm();
  std::vector<int> supp(pool.begin(), pool.begin() + s);
  std::sort(supp.begin(), supp.end());
  return ConeVector{std::move(z), std::move(supp)};
}

double empirical_re_constant(const Eigen::MatrixXd& a, int s, double alpha, int n_probes,
                             std::uint64_t seed) {
  if (n_probes < 1) throw std::invalid_argument("empirical_re_constant: n_probes >= 1");
  const int n = static_cast<int>(a.cols());
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_probes; ++i) {
    const ConeVector cv =
        sample_cone(n, s, alpha, derive_seed(seed, {hash_tag("re-probe"), (std::uint64_t)i}));
    best = std::min(best, (a * cv.vector).squaredNorm());
  }
  // Exactly sparse unit vectors are cone members; take the exact minimum
  // over each support when enumeration is affordable.
  if (binom_capped(n, s, 5000) <= 5000) {
    for_each_support(n, s, [&](const std::vector<int>& supp) {
      best = std::min(best, min_eig_on_support(a, supp));
    });
  }
  return best;
}

double sparse_min_eig(const Eigen::MatrixXd& a, int s, SparseEigMode mode, int n_random,
                      std::uint64_t seed) {
  const int n = static_cast<int>(a.cols());
  if (s < 1 || s > n) throw std::invalid_argument("sparse_min_eig: need 1 <= s <= N");
  double best = std::numeric_limits<double>::infinity();
  if (mode == SparseEigMode::Exhaustive) {
    if (binom_capped(n, s, 100000) > 100000)
      throw std::invalid_argument("sparse_min_eig: support budget exceeded (C(N,s) > 1e5)");
    for_each_support(n, s, [&](const std::vector<int>& supp) {
      best = std::min(best, min_eig_on_support(a, supp));
    });
  } else {
    Rng rng(seed);
    std::vector<int> pool(n);
    for (int t = 0; t < n_random; ++t) {
      std::iota(pool.begin(), pool.end(), 0);
      for (int i = 0; i < s; ++i) {
        const int j = i + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(n - i));
        std::swap(pool[i], pool[j]);
      }
      std::vector<int> supp(pool.begin(), pool.begin() + s);
      best = std::min(best, min_eig_on_support(a, supp));
    }
  }
  return best;
}

std::pair<double, double> nsp_constants(double alpha, double delta) {
  if (alpha <= 1.0) throw std::invalid_argument("nsp_constants: alpha > 1");
  if (delta <= 0.0 || delta >= 1.0) throw std::invalid_argument("nsp_constants: delta in (0,1)");
  return {1.0 / alpha, 1.0 / std::sqrt(1.0 - delta)};
}

double l1_error_bound(double sigma_s, double eta, int s, double alpha, double delta) {
  if (alpha <= 1.0) throw std::invalid_argument("l1_error_bound: alpha > 1 (delta0 < 1/2)");
  if (delta <= 0.0 || delta >= 1.0) throw std::invalid_argument("l1_error_bound: delta in (0,1)");
  const double d0 = 1.0 / (1.0 + alpha);
  return 2.0 / (1.0 - 2.0 * d0) * sigma_s +
         4.0 / std::sqrt(1.0 - delta) * (1.0 - d0) / (1.0 - 2.0 * d0) * eta *
             std::sqrt(static_cast<double>(s));
}

namespace {
double checked_log(double x, const char* what) {
  if (x <= 1.0)
    throw std::domain_error(std::string("complexity evaluator: log argument <= 1 in ") + what);
  return std::log(x);
}
}  // namespace

double complexity_1d(const REParams& p, bool preferable_variant) {
  p.validate(!preferable_variant);
  const double sad = (1.0 + p.alpha) * (1.0 + p.alpha) * p.s / std::pow(p.delta, 1.5);
  const double lsad = checked_log(sad, "log(s_{alpha,delta})");
  const double l2n = checked_log(2.0 * p.N, "log(2N)");
  const double g = preferable_variant ? (1.0 - p.gamma0) * p.gamma : p.gamma;
  const double t1 = std::pow(p.delta, -12.0) / p.gamma0 * lsad * lsad * l2n * l2n;
  const double t2 = std::pow(p.delta, -7.5) * std::pow(lsad, 1.5) * l2n;
  const double t3 =
      std::pow(p.delta, -4.0) * lsad * checked_log(lsad / (g * p.delta), "log(log(s)/gamma delta)");
  return p.C * std::pow(1.0 + p.alpha, 4.0) * p.s * p.s * std::max({t1, t2, t3});
}

FixedPointResult complexity_multi(const REParams& p, bool preferable_variant) {
  p.validate(!preferable_variant);
  const int d = p.d;
  const double sa = (1.0 + p.alpha) * (1.0 + p.alpha) * p.s;
  double fact = 1.0;  // (d-1)!
  for (int i = 2; i < d; ++i) fact *= i;
  const double ddm1 = d > 1 ? std::pow(static_cast<double>(d - 1), d - 1) : 1.0;
  const double cd1 = p.C * std::pow(4.0 / M_PI, 4.0 * d);
  const double cd2 = p.C * (d + 1) / std::sqrt(fact) * std::pow(64.0 * std::sqrt(2.0) / (M_PI * M_PI), d);
  const double cd3 = p.C * (d + 1) / fact * std::pow(4.0 / M_PI, 2.0 * d);
  const double cd4 = p.C * (d + 1) * ddm1 / fact * std::pow(2.0, 4.0 * d) / std::pow(M_PI, 1.5 * d);
  const double ls = checked_log(cd4 * std::pow(sa, 1.5) / (p.delta * p.delta),
                                "log(C_{d,4} s_alpha^{3/2}/delta^2)");
  const double l2n = checked_log(2.0 * p.N, "log(2N)");
  const double g = preferable_variant ? (1.0 - p.gamma0) * p.gamma : p.gamma;
  const double lg = checked_log(ls / (g * p.delta), "log(log(.)/gamma delta)");

  // The three log factors involving m; clamped below e while iterating, so
  // transients with small m cannot produce negative powers.
  auto logpow = [d](double arg, int expo) {
    if (expo == 0) return 1.0;
    return std::pow(std::max(std::log(arg), 1.0), expo);
  };
  auto rhs = [&](double m) {
    const double a1 = std::pow(M_PI / 4.0, d) * std::sqrt(m / p.gamma0);
    const double a2 = p.C * m * std::pow(M_PI / 4.0, d);
    const double a3 = p.C * std::pow(M_PI, d) * m;
    const double t1 = cd1 / (std::pow(p.delta, 12.0) * p.gamma0) * ls * ls * l2n * l2n *
                      logpow(a1, 4 * d - 4);
    const double t2 = cd2 / std::pow(p.delta, 7.5) * std::pow(ls, 1.5) * l2n * logpow(a2, d - 1);
    const double t3 = cd3 / std::pow(p.delta, 4.0) * ls * lg * logpow(a3, d - 1);
    return sa * sa * std::max({t1, t2, t3});
  };

  FixedPointResult r;
  double m = sa * sa;
  for (int it = 0; it < 200; ++it) {
    const double next = rhs(m);
    r.iterations = it + 1;
    const double change = std::abs(next - m) / std::max(next, 1e-300);
    m = next;
    if (change <= 1e-9) {
      r.converged = true;
      break;
    }
  }
  r.m = m;
  r.residual = std::abs(rhs(m) - m) / std::max(m, 1e-300);
  if (!r.converged) return r;
  if (d > 1) {
    // The clamp must be inactive at the fixed point.
    checked_log(std::pow(M_PI / 4.0, d) * std::sqrt(m / p.gamma0), "log((pi/4)^d sqrt(m/gamma0))");
    checked_log(p.C * m * std::pow(M_PI / 4.0, d), "log(C m (pi/4)^d)");
    checked_log(p.C * std::pow(M_PI, d) * m, "log(C pi^d m)");
  }
  return r;
}

double complexity_bos(const REParams& p, double theta) {
  p.validate();
  if (theta < 1.0) throw std::invalid_argument("complexity_bos: theta >= 1");
  const double sa = (1.0 + p.alpha) * (1.0 + p.alpha) * p.s;
  const double b = theta * theta * sa / (p.delta * p.delta);
  const double lb = checked_log(b, "log(theta^2 s_alpha/delta^2)");
  const double t1 = 32.0 / std::pow(p.delta, 4.0) * checked_log(40.0 * b * lb, "log(40 B log B)") *
                    checked_log(4.0 * p.N, "log(4N)");
  const double t2 = 1.0 / p.delta * checked_log(lb / (p.gamma * p.delta), "log(log B/gamma delta)");
  return p.C * b * lb * std::max(t1, t2);
}

double H_d(double beta, int d) {
  if (d < 2) throw std::invalid_argument("H_d: d >= 2");
  if (beta <= 0.0 || beta >= 1.0) throw std::domain_error("H_d: beta in (0,1)");
  return beta * std::pow(std::log(1.0 / beta), d - 1);
}

double K_d(double M, int d) {
  if (d < 2) throw std::invalid_argument("K_d: d >= 2");
  const double m_max = std::pow((d - 1) / std::exp(1.0), d - 1);
  if (M <= 0.0 || M >= m_max)
    throw std::domain_error("K_d: M outside the invertibility range (0, ((d-1)/e)^{d-1})");
  double lo = 1e-300;
  double hi = std::exp(-(d - 1.0));
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (H_d(mid, d) < M)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-16 * hi) break;
  }
  return 0.5 * (lo + hi);
}

McEstimate v_d_mc(double r, int d, int n_samples, std::uint64_t seed) {
  if (r <= 0.0 || r > 1.0) throw std::invalid_argument("v_d_mc: r in (0,1]");
  if (n_samples < 10000) throw std::invalid_argument("v_d_mc: n >= 1e4");
  Rng rng(seed);
  std::int64_t hits = 0;
  for (int i = 0; i < n_samples; ++i) {
    double prod = 1.0;
    for (int k = 0; k < d; ++k) {
      const double y = rng.uniform_sym();
      prod *= 1.0 - y * y;
    }
    if (prod <= r) ++hits;
  }
  McEstimate e;
  e.value = static_cast<double>(hits) / n_samples;
  e.half_width_3sigma = 3.0 * std::sqrt(e.value * (1.0 - e.value) / n_samples);
  return e;
}

namespace {

// integral of exp(-beta prod_k sqrt(1-y_k^2)) / prod_k (1-y_k^2)^tau over the
// uniform probability measure on [-1,1]^d, by tensor Gauss-Legendre after the
// substitutions y_k = sin(t_k), t_k = pi/2 - u_k^2 that make the integrand
// smooth up to the boundary.
double envelope_integral(int d, double beta, double tau, int n_1d) {
  const GaussRule rule = gauss_legendre(n_1d);
  const double b = std::sqrt(M_PI / 2.0);
  std::vector<double> su(n_1d), ju(n_1d);
  for (int i = 0; i < n_1d; ++i) {
    const double u = 0.5 * b * (rule.nodes[i] + 1.0);
    su[i] = std::sin(u * u);                                   // cos(t) = sin(u^2)
    ju[i] = std::pow(su[i], 1.0 - 2.0 * tau) * 2.0 * u * 0.5 * b * rule.weights[i];
  }
  // d-fold tensor product; integrand exp(-beta prod cos t_k) prod cos^{1-2tau}.
  std::vector<int> idx(d, 0);
  double total = 0.0;
  while (true) {
    double prod_cos = 1.0;
    double w = 1.0;
    for (int k = 0; k < d; ++k) {
      prod_cos *= su[idx[k]];
      w *= ju[idx[k]];
    }
    total += std::exp(-beta * prod_cos) * w;
    int k = 0;
    while (k < d && ++idx[k] == n_1d) idx[k++] = 0;
    if (k == d) break;
  }
  return total;
}

}  // namespace

std::vector<LemmaCheck> lemma_validators(const LemmaValidatorConfig& cfg) {
  std::vector<LemmaCheck> out;
  const int n = cfg.mc_budget;

  // 1d tail: rho(Omega >= mu) <= 16/(pi^2 mu^4).
  for (double mu : {1.5, 2.0, 3.0}) {
    Rng rng(derive_seed(cfg.seed, {hash_tag("tail-1d"), (std::uint64_t)(mu * 1000)}));
    std::int64_t hits = 0;
    for (int i = 0; i < n; ++i)
      if (envelope_1d(rng.uniform_sym()) >= mu) ++hits;
    LemmaCheck c;
    c.id = "tail-1d-mu" + std::to_string(mu).substr(0, 3);
    c.lhs = static_cast<double>(hits) / n;
    c.rhs = 16.0 / (M_PI * M_PI * mu * mu * mu * mu);
    c.sigma3 = 3.0 * std::sqrt(c.lhs * (1.0 - c.lhs) / n);
    c.pass = c.lhs <= c.rhs + c.sigma3;
    out.push_back(c);
  }

  // 1d end set: integral of Omega^2 over the endpoint interval of measure mu
  // is <= 2 sqrt(mu).  Quadrature after y = 1 - (1-a) u^2.
  for (double mu : {0.04, 0.1, 0.25}) {
    const double a = 1.0 - 2.0 * mu;
    const double lhs = integrate(
        [a](double u) {
          const double y = 1.0 - (1.0 - a) * u * u;
          return 2.0 / M_PI * 2.0 * std::sqrt(1.0 - a) / std::sqrt(1.0 + y);
        },
        0.0, 1.0, 96);
    LemmaCheck c;
    c.id = "end-set-1d-mu" + std::to_string(mu).substr(0, 4);
    c.lhs = lhs;
    c.rhs = 2.0 * std::sqrt(mu);
    c.pass = lhs <= c.rhs;
    out.push_back(c);
  }

  // 1d integral lemma with Gamma closed forms.
  for (double tau : {0.0, 0.25, 0.5}) {
    for (double beta : {10.0, 50.0, 200.0}) {
      LemmaCheck c;
      c.id = "integral-1d-tau" + std::to_string(tau).substr(0, 4) + "-beta" +
             std::to_string(static_cast<int>(beta));
      c.lhs = envelope_integral(1, beta, tau, 160);
      c.rhs = 2.0 * std::tgamma(2.0 - 2.0 * tau) * std::pow(beta, 2.0 * tau - 2.0);
      c.pass = c.lhs <= c.rhs;
      out.push_back(c);
    }
  }

  // Multivariate tail, both sides (d = 2).
  for (double mu : {2.0, 3.0}) {
    const int d = 2;
    const double r = std::pow(2.0, 4.0 * d) / (std::pow(M_PI, 2.0 * d) * std::pow(mu, 4.0));
    const McEstimate est =
        v_d_mc(r, d, n, derive_seed(cfg.seed, {hash_tag("tail-mult"), (std::uint64_t)mu}));
    const double lower = 1.0 / (std::pow(2.0, d) * 1.0) * H_d(r, d);
    const double upper = std::pow(2.0, d + 1) * std::exp(2.0) *
                         H_d(std::pow(2.0, 2.0 * d) / (std::exp(2.0) * std::pow(M_PI, 2.0 * d) * std::pow(mu, 4.0)), d);
    LemmaCheck c;
    c.id = "tail-mult-d2-mu" + std::to_string(static_cast<int>(mu));
    c.lhs = est.value;
    c.rhs = upper;
    c.sigma3 = est.half_width_3sigma;
    c.pass = (lower <= est.value + est.half_width_3sigma) &&
             (est.value - est.half_width_3sigma <= upper);
    out.push_back(c);
  }

  // Multivariate end set (d = 2).  Under Chebyshev sampling the weighted
  // integrand Omega^2 prod (pi/2) sqrt(1-y_k^2) is the constant 2^d, so the
  // integral equals 2^d P_cheb(S_mu): importance sampling with zero variance
  // in the integrand, binomial in the indicator.
  for (double mu : {2.0, 4.0}) {
    const int d = 2;
    Rng rng(derive_seed(cfg.seed, {hash_tag("end-set-mult"), (std::uint64_t)mu}));
    const double thresh = std::pow(std::pow(2.0, d) / (std::pow(M_PI, d / 2.0) * mu), 4.0);
    std::int64_t hits = 0;
    for (int i = 0; i < n; ++i) {
      double prod = 1.0;
      for (int k = 0; k < d; ++k) {
        const double y = std::cos(M_PI * rng.uniform01_open());
        prod *= 1.0 - y * y;
      }
      if (prod <= thresh) ++hits;
    }
    const double p = static_cast<double>(hits) / n;
    LemmaCheck c;
    c.id = "end-set-mult-d2-mu" + std::to_string(static_cast<int>(mu));
    c.lhs = std::pow(2.0, d) * p;
    c.rhs = std::pow(2.0, 4.0 * d) * (d + 1) / (std::pow(M_PI, 2.0 * d) * 1.0) *
            std::pow(std::log(std::exp(1.0) * std::pow(M_PI, d) * mu * mu), d - 1) / (mu * mu);
    c.sigma3 = std::pow(2.0, d) * 3.0 * std::sqrt(p * (1.0 - p) / n);
    c.pass = c.lhs <= c.rhs + c.sigma3;
    out.push_back(c);
  }

  // Multivariate integral lemma (d = 2): the constant is unspecified, so the
  // implied constant LHS / (beta^{2 tau - 2} log^{d-1} beta) is reported.
  for (double tau : {0.0, 0.25, 0.5}) {
    for (double beta : {10.0, 50.0, 200.0}) {
      const int d = 2;
      LemmaCheck c;
      c.id = "integral-mult-d2-tau" + std::to_string(tau).substr(0, 4) + "-beta" +
             std::to_string(static_cast<int>(beta));
      c.lhs = envelope_integral(d, beta, tau, 160);
      c.implied_constant = c.lhs / (std::pow(beta, 2.0 * tau - 2.0) * std::pow(std::log(beta), d - 1));
      c.rhs = 0.0;
      c.pass = true;
      out.push_back(c);
    }
  }

  // Good-set frequency, 1d analytic criterion.
  for (double g0 : {0.5, 0.8}) {
    const int n_sets = 2000, m = 100;
    int pref = 0;
    for (int i = 0; i < n_sets; ++i) {
      const SampleSet q = draw_uniform(
          m, 1, derive_seed(cfg.seed, {hash_tag("good-set-1d"), (std::uint64_t)(g0 * 10), (std::uint64_t)i}));
      if (is_preferable_1d(q, g0)) ++pref;
    }
    LemmaCheck c;
    c.id = "good-set-1d-g" + std::to_string(g0).substr(0, 3);
    c.lhs = static_cast<double>(pref) / n_sets;
    c.rhs = 1.0 - g0;
    c.sigma3 = 3.0 * std::sqrt(g0 * (1.0 - g0) / n_sets);
    c.pass = c.lhs >= c.rhs - c.sigma3;
    out.push_back(c);
  }

  // Good-set frequency, multivariate percentile criterion (d = 2).
  {
    const int d = 2, m = 50, n_sets = 2000, n_ref = 2000;
    const double g0 = 0.8;
    const double thr = estimate_percentile_threshold(
        m, d, g0, n_ref, derive_seed(cfg.seed, {hash_tag("good-set-mult-ref")}));
    int pref = 0;
    for (int i = 0; i < n_sets; ++i) {
      const SampleSet q =
          draw_uniform(m, d, derive_seed(cfg.seed, {hash_tag("good-set-mult"), (std::uint64_t)i}));
      if (test_value(q, g0).value <= thr) ++pref;
    }
    LemmaCheck c;
    c.id = "good-set-mult-d2-g0.8";
    c.lhs = static_cast<double>(pref) / n_sets;
    c.rhs = 1.0 - g0;
    // Binomial noise from both the reference quantile and the fresh sets.
    c.sigma3 = 3.0 * std::sqrt(g0 * (1.0 - g0) / n_sets) + 3.0 * std::sqrt(g0 * (1.0 - g0) / n_ref);
    c.pass = std::abs(c.lhs - c.rhs) <= c.sigma3 + 1.0 / n_ref;
    out.push_back(c);
  }

  // v_d sandwich: v_1 against its closed form, v_2 against the lemma bounds.
  {
    const McEstimate est = v_d_mc(0.3, 1, n, derive_seed(cfg.seed, {hash_tag("v1")}));
    LemmaCheck c;
    c.id = "v1-closed-form-r0.3";
    c.lhs = est.value;
    c.rhs = 1.0 - std::sqrt(1.0 - 0.3);
    c.sigma3 = est.half_width_3sigma;
    c.pass = std::abs(c.lhs - c.rhs) <= c.sigma3;
    out.push_back(c);
  }
  {
    const double r = 0.1;
    const McEstimate est = v_d_mc(r, 2, n, derive_seed(cfg.seed, {hash_tag("v2")}));
    const double lower = r / 2.0 * std::log(1.0 / std::sqrt(r));
    const double upper = r * std::log(4.0 * std::exp(1.0) / std::sqrt(r));
    LemmaCheck c;
    c.id = "v2-sandwich-r0.1";
    c.lhs = est.value;
    c.rhs = upper;
    c.sigma3 = est.half_width_3sigma;
    c.pass = (lower <= est.value + est.half_width_3sigma) &&
             (est.value - est.half_width_3sigma <= upper);
    out.push_back(c);
  }

  return out;
}

}  // namespace legcs
