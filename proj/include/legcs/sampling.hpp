#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "legcs/basis.hpp"

namespace legcs {

enum class Distribution { Uniform, Chebyshev };

std::string to_string(Distribution d);
Distribution distribution_from_string(const std::string& s);

// m sample points in [-1,1]^d with their provenance.  Regenerating from
// (seed, m, d, distribution) reproduces the identical point list bit for bit.
struct SampleSet {
  std::vector<Point> points;
  int dim = 1;
  Distribution distribution = Distribution::Uniform;
  std::uint64_t seed = 0;
  // Cached test value and the gamma0 it was computed at.
  mutable std::optional<double> test_value;
  mutable double test_gamma0 = 0.0;

  int size() const { return static_cast<int>(points.size()); }
};

// Per-sample terms Z_i = Omega(y_i) exp(-sqrt(m/gamma0) / (2 Omega^2(y_i)))
// and their sum T(Q), the test value of the set.
struct TestStatistic {
  double gamma0 = 0.0;
  double value = 0.0;
  std::vector<double> per_sample;
};

// i.i.d. points, each coordinate uniform on [-1,1].
SampleSet draw_uniform(int m, int d, std::uint64_t seed);

// Each coordinate cos(pi*u), u uniform on (0,1): the arcsine (Chebyshev)
// density 1/(pi sqrt(1-y^2)).
SampleSet draw_chebyshev(int m, int d, std::uint64_t seed);

// Computes T(Q).  Boundary points (|y_k| = 1) contribute Z_i = 0, the
// continuous limit: the exponential kills the envelope divergence.
TestStatistic test_value(const SampleSet& q, double gamma0);

// Right-hand side of the 1d preferable-set criterion,
//   32 sqrt(2)/pi^{3/2} m^{1/4} g0^{3/4} + 4 sqrt(2)/pi m^{1/4} g0^{-1/4}.
double preferable_threshold_1d(int m, double gamma0);

// T(Q) <= preferable_threshold_1d(m, gamma0)?  1d only.
bool is_preferable_1d(const SampleSet& q, double gamma0);

// Empirical (1-gamma0)-quantile of T over n_ref fresh uniform reference sets
// (linear interpolation between order statistics).  The multivariate
// preferable criterion compares T(Q) against this.
double estimate_percentile_threshold(int m, int d, double gamma0, int n_ref, std::uint64_t seed);

// Indices of `sets`, sorted ascending by test value (scored at gamma0 if not
// cached) and split into n_groups groups; remainder goes to the earliest
// groups.  Ties break by seed, then original position.
std::vector<std::vector<int>> rank_into_groups(const std::vector<SampleSet>& sets, double gamma0,
                                               int n_groups);

// CSV schema: "# m,d,distribution,seed,gamma0,test_value" header line, then
// one row of d coordinates per point.
void write_sample_set_csv(const SampleSet& q, std::ostream& os);
SampleSet read_sample_set_csv(std::istream& is);

}  // namespace legcs
