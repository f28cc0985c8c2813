#pragma once

#include <functional>
#include <vector>

namespace legcs {

// Gauss-Legendre nodes and weights on [-1,1] (Newton iteration on the
// classical recurrence; weights sum to 2).
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_legendre(int n);

// integral of f over [a,b] with an n-point rule.
double integrate(const std::function<double(double)>& f, double a, double b, int n = 64);

}  // namespace legcs
