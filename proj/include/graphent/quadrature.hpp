#pragma once

#include <functional>
#include <vector>

namespace graphent {

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [−1, 1]
  std::vector<double> weights;
};

/// n-point Gauss–Legendre rule, nodes from Newton iteration on P_n.
GaussLegendreRule gauss_legendre(int n);

struct AdaptiveQuadratureOptions {
  int order = 10;
  double abs_tolerance = 1e-8;
  int max_depth = 30;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

/// Composite Gauss–Legendre with interval halving: an interval is accepted
/// when the rule on it agrees with the rule on its two halves to within its
/// share of the tolerance.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const AdaptiveQuadratureOptions& options = {});

}  // namespace graphent
