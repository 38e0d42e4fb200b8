#include "graphent/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "graphent/error.hpp"

namespace graphent {

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw InvalidInput("Gauss-Legendre order must be positive");
  GaussLegendreRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  if (n == 1) {
    rule.weights[0] = 2.0;
    return rule;
  }
  // P_n(x) and P_n'(x) by the three-term recurrence.
  auto legendre = [n](double x, double& deriv) {
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    deriv = n * (x * p1 - p0) / (x * x - 1.0);
    return p1;
  };
  for (int i = 0; i < n / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double deriv = 0.0;
    for (int it = 0; it < 100; ++it) {
      const double dx = legendre(x, deriv) / deriv;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(x, deriv);
    const double w = 2.0 / ((1.0 - x * x) * deriv * deriv);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) {
    double deriv = 0.0;
    legendre(0.0, deriv);
    rule.weights[n / 2] = 2.0 / (deriv * deriv);
  }
  return rule;
}

namespace {

double apply_rule(const GaussLegendreRule& rule, const std::function<double(double)>& f,
                  double a, double b, long& evals) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  evals += static_cast<long>(rule.nodes.size());
  return sum * half;
}

void refine(const GaussLegendreRule& rule, const std::function<double(double)>& f, double a,
            double b, double whole, double tol, int depth, int max_depth, QuadratureResult& out) {
  const double mid = 0.5 * (a + b);
  const double left = apply_rule(rule, f, a, mid, out.evaluations);
  const double right = apply_rule(rule, f, mid, b, out.evaluations);
  const double diff = std::abs(left + right - whole);
  if (diff <= tol || depth >= max_depth) {
    if (diff > tol) throw ConvergenceError("adaptive quadrature reached its depth limit");
    out.value += left + right;
    out.error_estimate += diff;
    return;
  }
  refine(rule, f, a, mid, left, 0.5 * tol, depth + 1, max_depth, out);
  refine(rule, f, mid, b, right, 0.5 * tol, depth + 1, max_depth, out);
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const AdaptiveQuadratureOptions& options) {
  if (!(b >= a)) throw InvalidInput("integration bounds out of order");
  QuadratureResult out;
  if (a == b) return out;
  const GaussLegendreRule rule = gauss_legendre(options.order);
  const double whole = apply_rule(rule, f, a, b, out.evaluations);
  refine(rule, f, a, b, whole, options.abs_tolerance, 0, options.max_depth, out);
  return out;
}

}  // namespace graphent
