#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace lue {

enum class RuleKind { gauss_legendre, gauss_chebyshev_first_kind, theta_substituted, composite };

// Nodes strictly increasing, weights positive.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  RuleKind kind = RuleKind::gauss_legendre;
  // Substitution parameter per node (theta for theta-substituted rules);
  // empty when the rule has none.
  std::vector<double> params;

  std::size_t size() const noexcept { return nodes.size(); }
  double apply(const std::function<double(double)>& g) const;
};

QuadratureRule gauss_legendre(int points, double a, double b);

// Integrates g(x)/(pi sqrt(4-x^2)) over [-2, 2].
QuadratureRule gauss_chebyshev_w(int points);

// Gauss-Legendre in theta on [theta_a, theta_b] mapped through
// x = center - halfwidth*cos(theta), with the Jacobian folded into the
// weights. [a, b] must lie inside [center - halfwidth, center + halfwidth].
// Inverse square-root endpoint singularities at center +- halfwidth become
// smooth in theta.
QuadratureRule theta_substituted(int points, double a, double b, double center = 2.0,
                                 double halfwidth = 2.0);

// Same map, with the rule placed on [theta_a, theta_b] directly.
QuadratureRule theta_substituted_angles(int points, double theta_a, double theta_b,
                                        double center = 2.0, double halfwidth = 2.0);

// Concatenation of rules on adjacent, non-overlapping intervals.
QuadratureRule concatenate(std::span<const QuadratureRule> parts);

// Panelled rules: panel k spans [edges[k], edges[k+1]] with points[k] nodes.
QuadratureRule composite_legendre(std::span<const double> edges, std::span<const int> points);
QuadratureRule composite_theta(std::span<const double> theta_edges, std::span<const int> points,
                               double center = 2.0, double halfwidth = 2.0);

// Splits `total` points across panels in proportion to panel length, at
// least min_per_panel each, plus `extra` on every panel.
std::vector<int> allocate_points(std::span<const double> edges, int total, int min_per_panel,
                                 int extra = 0);

// Adds geometrically graded edges (ratio^1, ..., ratio^levels of the
// adjacent panel length) on both sides of every target edge.
std::vector<double> graded_edges(std::span<const double> edges, std::span<const double> targets,
                                 int levels, double ratio);

struct TensorGrid2D {
  QuadratureRule rule_x;
  QuadratureRule rule_y;
  double diagonal_offset = 0.0;
};

// Validates that no |x_i - y_j| falls below diagonal_offset * eps * scale,
// scale being the larger absolute node value.
TensorGrid2D make_tensor_grid(QuadratureRule rx, QuadratureRule ry, double diagonal_offset);

// Compensated (Neumaier) accumulator.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// sum_i sum_j w_i w_j g(x_i, y_j), rows summed in order with compensation.
// Throws NonFiniteIntegrand naming the first offending pair.
double integrate_2d(const TensorGrid2D& grid, const std::function<double(double, double)>& g);

// Index-based variant for integrands backed by per-node caches.
double integrate_2d_indexed(const TensorGrid2D& grid,
                            const std::function<double(std::size_t, std::size_t)>& g);

// PV integral of g over [center - halfwidth, center + halfwidth], where g has
// at most a simple pole at center: integral_0^h [g(c+s) + g(c-s)] ds by
// Gauss-Legendre in s.
double principal_value(double center, double halfwidth, int points,
                       const std::function<double(double)>& g);

// PV over an arbitrary [a, b] containing center: symmetric part around the
// pole plus an ordinary Gauss-Legendre integral over the remainder.
double principal_value_on(double a, double b, double center, int points,
                          const std::function<double(double)>& g);

// x_max > 4 beyond which int n psi_k(nx)^2 dx < tol for k in {n-2, n-1, n},
// from the exponential decay bound past the soft edge.
double tail_cutoff(int n, int alpha, double tol);

}  // namespace lue
