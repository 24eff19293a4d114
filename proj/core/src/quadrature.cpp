#include "lue/quadrature.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "lue/asymptotics.hpp"
#include "lue/errors.hpp"
#include "lue/parallel.hpp"

namespace lue {

double QuadratureRule::apply(const std::function<double(double)>& g) const {
  CompensatedSum s;
  for (std::size_t i = 0; i < nodes.size(); ++i) s.add(weights[i] * g(nodes[i]));
  return s.value();
}

namespace {

struct ReferenceRule {
  std::vector<double> nodes;  // ascending on [-1, 1]
  std::vector<double> weights;
};

// Legendre P_N and P_N' at x by the three-term recurrence.
std::pair<double, double> legendre_with_derivative(int N, double x) {
  double p0 = 1.0;
  double p1 = x;
  if (N == 0) return {1.0, 0.0};
  for (int k = 2; k <= N; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = N * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

ReferenceRule build_reference(int N) {
  ReferenceRule r;
  r.nodes.resize(N);
  r.weights.resize(N);
  const int half = N / 2;
  for (int i = 0; i < half + (N % 2); ++i) {
    // i-th largest root; Tricomi-style initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (N + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const auto [p, d] = legendre_with_derivative(N, x);
      const double dx = p / d;
      x -= dx;
      dp = d;
      if (std::abs(dx) < 1e-15) break;
    }
    const auto [p, d] = legendre_with_derivative(N, x);
    (void)p;
    dp = d;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    if (N % 2 == 1 && i == half) x = 0.0;
    r.nodes[N - 1 - i] = x;
    r.nodes[i] = -x;
    r.weights[N - 1 - i] = w;
    r.weights[i] = w;
  }
  return r;
}

const ReferenceRule& reference_rule(int N) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<ReferenceRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[N];
  if (!slot) slot = std::make_unique<ReferenceRule>(build_reference(N));
  return *slot;
}

void check_points(int points) {
  if (points < 1 || points > 10000) throw InvalidArgument("quadrature: points must be in [1, 10^4]");
}

}  // namespace

QuadratureRule gauss_legendre(int points, double a, double b) {
  check_points(points);
  if (!(a < b)) throw InvalidArgument("gauss_legendre: invalid interval, need a < b");
  const auto& ref = reference_rule(points);
  QuadratureRule rule;
  rule.kind = RuleKind::gauss_legendre;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int i = 0; i < points; ++i) {
    rule.nodes[i] = mid + half * ref.nodes[i];
    rule.weights[i] = half * ref.weights[i];
  }
  return rule;
}

QuadratureRule gauss_chebyshev_w(int points) {
  if (points < 1) throw InvalidArgument("gauss_chebyshev_w: points must be positive");
  QuadratureRule rule;
  rule.kind = RuleKind::gauss_chebyshev_first_kind;
  rule.nodes.resize(points);
  rule.weights.assign(points, 1.0 / points);
  rule.params.resize(points);
  for (int k = 1; k <= points; ++k) {
    const double theta = (2.0 * k - 1.0) * std::numbers::pi / (2.0 * points);
    // Ascending order: largest theta first.
    rule.nodes[points - k] = 2.0 * std::cos(theta);
    rule.params[points - k] = theta;
  }
  return rule;
}

QuadratureRule theta_substituted_angles(int points, double theta_a, double theta_b, double center,
                                        double halfwidth) {
  check_points(points);
  if (!(halfwidth > 0.0) || !(theta_a < theta_b) || theta_a < 0.0 || theta_b > std::numbers::pi)
    throw InvalidArgument("theta_substituted: invalid angle interval");
  const double lo = center - halfwidth;
  const double hi = center + halfwidth;
  QuadratureRule rule = gauss_legendre(points, theta_a, theta_b);
  rule.kind = RuleKind::theta_substituted;
  rule.params = rule.nodes;
  for (int i = 0; i < points; ++i) {
    const double th = rule.params[i];
    // Distance to the nearer endpoint computed without cancellation.
    const double x = th < std::numbers::pi / 2
                         ? lo + 2.0 * halfwidth * std::pow(std::sin(th / 2), 2)
                         : hi - 2.0 * halfwidth * std::pow(std::cos(th / 2), 2);
    rule.nodes[i] = x;
    rule.weights[i] *= halfwidth * std::sin(th);
  }
  return rule;
}

QuadratureRule theta_substituted(int points, double a, double b, double center, double halfwidth) {
  const double lo = center - halfwidth;
  const double hi = center + halfwidth;
  if (!(halfwidth > 0.0) || !(a < b) || a < lo || b > hi)
    throw InvalidArgument("theta_substituted: invalid interval");
  const double ta = std::acos(std::clamp((center - a) / halfwidth, -1.0, 1.0));
  const double tb = std::acos(std::clamp((center - b) / halfwidth, -1.0, 1.0));
  return theta_substituted_angles(points, ta, tb, center, halfwidth);
}

QuadratureRule concatenate(std::span<const QuadratureRule> parts) {
  QuadratureRule out;
  out.kind = RuleKind::composite;
  bool all_params = !parts.empty();
  for (const auto& p : parts) all_params = all_params && p.params.size() == p.nodes.size();
  for (const auto& p : parts) {
    if (!out.nodes.empty() && !p.nodes.empty() && !(p.nodes.front() > out.nodes.back()))
      throw InvalidArgument("concatenate: parts must be ordered and non-overlapping");
    out.nodes.insert(out.nodes.end(), p.nodes.begin(), p.nodes.end());
    out.weights.insert(out.weights.end(), p.weights.begin(), p.weights.end());
    if (all_params) out.params.insert(out.params.end(), p.params.begin(), p.params.end());
  }
  if (parts.size() == 1) out.kind = parts.front().kind;
  return out;
}

QuadratureRule composite_legendre(std::span<const double> edges, std::span<const int> points) {
  if (edges.size() < 2 || points.size() + 1 != edges.size())
    throw InvalidArgument("composite_legendre: edges/points size mismatch");
  std::vector<QuadratureRule> parts;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k)
    parts.push_back(gauss_legendre(points[k], edges[k], edges[k + 1]));
  return concatenate(parts);
}

QuadratureRule composite_theta(std::span<const double> theta_edges, std::span<const int> points,
                               double center, double halfwidth) {
  if (theta_edges.size() < 2 || points.size() + 1 != theta_edges.size())
    throw InvalidArgument("composite_theta: edges/points size mismatch");
  std::vector<QuadratureRule> parts;
  for (std::size_t k = 0; k + 1 < theta_edges.size(); ++k)
    parts.push_back(theta_substituted_angles(points[k], theta_edges[k], theta_edges[k + 1], center,
                                             halfwidth));
  return concatenate(parts);
}

std::vector<int> allocate_points(std::span<const double> edges, int total, int min_per_panel,
                                 int extra) {
  if (edges.size() < 2) throw InvalidArgument("allocate_points: need at least one panel");
  const double length = edges.back() - edges.front();
  std::vector<int> pts;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const double share = total * (edges[k + 1] - edges[k]) / length;
    pts.push_back(std::max(min_per_panel, static_cast<int>(std::ceil(share))) + extra);
  }
  return pts;
}

std::vector<double> graded_edges(std::span<const double> edges, std::span<const double> targets,
                                 int levels, double ratio) {
  // Panels much narrower than this put x and y nodes within rounding of each other.
  constexpr double kFinestFraction = 1e-10;
  if (ratio > 0.0 && ratio < 1.0)
    levels = std::min(levels, static_cast<int>(std::log(kFinestFraction) / std::log(ratio)));
  std::vector<double> out(edges.begin(), edges.end());
  for (double t : targets) {
    const auto it = std::find(edges.begin(), edges.end(), t);
    if (it == edges.end()) continue;
    const std::size_t k = static_cast<std::size_t>(it - edges.begin());
    if (k > 0) {
      const double len = t - edges[k - 1];
      for (int l = 1; l <= levels; ++l) out.push_back(t - len * std::pow(ratio, l));
    }
    if (k + 1 < edges.size()) {
      const double len = edges[k + 1] - t;
      for (int l = 1; l <= levels; ++l) out.push_back(t + len * std::pow(ratio, l));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TensorGrid2D make_tensor_grid(QuadratureRule rx, QuadratureRule ry, double diagonal_offset) {
  if (diagonal_offset < 0.0) throw InvalidArgument("make_tensor_grid: negative diagonal offset");
  if (diagonal_offset > 0.0) {
    double scale = 0.0;
    for (double v : rx.nodes) scale = std::max(scale, std::abs(v));
    for (double v : ry.nodes) scale = std::max(scale, std::abs(v));
    const double gap = diagonal_offset * std::numeric_limits<double>::epsilon() * std::max(scale, 1.0);
    // Both node lists are sorted: merge-walk for the closest pair.
    std::size_t j = 0;
    for (std::size_t i = 0; i < rx.nodes.size(); ++i) {
      const double x = rx.nodes[i];
      while (j + 1 < ry.nodes.size() && ry.nodes[j + 1] <= x) ++j;
      for (std::size_t k = j; k < std::min(j + 2, ry.nodes.size()); ++k)
        if (std::abs(x - ry.nodes[k]) < gap)
          throw InvalidArgument("make_tensor_grid: x and y nodes too close to the diagonal");
    }
  }
  return TensorGrid2D{std::move(rx), std::move(ry), diagonal_offset};
}

double integrate_2d_indexed(const TensorGrid2D& grid,
                            const std::function<double(std::size_t, std::size_t)>& g) {
  const std::size_t nx = grid.rule_x.size();
  const std::size_t ny = grid.rule_y.size();
  std::vector<double> rows(nx, 0.0);
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> bad(nx, kNone);
  parallel_for(nx, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      CompensatedSum row;
      for (std::size_t j = 0; j < ny; ++j) {
        const double v = g(i, j);
        if (!std::isfinite(v)) {
          bad[i] = j;
          break;
        }
        row.add(grid.rule_y.weights[j] * v);
      }
      rows[i] = grid.rule_x.weights[i] * row.value();
    }
  });
  CompensatedSum total;
  for (std::size_t i = 0; i < nx; ++i) {
    if (bad[i] != kNone)
      throw NonFiniteIntegrand(i, bad[i], grid.rule_x.nodes[i], grid.rule_y.nodes[bad[i]]);
    total.add(rows[i]);
  }
  return total.value();
}

double integrate_2d(const TensorGrid2D& grid, const std::function<double(double, double)>& g) {
  return integrate_2d_indexed(grid, [&](std::size_t i, std::size_t j) {
    return g(grid.rule_x.nodes[i], grid.rule_y.nodes[j]);
  });
}

double principal_value(double center, double halfwidth, int points,
                       const std::function<double(double)>& g) {
  if (!(halfwidth > 0.0)) throw InvalidArgument("principal_value: halfwidth must be positive");
  const QuadratureRule s = gauss_legendre(points, 0.0, halfwidth);
  CompensatedSum sum;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double d = s.nodes[i];
    if (center + d == center || center - d == center)
      throw DomainError("principal_value: node coincides with the pole");
    const double v = g(center + d) + g(center - d);
    if (!std::isfinite(v)) throw DomainError("principal_value: non-finite integrand");
    sum.add(s.weights[i] * v);
  }
  return sum.value();
}

double principal_value_on(double a, double b, double center, int points,
                          const std::function<double(double)>& g) {
  if (!(a < center && center < b)) throw InvalidArgument("principal_value_on: need a < center < b");
  const double h = std::min(center - a, b - center);
  double total = principal_value(center, h, points, g);
  if (center + h < b) total += gauss_legendre(points, center + h, b).apply(g);
  if (center - h > a) total += gauss_legendre(points, a, center - h).apply(g);
  return total;
}

namespace {

constexpr double kTailSafety = 16.0;

// Upper bound on int_{x0}^inf n psi_k(n x)^2 dx for Lambda = 4k + 2 alpha + 2.
double tail_bound(int n, double lambda, double x0) {
  const double t0 = n * x0 / lambda;
  if (!(t0 > 1.0)) return std::numeric_limits<double>::infinity();
  const double g = gamma_decay(t0);
  const double slope = gamma_decay_slope(t0);
  return kTailSafety * std::exp(-2.0 * lambda * g) / std::sqrt(x0 * (t0 - 1.0)) / (2.0 * n * slope);
}

}  // namespace

double tail_cutoff(int n, int alpha, double tol) {
  if (n < 1 || alpha < 0) throw InvalidArgument("tail_cutoff: need n >= 1, alpha >= 0");
  if (!(tol > 0.0 && tol < 1.0)) throw InvalidArgument("tail_cutoff: tol must lie in (0, 1)");
  double x_max = 4.0;
  for (int k = std::max(0, n - 2); k <= n; ++k) {
    const double lambda = 4.0 * k + 2.0 * alpha + 2.0;
    double lo = lambda / n;
    double hi = lo + 1.0;
    while (tail_bound(n, lambda, hi) >= tol) hi = lo + 2.0 * (hi - lo);
    for (int it = 0; it < 200 && hi - lo > 1e-10 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (tail_bound(n, lambda, mid) < tol ? hi : lo) = mid;
    }
    x_max = std::max(x_max, hi);
  }
  return x_max;
}

}  // namespace lue
