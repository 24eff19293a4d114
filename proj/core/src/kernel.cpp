#include "lue/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "lue/errors.hpp"
#include "lue/parallel.hpp"

namespace lue {

KernelContext::KernelContext(LaguerreIndex idx)
    : idx_(idx), c_(std::sqrt(static_cast<double>(idx.n) * (idx.n + idx.alpha))) {
  if (idx.n < 1) throw InvalidArgument("KernelContext requires n >= 1");
}

PsiPair KernelContext::scaled_pair(double x) const {
  {
    std::shared_lock lock(mutex_);
    if (auto it = memo_.find(x); it != memo_.end()) return it->second;
  }
  const PsiPair p = eval_psi_pair(idx_, idx_.n * x);
  std::unique_lock lock(mutex_);
  memo_.emplace(x, p);
  return p;
}

std::vector<PsiPair> KernelContext::cache_nodes(std::span<const double> nodes) const {
  std::vector<PsiPair> out(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) out[i] = eval_psi_pair(idx_, idx_.n * nodes[i]);
  });
  return out;
}

double cd_kernel_from(const KernelContext& ctx, double x, PsiPair px, double y, PsiPair py) {
  if (x == y) throw DiagonalError("cd_kernel: x == y, use kernel_diagonal");
  return ctx.cd_constant() * (px.prev * py.cur - px.cur * py.prev) / (x - y);
}

double cd_kernel(const KernelContext& ctx, double x, double y) {
  if (!(x >= 0.0 && y >= 0.0)) throw DomainError("cd_kernel: arguments must be nonnegative");
  if (x == y) throw DiagonalError("cd_kernel: x == y, use kernel_diagonal");
  return cd_kernel_from(ctx, x, ctx.scaled_pair(x), y, ctx.scaled_pair(y));
}

double kernel_diagonal_from(const KernelContext& ctx, double x, PsiPair p) {
  if (!(x > 0.0)) throw DomainError("kernel_diagonal: x must be positive");
  const double n = ctx.index().n;
  const double u = n * x;
  const double c = ctx.cd_constant();
  // psi'_{n-1} psi_n - psi'_n psi_{n-1}, both derivatives from the pair.
  const double a = (2.0 * n + ctx.index().alpha - u) / (2.0 * u);
  const double w = (c / u) * (p.cur * p.cur + p.prev * p.prev) - 2.0 * a * p.cur * p.prev;
  return c * n * w;
}

double kernel_diagonal(const KernelContext& ctx, double x) {
  if (!(x > 0.0)) throw DomainError("kernel_diagonal: x must be positive");
  return kernel_diagonal_from(ctx, x, ctx.scaled_pair(x));
}

double phi(const KernelContext& ctx, double x, double y) {
  if (!(x >= 0.0 && y >= 0.0)) throw DomainError("phi: arguments must be nonnegative");
  const PsiPair px = ctx.scaled_pair(x);
  const PsiPair py = ctx.scaled_pair(y);
  const double cc = ctx.cd_constant() * ctx.cd_constant();
  return cc * (px.prev * px.prev * py.cur * py.cur - px.cur * px.prev * py.cur * py.prev);
}

QuadratureRule kernel_rule(double x_max, std::span<const double> cuts, int points, int extra) {
  std::vector<double> inner{0.0, std::numbers::pi};
  std::vector<double> outer{4.0, x_max};
  for (double c : cuts) {
    if (c > 0.0 && c < 4.0) inner.push_back(std::acos(1.0 - c / 2.0));
    if (c > 4.0 && c < x_max) outer.push_back(c);
  }
  std::sort(inner.begin(), inner.end());
  std::sort(outer.begin(), outer.end());
  inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
  outer.erase(std::unique(outer.begin(), outer.end()), outer.end());
  const int inner_total = std::max(8, points * 3 / 4);
  const int outer_total = std::max(8, points - inner_total);
  const auto pi = allocate_points(inner, inner_total, 8, extra);
  const auto po = allocate_points(outer, outer_total, 8, extra);
  const QuadratureRule parts[] = {composite_theta(inner, pi), composite_legendre(outer, po)};
  return concatenate(parts);
}

namespace {

// `scale` bounds the integral of |integrand|; it floors the test when the
// value itself cancels to near zero.
bool settled(double prev, double cur, double tol, double scale) {
  const double diff = std::abs(cur - prev);
  return diff <= tol * std::abs(cur) || diff <= 1e-13 * scale || diff < 1e-300;
}

}  // namespace

double lss_mean(const KernelContext& ctx, const TestFunction& f, const QuadConfig& cfg) {
  const double x_max = tail_cutoff(ctx.index().n, ctx.index().alpha, cfg.tail_tol);
  const auto cuts = f.breakpoints();
  double prev = 0.0;
  int points = cfg.points;
  for (int level = 0; level <= cfg.max_refinements; ++level, points *= 2) {
    const QuadratureRule rule = kernel_rule(x_max, cuts, points, 0);
    const auto pairs = ctx.cache_nodes(rule.nodes);
    CompensatedSum sum;
    double scale = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double v = rule.weights[i] * f(rule.nodes[i]) * kernel_diagonal_from(ctx, rule.nodes[i], pairs[i]);
      sum.add(v);
      scale += std::abs(v);
    }
    const double cur = sum.value();
    if (level > 0 && settled(prev, cur, cfg.refine_tol, scale)) return cur;
    prev = cur;
  }
  throw NonConvergence("lss_mean: refinements did not settle");
}

VarianceReport lss_variance(const KernelContext& ctx, const TestFunction& f, const QuadConfig& cfg) {
  VarianceReport rep;
  rep.n = ctx.index().n;
  rep.alpha = ctx.index().alpha;
  rep.truncation = tail_cutoff(rep.n, rep.alpha, cfg.tail_tol);
  rep.mean = lss_mean(ctx, f, cfg);
  if (f.is_constant()) {
    rep.finite_n_variance = 0.0;
    rep.quad_points = cfg.points;
    return rep;
  }
  const auto cuts = f.breakpoints();
  const double c = ctx.cd_constant();
  double prev = 0.0;
  int points = cfg.points;
  for (int level = 0; level <= cfg.max_refinements; ++level, points *= 2) {
    TensorGrid2D grid = make_tensor_grid(kernel_rule(rep.truncation, cuts, points, 0),
                                         kernel_rule(rep.truncation, cuts, points, 1), 1.0);
    const auto& xs = grid.rule_x.nodes;
    const auto& ys = grid.rule_y.nodes;
    const auto px = ctx.cache_nodes(xs);
    const auto py = ctx.cache_nodes(ys);
    std::vector<double> fx(xs.size());
    std::vector<double> fy(ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i) fx[i] = f(xs[i]);
    for (std::size_t j = 0; j < ys.size(); ++j) fy[j] = f(ys[j]);
    const double cur = 0.5 * integrate_2d_indexed(grid, [&](std::size_t i, std::size_t j) {
      const double num = c * (px[i].prev * py[j].cur - px[i].cur * py[j].prev);
      const double v = (fx[i] - fy[j]) * num / (xs[i] - ys[j]);
      return v * v;
    });
    rep.finite_n_variance = cur;
    rep.quad_points = static_cast<int>(xs.size());
    if (level > 0 && settled(prev, cur, cfg.refine_tol, cur)) return rep;
    prev = cur;
  }
  throw NonConvergence("lss_variance: refinements did not settle");
}

}  // namespace lue
