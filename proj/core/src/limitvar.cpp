#include "lue/limitvar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lue/errors.hpp"
#include "lue/quadrature.hpp"

namespace lue {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFourPiSq = 4.0 * kPi * kPi;

}  // namespace

double divided_difference_sq(const TestFunction& f, double x, double y) {
  if (x == y) throw DomainError("divided_difference_sq: x == y");
  const double d = (f(x) - f(y)) / (x - y);
  return d * d;
}

double xi(double x, double y) {
  if (!(x > 0.0 && x < 4.0 && y > 0.0 && y < 4.0)) throw DomainError("xi: arguments must lie in (0, 4)");
  return (4.0 - (x - 2.0) * (y - 2.0)) /
         (kFourPiSq * (std::sqrt(x * (4.0 - x)) * std::sqrt(y * (4.0 - y))));
}

double xi_tilde(double x, double y) {
  if (!(x > 0.0 && y > 0.0) || x == 4.0 || y == 4.0)
    throw DomainError("xi_tilde: arguments must be positive and away from 4");
  // r + 1/r with r^2 = p/q, written symmetrically in (x, y)
  const double p = std::abs((4.0 - y) * x);
  const double q = std::abs((4.0 - x) * y);
  return (p + q) / std::sqrt(p * q) / (2.0 * kFourPiSq);
}

double kappa(double x) {
  const double q = x * (4.0 - x);
  if (!(q >= 0.0)) throw DomainError("kappa: x outside [0, 4]");
  return 2.0 * kPi * std::sqrt(q);
}

double mp_density(double x) {
  if (!(x > 0.0) || x >= 4.0) return 0.0;
  return std::sqrt((4.0 - x) / x) / (2.0 * kPi);
}

double mp_cdf(double x) {
  if (!(x > 0.0)) return 0.0;
  if (x >= 4.0) return 1.0;
  const double th = std::acos(1.0 - x / 2.0);
  return (th + std::sin(th)) / kPi;
}

EndpointNodes limit_nodes(std::span<const double> cuts, int degree_hint, double center,
                          double halfwidth, const LimitConfig& cfg, int level, int extra) {
  const double lo = center - halfwidth;
  const double hi = center + halfwidth;
  const int panels = std::max(cfg.min_panels, (degree_hint + 1) / 2);
  std::vector<double> edges;
  for (int k = 0; k <= panels; ++k) edges.push_back(kPi * k / panels);
  std::vector<double> targets;
  for (double c : cuts) {
    if (c > lo && c < hi) {
      const double th = std::acos(std::clamp((center - c) / halfwidth, -1.0, 1.0));
      edges.push_back(th);
      targets.push_back(th);
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-12; }),
              edges.end());
  for (double& t : targets)
    t = *std::min_element(edges.begin(), edges.end(),
                          [&](double a, double b) { return std::abs(a - t) < std::abs(b - t); });
  edges = graded_edges(edges, targets, cfg.grading_levels + 3 * level, cfg.grading_ratio);
  const int p = cfg.points_per_panel + 8 * level + extra;
  EndpointNodes out;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const QuadratureRule r = gauss_legendre(p, edges[k], edges[k + 1]);
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double th = r.nodes[i];
      const double s2 = std::pow(std::sin(th / 2), 2);
      const double c2 = std::pow(std::cos(th / 2), 2);
      const double dlo = 2.0 * halfwidth * s2;
      const double dhi = 2.0 * halfwidth * c2;
      out.x.push_back(th < kPi / 2 ? lo + dlo : hi - dhi);
      out.dist_lo.push_back(dlo);
      out.dist_hi.push_back(dhi);
      out.w.push_back(r.weights[i] * halfwidth * std::sin(th));
    }
  }
  return out;
}

namespace {

// Absolute floor relative to the squared term magnitudes of f; differences
// like f - f^N cancel to rounding noise of that size.
constexpr double kAbsFloor = 1e-12;

bool close_enough(double prev, double cur, double tol, double floor = 0.0) {
  const double diff = std::abs(cur - prev);
  return diff <= tol * std::abs(cur) || diff <= floor || diff < 1e-300;
}

// sum_ij w_i w_j F(x_i, y_j) (4 - (x-c)(y-c)) / (4 pi^2 sqrt(..) sqrt(..)).
double arcsine_form(const TestFunction& f, double center, const EndpointNodes& X,
                    const EndpointNodes& Y) {
  std::vector<double> fx(X.size());
  std::vector<double> sx(X.size());
  std::vector<double> fy(Y.size());
  std::vector<double> sy(Y.size());
  for (std::size_t i = 0; i < X.size(); ++i) {
    fx[i] = f(X.x[i]);
    sx[i] = std::sqrt(X.dist_lo[i] * X.dist_hi[i]);
  }
  for (std::size_t j = 0; j < Y.size(); ++j) {
    fy[j] = f(Y.x[j]);
    sy[j] = std::sqrt(Y.dist_lo[j] * Y.dist_hi[j]);
  }
  QuadratureRule rx{X.x, X.w, RuleKind::composite, {}};
  QuadratureRule ry{Y.x, Y.w, RuleKind::composite, {}};
  const TensorGrid2D grid{std::move(rx), std::move(ry), 0.0};
  return integrate_2d_indexed(grid, [&](std::size_t i, std::size_t j) {
    const double d = (fx[i] - fy[j]) / (X.x[i] - Y.x[j]);
    const double wgt = (4.0 - (X.x[i] - center) * (Y.x[j] - center)) / (kFourPiSq * sx[i] * sy[j]);
    return d * d * wgt;
  });
}

double arcsine_variance(const TestFunction& f, double center, const LimitConfig& cfg,
                        const char* name) {
  if (f.is_constant()) return 0.0;
  const auto cuts = f.breakpoints();
  const int deg = f.degree_hint();
  double prev = 0.0;
  for (int level = 0; level <= cfg.max_levels; ++level) {
    const auto X = limit_nodes(cuts, deg, center, 2.0, cfg, level, 0);
    const auto Y = limit_nodes(cuts, deg, center, 2.0, cfg, level, 1);
    const double cur = arcsine_form(f, center, X, Y);
    double f_sq = 0.0;
    for (double x : X.x) {
      double m = 0.0;
      for (const auto& term : f.terms()) m += std::abs(term(x));
      f_sq = std::max(f_sq, m * m);
    }
    if (level > 0 && close_enough(prev, cur, cfg.rel_tol, kAbsFloor * f_sq)) return cur;
    prev = cur;
  }
  throw NonConvergence(std::string(name) + ": refinements disagree beyond tolerance");
}

// Nodes on (0, 4) followed by nodes on (4, 4 + eps), each carrying x and |x - 4|.
struct EpsNodes {
  std::vector<double> x;
  std::vector<double> d4;
  std::vector<double> w;
};

EpsNodes eps_nodes(std::span<const double> cuts, int deg, double eps, const LimitConfig& cfg,
                   int level, int extra) {
  EpsNodes out;
  const auto inner = limit_nodes(cuts, deg, 2.0, 2.0, cfg, level, extra);
  out.x = inner.x;
  out.d4 = inner.dist_hi;
  out.w = inner.w;
  // Coarser on the short outer strip: same panel machinery, fewer base panels.
  LimitConfig outer_cfg = cfg;
  outer_cfg.min_panels = std::max(2, cfg.min_panels / 2);
  const auto outer = limit_nodes(cuts, 0, 4.0 + eps / 2, eps / 2, outer_cfg, level, extra);
  for (std::size_t i = 0; i < outer.size(); ++i) {
    out.x.push_back(4.0 + outer.dist_lo[i]);
    out.d4.push_back(outer.dist_lo[i]);
    out.w.push_back(outer.w[i]);
  }
  return out;
}

double eps_form(const TestFunction& f, const EpsNodes& X, const EpsNodes& Y) {
  std::vector<double> fx(X.x.size());
  std::vector<double> fy(Y.x.size());
  std::vector<double> qx(X.x.size());
  std::vector<double> qy(Y.x.size());
  for (std::size_t i = 0; i < X.x.size(); ++i) {
    fx[i] = f(X.x[i]);
    qx[i] = std::sqrt(X.x[i] / X.d4[i]);
  }
  for (std::size_t j = 0; j < Y.x.size(); ++j) {
    fy[j] = f(Y.x[j]);
    qy[j] = std::sqrt(Y.x[j] / Y.d4[j]);
  }
  QuadratureRule rx{X.x, X.w, RuleKind::composite, {}};
  QuadratureRule ry{Y.x, Y.w, RuleKind::composite, {}};
  const TensorGrid2D grid{std::move(rx), std::move(ry), 0.0};
  return integrate_2d_indexed(grid, [&](std::size_t i, std::size_t j) {
    const double d = (fx[i] - fy[j]) / (X.x[i] - Y.x[j]);
    const double r = qx[i] / qy[j];
    return d * d * (r + 1.0 / r) / (2.0 * kFourPiSq);
  });
}

}  // namespace

double v_lue(const TestFunction& f, const LimitConfig& cfg) {
  return arcsine_variance(f, 2.0, cfg, "v_lue");
}

double v_gue(const TestFunction& f, const LimitConfig& cfg) {
  return arcsine_variance(f, 0.0, cfg, "v_gue");
}

double v_lue_eps(const TestFunction& f, double eps, const LimitConfig& cfg) {
  if (!(eps > 0.0)) throw InvalidArgument("v_lue_eps: eps must be positive");
  if (f.is_constant()) return 0.0;
  const auto cuts = f.breakpoints();
  const int deg = f.degree_hint();
  std::vector<double> values;
  for (int level = 0; level <= cfg.max_levels; ++level) {
    const auto X = eps_nodes(cuts, deg, eps, cfg, level, 0);
    const auto Y = eps_nodes(cuts, deg, eps, cfg, level, 1);
    values.push_back(eps_form(f, X, Y));
    const std::size_t k = values.size();
    if (k >= 4 && close_enough(values[k - 4], values[k - 3], cfg.eps_tol) &&
        close_enough(values[k - 3], values[k - 2], cfg.eps_tol) &&
        close_enough(values[k - 2], values[k - 1], cfg.eps_tol))
      return values.back();
  }
  return kDivergent;
}

}  // namespace lue
