#pragma once

#include <limits>
#include <span>
#include <vector>

#include "lue/test_function.hpp"

namespace lue {

double divided_difference_sq(const TestFunction& f, double x, double y);

// Limiting weight on (0, 4)^2.
double xi(double x, double y);
// Extension of xi to (0, 4 + eps)^2 away from x, y in {0, 4}.
double xi_tilde(double x, double y);
// 2 pi sqrt(4 - (x - 2)^2)
double kappa(double x);
// Marchenko-Pastur density for aspect ratio 1.
double mp_density(double x);
// int_0^x mp_density
double mp_cdf(double x);

struct LimitConfig {
  int points_per_panel = 16;
  int min_panels = 8;
  int grading_levels = 10;
  double grading_ratio = 0.2;
  double rel_tol = 1e-10;
  int max_levels = 6;
  // Relative change below which v_lue_eps declares convergence.
  double eps_tol = 1e-4;
};

// Nodes of a theta-substituted rule on [center - halfwidth, center + halfwidth]
// with accurate distances to both endpoints.
struct EndpointNodes {
  std::vector<double> x;
  std::vector<double> dist_lo;
  std::vector<double> dist_hi;
  std::vector<double> w;

  std::size_t size() const noexcept { return x.size(); }
};

// Panels uniform in theta, split at `cuts` and graded toward them. `level`
// raises points per panel and grading depth; `extra` adds points per panel
// (used to offset the y rule from the x rule).
EndpointNodes limit_nodes(std::span<const double> cuts, int degree_hint, double center,
                          double halfwidth, const LimitConfig& cfg, int level, int extra);

double v_lue(const TestFunction& f, const LimitConfig& cfg = {});
// f is evaluated on [-2, 2].
double v_gue(const TestFunction& f, const LimitConfig& cfg = {});
// +inf when refinements keep moving (the finiteness condition fails).
double v_lue_eps(const TestFunction& f, double eps, const LimitConfig& cfg = {});

inline constexpr double kDivergent = std::numeric_limits<double>::infinity();

}  // namespace lue
