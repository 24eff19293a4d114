#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace lue {

// Edge variable maps. t is the ratio n x / (4 n~ + 2 alpha + 2).
double zeta(double t);
// zeta(t) / (1 - t), continuous through t = 1 (limit 2^{-2/3}).
double zeta_ratio(double t);
double eta(double t);
double gamma_decay(double t);
// gamma'(t) = sqrt((t - 1) / t) / 2
double gamma_decay_slope(double t);

// 4 n~ + 2 alpha + 2 with n~ = n - ntilde_shift.
double edge_lambda(int n, int alpha, int ntilde_shift);

// Oscillatory leading term approximating n psi_{n~}(n x)^2 for x in [0.1, 3.9].
double bulk_approx_density(int n, int alpha, int ntilde_shift, double x);

// Airy-form approximation to sqrt(n) psi_{n~}(n x), x >= 2.
double soft_edge_approx(int n, int alpha, int ntilde_shift, double x);
// Error scale E(x) attached to the Airy form.
double soft_edge_error(int n, int alpha, int ntilde_shift, double x);

// Bessel-form approximation to sqrt(n) psi_{n~}(n x), 0 < x <= 2.
double hard_edge_approx(int n, int alpha, int ntilde_shift, double x);

enum class Regime { bulk, soft, hard };

std::string_view to_string(Regime r);
Regime parse_regime(std::string_view s);

struct AsymptoticReport {
  Regime regime = Regime::bulk;
  int n = 0;
  int alpha = 0;
  int ntilde_shift = 0;
  std::vector<double> grid;
  std::vector<double> direct;
  std::vector<double> approx;
  double max_abs_err = 0.0;
  // max_abs_err / max |direct|; pointwise ratios are meaningless at zeros.
  double max_rel_err = 0.0;
};

// bulk compares n psi^2, soft and hard compare sqrt(n) psi.
AsymptoticReport asymptotic_report(Regime regime, int n, int alpha, std::span<const double> grid,
                                   int ntilde_shift = 0);

// Evenly spaced default grid of the given size for each regime.
std::vector<double> default_regime_grid(Regime regime, int points = 50);

}  // namespace lue
