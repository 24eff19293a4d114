#include "lue/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lue/errors.hpp"
#include "lue/specfun.hpp"

namespace lue {

namespace {

constexpr double kBranchWindow = 1e-4;
constexpr double kBulkDelta = 0.1;

// 1 + c1 s + c2 s^2 with the sign of c1 set by the side of t = 1.
double bracket_series(double s, bool below) {
  return below ? 1.0 + 0.3 * s + (9.0 / 56.0) * s * s : 1.0 - 0.3 * s + (9.0 / 56.0) * s * s;
}

}  // namespace

double zeta_ratio(double t) {
  if (!(t > 0.0)) throw DomainError("zeta: t must be positive");
  const double s = std::abs(1.0 - t);
  if (s < kBranchWindow) return std::cbrt(0.25) * std::cbrt(std::pow(bracket_series(s, t < 1.0), 2));
  return zeta(t) / (1.0 - t);
}

double zeta(double t) {
  if (!(t > 0.0)) throw DomainError("zeta: t must be positive");
  const double s = std::abs(1.0 - t);
  if (s < kBranchWindow) {
    const double mag = std::cbrt(0.25) * s * std::cbrt(std::pow(bracket_series(s, t < 1.0), 2));
    return t <= 1.0 ? mag : -mag;
  }
  if (t <= 1.0) {
    const double a = std::acos(std::sqrt(t)) - std::sqrt(t - t * t);
    return std::cbrt(std::pow(0.75 * a, 2));
  }
  const double b = std::sqrt(t * t - t) - std::acosh(std::sqrt(t));
  return -std::cbrt(std::pow(0.75 * b, 2));
}

double eta(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("eta: t must lie in [0, 1]");
  return 0.5 * std::sqrt(t - t * t) + 0.5 * std::asin(std::sqrt(t));
}

double gamma_decay(double t) {
  if (!(t >= 1.0)) throw DomainError("gamma_decay: t must be >= 1");
  const double s = t - 1.0;
  if (s < kBranchWindow) return (1.0 / 3.0) * s * std::sqrt(s) * bracket_series(s, false);
  return 0.5 * (std::sqrt(t * t - t) - std::acosh(std::sqrt(t)));
}

double gamma_decay_slope(double t) {
  if (!(t >= 1.0)) throw DomainError("gamma_decay_slope: t must be >= 1");
  return 0.5 * std::sqrt((t - 1.0) / t);
}

double edge_lambda(int n, int alpha, int ntilde_shift) {
  const int nt = n - ntilde_shift;
  if (n < 1 || nt < 0 || alpha < 0) throw InvalidArgument("asymptotics: need n >= 1, 0 <= n~");
  return 4.0 * nt + 2.0 * alpha + 2.0;
}

double bulk_approx_density(int n, int alpha, int ntilde_shift, double x) {
  if (!(x >= kBulkDelta && x <= 4.0 - kBulkDelta))
    throw DomainError("bulk_approx_density: x outside the bulk window [0.1, 3.9]");
  const double lambda = edge_lambda(n, alpha, ntilde_shift);
  const double nt = n - ntilde_shift;
  const double c = std::sqrt(n * x / lambda);
  if (!(c < 1.0)) throw DomainError("bulk_approx_density: x beyond the turning point");
  const double upper = std::numbers::pi / 2 - kBulkDelta / (4.0 * std::sqrt(std::max(nt, 1.0)));
  const double phi = std::clamp(std::acos(c), kBulkDelta, upper);
  const double phase = (2.0 * nt + alpha + 1.0) * (std::sin(2.0 * phi) - 2.0 * phi) + 1.5 * std::numbers::pi;
  return (1.0 - std::cos(phase)) / (2.0 * std::numbers::pi * std::sqrt(x) * std::sin(phi));
}

double soft_edge_approx(int n, int alpha, int ntilde_shift, double x) {
  if (!(x >= 2.0)) throw DomainError("soft_edge_approx: x must be >= 2");
  const double lambda = edge_lambda(n, alpha, ntilde_shift);
  const double t = n * x / lambda;
  const double z = zeta(t);
  const double sign = (n - ntilde_shift) % 2 == 0 ? 1.0 : -1.0;
  const double pref = std::pow(lambda, 1.0 / 6.0) * std::pow(std::abs(zeta_ratio(t)) / x, 0.25);
  return sign * pref * airy_ai(-std::pow(lambda, 2.0 / 3.0) * z);
}

double soft_edge_error(int n, int alpha, int ntilde_shift, double x) {
  if (!(x >= 2.0)) throw DomainError("soft_edge_error: x must be >= 2");
  const double lambda = edge_lambda(n, alpha, ntilde_shift);
  const double t = n * x / lambda;
  const double z = zeta(t);
  const double arg = -std::pow(lambda, 2.0 / 3.0) * z;
  return (z > 0.0 ? airy_modulus(arg) : airy_ai(arg)) / (n * x);
}

double hard_edge_approx(int n, int alpha, int ntilde_shift, double x) {
  if (!(x > 0.0 && x <= 2.0)) throw DomainError("hard_edge_approx: x must lie in (0, 2]");
  const double lambda = edge_lambda(n, alpha, ntilde_shift);
  const double t = n * x / lambda;
  if (!(t < 1.0)) throw DomainError("hard_edge_approx: x beyond the turning point");
  const double e = eta(t);
  const double pref =
      std::sqrt(lambda * e) / (std::numbers::sqrt2 * std::pow(x, 0.25)) * std::pow(1.0 - t, -0.25);
  return pref * bessel_j(alpha, lambda * e);
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::bulk: return "bulk";
    case Regime::soft: return "soft";
    case Regime::hard: return "hard";
  }
  return "bulk";
}

Regime parse_regime(std::string_view s) {
  if (s == "bulk") return Regime::bulk;
  if (s == "soft") return Regime::soft;
  if (s == "hard") return Regime::hard;
  throw InvalidArgument("unknown regime '" + std::string(s) + "'");
}

AsymptoticReport asymptotic_report(Regime regime, int n, int alpha, std::span<const double> grid,
                                   int ntilde_shift) {
  AsymptoticReport r;
  r.regime = regime;
  r.n = n;
  r.alpha = alpha;
  r.ntilde_shift = ntilde_shift;
  r.grid.assign(grid.begin(), grid.end());
  const LaguerreIndex idx(n - ntilde_shift, alpha);
  double max_direct = 0.0;
  for (double x : grid) {
    const double psi = eval_psi(idx, n * x);
    double d = 0.0;
    double a = 0.0;
    switch (regime) {
      case Regime::bulk:
        d = n * psi * psi;
        a = bulk_approx_density(n, alpha, ntilde_shift, x);
        break;
      case Regime::soft:
        d = std::sqrt(static_cast<double>(n)) * psi;
        a = soft_edge_approx(n, alpha, ntilde_shift, x);
        break;
      case Regime::hard:
        d = std::sqrt(static_cast<double>(n)) * psi;
        a = hard_edge_approx(n, alpha, ntilde_shift, x);
        break;
    }
    r.direct.push_back(d);
    r.approx.push_back(a);
    r.max_abs_err = std::max(r.max_abs_err, std::abs(d - a));
    max_direct = std::max(max_direct, std::abs(d));
  }
  r.max_rel_err = max_direct > 0.0 ? r.max_abs_err / max_direct : 0.0;
  return r;
}

std::vector<double> default_regime_grid(Regime regime, int points) {
  if (points < 2) throw InvalidArgument("default_regime_grid: need at least 2 points");
  double a = 0.5;
  double b = 3.5;
  if (regime == Regime::soft) {
    a = 3.0;
    b = 5.0;
  } else if (regime == Regime::hard) {
    a = 0.01;
    b = 1.0;
  }
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) g[i] = a + (b - a) * i / (points - 1);
  return g;
}

}  // namespace lue
