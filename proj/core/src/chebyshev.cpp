#include "lue/chebyshev.hpp"

#include <fftw3.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

#include "lue/errors.hpp"
#include "lue/quadrature.hpp"

namespace lue {

namespace {

constexpr double kPi = std::numbers::pi;

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

double p_n(int n, double x) {
  if (n < 0) throw InvalidArgument("p_n: n must be nonnegative");
  if (!(std::abs(x) <= 2.0)) throw DomainError("p_n: |x| must be <= 2");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = x / 2.0;
  for (int k = 1; k < n; ++k) {
    const double next = x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double ChebyshevExpansion::operator()(double x) const {
  if (coefficients.empty()) return 0.0;
  const double y = x / 2.0;
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t k = coefficients.size() - 1; k >= 1; --k) {
    const double b0 = coefficients[k] + 2.0 * y * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return coefficients[0] + y * b1 - b2;
}

ChebyshevExpansion expand(const TestFunction& f, int N, int M) {
  if (N < 0) throw InvalidArgument("expand: N must be nonnegative");
  if (M == 0) M = std::max(8 * N, 8);
  if (M < 4 * N || M < 1) throw InvalidArgument("expand: need M >= 4N cosine nodes");
  const auto deleter = [](double* p) { fftw_free(p); };
  std::unique_ptr<double, decltype(deleter)> in(fftw_alloc_real(M), deleter);
  std::unique_ptr<double, decltype(deleter)> out(fftw_alloc_real(M), deleter);
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_r2r_1d(M, in.get(), out.get(), FFTW_REDFT10, FFTW_ESTIMATE);
  }
  for (int j = 0; j < M; ++j) in.get()[j] = f(2.0 * std::cos(kPi * (j + 0.5) / M));
  fftw_execute(plan);
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  ChebyshevExpansion e;
  e.coefficients.resize(static_cast<std::size_t>(N) + 1);
  e.coefficients[0] = out.get()[0] / (2.0 * M);
  for (int k = 1; k <= N; ++k) e.coefficients[k] = out.get()[k] / M;
  return e;
}

double seminorm_h_half(const ChebyshevExpansion& e) {
  CompensatedSum s;
  for (std::size_t n = 1; n < e.coefficients.size(); ++n)
    s.add(static_cast<double>(n) * e.coefficients[n] * e.coefficients[n]);
  return s.value();
}

ChebyshevExpansion apply_k(const ChebyshevExpansion& e) {
  ChebyshevExpansion out = e;
  if (out.coefficients.empty()) return out;
  out.coefficients[0] = 0.0;
  for (std::size_t n = 1; n < out.coefficients.size(); ++n)
    out.coefficients[n] *= static_cast<double>(n) / 2.0;
  return out;
}

double kt_kernel(double t, double x, double y) {
  if (!(t > 0.0)) throw InvalidArgument("kt_kernel: t must be positive");
  if (!(std::abs(x) < 2.0 && std::abs(y) < 2.0)) throw DomainError("kt_kernel: need |x|, |y| < 2");
  const double th = std::acos(x / 2.0);
  const double ph = std::acos(y / 2.0);
  const double q = std::exp(-t / 2.0);
  const double one_minus_q = -std::expm1(-t / 2.0);
  const double num = -std::expm1(-t);
  auto term = [&](double a) {
    const double s = std::sin(a / 2.0);
    return num / (one_minus_q * one_minus_q + 4.0 * q * s * s);
  };
  return term(th + ph) + term(th - ph);
}

double i_t(const TestFunction& f, double t, const LimitConfig& cfg) {
  if (!(t > 0.0)) throw InvalidArgument("i_t: t must be positive");
  if (f.is_constant()) return 0.0;
  const auto cuts = f.breakpoints();
  const int deg = std::max(f.degree_hint(), static_cast<int>(std::ceil(8.0 / t)));
  double prev = 0.0;
  for (int level = 0; level <= cfg.max_levels; ++level) {
    const auto X = limit_nodes(cuts, deg, 0.0, 2.0, cfg, level, 0);
    const auto Y = limit_nodes(cuts, deg, 0.0, 2.0, cfg, level, 1);
    std::vector<double> fx(X.size());
    std::vector<double> fy(Y.size());
    for (std::size_t i = 0; i < X.size(); ++i) fx[i] = f(X.x[i]);
    for (std::size_t j = 0; j < Y.size(); ++j) fy[j] = f(Y.x[j]);
    std::vector<double> sx(X.size());
    std::vector<double> sy(Y.size());
    for (std::size_t i = 0; i < X.size(); ++i) sx[i] = std::sqrt(X.dist_lo[i] * X.dist_hi[i]);
    for (std::size_t j = 0; j < Y.size(); ++j) sy[j] = std::sqrt(Y.dist_lo[j] * Y.dist_hi[j]);
    const TensorGrid2D grid{QuadratureRule{X.x, X.w, RuleKind::composite, {}},
                            QuadratureRule{Y.x, Y.w, RuleKind::composite, {}}, 0.0};
    const double cur = integrate_2d_indexed(grid, [&](std::size_t i, std::size_t j) {
      const double d = fx[i] - fy[j];
      return 0.5 * kt_kernel(t, X.x[i], Y.x[j]) / t * d * d /
             (4.0 * kPi * kPi * sx[i] * sy[j]);
    });
    if (level > 0 && (std::abs(cur - prev) <= cfg.rel_tol * std::abs(cur) || cur == prev)) return cur;
    prev = cur;
  }
  throw NonConvergence("i_t: refinements disagree beyond tolerance");
}

double i_t_limit(const TestFunction& f, const LimitConfig& cfg) {
  const double a = i_t(f, 0.2, cfg);
  const double b = i_t(f, 0.1, cfg);
  const double c = i_t(f, 0.05, cfg);
  const double r1 = 2.0 * b - a;
  const double r2 = 2.0 * c - b;
  return (4.0 * r2 - r1) / 3.0;
}

double arcsine_hilbert(double x, int points) {
  if (!(std::abs(x) < 2.0)) throw DomainError("arcsine_hilbert: need |x| < 2");
  const double pole = std::acos(x / 2.0);
  return principal_value_on(0.0, kPi, pole, points,
                            [&](double ph) { return 1.0 / (x - 2.0 * std::cos(ph)); });
}

double k_operator_pv(const TestFunction& f, double x, int points) {
  if (!(std::abs(x) < 2.0)) throw DomainError("k_operator_pv: need |x| < 2");
  const double fxv = f(x);
  const double pole = std::acos(x / 2.0);
  return principal_value_on(0.0, kPi, pole, points, [&](double ph) {
    const double y = 2.0 * std::cos(ph);
    const double d = x - y;
    return (fxv - f(y)) / (d * d) * (4.0 - x * y) / (2.0 * kPi);
  });
}

double k_quadratic_form_pv(const TestFunction& f, int outer_points, int inner_points) {
  const QuadratureRule r = gauss_legendre(outer_points, 0.0, kPi);
  CompensatedSum s;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double x = 2.0 * std::cos(r.nodes[i]);
    s.add(r.weights[i] * f(x) * k_operator_pv(f, x, inner_points));
  }
  return s.value() / (2.0 * kPi);
}

TestFunction approximate_for_lue(const TestFunction& f, int N, double tail_eps, int M) {
  if (N < 1) throw InvalidArgument("approximate_for_lue: N must be positive");
  if (!(tail_eps > 0.0)) throw InvalidArgument("approximate_for_lue: tail_eps must be positive");
  const ChebyshevExpansion e = expand(f.shifted(2.0), N, M);
  std::vector<double> a(e.coefficients.begin() + 1, e.coefficients.end());
  return TestFunction::cheb_ext(tail_eps, e.coefficients[0], std::move(a));
}

std::string expansion_to_json(const ChebyshevExpansion& e) {
  return nlohmann::json(e.coefficients).dump();
}

ChebyshevExpansion expansion_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (!j.is_array()) throw InvalidArgument("expansion JSON must be an array");
    ChebyshevExpansion e;
    for (const auto& v : j) {
      if (!v.is_number()) throw InvalidArgument("expansion JSON entries must be numbers");
      e.coefficients.push_back(v.get<double>());
    }
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidArgument(std::string("expansion JSON: ") + ex.what());
  }
}

}  // namespace lue
