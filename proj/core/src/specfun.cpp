#include "lue/specfun.hpp"

#include <boost/math/special_functions/airy.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <algorithm>
#include <limits>

#include "lue/errors.hpp"

namespace lue {

LaguerreIndex::LaguerreIndex(int n_, int alpha_) : n(n_), alpha(alpha_) {
  if (n_ < 0 || alpha_ < 0) throw InvalidArgument("LaguerreIndex requires n >= 0 and alpha >= 0");
}

ScaledReal::ScaledReal(double mantissa, std::int64_t exponent) {
  if (mantissa == 0.0 || !std::isfinite(mantissa)) {
    mantissa_ = mantissa;
    exponent_ = 0;
    return;
  }
  int e = 0;
  mantissa_ = std::frexp(mantissa, &e);
  exponent_ = exponent + e;
}

double ScaledReal::to_double() const noexcept {
  if (mantissa_ == 0.0) return 0.0;
  constexpr std::int64_t kMax = 2 * std::numeric_limits<double>::max_exponent;
  const std::int64_t e = std::clamp<std::int64_t>(exponent_, -kMax, kMax);
  return std::ldexp(mantissa_, static_cast<int>(e));
}

double ScaledReal::log_abs() const noexcept {
  if (mantissa_ == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(std::abs(mantissa_)) + static_cast<double>(exponent_) * std::log(2.0);
}

namespace {

constexpr int kMaxDegree = 10000;
constexpr int kRescaleBits = 500;

void check_psi_args(int n, int alpha, double x) {
  if (!(x >= 0.0)) throw DomainError("psi: x must be nonnegative");
  if (n < 0 || alpha < 0) throw InvalidArgument("psi: n and alpha must be nonnegative");
  if (n > kMaxDegree) throw InvalidArgument("psi: degree above 10^4");
}

// psi_0(x) = exp(-x/2) x^(alpha/2) / sqrt(Gamma(alpha+1)), as mantissa and
// base-2 exponent. Extended precision keeps the exponent split accurate for
// large x.
ScaledReal psi_zero(int alpha, double x) {
  if (x == 0.0) return alpha == 0 ? ScaledReal(1.0, 0) : ScaledReal();
  const long double a = alpha;
  const long double lx = x;
  const long double log2v =
      (-lx / 2 + (a / 2) * std::log(lx) - std::lgamma(a + 1) / 2) / std::log(2.0L);
  const long double e = std::floor(log2v);
  return ScaledReal(static_cast<double>(std::exp2(log2v - e)), static_cast<std::int64_t>(e));
}

// Forward recurrence on the weighted functions; sink(k, value) receives every
// psi_k for k = 0..n_max as a ScaledReal. The pair (prev, cur) shares one
// exponent and is rescaled when it drifts away from unit magnitude.
template <class Sink>
void psi_recurrence(int n_max, int alpha, double x, Sink&& sink) {
  const ScaledReal p0 = psi_zero(alpha, x);
  if (p0.is_zero()) {
    for (int k = 0; k <= n_max; ++k) sink(k, ScaledReal());
    return;
  }
  double prev = 0.0;
  double cur = p0.mantissa();
  std::int64_t exp = p0.exponent();
  sink(0, ScaledReal(cur, exp));
  for (int k = 0; k < n_max; ++k) {
    const double kk = k;
    const double next = ((2.0 * kk + alpha + 1.0 - x) * cur - std::sqrt(kk * (kk + alpha)) * prev) /
                        std::sqrt((kk + 1.0) * (kk + 1.0 + alpha));
    prev = cur;
    cur = next;
    const double big = std::max(std::abs(prev), std::abs(cur));
    int e = 0;
    std::frexp(big, &e);
    if (e > kRescaleBits || e < -kRescaleBits) {
      prev = std::ldexp(prev, -e);
      cur = std::ldexp(cur, -e);
      exp += e;
    }
    sink(k + 1, ScaledReal(cur, exp));
  }
}

}  // namespace

ScaledReal eval_psi_scaled(LaguerreIndex idx, double x) {
  check_psi_args(idx.n, idx.alpha, x);
  ScaledReal out;
  psi_recurrence(idx.n, idx.alpha, x, [&](int, ScaledReal v) { out = v; });
  return out;
}

double eval_psi(LaguerreIndex idx, double x) { return eval_psi_scaled(idx, x).to_double(); }

std::vector<double> eval_psi_sequence(int n_max, int alpha, double x) {
  check_psi_args(n_max, alpha, x);
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
  psi_recurrence(n_max, alpha, x, [&](int k, ScaledReal v) { out[k] = v.to_double(); });
  return out;
}

PsiPair eval_psi_pair(LaguerreIndex idx, double x) {
  check_psi_args(idx.n, idx.alpha, x);
  PsiPair p;
  psi_recurrence(idx.n, idx.alpha, x, [&](int k, ScaledReal v) {
    if (k == idx.n - 1) p.prev = v.to_double();
    if (k == idx.n) p.cur = v.to_double();
  });
  return p;
}

double psi_derivative_from(LaguerreIndex idx, double x, PsiPair p) {
  if (!(x > 0.0)) throw DomainError("psi_derivative: x must be positive");
  const double n = idx.n;
  return (2.0 * n + idx.alpha - x) / (2.0 * x) * p.cur -
         std::sqrt(n * (n + idx.alpha)) / x * p.prev;
}

double psi_derivative(LaguerreIndex idx, double x) {
  if (!(x > 0.0)) throw DomainError("psi_derivative: x must be positive");
  return psi_derivative_from(idx, x, eval_psi_pair(idx, x));
}

double airy_ai(double x) { return boost::math::airy_ai(x); }
double airy_bi(double x) { return boost::math::airy_bi(x); }
double airy_ai_prime(double x) { return boost::math::airy_ai_prime(x); }
double airy_bi_prime(double x) { return boost::math::airy_bi_prime(x); }
double airy_modulus(double x) { return std::hypot(airy_ai(x), airy_bi(x)); }

double bessel_j(int order, double x) {
  if (order < 0 || !(x >= 0.0)) throw DomainError("bessel_j: order and x must be nonnegative");
  return boost::math::cyl_bessel_j(order, x);
}

double bessel_j_prime(int order, double x) {
  if (order < 0 || !(x >= 0.0)) throw DomainError("bessel_j_prime: order and x must be nonnegative");
  if (order == 0) return -bessel_j(1, x);
  return 0.5 * (bessel_j(order - 1, x) - bessel_j(order + 1, x));
}

}  // namespace lue
