#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <vector>

namespace lue {

// Degree n and Laguerre parameter alpha of psi_n^(alpha); m = n + alpha.
struct LaguerreIndex {
  int n = 0;
  int alpha = 0;

  LaguerreIndex() = default;
  LaguerreIndex(int n_, int alpha_);

  int m() const noexcept { return n + alpha; }
  auto operator<=>(const LaguerreIndex&) const = default;
};

// mantissa * 2^exponent with mantissa in [1/2, 1) or zero.
class ScaledReal {
 public:
  ScaledReal() = default;
  ScaledReal(double mantissa, std::int64_t exponent);

  static ScaledReal from_double(double v) { return ScaledReal(v, 0); }

  double mantissa() const noexcept { return mantissa_; }
  std::int64_t exponent() const noexcept { return exponent_; }
  bool is_zero() const noexcept { return mantissa_ == 0.0; }

  // Underflows to 0 / overflows to inf outside the double range.
  double to_double() const noexcept;
  // log|value|; -inf for zero.
  double log_abs() const noexcept;

  friend ScaledReal operator*(const ScaledReal& a, const ScaledReal& b) {
    return ScaledReal(a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_);
  }

 private:
  double mantissa_ = 0.0;
  std::int64_t exponent_ = 0;
};

ScaledReal eval_psi_scaled(LaguerreIndex idx, double x);
double eval_psi(LaguerreIndex idx, double x);

// (psi_0(x), ..., psi_{n_max}(x)); entry k equals eval_psi({k, alpha}, x) bit-for-bit.
std::vector<double> eval_psi_sequence(int n_max, int alpha, double x);

// (psi_{n-1}(x), psi_n(x)); psi_{-1} is 0. Same recurrence as eval_psi.
struct PsiPair {
  double prev = 0.0;
  double cur = 0.0;
};
PsiPair eval_psi_pair(LaguerreIndex idx, double x);

// d/dx psi_n(x); idx.n = 0 is accepted (the psi_{-1} term has zero weight).
double psi_derivative(LaguerreIndex idx, double x);
// Same, from already evaluated neighbours.
double psi_derivative_from(LaguerreIndex idx, double x, PsiPair p);

double airy_ai(double x);
double airy_bi(double x);
double airy_ai_prime(double x);
double airy_bi_prime(double x);
// sqrt(Ai^2 + Bi^2)
double airy_modulus(double x);

double bessel_j(int order, double x);
double bessel_j_prime(int order, double x);

}  // namespace lue
