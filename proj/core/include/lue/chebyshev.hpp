#pragma once

#include <string>
#include <vector>

#include "lue/limitvar.hpp"
#include "lue/test_function.hpp"

namespace lue {

// P_n(x) = T_n(x / 2) on [-2, 2].
double p_n(int n, double x);

// coefficients[0] is the weighted mean c_0 = (1/pi) int f(2 cos th) dth;
// coefficients[n] = (2/pi) int f(2 cos th) cos(n th) dth for n >= 1.
struct ChebyshevExpansion {
  std::vector<double> coefficients;

  int order() const noexcept { return static_cast<int>(coefficients.size()) - 1; }
  // c_0 + sum_n a_n P_n(x)
  double operator()(double x) const;
};

// Midpoint cosine sum over M >= 4N nodes; M = 0 selects 8N.
ChebyshevExpansion expand(const TestFunction& f, int N, int M = 0);

double seminorm_h_half(const ChebyshevExpansion& e);
ChebyshevExpansion apply_k(const ChebyshevExpansion& e);

// Closed-form kernel of exp(-tK) with respect to dy / kappa_2(y).
double kt_kernel(double t, double x, double y);

double i_t(const TestFunction& f, double t, const LimitConfig& cfg = {});
// Richardson extrapolation of i_t from t = 0.2, 0.1, 0.05 to t -> 0.
double i_t_limit(const TestFunction& f, const LimitConfig& cfg = {});

// PV int_{-2}^{2} dy / ((x - y) sqrt(4 - y^2)), evaluated in y = 2 cos(phi).
double arcsine_hilbert(double x, int points = 64);
// (Kf)(x) by principal-value quadrature of the singular integral.
double k_operator_pv(const TestFunction& f, double x, int points = 64);
// <f, K f>_w with the PV operator evaluated at Gauss-Legendre nodes in theta.
double k_quadratic_form_pv(const TestFunction& f, int outer_points = 64, int inner_points = 64);

// Truncated shifted expansion of f extended past 4 + tail_eps by a C^1
// blend to a constant.
TestFunction approximate_for_lue(const TestFunction& f, int N, double tail_eps, int M = 0);

// JSON array [c_0, a_1, ..., a_N], shortest round-trip numbers.
std::string expansion_to_json(const ChebyshevExpansion& e);
ChebyshevExpansion expansion_from_json(const std::string& text);

}  // namespace lue
