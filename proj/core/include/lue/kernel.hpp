#pragma once

#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <vector>

#include "lue/errors.hpp"
#include "lue/quadrature.hpp"
#include "lue/specfun.hpp"
#include "lue/test_function.hpp"

namespace lue {

class DiagonalError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Kernel in the scaled variable: K_n(x, y) built from psi_{n-1}(n .) and
// psi_n(n .). Point queries are memoized; node caches are built in bulk.
class KernelContext {
 public:
  explicit KernelContext(LaguerreIndex idx);

  const LaguerreIndex& index() const noexcept { return idx_; }
  // sqrt(n (n + alpha))
  double cd_constant() const noexcept { return c_; }

  // (psi_{n-1}(n x), psi_n(n x)); identical to eval_psi_pair.
  PsiPair scaled_pair(double x) const;

  // scaled_pair at every node, computed in parallel.
  std::vector<PsiPair> cache_nodes(std::span<const double> nodes) const;

 private:
  LaguerreIndex idx_;
  double c_;
  mutable std::shared_mutex mutex_;
  mutable std::map<double, PsiPair> memo_;
};

double cd_kernel(const KernelContext& ctx, double x, double y);
double kernel_diagonal(const KernelContext& ctx, double x);
double phi(const KernelContext& ctx, double x, double y);

// Pieces shared with callers that hold node caches.
double cd_kernel_from(const KernelContext& ctx, double x, PsiPair px, double y, PsiPair py);
double kernel_diagonal_from(const KernelContext& ctx, double x, PsiPair p);

struct QuadConfig {
  // Nodes of the x rule at the first level; the y rule gets one more per panel.
  int points = 400;
  double refine_tol = 1e-7;
  int max_refinements = 5;
  double tail_tol = 1e-12;
};

struct VarianceReport {
  int n = 0;
  int alpha = 0;
  double finite_n_variance = 0.0;
  double mean = 0.0;
  int quad_points = 0;
  double truncation = 0.0;
  std::optional<double> limiting_variance;
};

// Rule on [0, x_max]: theta-substituted panels on [0, 4] and Gauss-Legendre
// panels beyond, with panel edges at f's breakpoints.
QuadratureRule kernel_rule(double x_max, std::span<const double> cuts, int points, int extra);

double lss_mean(const KernelContext& ctx, const TestFunction& f, const QuadConfig& cfg = {});
VarianceReport lss_variance(const KernelContext& ctx, const TestFunction& f,
                            const QuadConfig& cfg = {});

}  // namespace lue
