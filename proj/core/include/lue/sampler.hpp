#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "lue/limitvar.hpp"
#include "lue/test_function.hpp"

namespace lue {

// Sorted eigenvalues of M = X*X / n.
struct SpectrumSample {
  std::vector<double> eigenvalues;
};

// Symmetric tridiagonal matrix: diagonal d (size n), off-diagonal e (size n-1).
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t size() const noexcept { return diag.size(); }
};

// B B^T for the beta = 2 bidiagonal Laguerre model: d_i^2 ~ Gamma(m - i + 1),
// s_i^2 ~ Gamma(n - i), unit scale.
Tridiagonal sample_tridiagonal(int n, int alpha, std::mt19937_64& rng);

// Number of eigenvalues strictly below lambda.
std::size_t sturm_count(const Tridiagonal& t, double lambda);

// All eigenvalues, ascending, by simultaneous bisection to 1e-12 ||T||.
std::vector<double> tridiagonal_eigenvalues(const Tridiagonal& t);

// Seed for sample i of a run seeded with `seed`.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t i);

SpectrumSample sample_spectrum(int n, int alpha, std::uint64_t seed);

double lss_of_sample(const TestFunction& f, const SpectrumSample& s);

struct CltOptions {
  // Center by the quadrature mean from the kernel instead of the sample mean.
  bool center_by_quadrature = false;
  LimitConfig limit;
};

struct CltReport {
  int n = 0;
  int alpha = 0;
  int num_samples = 0;
  double empirical_mean = 0.0;
  double empirical_variance = 0.0;
  double target_variance = 0.0;
  double ks_statistic = 0.0;
  double ks_threshold_1pct = 0.0;
  bool degenerate = false;
};

// Statistics N_n[f] of num_samples independent spectra, in sample order.
std::vector<double> sample_statistics(const TestFunction& f, int n, int alpha, int num_samples,
                                      std::uint64_t seed);

// Sup |F_emp - F| against the centred Gaussian of the given variance.
double ks_statistic_normal(std::span<const double> centred, double variance);

CltReport clt_experiment(const TestFunction& f, int n, int alpha, int num_samples,
                         std::uint64_t seed, const CltOptions& opts = {});

}  // namespace lue
