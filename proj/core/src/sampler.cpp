#include "lue/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lue/errors.hpp"
#include "lue/kernel.hpp"
#include "lue/parallel.hpp"
#include "lue/quadrature.hpp"

namespace lue {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr double kRelTol = 1e-12;
constexpr int kMaxBisections = 200;

}  // namespace

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t i) { return splitmix64(seed ^ splitmix64(i)); }

Tridiagonal sample_tridiagonal(int n, int alpha, std::mt19937_64& rng) {
  if (n < 1 || alpha < 0) throw InvalidArgument("sample_tridiagonal: need n >= 1, alpha >= 0");
  const int m = n + alpha;
  std::vector<double> d(n);
  std::vector<double> s(n > 1 ? n - 1 : 0);
  for (int i = 1; i <= n; ++i) {
    std::gamma_distribution<double> gd(m - i + 1, 1.0);
    d[i - 1] = std::sqrt(gd(rng));
    if (i < n) {
      std::gamma_distribution<double> gs(n - i, 1.0);
      s[i - 1] = std::sqrt(gs(rng));
    }
  }
  Tridiagonal t;
  t.diag.resize(n);
  t.off.resize(s.size());
  for (int i = 0; i < n; ++i) t.diag[i] = d[i] * d[i] + (i > 0 ? s[i - 1] * s[i - 1] : 0.0);
  for (int i = 0; i + 1 < n; ++i) t.off[i] = d[i] * s[i];
  return t;
}

namespace {

double matrix_norm(const Tridiagonal& t) {
  double nrm = 0.0;
  const std::size_t n = t.size();
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(t.diag[i]);
    if (i > 0) row += std::abs(t.off[i - 1]);
    if (i + 1 < n) row += std::abs(t.off[i]);
    nrm = std::max(nrm, row);
  }
  return nrm;
}

double pivot_floor(const Tridiagonal& t) {
  double m = 1.0;
  for (double e : t.off) m = std::max(m, e * e);
  return std::numeric_limits<double>::min() * m;
}

}  // namespace

std::size_t sturm_count(const Tridiagonal& t, double lambda) {
  const double pivmin = pivot_floor(t);
  std::size_t count = 0;
  double q = t.diag[0] - lambda;
  for (std::size_t i = 0;; ++i) {
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
    if (i + 1 == t.size()) break;
    q = t.diag[i + 1] - lambda - t.off[i] * t.off[i] / q;
  }
  return count;
}

std::vector<double> tridiagonal_eigenvalues(const Tridiagonal& t) {
  const std::size_t n = t.size();
  if (n == 0) return {};
  const double nrm = matrix_norm(t);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(t.off[i - 1]);
    if (i + 1 < n) r += std::abs(t.off[i]);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
  const double pad = 2.0 * std::numeric_limits<double>::epsilon() * std::max(nrm, 1.0);
  lo -= pad;
  hi += pad;
  const double tol = kRelTol * std::max(nrm, std::numeric_limits<double>::min());
  const double pivmin = pivot_floor(t);
  std::vector<double> e2(n > 1 ? n - 1 : 0);
  for (std::size_t i = 0; i + 1 < n; ++i) e2[i] = t.off[i] * t.off[i];

  // Bisect the k-th eigenvalue for every k at once; the inner loop over k
  // carries no dependencies and vectorizes.
  std::vector<double> a(n, lo);
  std::vector<double> b(n, hi);
  std::vector<double> mid(n);
  std::vector<double> q(n);
  std::vector<int> cnt(n);
  for (int it = 0; it < kMaxBisections && (hi - lo) * std::ldexp(1.0, -it) > tol; ++it) {
    for (std::size_t k = 0; k < n; ++k) {
      mid[k] = 0.5 * (a[k] + b[k]);
      double v = t.diag[0] - mid[k];
      v = std::abs(v) < pivmin ? -pivmin : v;
      q[k] = v;
      cnt[k] = v < 0.0 ? 1 : 0;
    }
    for (std::size_t i = 1; i < n; ++i) {
      const double di = t.diag[i];
      const double ei = e2[i - 1];
      for (std::size_t k = 0; k < n; ++k) {
        double v = di - mid[k] - ei / q[k];
        v = std::abs(v) < pivmin ? -pivmin : v;
        q[k] = v;
        cnt[k] += v < 0.0 ? 1 : 0;
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (static_cast<std::size_t>(cnt[k]) > k)
        b[k] = mid[k];
      else
        a[k] = mid[k];
    }
  }
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = 0.5 * (a[k] + b[k]);
  std::sort(out.begin(), out.end());
  return out;
}

SpectrumSample sample_spectrum(int n, int alpha, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Tridiagonal t = sample_tridiagonal(n, alpha, rng);
  SpectrumSample s;
  s.eigenvalues = tridiagonal_eigenvalues(t);
  for (double& v : s.eigenvalues) v = std::max(0.0, v / n);
  return s;
}

double lss_of_sample(const TestFunction& f, const SpectrumSample& s) {
  CompensatedSum sum;
  for (double v : s.eigenvalues) sum.add(f(v));
  return sum.value();
}

std::vector<double> sample_statistics(const TestFunction& f, int n, int alpha, int num_samples,
                                      std::uint64_t seed) {
  if (num_samples < 1) throw InvalidArgument("sample_statistics: need at least one sample");
  std::vector<double> stats(num_samples);
  parallel_for(stats.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i)
      stats[i] = lss_of_sample(f, sample_spectrum(n, alpha, stream_seed(seed, i)));
  });
  return stats;
}

double ks_statistic_normal(std::span<const double> centred, double variance) {
  std::vector<double> z(centred.begin(), centred.end());
  std::sort(z.begin(), z.end());
  const double N = static_cast<double>(z.size());
  if (!(variance > 0.0)) {
    // Point mass at zero: the gap is the mass found off zero on either side.
    const auto below = std::count_if(z.begin(), z.end(), [](double v) { return v < 0.0; });
    const auto above = std::count_if(z.begin(), z.end(), [](double v) { return v > 0.0; });
    return static_cast<double>(std::max(below, above)) / N;
  }
  double d = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double F = 0.5 * std::erfc(-z[i] / std::sqrt(2.0 * variance));
    d = std::max({d, (i + 1) / N - F, F - i / N});
  }
  return std::clamp(d, 0.0, 1.0);
}

CltReport clt_experiment(const TestFunction& f, int n, int alpha, int num_samples,
                         std::uint64_t seed, const CltOptions& opts) {
  if (num_samples < 100) throw InvalidArgument("clt_experiment: need at least 100 samples");
  CltReport r;
  r.n = n;
  r.alpha = alpha;
  r.num_samples = num_samples;
  r.target_variance = v_lue(f, opts.limit);
  r.ks_threshold_1pct = 1.6276 / std::sqrt(static_cast<double>(num_samples));
  const auto stats = sample_statistics(f, n, alpha, num_samples, seed);
  CompensatedSum s;
  for (double v : stats) s.add(v);
  r.empirical_mean = s.value() / num_samples;
  CompensatedSum ss;
  for (double v : stats) ss.add((v - r.empirical_mean) * (v - r.empirical_mean));
  r.empirical_variance = ss.value() / (num_samples - 1);
  const double centre =
      opts.center_by_quadrature ? lss_mean(KernelContext(LaguerreIndex(n, alpha)), f) : r.empirical_mean;
  std::vector<double> centred(stats.size());
  for (std::size_t i = 0; i < stats.size(); ++i) centred[i] = stats[i] - centre;
  r.degenerate = r.target_variance == 0.0;
  if (r.degenerate)
    for (double& v : centred) v = std::abs(v) <= 1e-9 * std::max(1.0, std::abs(centre)) ? 0.0 : v;
  r.ks_statistic = ks_statistic_normal(centred, r.target_variance);
  return r;
}

}  // namespace lue
