#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "lue/kernel.hpp"
#include "lue/sampler.hpp"

using namespace lue;

namespace {

struct Moments {
  double mean = 0.0;
  double var = 0.0;
};

Moments moments(const std::vector<double>& v) {
  Moments m;
  m.mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  for (double x : v) m.var += (x - m.mean) * (x - m.mean);
  m.var /= v.size() - 1;
  return m;
}

}  // namespace

TEST_CASE("one by one spectrum is exponential") {
  const int num = 100000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < num; ++i) {
    const double l = sample_spectrum(1, 0, stream_seed(11, i)).eigenvalues[0];
    sum += l;
    sum_sq += l * l;
  }
  CHECK(std::abs(sum / num - 1.0) <= 3.0 / std::sqrt(num));
  CHECK(std::abs(sum_sq / num - 2.0) <= 0.05);  // E X^2 = 2 for Exp(1)
}

TEST_CASE("two by two trace mean") {
  const auto stats = sample_statistics(TestFunction::identity(), 2, 0, 100000, 5);
  const Moments m = moments(stats);
  CHECK(std::abs(m.mean - 2.0) <= 4 * std::sqrt(m.var / stats.size()));
}

TEST_CASE("spectra are sorted, nonnegative and deterministic") {
  const SpectrumSample a = sample_spectrum(60, 3, 42);
  const SpectrumSample b = sample_spectrum(60, 3, 42);
  REQUIRE(a.eigenvalues.size() == 60);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(std::is_sorted(a.eigenvalues.begin(), a.eigenvalues.end()));
  CHECK(a.eigenvalues.front() >= 0.0);
  CHECK(sample_spectrum(60, 3, 43).eigenvalues != a.eigenvalues);
  CHECK(sample_statistics(TestFunction::power(2), 20, 0, 300, 9) ==
        sample_statistics(TestFunction::power(2), 20, 0, 300, 9));
}

TEST_CASE("linear statistics of a sample") {
  const int n = 40;
  const std::uint64_t seed = 77;
  std::mt19937_64 rng(seed);
  const Tridiagonal t = sample_tridiagonal(n, 2, rng);
  const SpectrumSample s = sample_spectrum(n, 2, seed);
  CHECK(lss_of_sample(TestFunction::constant(1), s) == n);
  const double trace = std::accumulate(t.diag.begin(), t.diag.end(), 0.0) / n;
  CHECK(lss_of_sample(TestFunction::identity(), s) == doctest::Approx(trace).epsilon(1e-9));
  const auto inside =
      std::count_if(s.eigenvalues.begin(), s.eigenvalues.end(), [](double l) { return l <= 4.0; });
  CHECK(lss_of_sample(TestFunction::indicator(0, 4), s) == static_cast<double>(inside));
}

TEST_CASE("sturm counts agree with the bisection output") {
  std::mt19937_64 rng(123);
  const Tridiagonal t = sample_tridiagonal(80, 1, rng);
  const auto ev = tridiagonal_eigenvalues(t);
  std::uniform_real_distribution<double> u(-1.0, ev.back() * 1.1);
  for (int k = 0; k < 100; ++k) {
    const double lambda = u(rng);
    const auto below = static_cast<std::size_t>(
        std::lower_bound(ev.begin(), ev.end(), lambda) - ev.begin());
    CHECK(sturm_count(t, lambda) == below);
  }
}

TEST_CASE("ks statistic basics") {
  const std::vector<double> zeros(200, 0.0);
  CHECK(ks_statistic_normal(zeros, 1.0) == doctest::Approx(0.5).epsilon(1e-2));
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 2.0);
  std::vector<double> v(5000);
  for (double& x : v) x = g(rng);
  const double ks = ks_statistic_normal(v, 4.0);
  CHECK(ks >= 0.0);
  CHECK(ks < 1.6276 / std::sqrt(5000.0));
  CHECK(ks_statistic_normal(v, 16.0) > 0.1);
}

TEST_CASE("clt experiment examples") {
  const CltReport c = clt_experiment(TestFunction::constant(2), 20, 0, 200, 1);
  CHECK(c.degenerate);
  CHECK(c.empirical_variance == 0.0);
  const CltReport r = clt_experiment(TestFunction::identity(), 50, 2, 5000, 7);
  CHECK(r.empirical_variance == doctest::Approx(1.04).epsilon(0.1));
  CHECK(r.ks_threshold_1pct == doctest::Approx(1.6276 / std::sqrt(5000.0)));
  CHECK(r.ks_statistic >= 0.0);
  CHECK(r.ks_statistic <= 1.0);
  CHECK_THROWS(clt_experiment(TestFunction::identity(), 20, 0, 50, 1));
}

TEST_CASE("monte carlo variance agrees with the kernel variance") {
  const int num = 4000;
  for (int n : {25, 50}) {
    for (const char* s : {"identity", "power 2", "cheb 0 1"}) {
      const TestFunction f = TestFunction::parse(s);
      const auto stats = sample_statistics(f, n, 0, num, 1000 + n);
      const Moments m = moments(stats);
      double m4 = 0.0;
      for (double x : stats) m4 += std::pow(x - m.mean, 4);
      m4 /= num;
      // standard error of the sample variance from the fourth central moment
      const double se = std::sqrt((m4 - m.var * m.var * (num - 3.0) / (num - 1.0)) / num);
      const double exact = lss_variance(KernelContext({n, 0}), f).finite_n_variance;
      CHECK(std::abs(m.var - exact) <= 4 * se);
    }
  }
}
