#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace chaosde {

struct SummaryStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double median = 0.0;
  double std = 0.0;  // sample standard deviation (n-1); 0 when n < 2
  std::size_t n = 0;
};

/// Throws on empty input. Median of even n is the mean of the two central
/// order statistics.
SummaryStats summary(std::span<const double> samples);

struct StatConfig {
  double alpha = 0.1;
};

struct TestOutcome {
  double statistic = 0.0;
  double df1 = 0.0;
  double df2 = 0.0;  // unused (0) for single-df tests
  double p_value = 1.0;
  bool reject = false;          // p_value < alpha
  double critical_value = 0.0;  // populated by F-based tests
};

enum class Tail { TwoSided, Greater, Less };

/// sup_x |F_n(x) - F(x)| for any non-empty sample.
double ks_statistic_one_sample(std::span<const double> samples,
                               const std::function<double(double)>& reference_cdf);

/// One-sample Kolmogorov-Smirnov against an explicit reference CDF.
/// p from the asymptotic Kolmogorov series on sqrt(n) * D. Needs n >= 5.
TestOutcome ks_one_sample(std::span<const double> samples,
                          const std::function<double(double)>& reference_cdf,
                          const StatConfig& cfg = {});

/// KS against a normal with sample-estimated mean/std (no small-sample
/// correction). Throws on zero variance.
TestOutcome ks_normality(std::span<const double> samples, const StatConfig& cfg = {});

/// sup |F_a - F_b| over the pooled support; statistic only.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// F = larger variance / smaller variance, two-sided p. Throws when either
/// sample has fewer than 2 points or zero variance.
TestOutcome f_test_variances(std::span<const double> a, std::span<const double> b,
                             const StatConfig& cfg = {});

/// One-way ANOVA; critical_value holds the upper F quantile at alpha.
/// All-identical data yields F = 0.
TestOutcome anova_oneway(const std::vector<std::vector<double>>& groups,
                         const StatConfig& cfg = {});

/// Two-sample t-test. pooled = classic equal-variance statistic with
/// df = n_a + n_b - 2; otherwise Welch with Welch-Satterthwaite df.
/// Tail::Greater tests the alternative mean(a) > mean(b).
TestOutcome t_test(std::span<const double> a, std::span<const double> b, Tail tail,
                   bool pooled, const StatConfig& cfg = {});

// Distribution helpers backing the tests above (exposed for reuse in checks).
double normal_cdf(double x, double mean = 0.0, double std_dev = 1.0);
double student_two_sided_p(double t, double df);
double f_upper_tail(double x, double df1, double df2);
double f_critical(double alpha, double df1, double df2);
double chi_square_upper_tail(double x, double df);
double chi_square_critical(double alpha, double df);
/// Kolmogorov tail Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_tail(double lambda);

}  // namespace chaosde
