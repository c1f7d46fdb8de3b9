#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "chaosde/special_functions.hpp"
#include "chaosde/statistics.hpp"

using namespace chaosde;

namespace {

// Simpson quadrature used as the independent reference for tail areas.
double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2 == 1) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return s * h / 3.0;
}

double f_pdf(double x, double d1, double d2) {
  const double ln = 0.5 * d1 * std::log(d1) + 0.5 * d2 * std::log(d2) +
                    (0.5 * d1 - 1.0) * std::log(x) -
                    0.5 * (d1 + d2) * std::log(d2 + d1 * x) + std::lgamma(0.5 * (d1 + d2)) -
                    std::lgamma(0.5 * d1) - std::lgamma(0.5 * d2);
  return std::exp(ln);
}

std::vector<double> normal_draws(std::mt19937& rng, int n, double mean, double sd) {
  std::vector<double> out;
  out.reserve(n);
  while (static_cast<int>(out.size()) < n) {
    const double u1 = (static_cast<double>(rng()) + 1.0) * 0x1p-32;
    const double u2 = static_cast<double>(rng()) * 0x1p-32;
    const double r = std::sqrt(-2.0 * std::log(u1));
    out.push_back(mean + sd * r * std::cos(2.0 * std::numbers::pi * u2));
    if (static_cast<int>(out.size()) < n) {
      out.push_back(mean + sd * r * std::sin(2.0 * std::numbers::pi * u2));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("summary statistics on hand fixtures") {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  const auto s = summary(v);
  CHECK(s.min == 1.0);
  CHECK(s.max == 4.0);
  CHECK(s.mean == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(s.median == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(s.std == doctest::Approx(std::sqrt((2.25 + 0.25 + 0.25 + 2.25) / 3.0)).epsilon(1e-12));
  CHECK(s.std == doctest::Approx(1.2909944487).epsilon(1e-9));

  const std::vector<double> c{7.5, 7.5, 7.5};
  const auto sc = summary(c);
  CHECK(sc.std == 0.0);
  CHECK(sc.min == 7.5);
  CHECK(sc.max == 7.5);
  CHECK(sc.mean == 7.5);

  const std::vector<double> one{42.0};
  const auto so = summary(one);
  CHECK(so.min == 42.0);
  CHECK(so.max == 42.0);
  CHECK(so.mean == 42.0);
  CHECK(so.median == 42.0);
  CHECK(so.std == 0.0);

  const std::vector<double> odd{3.0, 1.0, 2.0};
  CHECK(summary(odd).median == 2.0);

  CHECK_THROWS(summary(std::vector<double>{}));
}

TEST_CASE("KS statistic against the uniform reference") {
  // {0.25, 0.5, 0.75} vs U(0,1) has sup deviation 0.25 by hand; padded to
  // n = 5 the same geometry holds at the end points.
  const std::vector<double> v{0.05, 0.25, 0.5, 0.75, 0.95};
  const auto out = ks_one_sample(v, [](double x) { return x; });
  // direct sup computation as the oracle
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    d = std::max({d, (static_cast<double>(i) + 1.0) / 5.0 - v[i],
                  v[i] - static_cast<double>(i) / 5.0});
  }
  CHECK(out.statistic == doctest::Approx(d).epsilon(1e-15));

  // the classic three-point fixture
  const std::vector<double> three{0.25, 0.5, 0.75};
  CHECK(ks_statistic_one_sample(three, [](double x) { return x; }) ==
        doctest::Approx(0.25).epsilon(1e-15));
  CHECK_THROWS(ks_one_sample(three, [](double x) { return x; }));  // n >= 5
}

TEST_CASE("KS with samples placed at reference quantiles has tiny D") {
  std::vector<double> v;
  const int n = 9;
  for (int i = 1; i <= n; ++i) v.push_back(static_cast<double>(i) / (n + 1));
  const auto out = ks_one_sample(v, [](double x) { return x; });
  CHECK(out.statistic <= 1.0 / (n + 1) + 1e-12);
}

TEST_CASE("KS normality keeps the null in at least 95 of 100 seeded trials") {
  int rejections = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::mt19937 rng(1000 + trial);
    const auto v = normal_draws(rng, 10000, 3.0, 2.0);
    const auto out = ks_normality(v, {0.1});
    if (out.reject) ++rejections;
  }
  CHECK(rejections <= 5);
}

TEST_CASE("KS normality rejects a clearly non-normal sample") {
  std::mt19937 rng(7);
  std::vector<double> v;
  for (int i = 0; i < 10000; ++i) {
    v.push_back(static_cast<double>(rng()) * 0x1p-32 < 0.5 ? 0.0 : 10.0);
  }
  const auto out = ks_normality(v, {0.1});
  CHECK(out.reject);
}

TEST_CASE("KS normality refuses a zero-variance sample") {
  CHECK_THROWS(ks_normality(std::vector<double>{1.0, 1.0, 1.0, 1.0, 1.0}, {0.1}));
}

TEST_CASE("two-sample KS on hand fixtures and invariances") {
  const std::vector<double> a{1.0, 2.0};
  CHECK(ks_two_sample(a, a) == 0.0);
  CHECK(ks_two_sample(std::vector<double>{1.0, 2.0}, std::vector<double>{5.0, 6.0}) == 1.0);
  CHECK(ks_two_sample(std::vector<double>{1.0, 2.0}, std::vector<double>{1.0, 3.0}) ==
        doctest::Approx(0.5).epsilon(1e-15));

  std::mt19937 rng(11);
  std::vector<double> x, y;
  for (int i = 0; i < 500; ++i) x.push_back(static_cast<double>(rng()) * 0x1p-32);
  for (int i = 0; i < 300; ++i) y.push_back(std::pow(static_cast<double>(rng()) * 0x1p-32, 2.0));
  const double d = ks_two_sample(x, y);
  CHECK(ks_two_sample(y, x) == doctest::Approx(d).epsilon(1e-15));
  // invariance under a common strictly increasing transform
  auto transform = [](std::vector<double> v) {
    for (auto& t : v) t = std::exp(3.0 * t + 1.0);
    return v;
  };
  CHECK(ks_two_sample(transform(x), transform(y)) == doctest::Approx(d).epsilon(1e-12));
}

TEST_CASE("F-test of variances") {
  std::vector<double> a, b;
  std::mt19937 rng(21);
  for (int i = 0; i < 30; ++i) {
    const double z = normal_draws(rng, 1, 0.0, 1.0)[0];
    a.push_back(z);
    b.push_back(2.0 * z + 5.0);  // exactly 4x the variance, shifted
  }
  const auto out = f_test_variances(a, b, {0.1});
  CHECK(out.statistic == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(out.df1 == 29.0);
  CHECK(out.df2 == 29.0);
  // reference tail area by quadrature
  const double upper = simpson([](double x) { return f_pdf(x, 29, 29); }, 4.0, 400.0, 40000);
  CHECK(out.p_value == doctest::Approx(2.0 * upper).epsilon(1e-5));
  CHECK(out.reject);

  // identical samples shifted by a constant: F = 1, p = 1
  std::vector<double> c{1.0, 2.0, 3.0, 4.0};
  std::vector<double> d{11.0, 12.0, 13.0, 14.0};
  const auto eq = f_test_variances(c, d, {0.1});
  CHECK(eq.statistic == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(eq.p_value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(eq.reject);

  CHECK_THROWS(f_test_variances(std::vector<double>{1.0}, c, {0.1}));
  CHECK_THROWS(f_test_variances(std::vector<double>{1.0, 1.0}, c, {0.1}));
}

TEST_CASE("one-way ANOVA basics") {
  const std::vector<std::vector<double>> same{{1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}};
  const auto out = anova_oneway(same, {0.1});
  CHECK(out.statistic == 0.0);
  CHECK_FALSE(out.reject);

  const std::vector<std::vector<double>> flat{{5.0, 5.0}, {5.0, 5.0}};
  CHECK(anova_oneway(flat, {0.1}).statistic == 0.0);

  // three-group fixture against a quadrature reference
  const std::vector<std::vector<double>> groups{
      {1.0, 2.0, 3.0, 4.0}, {2.0, 3.0, 4.0, 5.0}, {6.0, 7.0, 8.0, 9.0}};
  const auto res = anova_oneway(groups, {0.1});
  CHECK(res.df1 == 2.0);
  CHECK(res.df2 == 9.0);
  const double ref =
      simpson([&](double x) { return f_pdf(x, res.df1, res.df2); }, res.statistic, 500.0, 200000);
  CHECK(res.p_value == doctest::Approx(ref).epsilon(1e-3));
  // F critical round-trips through the tail
  CHECK(f_upper_tail(res.critical_value, res.df1, res.df2) == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("ANOVA on two groups equals the squared pooled t") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = normal_draws(rng, 12, 0.0, 1.0);
    const auto b = normal_draws(rng, 15, 0.5, 1.3);
    const auto t = t_test(a, b, Tail::TwoSided, /*pooled=*/true, {0.1});
    const auto f = anova_oneway({a, b}, {0.1});
    CHECK(f.statistic == doctest::Approx(t.statistic * t.statistic).epsilon(1e-9));
    CHECK(f.p_value == doctest::Approx(t.p_value).epsilon(1e-9));
  }
}

TEST_CASE("t-test fixtures") {
  const std::vector<double> a{1.0, 2.0, 3.0, 4.0};
  const auto same = t_test(a, a, Tail::TwoSided, true, {0.1});
  CHECK(same.statistic == 0.0);
  CHECK(same.p_value == 1.0);

  // |t| = 2, df = 10: two-sided p ~ 0.0734, one-sided ~ 0.0367
  CHECK(std::abs(student_two_sided_p(2.0, 10.0) - 0.0734) < 1e-3);
  CHECK(std::abs(0.5 * student_two_sided_p(2.0, 10.0) - 0.0367) < 1e-3);

  // two-sided p equals twice the smaller one-sided tail
  std::mt19937 rng(41);
  const auto x = normal_draws(rng, 10, 0.0, 1.0);
  const auto y = normal_draws(rng, 14, 0.4, 1.0);
  for (bool pooled : {true, false}) {
    const auto two = t_test(x, y, Tail::TwoSided, pooled, {0.1});
    const auto gt = t_test(x, y, Tail::Greater, pooled, {0.1});
    const auto lt = t_test(x, y, Tail::Less, pooled, {0.1});
    CHECK(two.p_value == doctest::Approx(2.0 * std::min(gt.p_value, lt.p_value)).epsilon(1e-12));
    CHECK(gt.p_value + lt.p_value == doctest::Approx(1.0).epsilon(1e-12));
  }

  // both samples constant and equal
  const std::vector<double> c{5.0, 5.0, 5.0};
  const auto degenerate = t_test(c, c, Tail::TwoSided, true, {0.1});
  CHECK(degenerate.statistic == 0.0);
  CHECK(degenerate.p_value == 1.0);
}

TEST_CASE("Welch df collapses to pooled df for equal variances and n") {
  std::mt19937 rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = normal_draws(rng, 16, 0.0, 1.0);
    auto b = a;  // same variance exactly
    for (auto& v : b) v += 2.5;
    const auto welch = t_test(a, b, Tail::TwoSided, /*pooled=*/false, {0.1});
    CHECK(welch.df1 == doctest::Approx(30.0).epsilon(1e-9));
  }
}

TEST_CASE("regularized incomplete beta fixtures") {
  for (double x : {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0}) {
    CHECK(regularized_incomplete_beta(x, 1.0, 1.0) == doctest::Approx(x).epsilon(1e-13));
  }
  for (double a : {0.5, 1.0, 2.0, 7.5, 30.0}) {
    CHECK(regularized_incomplete_beta(0.5, a, a) == doctest::Approx(0.5).epsilon(1e-12));
  }
  // closed form for integer parameters: I_x(2,3) = 6x^2(1-x)^2 + 4x^3(1-x) + x^4
  auto closed = [](double x) {
    return 6.0 * x * x * (1 - x) * (1 - x) + 4.0 * x * x * x * (1 - x) + x * x * x * x;
  };
  for (double x : {0.05, 0.1, 0.3, 0.5, 0.77, 0.93}) {
    CHECK(std::abs(regularized_incomplete_beta(x, 2.0, 3.0) - closed(x)) < 1e-10);
  }
  CHECK(std::abs(regularized_incomplete_beta(0.3, 2.0, 3.0) - 0.3483) < 1e-10);
  CHECK_THROWS(regularized_incomplete_beta(-0.1, 2.0, 3.0));
  CHECK_THROWS(regularized_incomplete_beta(0.5, -1.0, 3.0));
}

TEST_CASE("regularized incomplete gamma fixtures") {
  // P(1, x) = 1 - exp(-x)
  for (double x : {0.1, 0.5, 1.0, 3.0, 10.0}) {
    CHECK(std::abs(regularized_lower_gamma(1.0, x) - (1.0 - std::exp(-x))) < 1e-12);
    CHECK(regularized_lower_gamma(2.5, x) + regularized_upper_gamma(2.5, x) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(regularized_lower_gamma(4.0, 0.0) == 0.0);
  CHECK_THROWS(regularized_lower_gamma(-1.0, 2.0));
}

TEST_CASE("error function fixtures") {
  CHECK(std::abs(error_function(1.0) - 0.8427007929497149) < 1e-12);
  CHECK(std::abs(error_function(0.5) - 0.5204998778130465) < 1e-12);
  CHECK(std::abs(error_function(-1.0) + 0.8427007929497149) < 1e-12);
  // quadrature reference on a grid
  for (double x : {0.2, 0.7, 1.3, 2.1}) {
    const double ref = simpson([](double t) { return 2.0 / std::sqrt(std::numbers::pi) *
                                                      std::exp(-t * t); },
                               0.0, x, 20000);
    CHECK(std::abs(error_function(x) - ref) < 1e-10);
  }
}

TEST_CASE("chi-square and Kolmogorov helpers") {
  // known critical values: chi2(0.01, 63) ~ 92.01, chi2(0.05, 10) ~ 18.307
  CHECK(chi_square_critical(0.01, 63.0) == doctest::Approx(92.01).epsilon(2e-3));
  CHECK(chi_square_critical(0.05, 10.0) == doctest::Approx(18.307).epsilon(1e-3));
  CHECK(chi_square_upper_tail(chi_square_critical(0.01, 63.0), 63.0) ==
        doctest::Approx(0.01).epsilon(1e-8));
  // classic KS critical point at alpha = 0.05
  CHECK(kolmogorov_tail(1.358) == doctest::Approx(0.05).epsilon(2e-2));
  CHECK(kolmogorov_tail(0.0) == 1.0);
}

TEST_CASE("F critical value round-trips") {
  for (auto [d1, d2] : {std::pair{2.0, 27.0}, {1.0, 10.0}, {5.0, 40.0}}) {
    const double crit = f_critical(0.1, d1, d2);
    CHECK(f_upper_tail(crit, d1, d2) == doctest::Approx(0.1).epsilon(1e-9));
  }
}
