#include "chaosde/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "chaosde/special_functions.hpp"

namespace chaosde {

namespace {

double sample_mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_variance(std::span<const double> v, double mean) {
  if (v.size() < 2) return 0.0;
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return s / static_cast<double>(v.size() - 1);
}

std::vector<double> sorted(std::span<const double> v) {
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

SummaryStats summary(std::span<const double> samples) {
  if (samples.empty()) throw std::invalid_argument("summary of empty sample");
  const auto s = sorted(samples);
  SummaryStats out;
  out.n = s.size();
  out.min = s.front();
  out.max = s.back();
  out.mean = sample_mean(samples);
  const std::size_t mid = s.size() / 2;
  out.median = (s.size() % 2 == 1) ? s[mid] : 0.5 * (s[mid - 1] + s[mid]);
  out.std = std::sqrt(sample_variance(samples, out.mean));
  return out;
}

double normal_cdf(double x, double mean, double std_dev) {
  return 0.5 * std::erfc(-(x - mean) / (std_dev * std::numbers::sqrt2));
}

double student_two_sided_p(double t, double df) {
  if (df <= 0.0) throw std::domain_error("t distribution needs df > 0");
  return regularized_incomplete_beta(df / (df + t * t), 0.5 * df, 0.5);
}

double f_upper_tail(double x, double df1, double df2) {
  if (x <= 0.0) return 1.0;
  return regularized_incomplete_beta(df2 / (df2 + df1 * x), 0.5 * df2, 0.5 * df1);
}

double f_critical(double alpha, double df1, double df2) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha outside (0,1)");
  double lo = 0.0, hi = 1.0;
  while (f_upper_tail(hi, df1, df2) > alpha) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f_upper_tail(mid, df1, df2) > alpha) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double chi_square_upper_tail(double x, double df) {
  if (x <= 0.0) return 1.0;
  return regularized_upper_gamma(0.5 * df, 0.5 * x);
}

double chi_square_critical(double alpha, double df) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha outside (0,1)");
  double lo = 0.0, hi = std::max(1.0, df);
  while (chi_square_upper_tail(hi, df) > alpha) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (chi_square_upper_tail(mid, df) > alpha) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double kolmogorov_tail(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = 2.0 * std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-16) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

double ks_statistic_one_sample(std::span<const double> samples,
                               const std::function<double(double)>& reference_cdf) {
  if (samples.empty()) throw std::invalid_argument("ks statistic needs a non-empty sample");
  const auto s = sorted(samples);
  const double n = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double f = reference_cdf(s[i]);
    const double above = (static_cast<double>(i) + 1.0) / n - f;
    const double below = f - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }
  return d;
}

TestOutcome ks_one_sample(std::span<const double> samples,
                          const std::function<double(double)>& reference_cdf,
                          const StatConfig& cfg) {
  if (samples.size() < 5) throw std::invalid_argument("ks_one_sample needs n >= 5");
  TestOutcome out;
  out.statistic = ks_statistic_one_sample(samples, reference_cdf);
  out.df1 = static_cast<double>(samples.size());
  out.p_value = kolmogorov_tail(std::sqrt(out.df1) * out.statistic);
  out.reject = out.p_value < cfg.alpha;
  return out;
}

TestOutcome ks_normality(std::span<const double> samples, const StatConfig& cfg) {
  const double m = sample_mean(samples);
  const double sd = std::sqrt(sample_variance(samples, m));
  if (!(sd > 0.0)) {
    throw std::invalid_argument("ks_normality: zero-variance sample has no fitted normal");
  }
  return ks_one_sample(samples, [m, sd](double x) { return normal_cdf(x, m, sd); }, cfg);
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample needs non-empty samples");
  const auto sa = sorted(a);
  const auto sb = sorted(b);
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < sa.size() && j < sb.size()) {
    const double x = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] <= x) ++i;
    while (j < sb.size() && sb[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

TestOutcome f_test_variances(std::span<const double> a, std::span<const double> b,
                             const StatConfig& cfg) {
  if (a.size() < 2 || b.size() < 2) throw std::invalid_argument("f_test needs n >= 2 per sample");
  const double va = sample_variance(a, sample_mean(a));
  const double vb = sample_variance(b, sample_mean(b));
  if (!(va > 0.0) || !(vb > 0.0)) throw std::invalid_argument("f_test needs positive variances");
  TestOutcome out;
  double df_num, df_den;
  if (va >= vb) {
    out.statistic = va / vb;
    df_num = static_cast<double>(a.size() - 1);
    df_den = static_cast<double>(b.size() - 1);
  } else {
    out.statistic = vb / va;
    df_num = static_cast<double>(b.size() - 1);
    df_den = static_cast<double>(a.size() - 1);
  }
  out.df1 = df_num;
  out.df2 = df_den;
  out.p_value = std::min(1.0, 2.0 * f_upper_tail(out.statistic, df_num, df_den));
  out.reject = out.p_value < cfg.alpha;
  out.critical_value = f_critical(cfg.alpha, df_num, df_den);
  return out;
}

TestOutcome anova_oneway(const std::vector<std::vector<double>>& groups,
                         const StatConfig& cfg) {
  if (groups.size() < 2) throw std::invalid_argument("anova needs >= 2 groups");
  std::size_t total = 0;
  double grand_sum = 0.0;
  for (const auto& g : groups) {
    if (g.size() < 2) throw std::invalid_argument("anova needs n >= 2 per group");
    total += g.size();
    for (double x : g) grand_sum += x;
  }
  const double grand_mean = grand_sum / static_cast<double>(total);
  double ss_between = 0.0, ss_within = 0.0;
  for (const auto& g : groups) {
    const double m = sample_mean(g);
    ss_between += static_cast<double>(g.size()) * (m - grand_mean) * (m - grand_mean);
    for (double x : g) ss_within += (x - m) * (x - m);
  }
  const double df1 = static_cast<double>(groups.size() - 1);
  const double df2 = static_cast<double>(total - groups.size());
  TestOutcome out;
  out.df1 = df1;
  out.df2 = df2;
  out.critical_value = f_critical(cfg.alpha, df1, df2);
  if (ss_within <= 0.0) {
    // All values identical within groups; identical across groups gives F = 0.
    out.statistic = ss_between > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    out.p_value = ss_between > 0.0 ? 0.0 : 1.0;
  } else {
    out.statistic = (ss_between / df1) / (ss_within / df2);
    out.p_value = f_upper_tail(out.statistic, df1, df2);
  }
  out.reject = out.p_value < cfg.alpha;
  return out;
}

TestOutcome t_test(std::span<const double> a, std::span<const double> b, Tail tail,
                   bool pooled, const StatConfig& cfg) {
  if (a.size() < 2 || b.size() < 2) throw std::invalid_argument("t_test needs n >= 2 per sample");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double ma = sample_mean(a);
  const double mb = sample_mean(b);
  const double va = sample_variance(a, ma);
  const double vb = sample_variance(b, mb);

  double t, df;
  if (pooled) {
    df = na + nb - 2.0;
    const double sp2 = ((na - 1.0) * va + (nb - 1.0) * vb) / df;
    const double denom = std::sqrt(sp2 * (1.0 / na + 1.0 / nb));
    t = denom > 0.0 ? (ma - mb) / denom
                    : (ma == mb ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), ma - mb));
  } else {
    const double ea = va / na;
    const double eb = vb / nb;
    const double denom = std::sqrt(ea + eb);
    t = denom > 0.0 ? (ma - mb) / denom
                    : (ma == mb ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), ma - mb));
    df = denom > 0.0
             ? (ea + eb) * (ea + eb) / (ea * ea / (na - 1.0) + eb * eb / (nb - 1.0))
             : na + nb - 2.0;
  }

  TestOutcome out;
  out.statistic = t;
  out.df1 = df;
  double p2;
  if (std::isinf(t)) {
    p2 = 0.0;
  } else if (t == 0.0) {
    p2 = 1.0;
  } else {
    p2 = student_two_sided_p(t, df);
  }
  switch (tail) {
    case Tail::TwoSided: out.p_value = p2; break;
    case Tail::Greater: out.p_value = t >= 0.0 ? 0.5 * p2 : 1.0 - 0.5 * p2; break;
    case Tail::Less: out.p_value = t <= 0.0 ? 0.5 * p2 : 1.0 - 0.5 * p2; break;
  }
  out.reject = out.p_value < cfg.alpha;
  return out;
}

}  // namespace chaosde
