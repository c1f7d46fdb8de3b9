#include "chaosde/reporting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace chaosde {

namespace {

std::string fmt3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string fmt_stat(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

long long rounded_to_tolerance(double value, double tau) {
  return std::llround(value / tau);
}

int first_hit_generation(const RunRecord& record, double tau) {
  const long long target = rounded_to_tolerance(record.final_best, tau);
  for (std::size_t g = 0; g < record.best_by_generation.size(); ++g) {
    if (rounded_to_tolerance(record.best_by_generation[g], tau) == target) {
      return static_cast<int>(g);
    }
  }
  return static_cast<int>(record.best_by_generation.size()) - 1;
}

WinTable win_table(const std::vector<SchemeResult>& results, double tau) {
  if (results.empty()) throw std::invalid_argument("win_table needs at least one scheme");
  const std::size_t repeats = results.front().records.size();
  for (const auto& res : results) {
    if (res.records.size() != repeats) {
      throw std::invalid_argument("win_table: schemes have mismatched repeat counts");
    }
  }
  WinTable table;
  table.repeats = static_cast<int>(repeats);
  table.tolerance = tau;
  std::vector<int> wins(results.size(), 0);
  for (std::size_t r = 0; r < repeats; ++r) {
    std::vector<std::pair<long long, int>> keys(results.size());
    for (std::size_t s = 0; s < results.size(); ++s) {
      const auto& rec = results[s].records[r];
      keys[s] = {rounded_to_tolerance(rec.final_best, tau), first_hit_generation(rec, tau)};
    }
    const auto best = *std::min_element(keys.begin(), keys.end());
    for (std::size_t s = 0; s < results.size(); ++s) {
      if (keys[s] == best) ++wins[s];
    }
  }
  for (std::size_t s = 0; s < results.size(); ++s) {
    table.schemes.push_back(results[s].label);
    table.percent.push_back(100.0 * wins[s] / static_cast<double>(repeats));
  }
  return table;
}

std::string summary_table_markdown(const std::string& function_label,
                                   const std::vector<SchemeResult>& results) {
  std::ostringstream out;
  out << "| Fun. | Type of norm. | Min. | Max | Mean | Med. | Std. dev. |\n";
  out << "|---|---|---|---|---|---|---|\n";
  for (const auto& res : results) {
    const auto& s = res.stats;
    out << "| " << function_label << " | " << res.label << " | " << fmt3(s.min) << " | "
        << fmt3(s.max) << " | " << fmt3(s.mean) << " | " << fmt3(s.median) << " | "
        << fmt3(s.std) << " |\n";
  }
  return out.str();
}

std::string win_table_markdown(const std::string& function_label, const WinTable& table) {
  std::ostringstream out;
  out << "| Fun. |";
  for (const auto& s : table.schemes) out << ' ' << s << " |";
  out << "\n|---|";
  for (std::size_t i = 0; i < table.schemes.size(); ++i) out << "---|";
  out << "\n| " << function_label << " |";
  for (double p : table.percent) out << ' ' << fmt3(p) << "% |";
  out << "\n";
  return out.str();
}

StatReport stats_pipeline(const std::vector<SchemeResult>& results, const StatConfig& cfg) {
  if (results.size() < 2) throw std::invalid_argument("stats pipeline needs >= 2 schemes");
  StatReport report;
  report.alpha = cfg.alpha;

  std::vector<std::pair<std::string, std::vector<double>>> columns;
  for (const auto& res : results) {
    const auto values = res.finals();
    const auto stats = summary(values);
    report.means[res.label] = stats.mean;
    if (stats.std > 0.0) {
      columns.emplace_back(res.label, values);
      report.columns.push_back(res.label);
    } else {
      report.excluded.push_back(res.label);
    }
  }

  // (1) normality of every retained column
  for (const auto& [label, values] : columns) {
    const auto ks = ks_normality(values, cfg);
    report.normality.push_back({label, ks.statistic, ks.p_value, !ks.reject});
  }

  if (columns.size() < 2) {
    report.verdict = "fewer than two non-degenerate columns; no comparison possible";
    report.variances_equal = true;
    return report;
  }

  // (2) pairwise variance equality
  report.variances_equal = true;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    for (std::size_t j = i + 1; j < columns.size(); ++j) {
      const auto f = f_test_variances(columns[i].second, columns[j].second, cfg);
      report.variance_tests.push_back(
          {columns[i].first, columns[j].first, f.statistic, f.p_value, !f.reject});
      report.variances_equal &= !f.reject;
    }
  }

  std::vector<std::size_t> order(columns.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return report.means.at(columns[a].first) < report.means.at(columns[b].first);
  });
  for (std::size_t idx : order) report.ordering.push_back(columns[idx].first);

  auto pairwise_order = [&](bool pooled) {
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t j = i + 1; j < order.size(); ++j) {
        const auto& low = columns[order[i]];
        const auto& high = columns[order[j]];
        const auto one =
            t_test(high.second, low.second, Tail::Greater, pooled, cfg);
        MeanTestRecord rec;
        rec.a = high.first;
        rec.b = low.first;
        rec.kind = pooled ? "pooled-one-sided" : "welch-one-sided";
        rec.hypothesis = "mean(" + high.first + ") > mean(" + low.first + ")";
        rec.statistic = one.statistic;
        rec.p_value = one.p_value;
        rec.accepted = one.reject;  // small p confirms the greater-than direction
        report.mean_tests.push_back(rec);
        if (!one.reject) {
          const auto two = t_test(high.second, low.second, Tail::TwoSided, pooled, cfg);
          MeanTestRecord eq;
          eq.a = high.first;
          eq.b = low.first;
          eq.kind = pooled ? "pooled-two-sided" : "welch-two-sided";
          eq.hypothesis = "mean(" + high.first + ") = mean(" + low.first + ")";
          eq.statistic = two.statistic;
          eq.p_value = two.p_value;
          eq.accepted = !two.reject;
          report.mean_tests.push_back(eq);
        }
      }
    }
  };

  auto ordering_verdict = [&]() {
    // Relation between consecutive means from the recorded pairwise tests.
    std::string text = report.ordering.front();
    for (std::size_t i = 1; i < report.ordering.size(); ++i) {
      const auto& lo = report.ordering[i - 1];
      const auto& hi = report.ordering[i];
      bool greater = false;
      for (const auto& rec : report.mean_tests) {
        if (rec.a == hi && rec.b == lo && rec.kind.ends_with("one-sided")) {
          greater = rec.accepted;
        }
      }
      text += greater ? " < " : " = ";
      text += hi;
    }
    return "mean ordering: " + text;
  };

  if (report.variances_equal) {
    // (3) ANOVA on equal-variance columns
    std::vector<std::vector<double>> groups;
    for (const auto& [label, values] : columns) groups.push_back(values);
    report.anova = anova_oneway(groups, cfg);
    if (!report.anova->reject) {
      report.verdict = "means considered equal (ANOVA)";
      return report;
    }
    // (5) pooled one-sided ordering
    pairwise_order(/*pooled=*/true);
    report.verdict = ordering_verdict();
    return report;
  }

  // (4) Welch branch
  pairwise_order(/*pooled=*/false);
  report.verdict = ordering_verdict();
  return report;
}

std::string stat_report_json(const StatReport& report) {
  nlohmann::json j;
  j["alpha"] = report.alpha;
  j["columns"] = report.columns;
  j["excluded_zero_variance"] = report.excluded;
  j["means"] = report.means;
  j["normality"] = nlohmann::json::array();
  for (const auto& k : report.normality) {
    j["normality"].push_back(
        {{"column", k.column}, {"statistic", k.statistic}, {"p", k.p_value}, {"normal", k.normal}});
  }
  j["variance_tests"] = nlohmann::json::array();
  for (const auto& v : report.variance_tests) {
    j["variance_tests"].push_back(
        {{"a", v.a}, {"b", v.b}, {"F", v.statistic}, {"p", v.p_value}, {"equal", v.equal}});
  }
  j["variances_equal"] = report.variances_equal;
  if (report.anova) {
    j["anova"] = {{"F", report.anova->statistic},
                  {"df1", report.anova->df1},
                  {"df2", report.anova->df2},
                  {"p", report.anova->p_value},
                  {"F_crit", report.anova->critical_value},
                  {"reject_equal_means", report.anova->reject}};
  }
  j["mean_tests"] = nlohmann::json::array();
  for (const auto& m : report.mean_tests) {
    j["mean_tests"].push_back({{"a", m.a},
                               {"b", m.b},
                               {"kind", m.kind},
                               {"hypothesis", m.hypothesis},
                               {"t", m.statistic},
                               {"p", m.p_value},
                               {"accepted", m.accepted}});
  }
  j["ordering"] = report.ordering;
  j["verdict"] = report.verdict;
  return j.dump(2);
}

std::string stat_report_markdown(const StatReport& report) {
  std::ostringstream out;
  out << "# Statistical report (alpha = " << fmt_stat(report.alpha) << ")\n\n";
  if (!report.excluded.empty()) {
    out << "Excluded zero-variance columns:";
    for (const auto& e : report.excluded) out << ' ' << e;
    out << "\n\n";
  }
  out << "## Means\n\n| column | mean |\n|---|---|\n";
  for (const auto& [label, mean] : report.means) {
    out << "| " << label << " | " << fmt3(mean) << " |\n";
  }
  out << "\n## Normality (Kolmogorov-Smirnov)\n\n| column | D | p | normal |\n|---|---|---|---|\n";
  for (const auto& k : report.normality) {
    out << "| " << k.column << " | " << fmt_stat(k.statistic) << " | " << fmt_stat(k.p_value)
        << " | " << (k.normal ? "yes" : "no") << " |\n";
  }
  out << "\n## Variance equality (F-tests)\n\n| a | b | F | p | equal |\n|---|---|---|---|---|\n";
  for (const auto& v : report.variance_tests) {
    out << "| " << v.a << " | " << v.b << " | " << fmt_stat(v.statistic) << " | "
        << fmt_stat(v.p_value) << " | " << (v.equal ? "yes" : "no") << " |\n";
  }
  if (report.anova) {
    out << "\n## ANOVA\n\nF = " << fmt_stat(report.anova->statistic) << ", df = ("
        << fmt_stat(report.anova->df1) << ", " << fmt_stat(report.anova->df2)
        << "), p = " << fmt_stat(report.anova->p_value)
        << ", F crit. = " << fmt_stat(report.anova->critical_value) << ", means "
        << (report.anova->reject ? "differ" : "considered equal") << "\n";
  }
  if (!report.mean_tests.empty()) {
    out << "\n## Mean comparisons\n\n| hypothesis | kind | t | p | accepted |\n|---|---|---|---|---|\n";
    for (const auto& m : report.mean_tests) {
      out << "| " << m.hypothesis << " | " << m.kind << " | " << fmt_stat(m.statistic) << " | "
          << fmt_stat(m.p_value) << " | " << (m.accepted ? "yes" : "no") << " |\n";
    }
  }
  out << "\n**Verdict:** " << report.verdict << "\n";
  return out.str();
}

}  // namespace chaosde
