#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chaosde/harness.hpp"
#include "chaosde/statistics.hpp"

namespace chaosde {

// -- winner rule ---------------------------------------------------------------

/// final_best snapped to multiples of tau (half away from zero).
long long rounded_to_tolerance(double value, double tau);

/// Earliest generation whose rounded best equals the rounded final value.
int first_hit_generation(const RunRecord& record, double tau);

/// Per-scheme win percentage over repetitions. A repetition's winners are
/// every scheme tied on (rounded final, first-hit generation), so rows can
/// sum past 100.
struct WinTable {
  std::vector<std::string> schemes;
  std::vector<double> percent;
  int repeats = 0;
  double tolerance = 0.0;
};

WinTable win_table(const std::vector<SchemeResult>& results, double tau);

// -- tables ----------------------------------------------------------------------

/// Min/Max/Mean/Med/Std rows per scheme, values rounded to 3 decimals.
std::string summary_table_markdown(const std::string& function_label,
                                   const std::vector<SchemeResult>& results);

std::string win_table_markdown(const std::string& function_label, const WinTable& table);

// -- five-step statistical pipeline ----------------------------------------------

struct KsRecord {
  std::string column;
  double statistic = 0.0;
  double p_value = 0.0;
  bool normal = false;
};

struct VarianceRecord {
  std::string a, b;
  double statistic = 0.0;
  double p_value = 0.0;
  bool equal = false;
};

struct MeanTestRecord {
  std::string a, b;
  std::string kind;        // pooled-one-sided | welch-one-sided | welch-two-sided
  std::string hypothesis;  // e.g. "mean(a) > mean(b)"
  double statistic = 0.0;
  double p_value = 0.0;
  bool accepted = false;
};

struct StatReport {
  double alpha = 0.1;
  std::vector<std::string> columns;
  std::vector<std::string> excluded;  // zero-variance columns, dropped with a notice
  std::map<std::string, double> means;
  std::vector<KsRecord> normality;
  std::vector<VarianceRecord> variance_tests;
  bool variances_equal = true;
  std::optional<TestOutcome> anova;
  std::vector<MeanTestRecord> mean_tests;
  std::vector<std::string> ordering;  // columns sorted by mean, ascending
  std::string verdict;
};

/// (1) KS normality per column, (2) pairwise variance F-tests, (3) ANOVA when
/// variances pass, (4) Welch t-tests otherwise, (5) pooled one-sided t-tests
/// to order the means when ANOVA rejects equality.
StatReport stats_pipeline(const std::vector<SchemeResult>& results, const StatConfig& cfg);

std::string stat_report_json(const StatReport& report);
std::string stat_report_markdown(const StatReport& report);

}  // namespace chaosde
