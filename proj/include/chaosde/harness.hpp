#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "chaosde/benchmarks.hpp"
#include "chaosde/de_engine.hpp"
#include "chaosde/random_sources.hpp"
#include "chaosde/statistics.hpp"

namespace chaosde {

// -- deterministic seeding ---------------------------------------------------

/// 32-bit stream seed for (master, a, b); used for per-(repetition, scheme)
/// Mersenne Twisters and the per-repetition jitter generator.
std::uint32_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b);

/// Initial-point jitter for one repetition, each coordinate uniform in
/// (-1e-3, 1e-3), shared by every chaotic source of that repetition.
std::pair<double, double> repetition_jitter(std::uint64_t master, int repetition);

// -- experiment description --------------------------------------------------

int scheduled_population(int dim);   // NP = 5 D (50/100/150 at D = 10/20/30)
int scheduled_generations(int dim);  // G = 20 D (200/400/600)

struct ExperimentSpec {
  DeVariant algorithm = DeVariant::Rand1Bin;
  BenchmarkId function = BenchmarkId::F1;
  int dim = 10;
  std::vector<std::string> sources;  // source spec strings, compared schemes
  int repeats = 50;
  std::uint64_t master_seed = 0;
  double tie_tolerance = 1e-3;
  std::string out_dir;
  int population = 0;   // 0 = schedule
  int generations = 0;  // 0 = schedule
  int threads = 0;      // 0 = hardware concurrency
};

std::string spec_to_json(const ExperimentSpec& spec);
ExperimentSpec spec_from_json(const std::string& text);

struct SchemeResult {
  std::string label;
  std::vector<RunRecord> records;  // ordered by repetition index
  SummaryStats stats;              // over final_best
  std::vector<double> finals() const;
};

// -- shared source inputs ----------------------------------------------------

constexpr std::size_t kBoundsSamples = 1000000;
constexpr std::size_t kDistributionSamples = 1000000;
constexpr std::size_t kDistributionBins = 1024;

/// Slot count of the permutation buffer wrapped around chaotic sources for
/// experiment runs. Raw chaotic streams feed DE decisions in blocks of
/// consecutive iterates whose serial structure stalls the search; the
/// buffer emits the same samples in scrambled order.
constexpr std::size_t kChaoticShuffleSlots = 64;

/// CHAOSDE_CACHE_DIR when set, else .chaosde-cache under the current
/// directory.
std::filesystem::path distribution_cache_dir();

/// Empirical distribution for (map, scheme) built from build_n draws over
/// `bins` bins, cached on disk keyed by every parameter.
EmpiricalDistribution matched_distribution(MapFamily map, NormalizerScheme scheme,
                                           std::size_t build_n = kDistributionSamples,
                                           std::size_t bins = kDistributionBins,
                                           std::uint32_t build_seed = 0);

/// Prebuilt inputs shared by every run of an experiment (read-only during
/// execution).
struct SourceInputs {
  std::map<MapFamily, BoundsEstimate> bounds;
  std::map<std::pair<MapFamily, NormalizerScheme>, EmpiricalDistribution> distributions;
};

SourceInputs prepare_source_inputs(const std::vector<SourceSpec>& specs);

/// Independent source for (repetition, scheme) per the seeding rules above.
/// Chaotic sources are wrapped in the permutation buffer; MT and matched
/// sources are used as-is.
std::unique_ptr<RandomSource> build_source(const SourceSpec& spec, const SourceInputs& inputs,
                                           std::uint64_t master_seed, int repetition,
                                           int scheme_index);

/// Chaotic source at the map's default start (no jitter); used for
/// distribution builds and histogram inspection.
std::unique_ptr<RandomSource> build_reference_source(const SourceSpec& spec,
                                                     const SourceInputs& inputs,
                                                     std::uint32_t seed = 0);

// -- orchestration -----------------------------------------------------------

/// Runs the repetition x scheme grid on a bounded worker pool. Results are
/// keyed by (repetition, scheme) so parallel and sequential execution agree
/// byte for byte.
std::vector<SchemeResult> run_experiment(const ExperimentSpec& spec);

// -- result files ------------------------------------------------------------

struct FinalsRow {
  std::string algo;
  std::string source;
  std::string func;
  int dim = 0;
  int repeat = 0;
  double final_best = 0.0;
  int first_hit_generation = 0;
};

void write_experiment_outputs(const ExperimentSpec& spec,
                              const std::vector<SchemeResult>& results);

std::vector<FinalsRow> read_finals_csv(const std::filesystem::path& path);

/// run_id -> best fitness by generation, as written in trajectories.csv.
std::map<std::string, std::vector<double>> read_trajectories_csv(
    const std::filesystem::path& path);

std::string run_id(const ExperimentSpec& spec, const std::string& source, int repetition);

}  // namespace chaosde
