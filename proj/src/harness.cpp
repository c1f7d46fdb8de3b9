#include "chaosde/harness.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "chaosde/reporting.hpp"
#include "json.hpp"

namespace chaosde {

namespace {

// Stream tag for the per-repetition jitter generator; scheme indexes are
// small, so this can never collide with one.
constexpr std::uint64_t kJitterTag = 0xffffffffffffffffULL;

std::string map_key(MapFamily map) { return map_name({map, {}}); }

}  // namespace

std::uint32_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  const std::uint64_t h = mix64(mix64(master ^ 0x517cc1b727220a95ULL) ^ mix64(a) ^
                                mix64(b ^ 0x2545f4914f6cdd1dULL));
  return static_cast<std::uint32_t>(h ^ (h >> 32));
}

std::pair<double, double> repetition_jitter(std::uint64_t master, int repetition) {
  MtSource meta(derive_seed(master, static_cast<std::uint64_t>(repetition), kJitterTag));
  const double dx = -1e-3 + 2e-3 * meta.next_unit();
  const double dy = -1e-3 + 2e-3 * meta.next_unit();
  return {dx, dy};
}

int scheduled_population(int dim) { return 5 * dim; }
int scheduled_generations(int dim) { return 20 * dim; }

std::string spec_to_json(const ExperimentSpec& spec) {
  nlohmann::json j;
  j["algorithm"] = variant_name(spec.algorithm);
  j["function"] = benchmark_name(spec.function);
  j["dim"] = spec.dim;
  j["sources"] = spec.sources;
  j["repeats"] = spec.repeats;
  j["master_seed"] = spec.master_seed;
  j["tie_tolerance"] = spec.tie_tolerance;
  j["out_dir"] = spec.out_dir;
  j["population"] = spec.population;
  j["generations"] = spec.generations;
  j["threads"] = spec.threads;
  return j.dump(2);
}

ExperimentSpec spec_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ExperimentSpec spec;
  if (j.contains("algorithm")) spec.algorithm = variant_from_name(j["algorithm"].get<std::string>());
  if (j.contains("function")) spec.function = benchmark_from_name(j["function"].get<std::string>());
  if (j.contains("dim")) spec.dim = j["dim"].get<int>();
  if (j.contains("sources")) spec.sources = j["sources"].get<std::vector<std::string>>();
  if (j.contains("repeats")) spec.repeats = j["repeats"].get<int>();
  if (j.contains("master_seed")) spec.master_seed = j["master_seed"].get<std::uint64_t>();
  if (j.contains("tie_tolerance")) spec.tie_tolerance = j["tie_tolerance"].get<double>();
  if (j.contains("out_dir")) spec.out_dir = j["out_dir"].get<std::string>();
  if (j.contains("population")) spec.population = j["population"].get<int>();
  if (j.contains("generations")) spec.generations = j["generations"].get<int>();
  if (j.contains("threads")) spec.threads = j["threads"].get<int>();
  return spec;
}

std::vector<double> SchemeResult::finals() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.final_best);
  return out;
}

std::filesystem::path distribution_cache_dir() {
  if (const char* env = std::getenv("CHAOSDE_CACHE_DIR"); env && *env) {
    return std::filesystem::path(env);
  }
  return std::filesystem::path(".chaosde-cache");
}

EmpiricalDistribution matched_distribution(MapFamily map, NormalizerScheme scheme,
                                           std::size_t build_n, std::size_t bins,
                                           std::uint32_t build_seed) {
  const auto dir = distribution_cache_dir();
  const auto file = dir / ("dist_" + map_key(map) + "_" + scheme_name(scheme) + "_n" +
                           std::to_string(build_n) + "_b" + std::to_string(bins) + "_s" +
                           std::to_string(build_seed) + ".json");
  if (std::filesystem::exists(file)) {
    std::ifstream in(file);
    nlohmann::json j;
    in >> j;
    EmpiricalDistribution dist;
    dist.bin_count = j.at("bins").get<std::size_t>();
    dist.cdf = j.at("cdf").get<std::vector<double>>();
    if (dist.cdf.size() == dist.bin_count + 1) return dist;
    // fall through and rebuild a corrupt entry
  }

  const ChaoticMap chaotic = map == MapFamily::Gingerbread ? gingerbread_map() : tinkerbell_map();
  const MapPoint start = default_initial_point(chaotic);
  std::unique_ptr<ChaoticSource> src;
  switch (scheme) {
    case NormalizerScheme::Modulo:
      src = std::make_unique<ChaoticSource>(ChaoticSource::modulo(chaotic, start));
      break;
    case NormalizerScheme::Bounds:
      src = std::make_unique<ChaoticSource>(
          ChaoticSource::bounds(chaotic, start, estimate_bounds(chaotic, kBoundsSamples)));
      break;
    case NormalizerScheme::Atan2:
      src = std::make_unique<ChaoticSource>(ChaoticSource::atan2(chaotic, start));
      break;
  }
  EmpiricalDistribution dist = build_empirical_distribution(*src, build_n, bins);

  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  nlohmann::json j;
  j["map"] = map_key(map);
  j["scheme"] = scheme_name(scheme);
  j["n"] = build_n;
  j["bins"] = dist.bin_count;
  j["build_seed"] = build_seed;
  j["cdf"] = dist.cdf;
  const auto tmp = file.string() + ".tmp" + std::to_string(mix64(
      static_cast<std::uint64_t>(std::hash<std::thread::id>{}(std::this_thread::get_id()))));
  {
    std::ofstream out(tmp);
    out << j.dump() << "\n";
  }
  std::filesystem::rename(tmp, file, ec);  // concurrent writers produce identical bytes
  if (ec) std::filesystem::remove(tmp, ec);
  return dist;
}

SourceInputs prepare_source_inputs(const std::vector<SourceSpec>& specs) {
  SourceInputs inputs;
  for (const auto& spec : specs) {
    if (spec.kind == SourceSpec::Kind::Mt) continue;
    if (spec.scheme == NormalizerScheme::Bounds && !inputs.bounds.count(spec.map)) {
      const ChaoticMap map =
          spec.map == MapFamily::Gingerbread ? gingerbread_map() : tinkerbell_map();
      inputs.bounds.emplace(spec.map, estimate_bounds(map, kBoundsSamples));
    }
    if (spec.kind == SourceSpec::Kind::Matched) {
      const auto key = std::make_pair(spec.map, spec.scheme);
      if (!inputs.distributions.count(key)) {
        inputs.distributions.emplace(key, matched_distribution(spec.map, spec.scheme));
      }
    }
  }
  return inputs;
}

namespace {

std::unique_ptr<RandomSource> make_chaotic(const SourceSpec& spec, const SourceInputs& inputs,
                                           MapPoint start) {
  const ChaoticMap map =
      spec.map == MapFamily::Gingerbread ? gingerbread_map() : tinkerbell_map();
  switch (spec.scheme) {
    case NormalizerScheme::Modulo:
      return std::make_unique<ChaoticSource>(ChaoticSource::modulo(map, start));
    case NormalizerScheme::Bounds:
      return std::make_unique<ChaoticSource>(
          ChaoticSource::bounds(map, start, inputs.bounds.at(spec.map)));
    case NormalizerScheme::Atan2:
      return std::make_unique<ChaoticSource>(ChaoticSource::atan2(map, start));
  }
  throw std::logic_error("unreachable");
}

}  // namespace

std::unique_ptr<RandomSource> build_source(const SourceSpec& spec, const SourceInputs& inputs,
                                           std::uint64_t master_seed, int repetition,
                                           int scheme_index) {
  switch (spec.kind) {
    case SourceSpec::Kind::Mt:
      return std::make_unique<MtSource>(derive_seed(
          master_seed, static_cast<std::uint64_t>(repetition),
          static_cast<std::uint64_t>(scheme_index)));
    case SourceSpec::Kind::Chaos: {
      const ChaoticMap map =
          spec.map == MapFamily::Gingerbread ? gingerbread_map() : tinkerbell_map();
      MapPoint start = default_initial_point(map);
      const auto [dx, dy] = repetition_jitter(master_seed, repetition);
      start.x += dx;
      start.y += dy;
      return std::make_unique<ShuffledSource>(make_chaotic(spec, inputs, start),
                                              kChaoticShuffleSlots);
    }
    case SourceSpec::Kind::Matched:
      return std::make_unique<MatchedSource>(
          inputs.distributions.at({spec.map, spec.scheme}),
          derive_seed(master_seed, static_cast<std::uint64_t>(repetition),
                      static_cast<std::uint64_t>(scheme_index)));
  }
  throw std::logic_error("unreachable");
}

std::unique_ptr<RandomSource> build_reference_source(const SourceSpec& spec,
                                                     const SourceInputs& inputs,
                                                     std::uint32_t seed) {
  switch (spec.kind) {
    case SourceSpec::Kind::Mt:
      return std::make_unique<MtSource>(seed == 0 ? 5489u : seed);
    case SourceSpec::Kind::Chaos: {
      const ChaoticMap map =
          spec.map == MapFamily::Gingerbread ? gingerbread_map() : tinkerbell_map();
      return make_chaotic(spec, inputs, default_initial_point(map));
    }
    case SourceSpec::Kind::Matched:
      return std::make_unique<MatchedSource>(inputs.distributions.at({spec.map, spec.scheme}),
                                             seed == 0 ? 5489u : seed);
  }
  throw std::logic_error("unreachable");
}

std::vector<SchemeResult> run_experiment(const ExperimentSpec& spec) {
  if (spec.sources.empty()) throw std::invalid_argument("experiment needs at least one source");
  if (spec.repeats < 1) throw std::invalid_argument("experiment needs repeats >= 1");

  std::vector<SourceSpec> parsed;
  parsed.reserve(spec.sources.size());
  for (const auto& s : spec.sources) parsed.push_back(parse_source_spec(s));

  DeConfig cfg;
  cfg.variant = spec.algorithm;
  cfg.dim = spec.dim;
  cfg.population = spec.population > 0 ? spec.population : scheduled_population(spec.dim);
  cfg.generations = spec.generations > 0 ? spec.generations : scheduled_generations(spec.dim);

  const BenchmarkInstance instance =
      make_instance(spec.function, spec.dim, derive_seed(spec.master_seed, 0, 0x696e7374ULL));
  const SourceInputs inputs = prepare_source_inputs(parsed);

  const int n_schemes = static_cast<int>(parsed.size());
  const int n_tasks = n_schemes * spec.repeats;
  std::vector<SchemeResult> results(parsed.size());
  for (int s = 0; s < n_schemes; ++s) {
    results[s].label = spec.sources[static_cast<std::size_t>(s)];
    results[s].records.resize(static_cast<std::size_t>(spec.repeats));
  }

  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const unsigned n_workers = std::min<unsigned>(
      spec.threads > 0 ? static_cast<unsigned>(spec.threads) : hw,
      static_cast<unsigned>(n_tasks));

  std::atomic<int> next_task{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    for (;;) {
      const int task = next_task.fetch_add(1);
      if (task >= n_tasks) return;
      const int r = task / n_schemes;
      const int s = task % n_schemes;
      try {
        auto source = build_source(parsed[static_cast<std::size_t>(s)], inputs,
                                   spec.master_seed, r, s);
        results[static_cast<std::size_t>(s)].records[static_cast<std::size_t>(r)] =
            run_de(cfg, *source, instance);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) {
          try {
            std::throw_with_nested(std::runtime_error(
                "experiment failed at repetition " + std::to_string(r) + ", scheme '" +
                spec.sources[static_cast<std::size_t>(s)] + "'"));
          } catch (...) {
            failure = std::current_exception();
          }
        }
        next_task.store(n_tasks);
        return;
      }
    }
  };

  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (auto& res : results) res.stats = summary(res.finals());
  return results;
}

}  // namespace chaosde
