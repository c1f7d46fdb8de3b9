#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chaosde/harness.hpp"
#include "chaosde/reporting.hpp"

namespace {

using namespace chaosde;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(text);
  while (std::getline(in, field, ',')) {
    if (!field.empty()) out.push_back(field);
  }
  return out;
}

int cmd_histogram(const std::string& source, std::size_t samples, std::size_t bins,
                  const std::string& out_path, std::uint32_t seed) {
  const SourceSpec spec = parse_source_spec(source);
  const SourceInputs inputs = prepare_source_inputs({spec});
  auto src = build_reference_source(spec, inputs, seed);
  std::vector<std::size_t> counts(bins, 0);
  for (std::size_t i = 0; i < samples; ++i) {
    auto bin = static_cast<std::size_t>(src->next_unit() * static_cast<double>(bins));
    if (bin >= bins) bin = bins - 1;
    ++counts[bin];
  }
  std::ostringstream csv;
  csv << "bin_left,bin_right,count\n";
  const double width = 1.0 / static_cast<double>(bins);
  char buf[128];
  for (std::size_t b = 0; b < bins; ++b) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%zu\n", b * width, (b + 1) * width, counts[b]);
    csv << buf;
  }
  write_file(out_path, csv.str());
  std::cout << "wrote " << bins << "-bin histogram of " << samples << " draws from " << source
            << " to " << out_path << "\n";
  return 0;
}

int cmd_bounds(const std::string& map, std::size_t samples, const std::string& out_path) {
  const BoundsEstimate est = estimate_bounds(map_from_name(map), samples);
  char buf[160];
  std::snprintf(buf, sizeof(buf), "map=%s samples=%zu min_x=%.17g max_x=%.17g\n", map.c_str(),
                est.sample_count, est.min_x, est.max_x);
  std::cout << buf;
  if (!out_path.empty()) {
    std::ostringstream json;
    json << "{\n  \"map\": \"" << map << "\",\n  \"samples\": " << est.sample_count;
    std::snprintf(buf, sizeof(buf), ",\n  \"min_x\": %.17g,\n  \"max_x\": %.17g\n}\n",
                  est.min_x, est.max_x);
    json << buf;
    write_file(out_path, json.str());
  }
  return 0;
}

int cmd_run(ExperimentSpec spec) {
  const auto results = run_experiment(spec);
  write_experiment_outputs(spec, results);
  std::cout << "ran " << variant_name(spec.algorithm) << " on "
            << benchmark_name(spec.function) << " D=" << spec.dim << " with " << spec.repeats
            << " repeats per source; outputs in " << spec.out_dir << "\n";
  for (const auto& res : results) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "  %-32s mean=%.3f std=%.3f min=%.3f\n", res.label.c_str(),
                  res.stats.mean, res.stats.std, res.stats.min);
    std::cout << buf;
  }
  return 0;
}

// Rebuilds per-scheme results from the CSV pair in `dir`, grouped by
// (algo, func, dim).
struct LoadedGroup {
  std::string algo;
  std::string func;
  int dim = 0;
  std::vector<SchemeResult> results;
};

std::vector<LoadedGroup> load_groups(const std::string& dir, bool with_trajectories) {
  const auto finals = read_finals_csv(std::filesystem::path(dir) / "finals.csv");
  std::map<std::string, std::vector<double>> trajectories;
  if (with_trajectories) {
    trajectories = read_trajectories_csv(std::filesystem::path(dir) / "trajectories.csv");
  }
  std::vector<LoadedGroup> groups;
  auto group_of = [&](const FinalsRow& row) -> LoadedGroup& {
    for (auto& g : groups) {
      if (g.algo == row.algo && g.func == row.func && g.dim == row.dim) return g;
    }
    groups.push_back({row.algo, row.func, row.dim, {}});
    return groups.back();
  };
  for (const auto& row : finals) {
    auto& group = group_of(row);
    SchemeResult* scheme = nullptr;
    for (auto& s : group.results) {
      if (s.label == row.source) scheme = &s;
    }
    if (!scheme) {
      group.results.push_back({row.source, {}, {}});
      scheme = &group.results.back();
    }
    RunRecord rec;
    rec.final_best = row.final_best;
    if (with_trajectories) {
      const std::string id = row.algo + "/" + row.source + "/" + row.func + "/d" +
                             std::to_string(row.dim) + "/r" + std::to_string(row.repeat);
      const auto it = trajectories.find(id);
      if (it == trajectories.end()) throw std::runtime_error("missing trajectory for " + id);
      rec.best_by_generation = it->second;
    } else {
      rec.best_by_generation = {row.final_best};
    }
    if (static_cast<int>(scheme->records.size()) != row.repeat) {
      throw std::runtime_error("finals.csv repeats out of order for " + row.source);
    }
    scheme->records.push_back(std::move(rec));
  }
  for (auto& g : groups) {
    for (auto& s : g.results) s.stats = summary(s.finals());
  }
  return groups;
}

int cmd_table(const std::string& dir, const std::string& out_path) {
  std::ostringstream out;
  for (const auto& group : load_groups(dir, false)) {
    out << summary_table_markdown(group.func, group.results) << "\n";
  }
  if (out_path.empty()) {
    std::cout << out.str();
  } else {
    write_file(out_path, out.str());
  }
  return 0;
}

int cmd_wins(const std::string& dir, double tol, const std::string& out_path) {
  std::ostringstream out;
  for (const auto& group : load_groups(dir, true)) {
    out << win_table_markdown(group.func, win_table(group.results, tol)) << "\n";
  }
  if (out_path.empty()) {
    std::cout << out.str();
  } else {
    write_file(out_path, out.str());
  }
  return 0;
}

int cmd_stats(const std::string& dir, double alpha, const std::string& out_json,
              const std::string& out_md) {
  StatConfig cfg{alpha};
  std::ostringstream md, json;
  json << "[\n";
  bool first = true;
  for (const auto& group : load_groups(dir, false)) {
    const StatReport report = stats_pipeline(group.results, cfg);
    md << "## " << group.algo << " " << group.func << " D=" << group.dim << "\n\n"
       << stat_report_markdown(report) << "\n";
    if (!first) json << ",\n";
    json << stat_report_json(report);
    first = false;
  }
  json << "\n]\n";
  if (out_md.empty()) {
    std::cout << md.str();
  } else {
    write_file(out_md, md.str());
  }
  if (!out_json.empty()) write_file(out_json, json.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chaos-driven differential evolution experiment suite"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 0;
  std::string out;
  std::string config;
  app.add_option("--seed", seed, "master seed");
  app.add_option("--out", out, "output file or directory");
  app.add_option("--config", config, "experiment config JSON (run subcommand)");

  auto* histogram = app.add_subcommand("histogram", "bin samples from a source into CSV");
  std::string h_source = "mt";
  std::size_t h_samples = 1000000, h_bins = 64;
  histogram->add_option("--source", h_source, "source spec (mt | chaos:<map>:<scheme> | matched:<map>:<scheme>)");
  histogram->add_option("--samples", h_samples, "number of draws");
  histogram->add_option("--bins", h_bins, "number of bins")->check(CLI::PositiveNumber);

  auto* bounds = app.add_subcommand("bounds", "estimate a map's x-range");
  std::string b_map = "tinkerbell";
  std::size_t b_samples = 1000000;
  bounds->add_option("--map", b_map, "gingerbread | tinkerbell");
  bounds->add_option("--samples", b_samples, "number of iterates");

  auto* run = app.add_subcommand("run", "run a repetition x source experiment grid");
  std::string r_algo = "rand1bin", r_func = "f1", r_sources = "mt";
  int r_dim = 10, r_repeats = 50, r_np = 0, r_gens = 0, r_threads = 0;
  double r_tol = 1e-3;
  run->add_option("--algo", r_algo, "rand1bin | best1bin");
  run->add_option("--func", r_func, "f1 f5 f9 f13 f15 f16 f17 f22 f23");
  run->add_option("--dim", r_dim, "dimension (NP/G follow the 5D/20D schedule)");
  run->add_option("--sources", r_sources, "comma-separated source specs");
  run->add_option("--repeats", r_repeats, "repetitions per source");
  run->add_option("--np", r_np, "population override");
  run->add_option("--gens", r_gens, "generation override");
  run->add_option("--tol", r_tol, "tie tolerance for first-hit generations");
  run->add_option("--threads", r_threads, "worker threads (0 = hardware)");

  auto* table = app.add_subcommand("table", "summary table from a run directory");
  std::string t_in;
  table->add_option("--in", t_in, "run output directory")->required();

  auto* wins = app.add_subcommand("wins", "win table from a run directory");
  std::string w_in;
  double w_tol = 1e-3;
  wins->add_option("--in", w_in, "run output directory")->required();
  wins->add_option("--tol", w_tol, "tie tolerance");

  auto* stats = app.add_subcommand("stats", "statistical pipeline over a run directory");
  std::string s_in, s_json, s_md;
  double s_alpha = 0.1;
  stats->add_option("--in", s_in, "run output directory")->required();
  stats->add_option("--alpha", s_alpha, "significance level");
  stats->add_option("--out-json", s_json, "write the report as JSON");
  stats->add_option("--out-md", s_md, "write the report as markdown");

  CLI11_PARSE(app, argc, argv);

  try {
    if (histogram->parsed()) {
      if (out.empty()) throw std::runtime_error("histogram needs --out <csv>");
      return cmd_histogram(h_source, h_samples, h_bins, out, static_cast<std::uint32_t>(seed));
    }
    if (bounds->parsed()) {
      return cmd_bounds(b_map, b_samples, out);
    }
    if (run->parsed()) {
      ExperimentSpec spec;
      if (!config.empty()) spec = spec_from_json(read_file(config));
      // explicit flags override the config file
      if (run->count("--algo") || config.empty()) spec.algorithm = variant_from_name(r_algo);
      if (run->count("--func") || config.empty()) spec.function = benchmark_from_name(r_func);
      if (run->count("--dim") || config.empty()) spec.dim = r_dim;
      if (run->count("--sources") || config.empty()) spec.sources = split_commas(r_sources);
      if (run->count("--repeats") || config.empty()) spec.repeats = r_repeats;
      if (run->count("--np")) spec.population = r_np;
      if (run->count("--gens")) spec.generations = r_gens;
      if (run->count("--tol") || config.empty()) spec.tie_tolerance = r_tol;
      if (run->count("--threads")) spec.threads = r_threads;
      if (app.count("--seed")) spec.master_seed = seed;
      if (!out.empty()) spec.out_dir = out;
      if (spec.out_dir.empty()) throw std::runtime_error("run needs --out <directory>");
      return cmd_run(spec);
    }
    if (table->parsed()) return cmd_table(t_in, out);
    if (wins->parsed()) return cmd_wins(w_in, w_tol, out);
    if (stats->parsed()) return cmd_stats(s_in, s_alpha, s_json, s_md);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
