#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "chaosde/harness.hpp"
#include "chaosde/reporting.hpp"
#include "json.hpp"

namespace chaosde {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  return out;
}

}  // namespace

std::string run_id(const ExperimentSpec& spec, const std::string& source, int repetition) {
  return variant_name(spec.algorithm) + "/" + source + "/" + benchmark_name(spec.function) +
         "/d" + std::to_string(spec.dim) + "/r" + std::to_string(repetition);
}

void write_experiment_outputs(const ExperimentSpec& spec,
                              const std::vector<SchemeResult>& results) {
  if (spec.out_dir.empty()) throw std::invalid_argument("experiment has no output directory");
  const std::filesystem::path dir(spec.out_dir);
  std::filesystem::create_directories(dir);

  {
    std::ofstream finals(dir / "finals.csv");
    finals << "algo,source,func,dim,repeat,final_best,first_hit_generation\n";
    for (const auto& res : results) {
      for (std::size_t r = 0; r < res.records.size(); ++r) {
        finals << variant_name(spec.algorithm) << ',' << res.label << ','
               << benchmark_name(spec.function) << ',' << spec.dim << ',' << r << ','
               << fmt_double(res.records[r].final_best) << ','
               << first_hit_generation(res.records[r], spec.tie_tolerance) << '\n';
      }
    }
  }

  {
    std::ofstream traj(dir / "trajectories.csv");
    traj << "run_id,generation,best_fitness\n";
    for (const auto& res : results) {
      for (std::size_t r = 0; r < res.records.size(); ++r) {
        const std::string id = run_id(spec, res.label, static_cast<int>(r));
        const auto& best = res.records[r].best_by_generation;
        for (std::size_t g = 0; g < best.size(); ++g) {
          traj << id << ',' << g << ',' << fmt_double(best[g]) << '\n';
        }
      }
    }
  }

  {
    std::ofstream summary_md(dir / "summary.md");
    summary_md << summary_table_markdown(benchmark_name(spec.function), results);
    if (spec.repeats == 1) {
      summary_md << "\nSingle repetition: standard deviation is undefined and reported as "
                    "0.000.\n";
    }
  }

  {
    nlohmann::json meta;
    meta["spec"] = nlohmann::json::parse(spec_to_json(spec));
    meta["population"] =
        spec.population > 0 ? spec.population : scheduled_population(spec.dim);
    meta["generations"] =
        spec.generations > 0 ? spec.generations : scheduled_generations(spec.dim);
    nlohmann::json jitters = nlohmann::json::array();
    for (int r = 0; r < spec.repeats; ++r) {
      const auto [dx, dy] = repetition_jitter(spec.master_seed, r);
      jitters.push_back({dx, dy});
    }
    meta["chaotic_init_jitter"] = jitters;
    std::ofstream out(dir / "meta.json");
    out << meta.dump(2) << "\n";
  }
}

std::vector<FinalsRow> read_finals_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty finals file " + path.string());
  std::vector<FinalsRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 7) throw std::runtime_error("bad finals row: " + line);
    FinalsRow row;
    row.algo = f[0];
    row.source = f[1];
    row.func = f[2];
    row.dim = std::stoi(f[3]);
    row.repeat = std::stoi(f[4]);
    row.final_best = std::stod(f[5]);
    row.first_hit_generation = std::stoi(f[6]);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::map<std::string, std::vector<double>> read_trajectories_csv(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty trajectories file");
  std::map<std::string, std::vector<double>> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto last = line.rfind(',');
    const auto mid = line.rfind(',', last - 1);
    if (last == std::string::npos || mid == std::string::npos) {
      throw std::runtime_error("bad trajectory row: " + line);
    }
    const std::string id = line.substr(0, mid);
    const auto generation = static_cast<std::size_t>(std::stoul(line.substr(mid + 1, last - mid - 1)));
    const double best = std::stod(line.substr(last + 1));
    auto& v = out[id];
    if (v.size() != generation) throw std::runtime_error("out-of-order trajectory row: " + line);
    v.push_back(best);
  }
  return out;
}

}  // namespace chaosde
