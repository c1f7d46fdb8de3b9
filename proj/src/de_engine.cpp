#include "chaosde/de_engine.hpp"

#include <stdexcept>

namespace chaosde {

namespace {

std::size_t draw_distinct(RandomSource& src, std::size_t n,
                          std::initializer_list<std::size_t> taken) {
  for (;;) {
    const std::size_t r = rand_index(src, n);
    bool clash = false;
    for (std::size_t t : taken) clash |= (r == t);
    if (!clash) return r;
  }
}

}  // namespace

std::size_t best_member_index(const Population& pop) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < pop.members.size(); ++i) {
    if (pop.members[i].fitness < pop.members[best].fitness) best = i;
  }
  return best;
}

DeVariant variant_from_name(std::string_view name) {
  if (name == "rand1bin") return DeVariant::Rand1Bin;
  if (name == "best1bin") return DeVariant::Best1Bin;
  throw std::invalid_argument("unknown DE variant: " + std::string(name));
}

std::string variant_name(DeVariant v) {
  return v == DeVariant::Rand1Bin ? "rand1bin" : "best1bin";
}

Population init_population(const DeConfig& cfg, RandomSource& src, const Objective& fn) {
  if (cfg.population < 4) throw std::invalid_argument("DE needs NP >= 4");
  Population pop;
  pop.members.resize(static_cast<std::size_t>(cfg.population));
  for (auto& member : pop.members) {
    member.params.resize(cfg.dim);
    for (int j = 0; j < cfg.dim; ++j) {
      member.params[j] = rand_range(src, cfg.lower, cfg.upper);
    }
    member.fitness = fn(member.params);
  }
  pop.best_index = best_member_index(pop);
  return pop;
}

Eigen::VectorXd mutate_rand1(const Population& pop, std::size_t target, double weight,
                             RandomSource& src) {
  const std::size_t n = pop.members.size();
  const std::size_t r1 = draw_distinct(src, n, {target});
  const std::size_t r2 = draw_distinct(src, n, {target, r1});
  const std::size_t r3 = draw_distinct(src, n, {target, r1, r2});
  return pop.members[r3].params +
         weight * (pop.members[r1].params - pop.members[r2].params);
}

Eigen::VectorXd mutate_best1(const Population& pop, std::size_t target, double weight,
                             RandomSource& src) {
  const std::size_t n = pop.members.size();
  const std::size_t best = pop.best_index;
  const std::size_t r2 = draw_distinct(src, n, {target, best});
  const std::size_t r3 = draw_distinct(src, n, {target, best, r2});
  return pop.members[best].params +
         weight * (pop.members[r2].params - pop.members[r3].params);
}

Eigen::VectorXd crossover_bin(const Eigen::VectorXd& target, const Eigen::VectorXd& noise,
                              double crossover, RandomSource& src, bool force_jrand) {
  if (target.size() != noise.size()) throw std::invalid_argument("crossover length mismatch");
  Eigen::VectorXd trial(target.size());
  for (Eigen::Index j = 0; j < target.size(); ++j) {
    trial[j] = src.next_unit() < crossover ? noise[j] : target[j];
  }
  if (force_jrand) {
    const auto jrand = static_cast<Eigen::Index>(
        rand_index(src, static_cast<std::size_t>(target.size())));
    trial[jrand] = noise[jrand];
  }
  return trial;
}

const Individual& select(const Individual& target, const Individual& trial) {
  return trial.fitness < target.fitness ? trial : target;
}

Eigen::VectorXd repair_bounds(Eigen::VectorXd v, double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("repair_bounds needs lo < hi");
  return v.cwiseMax(lo).cwiseMin(hi);
}

RunRecord run_de(const DeConfig& cfg, RandomSource& src, const Objective& fn) {
  Population pop = init_population(cfg, src, fn);
  RunRecord record;
  record.best_by_generation.reserve(static_cast<std::size_t>(cfg.generations) + 1);
  record.best_by_generation.push_back(pop.members[pop.best_index].fitness);
  record.evaluations = pop.members.size();

  Population next = pop;
  for (int g = 0; g < cfg.generations; ++g) {
    for (std::size_t i = 0; i < pop.members.size(); ++i) {
      Eigen::VectorXd noise = cfg.variant == DeVariant::Rand1Bin
                                  ? mutate_rand1(pop, i, cfg.weight, src)
                                  : mutate_best1(pop, i, cfg.weight, src);
      noise = repair_bounds(std::move(noise), cfg.lower, cfg.upper);
      Individual trial;
      trial.params = crossover_bin(pop.members[i].params, noise, cfg.crossover, src,
                                   cfg.force_jrand);
      trial.fitness = fn(trial.params);
      ++record.evaluations;
      next.members[i] = select(pop.members[i], trial);
    }
    std::swap(pop.members, next.members);
    pop.best_index = best_member_index(pop);
    record.best_by_generation.push_back(pop.members[pop.best_index].fitness);
  }

  record.final_best = record.best_by_generation.back();
  record.final_vector = pop.members[pop.best_index].params;
  return record;
}

RunRecord run_de(const DeConfig& cfg, RandomSource& src, const BenchmarkInstance& inst) {
  if (cfg.dim != inst.dim) throw std::invalid_argument("config/instance dimension mismatch");
  return run_de(cfg, src, [&inst](const Eigen::VectorXd& x) { return evaluate(inst, x); });
}

}  // namespace chaosde
