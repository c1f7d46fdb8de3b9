#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "chaosde/benchmarks.hpp"
#include "chaosde/random_sources.hpp"

namespace chaosde {

struct Individual {
  Eigen::VectorXd params;
  double fitness = 0.0;
};

struct Population {
  std::vector<Individual> members;
  std::size_t best_index = 0;
};

/// Index of the member with minimal fitness; ties go to the lowest index.
std::size_t best_member_index(const Population& pop);

enum class DeVariant { Rand1Bin, Best1Bin };

DeVariant variant_from_name(std::string_view name);  // "rand1bin" / "best1bin"
std::string variant_name(DeVariant v);

struct DeConfig {
  DeVariant variant = DeVariant::Rand1Bin;
  int dim = 10;
  int population = 50;    // NP
  int generations = 200;  // G
  double weight = 0.5;    // F
  double crossover = 0.85;  // CR
  double lower = -100.0;
  double upper = 100.0;
  bool force_jrand = false;  // canonical bin variant forces one donor index
};

struct RunRecord {
  std::vector<double> best_by_generation;  // length G+1, [0] = after init
  double final_best = 0.0;
  Eigen::VectorXd final_vector;
  std::size_t evaluations = 0;
};

using Objective = std::function<double(const Eigen::VectorXd&)>;

/// NP individuals drawn parameter by parameter in member order; throws when
/// NP < 4 (mutation needs three distinct parents besides the target).
Population init_population(const DeConfig& cfg, RandomSource& src, const Objective& fn);

/// Donor x_{r3} + F (x_{r1} - x_{r2}); r1, r2, r3 drawn in that order via
/// rand_index, rejecting the target and earlier picks.
Eigen::VectorXd mutate_rand1(const Population& pop, std::size_t target, double weight,
                             RandomSource& src);

/// Donor x_best + F (x_{r2} - x_{r3}); r2, r3 distinct from each other, the
/// target and best_index.
Eigen::VectorXd mutate_best1(const Population& pop, std::size_t target, double weight,
                             RandomSource& src);

/// Per-parameter Bernoulli mix: draw r, take the donor value when r < CR.
/// force_jrand additionally forces one drawn index to the donor.
Eigen::VectorXd crossover_bin(const Eigen::VectorXd& target, const Eigen::VectorXd& noise,
                              double crossover, RandomSource& src, bool force_jrand);

/// Trial wins only on strictly smaller fitness; NaN never wins.
const Individual& select(const Individual& target, const Individual& trial);

Eigen::VectorXd repair_bounds(Eigen::VectorXd v, double lo, double hi);

/// Synchronous generational loop; the best vector used by Best1Bin is frozen
/// for the whole generation. evaluations = NP * (G + 1).
RunRecord run_de(const DeConfig& cfg, RandomSource& src, const Objective& fn);
RunRecord run_de(const DeConfig& cfg, RandomSource& src, const BenchmarkInstance& inst);

}  // namespace chaosde
