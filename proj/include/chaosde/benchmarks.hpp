#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace chaosde {

/// CEC2013 subset used by the experiments, with their global-minimum biases.
enum class BenchmarkId { F1, F5, F9, F13, F15, F16, F17, F22, F23 };

constexpr BenchmarkId kAllBenchmarks[] = {
    BenchmarkId::F1,  BenchmarkId::F5,  BenchmarkId::F9,
    BenchmarkId::F13, BenchmarkId::F15, BenchmarkId::F16,
    BenchmarkId::F17, BenchmarkId::F22, BenchmarkId::F23};

double benchmark_bias(BenchmarkId id);
std::string benchmark_name(BenchmarkId id);  // "f1", "f5", ...
BenchmarkId benchmark_from_name(std::string_view name);
bool is_composition(BenchmarkId id);

/// One shifted/rotated piece of a benchmark. Non-composition functions hold
/// exactly one; compositions hold three.
struct BenchmarkComponent {
  Eigen::VectorXd shift;     // o, drawn from [-80, 80]^D
  Eigen::MatrixXd rotation;  // M, orthogonal
  double input_scale = 1.0;  // applied to M (x - o) before the core
  double sigma = 20.0;       // composition locality width
  double bias = 0.0;         // composition component bias
};

struct BenchmarkInstance {
  BenchmarkId id = BenchmarkId::F1;
  int dim = 0;
  double bias = 0.0;  // f*, the anchored global minimum
  std::vector<BenchmarkComponent> components;
  std::uint32_t seed = 0;

  double domain_lo = -100.0;
  double domain_hi = 100.0;
};

/// Seed-generated stand-in for the official data files: shift uniform in
/// [-80, 80]^D, rotation from modified Gram-Schmidt on standard-normal
/// entries (redrawn on breakdown, at most 10 times).
BenchmarkInstance make_instance(BenchmarkId id, int dim, std::uint32_t seed);

// Unbiased, transform-free cores. Each is 0 at z = 0 except Schwefel,
// whose offset identity leaves a residual of order 1e-4 per dimension.
double sphere_core(const Eigen::VectorXd& z);
double different_powers_core(const Eigen::VectorXd& z);
double weierstrass_core(const Eigen::VectorXd& z);
double noncontinuous_rastrigin_core(const Eigen::VectorXd& z);
double schwefel_core(const Eigen::VectorXd& z);
double katsuura_core(const Eigen::VectorXd& z);
double lunacek_bi_rastrigin_core(const Eigen::VectorXd& z);

/// Core lookup by id; composition ids dispatch to their component core.
double base_function(BenchmarkId id, const Eigen::VectorXd& z);

/// f(x) = g(scale * M * (x - o)) + f* for plain functions, composition
/// weighting for F22/F23. Throws on dimension mismatch.
double evaluate(const BenchmarkInstance& inst, const Eigen::VectorXd& x);

/// Component of the generic composition operator.
struct CompositionComponent {
  std::function<double(const Eigen::VectorXd&)> core;  // g_i
  Eigen::VectorXd shift;
  Eigen::MatrixXd rotation;
  double outer_scale = 1.0;  // lambda_i multiplying the core value
  double sigma = 20.0;
  double bias = 0.0;
};

/// Distance-weighted blend: w_i = (1/sqrt(d2)) exp(-d2 / (2 D sigma_i^2))
/// with d2 = |x - o_i|^2; x landing exactly on a shift gives that component
/// full weight.
double compose(const std::vector<CompositionComponent>& components,
               const Eigen::VectorXd& x, double f_star);

std::string instance_to_json(const BenchmarkInstance& inst);
BenchmarkInstance instance_from_json(const std::string& text);
void save_instance(const BenchmarkInstance& inst, const std::string& path);
BenchmarkInstance load_instance(const std::string& path);

}  // namespace chaosde
