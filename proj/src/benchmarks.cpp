#include "chaosde/benchmarks.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <stdexcept>

#include "json.hpp"

namespace chaosde {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kPi = std::numbers::pi;
constexpr double kSchwefelBias = 418.9828872724338;
constexpr double kSchwefelShift = 420.9687462275036;

double benchmark_input_scale(BenchmarkId id) {
  switch (id) {
    case BenchmarkId::F9: return 0.5 / 100.0;
    case BenchmarkId::F15:
    case BenchmarkId::F22:
    case BenchmarkId::F23: return 10.0;
    case BenchmarkId::F16: return 5.0 / 100.0;
    case BenchmarkId::F17: return 10.0 / 100.0;
    default: return 1.0;
  }
}

// Deterministic uniform/normal draws from raw MT19937 words; the standard
// distributions are implementation-defined and would break cross-platform
// replay.
double unit_from(std::mt19937& rng) {
  return static_cast<double>(rng()) * 0x1p-32;
}

class NormalDraws {
 public:
  explicit NormalDraws(std::mt19937& rng) : rng_(rng) {}
  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    // Box-Muller; u1 in (0, 1] keeps the log finite.
    const double u1 = (static_cast<double>(rng_()) + 1.0) * 0x1p-32;
    const double u2 = unit_from(rng_);
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * kPi * u2);
  }

 private:
  std::mt19937& rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

VectorXd draw_shift(std::mt19937& rng, int dim) {
  VectorXd o(dim);
  for (int i = 0; i < dim; ++i) o[i] = -80.0 + 160.0 * unit_from(rng);
  return o;
}

// Modified Gram-Schmidt on columns of a standard-normal matrix; returns
// false on breakdown so the caller can redraw.
bool try_orthogonalize(MatrixXd& a) {
  const auto n = a.cols();
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index j = 0; j < k; ++j) {
      a.col(k) -= a.col(j).dot(a.col(k)) * a.col(j);
    }
    const double norm = a.col(k).norm();
    if (norm < 1e-12) return false;
    a.col(k) /= norm;
  }
  return ((a.transpose() * a - MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-10);
}

MatrixXd draw_rotation(std::mt19937& rng, int dim) {
  NormalDraws normal(rng);
  for (int attempt = 0; attempt < 10; ++attempt) {
    MatrixXd a(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) a(r, c) = normal();
    if (try_orthogonalize(a)) return a;
  }
  throw std::runtime_error("rotation draw failed to orthogonalize after 10 attempts");
}

double schwefel_term(double y, double dim) {
  if (std::abs(y) <= 500.0) return y * std::sin(std::sqrt(std::abs(y)));
  if (y > 500.0) {
    const double t = 500.0 - std::fmod(y, 500.0);
    const double pen = (y - 500.0) * (y - 500.0) / (10000.0 * dim);
    return t * std::sin(std::sqrt(std::abs(t))) - pen;
  }
  const double t = std::fmod(std::abs(y), 500.0) - 500.0;
  const double pen = (y + 500.0) * (y + 500.0) / (10000.0 * dim);
  return t * std::sin(std::sqrt(std::abs(t))) - pen;
}

std::function<double(const VectorXd&)> component_core(BenchmarkId id) {
  const double scale = benchmark_input_scale(id);
  switch (id) {
    case BenchmarkId::F22:
    case BenchmarkId::F23:
      return [scale](const VectorXd& z) { return schwefel_core(scale * z); };
    default:
      throw std::logic_error("component core requested for non-composition id");
  }
}

}  // namespace

double benchmark_bias(BenchmarkId id) {
  switch (id) {
    case BenchmarkId::F1: return -1400.0;
    case BenchmarkId::F5: return -1000.0;
    case BenchmarkId::F9: return -600.0;
    case BenchmarkId::F13: return -200.0;
    case BenchmarkId::F15: return 100.0;
    case BenchmarkId::F16: return 200.0;
    case BenchmarkId::F17: return 300.0;
    case BenchmarkId::F22: return 800.0;
    case BenchmarkId::F23: return 900.0;
  }
  throw std::logic_error("unreachable");
}

std::string benchmark_name(BenchmarkId id) {
  switch (id) {
    case BenchmarkId::F1: return "f1";
    case BenchmarkId::F5: return "f5";
    case BenchmarkId::F9: return "f9";
    case BenchmarkId::F13: return "f13";
    case BenchmarkId::F15: return "f15";
    case BenchmarkId::F16: return "f16";
    case BenchmarkId::F17: return "f17";
    case BenchmarkId::F22: return "f22";
    case BenchmarkId::F23: return "f23";
  }
  throw std::logic_error("unreachable");
}

BenchmarkId benchmark_from_name(std::string_view name) {
  for (BenchmarkId id : kAllBenchmarks) {
    if (benchmark_name(id) == name) return id;
  }
  throw std::invalid_argument("unknown benchmark function: " + std::string(name));
}

bool is_composition(BenchmarkId id) {
  return id == BenchmarkId::F22 || id == BenchmarkId::F23;
}

BenchmarkInstance make_instance(BenchmarkId id, int dim, std::uint32_t seed) {
  if (dim < 2 || dim > 100) throw std::invalid_argument("dimension must be in [2, 100]");
  std::mt19937 rng(seed);
  BenchmarkInstance inst;
  inst.id = id;
  inst.dim = dim;
  inst.bias = benchmark_bias(id);
  inst.seed = seed;
  const int n_components = is_composition(id) ? 3 : 1;
  const double component_biases[3] = {0.0, 100.0, 200.0};
  for (int c = 0; c < n_components; ++c) {
    BenchmarkComponent comp;
    comp.shift = draw_shift(rng, dim);
    // F22 composes unrotated pieces; F23 the rotated counterparts.
    comp.rotation = (id == BenchmarkId::F22) ? MatrixXd::Identity(dim, dim)
                                             : draw_rotation(rng, dim);
    comp.input_scale = benchmark_input_scale(id);
    comp.sigma = 20.0;
    comp.bias = component_biases[c];
    inst.components.push_back(std::move(comp));
  }
  return inst;
}

double sphere_core(const VectorXd& z) { return z.squaredNorm(); }

double different_powers_core(const VectorXd& z) {
  const auto d = z.size();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    const double expo = 2.0 + 4.0 * static_cast<double>(i) / (static_cast<double>(d) - 1.0);
    sum += std::pow(std::abs(z[i]), expo);
  }
  return std::sqrt(sum);
}

double weierstrass_core(const VectorXd& z) {
  constexpr double a = 0.5;
  constexpr double b = 3.0;
  constexpr int kmax = 20;
  double ak[kmax + 1], bk[kmax + 1];
  ak[0] = 1.0;
  bk[0] = 1.0;
  for (int k = 1; k <= kmax; ++k) {
    ak[k] = ak[k - 1] * a;
    bk[k] = bk[k - 1] * b;
  }
  double base = 0.0;
  for (int k = 0; k <= kmax; ++k) base += ak[k] * std::cos(kPi * bk[k]);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    for (int k = 0; k <= kmax; ++k) {
      sum += ak[k] * std::cos(2.0 * kPi * bk[k] * (z[i] + 0.5));
    }
  }
  return sum - static_cast<double>(z.size()) * base;
}

double noncontinuous_rastrigin_core(const VectorXd& z) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    // std::round is half-away-from-zero, the pinned rule.
    const double y = std::abs(z[i]) <= 0.5 ? z[i] : std::round(2.0 * z[i]) / 2.0;
    sum += y * y - 10.0 * std::cos(2.0 * kPi * y) + 10.0;
  }
  return sum;
}

double schwefel_core(const VectorXd& z) {
  const double d = static_cast<double>(z.size());
  double sum = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    sum += schwefel_term(z[i] + kSchwefelShift, d);
  }
  return kSchwefelBias * d - sum;
}

double katsuura_core(const VectorXd& z) {
  const double d = static_cast<double>(z.size());
  const double expo = 10.0 / std::pow(d, 1.2);
  double prod = 1.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    double inner = 0.0;
    double p2 = 1.0;
    for (int j = 1; j <= 32; ++j) {
      p2 *= 2.0;
      const double t = p2 * z[i];
      inner += std::abs(t - std::round(t)) / p2;
    }
    prod *= std::pow(1.0 + static_cast<double>(i + 1) * inner, expo);
  }
  return (10.0 / (d * d)) * prod - 10.0 / (d * d);
}

double lunacek_bi_rastrigin_core(const VectorXd& z) {
  const double d = static_cast<double>(z.size());
  constexpr double mu0 = 2.5;
  constexpr double depth = 1.0;
  const double s = 1.0 - 1.0 / (2.0 * std::sqrt(d + 20.0) - 8.2);
  const double mu1 = -std::sqrt((mu0 * mu0 - depth) / s);
  double sum0 = 0.0, sum1 = 0.0, sum_cos = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double xi = z[i] + mu0;  // anchors the sphere basin at z = 0
    sum0 += (xi - mu0) * (xi - mu0);
    sum1 += (xi - mu1) * (xi - mu1);
    sum_cos += std::cos(2.0 * kPi * (xi - mu0));
  }
  return std::min(sum0, depth * d + s * sum1) + 10.0 * (d - sum_cos);
}

double base_function(BenchmarkId id, const VectorXd& z) {
  switch (id) {
    case BenchmarkId::F1: return sphere_core(z);
    case BenchmarkId::F5: return different_powers_core(z);
    case BenchmarkId::F9: return weierstrass_core(z);
    case BenchmarkId::F13: return noncontinuous_rastrigin_core(z);
    case BenchmarkId::F15: return schwefel_core(z);
    case BenchmarkId::F16: return katsuura_core(z);
    case BenchmarkId::F17: return lunacek_bi_rastrigin_core(z);
    case BenchmarkId::F22:
    case BenchmarkId::F23: return schwefel_core(z);
  }
  throw std::logic_error("unreachable");
}

double compose(const std::vector<CompositionComponent>& components,
               const VectorXd& x, double f_star) {
  if (components.empty()) throw std::invalid_argument("compose needs >= 1 component");
  const double d = static_cast<double>(x.size());
  std::vector<double> w(components.size(), 0.0);
  std::ptrdiff_t exact = -1;
  for (std::size_t i = 0; i < components.size(); ++i) {
    const double d2 = (x - components[i].shift).squaredNorm();
    if (d2 == 0.0) {
      exact = static_cast<std::ptrdiff_t>(i);
      break;
    }
    const double sigma = components[i].sigma;
    w[i] = (1.0 / std::sqrt(d2)) * std::exp(-d2 / (2.0 * d * sigma * sigma));
  }
  double value = 0.0;
  if (exact >= 0) {
    const auto& comp = components[static_cast<std::size_t>(exact)];
    value = comp.outer_scale * comp.core(comp.rotation * (x - comp.shift)) + comp.bias;
  } else {
    double total = 0.0;
    for (double wi : w) total += wi;
    for (std::size_t i = 0; i < components.size(); ++i) {
      const auto& comp = components[i];
      const double omega = w[i] / total;
      if (omega == 0.0) continue;
      value += omega * (comp.outer_scale * comp.core(comp.rotation * (x - comp.shift)) +
                        comp.bias);
    }
  }
  return value + f_star;
}

double evaluate(const BenchmarkInstance& inst, const VectorXd& x) {
  if (x.size() != inst.dim) throw std::invalid_argument("evaluate: dimension mismatch");
  if (!is_composition(inst.id)) {
    const auto& comp = inst.components.front();
    const VectorXd z = comp.input_scale * (comp.rotation * (x - comp.shift));
    return base_function(inst.id, z) + inst.bias;
  }
  std::vector<CompositionComponent> parts;
  parts.reserve(inst.components.size());
  const auto core = component_core(inst.id);
  for (const auto& c : inst.components) {
    parts.push_back({core, c.shift, c.rotation, 1.0, c.sigma, c.bias});
  }
  return compose(parts, x, inst.bias);
}

std::string instance_to_json(const BenchmarkInstance& inst) {
  nlohmann::json j;
  j["id"] = benchmark_name(inst.id);
  j["D"] = inst.dim;
  j["seed"] = inst.seed;
  const auto& first = inst.components.front();
  j["shift"] = std::vector<double>(first.shift.data(), first.shift.data() + inst.dim);
  auto matrix_to_json = [&](const Eigen::MatrixXd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < m.rows(); ++r) {
      rows.push_back(std::vector<double>(m.row(r).begin(), m.row(r).end()));
    }
    return rows;
  };
  j["rotation"] = matrix_to_json(first.rotation);
  if (inst.components.size() > 1) {
    nlohmann::json shifts = nlohmann::json::array();
    nlohmann::json rotations = nlohmann::json::array();
    for (const auto& c : inst.components) {
      shifts.push_back(std::vector<double>(c.shift.data(), c.shift.data() + inst.dim));
      rotations.push_back(matrix_to_json(c.rotation));
    }
    j["shifts"] = shifts;
    j["rotations"] = rotations;
  }
  return j.dump(2);
}

BenchmarkInstance instance_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  BenchmarkInstance inst;
  inst.id = benchmark_from_name(j.at("id").get<std::string>());
  inst.dim = j.at("D").get<int>();
  inst.seed = j.at("seed").get<std::uint32_t>();
  inst.bias = benchmark_bias(inst.id);
  auto vector_from = [&](const nlohmann::json& arr) {
    Eigen::VectorXd v(inst.dim);
    for (int i = 0; i < inst.dim; ++i) v[i] = arr.at(i).get<double>();
    return v;
  };
  auto matrix_from = [&](const nlohmann::json& rows) {
    Eigen::MatrixXd m(inst.dim, inst.dim);
    for (int r = 0; r < inst.dim; ++r)
      for (int c = 0; c < inst.dim; ++c) m(r, c) = rows.at(r).at(c).get<double>();
    return m;
  };
  const int n_components = is_composition(inst.id) ? 3 : 1;
  const double component_biases[3] = {0.0, 100.0, 200.0};
  for (int c = 0; c < n_components; ++c) {
    BenchmarkComponent comp;
    if (n_components > 1) {
      comp.shift = vector_from(j.at("shifts").at(c));
      comp.rotation = matrix_from(j.at("rotations").at(c));
    } else {
      comp.shift = vector_from(j.at("shift"));
      comp.rotation = matrix_from(j.at("rotation"));
    }
    comp.input_scale = benchmark_input_scale(inst.id);
    comp.sigma = 20.0;
    comp.bias = component_biases[c];
    inst.components.push_back(std::move(comp));
  }
  return inst;
}

void save_instance(const BenchmarkInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << instance_to_json(inst) << "\n";
}

BenchmarkInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return instance_from_json(text);
}

}  // namespace chaosde
