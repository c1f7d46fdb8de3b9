#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "chaosde/chaos_maps.hpp"
#include "chaosde/normalizers.hpp"

namespace chaosde {

/// Stream of values in [0, 1). Sources are single-owner sequential objects;
/// every draw in a DE run flows through one of these.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual double next_unit() = 0;
};

/// splitmix64 finalizer; the project's one deterministic integer mixer.
std::uint64_t mix64(std::uint64_t x);

/// MT19937 words divided by 2^32.
class MtSource final : public RandomSource {
 public:
  explicit MtSource(std::uint32_t seed = 5489u) : seed_(seed), engine_(seed) {}
  double next_unit() override {
    return static_cast<double>(engine_()) * 0x1p-32;
  }
  std::uint32_t seed() const { return seed_; }

 private:
  std::uint32_t seed_;
  std::mt19937 engine_;
};

/// Chaotic map composed with a normalization scheme, sample by sample.
class ChaoticSource final : public RandomSource {
 public:
  static constexpr std::size_t kAtan2Warmup = 1000;

  static ChaoticSource modulo(ChaoticMap map, MapPoint start);
  static ChaoticSource bounds(ChaoticMap map, MapPoint start, BoundsEstimate estimate);
  /// Discards `warmup` iterates to seed the running center before emitting.
  static ChaoticSource atan2(ChaoticMap map, MapPoint start,
                             std::size_t warmup = kAtan2Warmup);

  double next_unit() override;

  NormalizerScheme scheme() const { return scheme_; }
  const ChaoticMap& map() const { return map_; }

 private:
  ChaoticSource(ChaoticMap map, MapPoint start, NormalizerScheme scheme)
      : map_(map), current_(start), scheme_(scheme) {}

  ChaoticMap map_;
  MapPoint current_;
  NormalizerScheme scheme_;
  BoundsEstimate estimate_{};
  CenterState center_{};
  std::size_t emitted_ = 0;
};

/// Binned empirical CDF over [0, 1): cdf has bin_count + 1 entries,
/// cdf.front() == 0, cdf.back() == 1, non-decreasing.
struct EmpiricalDistribution {
  std::size_t bin_count = 0;
  std::vector<double> cdf;
};

/// Histogram of n draws over uniform bins, accumulated into a CDF.
/// Requires n >= 100000 and bins >= 2.
EmpiricalDistribution build_empirical_distribution(RandomSource& src, std::size_t n,
                                                   std::size_t bins);

/// Inverse-CDF lookup with linear interpolation inside the selected bin.
/// Empty bins are never selected.
double invert_empirical(const EmpiricalDistribution& dist, double u);

/// Mersenne Twister reshaped through an empirical inverse CDF so its output
/// distribution approximates the distribution the CDF was built from.
class MatchedSource final : public RandomSource {
 public:
  MatchedSource(EmpiricalDistribution dist, std::uint32_t seed)
      : dist_(std::move(dist)), mt_(seed) {}
  double next_unit() override { return invert_empirical(dist_, mt_.next_unit()); }
  const EmpiricalDistribution& distribution() const { return dist_; }

 private:
  EmpiricalDistribution dist_;
  MtSource mt_;
};

/// Emits a deterministic permutation of the inner stream: a table of
/// `slots` buffered values, one swapped out per draw at a counter-scrambled
/// position. Destroys the serial correlation of chaotic streams while
/// keeping the value distribution exactly (every inner sample is emitted
/// exactly once, in scrambled order).
class ShuffledSource final : public RandomSource {
 public:
  ShuffledSource(std::unique_ptr<RandomSource> inner, std::size_t slots);
  double next_unit() override;

 private:
  std::unique_ptr<RandomSource> inner_;
  std::vector<double> table_;
  std::uint64_t counter_ = 0;
};

/// floor(next_unit() * n); always < n because samples are < 1.
std::size_t rand_index(RandomSource& src, std::size_t n);

/// lo + next_unit() * (hi - lo). Throws if lo >= hi.
double rand_range(RandomSource& src, double lo, double hi);

/// Parsed form of the CLI/config source string: "mt", "chaos:<map>:<scheme>"
/// or "matched:<map>:<scheme>".
struct SourceSpec {
  enum class Kind { Mt, Chaos, Matched };
  Kind kind = Kind::Mt;
  MapFamily map = MapFamily::Gingerbread;
  NormalizerScheme scheme = NormalizerScheme::Modulo;
};

SourceSpec parse_source_spec(std::string_view text);
std::string source_spec_string(const SourceSpec& spec);

}  // namespace chaosde
