#include "chaosde/random_sources.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chaosde {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

ShuffledSource::ShuffledSource(std::unique_ptr<RandomSource> inner, std::size_t slots)
    : inner_(std::move(inner)), table_(slots) {
  if (slots == 0) throw std::invalid_argument("shuffle table needs at least one slot");
  for (auto& t : table_) t = inner_->next_unit();
}

double ShuffledSource::next_unit() {
  const auto j = static_cast<std::size_t>(mix64(counter_++) % table_.size());
  const double out = table_[j];
  table_[j] = inner_->next_unit();
  return out;
}

ChaoticSource ChaoticSource::modulo(ChaoticMap map, MapPoint start) {
  return ChaoticSource(map, start, NormalizerScheme::Modulo);
}

ChaoticSource ChaoticSource::bounds(ChaoticMap map, MapPoint start,
                                    BoundsEstimate estimate) {
  if (!(estimate.min_x < estimate.max_x) || estimate.sample_count < 2) {
    throw std::invalid_argument("invalid bounds estimate");
  }
  ChaoticSource src(map, start, NormalizerScheme::Bounds);
  src.estimate_ = estimate;
  return src;
}

ChaoticSource ChaoticSource::atan2(ChaoticMap map, MapPoint start, std::size_t warmup) {
  ChaoticSource src(map, start, NormalizerScheme::Atan2);
  for (std::size_t k = 0; k < warmup; ++k) {
    MapPoint next = step(map, src.current_);
    if (!std::isfinite(next.x) || !std::isfinite(next.y)) {
      throw NonFiniteEscape(k, src.current_);
    }
    src.center_ = update_center(src.center_, next);
    src.current_ = next;
  }
  return src;
}

double ChaoticSource::next_unit() {
  MapPoint next = step(map_, current_);
  if (!std::isfinite(next.x) || !std::isfinite(next.y)) {
    throw NonFiniteEscape(emitted_, current_);
  }
  current_ = next;
  ++emitted_;
  switch (scheme_) {
    case NormalizerScheme::Modulo:
      return normalize_modulo(next.x);
    case NormalizerScheme::Bounds:
      return normalize_bounds(next.x, estimate_);
    case NormalizerScheme::Atan2:
      center_ = update_center(center_, next);
      return normalize_atan2(next, center_);
  }
  throw std::logic_error("unreachable");
}

EmpiricalDistribution build_empirical_distribution(RandomSource& src, std::size_t n,
                                                   std::size_t bins) {
  if (n < 100000) throw std::invalid_argument("distribution build needs n >= 1e5");
  if (bins < 2) throw std::invalid_argument("distribution build needs bins >= 2");
  std::vector<std::size_t> counts(bins, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = src.next_unit();
    auto bin = static_cast<std::size_t>(u * static_cast<double>(bins));
    if (bin >= bins) bin = bins - 1;
    ++counts[bin];
  }
  EmpiricalDistribution dist;
  dist.bin_count = bins;
  dist.cdf.resize(bins + 1, 0.0);
  std::size_t running = 0;
  for (std::size_t b = 0; b < bins; ++b) {
    running += counts[b];
    dist.cdf[b + 1] = static_cast<double>(running) / static_cast<double>(n);
  }
  dist.cdf.back() = 1.0;
  return dist;
}

double invert_empirical(const EmpiricalDistribution& dist, double u) {
  if (dist.bin_count == 0 || dist.cdf.size() != dist.bin_count + 1) {
    throw std::invalid_argument("empty empirical distribution");
  }
  if (u < 0.0 || u >= 1.0) throw std::invalid_argument("u outside [0,1)");
  // Last j with cdf[j] <= u; the bin (cdf[j], cdf[j+1]] has mass, so empty
  // bins can never be landed in.
  const auto it = std::upper_bound(dist.cdf.begin(), dist.cdf.end(), u);
  const auto j = static_cast<std::size_t>(it - dist.cdf.begin()) - 1;
  const double lo = dist.cdf[j];
  const double hi = dist.cdf[j + 1];
  const double width = 1.0 / static_cast<double>(dist.bin_count);
  const double left = static_cast<double>(j) * width;
  return clamp_unit(left + width * (u - lo) / (hi - lo));
}

std::size_t rand_index(RandomSource& src, std::size_t n) {
  if (n == 0) throw std::invalid_argument("rand_index needs n >= 1");
  return static_cast<std::size_t>(src.next_unit() * static_cast<double>(n));
}

double rand_range(RandomSource& src, double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("rand_range needs lo < hi");
  return lo + src.next_unit() * (hi - lo);
}

SourceSpec parse_source_spec(std::string_view text) {
  SourceSpec spec;
  if (text == "mt") {
    spec.kind = SourceSpec::Kind::Mt;
    return spec;
  }
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (first == std::string_view::npos || second == std::string_view::npos) {
    throw std::invalid_argument("bad source spec '" + std::string(text) +
                                "' (expected mt | chaos:<map>:<scheme> | matched:<map>:<scheme>)");
  }
  const auto head = text.substr(0, first);
  const auto map = text.substr(first + 1, second - first - 1);
  const auto scheme = text.substr(second + 1);
  if (head == "chaos") {
    spec.kind = SourceSpec::Kind::Chaos;
  } else if (head == "matched") {
    spec.kind = SourceSpec::Kind::Matched;
  } else {
    throw std::invalid_argument("bad source spec '" + std::string(text) + "'");
  }
  spec.map = map_from_name(map).family;
  spec.scheme = scheme_from_name(scheme);
  return spec;
}

std::string source_spec_string(const SourceSpec& spec) {
  switch (spec.kind) {
    case SourceSpec::Kind::Mt:
      return "mt";
    case SourceSpec::Kind::Chaos:
      return "chaos:" + map_name({spec.map, {}}) + ":" + scheme_name(spec.scheme);
    case SourceSpec::Kind::Matched:
      return "matched:" + map_name({spec.map, {}}) + ":" + scheme_name(spec.scheme);
  }
  throw std::logic_error("unreachable");
}

}  // namespace chaosde
