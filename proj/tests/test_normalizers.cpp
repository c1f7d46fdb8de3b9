#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "chaosde/chaos_maps.hpp"
#include "chaosde/normalizers.hpp"
#include "chaosde/statistics.hpp"

using namespace chaosde;

TEST_CASE("modulo keeps the fractional part of the magnitude") {
  CHECK(normalize_modulo(1.2) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(normalize_modulo(-3.7) == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(normalize_modulo(0.5) == 0.5);
  CHECK(normalize_modulo(4.0) == 0.0);
  CHECK(normalize_modulo(-2.0) == 0.0);
}

TEST_CASE("modulo is invariant under integer shifts away from zero") {
  // The magnitude in the definition breaks shift invariance when n and n+k
  // straddle zero, so draws keep |n| > 3 for shifts up to 3.
  std::mt19937 rng(123);
  for (int i = 0; i < 10000; ++i) {
    const double u = static_cast<double>(rng()) * 0x1p-32;
    const double mag = 3.0 + 97.0 * u;
    const double n = (rng() & 1) ? mag : -mag;
    const double base = normalize_modulo(n);
    for (int k = -3; k <= 3; ++k) {
      CHECK(normalize_modulo(n + k) == doctest::Approx(base).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("modulo output is always in [0, 1)") {
  std::mt19937 rng(5);
  for (int i = 0; i < 100000; ++i) {
    const double n = -1e6 + 2e6 * (static_cast<double>(rng()) * 0x1p-32);
    const double z = normalize_modulo(n);
    REQUIRE(z >= 0.0);
    REQUIRE(z < 1.0);
  }
}

TEST_CASE("bounds estimation over the gingerbread x stream") {
  const BoundsEstimate est = estimate_bounds(gingerbread_map(), 3);
  // x stream from (9, 3.7): 6.3, -1.7, -3.6
  CHECK(est.min_x == doctest::Approx(-3.6).epsilon(1e-12));
  CHECK(est.max_x == doctest::Approx(6.3).epsilon(1e-12));
  CHECK(est.sample_count == 3);

  CHECK_THROWS(estimate_bounds(gingerbread_map(), 1));
}

TEST_CASE("tinkerbell bounds stay inside (-2, 2) at 1e6 samples") {
  const BoundsEstimate est = estimate_bounds(tinkerbell_map(), 1000000);
  CHECK(est.min_x > -2.0);
  CHECK(est.max_x < 2.0);
  CHECK(est.min_x < est.max_x);
}

TEST_CASE("bounds normalization endpoints and clamping") {
  const BoundsEstimate b{-2.0, 6.0, 100};
  CHECK(normalize_bounds(-2.0, b) == 0.0);
  CHECK(normalize_bounds(2.0, b) == 0.5);
  CHECK(normalize_bounds(-5.0, b) == 0.0);  // clamp below
  const double top = normalize_bounds(6.0, b);
  CHECK(top < 1.0);
  CHECK(top == std::nextafter(1.0, 0.0));
  const double above = normalize_bounds(100.0, b);
  CHECK(above == top);
}

TEST_CASE("bounds normalization is affine and monotone on the range") {
  const BoundsEstimate b{-3.6, 6.3, 1000};
  std::mt19937 rng(17);
  double prev_x = b.min_x, prev_z = 0.0;
  std::vector<double> xs;
  for (int i = 0; i < 1000; ++i) {
    xs.push_back(b.min_x + (b.max_x - b.min_x) * (static_cast<double>(rng()) * 0x1p-32));
  }
  std::sort(xs.begin(), xs.end());
  for (double x : xs) {
    const double z = normalize_bounds(x, b);
    CHECK(z >= prev_z);
    // affine: slope constant
    const double expected = (x - b.min_x) / (b.max_x - b.min_x);
    CHECK(z == doctest::Approx(expected).epsilon(1e-12));
    prev_x = x;
    prev_z = z;
  }
  (void)prev_x;
}

TEST_CASE("atan2 normalization scales the angle magnitude onto [0, 1)") {
  CenterState c;
  c = update_center(c, {0.0, 0.0});
  CHECK(normalize_atan2({1.0, 0.0}, c) == 0.0);  // theta = 0
  CHECK(normalize_atan2({0.0, 1.0}, c) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(normalize_atan2({0.0, -1.0}, c) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(normalize_atan2({1.0, 1.0}, c) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(normalize_atan2({0.0, 0.0}, c) == 0.0);  // point equals center
  // |theta| == pi wraps to 0
  CHECK(normalize_atan2({-1.0, 0.0}, c) == 0.0);
  // the magnitude folds conjugate angles onto the same value
  CHECK(normalize_atan2({1.0, 0.3}, c) == normalize_atan2({1.0, -0.3}, c));
}

TEST_CASE("atan2 normalization is invariant under radial scaling") {
  std::mt19937 rng(29);
  for (int i = 0; i < 2000; ++i) {
    CenterState c;
    c = update_center(c, {-5.0 + 10.0 * (static_cast<double>(rng()) * 0x1p-32),
                          -5.0 + 10.0 * (static_cast<double>(rng()) * 0x1p-32)});
    const double dx = -1.0 + 2.0 * (static_cast<double>(rng()) * 0x1p-32);
    const double dy = -1.0 + 2.0 * (static_cast<double>(rng()) * 0x1p-32);
    if (dx == 0.0 && dy == 0.0) continue;
    const double base = normalize_atan2({c.mean_x + dx, c.mean_y + dy}, c);
    for (double s : {0.5, 2.0, 10.0}) {
      const double scaled = normalize_atan2({c.mean_x + s * dx, c.mean_y + s * dy}, c);
      CHECK(scaled == doctest::Approx(base).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("running center matches the batch mean") {
  CenterState c;
  c = update_center(c, {1.0, 0.0});
  CHECK(c.mean_x == 1.0);
  CHECK(c.mean_y == 0.0);
  c = update_center(c, {3.0, 4.0});
  CHECK(c.mean_x == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(c.mean_y == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(c.count == 2);

  std::mt19937 rng(99);
  CenterState run;
  double sx = 0.0, sy = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const MapPoint p{-100.0 + 200.0 * (static_cast<double>(rng()) * 0x1p-32),
                     -100.0 + 200.0 * (static_cast<double>(rng()) * 0x1p-32)};
    run = update_center(run, p);
    sx += p.x;
    sy += p.y;
  }
  CHECK(run.mean_x == doctest::Approx(sx / 10000.0).epsilon(1e-12));
  CHECK(run.mean_y == doctest::Approx(sy / 10000.0).epsilon(1e-12));
}

namespace {

// Stream of 1e6 normalized samples for one (map, scheme) pair, built from
// the pure pieces rather than ChaoticSource.
std::vector<double> normalized_stream(const ChaoticMap& map, NormalizerScheme scheme,
                                      std::size_t n) {
  std::vector<double> out;
  out.reserve(n);
  MapPoint p = default_initial_point(map);
  BoundsEstimate est;
  CenterState center;
  if (scheme == NormalizerScheme::Bounds) est = estimate_bounds(map, 1000000);
  if (scheme == NormalizerScheme::Atan2) {
    for (int k = 0; k < 1000; ++k) {
      p = step(map, p);
      center = update_center(center, p);
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    p = step(map, p);
    switch (scheme) {
      case NormalizerScheme::Modulo: out.push_back(normalize_modulo(p.x)); break;
      case NormalizerScheme::Bounds: out.push_back(normalize_bounds(p.x, est)); break;
      case NormalizerScheme::Atan2:
        center = update_center(center, p);
        out.push_back(normalize_atan2(p, center));
        break;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("every map x scheme stream stays in [0, 1) over 1e6 samples") {
  for (const auto& map : {gingerbread_map(), tinkerbell_map()}) {
    for (auto scheme : {NormalizerScheme::Modulo, NormalizerScheme::Bounds,
                        NormalizerScheme::Atan2}) {
      const auto stream = normalized_stream(map, scheme, 1000000);
      for (double z : stream) {
        REQUIRE(z >= 0.0);
        REQUIRE(z < 1.0);
      }
    }
  }
}

TEST_CASE("modulo distorts the tinkerbell distribution (chi-square vs uniform)") {
  const auto stream = normalized_stream(tinkerbell_map(), NormalizerScheme::Modulo, 1000000);
  constexpr int bins = 64;
  std::vector<double> counts(bins, 0.0);
  for (double z : stream) counts[static_cast<int>(z * bins)] += 1.0;
  const double expected = static_cast<double>(stream.size()) / bins;
  double chi2 = 0.0;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  CHECK(chi2 > chi_square_critical(0.01, bins - 1));
}
