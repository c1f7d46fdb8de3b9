#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "chaosde/chaos_maps.hpp"

namespace chaosde {

// All normalizers emit values in [0, 1); the upper end is excluded so that
// floor(value * n) is always a valid index below n.

enum class NormalizerScheme { Modulo, Bounds, Atan2 };

NormalizerScheme scheme_from_name(std::string_view name);
std::string scheme_name(NormalizerScheme scheme);

/// Largest double below 1; used to clamp samples that would round up to 1.
double clamp_unit(double v);

/// Fractional part of |n|.
double normalize_modulo(double n);

struct BoundsEstimate {
  double min_x = 0.0;
  double max_x = 0.0;
  std::size_t sample_count = 0;
};

/// min/max over the x coordinates of the first `samples` iterates from the
/// map's default initial point. Throws on samples < 2 or a degenerate range.
BoundsEstimate estimate_bounds(const ChaoticMap& map, std::size_t samples);

/// Affine map of x onto [0, 1); values outside [min_x, max_x] clamp to the
/// nearest end.
double normalize_bounds(double x, const BoundsEstimate& b);

/// Running mean of observed map points, the attractor-center estimate for
/// the angle normalizer.
struct CenterState {
  double mean_x = 0.0;
  double mean_y = 0.0;
  std::size_t count = 0;
};

CenterState update_center(CenterState c, MapPoint p);

/// Magnitude of the phase angle of p around the center, scaled onto [0, 1):
/// z = |atan2(dy, dx)| / pi. theta = pi wraps to 0, and a point equal to the
/// center maps to 0. Uniform angles stay uniform, and the value is invariant
/// under radial scaling about the center.
double normalize_atan2(MapPoint p, const CenterState& c);

}  // namespace chaosde
