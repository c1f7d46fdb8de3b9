#include "chaosde/normalizers.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace chaosde {

NormalizerScheme scheme_from_name(std::string_view name) {
  if (name == "modulo") return NormalizerScheme::Modulo;
  if (name == "bounds") return NormalizerScheme::Bounds;
  if (name == "atan2") return NormalizerScheme::Atan2;
  throw std::invalid_argument("unknown normalization scheme: " + std::string(name));
}

std::string scheme_name(NormalizerScheme scheme) {
  switch (scheme) {
    case NormalizerScheme::Modulo: return "modulo";
    case NormalizerScheme::Bounds: return "bounds";
    case NormalizerScheme::Atan2: return "atan2";
  }
  throw std::logic_error("unreachable");
}

double clamp_unit(double v) {
  if (v >= 1.0) return std::nextafter(1.0, 0.0);
  if (v < 0.0) return 0.0;
  return v;
}

double normalize_modulo(double n) {
  const double a = std::abs(n);
  return clamp_unit(a - std::floor(a));
}

BoundsEstimate estimate_bounds(const ChaoticMap& map, std::size_t samples) {
  if (samples < 2) throw std::invalid_argument("estimate_bounds needs at least 2 samples");
  MapPoint p = default_initial_point(map);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < samples; ++k) {
    MapPoint next = step(map, p);
    if (!std::isfinite(next.x) || !std::isfinite(next.y)) throw NonFiniteEscape(k, p);
    lo = std::min(lo, next.x);
    hi = std::max(hi, next.x);
    p = next;
  }
  if (!(lo < hi)) throw std::runtime_error("degenerate bounds estimate: min == max");
  return {lo, hi, samples};
}

double normalize_bounds(double x, const BoundsEstimate& b) {
  if (x <= b.min_x) return 0.0;
  if (x >= b.max_x) return clamp_unit(1.0);
  return clamp_unit((x - b.min_x) / (b.max_x - b.min_x));
}

CenterState update_center(CenterState c, MapPoint p) {
  const double k = static_cast<double>(c.count + 1);
  c.mean_x += (p.x - c.mean_x) / k;
  c.mean_y += (p.y - c.mean_y) / k;
  c.count += 1;
  return c;
}

double normalize_atan2(MapPoint p, const CenterState& c) {
  const double dx = p.x - c.mean_x;
  const double dy = p.y - c.mean_y;
  if (dx == 0.0 && dy == 0.0) return 0.0;
  const double theta = std::atan2(dy, dx);  // in (-pi, pi]
  const double z = std::abs(theta) / std::numbers::pi;
  if (z >= 1.0) return 0.0;  // theta == pi wraps around
  return clamp_unit(z);
}

}  // namespace chaosde
