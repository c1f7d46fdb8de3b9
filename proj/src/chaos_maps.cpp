#include "chaosde/chaos_maps.hpp"

#include <cmath>

namespace chaosde {

ChaoticMap gingerbread_map() { return {MapFamily::Gingerbread, {}}; }

ChaoticMap tinkerbell_map(TinkerbellParams params) {
  return {MapFamily::Tinkerbell, params};
}

ChaoticMap map_from_name(std::string_view name) {
  if (name == "gingerbread") return gingerbread_map();
  if (name == "tinkerbell") return tinkerbell_map();
  throw std::invalid_argument("unknown chaotic map: " + std::string(name));
}

std::string map_name(const ChaoticMap& map) {
  return map.family == MapFamily::Gingerbread ? "gingerbread" : "tinkerbell";
}

MapPoint default_initial_point(const ChaoticMap& map) {
  if (map.family == MapFamily::Gingerbread) return {9.0, 3.7};
  return {0.1, -0.1};
}

MapPoint gingerbread_step(MapPoint p) {
  return {1.0 - p.y + std::abs(p.x), p.x};
}

MapPoint tinkerbell_step(MapPoint p, const TinkerbellParams& q) {
  return {p.x * p.x - p.y * p.y + q.a * p.x + q.b * p.y,
          2.0 * p.x * p.y + q.c * p.x + q.d * p.y};
}

MapPoint step(const ChaoticMap& map, MapPoint p) {
  return map.family == MapFamily::Gingerbread ? gingerbread_step(p)
                                              : tinkerbell_step(p, map.params);
}

NonFiniteEscape::NonFiniteEscape(std::size_t idx, MapPoint from)
    : std::runtime_error("chaotic orbit escaped to a non-finite value at iterate " +
                         std::to_string(idx) + " (from x=" + std::to_string(from.x) +
                         ", y=" + std::to_string(from.y) + ")"),
      index(idx) {}

std::vector<MapPoint> iterate(const ChaoticMap& map, MapPoint p0, std::size_t n) {
  std::vector<MapPoint> out;
  out.reserve(n);
  MapPoint p = p0;
  for (std::size_t k = 0; k < n; ++k) {
    MapPoint next = step(map, p);
    if (!std::isfinite(next.x) || !std::isfinite(next.y)) {
      throw NonFiniteEscape(k, p);
    }
    out.push_back(next);
    p = next;
  }
  return out;
}

}  // namespace chaosde
