#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chaosde {

struct MapPoint {
  double x = 0.0;
  double y = 0.0;
};

struct TinkerbellParams {
  double a = 0.9;
  double b = -0.6013;
  double c = 2.0;
  double d = 0.5;
};

enum class MapFamily { Gingerbread, Tinkerbell };

struct ChaoticMap {
  MapFamily family = MapFamily::Gingerbread;
  TinkerbellParams params{};  // used only by Tinkerbell
};

ChaoticMap gingerbread_map();
ChaoticMap tinkerbell_map(TinkerbellParams params = {});
ChaoticMap map_from_name(std::string_view name);
std::string map_name(const ChaoticMap& map);

/// Starting point the map is iterated from unless the caller supplies one.
MapPoint default_initial_point(const ChaoticMap& map);

MapPoint gingerbread_step(MapPoint p);
MapPoint tinkerbell_step(MapPoint p, const TinkerbellParams& q);
MapPoint step(const ChaoticMap& map, MapPoint p);

/// Thrown when an orbit leaves the representable range; `index` is the
/// zero-based position in the output stream where the escape happened.
struct NonFiniteEscape : std::runtime_error {
  NonFiniteEscape(std::size_t index, MapPoint from);
  std::size_t index;
};

/// First n iterates of the map from p0. p0 itself is not emitted: element 0
/// is step(p0), element k is the (k+1)-fold application.
std::vector<MapPoint> iterate(const ChaoticMap& map, MapPoint p0, std::size_t n);

}  // namespace chaosde
