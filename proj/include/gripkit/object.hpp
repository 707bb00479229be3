#pragma once

#include <variant>

#include "gripkit/geom.hpp"

namespace gripkit {

struct Cylinder {
  double radius = 0.0;
  geom::Point2 center;
  bool operator==(const Cylinder&) const = default;
};

// Right prism given by its counterclockwise cross-section.
struct Prism {
  geom::Polygon vertices;
  bool operator==(const Prism&) const = default;
};

using ObjectSpec = std::variant<Cylinder, Prism>;

// Nonpositive radius or too few vertices -> kMalformedInput; clockwise,
// self-intersecting or zero-length-edge polygons -> kDegenerateInput.
void validate_object(const ObjectSpec& obj);

}  // namespace gripkit
