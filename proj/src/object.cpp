#include "gripkit/object.hpp"

#include <cmath>

#include "gripkit/error.hpp"

namespace gripkit {

void validate_object(const ObjectSpec& obj) {
  if (const auto* c = std::get_if<Cylinder>(&obj)) {
    if (!(c->radius > 0.0) || !std::isfinite(c->radius)) {
      throw Error(ErrorCode::kMalformedInput, "cylinder.radius_mm must be > 0");
    }
    if (!c->center.finite()) throw Error(ErrorCode::kMalformedInput, "cylinder.center_mm must be finite");
    return;
  }
  const auto& poly = std::get<Prism>(obj).vertices;
  if (poly.size() < 3) throw Error(ErrorCode::kMalformedInput, "prism needs at least 3 vertices");
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (!poly[i].finite()) throw Error(ErrorCode::kMalformedInput, "prism vertex is not finite");
    if (geom::distance(poly[i], poly[(i + 1) % poly.size()]) < geom::kLengthTol) {
      throw Error(ErrorCode::kDegenerateInput, "prism has a zero-length edge at vertex " +
                                                   std::to_string(i));
    }
  }
  if (!(geom::signed_area(poly) > 0.0)) {
    throw Error(ErrorCode::kDegenerateInput, "prism vertices must be counterclockwise");
  }
  if (!geom::is_simple(poly)) throw Error(ErrorCode::kDegenerateInput, "prism outline self-intersects");
}

}  // namespace gripkit
