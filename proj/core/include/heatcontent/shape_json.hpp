#ifndef HEATCONTENT_SHAPE_JSON_HPP
#define HEATCONTENT_SHAPE_JSON_HPP

#include <nlohmann/json.hpp>
#include <string>

#include "heatcontent/geometry.hpp"

namespace heatcontent::geometry {

// Shape documents:
//   {"kind": "ball",    "m": 2, "center": [0, 0], "radius": 1}
//   {"kind": "box",     "m": 2, "lengths": [1, 1], "corner": [0, 0]}
//   {"kind": "stadium", "m": 2, "start": [0, 0], "end": [3, 0], "radius": 1}
//   {"kind": "horn",    "m": 2, "alpha": 0.75, "scale": 1}
//   {"kind": "union",   "m": 2, "members": [ ...shape documents... ]}
// "corner" and "scale" are optional (defaults: origin, 1). Parsing failures
// throw InvalidInput with a message naming the offending field.

nlohmann::json shape_to_json(const Shape& shape);
Shape shape_from_json(const nlohmann::json& doc);

Shape load_shape_file(const std::string& path);

}  // namespace heatcontent::geometry

#endif
