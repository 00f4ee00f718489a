#pragma once

#include "kakeya/geom.hpp"

#include <string>

namespace kakeya {

// {"polylines": [[[x,y],...],...], "closed": [bool,...]}
// Malformed input raises InputError.
Scene scene_from_json(const std::string& text);
std::string scene_to_json(const Scene& scene);
Scene load_scene(const std::string& path);

// "circle:r,n" | "segment:len" | "convex:a,b,c,span,n"
Scene scene_from_generator(const std::string& spec);

}  // namespace kakeya
