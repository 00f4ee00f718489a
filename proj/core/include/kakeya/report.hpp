#pragma once

#include "kakeya/blind.hpp"
#include "kakeya/limits.hpp"
#include "kakeya/rotation_plan.hpp"
#include "kakeya/sweep.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace kakeya {

// JSON views of the run objects. Wall-clock timings are left out so that
// equal inputs give byte-identical documents.
nlohmann::json to_json(const AreaReport& r);
nlohmann::json to_json(const Deletion& d);
nlohmann::json to_json(const SweepPlan& p);
nlohmann::json to_json(const BlindTree& t);
nlohmann::json to_json(const TranslationPlan& p);
nlohmann::json to_json(const RotationPlan& p);
nlohmann::json to_json(const BesicovitchRun& r);
nlohmann::json to_json(const NikodymCover& c);
nlohmann::json to_json(const RatioReport& r);

// level,eps,piece_eps,parents,pieces,area,area_coarse,uncertainty,budget
std::string levels_csv(const BesicovitchRun& run);
// Single row variant for one plan.
std::string area_csv(const AreaReport& r, double eps);

struct SvgOptions {
    int frames = 60;
    double width = 800.0;  // pixels
};
// Scene positions at evenly spaced path parameters; the deleted part of each
// frame is drawn dashed in a second colour, the path of the origin as a line.
std::string path_svg(const Scene& scene, const SweepPlan& plan, const SvgOptions& opt = {});

// Writes text to a file, throwing std::runtime_error on failure.
void write_file(const std::string& path, const std::string& text);

}  // namespace kakeya
