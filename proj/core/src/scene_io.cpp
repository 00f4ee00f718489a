#include "kakeya/scene_io.hpp"

#include "kakeya/errors.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace kakeya {

using nlohmann::json;

Scene scene_from_json(const std::string& text) {
    try {
        const json j = json::parse(text);
        std::vector<std::vector<Vec2>> polylines;
        for (const auto& pl : j.at("polylines")) {
            std::vector<Vec2> pts;
            for (const auto& p : pl) {
                if (!p.is_array() || p.size() != 2) throw InputError("vertex must be [x, y]");
                pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
            }
            polylines.push_back(std::move(pts));
        }
        std::vector<bool> closed(polylines.size(), false);
        if (j.contains("closed")) {
            const auto& c = j.at("closed");
            if (c.size() != polylines.size()) throw InputError("closed flags do not match polylines");
            for (std::size_t i = 0; i < c.size(); ++i) closed[i] = c.at(i).get<bool>();
        }
        return Scene(std::move(polylines), std::move(closed));
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        throw InputError(std::string("bad scene: ") + e.what());
    }
}

std::string scene_to_json(const Scene& scene) {
    json j;
    j["polylines"] = json::array();
    for (const auto& pl : scene.polylines()) {
        json a = json::array();
        for (const Vec2& p : pl) a.push_back({p.x, p.y});
        j["polylines"].push_back(a);
    }
    j["closed"] = scene.closed();
    return j.dump();
}

Scene load_scene(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open scene file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return scene_from_json(ss.str());
}

namespace {
std::vector<double> parse_numbers(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            throw InputError("bad number '" + tok + "'");
        }
        if (used != tok.size()) throw InputError("bad number '" + tok + "'");
        out.push_back(v);
    }
    return out;
}
}  // namespace

Scene scene_from_generator(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const auto args = colon == std::string::npos ? std::vector<double>{} : parse_numbers(spec.substr(colon + 1));
    try {
        if (kind == "circle") {
            if (args.empty() || args.size() > 2) throw InputError("circle:r[,n]");
            return make_circle(args[0], args.size() > 1 ? static_cast<int>(args[1]) : 720);
        }
        if (kind == "segment") {
            if (args.size() != 1) throw InputError("segment:len");
            return make_segment(args[0]);
        }
        if (kind == "convex") {
            if (args.size() != 5) throw InputError("convex:a,b,c,span,n");
            return make_convex_graph(args[0], args[1], args[2], args[3], static_cast<int>(args[4]));
        }
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    throw InputError("unknown generator '" + kind + "'");
}

}  // namespace kakeya
