#include "heatcontent/shape_json.hpp"

#include <fstream>

namespace heatcontent::geometry {

namespace {

using nlohmann::json;

const json& field(const json& doc, const char* name, const std::string& where) {
    if (!doc.contains(name)) throw InvalidInput(where + ": missing field \"" + name + "\"");
    return doc.at(name);
}

double number(const json& doc, const char* name, const std::string& where) {
    const json& v = field(doc, name, where);
    if (!v.is_number()) throw InvalidInput(where + ": field \"" + name + "\" must be a number");
    return v.get<double>();
}

std::vector<double> vec(const json& doc, const char* name, const std::string& where, std::size_t m) {
    const json& v = field(doc, name, where);
    if (!v.is_array()) throw InvalidInput(where + ": field \"" + name + "\" must be an array");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) throw InvalidInput(where + ": field \"" + name + "\" must hold numbers");
        out.push_back(e.get<double>());
    }
    if (out.size() != m)
        throw InvalidInput(where + ": field \"" + name + "\" has " + std::to_string(out.size()) +
                           " entries, expected m = " + std::to_string(m));
    return out;
}

Shape parse(const json& doc, const std::string& where) {
    if (!doc.is_object()) throw InvalidInput(where + ": shape must be a JSON object");
    const json& kind_v = field(doc, "kind", where);
    if (!kind_v.is_string()) throw InvalidInput(where + ": field \"kind\" must be a string");
    const std::string kind = kind_v.get<std::string>();
    const json& m_v = field(doc, "m", where);
    if (!m_v.is_number_integer() || m_v.get<int>() < 1)
        throw InvalidInput(where + ": field \"m\" must be a positive integer");
    const int m = m_v.get<int>();
    const auto mm = static_cast<std::size_t>(m);

    if (kind == "ball") return Shape::ball(vec(doc, "center", where, mm), number(doc, "radius", where));
    if (kind == "box") {
        std::vector<double> corner = doc.contains("corner") ? vec(doc, "corner", where, mm) : std::vector<double>(mm, 0.0);
        return Shape::box(vec(doc, "lengths", where, mm), corner);
    }
    if (kind == "stadium")
        return Shape::stadium(vec(doc, "start", where, mm), vec(doc, "end", where, mm), number(doc, "radius", where));
    if (kind == "horn") {
        const double scale = doc.contains("scale") ? number(doc, "scale", where) : 1.0;
        return Shape::horn(m, number(doc, "alpha", where), scale);
    }
    if (kind == "union") {
        const json& members = field(doc, "members", where);
        if (!members.is_array()) throw InvalidInput(where + ": field \"members\" must be an array");
        std::vector<Shape> parsed;
        for (std::size_t i = 0; i < members.size(); ++i) {
            Shape s = parse(members[i], where + ".members[" + std::to_string(i) + "]");
            if (s.dimension() != m) throw InvalidInput(where + ": member dimension differs from m");
            parsed.push_back(std::move(s));
        }
        return Shape::disjoint_union(std::move(parsed));
    }
    throw InvalidInput(where + ": unknown kind \"" + kind + "\" (expected ball|box|stadium|horn|union)");
}

}  // namespace

json shape_to_json(const Shape& shape) {
    json doc;
    doc["m"] = shape.dimension();
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Ball>) {
                doc["kind"] = "ball";
                doc["center"] = s.center;
                doc["radius"] = s.radius;
            } else if constexpr (std::is_same_v<T, Box>) {
                doc["kind"] = "box";
                doc["lengths"] = s.lengths;
                doc["corner"] = s.corner;
            } else if constexpr (std::is_same_v<T, Stadium>) {
                doc["kind"] = "stadium";
                doc["start"] = s.start;
                doc["end"] = s.end;
                doc["radius"] = s.radius;
            } else if constexpr (std::is_same_v<T, Horn>) {
                doc["kind"] = "horn";
                doc["alpha"] = s.alpha;
                doc["scale"] = s.scale;
            } else {
                doc["kind"] = "union";
                doc["members"] = json::array();
                for (const auto& member : s.members) doc["members"].push_back(shape_to_json(member));
            }
        },
        shape.variant());
    return doc;
}

Shape shape_from_json(const json& doc) { return parse(doc, "shape"); }

Shape load_shape_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open shape file " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw InvalidInput(path + ": not valid JSON (" + e.what() + ")");
    }
    return shape_from_json(doc);
}

}  // namespace heatcontent::geometry
