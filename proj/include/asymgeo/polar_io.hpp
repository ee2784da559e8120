#pragma once

// Polytope files: {"dim": d, "kind": "V" | "H", "rows": [[...], ...]}.
// V rows are generators (the hull always includes the origin), H rows are
// functionals of the inequalities <a, x> <= 1.

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "measures_io.hpp"
#include "polar.hpp"

namespace asymgeo {

using Polytope = std::variant<VPolytope, HPolytope>;

inline Polytope parse_polytope(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("dim") || !j.contains("kind") || !j.contains("rows"))
        throw ParseError("polytope JSON needs \"dim\", \"kind\" and \"rows\"");
    if (!j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() == 0)
        throw ParseError("\"dim\" must be a positive integer");
    if (!j["kind"].is_string())
        throw ParseError("\"kind\" must be \"V\" or \"H\"");
    if (!j["rows"].is_array())
        throw ParseError("\"rows\" must be an array of arrays");

    const auto dim = j["dim"].get<std::size_t>();
    const auto kind = j["kind"].get<std::string>();
    std::vector<Point> rows;
    for (const auto& r : j["rows"]) {
        if (!r.is_array())
            throw ParseError("\"rows\" must be an array of arrays");
        Point p;
        for (const auto& e : r) {
            if (!e.is_number())
                throw ParseError("polytope coordinates must be numbers");
            p.push_back(e.get<double>());
        }
        rows.push_back(std::move(p));
    }
    if (kind == "V")
        return VPolytope(dim, std::move(rows));
    if (kind == "H")
        return HPolytope(dim, std::move(rows));
    throw ParseError("\"kind\" must be \"V\" or \"H\"");
}

inline Polytope load_polytope(const std::string& path) { return parse_polytope(detail::read_file(path)); }

inline nlohmann::json to_json(const VPolytope& m)
{
    return {{"dim", m.dim()}, {"kind", "V"}, {"rows", m.vertices()}};
}

inline nlohmann::json to_json(const HPolytope& n)
{
    return {{"dim", n.dim()}, {"kind", "H"}, {"rows", n.functionals()}};
}

} // namespace asymgeo
