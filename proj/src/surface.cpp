#include "orbiclan/surface.hpp"

#include "orbiclan/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace orbiclan::surface {

using nlohmann::json;

std::optional<std::size_t> TriangulationData::arc_index(std::string_view label) const
{
    for (std::size_t k = 0; k < arcs.size(); ++k)
        if (arcs[k].label == label)
            return k;
    return std::nullopt;
}

bool TriangulationData::is_pending(std::string_view label) const
{
    auto k = arc_index(label);
    return k && arcs[*k].pending;
}

bool TriangulationData::is_boundary(std::string_view label) const
{
    return std::find(boundary.begin(), boundary.end(), label) != boundary.end();
}

std::vector<std::string> TriangulationData::pending_arcs() const
{
    std::vector<std::string> out;
    for (const auto& a : arcs)
        if (a.pending)
            out.push_back(a.label);
    return out;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

const json& require(const json& obj, const std::string& key, const std::string& path)
{
    if (!obj.contains(key))
        throw ParseError(path + "/" + key + ": missing field");
    return obj.at(key);
}

std::string require_label(const json& v, const std::string& path)
{
    if (!v.is_string())
        throw ParseError(path + ": expected string");
    auto s = v.get<std::string>();
    if (s.empty())
        throw ParseError(path + ": label must be nonempty");
    return s;
}

} // namespace

TriangulationData triangulation_from_json(const json& j)
{
    if (!j.is_object())
        throw ParseError(": expected object at document root");
    TriangulationData t;
    std::set<std::string> seen;
    auto claim = [&](const std::string& label, const std::string& path) {
        if (!seen.insert(label).second)
            throw SchemaError(path + ": duplicate label \"" + label + "\"");
    };

    const auto& arcs = require(j, "arcs", "");
    if (!arcs.is_array())
        throw ParseError("/arcs: expected array");
    for (std::size_t k = 0; k < arcs.size(); ++k) {
        const std::string path = "/arcs/" + std::to_string(k);
        const auto& a = arcs[k];
        if (!a.is_object())
            throw ParseError(path + ": expected object");
        Arc arc;
        arc.label = require_label(require(a, "label", path), path + "/label");
        const auto& pending = require(a, "pending", path);
        if (!pending.is_boolean())
            throw ParseError(path + "/pending: expected boolean");
        arc.pending = pending.get<bool>();
        claim(arc.label, path + "/label");
        t.arcs.push_back(std::move(arc));
    }

    const auto& boundary = require(j, "boundary", "");
    if (!boundary.is_array())
        throw ParseError("/boundary: expected array");
    for (std::size_t k = 0; k < boundary.size(); ++k) {
        const std::string path = "/boundary/" + std::to_string(k);
        auto label = require_label(boundary[k], path);
        claim(label, path);
        t.boundary.push_back(std::move(label));
    }

    const auto& triangles = require(j, "triangles", "");
    if (!triangles.is_array())
        throw ParseError("/triangles: expected array");
    for (std::size_t k = 0; k < triangles.size(); ++k) {
        const std::string path = "/triangles/" + std::to_string(k);
        const auto& tri = triangles[k];
        if (!tri.is_array() || tri.size() != 3)
            throw ParseError(path + ": expected array of three labels");
        Triangle sides;
        for (std::size_t s = 0; s < 3; ++s) {
            sides[s] = require_label(tri[s], path + "/" + std::to_string(s));
            if (!seen.count(sides[s]))
                throw SchemaError(path + "/" + std::to_string(s) + ": unknown side \"" + sides[s] + "\"");
        }
        t.triangles.push_back(std::move(sides));
    }

    if (j.contains("meta")) {
        if (!j.at("meta").is_object())
            throw ParseError("/meta: expected object");
        t.meta = j.at("meta");
    }
    return t;
}

TriangulationData parse_triangulation(std::string_view document)
{
    json j;
    try {
        j = json::parse(document);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string(": invalid JSON: ") + e.what());
    }
    return triangulation_from_json(j);
}

json to_json(const TriangulationData& t)
{
    json arcs = json::array();
    for (const auto& a : t.arcs)
        arcs.push_back(json{{"label", a.label}, {"pending", a.pending}});
    json tris = json::array();
    for (const auto& tri : t.triangles)
        tris.push_back(json::array({tri[0], tri[1], tri[2]}));
    json j{{"arcs", arcs}, {"boundary", t.boundary}, {"triangles", tris}};
    if (t.meta)
        j["meta"] = *t.meta;
    return j;
}

// ---------------------------------------------------------------------------
// Validation

json ValidationReport::to_json() const
{
    auto render = [](const std::vector<Violation>& vs) {
        json out = json::array();
        for (const auto& v : vs)
            out.push_back(json{{"rule", v.rule}, {"message", v.message}, {"labels", v.labels}});
        return out;
    };
    return json{{"ok", ok}, {"violations", render(violations)}, {"warnings", render(warnings)}};
}

std::optional<long> expected_arc_count(const json& meta)
{
    auto field = [&](const char* key) -> std::optional<long> {
        if (meta.contains(key) && meta.at(key).is_number_integer())
            return meta.at(key).get<long>();
        return std::nullopt;
    };
    auto g = field("genus");
    auto b = field("boundary_components");
    auto m = field("marked_points");
    auto o = field("orbifold_points");
    if (!g || !b || !m || !o)
        return std::nullopt;
    // Under the standing hypotheses punctures occur only on closed surfaces.
    long p = field("punctures").value_or(*b == 0 ? *m : 0);
    return 6 * *g + 3 * *b + 3 * p + (*m - p) + 2 * *o - 6;
}

ValidationReport validate(const TriangulationData& t)
{
    ValidationReport r;
    auto violate = [&](std::string rule, std::string msg, std::vector<std::string> labels) {
        r.violations.push_back({std::move(rule), std::move(msg), std::move(labels)});
    };

    std::map<std::string, int> label_uses;
    for (const auto& a : t.arcs)
        ++label_uses[a.label];
    for (const auto& b : t.boundary)
        ++label_uses[b];
    for (const auto& [label, uses] : label_uses) {
        if (label.empty())
            violate("empty-label", "labels must be nonempty", {label});
        if (uses > 1) {
            if (t.is_pending(label) && t.is_boundary(label))
                violate("pending-boundary", "pending arc \"" + label + "\" coincides with a boundary segment",
                        {label});
            else
                violate("duplicate-label", "label \"" + label + "\" is declared " + std::to_string(uses) + " times",
                        {label});
        }
    }

    std::map<std::string, int> occurrences;
    for (std::size_t k = 0; k < t.triangles.size(); ++k) {
        const auto& tri = t.triangles[k];
        int pending = 0;
        for (const auto& side : tri) {
            if (!label_uses.count(side)) {
                violate("unknown-side", "triangle " + std::to_string(k) + " has undeclared side \"" + side + "\"",
                        {side});
                continue;
            }
            ++occurrences[side];
            if (t.is_pending(side))
                ++pending;
        }
        if (pending == 3)
            violate("triangle-type", "triangle " + std::to_string(k) + " has three pending sides",
                    {tri[0], tri[1], tri[2]});
    }

    for (const auto& a : t.arcs) {
        int n = occurrences.count(a.label) ? occurrences.at(a.label) : 0;
        if (a.pending && n != 1)
            violate("pending-multiplicity",
                    "pending arc \"" + a.label + "\" occurs " + std::to_string(n) + " times (expected exactly once)",
                    {a.label});
        if (!a.pending && (n < 1 || n > 2))
            violate("arc-multiplicity",
                    "arc \"" + a.label + "\" occurs " + std::to_string(n) + " times (expected once or twice)",
                    {a.label});
    }
    for (const auto& b : t.boundary) {
        int n = occurrences.count(b) ? occurrences.at(b) : 0;
        if (n != 1)
            violate("boundary-multiplicity",
                    "boundary segment \"" + b + "\" occurs " + std::to_string(n) + " times (expected exactly once)",
                    {b});
    }

    if (t.meta) {
        if (auto expected = expected_arc_count(*t.meta); expected && *expected != static_cast<long>(t.arcs.size()))
            r.warnings.push_back({"arc-count",
                                  "meta predicts " + std::to_string(*expected) + " arcs but " +
                                      std::to_string(t.arcs.size()) + " are declared",
                                  {}});
    }
    r.ok = r.violations.empty();
    return r;
}

json TriangleCensus::to_json() const
{
    return json{{"typeI", type_one},
                {"typeII", type_two},
                {"typeIII", type_three},
                {"boundary_incident", boundary_incident}};
}

TriangleCensus triangle_census(const TriangulationData& t)
{
    if (!validate(t).ok)
        throw PreconditionError("triangle census: triangulation data does not validate");
    TriangleCensus c;
    for (const auto& tri : t.triangles) {
        bool touches_boundary = false;
        int pending = 0;
        for (const auto& side : tri) {
            if (t.is_boundary(side))
                touches_boundary = true;
            else if (t.is_pending(side))
                ++pending;
        }
        if (touches_boundary)
            ++c.boundary_incident;
        else if (pending == 0)
            ++c.type_one;
        else if (pending == 1)
            ++c.type_two;
        else
            ++c.type_three;
    }
    return c;
}

} // namespace orbiclan::surface
