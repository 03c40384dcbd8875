#pragma once

// Triangulation gluing data: arcs (pending or not), boundary segments and
// clockwise-ordered triangles. Only local rules are checked; whether the
// datum is realised by an actual surface is not.

#include "json.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace orbiclan::surface {

struct Arc {
    std::string label;
    bool pending = false;
    bool operator==(const Arc&) const = default;
};

/// Three side labels in clockwise order. A side is an arc or a boundary segment.
using Triangle = std::array<std::string, 3>;

struct TriangulationData {
    std::vector<Arc> arcs;
    std::vector<std::string> boundary;
    std::vector<Triangle> triangles;
    std::optional<nlohmann::json> meta;

    bool operator==(const TriangulationData&) const = default;

    /// Index into arcs, or nullopt.
    std::optional<std::size_t> arc_index(std::string_view label) const;
    bool is_arc(std::string_view label) const { return arc_index(label).has_value(); }
    bool is_pending(std::string_view label) const;
    bool is_boundary(std::string_view label) const;
    std::vector<std::string> pending_arcs() const;
};

/// Parses the JSON interchange format. Throws ParseError naming the JSON
/// path of a malformed field, SchemaError on duplicate or unknown labels.
TriangulationData parse_triangulation(std::string_view document);
TriangulationData triangulation_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TriangulationData& t);

struct Violation {
    std::string rule;
    std::string message;
    std::vector<std::string> labels;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;
    std::vector<Violation> warnings;   // advisory only, never affect ok

    nlohmann::json to_json() const;
};

ValidationReport validate(const TriangulationData& t);

struct TriangleCensus {
    std::size_t type_one = 0;          // three non-pending arc sides
    std::size_t type_two = 0;          // exactly one pending side
    std::size_t type_three = 0;        // two pending sides
    std::size_t boundary_incident = 0; // at least one boundary side (counted only here)

    bool operator==(const TriangleCensus&) const = default;
    nlohmann::json to_json() const;
};

/// Throws PreconditionError if validate(t) is not ok.
TriangleCensus triangle_census(const TriangulationData& t);

/// Expected arc count 6g + 3b + 3p + c + 2|O| - 6 from the optional meta
/// block (p punctures, c boundary marked points), if it has enough fields.
std::optional<long> expected_arc_count(const nlohmann::json& meta);

} // namespace orbiclan::surface
