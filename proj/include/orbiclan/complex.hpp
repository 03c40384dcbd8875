#pragma once

// The CW complex of a triangulation (arcs as 0-cells, clockwise arrows
// inside triangles as 1-cells, all-arc triangles as 2-cells), its F2
// boundary maps, and the 1-cocycles that colour the triangulation.

#include "orbiclan/surface.hpp"

#include "json.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace orbiclan::complex {

struct Arrow {
    std::string id;          // "t<triangle>.<slot>"
    std::size_t tail = 0;    // vertex (arc) index
    std::size_t head = 0;
    std::size_t triangle = 0;
    std::size_t slot = 0;    // sides (slot, slot + 1 mod 3) of the triangle
};

/// A 3-cycle of arrows in traversal order (head of each is the tail of the
/// next), rotated so the least arrow index comes first.
struct TwoCell {
    std::array<std::size_t, 3> arrows{};
    std::size_t triangle = 0;
};

struct CWComplex {
    std::vector<std::string> vertices;   // arc labels, declaration order
    std::vector<bool> pending;           // per vertex
    std::vector<Arrow> arrows;
    std::vector<TwoCell> two_cells;

    std::optional<std::size_t> arrow_index(std::string_view id) const;
    std::optional<std::size_t> vertex_index(std::string_view label) const;
    nlohmann::json to_json() const;
};

/// Arrow k -> j for every clockwise-consecutive pair of arc sides (k, j).
/// Throws PreconditionError on data that does not validate.
CWComplex build_cw_complex(const surface::TriangulationData& t);

class F2Matrix {
public:
    F2Matrix() = default;
    F2Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), bits_(rows * cols, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool get(std::size_t r, std::size_t c) const { return bits_[r * cols_ + c] != 0; }
    void set(std::size_t r, std::size_t c, bool v) { bits_[r * cols_ + c] = v ? 1 : 0; }
    void flip(std::size_t r, std::size_t c) { bits_[r * cols_ + c] ^= 1; }

    F2Matrix transpose() const;
    F2Matrix operator*(const F2Matrix& rhs) const;
    bool is_zero() const;
    bool operator==(const F2Matrix&) const = default;

    std::size_t rank() const;
    /// Basis of {x : M x = 0} from the reduced echelon form, one vector per free column.
    std::vector<std::vector<std::uint8_t>> nullspace() const;

    /// Dense grid of 0/1, one row per line, entries separated by spaces.
    std::string to_text() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint8_t> bits_;
};

struct BoundaryMatrices {
    F2Matrix d2;   // |X1| x |X2|
    F2Matrix d1;   // |X0| x |X1|
};

BoundaryMatrices boundary_matrices(const CWComplex& c);

/// Bit per arrow, indexed like CWComplex::arrows.
struct Cocycle {
    std::vector<std::uint8_t> xi;
    bool operator==(const Cocycle&) const = default;
    auto operator<=>(const Cocycle&) const = default;
};

nlohmann::json cocycle_to_json(const CWComplex& c, const Cocycle& xi);
Cocycle cocycle_from_json(const CWComplex& c, const nlohmann::json& j);

/// F2 basis of ker(d2^T); size |X1| - rank d2.
std::vector<Cocycle> cocycle_basis(const CWComplex& c);

/// All 2^k cocycles (k = kernel dimension), ordered by the binary expansion
/// of their index over cocycle_basis. Throws RefusalError if 2^k > cap.
std::vector<Cocycle> enumerate_cocycles(const CWComplex& c, std::size_t cap);

bool validate_cocycle(const CWComplex& c, const Cocycle& xi);

/// Map form keyed by arrow id. Throws InputError when an arrow is missing.
bool validate_cocycle(const CWComplex& c, const std::map<std::string, int>& xi);

} // namespace orbiclan::complex
