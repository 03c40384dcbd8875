#include "orbiclan/complex.hpp"

#include "orbiclan/errors.hpp"

#include <algorithm>
#include <sstream>

namespace orbiclan::complex {

using nlohmann::json;

std::optional<std::size_t> CWComplex::arrow_index(std::string_view id) const
{
    for (std::size_t k = 0; k < arrows.size(); ++k)
        if (arrows[k].id == id)
            return k;
    return std::nullopt;
}

std::optional<std::size_t> CWComplex::vertex_index(std::string_view label) const
{
    for (std::size_t k = 0; k < vertices.size(); ++k)
        if (vertices[k] == label)
            return k;
    return std::nullopt;
}

json CWComplex::to_json() const
{
    json arr = json::array();
    for (const auto& a : arrows)
        arr.push_back(json{{"id", a.id},
                           {"tail", vertices[a.tail]},
                           {"head", vertices[a.head]},
                           {"triangle", a.triangle},
                           {"slot", a.slot}});
    json cells = json::array();
    for (const auto& c : two_cells)
        cells.push_back(json::array({arrows[c.arrows[0]].id, arrows[c.arrows[1]].id, arrows[c.arrows[2]].id}));
    return json{{"vertices", vertices}, {"arrows", arr}, {"two_cells", cells}};
}

CWComplex build_cw_complex(const surface::TriangulationData& t)
{
    if (!surface::validate(t).ok)
        throw PreconditionError("CW complex: triangulation data does not validate");
    CWComplex c;
    for (const auto& a : t.arcs) {
        c.vertices.push_back(a.label);
        c.pending.push_back(a.pending);
    }
    for (std::size_t k = 0; k < t.triangles.size(); ++k) {
        const auto& tri = t.triangles[k];
        std::array<std::optional<std::size_t>, 3> slot_arrow;
        for (std::size_t s = 0; s < 3; ++s) {
            auto from = t.arc_index(tri[s]);
            auto to = t.arc_index(tri[(s + 1) % 3]);
            if (!from || !to)
                continue;
            slot_arrow[s] = c.arrows.size();
            c.arrows.push_back(Arrow{"t" + std::to_string(k) + "." + std::to_string(s), *from, *to, k, s});
        }
        if (slot_arrow[0] && slot_arrow[1] && slot_arrow[2])
            // Slot 0 carries the least arrow index of the triangle.
            c.two_cells.push_back(TwoCell{{*slot_arrow[0], *slot_arrow[1], *slot_arrow[2]}, k});
    }
    return c;
}

// ---------------------------------------------------------------------------

F2Matrix F2Matrix::transpose() const
{
    F2Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t.set(c, r, get(r, c));
    return t;
}

F2Matrix F2Matrix::operator*(const F2Matrix& rhs) const
{
    if (cols_ != rhs.rows_)
        throw InputError("F2 product: dimension mismatch");
    F2Matrix out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k)
            if (get(r, k))
                for (std::size_t c = 0; c < rhs.cols_; ++c)
                    if (rhs.get(k, c))
                        out.flip(r, c);
    return out;
}

bool F2Matrix::is_zero() const
{
    return std::all_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b == 0; });
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<std::vector<std::uint8_t>>& m, std::size_t cols)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
        std::size_t p = row;
        while (p < m.size() && !m[p][c])
            ++p;
        if (p == m.size())
            continue;
        std::swap(m[row], m[p]);
        for (std::size_t r = 0; r < m.size(); ++r)
            if (r != row && m[r][c])
                for (std::size_t k = 0; k < cols; ++k)
                    m[r][k] ^= m[row][k];
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

} // namespace

std::size_t F2Matrix::rank() const
{
    std::vector<std::vector<std::uint8_t>> m(rows_, std::vector<std::uint8_t>(cols_));
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            m[r][c] = get(r, c);
    return rref(m, cols_).size();
}

std::vector<std::vector<std::uint8_t>> F2Matrix::nullspace() const
{
    std::vector<std::vector<std::uint8_t>> m(rows_, std::vector<std::uint8_t>(cols_));
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            m[r][c] = get(r, c);
    auto pivots = rref(m, cols_);
    std::vector<std::vector<std::uint8_t>> out;
    for (std::size_t f = 0; f < cols_; ++f) {
        if (std::find(pivots.begin(), pivots.end(), f) != pivots.end())
            continue;
        std::vector<std::uint8_t> x(cols_, 0);
        x[f] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k)
            x[pivots[k]] = m[k][f];
        out.push_back(std::move(x));
    }
    return out;
}

std::string F2Matrix::to_text() const
{
    std::ostringstream os;
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c)
            os << (c ? " " : "") << (get(r, c) ? 1 : 0);
        os << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------

BoundaryMatrices boundary_matrices(const CWComplex& c)
{
    BoundaryMatrices b{F2Matrix(c.arrows.size(), c.two_cells.size()), F2Matrix(c.vertices.size(), c.arrows.size())};
    for (std::size_t k = 0; k < c.two_cells.size(); ++k)
        for (std::size_t a : c.two_cells[k].arrows)
            b.d2.flip(a, k);
    for (std::size_t k = 0; k < c.arrows.size(); ++k) {
        // h - t = h + t over F2; a loop gives a zero column.
        b.d1.flip(c.arrows[k].head, k);
        b.d1.flip(c.arrows[k].tail, k);
    }
    return b;
}

json cocycle_to_json(const CWComplex& c, const Cocycle& xi)
{
    json m = json::object();
    for (std::size_t k = 0; k < c.arrows.size(); ++k)
        m[c.arrows[k].id] = static_cast<int>(xi.xi.at(k));
    return json{{"xi", m}};
}

Cocycle cocycle_from_json(const CWComplex& c, const json& j)
{
    if (!j.is_object() || !j.contains("xi") || !j.at("xi").is_object())
        throw ParseError("/xi: expected object mapping arrow ids to 0|1");
    Cocycle out;
    out.xi.assign(c.arrows.size(), 0);
    for (std::size_t k = 0; k < c.arrows.size(); ++k) {
        const auto& id = c.arrows[k].id;
        if (!j.at("xi").contains(id))
            throw InputError("/xi/" + id + ": missing arrow");
        const auto& v = j.at("xi").at(id);
        if (!v.is_number_integer() || (v.get<int>() != 0 && v.get<int>() != 1))
            throw ParseError("/xi/" + id + ": expected 0 or 1");
        out.xi[k] = static_cast<std::uint8_t>(v.get<int>());
    }
    return out;
}

std::vector<Cocycle> cocycle_basis(const CWComplex& c)
{
    auto d2t = boundary_matrices(c).d2.transpose();
    std::vector<Cocycle> out;
    for (auto& v : d2t.nullspace())
        out.push_back(Cocycle{std::move(v)});
    return out;
}

std::vector<Cocycle> enumerate_cocycles(const CWComplex& c, std::size_t cap)
{
    auto basis = cocycle_basis(c);
    const std::size_t k = basis.size();
    if (k >= 63 || (std::size_t{1} << k) > cap)
        throw RefusalError("cocycle enumeration: kernel dimension " + std::to_string(k) + " gives 2^" +
                           std::to_string(k) + " cocycles, above the cap of " + std::to_string(cap));
    std::vector<Cocycle> out;
    for (std::size_t m = 0; m < (std::size_t{1} << k); ++m) {
        Cocycle xi{std::vector<std::uint8_t>(c.arrows.size(), 0)};
        for (std::size_t b = 0; b < k; ++b)
            if ((m >> b) & 1)
                for (std::size_t a = 0; a < c.arrows.size(); ++a)
                    xi.xi[a] ^= basis[b].xi[a];
        out.push_back(std::move(xi));
    }
    return out;
}

bool validate_cocycle(const CWComplex& c, const Cocycle& xi)
{
    if (xi.xi.size() != c.arrows.size())
        throw InputError("cocycle has " + std::to_string(xi.xi.size()) + " entries for " +
                         std::to_string(c.arrows.size()) + " arrows");
    for (const auto& cell : c.two_cells) {
        int sum = 0;
        for (std::size_t a : cell.arrows)
            sum += xi.xi[a] & 1;
        if (sum % 2 != 0)
            return false;
    }
    return true;
}

bool validate_cocycle(const CWComplex& c, const std::map<std::string, int>& xi)
{
    Cocycle v{std::vector<std::uint8_t>(c.arrows.size(), 0)};
    for (std::size_t k = 0; k < c.arrows.size(); ++k) {
        auto it = xi.find(c.arrows[k].id);
        if (it == xi.end())
            throw InputError("cocycle: missing value for arrow " + c.arrows[k].id);
        v.xi[k] = static_cast<std::uint8_t>(it->second & 1);
    }
    return validate_cocycle(c, v);
}

} // namespace orbiclan::complex
