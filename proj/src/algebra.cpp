#include "orbiclan/algebra.hpp"

#include "orbiclan/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <tuple>

namespace orbiclan::algebra {

using nlohmann::json;

std::string to_string(DivisionType t)
{
    switch (t) {
    case DivisionType::Real:
        return "R";
    case DivisionType::Complex:
        return "C";
    case DivisionType::Quaternion:
        return "H";
    }
    return "?";
}

DivisionType parse_division_type(const std::string& s)
{
    if (s == "R")
        return DivisionType::Real;
    if (s == "C")
        return DivisionType::Complex;
    if (s == "H")
        return DivisionType::Quaternion;
    throw ParseError("unknown division type \"" + s + "\"");
}

int real_dimension(DivisionType t)
{
    switch (t) {
    case DivisionType::Real:
        return 1;
    case DivisionType::Complex:
        return 2;
    case DivisionType::Quaternion:
        return 4;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// StructureAlgebra

StructureAlgebra::StructureAlgebra(std::vector<std::string> labels, std::vector<SparseVector> products, Vector unit)
    : labels_(std::move(labels)), products_(std::move(products)), unit_(std::move(unit))
{
    const std::size_t n = labels_.size();
    if (products_.size() != n * n)
        throw InputError("structure constants: expected " + std::to_string(n * n) + " products");
    if (unit_.size() != n)
        throw InputError("structure constants: unit has wrong length");
    for (auto& p : products_) {
        std::sort(p.begin(), p.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
        for (std::size_t k = 1; k < p.size(); ++k)
            if (p[k].first == p[k - 1].first)
                throw InputError("structure constants: repeated index in a product");
        std::erase_if(p, [](const Term& t) { return t.second.is_zero(); });
        for (const auto& t : p)
            if (t.first >= n)
                throw InputError("structure constants: index out of range");
    }
    left_traces_.assign(n, Rational(0));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m)
            for (const auto& [idx, c] : product(k, m))
                if (idx == m)
                    left_traces_[k] += c;
}

Vector StructureAlgebra::basis_vector(std::size_t k) const
{
    Vector v(dim());
    v[k] = 1;
    return v;
}

Vector StructureAlgebra::multiply(const Vector& x, const Vector& y) const
{
    const std::size_t n = dim();
    Vector out(n);
    std::vector<std::size_t> ys;
    for (std::size_t j = 0; j < n; ++j)
        if (!y[j].is_zero())
            ys.push_back(j);
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i].is_zero())
            continue;
        for (std::size_t j : ys) {
            const auto& p = product(i, j);
            if (p.empty())
                continue;
            Rational f = x[i] * y[j];
            for (const auto& [k, c] : p)
                out[k] += f * c;
        }
    }
    return out;
}

Rational StructureAlgebra::trace_of_left(const Vector& x) const
{
    Rational t = 0;
    for (std::size_t k = 0; k < dim(); ++k)
        if (!x[k].is_zero())
            t += x[k] * left_traces_[k];
    return t;
}

bool StructureAlgebra::unit_is_two_sided() const
{
    for (std::size_t k = 0; k < dim(); ++k) {
        Vector b = basis_vector(k);
        if (multiply(unit_, b) != b || multiply(b, unit_) != b)
            return false;
    }
    return true;
}

std::optional<std::array<std::size_t, 3>> StructureAlgebra::associativity_failure() const
{
    const std::size_t n = dim();
    Vector lhs(n), rhs(n);
    std::vector<std::size_t> touched;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto& ij = product(i, j);
            for (std::size_t k = 0; k < n; ++k) {
                const auto& jk = product(j, k);
                if (ij.empty() && jk.empty())
                    continue;
                touched.clear();
                for (const auto& [m, c] : ij)
                    for (const auto& [r, d] : product(m, k)) {
                        lhs[r] += c * d;
                        touched.push_back(r);
                    }
                for (const auto& [m, c] : jk)
                    for (const auto& [r, d] : product(i, m)) {
                        rhs[r] += c * d;
                        touched.push_back(r);
                    }
                bool same = true;
                for (std::size_t r : touched) {
                    if (lhs[r] != rhs[r])
                        same = false;
                    lhs[r] = 0;
                    rhs[r] = 0;
                }
                if (!same)
                    return std::array<std::size_t, 3>{i, j, k};
            }
        }
    return std::nullopt;
}

StructureAlgebra StructureAlgebra::permuted(const std::vector<std::size_t>& order) const
{
    const std::size_t n = dim();
    if (order.size() != n)
        throw InputError("permutation has wrong length");
    std::vector<std::size_t> inverse(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        if (order[k] >= n || inverse[order[k]] != n)
            throw InputError("not a permutation");
        inverse[order[k]] = k;
    }
    std::vector<std::string> labels(n);
    std::vector<SparseVector> products(n * n);
    Vector unit(n);
    for (std::size_t a = 0; a < n; ++a) {
        labels[a] = labels_[order[a]];
        unit[a] = unit_[order[a]];
        for (std::size_t b = 0; b < n; ++b) {
            SparseVector p;
            for (const auto& [k, c] : product(order[a], order[b]))
                p.emplace_back(inverse[k], c);
            products[a * n + b] = std::move(p);
        }
    }
    return StructureAlgebra(std::move(labels), std::move(products), std::move(unit));
}

StructureAlgebra StructureAlgebra::matrix_algebra(std::size_t m) const
{
    const std::size_t n = dim();
    const std::size_t N = m * m * n;
    auto index = [&](std::size_t p, std::size_t q, std::size_t k) { return (p * m + q) * n + k; };
    std::vector<std::string> labels(N);
    std::vector<SparseVector> products(N * N);
    Vector unit(N);
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = 0; q < m; ++q)
            for (std::size_t k = 0; k < n; ++k)
                labels[index(p, q, k)] = "E" + std::to_string(p + 1) + std::to_string(q + 1) + "*" + labels_[k];
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t k = 0; k < n; ++k)
            unit[index(p, p, k)] = unit_[k];
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = 0; q < m; ++q)
            for (std::size_t s = 0; s < m; ++s)
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) {
                        SparseVector out;
                        for (const auto& [k, c] : product(i, j))
                            out.emplace_back(index(p, s, k), c);
                        products[index(p, q, i) * N + index(q, s, j)] = std::move(out);
                    }
    return StructureAlgebra(std::move(labels), std::move(products), std::move(unit));
}

json StructureAlgebra::to_json() const
{
    const std::size_t n = dim();
    json constants = json::array();
    for (std::size_t i = 0; i < n; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::string> coords(n, "0/1");
            for (const auto& [k, c] : product(i, j))
                coords[k] = orbiclan::to_string(c);
            row.push_back(coords);
        }
        constants.push_back(std::move(row));
    }
    std::vector<std::string> unit;
    for (const auto& u : unit_)
        unit.push_back(orbiclan::to_string(u));
    return json{{"dim", n}, {"labels", labels_}, {"unit", unit}, {"const", constants}};
}

StructureAlgebra StructureAlgebra::from_json(const json& j)
{
    if (!j.is_object() || !j.contains("dim") || !j.contains("unit") || !j.contains("const"))
        throw ParseError("structure algebra: expected object with dim, unit, const");
    const auto n = j.at("dim").get<std::size_t>();
    std::vector<std::string> labels;
    if (j.contains("labels"))
        labels = j.at("labels").get<std::vector<std::string>>();
    else
        for (std::size_t k = 0; k < n; ++k)
            labels.push_back("b" + std::to_string(k));
    if (labels.size() != n)
        throw ParseError("structure algebra: /labels has wrong length");
    Vector unit;
    for (const auto& u : j.at("unit"))
        unit.push_back(parse_rational(u.get<std::string>()));
    const auto& cst = j.at("const");
    if (cst.size() != n)
        throw ParseError("structure algebra: /const has wrong length");
    std::vector<SparseVector> products(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        if (cst[a].size() != n)
            throw ParseError("structure algebra: /const/" + std::to_string(a) + " has wrong length");
        for (std::size_t b = 0; b < n; ++b) {
            const auto& coords = cst[a][b];
            if (coords.size() != n)
                throw ParseError("structure algebra: /const/" + std::to_string(a) + "/" + std::to_string(b) +
                                 " has wrong length");
            for (std::size_t k = 0; k < n; ++k) {
                Rational c = parse_rational(coords[k].get<std::string>());
                if (!c.is_zero())
                    products[a * n + b].emplace_back(k, c);
            }
        }
    }
    return StructureAlgebra(std::move(labels), std::move(products), std::move(unit));
}

// ---------------------------------------------------------------------------
// Reference algebras

StructureAlgebra real_field()
{
    return StructureAlgebra({"1"}, {{{0, Rational(1)}}}, {Rational(1)});
}

StructureAlgebra complex_field()
{
    using SV = StructureAlgebra::SparseVector;
    std::vector<SV> p{SV{{0, 1}}, SV{{1, 1}}, SV{{1, 1}}, SV{{0, -1}}};
    return StructureAlgebra({"1", "i"}, std::move(p), {Rational(1), Rational(0)});
}

StructureAlgebra quaternions()
{
    // Index 0 = 1, 1 = i, 2 = j, 3 = k.
    static const int table[4][4][2] = {
        {{0, 1}, {1, 1}, {2, 1}, {3, 1}},
        {{1, 1}, {0, -1}, {3, 1}, {2, -1}},
        {{2, 1}, {3, -1}, {0, -1}, {1, 1}},
        {{3, 1}, {2, 1}, {1, -1}, {0, -1}},
    };
    std::vector<StructureAlgebra::SparseVector> p(16);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            p[static_cast<std::size_t>(a * 4 + b)] = {
                {static_cast<std::size_t>(table[a][b][0]), Rational(table[a][b][1])}};
    return StructureAlgebra({"1", "i", "j", "k"}, std::move(p), {Rational(1), Rational(0), Rational(0), Rational(0)});
}

StructureAlgebra full_matrix_algebra(std::size_t n)
{
    return real_field().matrix_algebra(n);
}

StructureAlgebra upper_triangular_algebra(std::size_t n)
{
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p; q < n; ++q)
            cells.emplace_back(p, q);
    const std::size_t N = cells.size();
    std::vector<std::string> labels;
    for (auto [p, q] : cells)
        labels.push_back("E" + std::to_string(p + 1) + std::to_string(q + 1));
    std::vector<StructureAlgebra::SparseVector> products(N * N);
    Vector unit(N);
    for (std::size_t a = 0; a < N; ++a) {
        if (cells[a].first == cells[a].second)
            unit[a] = 1;
        for (std::size_t b = 0; b < N; ++b) {
            if (cells[a].second != cells[b].first)
                continue;
            auto target = std::find(cells.begin(), cells.end(), std::make_pair(cells[a].first, cells[b].second));
            products[a * N + b] = {{static_cast<std::size_t>(target - cells.begin()), Rational(1)}};
        }
    }
    return StructureAlgebra(std::move(labels), std::move(products), std::move(unit));
}

StructureAlgebra direct_product(const StructureAlgebra& a, const StructureAlgebra& b)
{
    const std::size_t n = a.dim(), m = b.dim(), N = n + m;
    std::vector<std::string> labels;
    for (const auto& l : a.labels())
        labels.push_back(l + "@1");
    for (const auto& l : b.labels())
        labels.push_back(l + "@2");
    std::vector<StructureAlgebra::SparseVector> products(N * N);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            products[i * N + j] = a.product(i, j);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            StructureAlgebra::SparseVector p;
            for (const auto& [k, c] : b.product(i, j))
                p.emplace_back(k + n, c);
            products[(i + n) * N + (j + n)] = std::move(p);
        }
    Vector unit = a.unit();
    unit.insert(unit.end(), b.unit().begin(), b.unit().end());
    return StructureAlgebra(std::move(labels), std::move(products), std::move(unit));
}

// ---------------------------------------------------------------------------
// Generic helpers

Subspace product_span(const StructureAlgebra& a, const std::vector<Vector>& left, const std::vector<Vector>& right)
{
    Subspace out(a.dim());
    for (const auto& x : left)
        for (const auto& y : right) {
            if (out.dim() == a.dim())
                return out;
            out.insert(a.multiply(x, y));
        }
    return out;
}

namespace {

std::vector<Vector> nullspace_of_rows(const Subspace& rows)
{
    const std::size_t n = rows.ambient();
    std::vector<Vector> out;
    for (std::size_t f : rows.free_columns()) {
        Vector x(n);
        x[f] = 1;
        for (std::size_t k = 0; k < rows.dim(); ++k)
            x[rows.pivots()[k]] = -rows.basis()[k][f];
        out.push_back(std::move(x));
    }
    return out;
}

} // namespace

std::vector<Vector> center_basis(const StructureAlgebra& a)
{
    const std::size_t n = a.dim();
    Subspace equations(n);
    // Row (i, k): coefficient of b_k in z b_i - b_i z, as a form in z.
    std::vector<Vector> block(n, Vector(n));
    for (std::size_t i = 0; i < n && equations.dim() < n; ++i) {
        for (auto& row : block)
            std::fill(row.begin(), row.end(), Rational(0));
        for (std::size_t j = 0; j < n; ++j) {
            for (const auto& [k, c] : a.product(j, i))
                block[k][j] += c;
            for (const auto& [k, c] : a.product(i, j))
                block[k][j] -= c;
        }
        for (const auto& row : block)
            if (!is_zero(row))
                equations.insert(row);
    }
    return nullspace_of_rows(equations);
}

Polynomial minimal_polynomial(const StructureAlgebra& a, const Vector& x, const Vector& e)
{
    std::vector<Vector> powers{e};
    Subspace span(a.dim());
    span.insert(e);
    Vector current = e;
    for (std::size_t deg = 1; deg <= a.dim() + 1; ++deg) {
        current = a.multiply(current, x);
        if (span.contains(current)) {
            Matrix m(a.dim(), powers.size());
            for (std::size_t c = 0; c < powers.size(); ++c)
                for (std::size_t r = 0; r < a.dim(); ++r)
                    m(r, c) = powers[c][r];
            auto sol = solve(m, current);
            if (!sol)
                throw InternalError("minimal polynomial: inconsistent power relation");
            std::vector<Rational> coeffs(sol->size() + 1);
            for (std::size_t k = 0; k < sol->size(); ++k)
                coeffs[k] = -(*sol)[k];
            coeffs.back() = 1;
            return Polynomial(std::move(coeffs));
        }
        span.insert(current);
        powers.push_back(current);
    }
    throw InternalError("minimal polynomial: degree exceeds dimension");
}

Vector evaluate(const StructureAlgebra& a, const Polynomial& p, const Vector& x, const Vector& e)
{
    Vector acc(a.dim());
    for (int k = p.degree(); k >= 0; --k) {
        acc = a.multiply(acc, x);
        add_scaled(acc, p.coeff(k), e);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Radical

Subspace radical(const StructureAlgebra& a)
{
    if (!a.unit_is_two_sided())
        throw InputError("radical: unit is not a two-sided identity");
    if (auto bad = a.associativity_failure())
        throw InputError("radical: multiplication is not associative at basis triple (" + a.labels()[(*bad)[0]] +
                         ", " + a.labels()[(*bad)[1]] + ", " + a.labels()[(*bad)[2]] + ")");
    const std::size_t n = a.dim();
    Matrix gram(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (const auto& [k, c] : a.product(i, j))
                gram(i, j) += c * a.left_traces()[k];
    Subspace rad(n);
    for (auto& v : nullspace(gram))
        rad.insert(std::move(v));
    return rad;
}

std::size_t nilpotency_index(const StructureAlgebra& a, const Subspace& rad)
{
    std::vector<Vector> power = rad.basis();
    std::size_t k = 1;
    while (!power.empty()) {
        if (k > a.dim() + 1)
            throw InternalError("radical is not nilpotent");
        power = product_span(a, power, rad.basis()).basis();
        ++k;
    }
    return k;
}

Vector SemisimpleQuotient::project(const Vector& x) const
{
    Vector r = rad.reduce(x);
    Vector out(section.size());
    for (std::size_t k = 0; k < section.size(); ++k)
        out[k] = r[section[k]];
    return out;
}

Vector SemisimpleQuotient::lift(const Vector& y, std::size_t parent_dim) const
{
    Vector out(parent_dim);
    for (std::size_t k = 0; k < section.size(); ++k)
        out[section[k]] = y[k];
    return out;
}

SemisimpleQuotient semisimple_quotient(const StructureAlgebra& a, const Subspace& rad)
{
    SemisimpleQuotient q;
    q.rad = rad;
    q.section = rad.free_columns();
    const std::size_t m = q.section.size();
    std::vector<std::string> labels;
    for (std::size_t s : q.section)
        labels.push_back(a.labels()[s]);
    std::vector<StructureAlgebra::SparseVector> products(m * m);
    for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y) {
            Vector dense = a.zero();
            for (const auto& [k, c] : a.product(q.section[x], q.section[y]))
                dense[k] = c;
            Vector coords = q.project(dense);
            for (std::size_t k = 0; k < m; ++k)
                if (!coords[k].is_zero())
                    products[x * m + y].emplace_back(k, coords[k]);
        }
    q.algebra = StructureAlgebra(std::move(labels), std::move(products), q.project(a.unit()));
    return q;
}

// ---------------------------------------------------------------------------
// Wedderburn

Signature signature(Matrix g)
{
    const std::size_t n = g.rows();
    if (g.cols() != n)
        throw InputError("signature: matrix is not square");
    Signature sig;
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        // Pick the smallest active index with a nonzero diagonal entry.
        std::size_t p = n;
        for (std::size_t i = 0; i < n && p == n; ++i)
            if (!done[i] && !g(i, i).is_zero())
                p = i;
        if (p == n) {
            // All active diagonal entries vanish; replace e_i by e_i + e_j
            // for the first nonzero off-diagonal pair.
            std::size_t pi = n, pj = n;
            for (std::size_t i = 0; i < n && pi == n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (!done[i] && !done[j] && !g(i, j).is_zero()) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi == n) {
                for (std::size_t i = 0; i < n; ++i)
                    if (!done[i])
                        ++sig.zero;
                return sig;
            }
            for (std::size_t k = 0; k < n; ++k)
                g(pi, k) += g(pj, k);
            for (std::size_t k = 0; k < n; ++k)
                g(k, pi) += g(k, pj);
            p = pi;
        }
        const Rational d = g(p, p);
        if (d > 0)
            ++sig.positive;
        else
            ++sig.negative;
        done[p] = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || g(i, p).is_zero())
                continue;
            Rational f = g(i, p) / d;
            for (std::size_t j = 0; j < n; ++j)
                if (!done[j])
                    g(i, j) -= f * g(p, j);
        }
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i]) {
                g(i, p) = 0;
                g(p, i) = 0;
            }
    }
    return sig;
}

namespace {

// Deterministic stream of candidate elements drawn from a subspace basis.
class CandidateStream {
public:
    CandidateStream(const StructureAlgebra& a, std::vector<Vector> basis, bool with_products)
        : a_(a), basis_(std::move(basis)), with_products_(with_products), rng_(0x5eed)
    {
    }

    std::optional<Vector> next()
    {
        const std::size_t m = basis_.size();
        if (!extra_.empty()) {
            Vector v = std::move(extra_.back());
            extra_.pop_back();
            return v;
        }
        if (stage_ == 0) {
            if (idx_ < m)
                return basis_[idx_++];
            stage_ = 1;
            idx_ = 0;
        }
        if (stage_ == 1) {
            // Pairwise sums and differences.
            while (idx_ < m * m * 2) {
                std::size_t i = (idx_ / 2) / m, j = (idx_ / 2) % m;
                bool minus = idx_ % 2;
                ++idx_;
                if (i >= j)
                    continue;
                Vector v = basis_[i];
                add_scaled(v, minus ? Rational(-1) : Rational(1), basis_[j]);
                return v;
            }
            stage_ = 2;
            idx_ = 0;
        }
        if (stage_ == 2) {
            while (with_products_ && idx_ < m * m) {
                std::size_t i = idx_ / m, j = idx_ % m;
                ++idx_;
                Vector v = a_.multiply(basis_[i], basis_[j]);
                if (!is_zero(v))
                    return v;
            }
            stage_ = 3;
            idx_ = 0;
        }
        if (idx_ < 64 && m > 0) {
            ++idx_;
            std::uniform_int_distribution<int> coeff(-3, 3);
            Vector v(a_.dim());
            for (const auto& b : basis_)
                add_scaled(v, Rational(coeff(rng_)), b);
            return v;
        }
        return std::nullopt;
    }

    void push(Vector v) { extra_.push_back(std::move(v)); }

private:
    const StructureAlgebra& a_;
    std::vector<Vector> basis_;
    bool with_products_;
    std::mt19937 rng_;
    int stage_ = 0;
    std::size_t idx_ = 0;
    std::vector<Vector> extra_;
};

// Tries to split the idempotent e using the element y = e y e: returns a
// nontrivial idempotent E in Q[y] when the minimal polynomial of y has a
// rational root whose primary factor is a proper divisor.
std::optional<Vector> split_with(const StructureAlgebra& a, const Vector& y, const Vector& e, Polynomial& minpoly)
{
    minpoly = minimal_polynomial(a, y, e);
    if (minpoly.degree() < 2)
        return std::nullopt;
    std::vector<Rational> roots;
    try {
        roots = rational_roots(minpoly);
    } catch (const RefusalError&) {
        return std::nullopt;
    }
    for (const auto& c : roots) {
        int k = root_multiplicity(minpoly, c);
        Polynomial f = Polynomial::constant(1);
        for (int t = 0; t < k; ++t)
            f = f * Polynomial::linear_root(c);
        Polynomial g = minpoly.divmod(f).first;
        if (g.degree() < 1)
            continue;
        auto [d, s, t] = extended_gcd(f, g);
        if (d.degree() != 0)
            throw InternalError("idempotent splitting: primary factors are not coprime");
        return evaluate(a, t * g, y, e);
    }
    return std::nullopt;
}

struct CentralLeaf {
    Vector idempotent;
    DivisionType center; // Real or Complex
};

void split_center(const StructureAlgebra& s, const std::vector<Vector>& center, const Vector& e,
                  std::vector<CentralLeaf>& out)
{
    Subspace local(s.dim());
    for (const auto& z : center)
        local.insert(s.multiply(e, z));
    if (local.dim() == 1) {
        out.push_back({e, DivisionType::Real});
        return;
    }
    CandidateStream stream(s, local.basis(), false);
    bool complex_seen = false;
    Polynomial generic;
    while (auto y = stream.next()) {
        Polynomial m;
        if (auto idem = split_with(s, *y, e, m)) {
            Vector rest = e;
            add_scaled(rest, Rational(-1), *idem);
            split_center(s, center, *idem, out);
            split_center(s, center, rest, out);
            return;
        }
        if (m.degree() == static_cast<int>(local.dim()))
            generic = m;
        if (local.dim() == 2 && m.degree() == 2 && count_real_roots(m) == 0)
            complex_seen = true;
    }
    if (complex_seen) {
        out.push_back({e, DivisionType::Complex});
        return;
    }
    std::string detail = "centre component of dimension " + std::to_string(local.dim()) + " does not split over Q";
    if (!generic.is_zero())
        detail += "; generic minimal polynomial " + generic.to_string() + " has " +
                  std::to_string(count_real_roots(generic)) + " real roots";
    throw RefusalError("wedderburn: centre factorisation inconclusive (" + detail +
                       "); an exact real-algebraic factorisation fallback is required");
}

std::size_t exact_sqrt(std::size_t v)
{
    std::size_t r = 0;
    while ((r + 1) * (r + 1) <= v)
        ++r;
    if (r * r != v)
        throw InternalError("wedderburn: block dimension " + std::to_string(v) + " is not of the form n^2 d");
    return r;
}

WedderburnBlock classify_block(const StructureAlgebra& s, const CentralLeaf& leaf)
{
    Subspace block(s.dim());
    for (std::size_t k = 0; k < s.dim(); ++k)
        block.insert(s.multiply(leaf.idempotent, s.basis_vector(k)));
    WedderburnBlock out;
    out.central_idempotent = leaf.idempotent;
    out.dim = block.dim();
    if (leaf.center == DivisionType::Complex) {
        if (out.dim % 2 != 0)
            throw InternalError("wedderburn: complex block of odd dimension");
        out.division = DivisionType::Complex;
        out.matrix_size = exact_sqrt(out.dim / 2);
        return out;
    }
    const auto& basis = block.basis();
    Matrix gram(basis.size(), basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i; j < basis.size(); ++j) {
            gram(i, j) = s.trace_of_left(s.multiply(basis[i], basis[j]));
            gram(j, i) = gram(i, j);
        }
    Signature sig = signature(gram);
    if (sig.zero != 0)
        throw InternalError("wedderburn: degenerate trace form on a simple block");
    std::size_t m = exact_sqrt(out.dim);
    if (sig.positive > sig.negative) {
        out.division = DivisionType::Real;
        out.matrix_size = m;
    } else {
        if (m % 2 != 0)
            throw InternalError("wedderburn: negative trace signature on a block of odd size");
        out.division = DivisionType::Quaternion;
        out.matrix_size = m / 2;
    }
    return out;
}

// Splits the idempotent e of the semisimple algebra s into primitive
// orthogonal idempotents; division_dim is the real dimension of the
// division algebra of its block.
void split_primitive(const StructureAlgebra& s, const Vector& e, std::size_t division_dim, std::vector<Vector>& out)
{
    Subspace corner(s.dim());
    for (std::size_t k = 0; k < s.dim(); ++k)
        corner.insert(s.multiply(s.multiply(e, s.basis_vector(k)), e));
    if (corner.dim() == division_dim) {
        out.push_back(e);
        return;
    }
    if (corner.dim() < division_dim)
        throw InternalError("primitive idempotents: corner smaller than its division algebra");
    CandidateStream stream(s, corner.basis(), true);
    std::size_t nilpotents = 0;
    while (auto y = stream.next()) {
        Polynomial m;
        if (auto idem = split_with(s, *y, e, m)) {
            Vector rest = e;
            add_scaled(rest, Rational(-1), *idem);
            split_primitive(s, *idem, division_dim, out);
            split_primitive(s, rest, division_dim, out);
            return;
        }
        // A nilpotent part y - c e yields zero divisors; products with the
        // corner basis often have rational eigenvalues.
        if (m.degree() >= 2 && nilpotents < 8) {
            auto roots = rational_roots(m);
            if (roots.size() == 1 && root_multiplicity(m, roots[0]) == m.degree()) {
                Vector nil = *y;
                add_scaled(nil, -roots[0], e);
                ++nilpotents;
                for (const auto& b : corner.basis()) {
                    stream.push(s.multiply(nil, b));
                    stream.push(s.multiply(b, nil));
                }
            }
        }
    }
    throw RefusalError("primitive idempotents: no rational splitting element found in a corner of dimension " +
                       std::to_string(corner.dim()));
}

} // namespace

std::vector<WedderburnBlock> wedderburn_blocks(const SemisimpleQuotient& q)
{
    const auto& s = q.algebra;
    if (s.dim() == 0)
        return {};
    auto center = center_basis(s);
    std::vector<CentralLeaf> leaves;
    split_center(s, center, s.unit(), leaves);
    std::vector<WedderburnBlock> blocks;
    for (const auto& leaf : leaves)
        blocks.push_back(classify_block(s, leaf));
    return blocks;
}

std::vector<WedderburnBlock> wedderburn_profile(const StructureAlgebra& a)
{
    return wedderburn_blocks(semisimple_quotient(a, radical(a)));
}

LiftedIdempotents lift_idempotents(const StructureAlgebra& a)
{
    auto q = semisimple_quotient(a, radical(a));
    LiftedIdempotents out;
    out.blocks = wedderburn_blocks(q);
    std::vector<std::pair<Vector, std::size_t>> reduced;
    for (std::size_t b = 0; b < out.blocks.size(); ++b) {
        std::vector<Vector> prim;
        split_primitive(q.algebra, out.blocks[b].central_idempotent,
                        static_cast<std::size_t>(real_dimension(out.blocks[b].division)), prim);
        if (prim.size() != out.blocks[b].matrix_size)
            throw InternalError("primitive idempotents: count does not match the block's matrix size");
        for (auto& p : prim)
            reduced.emplace_back(std::move(p), b);
    }
    Vector taken = a.zero();
    for (std::size_t k = 0; k < reduced.size(); ++k) {
        Vector g = a.unit();
        add_scaled(g, Rational(-1), taken);
        Vector x;
        if (k + 1 == reduced.size()) {
            x = g;
        } else {
            x = a.multiply(a.multiply(g, q.lift(reduced[k].first, a.dim())), g);
            for (int iter = 0;; ++iter) {
                Vector x2 = a.multiply(x, x);
                if (x2 == x)
                    break;
                if (iter > 64)
                    throw InternalError("idempotent lifting did not converge");
                Vector x3 = a.multiply(x2, x);
                Vector next(a.dim());
                add_scaled(next, Rational(3), x2);
                add_scaled(next, Rational(-2), x3);
                x = std::move(next);
            }
        }
        if (a.multiply(x, x) != x || is_zero(x))
            throw InternalError("idempotent lifting produced a non-idempotent");
        add_scaled(taken, Rational(1), x);
        out.idempotents.push_back(std::move(x));
        out.block.push_back(reduced[k].second);
    }
    return out;
}

IntMatrix cartan_matrix(const StructureAlgebra& a, const LiftedIdempotents& idems)
{
    const std::size_t nb = idems.blocks.size();
    std::vector<Vector> reps(nb);
    std::vector<bool> found(nb, false);
    for (std::size_t k = 0; k < idems.idempotents.size(); ++k)
        if (!found[idems.block[k]]) {
            reps[idems.block[k]] = idems.idempotents[k];
            found[idems.block[k]] = true;
        }
    if (std::find(found.begin(), found.end(), false) != found.end())
        throw InputError("cartan matrix: some block has no idempotent");
    IntMatrix c(nb, std::vector<long>(nb));
    for (std::size_t i = 0; i < nb; ++i) {
        std::vector<Vector> left;
        for (std::size_t k = 0; k < a.dim(); ++k) {
            Vector v = a.multiply(reps[i], a.basis_vector(k));
            if (!is_zero(v))
                left.push_back(std::move(v));
        }
        const auto ddim = static_cast<std::size_t>(real_dimension(idems.blocks[i].division));
        for (std::size_t j = 0; j < nb; ++j) {
            std::size_t d = product_span(a, left, {reps[j]}).dim();
            if (d % ddim != 0)
                throw InternalError("cartan matrix: dim(e_i A e_j) = " + std::to_string(d) +
                                    " is not divisible by dim End(S_i) = " + std::to_string(ddim));
            c[i][j] = static_cast<long>(d / ddim);
        }
    }
    return c;
}

// ---------------------------------------------------------------------------
// Profiles

json MoritaProfile::to_json() const
{
    std::vector<std::string> tags;
    for (auto t : simples)
        tags.push_back(algebra::to_string(t));
    return json{{"simple_count", simple_count},
                {"simples", tags},
                {"cartan", cartan},
                {"center_dim", center_dim},
                {"total_dim", total_dim}};
}

MoritaProfile MoritaProfile::from_json(const json& j)
{
    MoritaProfile p;
    p.simple_count = j.at("simple_count").get<std::size_t>();
    for (const auto& t : j.at("simples"))
        p.simples.push_back(parse_division_type(t.get<std::string>()));
    p.cartan = j.at("cartan").get<IntMatrix>();
    p.center_dim = j.at("center_dim").get<std::size_t>();
    p.total_dim = j.value("total_dim", std::size_t{0});
    return p;
}

std::string MoritaProfile::hash() const
{
    json compared = to_json();
    compared.erase("total_dim");
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : compared.dump()) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

MoritaProfile canonical_profile(std::vector<DivisionType> simples, IntMatrix cartan, std::size_t center_dim,
                                std::size_t total_dim)
{
    const std::size_t n = simples.size();
    if (cartan.size() != n)
        throw InputError("profile: cartan matrix size does not match the simple count");
    for (const auto& row : cartan)
        if (row.size() != n)
            throw InputError("profile: cartan matrix is not square");

    using Key = std::tuple<int, std::vector<long>, std::vector<long>, long>;
    std::vector<Key> keys(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<long> row = cartan[i], col;
        for (std::size_t j = 0; j < n; ++j)
            col.push_back(cartan[j][i]);
        std::sort(row.begin(), row.end());
        std::sort(col.begin(), col.end());
        keys[i] = Key{static_cast<int>(simples[i]), row, col, cartan[i][i]};
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return keys[x] < keys[y]; });

    // Groups of equal keys; permutations inside groups are tried exhaustively.
    std::vector<std::pair<std::size_t, std::size_t>> groups;
    std::size_t combos = 1;
    for (std::size_t start = 0; start < n;) {
        std::size_t end = start + 1;
        while (end < n && keys[order[end]] == keys[order[start]])
            ++end;
        for (std::size_t f = 2; f <= end - start; ++f) {
            combos *= f;
            if (combos > 40320)
                throw RefusalError("profile canonicalisation: too many symmetric simples");
        }
        groups.emplace_back(start, end);
        start = end;
    }

    auto flatten = [&](const std::vector<std::size_t>& ord) {
        std::vector<long> flat;
        flat.reserve(n * n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                flat.push_back(cartan[ord[a]][ord[b]]);
        return flat;
    };
    std::vector<std::size_t> best = order;
    std::vector<long> best_flat = flatten(order);
    std::vector<std::size_t> current = order;
    std::function<void(std::size_t)> explore = [&](std::size_t g) {
        if (g == groups.size()) {
            auto flat = flatten(current);
            if (flat < best_flat) {
                best_flat = std::move(flat);
                best = current;
            }
            return;
        }
        auto [s, e] = groups[g];
        std::sort(current.begin() + static_cast<long>(s), current.begin() + static_cast<long>(e));
        do {
            explore(g + 1);
        } while (std::next_permutation(current.begin() + static_cast<long>(s), current.begin() + static_cast<long>(e)));
    };
    explore(0);

    MoritaProfile p;
    p.simple_count = n;
    for (std::size_t a = 0; a < n; ++a)
        p.simples.push_back(simples[best[a]]);
    p.cartan.assign(n, std::vector<long>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            p.cartan[a][b] = cartan[best[a]][best[b]];
    p.center_dim = center_dim;
    p.total_dim = total_dim;
    return p;
}

MoritaProfile morita_profile(const StructureAlgebra& a)
{
    auto idems = lift_idempotents(a);
    auto c = cartan_matrix(a, idems);
    std::vector<DivisionType> tags;
    for (const auto& b : idems.blocks)
        tags.push_back(b.division);
    return canonical_profile(std::move(tags), std::move(c), center_basis(a).size(), a.dim());
}

json MoritaVerdict::to_json() const
{
    json j{{"verdict", consistent ? "consistent" : "inconsistent"}, {"note", note}};
    if (!consistent)
        j["witness"] = witness;
    return j;
}

MoritaVerdict compare_morita(const MoritaProfile& p0, const MoritaProfile& q0)
{
    auto p = canonical_profile(p0.simples, p0.cartan, p0.center_dim, p0.total_dim);
    auto q = canonical_profile(q0.simples, q0.cartan, q0.center_dim, q0.total_dim);
    MoritaVerdict v;
    v.note = "agreement of simple count, division types, Cartan matrix and centre dimension is necessary for "
             "Morita equivalence, not sufficient";
    auto tags = [](const MoritaProfile& m) {
        std::string s = "[";
        for (std::size_t k = 0; k < m.simples.size(); ++k)
            s += (k ? "," : "") + to_string(m.simples[k]);
        return s + "]";
    };
    if (p.simple_count != q.simple_count) {
        v.witness = "simple_count " + std::to_string(p.simple_count) + " vs " + std::to_string(q.simple_count);
        return v;
    }
    if (p.simples != q.simples) {
        v.witness = "division types " + tags(p) + " vs " + tags(q);
        return v;
    }
    for (std::size_t i = 0; i < p.simple_count; ++i)
        for (std::size_t j = 0; j < p.simple_count; ++j)
            if (p.cartan[i][j] != q.cartan[i][j]) {
                v.witness = "cartan entry (" + std::to_string(i) + "," + std::to_string(j) + ") " +
                            std::to_string(p.cartan[i][j]) + " vs " + std::to_string(q.cartan[i][j]) +
                            " in canonical order";
                return v;
            }
    if (p.center_dim != q.center_dim) {
        v.witness = "center_dim " + std::to_string(p.center_dim) + " vs " + std::to_string(q.center_dim);
        return v;
    }
    v.consistent = true;
    return v;
}

} // namespace orbiclan::algebra
