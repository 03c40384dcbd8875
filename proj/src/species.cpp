#include "orbiclan/species.hpp"

#include "orbiclan/errors.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace orbiclan::species {

using nlohmann::json;

std::string to_string(Flavor f) { return f == Flavor::BLike ? "B" : "C"; }
std::string to_string(FieldTag f) { return f == FieldTag::Real ? "R" : "C"; }

Flavor parse_flavor(const std::string& s)
{
    if (s == "B" || s == "b")
        return Flavor::BLike;
    if (s == "C" || s == "c")
        return Flavor::CLike;
    throw InputError("flavor: expected B or C, got \"" + s + "\"");
}

int real_dimension(FieldTag f) { return f == FieldTag::Real ? 1 : 2; }

std::string to_string(BimoduleCase c)
{
    switch (c) {
    case BimoduleCase::ComplexOverReal: return "C(x)_R C";
    case BimoduleCase::TwistedComplex: return "C^g(x)_C C";
    case BimoduleCase::ComplexReal: return "C(x)_R R";
    case BimoduleCase::RealComplex: return "R(x)_R C";
    case BimoduleCase::RealReal: return "R(x)_R R";
    case BimoduleCase::DoubleRealReal: return "(R(x)_R R)^2";
    }
    return "?";
}

namespace {

BimoduleCase parse_case(const std::string& s)
{
    for (auto c : {BimoduleCase::ComplexOverReal, BimoduleCase::TwistedComplex, BimoduleCase::ComplexReal,
                   BimoduleCase::RealComplex, BimoduleCase::RealReal, BimoduleCase::DoubleRealReal})
        if (to_string(c) == s)
            return c;
    throw ParseError("species: unknown bimodule case \"" + s + "\"");
}

FieldTag parse_field(const std::string& s)
{
    if (s == "R")
        return FieldTag::Real;
    if (s == "C")
        return FieldTag::Complex;
    throw ParseError("species: unknown field \"" + s + "\"");
}

json matrix_json(const Matrix& m)
{
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c)
            row.push_back(orbiclan::to_string(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

// Fills basis labels and action matrices from the monomial calculus.
void derive_actions(SpeciesData& sp)
{
    TensorAlgebra ta(sp);
    auto degree_one = ta.degree_basis(1);
    for (std::size_t a = 0; a < sp.arrows.size(); ++a) {
        auto& b = sp.arrows[a];
        std::vector<Monomial> basis;
        for (const auto& m : degree_one)
            if (m.arrows[0] == a)
                basis.push_back(m);
        b.real_dim = basis.size();
        b.basis.clear();
        for (const auto& m : basis)
            b.basis.push_back(ta.label(m));
        auto action = [&](std::size_t position) {
            Matrix act(basis.size(), basis.size());
            for (std::size_t col = 0; col < basis.size(); ++col) {
                Monomial m = basis[col];
                int sign = ta.times_i(m, position);
                auto row = std::find(basis.begin(), basis.end(), m) - basis.begin();
                act(static_cast<std::size_t>(row), col) = sign;
            }
            return act;
        };
        b.left_action = b.left == FieldTag::Complex ? action(0) : Matrix();
        b.right_action = b.right == FieldTag::Complex ? action(1) : Matrix();
    }
}

} // namespace

FieldAssignment assign_fields(const surface::TriangulationData& t, Flavor flavor)
{
    FieldAssignment fa;
    fa.flavor = flavor;
    for (const auto& a : t.arcs) {
        bool complex_field = flavor == Flavor::BLike ? !a.pending : a.pending;
        fa.fields.push_back(complex_field ? FieldTag::Complex : FieldTag::Real);
    }
    return fa;
}

std::size_t SpeciesData::base_dim() const
{
    std::size_t n = 0;
    for (auto f : fields.fields)
        n += static_cast<std::size_t>(real_dimension(f));
    return n;
}

SpeciesData build_species(const surface::TriangulationData& t, const complex::CWComplex& c,
                          const complex::Cocycle& xi, const FieldAssignment& fa)
{
    if (xi.xi.size() != c.arrows.size() || !complex::validate_cocycle(c, xi))
        throw PreconditionError("species: xi is not a cocycle");
    if (fa.fields.size() != c.vertices.size())
        throw InputError("species: field assignment does not match the vertices");
    SpeciesData sp;
    sp.fields = fa;
    sp.vertices = c.vertices;
    for (std::size_t a = 0; a < c.arrows.size(); ++a) {
        const auto& arrow = c.arrows[a];
        Bimodule b;
        b.arrow = arrow.id;
        b.tail = arrow.tail;
        b.head = arrow.head;
        b.left = fa.fields[arrow.head];
        b.right = fa.fields[arrow.tail];
        const bool both_pending = t.arcs[arrow.tail].pending && t.arcs[arrow.head].pending;
        const bool lc = b.left == FieldTag::Complex, rc = b.right == FieldTag::Complex;
        if (lc && rc)
            b.kind = both_pending ? BimoduleCase::ComplexOverReal : BimoduleCase::TwistedComplex;
        else if (lc)
            b.kind = BimoduleCase::ComplexReal;
        else if (rc)
            b.kind = BimoduleCase::RealComplex;
        else
            b.kind = both_pending ? BimoduleCase::DoubleRealReal : BimoduleCase::RealReal;
        if (b.kind == BimoduleCase::TwistedComplex && xi.xi[a])
            b.twist = Automorphism::Conjugation;
        b.generators = b.kind == BimoduleCase::DoubleRealReal ? 2 : 1;
        sp.arrows.push_back(std::move(b));
    }
    derive_actions(sp);
    return sp;
}

json SpeciesData::to_json() const
{
    json fs = json::object();
    for (std::size_t v = 0; v < vertices.size(); ++v)
        fs[vertices[v]] = species::to_string(fields.fields[v]);
    json arr = json::array();
    for (const auto& b : arrows)
        arr.push_back(json{{"id", b.arrow},
                           {"tail", vertices[b.tail]},
                           {"head", vertices[b.head]},
                           {"case", species::to_string(b.kind)},
                           {"twist", clannish::to_string(b.twist)},
                           {"generators", b.generators},
                           {"real_dim", b.real_dim},
                           {"basis", b.basis},
                           {"left_action", matrix_json(b.left_action)},
                           {"right_action", matrix_json(b.right_action)}});
    return json{{"flavor", species::to_string(fields.flavor)}, {"vertices", vertices}, {"fields", fs}, {"arrows", arr}};
}

SpeciesData SpeciesData::from_json(const json& j)
{
    try {
        SpeciesData sp;
        sp.fields.flavor = parse_flavor(j.at("flavor").get<std::string>());
        sp.vertices = j.at("vertices").get<std::vector<std::string>>();
        for (const auto& v : sp.vertices)
            sp.fields.fields.push_back(parse_field(j.at("fields").at(v).get<std::string>()));
        auto vertex = [&](const json& v) {
            auto it = std::find(sp.vertices.begin(), sp.vertices.end(), v.get<std::string>());
            if (it == sp.vertices.end())
                throw SchemaError("species: unknown vertex \"" + v.get<std::string>() + "\"");
            return static_cast<std::size_t>(it - sp.vertices.begin());
        };
        for (const auto& a : j.at("arrows")) {
            Bimodule b;
            b.arrow = a.at("id").get<std::string>();
            b.tail = vertex(a.at("tail"));
            b.head = vertex(a.at("head"));
            b.left = sp.fields.fields[b.head];
            b.right = sp.fields.fields[b.tail];
            b.kind = parse_case(a.at("case").get<std::string>());
            b.twist = a.at("twist").get<std::string>() == "conj" ? Automorphism::Conjugation : Automorphism::Identity;
            b.generators = a.at("generators").get<std::size_t>();
            sp.arrows.push_back(std::move(b));
        }
        derive_actions(sp);
        return sp;
    } catch (const json::exception& e) {
        throw ParseError(std::string("species: ") + e.what());
    }
}

// ---------------------------------------------------------------------------

void add_term(Element& x, const Monomial& m, const Rational& c)
{
    if (c.is_zero())
        return;
    auto [it, inserted] = x.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            x.erase(it);
    }
}

Element operator+(const Element& x, const Element& y)
{
    Element out = x;
    for (const auto& [m, c] : y)
        add_term(out, m, c);
    return out;
}

Element scaled(const Element& x, const Rational& c)
{
    Element out;
    for (const auto& [m, d] : x)
        add_term(out, m, c * d);
    return out;
}

bool is_zero(const Element& x) { return x.empty(); }

TensorAlgebra::TensorAlgebra(const SpeciesData& sp) : sp_(&sp) {}

std::size_t TensorAlgebra::tail(const Monomial& m) const
{
    return m.arrows.empty() ? m.head : sp_->arrows[m.arrows.back()].tail;
}

bool TensorAlgebra::stuck(const Monomial& m, std::size_t position) const
{
    if (position == 0)
        return sp_->fields.fields[m.head] == FieldTag::Complex;
    return sp_->arrows[m.arrows[position - 1]].right_free();
}

int TensorAlgebra::times_i(Monomial& m, std::size_t position) const
{
    int sign = 1;
    while (position > 0 && !stuck(m, position)) {
        const auto& b = sp_->arrows[m.arrows[position - 1]];
        if (!b.absorbs())
            throw InternalError("tensor: scalar i at a real position right of " + b.arrow);
        if (b.twist == Automorphism::Conjugation)
            sign = -sign;
        --position;
    }
    if (!stuck(m, position))
        throw InternalError("tensor: scalar i at a real vertex");
    if (m.bits[position]) {
        m.bits[position] = 0;
        sign = -sign;
    } else {
        m.bits[position] = 1;
    }
    return sign;
}

std::optional<std::pair<Monomial, int>> TensorAlgebra::multiply(const Monomial& x, const Monomial& y) const
{
    if (tail(x) != y.head)
        return std::nullopt;
    Monomial out = x;
    int sign = 1;
    if (y.bits[0])
        sign = times_i(out, x.degree());
    out.arrows.insert(out.arrows.end(), y.arrows.begin(), y.arrows.end());
    out.gens.insert(out.gens.end(), y.gens.begin(), y.gens.end());
    out.bits.insert(out.bits.end(), y.bits.begin() + 1, y.bits.end());
    return std::make_pair(std::move(out), sign);
}

Element TensorAlgebra::multiply(const Element& x, const Element& y) const
{
    Element out;
    for (const auto& [m, c] : x)
        for (const auto& [n, d] : y)
            if (auto p = multiply(m, n))
                add_term(out, p->first, c * d * p->second);
    return out;
}

Monomial TensorAlgebra::idempotent(std::size_t vertex) const { return Monomial{vertex, {}, {}, {0}}; }

Monomial TensorAlgebra::arrow(std::size_t a, std::size_t gen) const
{
    return Monomial{sp_->arrows.at(a).head, {a}, {static_cast<std::uint8_t>(gen)}, {0, 0}};
}

Monomial TensorAlgebra::imaginary(std::size_t vertex) const
{
    if (sp_->fields.fields[vertex] != FieldTag::Complex)
        throw PreconditionError("tensor: i e_v needs a complex vertex");
    return Monomial{vertex, {}, {}, {1}};
}

std::vector<Monomial> TensorAlgebra::degree_basis(std::size_t d) const
{
    std::vector<Monomial> layer;
    for (std::size_t v = 0; v < sp_->vertices.size(); ++v) {
        layer.push_back(idempotent(v));
        if (sp_->fields.fields[v] == FieldTag::Complex)
            layer.push_back(Monomial{v, {}, {}, {1}});
    }
    for (std::size_t k = 0; k < d; ++k) {
        std::vector<Monomial> next;
        for (const auto& m : layer) {
            const std::size_t end = tail(m);
            for (std::size_t a = 0; a < sp_->arrows.size(); ++a) {
                const auto& b = sp_->arrows[a];
                if (b.head != end)
                    continue;
                for (std::size_t g = 0; g < b.generators; ++g)
                    for (std::uint8_t bit = 0; bit < (b.right_free() ? 2 : 1); ++bit) {
                        Monomial x = m;
                        x.arrows.push_back(a);
                        x.gens.push_back(static_cast<std::uint8_t>(g));
                        x.bits.push_back(bit);
                        next.push_back(std::move(x));
                    }
            }
        }
        layer = std::move(next);
    }
    std::sort(layer.begin(), layer.end());
    return layer;
}

std::string TensorAlgebra::label(const Monomial& m) const
{
    if (m.arrows.empty())
        return std::string(m.bits[0] ? "i*" : "") + "e[" + sp_->vertices[m.head] + "]";
    std::string s = m.bits[0] ? "i " : "";
    for (std::size_t k = 0; k < m.arrows.size(); ++k) {
        const auto& b = sp_->arrows[m.arrows[k]];
        s += b.arrow;
        if (b.generators > 1)
            s += "#" + std::to_string(m.gens[k] + 1);
        if (m.bits[k + 1])
            s += " i";
        if (k + 1 < m.arrows.size())
            s += " ";
    }
    return s;
}

json TensorAlgebra::to_json(const Monomial& m) const
{
    json ids = json::array();
    for (auto a : m.arrows)
        ids.push_back(sp_->arrows[a].arrow);
    return json{{"head", sp_->vertices[m.head]}, {"arrows", ids}, {"gens", m.gens}, {"bits", m.bits}};
}

Monomial TensorAlgebra::monomial_from_json(const json& j) const
{
    Monomial m;
    auto head = std::find(sp_->vertices.begin(), sp_->vertices.end(), j.at("head").get<std::string>());
    if (head == sp_->vertices.end())
        throw SchemaError("monomial: unknown vertex");
    m.head = static_cast<std::size_t>(head - sp_->vertices.begin());
    for (const auto& id : j.at("arrows")) {
        auto it = std::find_if(sp_->arrows.begin(), sp_->arrows.end(),
                               [&](const Bimodule& b) { return b.arrow == id.get<std::string>(); });
        if (it == sp_->arrows.end())
            throw SchemaError("monomial: unknown arrow");
        m.arrows.push_back(static_cast<std::size_t>(it - sp_->arrows.begin()));
    }
    m.gens = j.at("gens").get<std::vector<std::uint8_t>>();
    m.bits = j.at("bits").get<std::vector<std::uint8_t>>();
    if (m.gens.size() != m.arrows.size() || m.bits.size() != m.arrows.size() + 1)
        throw SchemaError("monomial: inconsistent lengths");
    return m;
}

json TensorAlgebra::to_json(const Element& x) const
{
    json out = json::array();
    for (const auto& [m, c] : x)
        out.push_back(json{{"monomial", to_json(m)}, {"coef", orbiclan::to_string(c)}});
    return out;
}

Element TensorAlgebra::element_from_json(const json& j) const
{
    Element x;
    for (const auto& t : j)
        add_term(x, monomial_from_json(t.at("monomial")), parse_rational(t.at("coef").get<std::string>()));
    return x;
}

// ---------------------------------------------------------------------------

std::string to_string(PotentialConvention p)
{
    return p == PotentialConvention::Plain ? "plain" : "second-twisted";
}

Potential build_potential(const complex::CWComplex& c, const SpeciesData& sp, PotentialConvention convention)
{
    TensorAlgebra ta(sp);
    Potential w;
    w.convention = convention;
    for (std::size_t k = 0; k < c.two_cells.size(); ++k) {
        const auto& [al, be, ga] = c.two_cells[k].arrows;
        const std::array<std::size_t, 3> word{ga, be, al};
        Element term;
        // Every choice of generators along the cycle.
        std::array<std::size_t, 3> gen{0, 0, 0};
        for (;;) {
            Monomial m{sp.arrows[ga].head, {word.begin(), word.end()}, {}, {0, 0, 0, 0}};
            bool second = false;
            for (std::size_t p = 0; p < 3; ++p) {
                m.gens.push_back(static_cast<std::uint8_t>(gen[p]));
                second = second || gen[p] == 1;
            }
            int sign = 1;
            if (second && convention == PotentialConvention::SecondTwisted) {
                // The junction opposite the doubled arrow.
                std::size_t p = 0;
                while (sp.arrows[word[p]].generators < 2)
                    ++p;
                const std::size_t opposite = (p + 2) % 3;   // arrow p touches junctions p and p + 1
                sign = ta.times_i(m, opposite);
            }
            add_term(term, m, Rational(sign));
            std::size_t p = 0;
            while (p < 3 && ++gen[p] == sp.arrows[word[p]].generators)
                gen[p++] = 0;
            if (p == 3)
                break;
        }
        w.terms.push_back({k, std::move(term)});
    }
    return w;
}

Element semilinear_projection(const TensorAlgebra& ta, const Element& x, Automorphism sigma)
{
    const auto& fields = ta.species().fields.fields;
    Element out;
    const Rational half(1, 2);
    for (const auto& [m, c] : x) {
        const std::size_t h = m.head, t = ta.tail(m);
        if (fields[h] != FieldTag::Complex || fields[t] != FieldTag::Complex) {
            add_term(out, m, c);
            continue;
        }
        auto left = ta.multiply(ta.imaginary(h), m);
        auto both = ta.multiply(left->first, ta.imaginary(t));
        const Rational sandwich = c * left->second * both->second;   // coefficient of i m i
        add_term(out, m, half * c);
        const Rational moved = half * sandwich;
        add_term(out, both->first, sigma == Automorphism::Identity ? Rational(-moved) : moved);
    }
    return out;
}

Element cyclic_derivative(const TensorAlgebra& ta, const Potential& w, std::size_t a, std::size_t gen)
{
    const auto& sp = ta.species();
    Element out;
    for (const auto& term : w.terms)
        for (const auto& [m, c] : term.value)
            for (std::size_t p = 0; p < m.degree(); ++p) {
                if (m.arrows[p] != a || m.gens[p] != gen)
                    continue;
                Monomial x{m.head, {m.arrows.begin(), m.arrows.begin() + static_cast<std::ptrdiff_t>(p)},
                           {m.gens.begin(), m.gens.begin() + static_cast<std::ptrdiff_t>(p)},
                           {m.bits.begin(), m.bits.begin() + static_cast<std::ptrdiff_t>(p) + 1}};
                Monomial y{sp.arrows[a].tail, {m.arrows.begin() + static_cast<std::ptrdiff_t>(p) + 1, m.arrows.end()},
                           {m.gens.begin() + static_cast<std::ptrdiff_t>(p) + 1, m.gens.end()},
                           {m.bits.begin() + static_cast<std::ptrdiff_t>(p) + 1, m.bits.end()}};
                auto yx = ta.multiply(y, x);
                if (!yx)
                    throw InternalError("cyclic derivative: potential term is not a cycle");
                add_term(out, yx->first, c * yx->second);
            }
    const auto& b = sp.arrows[a];
    if (b.kind == BimoduleCase::TwistedComplex)
        return semilinear_projection(ta, out, b.twist);   // the twist is an involution
    return out;
}

std::vector<Relation> relations(const TensorAlgebra& ta, const Potential& w)
{
    std::vector<Relation> out;
    const auto& sp = ta.species();
    for (std::size_t a = 0; a < sp.arrows.size(); ++a)
        for (std::size_t g = 0; g < sp.arrows[a].generators; ++g)
            out.push_back({a, g, cyclic_derivative(ta, w, a, g)});
    return out;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::size_t kMaxTensorDim = 4096;

struct Layer {
    std::vector<Monomial> basis;
    std::map<Monomial, std::size_t> index;
    Subspace ideal;

    Vector coordinates(const Element& x) const
    {
        Vector v(basis.size());
        for (const auto& [m, c] : x)
            v[index.at(m)] += c;
        return v;
    }

    Element element(const Vector& v) const
    {
        Element x;
        for (std::size_t k = 0; k < v.size(); ++k)
            if (!v[k].is_zero())
                x.emplace(basis[k], v[k]);
        return x;
    }
};

} // namespace

JacobianAlgebra jacobian_algebra(const TensorAlgebra& ta, const std::vector<Relation>& rels, std::size_t degree_cap,
                                 std::optional<std::uint64_t> scan_seed)
{
    if (degree_cap < 2)
        throw PreconditionError("jacobian: degree cap must be at least 2");
    std::mt19937_64 rng(scan_seed.value_or(0));
    auto order = [&](auto& v) {
        if (scan_seed)
            std::shuffle(v.begin(), v.end(), rng);
    };

    auto make_layer = [&](std::size_t d) {
        Layer l;
        l.basis = ta.degree_basis(d);
        order(l.basis);
        for (std::size_t k = 0; k < l.basis.size(); ++k)
            l.index[l.basis[k]] = k;
        l.ideal = Subspace(l.basis.size());
        return l;
    };

    std::vector<Layer> layers;
    layers.push_back(make_layer(0));
    layers.push_back(make_layer(1));
    auto t0 = layers[0].basis;
    auto t1 = layers[1].basis;
    auto relation_order = rels;
    order(relation_order);

    std::size_t top = 0;   // first degree with zero quotient
    if (layers[0].basis.empty())
        top = 0;
    else if (layers[1].basis.empty())
        top = 1;
    for (std::size_t d = 2; top == 0 && !layers[0].basis.empty(); ++d) {
        Layer l = make_layer(d);
        if (l.basis.size() > kMaxTensorDim) {
            std::string dims;
            for (const auto& x : layers)
                dims += (dims.empty() ? "" : ",") + std::to_string(x.basis.size() - x.ideal.dim());
            throw RefusalError("jacobian: degree " + std::to_string(d) + " tensor power has dimension " +
                               std::to_string(l.basis.size()) + ", above " + std::to_string(kMaxTensorDim) +
                               "; graded dims so far [" + dims + "]");
        }
        if (d == 2) {
            for (const auto& r : relation_order)
                for (const auto& u : t0)
                    for (const auto& v : t0) {
                        Element x = ta.multiply(ta.multiply(Element{{u, Rational(1)}}, r.value), Element{{v, Rational(1)}});
                        for (const auto& [m, c] : x)
                            if (m.degree() != 2)
                                throw InputError("jacobian: relations must be homogeneous of degree 2");
                        if (!x.empty())
                            l.ideal.insert(l.coordinates(x));
                    }
        } else {
            const auto& prev = layers[d - 1];
            for (const auto& g : prev.ideal.basis()) {
                Element x = prev.element(g);
                for (const auto& a : t1) {
                    Element one{{a, Rational(1)}};
                    if (auto y = ta.multiply(one, x); !y.empty())
                        l.ideal.insert(l.coordinates(y));
                    if (auto y = ta.multiply(x, one); !y.empty())
                        l.ideal.insert(l.coordinates(y));
                }
            }
        }
        const bool zero = l.ideal.dim() == l.basis.size();
        layers.push_back(std::move(l));
        if (zero) {
            top = d;
            break;
        }
        if (d + 1 >= degree_cap) {
            std::string dims;
            for (const auto& x : layers)
                dims += (dims.empty() ? "" : ",") + std::to_string(x.basis.size() - x.ideal.dim());
            throw RefusalError("jacobian: degree cap " + std::to_string(degree_cap) +
                               " reached with nonzero top degree; graded dims so far [" + dims + "]");
        }
    }

    JacobianAlgebra out;
    std::vector<std::pair<std::size_t, std::size_t>> qbasis;   // (degree, layer index)
    std::vector<std::map<std::size_t, std::size_t>> position(layers.size());
    for (std::size_t d = 0; d < layers.size(); ++d) {
        out.tensor_dims.push_back(layers[d].basis.size());
        out.graded_dims.push_back(layers[d].basis.size() - layers[d].ideal.dim());
        if (d >= top && top > 0)
            continue;
        for (std::size_t k : layers[d].ideal.free_columns()) {
            position[d][k] = qbasis.size();
            qbasis.emplace_back(d, k);
        }
    }
    while (!out.graded_dims.empty() && out.graded_dims.back() == 0 && out.graded_dims.size() > top)
        out.graded_dims.pop_back(), out.tensor_dims.pop_back();

    const std::size_t n = qbasis.size();
    std::vector<std::string> labels;
    for (const auto& [d, k] : qbasis)
        labels.push_back(ta.label(layers[d].basis[k]));
    std::vector<algebra::StructureAlgebra::SparseVector> products(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const auto& [dx, kx] = qbasis[x];
            const auto& [dy, ky] = qbasis[y];
            if (top > 0 && dx + dy >= top)
                continue;
            auto p = ta.multiply(layers[dx].basis[kx], layers[dy].basis[ky]);
            if (!p)
                continue;
            const auto& layer = layers[dx + dy];
            Vector v(layer.basis.size());
            v[layer.index.at(p->first)] = p->second;
            v = layer.ideal.reduce(std::move(v));
            auto& out_row = products[x * n + y];
            for (std::size_t k = 0; k < v.size(); ++k)
                if (!v[k].is_zero())
                    out_row.emplace_back(position[dx + dy].at(k), v[k]);
            std::sort(out_row.begin(), out_row.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
        }
    Vector unit(n);
    for (std::size_t v = 0; v < ta.species().vertices.size(); ++v)
        unit[position[0].at(layers[0].index.at(ta.idempotent(v)))] = 1;
    out.algebra = algebra::StructureAlgebra(std::move(labels), std::move(products), std::move(unit));
    return out;
}

json species_export(const TensorAlgebra& ta, const Potential& w, const std::vector<Relation>& rels)
{
    json terms = json::array();
    for (const auto& t : w.terms)
        terms.push_back(json{{"cell", t.cell}, {"value", ta.to_json(t.value)}});
    json rs = json::array();
    for (const auto& r : rels)
        rs.push_back(json{{"arrow", ta.species().arrows[r.arrow].arrow}, {"generator", r.gen}, {"value", ta.to_json(r.value)}});
    json j = ta.species().to_json();
    j["potential"] = json{{"convention", to_string(w.convention)}, {"terms", terms}};
    j["relations"] = rs;
    return j;
}

} // namespace orbiclan::species
