#include "orbiclan/clannish.hpp"

#include "orbiclan/errors.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace orbiclan::clannish {

using nlohmann::json;

std::string to_string(BaseField k) { return k == BaseField::Complex ? "C" : "R"; }
std::string to_string(Automorphism s) { return s == Automorphism::Identity ? "id" : "conj"; }
std::string to_string(ArrowKind k) { return k == ArrowKind::Ordinary ? "ordinary" : "special-loop"; }

BaseField parse_base_field(const std::string& s)
{
    if (s == "C")
        return BaseField::Complex;
    if (s == "R")
        return BaseField::Real;
    throw ParseError("base field: expected \"C\" or \"R\", got \"" + s + "\"");
}

std::optional<std::size_t> Quiver::arrow_index(std::string_view id) const
{
    for (std::size_t k = 0; k < arrows.size(); ++k)
        if (arrows[k].id == id)
            return k;
    return std::nullopt;
}

std::size_t Quiver::ordinary_count() const
{
    return static_cast<std::size_t>(std::count_if(
        arrows.begin(), arrows.end(), [](const QuiverArrow& a) { return a.kind == ArrowKind::Ordinary; }));
}

Quiver build_quiver(const surface::TriangulationData& t, const complex::CWComplex& c)
{
    Quiver q;
    q.vertices = c.vertices;
    for (const auto& a : c.arrows)
        q.arrows.push_back({a.id, a.tail, a.head, ArrowKind::Ordinary});
    for (const auto& label : t.pending_arcs()) {
        auto v = c.vertex_index(label);
        if (!v)
            throw InputError("quiver: pending arc \"" + label + "\" is not a vertex of the complex");
        q.arrows.push_back({"s." + label, *v, *v, ArrowKind::SpecialLoop});
    }
    return q;
}

// ---------------------------------------------------------------------------

bool ClannishPresentation::in_zero_relations(std::size_t a, std::size_t b) const
{
    return std::find(zero_relations.begin(), zero_relations.end(), std::make_pair(a, b)) != zero_relations.end();
}

std::string ClannishPresentation::loop_polynomial(std::size_t loop) const
{
    return loop_square.at(loop) == 1 ? "s^2-1" : "s^2+1";
}

json ClannishPresentation::to_json() const
{
    json arrows = json::array();
    for (std::size_t k = 0; k < quiver.arrows.size(); ++k) {
        const auto& a = quiver.arrows[k];
        arrows.push_back(json{{"id", a.id},
                              {"tail", quiver.vertices[a.tail]},
                              {"head", quiver.vertices[a.head]},
                              {"kind", clannish::to_string(a.kind)},
                              {"sigma", clannish::to_string(sigma[k])}});
    }
    json z = json::array();
    for (const auto& [a, b] : zero_relations)
        z.push_back(json::array({quiver.arrows[a].id, quiver.arrows[b].id}));
    json loops = json::object();
    for (const auto& [s, sq] : loop_square)
        loops[quiver.arrows[s].id] = loop_polynomial(s);
    return json{{"field", clannish::to_string(field)},
                {"vertices", quiver.vertices},
                {"arrows", arrows},
                {"zero_relations", z},
                {"loop_polys", loops},
                {"composition", "function-style: in ab, b acts first"}};
}

ClannishPresentation ClannishPresentation::from_json(const json& j)
{
    try {
        ClannishPresentation p;
        p.field = parse_base_field(j.at("field").get<std::string>());
        p.quiver.vertices = j.at("vertices").get<std::vector<std::string>>();
        auto vertex = [&](const json& v) {
            auto it = std::find(p.quiver.vertices.begin(), p.quiver.vertices.end(), v.get<std::string>());
            if (it == p.quiver.vertices.end())
                throw SchemaError("presentation: unknown vertex \"" + v.get<std::string>() + "\"");
            return static_cast<std::size_t>(it - p.quiver.vertices.begin());
        };
        for (const auto& a : j.at("arrows")) {
            auto kind = a.at("kind").get<std::string>();
            if (kind != "ordinary" && kind != "special-loop")
                throw ParseError("presentation: unknown arrow kind \"" + kind + "\"");
            auto sg = a.at("sigma").get<std::string>();
            if (sg != "id" && sg != "conj")
                throw ParseError("presentation: unknown sigma \"" + sg + "\"");
            p.quiver.arrows.push_back({a.at("id").get<std::string>(), vertex(a.at("tail")), vertex(a.at("head")),
                                       kind == "ordinary" ? ArrowKind::Ordinary : ArrowKind::SpecialLoop});
            p.sigma.push_back(sg == "id" ? Automorphism::Identity : Automorphism::Conjugation);
        }
        auto arrow = [&](const json& id) {
            auto k = p.quiver.arrow_index(id.get<std::string>());
            if (!k)
                throw SchemaError("presentation: unknown arrow \"" + id.get<std::string>() + "\"");
            return *k;
        };
        for (const auto& z : j.at("zero_relations"))
            p.zero_relations.emplace_back(arrow(z.at(0)), arrow(z.at(1)));
        for (const auto& [id, poly] : j.at("loop_polys").items()) {
            auto s = arrow(json(id));
            if (poly == "s^2-1")
                p.loop_square[s] = 1;
            else if (poly == "s^2+1")
                p.loop_square[s] = -1;
            else
                throw ParseError("presentation: unknown loop polynomial for " + id);
        }
        return p;
    } catch (const json::exception& e) {
        throw ParseError(std::string("presentation: ") + e.what());
    }
}

ClannishPresentation build_clannish_presentation(const surface::TriangulationData& t, const complex::CWComplex& c,
                                                 const complex::Cocycle& xi, BaseField k)
{
    if (xi.xi.size() != c.arrows.size() || !complex::validate_cocycle(c, xi))
        throw PreconditionError("clannish presentation: xi is not a cocycle");
    ClannishPresentation p;
    p.quiver = build_quiver(t, c);
    p.field = k;
    const bool complex_field = k == BaseField::Complex;
    for (std::size_t a = 0; a < p.quiver.arrows.size(); ++a) {
        bool twisted = p.quiver.arrows[a].kind == ArrowKind::SpecialLoop ? true : xi.xi[a] != 0;
        p.sigma.push_back(complex_field && twisted ? Automorphism::Conjugation : Automorphism::Identity);
        if (p.quiver.arrows[a].kind == ArrowKind::SpecialLoop)
            p.loop_square[a] = complex_field ? 1 : -1;
    }
    for (const auto& cell : c.two_cells) {
        // Traversal alpha, beta, gamma: the composites beta alpha, gamma beta, alpha gamma.
        const auto& [al, be, ga] = cell.arrows;
        p.zero_relations.emplace_back(be, al);
        p.zero_relations.emplace_back(ga, be);
        p.zero_relations.emplace_back(al, ga);
    }
    return p;
}

// ---------------------------------------------------------------------------

json AxiomReport::to_json() const
{
    json vs = json::array();
    for (const auto& v : violations)
        vs.push_back(json{{"rule", v.rule}, {"message", v.message}, {"labels", v.labels}});
    return json{{"ok", ok}, {"violations", vs}};
}

AxiomReport check_clannish_axioms(const ClannishPresentation& p)
{
    AxiomReport r;
    const auto& q = p.quiver;
    auto id = [&](std::size_t a) { return q.arrows[a].id; };

    for (std::size_t v = 0; v < q.vertices.size(); ++v) {
        std::vector<std::string> in, out;
        for (std::size_t a = 0; a < q.arrows.size(); ++a) {
            if (q.arrows[a].head == v)
                in.push_back(id(a));
            if (q.arrows[a].tail == v)
                out.push_back(id(a));
        }
        if (in.size() > 2)
            r.violations.push_back({"axiom-1", std::to_string(in.size()) + " arrows end at " + q.vertices[v], in});
        if (out.size() > 2)
            r.violations.push_back({"axiom-1", std::to_string(out.size()) + " arrows start at " + q.vertices[v], out});
    }

    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        if (q.arrows[a].kind != ArrowKind::Ordinary)
            continue;
        std::vector<std::string> before, after;
        for (std::size_t b = 0; b < q.arrows.size(); ++b) {
            if (q.arrows[b].head == q.arrows[a].tail && !p.in_zero_relations(a, b))
                before.push_back(id(b));
            if (q.arrows[b].tail == q.arrows[a].head && !p.in_zero_relations(b, a))
                after.push_back(id(b));
        }
        if (before.size() > 1) {
            before.insert(before.begin(), id(a));
            r.violations.push_back({"axiom-2", "arrow " + id(a) + " has several non-zero predecessors", before});
        }
        if (after.size() > 1) {
            after.insert(after.begin(), id(a));
            r.violations.push_back({"axiom-2", "arrow " + id(a) + " has several non-zero successors", after});
        }
    }

    for (const auto& [a, b] : p.zero_relations)
        if (q.arrows[a].kind == ArrowKind::SpecialLoop || q.arrows[b].kind == ArrowKind::SpecialLoop)
            r.violations.push_back({"axiom-3", "zero relation " + id(a) + id(b) + " involves a special loop",
                                    {id(a), id(b)}});
    r.ok = r.violations.empty();
    return r;
}

// ---------------------------------------------------------------------------

std::size_t GradedWordBasis::total() const
{
    std::size_t n = 0;
    for (const auto& d : words)
        n += d.size();
    return n;
}

std::vector<std::size_t> GradedWordBasis::degree_dims() const
{
    std::vector<std::size_t> out;
    for (const auto& d : words)
        out.push_back(d.size());
    return out;
}

namespace {

bool forbidden(const ClannishPresentation& p, const std::vector<std::pair<std::size_t, std::size_t>>& scan,
               std::size_t a, std::size_t b)
{
    if (a == b && p.quiver.arrows[a].kind == ArrowKind::SpecialLoop)
        return true;
    for (const auto& z : scan)
        if (z.first == a && z.second == b)
            return true;
    return false;
}

} // namespace

GradedWordBasis normal_words(const ClannishPresentation& p, std::size_t degree_cap, std::optional<std::uint64_t> scan_seed)
{
    if (degree_cap < 1)
        throw PreconditionError("normal_words: degree cap must be at least 1");
    const auto& q = p.quiver;
    std::vector<std::size_t> order(q.arrows.size());
    std::iota(order.begin(), order.end(), 0);
    auto scan = p.zero_relations;
    if (scan_seed) {
        std::mt19937_64 rng(*scan_seed);
        std::shuffle(order.begin(), order.end(), rng);
        std::shuffle(scan.begin(), scan.end(), rng);
    }

    GradedWordBasis g;
    std::vector<BasisWord> layer;
    for (std::size_t v = 0; v < q.vertices.size(); ++v)
        layer.push_back({v, v, {}});
    for (std::size_t d = 0; d < degree_cap; ++d) {
        std::sort(layer.begin(), layer.end());
        layer.erase(std::unique(layer.begin(), layer.end()), layer.end());
        g.cap_used = d;
        if (layer.empty()) {
            g.finite = true;
            return g;
        }
        g.words.push_back(layer);
        std::vector<BasisWord> next;
        for (const auto& w : layer)
            for (std::size_t b : order) {
                if (q.arrows[b].head != w.tail)
                    continue;
                if (!w.arrows.empty() && forbidden(p, scan, w.arrows.back(), b))
                    continue;
                BasisWord x = w;
                x.arrows.push_back(b);
                x.tail = q.arrows[b].tail;
                next.push_back(std::move(x));
            }
        layer = std::move(next);
    }
    g.cap_used = degree_cap;
    return g;
}

std::string word_label(const ClannishPresentation& p, const BasisWord& w)
{
    if (w.arrows.empty())
        return "e[" + p.quiver.vertices[w.head] + "]";
    std::string s;
    for (std::size_t k = 0; k < w.arrows.size(); ++k)
        s += (k ? " " : "") + p.quiver.arrows[w.arrows[k]].id;
    return s;
}

Automorphism word_automorphism(const ClannishPresentation& p, const Word& w)
{
    bool conj = false;
    for (std::size_t a : w)
        conj ^= p.sigma[a] == Automorphism::Conjugation;
    return conj ? Automorphism::Conjugation : Automorphism::Identity;
}

algebra::StructureAlgebra realize_real_algebra(const ClannishPresentation& p, const GradedWordBasis& basis)
{
    if (!basis.finite)
        throw RefusalError("realize: word basis is not finite below degree " + std::to_string(basis.cap_used));
    const bool cplx = p.field == BaseField::Complex;
    const std::size_t scalars = cplx ? 2 : 1;

    std::vector<BasisWord> words;
    for (const auto& layer : basis.words)
        words.insert(words.end(), layer.begin(), layer.end());
    std::map<BasisWord, std::size_t> index;
    for (std::size_t k = 0; k < words.size(); ++k)
        index[words[k]] = k;

    std::vector<std::string> labels;
    for (const auto& w : words) {
        labels.push_back(word_label(p, w));
        if (cplx)
            labels.push_back("i*" + word_label(p, w));
    }

    const std::size_t n = words.size() * scalars;
    std::vector<algebra::StructureAlgebra::SparseVector> products(n * n);
    for (std::size_t x = 0; x < words.size(); ++x)
        for (std::size_t y = 0; y < words.size(); ++y) {
            const auto& u = words[x];
            const auto& v = words[y];
            if (u.tail != v.head)
                continue;
            // Reduce u v at the junction: ss -> loop_square * e, Z -> 0.
            Word left = u.arrows;
            Word right = v.arrows;
            std::size_t r0 = 0;
            int sign = 1;
            bool zero = false;
            while (!left.empty() && r0 < right.size()) {
                std::size_t a = left.back(), b = right[r0];
                if (a == b && p.quiver.arrows[a].kind == ArrowKind::SpecialLoop) {
                    sign *= p.loop_square.at(a);
                    left.pop_back();
                    ++r0;
                    continue;
                }
                zero = p.in_zero_relations(a, b);
                break;
            }
            if (zero)
                continue;
            BasisWord w{u.head, v.tail, left};
            w.arrows.insert(w.arrows.end(), right.begin() + static_cast<std::ptrdiff_t>(r0), right.end());
            auto it = index.find(w);
            if (it == index.end())
                throw InternalError("realize: reduced word " + word_label(p, w) + " is not in the basis");
            const bool conj = word_automorphism(p, u.arrows) == Automorphism::Conjugation;
            for (std::size_t b1 = 0; b1 < scalars; ++b1)
                for (std::size_t b2 = 0; b2 < scalars; ++b2) {
                    // b1 * sigma_u(b2) with b in {1, i}.
                    int s = sign;
                    if (b2 == 1 && conj)
                        s = -s;
                    if (b1 == 1 && b2 == 1)
                        s = -s;
                    std::size_t bit = b1 ^ b2;
                    products[(x * scalars + b1) * n + (y * scalars + b2)] = {{it->second * scalars + bit, Rational(s)}};
                }
        }

    Vector unit(n);
    for (std::size_t k = 0; k < words.size(); ++k)
        if (words[k].arrows.empty())
            unit[k * scalars] = 1;
    return algebra::StructureAlgebra(std::move(labels), std::move(products), std::move(unit));
}

} // namespace orbiclan::clannish
