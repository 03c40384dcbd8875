#include "orbiclan/pipeline.hpp"

#include "orbiclan/clannish.hpp"
#include "orbiclan/complex.hpp"
#include "orbiclan/errors.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace orbiclan::pipeline {

using nlohmann::json;

std::string to_string(Pairing p)
{
    switch (p) {
    case Pairing::BComplex: return "B/C";
    case Pairing::CReal: return "C/R";
    case Pairing::Both: return "both";
    }
    return "?";
}

Pairing parse_pairing(const std::string& s)
{
    if (s == "b")
        return Pairing::BComplex;
    if (s == "c")
        return Pairing::CReal;
    if (s == "both")
        return Pairing::Both;
    throw InputError("flavor: expected b, c or both, got \"" + s + "\"");
}

void RunConfig::check() const
{
    if (degree_cap < 2)
        throw InputError("degree cap must be at least 2");
    if (cocycle_cap < 1)
        throw InputError("cocycle cap must be positive");
}

json convention_block(const RunConfig& cfg)
{
    return json{{"arrow_direction", "for clockwise-consecutive sides (k, j) the arrow runs k -> j"},
                {"arrow_ids", "t<triangle>.<slot>, slot s joins sides s and s+1 mod 3"},
                {"two_cell_rotation", "least arrow id first"},
                {"composition", "function-style: in ab, b acts first"},
                {"zero_relations", "all three consecutive composites of each 2-cell"},
                {"potential", species::to_string(cfg.convention) ==
                                      "plain"
                                  ? "one 3-cycle of canonical generators per 2-cell, coefficient +1, summed over "
                                    "parallel generators"
                                  : "as plain, but the second parallel generator enters with i at the opposite vertex"},
                {"potential_convention", species::to_string(cfg.convention)},
                {"pairings", "B-like species vs clannish over C; C-like species vs clannish over R"},
                {"cocycles", "raw 1-cocycles, not quotiented by coboundaries"},
                {"degree_cap", cfg.degree_cap},
                {"cocycle_cap", cfg.cocycle_cap}};
}

namespace {

json side_json(const SideResult& s)
{
    return json{{"graded_dims", s.graded_dims},
                {"dim", s.dim},
                {"profile", s.profile.to_json()},
                {"profile_hash", s.profile.hash()}};
}

std::string join(const std::vector<std::size_t>& v)
{
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k)
        s += (k ? "," : "") + std::to_string(v[k]);
    return s;
}

} // namespace

json CaseResult::to_json() const
{
    json j{{"cocycle_index", cocycle_index},
           {"cocycle", cocycle},
           {"pairing", pipeline::to_string(pairing)},
           {"status", status}};
    if (mutated)
        j["mutated"] = true;
    if (!reason.empty())
        j["reason"] = reason;
    if (clannish)
        j["clannish"] = side_json(*clannish);
    if (jacobian)
        j["jacobian"] = side_json(*jacobian);
    if (verdict)
        j["verdict"] = verdict->to_json();
    return j;
}

CaseResult run_case(const surface::TriangulationData& t, const complex::CWComplex& c, const complex::Cocycle& xi,
                    std::size_t index, Pairing pairing, const RunConfig& cfg)
{
    CaseResult r;
    r.cocycle_index = index;
    r.cocycle = complex::cocycle_to_json(c, xi);
    r.pairing = pairing;
    const bool b_like = pairing == Pairing::BComplex;
    try {
        auto pres = clannish::build_clannish_presentation(
            t, c, xi, b_like ? clannish::BaseField::Complex : clannish::BaseField::Real);
        auto words = clannish::normal_words(pres, cfg.degree_cap);
        auto cl = clannish::realize_real_algebra(pres, words);
        SideResult left;
        for (const auto& layer : words.words)
            left.graded_dims.push_back(layer.size() * (b_like ? 2 : 1));
        left.dim = cl.dim();
        left.profile = algebra::morita_profile(cl);
        r.clannish = std::move(left);

        auto sp = species::build_species(
            t, c, xi, species::assign_fields(t, b_like ? species::Flavor::BLike : species::Flavor::CLike));
        species::TensorAlgebra ta(sp);
        auto w = species::build_potential(c, sp, cfg.convention);
        auto rels = species::relations(ta, w);
        // Test hook: meta.mutation.drop_relations removes the derivatives
        // with respect to the listed arrows before taking the quotient.
        if (t.meta && t.meta->contains("mutation")) {
            const auto& drop = t.meta->at("mutation").value("drop_relations", json::array());
            std::erase_if(rels, [&](const species::Relation& rel) {
                return std::find(drop.begin(), drop.end(), json(sp.arrows[rel.arrow].arrow)) != drop.end();
            });
            r.mutated = true;
        }
        auto jac = species::jacobian_algebra(ta, rels, cfg.degree_cap);
        SideResult right;
        right.graded_dims = jac.graded_dims;
        right.dim = jac.algebra.dim();
        right.profile = algebra::morita_profile(jac.algebra);
        r.jacobian = std::move(right);

        r.verdict = algebra::compare_morita(r.clannish->profile, r.jacobian->profile);
        r.status = r.verdict->consistent ? "consistent" : "inconsistent";
    } catch (const RefusalError& e) {
        r.status = "skipped";
        r.reason = e.what();
    }
    return r;
}

Report run_pipeline(const surface::TriangulationData& t, const RunConfig& cfg)
{
    cfg.check();
    Report rep;
    rep.input = cfg.input;
    rep.config = cfg;
    rep.validation = surface::validate(t);
    rep.valid = rep.validation.ok;
    if (!rep.valid)
        return rep;
    rep.census = surface::triangle_census(t);
    auto c = complex::build_cw_complex(t);
    std::vector<complex::Cocycle> cocycles;
    try {
        cocycles = complex::enumerate_cocycles(c, cfg.cocycle_cap);
    } catch (const RefusalError& e) {
        rep.error = e.what();
        return rep;
    }
    rep.cocycle_count = cocycles.size();
    std::vector<Pairing> pairings;
    if (cfg.pairing != Pairing::CReal)
        pairings.push_back(Pairing::BComplex);
    if (cfg.pairing != Pairing::BComplex)
        pairings.push_back(Pairing::CReal);
    for (std::size_t k = 0; k < cocycles.size(); ++k)
        for (auto p : pairings)
            rep.cases.push_back(run_case(t, c, cocycles[k], k, p, cfg));
    return rep;
}

Report run_pipeline(const RunConfig& cfg)
{
    cfg.check();
    std::ifstream in(cfg.input);
    if (!in) {
        Report rep;
        rep.input = cfg.input;
        rep.config = cfg;
        rep.error = "cannot open " + cfg.input;
        return rep;
    }
    std::ostringstream os;
    os << in.rdbuf();
    try {
        return run_pipeline(surface::parse_triangulation(os.str()), cfg);
    } catch (const ParseError& e) {
        Report rep;
        rep.input = cfg.input;
        rep.config = cfg;
        rep.error = e.what();
        return rep;
    } catch (const SchemaError& e) {
        Report rep;
        rep.input = cfg.input;
        rep.config = cfg;
        rep.error = e.what();
        return rep;
    }
}

int Report::exit_code() const
{
    if (!valid || !error.empty())
        return 2;
    for (const auto& c : cases)
        if (c.status == "inconsistent")
            return 1;
    return 0;
}

json Report::to_json() const
{
    json cs = json::array();
    for (const auto& c : cases)
        cs.push_back(c.to_json());
    json j{{"schema", "orbiclan/1"},
           {"input", input},
           {"conventions", convention_block(config)},
           {"valid", valid},
           {"validation", validation.to_json()}};
    if (!error.empty())
        j["error"] = error;
    if (census)
        j["census"] = census->to_json();
    j["cocycle_count"] = cocycle_count;
    j["cases"] = cs;
    j["note"] = "a consistent verdict means the Morita invariants agree; it is necessary for Morita "
                "equivalence, not a proof of it";
    j["exit_code"] = exit_code();
    return j;
}

std::string Report::to_text() const
{
    std::ostringstream os;
    os << "input: " << input << "\n";
    if (!valid || !error.empty()) {
        os << "invalid input" << (error.empty() ? "" : ": " + error) << "\n";
        for (const auto& v : validation.violations)
            os << "  " << v.rule << ": " << v.message << "\n";
        return os.str();
    }
    os << "cocycles: " << cocycle_count << "\n";
    os << std::left << std::setw(8) << "cocycle" << std::setw(8) << "pair" << std::setw(14) << "status"
       << std::setw(8) << "dimCl" << std::setw(8) << "dimJac" << "clannish dims / jacobian dims\n";
    for (const auto& c : cases) {
        os << std::left << std::setw(8) << c.cocycle_index << std::setw(8) << to_string(c.pairing) << std::setw(14)
           << c.status;
        if (c.clannish && c.jacobian)
            os << std::setw(8) << c.clannish->dim << std::setw(8) << c.jacobian->dim << "[" << join(c.clannish->graded_dims)
               << "] / [" << join(c.jacobian->graded_dims) << "]";
        else
            os << c.reason;
        if (c.verdict && !c.verdict->consistent)
            os << "  " << c.verdict->witness;
        os << "\n";
    }
    os << "consistent means the Morita invariants agree, not that equivalence is proved\n";
    return os.str();
}

// ---------------------------------------------------------------------------

int SweepSummary::exit_code() const
{
    int code = 0;
    for (const auto& r : rows)
        if (r.status == "inconsistent")
            code = 1;
    if (!failures.empty() && code == 0)
        code = 2;
    return code;
}

json SweepSummary::to_json() const
{
    json rs = json::array();
    for (const auto& r : rows)
        rs.push_back(json{{"file", r.file},
                          {"cocycle_index", r.cocycle_index},
                          {"pairing", r.pairing},
                          {"status", r.status},
                          {"clannish_dim", r.clannish_dim},
                          {"jacobian_dim", r.jacobian_dim},
                          {"clannish_hash", r.clannish_hash},
                          {"jacobian_hash", r.jacobian_hash}});
    json fs = json::array();
    for (const auto& [file, reason] : failures)
        fs.push_back(json{{"file", file}, {"reason", reason}});
    return json{{"schema", "orbiclan/1"}, {"rows", rs}, {"failures", fs}, {"exit_code", exit_code()}};
}

std::string SweepSummary::to_text() const
{
    std::ostringstream os;
    os << std::left << std::setw(24) << "file" << std::setw(8) << "cocycle" << std::setw(6) << "pair"
       << std::setw(14) << "status" << std::setw(7) << "dimCl" << std::setw(7) << "dimJac" << std::setw(18)
       << "hashCl" << "hashJac\n";
    for (const auto& r : rows)
        os << std::left << std::setw(24) << r.file << std::setw(8) << r.cocycle_index << std::setw(6) << r.pairing
           << std::setw(14) << r.status << std::setw(7) << r.clannish_dim << std::setw(7) << r.jacobian_dim
           << std::setw(18) << r.clannish_hash << r.jacobian_hash << (r.status == "inconsistent" ? "  <-- FLAGGED" : "")
           << "\n";
    for (const auto& [file, reason] : failures)
        os << "FAILED " << file << ": " << reason << "\n";
    return os.str();
}

SweepSummary corpus_sweep(const std::string& dir, const RunConfig& defaults)
{
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir))
        throw InputError("sweep: not a directory: " + dir);
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".json")
            files.push_back(e.path());
    std::sort(files.begin(), files.end());

    SweepSummary s;
    for (const auto& f : files) {
        RunConfig cfg = defaults;
        cfg.input = f.string();
        const std::string name = f.filename().string();
        try {
            auto rep = run_pipeline(cfg);
            if (rep.exit_code() == 2) {
                std::string why = rep.error;
                for (const auto& v : rep.validation.violations)
                    why += (why.empty() ? "" : "; ") + v.rule + ": " + v.message;
                s.failures.emplace_back(name, why);
                continue;
            }
            for (const auto& c : rep.cases) {
                SweepRow row{name, c.cocycle_index, to_string(c.pairing), c.status, 0, 0, "", ""};
                if (c.clannish) {
                    row.clannish_dim = c.clannish->dim;
                    row.clannish_hash = c.clannish->profile.hash();
                }
                if (c.jacobian) {
                    row.jacobian_dim = c.jacobian->dim;
                    row.jacobian_hash = c.jacobian->profile.hash();
                }
                s.rows.push_back(std::move(row));
            }
        } catch (const Error& e) {
            s.failures.emplace_back(name, e.what());
        }
    }
    return s;
}

} // namespace orbiclan::pipeline
