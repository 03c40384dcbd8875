// orbiclan: command-line front end.
//
//   orbiclan run FILE       full comparison for every cocycle
//   orbiclan sweep DIR      run over every *.json in DIR
//   orbiclan validate FILE  local rules and triangle census
//   orbiclan cocycles FILE  CW complex, boundary matrices, cocycles
//   orbiclan export FILE    presentation and species for one cocycle

#include "orbiclan/clannish.hpp"
#include "orbiclan/complex.hpp"
#include "orbiclan/errors.hpp"
#include "orbiclan/pipeline.hpp"
#include "orbiclan/species.hpp"
#include "orbiclan/surface.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace orbiclan;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit(const std::string& out, const std::string& body)
{
    if (out.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream f(out);
    if (!f)
        throw InputError("cannot write " + out);
    f << body;
}

std::string render(const json& j) { return j.dump(2) + "\n"; }

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Clannish and Jacobian algebras of colored triangulations"};
    app.require_subcommand(1);

    pipeline::RunConfig cfg;
    std::string flavor = "both", format = "json", potential = "second-twisted";
    auto common = [&](CLI::App* sub) {
        sub->add_option("--flavor", flavor, "pairing: b (B-like vs K=C), c (C-like vs K=R) or both")
            ->check(CLI::IsMember({"b", "c", "both"}));
        sub->add_option("--degree-cap", cfg.degree_cap, "largest degree explored")->check(CLI::PositiveNumber);
        sub->add_option("--cocycle-cap", cfg.cocycle_cap, "largest number of cocycles enumerated")
            ->check(CLI::PositiveNumber);
        sub->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--out", cfg.output, "output path (default: standard output)");
        sub->add_option("--potential", potential, "potential convention: plain or second-twisted")
            ->check(CLI::IsMember({"plain", "second-twisted"}));
    };

    std::string path;
    auto* run = app.add_subcommand("run", "compare both algebras for every cocycle");
    run->add_option("file", path, "triangulation JSON")->required();
    common(run);

    std::string dir;
    auto* sweep = app.add_subcommand("sweep", "run every *.json file of a directory");
    sweep->add_option("dir", dir, "directory")->required();
    common(sweep);

    auto* val = app.add_subcommand("validate", "check the local rules");
    val->add_option("file", path, "triangulation JSON")->required();
    val->add_option("--out", cfg.output, "output path");

    auto* coc = app.add_subcommand("cocycles", "CW complex, boundary matrices and cocycles");
    coc->add_option("file", path, "triangulation JSON")->required();
    coc->add_option("--cocycle-cap", cfg.cocycle_cap, "largest number of cocycles enumerated");
    coc->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    coc->add_option("--out", cfg.output, "output path");

    std::size_t index = 0;
    auto* exp = app.add_subcommand("export", "presentation and species of one colored triangulation");
    exp->add_option("file", path, "triangulation JSON")->required();
    exp->add_option("--cocycle", index, "cocycle index in enumeration order");
    exp->add_option("--flavor", flavor, "b or c")->check(CLI::IsMember({"b", "c"}));
    exp->add_option("--potential", potential, "plain or second-twisted")
        ->check(CLI::IsMember({"plain", "second-twisted"}));
    exp->add_option("--out", cfg.output, "output path");

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.pairing = pipeline::parse_pairing(flavor);
        cfg.format = format == "text" ? pipeline::Format::Text : pipeline::Format::Json;
        cfg.convention = potential == "plain" ? species::PotentialConvention::Plain
                                              : species::PotentialConvention::SecondTwisted;

        if (*run) {
            cfg.input = path;
            auto rep = pipeline::run_pipeline(cfg);
            if (rep.exit_code() == 2) {
                std::cerr << rep.to_text();
                return 2;
            }
            emit(cfg.output, cfg.format == pipeline::Format::Json ? render(rep.to_json()) : rep.to_text());
            return rep.exit_code();
        }
        if (*sweep) {
            auto s = pipeline::corpus_sweep(dir, cfg);
            emit(cfg.output, cfg.format == pipeline::Format::Json ? render(s.to_json()) : s.to_text());
            return s.exit_code();
        }

        auto t = surface::parse_triangulation(slurp(path));
        if (*val) {
            auto r = surface::validate(t);
            json j = r.to_json();
            if (r.ok)
                j["census"] = surface::triangle_census(t).to_json();
            emit(cfg.output, render(j));
            return r.ok ? 0 : 2;
        }
        if (!surface::validate(t).ok) {
            std::cerr << render(surface::validate(t).to_json());
            return 2;
        }
        auto c = complex::build_cw_complex(t);
        if (*coc) {
            auto b = complex::boundary_matrices(c);
            auto all = complex::enumerate_cocycles(c, cfg.cocycle_cap);
            if (format == "text") {
                std::ostringstream os;
                os << "d2 (" << b.d2.rows() << "x" << b.d2.cols() << ")\n" << b.d2.to_text();
                os << "d1 (" << b.d1.rows() << "x" << b.d1.cols() << ")\n" << b.d1.to_text();
                os << "cocycles: " << all.size() << "\n";
                for (const auto& xi : all)
                    os << complex::cocycle_to_json(c, xi).dump() << "\n";
                emit(cfg.output, os.str());
                return 0;
            }
            json cs = json::array();
            for (const auto& xi : all)
                cs.push_back(complex::cocycle_to_json(c, xi));
            emit(cfg.output, render(json{{"complex", c.to_json()},
                                         {"d2", b.d2.to_text()},
                                         {"d1", b.d1.to_text()},
                                         {"kernel_dim", complex::cocycle_basis(c).size()},
                                         {"cocycles", cs}}));
            return 0;
        }
        if (*exp) {
            auto all = complex::enumerate_cocycles(c, cfg.cocycle_cap);
            if (index >= all.size())
                throw InputError("cocycle index " + std::to_string(index) + " out of range (" +
                                 std::to_string(all.size()) + " cocycles)");
            const auto& xi = all[index];
            const bool b_like = cfg.pairing != pipeline::Pairing::CReal;
            auto pres = clannish::build_clannish_presentation(
                t, c, xi, b_like ? clannish::BaseField::Complex : clannish::BaseField::Real);
            auto sp = species::build_species(
                t, c, xi, species::assign_fields(t, b_like ? species::Flavor::BLike : species::Flavor::CLike));
            species::TensorAlgebra ta(sp);
            auto w = species::build_potential(c, sp, cfg.convention);
            emit(cfg.output, render(json{{"schema", "orbiclan/1"},
                                         {"cocycle", complex::cocycle_to_json(c, xi)},
                                         {"presentation", pres.to_json()},
                                         {"species", species::species_export(ta, w, species::relations(ta, w))}}));
            return 0;
        }
    } catch (const RefusalError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
