// Thin JSON-in, JSON-out layer over the core library.

#include "orbiclan/algebra.hpp"
#include "orbiclan/clannish.hpp"
#include "orbiclan/complex.hpp"
#include "orbiclan/errors.hpp"
#include "orbiclan/pipeline.hpp"
#include "orbiclan/species.hpp"
#include "orbiclan/surface.hpp"

#include <pybind11/pybind11.h>

namespace py = pybind11;
using namespace orbiclan;
using nlohmann::json;

namespace {

pipeline::RunConfig make_config(const std::string& flavor, std::size_t degree_cap, std::size_t cocycle_cap,
                                const std::string& potential)
{
    pipeline::RunConfig cfg;
    cfg.pairing = pipeline::parse_pairing(flavor);
    cfg.degree_cap = degree_cap;
    cfg.cocycle_cap = cocycle_cap;
    if (potential == "plain")
        cfg.convention = species::PotentialConvention::Plain;
    else if (potential != "second-twisted")
        throw InputError("potential: expected plain or second-twisted, got \"" + potential + "\"");
    cfg.check();
    return cfg;
}

surface::TriangulationData valid_input(const std::string& doc)
{
    auto t = surface::parse_triangulation(doc);
    auto r = surface::validate(t);
    if (!r.ok)
        throw PreconditionError("invalid triangulation: " + r.to_json().dump());
    return t;
}

std::string validate(const std::string& doc)
{
    auto t = surface::parse_triangulation(doc);
    auto r = surface::validate(t);
    json j = r.to_json();
    if (r.ok)
        j["census"] = surface::triangle_census(t).to_json();
    return j.dump();
}

std::string cocycles(const std::string& doc, std::size_t cap)
{
    auto c = complex::build_cw_complex(valid_input(doc));
    json out = json::array();
    for (const auto& xi : complex::enumerate_cocycles(c, cap))
        out.push_back(complex::cocycle_to_json(c, xi));
    return out.dump();
}

py::tuple run(const std::string& doc, const std::string& flavor, std::size_t degree_cap, std::size_t cocycle_cap,
              const std::string& potential)
{
    auto cfg = make_config(flavor, degree_cap, cocycle_cap, potential);
    auto t = surface::parse_triangulation(doc);
    pipeline::Report rep;
    {
        py::gil_scoped_release release;
        rep = pipeline::run_pipeline(t, cfg);
    }
    return py::make_tuple(rep.to_json().dump(), rep.exit_code());
}

py::tuple sweep(const std::string& dir, const std::string& flavor, std::size_t degree_cap, std::size_t cocycle_cap,
                const std::string& potential)
{
    auto cfg = make_config(flavor, degree_cap, cocycle_cap, potential);
    pipeline::SweepSummary s;
    {
        py::gil_scoped_release release;
        s = pipeline::corpus_sweep(dir, cfg);
    }
    return py::make_tuple(s.to_json().dump(), s.exit_code());
}

std::string export_case(const std::string& doc, std::size_t index, const std::string& flavor,
                        const std::string& potential)
{
    auto t = valid_input(doc);
    auto c = complex::build_cw_complex(t);
    auto all = complex::enumerate_cocycles(c, 4096);
    if (index >= all.size())
        throw InputError("cocycle index " + std::to_string(index) + " out of range");
    const auto f = species::parse_flavor(flavor);
    const bool b_like = f == species::Flavor::BLike;
    auto cfg = make_config(b_like ? "b" : "c", 32, 4096, potential);
    const auto& xi = all[index];
    auto pres = clannish::build_clannish_presentation(
        t, c, xi, b_like ? clannish::BaseField::Complex : clannish::BaseField::Real);
    auto sp = species::build_species(t, c, xi, species::assign_fields(t, f));
    species::TensorAlgebra ta(sp);
    auto w = species::build_potential(c, sp, cfg.convention);
    return json{{"schema", "orbiclan/1"},
                {"cocycle", complex::cocycle_to_json(c, xi)},
                {"presentation", pres.to_json()},
                {"species", species::species_export(ta, w, species::relations(ta, w))}}
        .dump();
}

std::string morita_profile(const std::string& algebra_doc)
{
    return algebra::morita_profile(algebra::StructureAlgebra::from_json(json::parse(algebra_doc))).to_json().dump();
}

std::string compare_morita(const std::string& p, const std::string& q)
{
    return algebra::compare_morita(algebra::MoritaProfile::from_json(json::parse(p)),
                                   algebra::MoritaProfile::from_json(json::parse(q)))
        .to_json()
        .dump();
}

std::string reference_algebra(const std::string& name)
{
    if (name == "R")
        return algebra::real_field().to_json().dump();
    if (name == "C")
        return algebra::complex_field().to_json().dump();
    if (name == "H")
        return algebra::quaternions().to_json().dump();
    if (name == "M2")
        return algebra::full_matrix_algebra(2).to_json().dump();
    if (name == "U2")
        return algebra::upper_triangular_algebra(2).to_json().dump();
    throw InputError("reference algebra: expected R, C, H, M2 or U2, got \"" + name + "\"");
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "orbiclan core (JSON strings in and out)";

    static py::exception<Error> base(m, "OrbiclanError");
    static py::exception<RefusalError> refusal(m, "RefusalError", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const RefusalError& e) {
            py::set_error(refusal, e.what());
        } catch (const Error& e) {
            py::set_error(base, e.what());
        } catch (const json::exception& e) {
            py::set_error(base, e.what());
        }
    });

    m.def("validate", &validate, py::arg("doc"));
    m.def("cocycles", &cocycles, py::arg("doc"), py::arg("cap") = 4096);
    m.def("run", &run, py::arg("doc"), py::arg("flavor") = "both", py::arg("degree_cap") = 32,
          py::arg("cocycle_cap") = 4096, py::arg("potential") = "second-twisted");
    m.def("sweep", &sweep, py::arg("dir"), py::arg("flavor") = "both", py::arg("degree_cap") = 32,
          py::arg("cocycle_cap") = 4096, py::arg("potential") = "second-twisted");
    m.def("export", &export_case, py::arg("doc"), py::arg("cocycle") = 0, py::arg("flavor") = "b",
          py::arg("potential") = "second-twisted");
    m.def("morita_profile", &morita_profile, py::arg("algebra"));
    m.def("reference_algebra", &reference_algebra, py::arg("name"));
    m.def("compare_morita", &compare_morita, py::arg("p"), py::arg("q"));
}
