#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "arcgeo/families.hpp"
#include "arcgeo/triangulate.hpp"

namespace py = pybind11;
using namespace arcgeo;

namespace {

SolverConfig make_config(int starts, std::uint64_t seed)
{
    SolverConfig c;
    c.start_count = starts;
    c.seed = seed;
    return c;
}

std::string certify_json(const std::string& pd, int starts, std::uint64_t seed, const std::string& solution)
{
    LinkDiagram d = parse_pd(pd);
    CertifyOptions opt;
    opt.solver = make_config(starts, seed);
    if (solution.empty())
        return certificate_to_json(certify(d, opt), nullptr).dump();
    EquationSystem sys = region_equations(d);
    Certificate c = certify(d, sys, solution_from_json(sys, nlohmann::json::parse(solution)), opt);
    return certificate_to_json(c, &sys).dump();
}

std::string solve_json(const std::string& pd, int starts, std::uint64_t seed)
{
    LinkDiagram d = parse_pd(pd);
    EquationSystem sys = region_equations(d);
    SolveReport rep = solve(sys, make_config(starts, seed));
    GeometricPick pick = pick_geometric(rep.solutions, sys, d);
    nlohmann::json sols = nlohmann::json::array();
    nlohmann::json geometric = nullptr;
    for (std::size_t i = 0; i < rep.solutions.size(); ++i) {
        sols.push_back(solution_to_json(sys, rep.solutions[i]));
        if (pick.solution && geometric.is_null() && pick.solution->x == rep.solutions[i].x)
            geometric = i;
    }
    return nlohmann::json{{"solutions", sols}, {"geometric", geometric}, {"diagnostic", pick.diagnostic}}.dump();
}

}  // namespace

PYBIND11_MODULE(_arcgeo, m)
{
    m.doc() = "Native core of arcgeo";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<StructureError>(m, "StructureError", PyExc_ValueError);

    m.def("classify", [](const std::string& pd) {
        LinkDiagram d = parse_pd(pd);
        DiagramReport r = classify(d);
        std::vector<int> arities;
        for (auto& reg : d.regions())
            arities.push_back(reg.arity());
        py::dict out;
        out["crossings"] = d.crossing_count();
        out["components"] = d.component_count();
        out["alternating"] = r.alternating;
        out["reduced"] = r.reduced;
        out["bigons"] = r.bigons;
        out["nugatory"] = r.nugatory;
        out["region_arities"] = arities;
        return out;
    });
    m.def("equations_json", [](const std::string& pd) { return system_to_json(region_equations(parse_pd(pd))).dump(); });
    m.def("equations_text", [](const std::string& pd) {
        LinkDiagram d = parse_pd(pd);
        return system_to_text(region_equations(d), d);
    });
    m.def("solve_json", &solve_json, py::arg("pd"), py::arg("starts") = 200, py::arg("seed") = 1,
          py::call_guard<py::gil_scoped_release>());
    m.def("certify_json", &certify_json, py::arg("pd"), py::arg("starts") = 200, py::arg("seed") = 1,
          py::arg("solution") = "", py::call_guard<py::gil_scoped_release>());
    m.def("braid_pd", [](int k, int n, bool suffixed) {
        return braid_pd(braid_word({k, n, suffixed}), 2 * k + 2);
    }, py::arg("k"), py::arg("n"), py::arg("suffixed") = false);
    m.def("braid_closed_form", [](int k, int n, bool suffixed) {
        BraidClosedForm cf = braid_closed_form({k, n, suffixed});
        py::dict out;
        out["applies"] = cf.applies;
        out["residual"] = cf.solution.residual;
        out["assignment"] = solution_to_json(cf.system, cf.solution)["assignment"].dump();
        out["arities"] = cf.arities;
        return out;
    }, py::arg("k"), py::arg("n"), py::arg("suffixed") = false);
    m.def("regular_region_shape", &regular_region_shape, py::arg("m"));
    m.def("lobachevsky", &lobachevsky, py::arg("theta"));
    m.def("tetrahedron_volume", &tetrahedron_volume, py::arg("z"));
}
