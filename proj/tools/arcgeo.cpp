// arcgeo command-line front end
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "arcgeo/families.hpp"
#include "arcgeo/triangulate.hpp"

using namespace arcgeo;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFail = 1, kInconclusive = 2, kInputError = 3 };

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string pd;
    std::string solution;
    int starts = 200;
    std::uint64_t seed = 1;
    double tol = 1e-10;
    int base_region = -1;
    std::string format = "json";
    std::string out;
    int threads = 1;
    bool alternate_fan = false;
    BraidSpec braid;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

LinkDiagram load_diagram(const RunConfig& cfg)
{
    if (cfg.pd.empty())
        throw InputError("no diagram given (--pd FILE or ARCGEO_PD)");
    // an argument that is not a file but looks like a PD code is taken inline
    std::string text = std::filesystem::exists(cfg.pd) || cfg.pd.find('[') == std::string::npos
                           ? read_file(cfg.pd)
                           : cfg.pd;
    LinkDiagram d;
    try {
        d = parse_pd(text);
    } catch (const std::runtime_error& e) {
        throw InputError(e.what());
    }
    if (cfg.base_region >= 0 &&
        (cfg.base_region >= static_cast<int>(d.regions().size()) || d.regions()[cfg.base_region].arity() < 3))
        throw InputError("--base-region " + std::to_string(cfg.base_region) +
                         " is not a region with three or more sides");
    return d;
}

SolverConfig solver_config(const RunConfig& cfg)
{
    SolverConfig s;
    s.start_count = cfg.starts;
    s.seed = cfg.seed;
    s.tolerance = cfg.tol;
    s.threads = cfg.threads;
    return s;
}

Solution load_solution(const EquationSystem& sys, const std::string& path)
{
    json j;
    try {
        j = json::parse(read_file(path));
        return solution_from_json(sys, j);
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed solution file: ") + e.what());
    } catch (const InputError&) {
        throw;
    } catch (const std::runtime_error& e) {
        throw InputError(e.what());
    }
}

// the given solution, or the geometric pick of a fresh solve
std::optional<Solution> obtain_solution(const RunConfig& cfg, const LinkDiagram& d, const EquationSystem& sys,
                                        std::string& diagnostic)
{
    if (!cfg.solution.empty())
        return load_solution(sys, cfg.solution);
    SolveReport rep = solve(sys, solver_config(cfg));
    GeometricPick pick = pick_geometric(rep.solutions, sys, d);
    diagnostic = pick.diagnostic;
    return pick.solution;
}

void emit(const RunConfig& cfg, const std::string& name, const json& j, const std::string& text)
{
    const bool as_text = cfg.format == "text";
    std::string body = as_text ? text : j.dump(2) + "\n";
    if (cfg.out.empty()) {
        std::cout << body;
        return;
    }
    std::filesystem::create_directories(cfg.out);
    auto path = std::filesystem::path(cfg.out) / (name + (as_text ? ".txt" : ".json"));
    std::ofstream f(path);
    if (!f)
        throw InputError("cannot write " + path.string());
    f << body;
}

std::string fmt(cplx z)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10f%+.10fi", z.real(), z.imag());
    return buf;
}

std::string assignment_text(const EquationSystem& sys, const Solution& s)
{
    std::string t;
    for (int i = 0; i < sys.size(); ++i)
        t += "  " + sys.variables[i].name + " = " + fmt(s.x[i]) + "\n";
    return t;
}

int run_solve(const RunConfig& cfg)
{
    LinkDiagram d = load_diagram(cfg);
    EquationSystem sys = region_equations(d);
    SolveReport rep = solve(sys, solver_config(cfg));
    GeometricPick pick = pick_geometric(rep.solutions, sys, d);
    json sols = json::array();
    int geometric = -1;
    for (std::size_t i = 0; i < rep.solutions.size(); ++i) {
        sols.push_back(solution_to_json(sys, rep.solutions[i]));
        if (pick.solution && pick.solution->x == rep.solutions[i].x && geometric < 0)
            geometric = static_cast<int>(i);
    }
    json j = {{"system", system_to_json(sys)},
              {"starts", cfg.starts},
              {"seed", cfg.seed},
              {"converged_starts", rep.converged_starts},
              {"best_residual", rep.best_residual},
              {"solutions", sols},
              {"geometric", geometric >= 0 ? json(geometric) : json(nullptr)},
              {"fully_passing", pick.fully_passing},
              {"diagnostic", pick.diagnostic}};
    std::string text = system_to_text(sys, d);
    text += std::to_string(rep.solutions.size()) + " distinct solutions from " + std::to_string(cfg.starts) +
            " starts (" + std::to_string(rep.converged_starts) + " converged)\n";
    if (pick.solution)
        text += "geometric solution #" + std::to_string(geometric) + ":\n" + assignment_text(sys, *pick.solution);
    if (!pick.diagnostic.empty())
        text += pick.diagnostic + "\n";
    emit(cfg, "solve", j, text);
    return pick.solution && pick.fully_passing > 0 ? kOk : kFail;
}

int run_check(const RunConfig& cfg)
{
    LinkDiagram d = load_diagram(cfg);
    EquationSystem sys = region_equations(d);
    std::string diag;
    auto sol = obtain_solution(cfg, d, sys, diag);
    if (!sol) {
        emit(cfg, "check", {{"passed", false}, {"diagnostic", diag}}, diag + "\n");
        return kFail;
    }
    ConditionsReport r = check_conditions(d, sys, *sol);
    json j = conditions_to_json(r);
    j["solution"] = solution_to_json(sys, *sol);
    std::string text = "condition (a): " + to_string(r.a.verdict) + " (" + r.a.name + ")\n" +
                       "condition (b): " + to_string(r.b.verdict) + " (" + std::to_string(r.b.checks.size()) +
                       " passes)\n" + "condition (c): " + to_string(r.c.verdict) + " " + r.c.expression + "\n" +
                       "convexity:     " + to_string(r.convexity.verdict) + " " + r.convexity.note + "\n";
    emit(cfg, "check", j, text);
    return r.passed() ? kOk : kFail;
}

int conclusion_exit(Conclusion c)
{
    return c == Conclusion::GeodesicArcs ? kOk : c == Conclusion::Fail ? kFail : kInconclusive;
}

std::string certificate_text(const Certificate& c)
{
    std::string t = "conclusion: " + to_string(c.conclusion) + "\n" + c.summary + "\n";
    for (auto& k : c.checks) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "  %-30s %-9s value %-12.4g tol %.0e", k.name.c_str(),
                      to_string(k.verdict).c_str(), k.value, k.tolerance);
        t += buf;
        if (!k.detail.empty())
            t += "  " + k.detail;
        t += "\n";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "volume: %.10f\n", c.volume);
    return t + buf;
}

int run_certify(const RunConfig& cfg)
{
    LinkDiagram d = load_diagram(cfg);
    CertifyOptions opt;
    opt.solver = solver_config(cfg);
    opt.base_region = cfg.base_region;
    opt.alternate_fan = cfg.alternate_fan;
    Certificate c;
    EquationSystem sys;
    try {
        sys = region_equations(d);
    } catch (const std::runtime_error&) {
    }
    if (!cfg.solution.empty())
        c = certify(d, sys, load_solution(sys, cfg.solution), opt);
    else
        c = certify(d, opt);
    emit(cfg, "certificate", certificate_to_json(c, &sys), certificate_text(c));
    return conclusion_exit(c.conclusion);
}

int run_braid(const RunConfig& cfg)
{
    BraidClosedForm cf;
    try {
        cf = braid_closed_form(cfg.braid);
    } catch (const StructureError&) {
        throw;
    } catch (const std::runtime_error& e) {
        throw InputError(e.what());
    }
    std::string pd;
    for (auto& x : cf.diagram.pd())
        pd += (pd.empty() ? "" : " ") + ("X[" + std::to_string(x[0]) + "," + std::to_string(x[1]) + "," +
                                         std::to_string(x[2]) + "," + std::to_string(x[3]) + "]");
    json j = {{"k", cfg.braid.k},
              {"n", cfg.braid.n},
              {"suffixed", cfg.braid.suffixed},
              {"word", braid_word(cfg.braid)},
              {"pd", pd},
              {"crossings", cf.diagram.crossing_count()},
              {"components", cf.diagram.component_count()},
              {"region_arities", cf.arities},
              {"closed_form",
               {{"applies", cf.applies},
                {"assignment", solution_to_json(cf.system, cf.solution)["assignment"]},
                {"residual", cf.solution.residual},
                {"note", cf.note}}}};
    std::string text = pd + "\nclosed form " + (cf.applies ? "applies" : "does not apply") + ", residual " +
                       std::to_string(cf.solution.residual) + "\n" + assignment_text(cf.system, cf.solution);
    emit(cfg, "braid", j, text);
    return kOk;
}

int run_develop(const RunConfig& cfg)
{
    LinkDiagram d = load_diagram(cfg);
    EquationSystem sys = region_equations(d);
    std::string diag;
    auto sol = obtain_solution(cfg, d, sys, diag);
    if (!sol) {
        emit(cfg, "horoballs", {{"diagnostic", diag}}, diag + "\n");
        return kFail;
    }
    HoroballOptions ho;
    ho.base_region = cfg.base_region;
    HoroballConfig h = develop(d, sys, *sol, ho);
    CrossRatioAudit audit = cross_ratio_audit(d, sys, h, *sol);
    json j = horoballs_to_json(h);
    j["cross_ratio_audit"] = audit.max_deviation;
    std::string text;
    for (auto& v : h.vertices) {
        text += std::string(v.top ? "top    " : "bottom ") + "vertex " + std::to_string(v.vertex) + ": ";
        text += v.at_infinity ? std::string("infinity") : fmt(v.center) + " diameter " + std::to_string(v.diameter);
        text += "\n";
    }
    text += "cross-ratio audit: " + std::to_string(audit.max_deviation) + "\n";
    emit(cfg, "horoballs", j, text);
    return audit.max_deviation < 1e-8 ? kOk : kFail;
}

int run_volume(const RunConfig& cfg)
{
    LinkDiagram d = load_diagram(cfg);
    EquationSystem sys = region_equations(d);
    std::string diag;
    auto sol = obtain_solution(cfg, d, sys, diag);
    if (!sol) {
        emit(cfg, "volume", {{"diagnostic", diag}}, diag + "\n");
        return kFail;
    }
    Solution s = *sol;
    try {
        s = refine(sys, s, 1e-12);
    } catch (const std::runtime_error&) {
    }
    HoroballOptions ho;
    ho.base_region = cfg.base_region;
    HoroballConfig h = develop(d, sys, s, ho);
    SubdivideOptions so;
    so.alternate_fan = cfg.alternate_fan;
    Triangulation tri = subdivide(d, menasco(d), h, so);
    if (!tri.valid) {
        emit(cfg, "volume", {{"valid", false}, {"attempts", tri.attempts}}, "no consistent coned subdivision\n");
        return kInconclusive;
    }
    TriangulationReport rep = verify_triangulation(d, tri);
    double v = volume(tri);
    json j = triangulation_to_json(tri);
    j["volume"] = v;
    j["failures"] = rep.failures;
    char buf[96];
    std::snprintf(buf, sizeof buf, "volume %.12f from %zu tetrahedra (%d flat)\n", v, tri.tets.size(), rep.flat_count);
    std::string text = buf;
    for (auto& f : rep.failures)
        text += "failed: " + f + "\n";
    emit(cfg, "volume", j, text);
    return rep.passed() ? kOk : kFail;
}

void add_common(CLI::App* sub, RunConfig& cfg, bool needs_pd)
{
    if (needs_pd)
        sub->add_option("--pd", cfg.pd, "PD code file (or inline PD string)")->envname("ARCGEO_PD");
    sub->add_option("--solution", cfg.solution, "solution JSON from a previous solve")->envname("ARCGEO_SOLUTION");
    sub->add_option("--starts", cfg.starts, "number of Newton starts")->envname("ARCGEO_STARTS")->check(
        CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "random seed")->envname("ARCGEO_SEED");
    sub->add_option("--tol", cfg.tol, "solver convergence tolerance")->envname("ARCGEO_TOL")->check(
        CLI::PositiveNumber);
    sub->add_option("--base-region", cfg.base_region, "region placed first in the development")
        ->envname("ARCGEO_BASE_REGION");
    sub->add_option("--format", cfg.format, "json or text")
        ->envname("ARCGEO_FORMAT")
        ->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--out", cfg.out, "directory for the output artifact")->envname("ARCGEO_OUT");
    sub->add_option("--threads", cfg.threads, "solver threads")->envname("ARCGEO_THREADS")->check(
        CLI::PositiveNumber);
    sub->add_flag("--alternate-fan", cfg.alternate_fan, "root face fans at the greatest edge label");
}

void report_error(const std::string& kind, const std::string& msg)
{
    std::cerr << json{{"error", kind}, {"message", msg}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Hyperbolicity equations, geometric verification and certificates for alternating links"};
    app.require_subcommand(1);
    RunConfig cfg;
    auto* solve_cmd = app.add_subcommand("solve", "generate and solve the label equations");
    auto* check_cmd = app.add_subcommand("check", "evaluate conditions (a)-(c) and convexity");
    auto* certify_cmd = app.add_subcommand("certify", "run the full pipeline and emit a certificate");
    auto* braid_cmd = app.add_subcommand("braid", "generate a closed alternating braid and its closed form");
    auto* develop_cmd = app.add_subcommand("develop", "place the horoballs of both polyhedra");
    auto* volume_cmd = app.add_subcommand("volume", "triangulate and compute the volume");
    for (auto* s : {solve_cmd, check_cmd, certify_cmd, develop_cmd, volume_cmd})
        add_common(s, cfg, true);
    add_common(braid_cmd, cfg, false);
    braid_cmd->add_option("--k", cfg.braid.k, "half strand count (braid on 2k+2 strands)");
    braid_cmd->add_option("--n", cfg.braid.n, "period, n > 1");
    braid_cmd->add_flag("--suffixed", cfg.braid.suffixed, "append s1 s3 ... s(2k+1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }
    try {
        if (*solve_cmd)
            return run_solve(cfg);
        if (*check_cmd)
            return run_check(cfg);
        if (*certify_cmd)
            return run_certify(cfg);
        if (*braid_cmd)
            return run_braid(cfg);
        if (*develop_cmd)
            return run_develop(cfg);
        if (*volume_cmd)
            return run_volume(cfg);
    } catch (const InputError& e) {
        report_error("input", e.what());
        return kInputError;
    } catch (const ParseError& e) {
        report_error("parse", e.what());
        return kInputError;
    } catch (const StructureError& e) {
        report_error("structure", e.what());
        return kInputError;
    } catch (const std::exception& e) {
        report_error("runtime", e.what());
        return kFail;
    }
    return kInputError;
}
