// End-to-end acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "golden.hpp"

using namespace arcgeo;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

struct Outcome {
    bool pass = true;
    std::string detail;
    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

// source variable index -> our variable index, found by the golden search
std::vector<int> g_renaming;
std::vector<std::string> g_source_names;

Outcome golden_equations()
{
    Outcome o;
    auto t0 = Clock::now();
    auto ref = golden::load_reference(fixtures::golden_path());
    auto d = parse_pd(fixtures::kL8a);
    std::vector<int> pent;
    for (auto& r : d.regions())
        if (r.arity() == 5)
            pent.push_back(r.id);
    o.require(ref.relations.size() == 24, "reference has " + std::to_string(ref.relations.size()) + " relations");
    o.require(pent.size() == 2, "expected two 5-sided regions");
    int matches = 0;
    for (int a = 0; a < 5 && pent.size() == 2; ++a)
        for (int b = 0; b < 5; ++b) {
            EquationOptions opt;
            opt.first_window[pent[0]] = a;
            opt.first_window[pent[1]] = b;
            auto sys = region_equations(d, opt);
            o.require(sys.equations.size() == 24, "generated system does not have 24 relations");
            auto maps = golden::renamings(ref, sys.names(), sys.equations);
            matches += static_cast<int>(maps.size());
            if (!maps.empty() && g_renaming.empty())
                g_renaming = maps.front();
        }
    g_source_names = ref.names;
    double t = seconds_since(t0);
    o.require(matches >= 1, "no renaming maps the generated relations onto the reference");
    o.require(t < 1.0, "took " + num(t) + " s");
    if (o.pass)
        o.detail = "24/24 relations matched (" + std::to_string(matches) + " renaming), " + num(t) + " s";
    return o;
}

Outcome solution_regression()
{
    Outcome o;
    const auto& f = fixtures::l8a();
    o.require(f.report.solutions.size() > 0, "no solutions");
    o.require(f.pick.solution.has_value(), "no geometric solution");
    o.require(!g_renaming.empty(), "no variable renaming (criterion 1)");
    if (!o.pass)
        return o;
    const auto names = f.system.names();
    double worst = 0;
    std::string off;
    for (std::size_t v = 0; v < g_renaming.size(); ++v) {
        cplx ours = f.pick.solution->x[g_renaming[v]];
        cplx published = fixtures::published_8_8_2().at(g_source_names[v]);
        double dev = std::max(std::abs(ours.real() - published.real()), std::abs(ours.imag() - published.imag()));
        worst = std::max(worst, dev);
        if (dev > 0.01) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "%s=%.4f%+.4fi vs published %.2f%+.2fi", g_source_names[v].c_str(),
                          ours.real(), ours.imag(), published.real(), published.imag());
            off += (off.empty() ? "" : ", ") + std::string(buf);
        }
    }
    o.require(off.empty(), "outside 0.01: " + off);
    o.require(f.refined.residual < 1e-12, "refined residual " + num(f.refined.residual));
    o.require(f.solve_seconds < 30, "solve took " + num(f.solve_seconds) + " s");
    if (o.pass)
        o.detail = "max deviation " + num(worst) + ", residual " + num(f.refined.residual) + ", " +
                   num(f.solve_seconds) + " s";
    else
        o.detail += " (refined residual " + num(f.refined.residual) + ", " + num(f.solve_seconds) + " s)";
    return o;
}

Outcome conditions()
{
    Outcome o;
    const auto& f = fixtures::l8a();
    auto r = check_conditions(f.diagram, f.system, f.refined);
    o.require(r.a.verdict == Verdict::Pass, "(a) " + to_string(r.a.verdict));
    o.require(r.b.verdict == Verdict::Pass, "(b) " + to_string(r.b.verdict));
    o.require(r.c.verdict == Verdict::Pass, "(c) " + to_string(r.c.verdict));
    o.require(r.convexity.verdict == Verdict::Pass, "convexity " + to_string(r.convexity.verdict));
    auto c = check_conditions(f.diagram, f.system, conjugate(f.refined));
    o.require(c.a.verdict == Verdict::Fail, "conjugate (a) " + to_string(c.a.verdict));
    if (o.pass)
        o.detail = "(a) (b) (c) convexity pass; conjugate fails (a)";
    return o;
}

Outcome braid_family()
{
    Outcome o;
    std::string numeric;
    for (int n = 2; n <= 4; ++n) {
        auto cf = braid_closed_form({1, n, false});
        o.require(cf.solution.residual < 1e-12, "n=" + std::to_string(n) + " closed-form residual " +
                                                    num(cf.solution.residual));
        auto c = certify(cf.diagram, cf.system, cf.solution);
        o.require(c.conclusion == Conclusion::GeodesicArcs,
                  "n=" + std::to_string(n) + " closed-form certificate " + to_string(c.conclusion));
        const auto& b = fixtures::braid(n);
        auto cn = certify(b.diagram, b.system, b.refined);
        numeric += (numeric.empty() ? "" : ", ") + std::string("n=") + std::to_string(n) + " " +
                   to_string(cn.conclusion);
    }
    o.require(std::abs(regular_region_shape(3) - 1.0) < 1e-12, "m=3 shape");
    // (3 - sqrt 5)/2 is the smaller root of x^2 - 3x + 1
    const double root = (3 - std::sqrt(9.0 - 4.0)) / 2;
    o.require(std::abs(regular_region_shape(5) - root) < 1e-12, "m=5 shape");
    o.detail += (o.detail.empty() ? "" : " | ") + std::string("numeric solutions certify: ") + numeric;
    return o;
}

struct Pipeline {
    std::string name;
    const fixtures::Solved* fixture;
};

std::vector<Pipeline> pipelines()
{
    return {{"4_1", &fixtures::figure_eight()},
            {"8_8^2", &fixtures::l8a()},
            {"braid n=2", &fixtures::braid(2)},
            {"braid n=3", &fixtures::braid(3)},
            {"braid n=4", &fixtures::braid(4)}};
}

Outcome triangulation_suite()
{
    Outcome o;
    int tets = 0, classes = 0, cusps = 0;
    for (auto& p : pipelines()) {
        const auto& f = *p.fixture;
        auto h = develop(f.diagram, f.system, f.refined);
        auto tri = subdivide(f.diagram, menasco(f.diagram), h);
        if (!tri.valid) {
            o.require(false, p.name + ": no subdivision");
            continue;
        }
        auto r = verify_triangulation(f.diagram, tri);
        tets += static_cast<int>(tri.tets.size());
        classes += static_cast<int>(r.edge_classes.size());
        cusps += static_cast<int>(r.cusps.size());
        for (auto& e : r.edge_classes) {
            o.require(e.product_error < 1e-9, p.name + ": edge product " + num(e.product_error));
            o.require(e.winding_error < 1e-9, p.name + ": winding " + num(e.winding_error));
        }
        for (auto& c : r.cusps) {
            o.require(3 * c.triangles == 2 * c.edges, p.name + ": 3F != 2E");
            o.require(2 * c.vertices == c.triangles, p.name + ": V != F/2");
        }
        o.require(r.cusp_count_ok, p.name + ": cusp count");
        o.require(r.max_meridian_error < 1e-9, p.name + ": meridian " + num(r.max_meridian_error));
        o.require(r.min_imag >= -1e-9, p.name + ": Im z " + num(r.min_imag));
        o.require(r.max_imag > 1e-3, p.name + ": all tetrahedra flat");
        o.require(r.max_opposite_error < 1e-9, p.name + ": opposite shapes " + num(r.max_opposite_error));
    }
    if (o.pass)
        o.detail = "5 diagrams, " + std::to_string(tets) + " tetrahedra, " + std::to_string(classes) +
                   " edge classes, " + std::to_string(cusps) + " cusps";
    return o;
}

// sqrt(3)/4 * sum chi(n)/n^2, chi = 1, -1, 0 for n = 1, 2, 0 mod 3
double lobachevsky_pi_third_oracle()
{
    double s = 0;
    for (long m = 2000000; m >= 0; --m) {
        double a = 3.0 * m + 1, b = 3.0 * m + 2;
        s += 1 / (a * a) - 1 / (b * b);
    }
    return std::sqrt(3.0) / 4 * s;
}

Outcome volume_oracle()
{
    Outcome o;
    const double oracle = 6 * lobachevsky_pi_third_oracle();
    const auto& f = fixtures::figure_eight();
    auto h = develop(f.diagram, f.system, f.refined);
    auto tri = subdivide(f.diagram, menasco(f.diagram), h);
    o.require(tri.valid, "no subdivision");
    double v = tri.valid ? volume(tri) : 0;
    o.require(std::abs(v - oracle) < 1e-6, "volume " + num(v) + " vs " + num(oracle));
    for (double x : {-3.0, -0.5, 0.0, 0.25, 2.0})
        o.require(tetrahedron_volume(cplx(x, 0)) == 0.0, "flat tetrahedron has volume");
    // flat members of a real pipeline contribute nothing either
    for (auto& p : pipelines()) {
        const auto& g = *p.fixture;
        auto tr = subdivide(g.diagram, menasco(g.diagram), develop(g.diagram, g.system, g.refined));
        if (!tr.valid)
            continue;
        double nonflat = 0;
        for (auto& t : tr.tets)
            if (!t.flat())
                nonflat += tetrahedron_volume(t.z);
        o.require(volume(tr) == nonflat, p.name + ": flat tetrahedra change the volume");
    }
    if (o.pass) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "volume %.10f, oracle %.10f", v, oracle);
        o.detail = buf;
    }
    return o;
}

Outcome developing_audit()
{
    Outcome o;
    double worst_audit = 0, worst_cov = 0;
    for (auto& p : pipelines()) {
        const auto& f = *p.fixture;
        auto h = develop(f.diagram, f.system, f.refined);
        auto a = cross_ratio_audit(f.diagram, f.system, h, f.refined);
        worst_audit = std::max(worst_audit, a.max_deviation);
        o.require(a.max_deviation < 1e-8, p.name + ": audit " + num(a.max_deviation));
        for (auto& r : f.diagram.regions()) {
            if (r.arity() < 3)
                continue;
            HoroballOptions ho;
            ho.base_region = r.id;
            double cov = base_covariance(h, develop(f.diagram, f.system, f.refined, ho));
            worst_cov = std::max(worst_cov, cov);
            o.require(cov < 1e-9, p.name + ": base region " + std::to_string(r.id) + " covariance " + num(cov));
        }
    }
    if (o.pass)
        o.detail = "audit " + num(worst_audit) + ", covariance " + num(worst_cov);
    return o;
}

Outcome negative_controls()
{
    Outcome o;
    auto t = certify(parse_pd(fixtures::kTrefoil));
    o.require(t.conclusion == Conclusion::Fail, "trefoil " + to_string(t.conclusion));

    const auto& f = fixtures::l8a();
    Solution real = f.refined;
    for (auto& z : real.x)
        z = z.real();
    auto r = check_conditions(f.diagram, f.system, real);
    o.require(r.c.verdict == Verdict::Fail, "all-real labels pass (c)");
    auto rc = certify(f.diagram, f.system, real);
    o.require(rc.conclusion == Conclusion::Fail, "all-real certificate " + to_string(rc.conclusion));

    double worst = 0;
    std::vector<const EquationSystem*> systems;
    for (auto& p : pipelines())
        systems.push_back(&p.fixture->system);
    auto tsys = region_equations(parse_pd(fixtures::kTrefoil));
    systems.push_back(&tsys);
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> U(-1.5, 1.5);
    for (auto* sys : systems)
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<cplx> x(sys->size());
            for (auto& z : x) {
                double re = U(rng);
                z = {re, U(rng)};
            }
            auto ev = evaluate_system(*sys, x);
            const double h = 1e-6;
            for (int j = 0; j < sys->size(); ++j) {
                auto xp = x, xm = x;
                xp[j] += h;
                xm[j] -= h;
                Eigen::VectorXcd fd = (residual_vector(*sys, xp) - residual_vector(*sys, xm)) / (2 * h);
                worst = std::max(worst, (fd - ev.jacobian.col(j)).cwiseAbs().maxCoeff());
            }
        }
    o.require(worst < 1e-6, "Jacobian deviation " + num(worst));
    if (o.pass)
        o.detail = "trefoil FAIL, all-real rejected at (c), Jacobian deviation " + num(worst) + " over " +
                   std::to_string(systems.size()) + " systems";
    return o;
}

}  // namespace

int main()
{
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"1 golden equations", golden_equations},
        {"2 solution regression", solution_regression},
        {"3 conditions", conditions},
        {"4 braid family", braid_family},
        {"5 triangulation suite", triangulation_suite},
        {"6 volume oracle", volume_oracle},
        {"7 developing audit", developing_audit},
        {"8 negative controls", negative_controls},
    };
    int failed = 0;
    for (auto& [name, run] : criteria) {
        Outcome o;
        auto t0 = Clock::now();
        try {
            o = run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failed += !o.pass;
        std::printf("%s criterion %-24s [%6.2f s] %s\n", o.pass ? "PASS" : "FAIL", name, seconds_since(t0),
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of 8 criteria passed\n", 8 - failed);
    return failed == 0 ? 0 : 1;
}
