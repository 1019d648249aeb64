#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "golden.hpp"

using namespace arcgeo;

namespace {

std::vector<int> pentagons(const LinkDiagram& d)
{
    std::vector<int> p;
    for (auto& r : d.regions())
        if (r.arity() == 5)
            p.push_back(r.id);
    return p;
}

}  // namespace

TEST_CASE("label allocation counts")
{
    auto l = allocate_labels(parse_pd(fixtures::kL8a));
    CHECK(l.crossing_vars == 6);
    CHECK(l.edge_vars == 12);
    auto t = allocate_labels(parse_pd(fixtures::kTrefoil));
    CHECK(t.crossing_vars == 1);
    CHECK(t.edge_vars == 0);
    auto f = allocate_labels(parse_pd(fixtures::kFigureEight));
    CHECK(f.crossing_vars == 2);
    CHECK(f.edge_vars == 4);
    CHECK_THROWS(allocate_labels(parse_pd(fixtures::k819)));
}

TEST_CASE("every edge has two side expressions differing by at most one")
{
    auto d = parse_pd(fixtures::kL8a);
    auto sm = side_expressions(d, allocate_labels(d));
    CHECK(sm.size() == static_cast<std::size_t>(2 * d.edge_count()));
    for (int e = 0; e < d.edge_count(); ++e) {
        const auto& p = d.edges()[e].ends[0];
        auto a = sm.at({e, d.region_of(p.crossing, p.slot)});
        auto b = sm.at({e, d.region_of(p.crossing, p.slot - 1)});
        CHECK(a.var == b.var);
        CHECK(std::abs(a.shift - b.shift) == 1);
    }
}

TEST_CASE("three relations per non-bigon region")
{
    for (const char* pd : {fixtures::kL8a, fixtures::kFigureEight}) {
        auto d = parse_pd(pd);
        auto sys = region_equations(d);
        int big = 0;
        for (auto& r : d.regions())
            big += r.arity() >= 3;
        CHECK(sys.equations.size() == static_cast<std::size_t>(3 * big));
    }
}

TEST_CASE("golden relations of the two-component 8-crossing example")
{
    auto ref = golden::load_reference(fixtures::golden_path());
    REQUIRE(ref.relations.size() == 24);
    auto d = parse_pd(fixtures::kL8a);
    auto pent = pentagons(d);
    REQUIRE(pent.size() == 2);
    int hits = 0;
    std::vector<int> mapping;
    EquationSystem matched;
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) {
            EquationOptions opt;
            opt.first_window[pent[0]] = a;
            opt.first_window[pent[1]] = b;
            auto sys = region_equations(d, opt);
            auto maps = golden::renamings(ref, sys.names(), sys.equations);
            hits += static_cast<int>(maps.size());
            if (!maps.empty()) {
                mapping = maps.front();
                matched = sys;
            }
        }
    CHECK(hits == 1);
    REQUIRE(!mapping.empty());

    // the corner parameters agree as rational functions up to a cyclic relabelling
    const auto names = matched.names();
    for (const auto& xi : ref.xi) {
        bool found = false;
        for (int r : pent) {
            const Region& reg = d.regions()[r];
            for (int shift = 0; shift < 10 && !found; ++shift) {
                bool all = true;
                for (int j = 0; j < 5 && all; ++j) {
                    int c = shift < 5 ? (j + shift) % 5 : (shift - j + 5) % 5;
                    const Corner& cn = reg.corners[c];
                    auto s1 = matched.side_map.at({d.edge_at(cn.crossing, cn.slot), r}).poly();
                    const Corner& nx = reg.corners[(c + 1) % 5];
                    auto s2 = matched.side_map.at({d.edge_at(nx.crossing, nx.slot), r}).poly();
                    Polynomial num = Polynomial::constant(matched.corner_sign[r][c]) *
                                     Polynomial::variable(matched.crossing_var[cn.crossing]);
                    Polynomial den = s1 * s2;
                    Polynomial pn = xi[j].num.renamed(mapping), pd = xi[j].den.renamed(mapping);
                    all = pn * den == num * pd;
                }
                found = all;
            }
        }
        CHECK(found);
    }
}

TEST_CASE("conjugation symmetry of the generated system")
{
    auto sys = region_equations(parse_pd(fixtures::kL8a));
    std::mt19937_64 rng(7);
    std::normal_distribution<double> N;
    std::vector<cplx> x(sys.size()), xc(sys.size());
    for (int i = 0; i < sys.size(); ++i) {
        x[i] = {N(rng), N(rng)};
        xc[i] = std::conj(x[i]);
    }
    auto r = residual_vector(sys, x);
    auto rc = residual_vector(sys, xc);
    CHECK((rc - r.conjugate()).cwiseAbs().maxCoeff() < 1e-12);
    for (auto& p : sys.equations)
        for (auto& [m, c] : p.terms())
            CHECK(c.im == 0);
}

TEST_CASE("Jacobian matches central differences")
{
    for (const char* pd : {fixtures::kL8a, fixtures::kFigureEight}) {
        auto sys = region_equations(parse_pd(pd));
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> U(-1.5, 1.5);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<cplx> x(sys.size());
            for (auto& z : x) {
                double re = U(rng);
                z = {re, U(rng)};
            }
            auto ev = evaluate_system(sys, x);
            const double h = 1e-6;
            double worst = 0;
            for (int j = 0; j < sys.size(); ++j) {
                auto xp = x, xm = x;
                xp[j] += h;
                xm[j] -= h;
                Eigen::VectorXcd fd = (residual_vector(sys, xp) - residual_vector(sys, xm)) / (2 * h);
                worst = std::max(worst, (fd - ev.jacobian.col(j)).cwiseAbs().maxCoeff());
            }
            CHECK(worst < 1e-6);
        }
    }
}

TEST_CASE("toy triangle holonomy is the identity")
{
    Eigen::Matrix2d m;
    m << -1, 1, -1, 0;
    Eigen::Matrix2d p = m * m * m;
    CHECK((p - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("region data at the refined solution")
{
    const auto& f = fixtures::l8a();
    for (auto& r : f.diagram.regions()) {
        if (r.arity() < 3)
            continue;
        auto xi = xi_params(f.system, f.diagram, r.id, f.refined.x);
        if (r.arity() == 3)
            for (auto z : xi)
                CHECK(std::abs(z - 1.0) < 1e-9);
        auto h = region_holonomy(f.system, f.diagram, r.id, f.refined.x);
        CHECK(std::abs(h(0, 1)) < 1e-9);
        CHECK(std::abs(h(1, 0)) < 1e-9);
        CHECK(std::abs(h(0, 0) - h(1, 1)) < 1e-9);
        CHECK(std::abs(h(0, 0)) > 1e-6);
    }
}

TEST_CASE("regular pentagon parameter satisfies the closure triples")
{
    const double xi = (3 - std::sqrt(5.0)) / 2;
    CHECK(std::abs(xi * xi - 3 * xi + 1) < 1e-15);
    CHECK(std::abs(regular_region_shape(5).real() - xi) < 1e-12);
}

TEST_CASE("text and JSON renderings")
{
    auto d = parse_pd(fixtures::kFigureEight);
    auto sys = region_equations(d);
    auto j = system_to_json(sys);
    CHECK(j["equations"].size() == sys.equations.size());
    auto t = system_to_text(sys, d);
    CHECK(t.find("xi1") != std::string::npos);
}
