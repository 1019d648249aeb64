#include <doctest.h>

#include <numbers>

#include "fixtures.hpp"

using namespace arcgeo;

TEST_CASE("Mobius action and cross-ratio invariance")
{
    Eigen::Matrix2cd m;
    m << cplx(1, 2), cplx(0, 1), cplx(2, -1), cplx(1, 1);
    BoundaryPoint p[4] = {{cplx(0.3, 0.1)}, {cplx(-1, 2)}, {cplx(2, 0.5)}, {cplx(0), true}};
    cplx before = cross_ratio(p[0], p[1], p[2], p[3]);
    BoundaryPoint q[4];
    for (int i = 0; i < 4; ++i)
        q[i] = mobius(m, p[i]);
    CHECK(std::abs(cross_ratio(q[0], q[1], q[2], q[3]) - before) < 1e-12);
    CHECK_FALSE(q[3].inf);
    CHECK(std::abs(q[3].z - m(0, 0) / m(1, 0)) < 1e-14);
}

TEST_CASE("conditions on the refined two-component example")
{
    const auto& f = fixtures::l8a();
    auto r = check_conditions(f.diagram, f.system, f.refined);
    CHECK(r.a.verdict == Verdict::Pass);
    CHECK(r.b.verdict == Verdict::Pass);
    CHECK(r.c.verdict == Verdict::Pass);
    CHECK(r.convexity.verdict == Verdict::Pass);
    CHECK(r.passed());
    for (auto& s : r.convexity.sections) {
        double sum = 0;
        for (double a : s.angles)
            sum += a;
        CHECK(std::abs(sum - (s.shape == "triangle" ? 1 : 2) * std::numbers::pi) < 1e-9);
    }
    auto c = check_conditions(f.diagram, f.system, conjugate(f.refined));
    CHECK(c.a.verdict == Verdict::Fail);
}

TEST_CASE("all-real labels fail condition (c)")
{
    const auto& f = fixtures::l8a();
    Solution real = f.refined;
    for (auto& z : real.x)
        z = z.real();
    auto r = check_conditions(f.diagram, f.system, real);
    CHECK(r.c.verdict == Verdict::Fail);
    CHECK(r.a.verdict == Verdict::Vacuous);
}

TEST_CASE("development: consistency, audit, meridians, base covariance")
{
    const auto& f = fixtures::l8a();
    auto h = develop(f.diagram, f.system, f.refined);
    CHECK(h.top.spread < 1e-9);
    CHECK(h.bottom.spread < 1e-9);
    CHECK(h.top.mismatches + h.bottom.mismatches == 0);
    auto audit = cross_ratio_audit(f.diagram, f.system, h, f.refined);
    CHECK(!audit.entries.empty());
    CHECK(audit.max_deviation < 1e-8);
    for (double m : meridian_lengths(f.diagram, h))
        CHECK(std::abs(m - 1.0) < 1e-9);
    for (auto& r : f.diagram.regions()) {
        if (r.arity() < 3)
            continue;
        HoroballOptions o;
        o.base_region = r.id;
        CHECK(base_covariance(h, develop(f.diagram, f.system, f.refined, o)) < 1e-9);
    }
    HoroballOptions bigon;
    for (auto& r : f.diagram.regions())
        if (r.arity() == 2)
            bigon.base_region = r.id;
    CHECK_THROWS(develop(f.diagram, f.system, f.refined, bigon));
}

TEST_CASE("developed cross-section angles agree with the label formulas")
{
    const auto& f = fixtures::l8a();
    auto r = check_conditions(f.diagram, f.system, f.refined);
    REQUIRE(!r.convexity.developed.empty());
    for (auto& s : r.convexity.developed)
        CHECK(s.in_range);
}

TEST_CASE("JSON exports")
{
    const auto& f = fixtures::figure_eight();
    auto r = check_conditions(f.diagram, f.system, f.refined);
    auto j = conditions_to_json(r);
    CHECK(j["c"]["verdict"] == "PASS");
    auto h = develop(f.diagram, f.system, f.refined);
    auto hj = horoballs_to_json(h);
    CHECK(hj.contains("vertices"));
}
