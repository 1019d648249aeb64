#include <doctest.h>

#include "fixtures.hpp"

using namespace arcgeo;

TEST_CASE("solve is deterministic for a fixed seed")
{
    auto sys = region_equations(parse_pd(fixtures::kFigureEight));
    SolverConfig cfg;
    cfg.start_count = 30;
    cfg.seed = 42;
    auto a = solve(sys, cfg);
    auto b = solve(sys, cfg);
    REQUIRE(a.solutions.size() == b.solutions.size());
    for (std::size_t i = 0; i < a.solutions.size(); ++i)
        CHECK(a.solutions[i].x == b.solutions[i].x);
    cfg.threads = 3;
    auto c = solve(sys, cfg);
    REQUIRE(a.solutions.size() == c.solutions.size());
    for (std::size_t i = 0; i < a.solutions.size(); ++i)
        CHECK(a.solutions[i].x == c.solutions[i].x);
}

TEST_CASE("figure-eight solutions are the conjugate pair")
{
    const auto& f = fixtures::figure_eight();
    CHECK(f.report.solutions.size() == 2);
    CHECK(f.pick.candidates == 1);
    CHECK(f.pick.fully_passing == 1);
    for (int i = 0; i < f.system.size(); ++i) {
        // every label is a primitive sixth or third root of unity up to sign
        CHECK(std::abs(std::abs(f.refined.x[i]) - 1.0) < 1e-12);
    }
}

TEST_CASE("refine reaches the tolerance and refuses far moves")
{
    const auto& f = fixtures::l8a();
    CHECK(f.refined.residual < 1e-12);
    Solution far = f.refined;
    for (auto& z : far.x)
        z += cplx(3, 0);
    CHECK_THROWS(refine(f.system, far, 1e-12));
}

TEST_CASE("solve rejects empty systems and bad configuration")
{
    auto tref = region_equations(parse_pd(fixtures::kTrefoil));
    SolverConfig bad;
    bad.start_count = 0;
    CHECK_THROWS(solve(region_equations(parse_pd(fixtures::kFigureEight)), bad));
    EquationSystem empty;
    CHECK_THROWS(solve(empty, SolverConfig{}));
    CHECK(tref.size() == 1);
}

TEST_CASE("trefoil has no non-real solution")
{
    auto d = parse_pd(fixtures::kTrefoil);
    auto sys = region_equations(d);
    SolverConfig cfg;
    cfg.start_count = 50;
    auto rep = solve(sys, cfg);
    auto pick = pick_geometric(rep.solutions, sys, d);
    CHECK_FALSE(pick.solution.has_value());
    CHECK(pick.diagnostic.find("condition (c) candidate failure") != std::string::npos);
}

TEST_CASE("solution JSON round trip is exact")
{
    const auto& f = fixtures::l8a();
    auto j = solution_to_json(f.system, f.refined);
    auto back = solution_from_json(f.system, nlohmann::json::parse(j.dump()));
    CHECK(back.x == f.refined.x);
    nlohmann::json missing = {{"assignment", {{"w1", {0.0, 1.0}}}}};
    CHECK_THROWS(solution_from_json(f.system, missing));
}
