#include "fixtures.hpp"

#include <chrono>

namespace fixtures {

Solved solve_fixture(const std::string& pd, int starts, std::uint64_t seed)
{
    Solved s;
    s.diagram = arcgeo::parse_pd(pd);
    s.system = arcgeo::region_equations(s.diagram);
    arcgeo::SolverConfig cfg;
    cfg.start_count = starts;
    cfg.seed = seed;
    auto t0 = std::chrono::steady_clock::now();
    s.report = arcgeo::solve(s.system, cfg);
    s.pick = arcgeo::pick_geometric(s.report.solutions, s.system, s.diagram);
    s.solve_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!s.pick.solution)
        throw std::runtime_error("fixture has no geometric solution: " + s.pick.diagnostic);
    s.refined = arcgeo::refine(s.system, *s.pick.solution, 1e-12);
    return s;
}

const Solved& l8a()
{
    static const Solved s = solve_fixture(kL8a);
    return s;
}

const Solved& figure_eight()
{
    static const Solved s = solve_fixture(kFigureEight);
    return s;
}

const Solved& braid(int n)
{
    static std::map<int, Solved> cache;
    auto it = cache.find(n);
    if (it == cache.end()) {
        auto pd = arcgeo::braid_pd(arcgeo::braid_word({1, n, false}), 4);
        std::string text;
        for (auto& x : pd)
            text += "X[" + std::to_string(x[0]) + "," + std::to_string(x[1]) + "," + std::to_string(x[2]) + "," +
                    std::to_string(x[3]) + "] ";
        it = cache.emplace(n, solve_fixture(text)).first;
    }
    return it->second;
}

}  // namespace fixtures
