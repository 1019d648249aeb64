#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "arcgeo/equations.hpp"

namespace arcgeo {

struct SolverConfig {
    int start_count = 200;
    int max_iterations = 100;
    double tolerance = 1e-10;      // residual infinity norm
    double box = 2.0;              // starts uniform in [-box,box]^2 per variable
    std::uint64_t seed = 0;
    double dedup = 1e-6;           // infinity-norm distance for duplicates
    double svd_cutoff = 1e-12;     // relative singular value cutoff
    int threads = 1;
};

struct Solution {
    std::vector<cplx> x;
    double residual = 0;
    int iterations = 0;
    int start_index = -1;
};

struct SolveReport {
    std::vector<Solution> solutions;
    double best_residual = 0;   // best over all starts, converged or not
    int converged_starts = 0;
};

// one damped Gauss-Newton run; iterations and residual filled in
Solution newton(const EquationSystem& sys, std::vector<cplx> x, int max_iterations, double tolerance,
                double svd_cutoff = 1e-12);

SolveReport solve(const EquationSystem& sys, const SolverConfig& cfg);

struct GeometricPick {
    std::optional<Solution> solution;
    int candidates = 0;          // solutions passing the orientation rule
    int fully_passing = 0;       // candidates also passing (b), (c) and convexity
    bool anomalous = false;      // more than one geometric candidate
    std::string diagnostic;
};

GeometricPick pick_geometric(const std::vector<Solution>& solutions, const EquationSystem& sys,
                             const LinkDiagram& d);

// Newton polish; throws when the residual does not drop below tol or the point moves more than 0.5
Solution refine(const EquationSystem& sys, const Solution& s, double tol, int max_iterations = 50);

Solution conjugate(const Solution& s);

nlohmann::json solution_to_json(const EquationSystem& sys, const Solution& s);
// reads {name: [re, im]} or {"assignment": {...}}
Solution solution_from_json(const EquationSystem& sys, const nlohmann::json& j);

}  // namespace arcgeo
