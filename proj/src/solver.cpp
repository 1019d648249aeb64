#include "arcgeo/solver.hpp"

#include <algorithm>
#include <random>
#include <thread>

#include "arcgeo/geometry.hpp"

namespace arcgeo {

namespace {

double inf_norm(const Eigen::VectorXcd& v)
{
    return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
}

double distance(const std::vector<cplx>& a, const std::vector<cplx>& b)
{
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

Eigen::VectorXcd pinv_step(const Eigen::MatrixXcd& J, const Eigen::VectorXcd& r, double cutoff)
{
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    double floor = cutoff * std::max(1.0, s.size() ? s[0] : 0.0);
    Eigen::VectorXcd ur = svd.matrixU().adjoint() * r;
    for (int i = 0; i < s.size(); ++i)
        ur[i] = s[i] > floor ? ur[i] / s[i] : cplx(0);
    return -(svd.matrixV() * ur);
}

}  // namespace

Solution newton(const EquationSystem& sys, std::vector<cplx> x, int max_iterations, double tolerance,
                double svd_cutoff)
{
    Solution s;
    Evaluation ev = evaluate_system(sys, x);
    double res = inf_norm(ev.residual);
    int it = 0;
    while (it < max_iterations && res >= tolerance) {
        ++it;
        Eigen::VectorXcd dx = pinv_step(ev.jacobian, ev.residual, svd_cutoff);
        double f0 = ev.residual.squaredNorm();
        double step = 1.0;
        std::vector<cplx> trial(x.size());
        bool moved = false;
        for (int k = 0; k < 30; ++k) {
            for (std::size_t i = 0; i < x.size(); ++i)
                trial[i] = x[i] + step * dx[static_cast<int>(i)];
            Eigen::VectorXcd r = residual_vector(sys, trial);
            if (r.squaredNorm() < f0) {
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved)
            break;
        x = trial;
        ev = evaluate_system(sys, x);
        res = inf_norm(ev.residual);
        if (distance(x, std::vector<cplx>(x.size())) > 1e8)
            break;
    }
    s.x = std::move(x);
    s.residual = res;
    s.iterations = it;
    return s;
}

SolveReport solve(const EquationSystem& sys, const SolverConfig& cfg)
{
    if (sys.equations.empty() || sys.size() == 0)
        throw std::runtime_error("solve: system has no equations or no variables");
    if (cfg.start_count < 1 || cfg.tolerance <= 0)
        throw std::runtime_error("solve: invalid solver configuration");
    std::vector<Solution> runs(cfg.start_count);
    auto work = [&](int begin, int stride) {
        for (int i = begin; i < cfg.start_count; i += stride) {
            std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                              static_cast<std::uint32_t>(i)};
            std::mt19937_64 rng(seq);
            std::uniform_real_distribution<double> U(-cfg.box, cfg.box);
            std::vector<cplx> x0(sys.size());
            for (auto& z : x0) {
                double re = U(rng);
                z = cplx(re, U(rng));
            }
            runs[i] = newton(sys, x0, cfg.max_iterations, cfg.tolerance, cfg.svd_cutoff);
            runs[i].start_index = i;
        }
    };
    int nt = std::max(1, std::min(cfg.threads, cfg.start_count));
    if (nt == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nt; ++t)
            pool.emplace_back(work, t, nt);
        for (auto& th : pool)
            th.join();
    }
    SolveReport rep;
    rep.best_residual = std::numeric_limits<double>::infinity();
    for (auto& r : runs) {
        rep.best_residual = std::min(rep.best_residual, r.residual);
        if (!(r.residual < cfg.tolerance))
            continue;
        ++rep.converged_starts;
        bool dup = false;
        for (auto& k : rep.solutions)
            if (distance(k.x, r.x) <= cfg.dedup) {
                dup = true;
                break;
            }
        if (!dup) {
            r.residual = residual_norm(sys, r.x);
            rep.solutions.push_back(r);
        }
    }
    return rep;
}

GeometricPick pick_geometric(const std::vector<Solution>& solutions, const EquationSystem& sys, const LinkDiagram& d)
{
    GeometricPick pick;
    std::vector<const Solution*> oriented;
    for (auto& s : solutions)
        if (check_condition_a(sys, s.x).verdict == Verdict::Pass)
            oriented.push_back(&s);
    pick.candidates = static_cast<int>(oriented.size());
    if (oriented.empty()) {
        pick.diagnostic = "condition (c) candidate failure: no solution has a non-real edge label";
        return pick;
    }
    const Solution* chosen = nullptr;
    for (auto* s : oriented) {
        if (check_conditions(d, sys, *s).passed()) {
            ++pick.fully_passing;
            if (!chosen)
                chosen = s;
        }
    }
    if (chosen) {
        pick.solution = *chosen;
        pick.anomalous = pick.fully_passing > 1;
        if (pick.anomalous)
            pick.diagnostic = std::to_string(pick.fully_passing) + " distinct solutions pass every condition";
    } else {
        pick.solution = *oriented.front();
        pick.diagnostic = "no oriented solution passes conditions (b), (c) and convexity; returning the first oriented one";
    }
    return pick;
}

Solution refine(const EquationSystem& sys, const Solution& s, double tol, int max_iterations)
{
    Solution r = newton(sys, s.x, max_iterations, tol);
    double move = distance(r.x, s.x);
    if (!(r.residual < tol))
        throw std::runtime_error("refine: residual " + std::to_string(r.residual) + " did not reach tolerance");
    if (move > 0.5)
        throw std::runtime_error("refine: iterate moved " + std::to_string(move) + " from the start");
    r.start_index = s.start_index;
    return r;
}

Solution conjugate(const Solution& s)
{
    Solution c = s;
    for (auto& z : c.x)
        z = std::conj(z);
    return c;
}

nlohmann::json solution_to_json(const EquationSystem& sys, const Solution& s)
{
    nlohmann::json a = nlohmann::json::object();
    for (int i = 0; i < sys.size(); ++i)
        a[sys.variables[i].name] = {s.x[i].real(), s.x[i].imag()};
    return {{"assignment", a}, {"residual", s.residual}, {"iterations", s.iterations}, {"start_index", s.start_index}};
}

Solution solution_from_json(const EquationSystem& sys, const nlohmann::json& j)
{
    const nlohmann::json* a = &j;
    if (j.contains("solutions")) {
        int idx = j.value("geometric", 0);
        if (idx < 0 || idx >= static_cast<int>(j["solutions"].size()))
            throw std::runtime_error("solution file has no geometric solution");
        a = &j["solutions"][idx];
    }
    if (a->contains("assignment"))
        a = &(*a)["assignment"];
    Solution s;
    s.x.resize(sys.size());
    for (int i = 0; i < sys.size(); ++i) {
        const auto& name = sys.variables[i].name;
        if (!a->contains(name))
            throw std::runtime_error("solution is missing variable " + name);
        const auto& v = (*a)[name];
        s.x[i] = cplx(v.at(0).get<double>(), v.at(1).get<double>());
    }
    s.residual = residual_norm(sys, s.x);
    return s;
}

}  // namespace arcgeo
