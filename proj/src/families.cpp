#include "arcgeo/families.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

namespace arcgeo {

namespace {

void validate(const BraidSpec& spec)
{
    if (spec.k < 1)
        throw std::runtime_error("braid: k must be a positive integer");
    if (spec.n <= 1)
        throw std::runtime_error("braid: n must be greater than 1");
}

}  // namespace

std::vector<int> braid_word(const BraidSpec& spec)
{
    validate(spec);
    std::vector<int> w;
    for (int r = 0; r < spec.n; ++r) {
        for (int j = 0; j <= spec.k; ++j)
            w.push_back(2 * j + 1);
        for (int j = 1; j <= spec.k; ++j)
            w.push_back(-2 * j);
    }
    if (spec.suffixed)
        for (int j = 0; j <= spec.k; ++j)
            w.push_back(2 * j + 1);
    return w;
}

PDCode braid_pd(const std::vector<int>& word, int strands)
{
    if (strands < 2 || word.empty())
        throw std::runtime_error("braid_pd: need at least two strands and one letter");
    int next = 0;
    std::vector<int> start(strands), cur(strands);
    for (int p = 0; p < strands; ++p)
        start[p] = cur[p] = ++next;
    PDCode pd;
    for (int g : word) {
        int i = std::abs(g) - 1;
        if (g == 0 || i + 1 >= strands)
            throw std::runtime_error("braid_pd: generator " + std::to_string(g) + " out of range");
        int a = cur[i], b = cur[i + 1], c = ++next, d = ++next;
        // incoming strand at slot 0 is the under strand
        pd.push_back(g > 0 ? std::array<int, 4>{b, d, c, a} : std::array<int, 4>{a, b, d, c});
        cur[i] = c;
        cur[i + 1] = d;
    }
    std::map<int, int> close;
    for (int p = 0; p < strands; ++p)
        close[cur[p]] = start[p];
    std::set<int> used;
    for (auto& x : pd)
        for (auto& e : x) {
            if (auto it = close.find(e); it != close.end())
                e = it->second;
            used.insert(e);
        }
    std::map<int, int> relabel;
    for (int e : used)
        relabel.emplace(e, static_cast<int>(relabel.size()) + 1);
    for (auto& x : pd)
        for (auto& e : x)
            e = relabel[e];
    return pd;
}

LinkDiagram braid_diagram(const BraidSpec& spec)
{
    return LinkDiagram(braid_pd(braid_word(spec), 2 * spec.k + 2));
}

BraidClosedForm braid_closed_form(const BraidSpec& spec)
{
    BraidClosedForm out;
    out.diagram = braid_diagram(spec);
    out.system = region_equations(out.diagram);
    const auto& sys = out.system;
    const cplx w(0, 0.5), u(-0.5, -0.5);
    out.solution.x.assign(sys.size(), u);
    for (int c = 0; c < out.diagram.crossing_count(); ++c)
        out.solution.x[sys.crossing_var[c]] = static_cast<double>(out.diagram.sign(c)) * w;
    out.solution.residual = residual_norm(sys, out.solution.x);
    for (const Region& r : out.diagram.regions())
        out.arities.push_back(r.arity());
    std::sort(out.arities.begin(), out.arities.end());
    out.applies = std::all_of(out.arities.begin(), out.arities.end(), [](int a) { return a <= 3; });
    if (!out.applies)
        out.note = "diagram has regions with more than three sides; the closed form is not a solution there";
    return out;
}

cplx regular_region_shape(int m)
{
    if (m < 3)
        throw std::runtime_error("regular_region_shape: m must be at least 3");
    double h = 0.5 / std::cos(std::numbers::pi / m);
    return {h * h, 0.0};
}

}  // namespace arcgeo
