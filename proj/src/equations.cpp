#include "arcgeo/equations.hpp"

#include <numeric>
#include <sstream>

namespace arcgeo {

Polynomial SideExpr::poly() const
{
    Polynomial p = Polynomial::constant(shift);
    if (var >= 0)
        p += Polynomial::variable(var);
    return p;
}

std::string SideExpr::str(const std::vector<std::string>& names) const
{
    if (var < 0)
        return std::to_string(shift);
    if (shift == 0)
        return names[var];
    return names[var] + (shift > 0 ? "+" : "-") + std::to_string(std::abs(shift));
}

std::vector<std::string> EquationSystem::names() const
{
    std::vector<std::string> n;
    for (auto& v : variables)
        n.push_back(v.name);
    return n;
}

int EquationSystem::index_of(const std::string& name) const
{
    for (int i = 0; i < size(); ++i)
        if (variables[i].name == name)
            return i;
    return -1;
}

Labels allocate_labels(const LinkDiagram& d)
{
    DiagramReport rep = classify(d);
    if (!rep.alternating)
        throw std::runtime_error("labels require an alternating diagram");
    const int n = d.crossing_count();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int b : rep.bigons) {
        const Region& r = d.regions()[b];
        int a = find(r.corners[0].crossing), c = find(r.corners[1].crossing);
        if (a != c)
            parent[std::max(a, c)] = std::min(a, c);
    }
    Labels L;
    L.crossing_var.assign(n, -1);
    std::vector<int> root_var(n, -1);
    for (int c = 0; c < n; ++c) {
        int r = find(c);
        if (root_var[r] < 0) {
            root_var[r] = static_cast<int>(L.variables.size());
            LabelVar v;
            v.kind = LabelVar::Kind::Crossing;
            v.id = L.crossing_vars++;
            v.provenance = r;
            v.name = "w" + std::to_string(v.id + 1);
            L.variables.push_back(v);
        }
        L.crossing_var[c] = root_var[r];
    }
    L.edge_var.assign(d.edge_count(), -1);
    for (int e = 0; e < d.edge_count(); ++e) {
        const Endpoint& p = d.edges()[e].ends[0];
        int r1 = d.region_of(p.crossing, p.slot), r2 = d.region_of(p.crossing, p.slot + 3);
        if (d.regions()[r1].arity() == 2 || d.regions()[r2].arity() == 2)
            continue;
        LabelVar v;
        v.kind = LabelVar::Kind::Edge;
        v.id = L.edge_vars++;
        v.provenance = e;
        v.name = "u" + std::to_string(v.id + 1);
        L.edge_var[e] = static_cast<int>(L.variables.size());
        L.variables.push_back(v);
    }
    return L;
}

SideMap side_expressions(const LinkDiagram& d, const Labels& labels)
{
    SideMap m;
    for (int e = 0; e < d.edge_count(); ++e) {
        const Endpoint& p = d.edges()[e].ends[0];
        int r1 = d.region_of(p.crossing, p.slot), r2 = d.region_of(p.crossing, p.slot + 3);
        if (r1 == r2)
            throw StructureError("edge " + std::to_string(d.edges()[e].label) + " has the same region on both sides");
        int fa = d.regions()[r1].color > 0 ? r1 : r2;   // A side carries the shifted label
        int fb = fa == r1 ? r2 : r1;
        bool ba = d.regions()[fa].arity() == 2, bb = d.regions()[fb].arity() == 2;
        if (ba && bb)
            throw StructureError("edge " + std::to_string(d.edges()[e].label) + " lies between two bigons");
        if (ba) {
            m[{e, fa}] = {-1, 0};
            m[{e, fb}] = {-1, -1};
        } else if (bb) {
            m[{e, fb}] = {-1, 0};
            m[{e, fa}] = {-1, 1};
        } else {
            int v = labels.edge_var[e];
            m[{e, fb}] = {v, 0};
            m[{e, fa}] = {v, 1};
        }
    }
    return m;
}

EquationSystem region_equations(const LinkDiagram& d)
{
    return region_equations(d, EquationOptions{});
}

EquationSystem region_equations(const LinkDiagram& d, const EquationOptions& opt)
{
    Labels L = allocate_labels(d);
    EquationSystem sys;
    sys.variables = L.variables;
    sys.crossing_var = L.crossing_var;
    sys.edge_var = L.edge_var;
    sys.crossing_vars = L.crossing_vars;
    sys.edge_vars = L.edge_vars;
    sys.side_map = side_expressions(d, L);

    for (const Region& r : d.regions()) {
        const int k = r.arity();
        if (k < 2)
            throw StructureError("region " + std::to_string(r.id) + " has arity " + std::to_string(k));
        std::vector<int> eps(k, 0);
        if (k == 2) {
            sys.corner_sign.push_back(eps);
            continue;
        }
        std::vector<SideExpr> side(k);
        std::vector<Polynomial> a(k), t(k);
        for (int j = 0; j < k; ++j) {
            const Corner& c = r.corners[j];
            side[j] = sys.side_map.at({d.edge_at(c.crossing, c.slot), r.id});
            a[j] = side[j].poly();
            eps[j] = -r.color * d.sign(c.crossing);
            t[j] = Polynomial::constant(eps[j]) * Polynomial::variable(sys.crossing_var[c.crossing]);
        }
        sys.corner_sign.push_back(eps);
        // three consecutive windows of k-2 corners, by default centred on the first corner
        auto off = opt.first_window.find(r.id);
        const int s0 = off == opt.first_window.end() ? k - 1 : ((off->second % k) + k) % k;
        const int starts[3] = {s0, s0 + 1, s0 + 2};
        for (int rel = 0; rel < 3; ++rel) {
            int st = starts[rel];
            int last = st + k - 2;
            Polynomial P = a[last % k], Q = Polynomial::constant(1);
            for (int i = last - 1; i >= st; --i) {
                Polynomial np = a[i % k] * P - t[i % k] * Q;
                Q = P;
                P = np;
            }
            EquationProvenance prov;
            prov.region = r.id;
            prov.relation = rel + 1;
            prov.window_start = st % k;
            for (int i = st; i <= last; ++i)
                prov.cleared.push_back(side[i % k]);
            sys.equations.push_back(P);
            sys.provenance.push_back(prov);
        }
    }
    return sys;
}

RegionValues region_values(const EquationSystem& sys, const LinkDiagram& d, int region, const std::vector<cplx>& x)
{
    const Region& r = d.regions()[region];
    RegionValues v;
    for (int j = 0; j < r.arity(); ++j) {
        const Corner& c = r.corners[j];
        v.sides.push_back(sys.side_map.at({d.edge_at(c.crossing, c.slot), r.id}).eval(x));
        v.terms.push_back(static_cast<double>(sys.corner_sign[region][j]) * x[sys.crossing_var[c.crossing]]);
    }
    return v;
}

std::vector<cplx> xi_params(const EquationSystem& sys, const LinkDiagram& d, int region, const std::vector<cplx>& x)
{
    const Region& r = d.regions()[region];
    if (r.arity() < 3)
        throw std::runtime_error("xi parameters need a region of arity at least 3");
    RegionValues v = region_values(sys, d, region, x);
    const int k = r.arity();
    std::vector<cplx> xi(k);
    for (int j = 0; j < k; ++j) {
        cplx den = v.sides[j] * v.sides[(j + 1) % k];
        if (std::abs(den) == 0.0)
            throw std::runtime_error("degenerate label: zero side in region " + std::to_string(region));
        xi[j] = v.terms[j] / den;
    }
    return xi;
}

Eigen::Matrix2cd region_holonomy(const EquationSystem& sys, const LinkDiagram& d, int region,
                                 const std::vector<cplx>& x)
{
    RegionValues v = region_values(sys, d, region, x);
    Eigen::Matrix2cd M = Eigen::Matrix2cd::Identity();
    for (std::size_t j = 0; j < v.sides.size(); ++j) {
        Eigen::Matrix2cd E, C;
        E << 1.0, v.sides[j], 0.0, 1.0;
        C << 0.0, v.terms[j], -1.0, 0.0;
        M = M * E * C;
    }
    return M;
}

Evaluation evaluate_system(const EquationSystem& sys, const std::vector<cplx>& x)
{
    const int m = static_cast<int>(sys.equations.size());
    Evaluation ev;
    ev.residual.resize(m);
    ev.jacobian = Eigen::MatrixXcd::Zero(m, sys.size());
    std::vector<std::pair<int, cplx>> g;
    for (int i = 0; i < m; ++i) {
        ev.residual[i] = sys.equations[i].eval_grad(x, g);
        for (auto& [v, dv] : g)
            ev.jacobian(i, v) = dv;
    }
    return ev;
}

Eigen::VectorXcd residual_vector(const EquationSystem& sys, const std::vector<cplx>& x)
{
    Eigen::VectorXcd r(sys.equations.size());
    for (std::size_t i = 0; i < sys.equations.size(); ++i)
        r[i] = sys.equations[i].eval(x);
    return r;
}

double residual_norm(const EquationSystem& sys, const std::vector<cplx>& x)
{
    double m = 0;
    for (auto& p : sys.equations)
        m = std::max(m, std::abs(p.eval(x)));
    return m;
}

nlohmann::json system_to_json(const EquationSystem& sys)
{
    using nlohmann::json;
    auto names = sys.names();
    json j;
    j["variables"] = json::array();
    for (auto& v : sys.variables)
        j["variables"].push_back({{"name", v.name},
                                  {"kind", v.kind == LabelVar::Kind::Crossing ? "crossing" : "edge"},
                                  {"provenance", v.provenance}});
    j["equations"] = json::array();
    for (std::size_t i = 0; i < sys.equations.size(); ++i) {
        json terms = json::array();
        for (auto& [m, c] : sys.equations[i].terms()) {
            json mono = json::array();
            for (auto& f : m)
                mono.push_back({names[f.first], f.second});
            terms.push_back({{"coef", {c.re, c.im}}, {"monomial", mono}});
        }
        const auto& p = sys.provenance[i];
        j["equations"].push_back({{"region", p.region},
                                  {"relation", p.relation},
                                  {"window_start", p.window_start},
                                  {"terms", terms},
                                  {"text", sys.equations[i].to_string(names)}});
    }
    return j;
}

std::string system_to_text(const EquationSystem& sys, const LinkDiagram& d)
{
    auto names = sys.names();
    std::ostringstream os;
    std::size_t eq = 0;
    for (const Region& r : d.regions()) {
        const int k = r.arity();
        if (k < 3)
            continue;
        os << "region " << r.id << " (" << k << " sides)\n";
        for (int j = 0; j < k; ++j) {
            const Corner& c = r.corners[j];
            SideExpr s1 = sys.side_map.at({d.edge_at(c.crossing, c.slot), r.id});
            const Corner& c2 = r.corners[(j + 1) % k];
            SideExpr s2 = sys.side_map.at({d.edge_at(c2.crossing, c2.slot), r.id});
            os << "  xi" << j + 1 << " = " << (sys.corner_sign[r.id][j] < 0 ? "-" : "")
               << names[sys.crossing_var[c.crossing]] << "/((" << s1.str(names) << ")*(" << s2.str(names) << "))\n";
        }
        while (eq < sys.equations.size() && sys.provenance[eq].region == r.id) {
            os << "  [" << sys.provenance[eq].relation << "] " << sys.equations[eq].to_string(names) << " = 0\n";
            ++eq;
        }
    }
    return os.str();
}

}  // namespace arcgeo
