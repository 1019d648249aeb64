#include "arcgeo/geometry.hpp"

#include <cmath>
#include <deque>
#include <numbers>
#include <set>

namespace arcgeo {

using Eigen::Matrix2cd;

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Vacuous: return "VACUOUS";
    case Verdict::Boundary: return "BOUNDARY";
    }
    return "?";
}

namespace {

bool open_angle(double a)
{
    return a > kAngleMargin && a < std::numbers::pi - kAngleMargin;
}

Matrix2cd translation(cplx a)
{
    Matrix2cd m;
    m << 1.0, a, 0.0, 1.0;
    return m;
}

Matrix2cd inversion(cplx t)
{
    Matrix2cd m;
    m << 0.0, t, -1.0, 0.0;
    return m / std::sqrt(t);
}

cplx det2(const BoundaryPoint& p, const BoundaryPoint& q)
{
    // projective coordinates (z, 1) or (1, 0)
    cplx p0 = p.inf ? cplx(1) : p.z, p1 = p.inf ? cplx(0) : cplx(1);
    cplx q0 = q.inf ? cplx(1) : q.z, q1 = q.inf ? cplx(0) : cplx(1);
    return p0 * q1 - p1 * q0;
}


}  // namespace

BoundaryPoint mobius(const Matrix2cd& m, const BoundaryPoint& p)
{
    cplx num, den;
    if (p.inf) {
        num = m(0, 0);
        den = m(1, 0);
    } else {
        num = m(0, 0) * p.z + m(0, 1);
        den = m(1, 0) * p.z + m(1, 1);
    }
    if (std::abs(den) <= 1e-14 * std::abs(num))
        return {0.0, true};
    cplx z = num / den;
    if (std::abs(z) > 1e8)
        return {0.0, true};
    return {z, false};
}

cplx cross_ratio(const BoundaryPoint& p0, const BoundaryPoint& p1, const BoundaryPoint& p2, const BoundaryPoint& p3)
{
    return det2(p3, p2) * det2(p1, p0) / (det2(p2, p0) * det2(p1, p3));
}

ConditionA check_condition_a(const EquationSystem& sys, const std::vector<cplx>& x)
{
    ConditionA a;
    for (int i = 0; i < sys.size(); ++i) {
        if (sys.variables[i].kind != LabelVar::Kind::Edge || std::abs(x[i].imag()) <= kRealTol)
            continue;
        a.variable = i;
        a.name = sys.variables[i].name;
        a.value = x[i];
        a.verdict = x[i].imag() > 0 ? Verdict::Pass : Verdict::Fail;
        return a;
    }
    return a;
}

ConditionsReport check_conditions(const LinkDiagram& d, const EquationSystem& sys, const Solution& sol)
{
    if (static_cast<int>(sol.x.size()) != sys.size())
        throw std::runtime_error("check_conditions: solution has " + std::to_string(sol.x.size()) +
                                 " values for " + std::to_string(sys.size()) + " variables");
    const auto& x = sol.x;
    const double pi = std::numbers::pi;
    ConditionsReport rep;
    rep.a = check_condition_a(sys, x);

    // (b) and the label form of the cross-sections, one pass per crossing and strand
    bool bfail = false, bboundary = false, convex = true;
    for (int c = 0; c < d.crossing_count(); ++c) {
        for (int over = 1; over >= 0; --over) {
            int s1 = over ? 1 : 0, s2 = s1 + 2;
            int e1 = d.edge_at(c, s1), e2 = d.edge_at(c, s2);
            int v1 = sys.edge_var[e1], v2 = sys.edge_var[e2];
            SectionAngles sec;
            sec.crossing = c;
            sec.overpass = over;
            if (v1 < 0 && v2 < 0)
                continue;   // collapsed on both sides
            if (v1 < 0 || v2 < 0) {
                ++rep.b.skipped;
                cplx u = x[v1 < 0 ? v2 : v1];
                sec.shape = "triangle";
                if (u.imag() > 0)
                    sec.angles = {std::arg(u / (u + 1.0)), std::arg(u + 1.0), std::arg(-1.0 / u)};
                else
                    sec.angles = {std::arg((u + 1.0) / u), std::arg(1.0 / (u + 1.0)), std::arg(-u)};
            } else {
                bool in1 = d.incoming(c, s1);
                int uvar = in1 ? v2 : v1, vvar = in1 ? v1 : v2;
                PassCheck pc;
                pc.crossing = c;
                pc.overpass = over;
                pc.u_name = sys.variables[uvar].name;
                pc.v_name = sys.variables[vvar].name;
                pc.u = x[uvar];
                pc.v = x[vvar];
                const cplx u = pc.u, v = pc.v;
                pc.positive_branch = u.imag() > 0;
                if (pc.positive_branch) {
                    pc.f1 = -(v + 1.0) / u;
                    pc.f2 = -(u + 1.0) / v;
                } else {
                    pc.f1 = -v / (u + 1.0);
                    pc.f2 = -u / (v + 1.0);
                }
                if (std::abs(u.imag()) <= kRealTol) {
                    pc.verdict = Verdict::Boundary;
                    bboundary = true;
                } else if (pc.f1.imag() > kAngleMargin && pc.f2.imag() > kAngleMargin) {
                    pc.verdict = Verdict::Pass;
                } else {
                    pc.verdict = Verdict::Fail;
                    bfail = true;
                }
                rep.b.checks.push_back(pc);
                sec.shape = "quadrilateral";
                if (pc.positive_branch)
                    sec.angles = {std::arg(u / (u + 1.0)), std::arg(pc.f2), std::arg(v / (v + 1.0)), std::arg(pc.f1)};
                else
                    sec.angles = {std::arg((u + 1.0) / u), std::arg(pc.f2), std::arg((v + 1.0) / v), std::arg(pc.f1)};
            }
            double sum = 0;
            for (double a : sec.angles) {
                sum += a;
                sec.in_range = sec.in_range && open_angle(a);
            }
            double expect = sec.shape == "triangle" ? pi : 2 * pi;
            sec.in_range = sec.in_range && std::abs(sum - expect) < 1e-8;
            convex = convex && sec.in_range;
            rep.convexity.sections.push_back(sec);
        }
    }
    rep.b.verdict = bfail ? Verdict::Fail
                          : bboundary ? Verdict::Boundary : rep.b.checks.empty() ? Verdict::Vacuous : Verdict::Pass;

    // (c): some crossing has a non-real fraction built from its over- and underpass labels
    for (int c = 0; c < d.crossing_count() && rep.c.verdict != Verdict::Pass; ++c) {
        const cplx w = x[sys.crossing_var[c]];
        const std::string wn = sys.variables[sys.crossing_var[c]].name;
        std::vector<std::pair<cplx, std::string>> over, under;
        for (int slot = 0; slot < 4; ++slot) {
            int e = d.edge_at(c, slot);
            SideExpr lo = sys.side_map.at({e, d.region_of(c, slot)});
            SideExpr hi = sys.side_map.at({e, d.region_of(c, slot - 1)});
            if (hi.shift < lo.shift)
                std::swap(lo, hi);
            (LinkDiagram::over_slot(slot) ? over : under).push_back({lo.eval(x), lo.str(sys.names())});
        }
        auto wrap = [](const std::string& s) { return "(" + s + ")"; };
        for (auto& [u, un] : over)
            for (auto& [v, vn] : under) {
                const std::pair<cplx, std::string> cand[3] = {
                    {u * v, wrap(un) + "*" + wrap(vn)},
                    {u * (v + 1.0), wrap(un) + "*" + wrap(vn + "+1")},
                    {v * (u + 1.0), wrap(vn) + "*" + wrap(un + "+1")}};
                for (auto& [den, dn] : cand) {
                    if (rep.c.verdict == Verdict::Pass || std::abs(den) < 1e-14)
                        continue;
                    cplx f = w / den;
                    if (std::abs(f.imag()) <= kRealTol)
                        continue;
                    rep.c.verdict = Verdict::Pass;
                    rep.c.crossing = c;
                    rep.c.fraction = f;
                    rep.c.expression = wn + "/(" + dn + ")";
                }
            }
    }

    // convexity: labels, and the developed centres when a development is possible
    if (rep.convexity.sections.empty())
        convex = false;
    if (rep.c.verdict == Verdict::Pass) {
        try {
            HoroballConfig h = develop(d, sys, sol);
            rep.convexity.developed = developed_sections(h);
            for (auto& s : rep.convexity.developed)
                convex = convex && s.in_range;
        } catch (const std::runtime_error& e) {
            rep.convexity.note = std::string("development unavailable: ") + e.what();
            convex = false;
        }
    } else {
        rep.convexity.note = "no development: all corner fractions are real";
    }
    rep.convexity.verdict = convex ? Verdict::Pass : Verdict::Fail;
    return rep;
}

namespace {

Development develop_one(const LinkDiagram& d, const EquationSystem& sys, const std::vector<cplx>& x, bool top,
                        int base)
{
    Development dev;
    dev.top = top;
    dev.over_of_edge.resize(d.edge_count());
    dev.under_of_edge.resize(d.edge_count());
    for (int e = 0; e < d.edge_count(); ++e) {
        dev.over_of_edge[e] = d.over_end(e);
        dev.under_of_edge[e] = d.under_end(e);
    }
    std::map<int, RegionValues> vals;
    for (const Region& r : d.regions()) {
        if (r.arity() < 3)
            continue;
        dev.faces.push_back(r.id);
        RegionValues v = region_values(sys, d, r.id, x);
        std::vector<int> vs;
        for (const Corner& c : r.corners)
            vs.push_back(dev.vertex_of_edge(d.edge_at(c.crossing, c.slot)));
        dev.face_vertices[r.id] = vs;
        bool zero = false;
        for (auto& t : v.terms)
            zero = zero || std::abs(t) == 0.0;
        if (zero) {
            dev.degenerate_faces.push_back(r.id);
            continue;
        }
        std::vector<Matrix2cd> F{Matrix2cd::Identity()};
        for (std::size_t j = 0; j < v.sides.size(); ++j)
            F.push_back(F.back() * translation(v.sides[j]) * inversion(v.terms[j]));
        dev.face_frames[r.id] = F;
        dev.face_sides[r.id] = v.sides;
        vals[r.id] = v;
    }
    if (dev.face_frames.empty())
        throw std::runtime_error("degenerate labels: every crossing label vanishes, nothing to develop");
    if (!dev.face_frames.count(base))
        throw std::runtime_error("base region " + std::to_string(base) + " is degenerate or has fewer than 3 sides");

    // polyhedron edges: faces meeting along the same crossing arc
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> arcs;
    for (int f : dev.faces) {
        const Region& r = d.regions()[f];
        for (int j = 0; j < r.arity(); ++j) {
            const Corner& c = r.corners[j];
            int e1 = d.edge_at(c.crossing, c.slot), e2 = d.edge_at(c.crossing, c.slot + 1);
            arcs[{c.crossing, ((c.slot % 2 == 0) == top) ? e1 : e2}].push_back({f, j});
        }
    }
    auto frame_at = [&](int f, int j) -> Matrix2cd {
        const Corner& c = d.regions()[f].corners[j];
        const auto& F = dev.face_frames[f];
        if (dev.vertex_of_edge(d.edge_at(c.crossing, c.slot)) == c.crossing)
            return F[j] * translation(vals[f].sides[j]);
        return F[j + 1];
    };
    dev.face_map[base] = translation(-vals[base].sides[0]);
    std::deque<int> queue{base};
    while (!queue.empty()) {
        int f = queue.front();
        queue.pop_front();
        for (auto& [key, list] : arcs) {
            int jf = -1;
            for (auto& [g, j] : list)
                if (g == f) {
                    jf = j;
                    break;
                }
            if (jf < 0)
                continue;
            for (auto& [g, jg] : list) {
                if (dev.face_map.count(g) || !dev.face_frames.count(g))
                    continue;
                dev.face_map[g] = dev.face_map[f] * frame_at(f, jf) * frame_at(g, jg).inverse();
                queue.push_back(g);
            }
        }
    }
    for (auto& [f, M] : dev.face_map) {
        const auto& F = dev.face_frames[f];
        const auto& vs = dev.face_vertices[f];
        for (std::size_t j = 0; j < vs.size(); ++j) {
            Matrix2cd G = M * F[j];
            BoundaryPoint p = mobius(G, {0.0, true});
            auto it = dev.center.find(vs[j]);
            if (it == dev.center.end()) {
                dev.center[vs[j]] = p;
                dev.frame[vs[j]] = G;
            } else if (it->second.inf != p.inf) {
                ++dev.mismatches;
            } else if (!p.inf) {
                dev.spread = std::max(dev.spread, std::abs(p.z - it->second.z));
            }
        }
    }
    return dev;
}

}  // namespace

HoroballConfig develop(const LinkDiagram& d, const EquationSystem& sys, const Solution& sol,
                       const HoroballOptions& opt)
{
    if (static_cast<int>(sol.x.size()) != sys.size())
        throw std::runtime_error("develop: solution does not match the system");
    int base = opt.base_region;
    if (base < 0) {
        for (const Region& r : d.regions())
            if (r.arity() >= 3) {
                bool zero = false;
                for (auto& t : region_values(sys, d, r.id, sol.x).terms)
                    zero = zero || std::abs(t) == 0.0;
                if (!zero) {
                    base = r.id;
                    break;
                }
            }
        if (base < 0)
            throw std::runtime_error("degenerate labels: every crossing label vanishes, the arrangement is a single horosphere");
    }
    if (base >= static_cast<int>(d.regions().size()) || d.regions()[base].arity() < 3)
        throw std::runtime_error("base region " + std::to_string(base) + " must exist and have at least 3 sides");
    HoroballConfig h;
    h.base_region = base;
    h.top = develop_one(d, sys, sol.x, true, base);
    h.bottom = develop_one(d, sys, sol.x, false, base);
    for (const Development* dev : {&h.top, &h.bottom}) {
        for (auto& [v, G] : dev->frame) {
            HoroballVertex hv;
            hv.vertex = v;
            hv.top = dev->top;
            BoundaryPoint p = dev->center.at(v);
            hv.at_infinity = p.inf;
            if (p.inf) {
                hv.meridian = G(0, 0) * G(0, 0) / std::abs(G(0, 0) * G(0, 0));
            } else {
                cplx c = G(1, 0);
                hv.center = p.z;
                hv.diameter = 1.0 / std::norm(c);
                cplx m = -1.0 / (c * c);
                hv.meridian = m / std::abs(m);
            }
            h.vertices.push_back(hv);
        }
    }
    for (int c = 0; c < d.crossing_count(); ++c)
        if (std::abs(sol.x[sys.crossing_var[c]]) == 0.0)
            h.null_arcs.push_back("crossing " + std::to_string(c) + " (" +
                                  sys.variables[sys.crossing_var[c]].name + " = 0)");
    return h;
}

CrossRatioAudit cross_ratio_audit(const LinkDiagram& d, const EquationSystem& sys, const HoroballConfig& h,
                                  const Solution& sol)
{
    CrossRatioAudit audit;
    for (const Development* dev : {&h.top, &h.bottom}) {
        for (auto& [f, M] : dev->face_map) {
            const auto& vs = dev->face_vertices.at(f);
            const int k = static_cast<int>(vs.size());
            if (k < 4)
                continue;
            std::vector<cplx> xi = xi_params(sys, d, f, sol.x);
            for (int j = 0; j < k; ++j) {
                BoundaryPoint p[4];
                for (int m = 0; m < 4; ++m) {
                    auto it = dev->center.find(vs[(j - 1 + m + k) % k]);
                    if (it == dev->center.end())
                        throw std::runtime_error("cross_ratio_audit: vertex " + std::to_string(vs[(j - 1 + m + k) % k]) +
                                                 " was never placed");
                    p[m] = it->second;
                }
                CrossRatioEntry e;
                e.top = dev->top;
                e.region = f;
                e.corner = j;
                e.xi = xi[j];
                e.cross_ratio = cross_ratio(p[0], p[1], p[2], p[3]);
                double dp = std::abs(e.cross_ratio - e.xi), dm = std::abs(e.cross_ratio + e.xi);
                e.sign = dp <= dm ? 1 : -1;
                e.deviation = std::min(dp, dm);
                audit.max_deviation = std::max(audit.max_deviation, e.deviation);
                audit.entries.push_back(e);
            }
        }
    }
    return audit;
}

double base_covariance(const HoroballConfig& a, const HoroballConfig& b)
{
    double worst = 0;
    for (int side = 0; side < 2; ++side) {
        const Development& da = side ? a.bottom : a.top;
        const Development& db = side ? b.bottom : b.top;
        std::vector<int> vs;
        for (auto& [v, p] : da.center)
            if (db.center.count(v))
                vs.push_back(v);
        const int n = static_cast<int>(vs.size());
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int k = j + 1; k < n; ++k)
                    for (int l = k + 1; l < n; ++l) {
                        cplx ca = cross_ratio(da.center.at(vs[i]), da.center.at(vs[j]), da.center.at(vs[k]),
                                              da.center.at(vs[l]));
                        cplx cb = cross_ratio(db.center.at(vs[i]), db.center.at(vs[j]), db.center.at(vs[k]),
                                              db.center.at(vs[l]));
                        worst = std::max(worst, std::abs(ca - cb) / std::max(1.0, std::abs(ca)));
                    }
    }
    return worst;
}

std::vector<double> meridian_lengths(const LinkDiagram& d, const HoroballConfig& h)
{
    std::vector<double> out;
    for (const Development* dev : {&h.top, &h.bottom}) {
        for (auto& [c, G] : dev->frame) {
            int s = dev->top ? 0 : 1;
            int w1 = dev->vertex_of_edge(d.edge_at(c, s)), w2 = dev->vertex_of_edge(d.edge_at(c, s + 2));
            if (!dev->center.count(w1) || !dev->center.count(w2))
                continue;
            Matrix2cd Gi = G.inverse();
            BoundaryPoint p1 = mobius(Gi, dev->center.at(w1)), p2 = mobius(Gi, dev->center.at(w2));
            if (p1.inf || p2.inf)
                out.push_back(std::numeric_limits<double>::infinity());
            else
                out.push_back(std::abs(p2.z - p1.z));
        }
    }
    return out;
}

std::vector<SectionAngles> developed_sections(const HoroballConfig& h)
{
    std::vector<SectionAngles> out;
    for (const Development* dev : {&h.top, &h.bottom}) {
        std::vector<SectionAngles> part;
        double total = 0;
        for (auto& [v, G] : dev->frame) {
            SectionAngles s;
            s.crossing = v;
            s.overpass = dev->top;
            std::map<int, int> next;
            bool ok = true;
            for (auto& [f, M] : dev->face_map) {
                const auto& vs = dev->face_vertices.at(f);
                const int k = static_cast<int>(vs.size());
                for (int j = 0; j < k; ++j)
                    if (vs[j] == v) {
                        int a = vs[(j - 1 + k) % k], b = vs[(j + 1) % k];
                        ok = ok && !next.count(a);
                        next[a] = b;
                    }
            }
            std::vector<int> cyc;
            if (ok && !next.empty()) {
                cyc.push_back(next.begin()->first);
                while (static_cast<int>(cyc.size()) <= static_cast<int>(next.size())) {
                    auto it = next.find(cyc.back());
                    if (it == next.end()) {
                        ok = false;
                        break;
                    }
                    if (it->second == cyc.front())
                        break;
                    cyc.push_back(it->second);
                }
                ok = ok && cyc.size() == next.size();
            }
            if (!ok || cyc.size() < 3) {
                s.shape = "irregular";
                s.in_range = false;
                part.push_back(s);
                continue;
            }
            Matrix2cd Gi = G.inverse();
            std::vector<cplx> P;
            for (int w : cyc) {
                BoundaryPoint p = mobius(Gi, dev->center.at(w));
                if (p.inf) {
                    ok = false;
                    break;
                }
                P.push_back(p.z);
            }
            const int m = static_cast<int>(P.size());
            s.shape = m == 3 ? "triangle" : m == 4 ? "quadrilateral" : "polygon";
            if (!ok) {
                s.in_range = false;
                part.push_back(s);
                continue;
            }
            for (int t = 0; t < m; ++t) {
                double a = std::arg((P[(t - 1 + m) % m] - P[t]) / (P[(t + 1) % m] - P[t]));
                s.angles.push_back(a);
                total += a;
            }
            part.push_back(s);
        }
        // orientation of the cross-sections is fixed per polyhedron
        double sign = total >= 0 ? 1.0 : -1.0;
        for (auto& s : part) {
            for (auto& a : s.angles) {
                a *= sign;
                s.in_range = s.in_range && open_angle(a);
            }
            out.push_back(s);
        }
    }
    return out;
}

nlohmann::json conditions_to_json(const ConditionsReport& r)
{
    using nlohmann::json;
    auto cj = [](cplx z) { return json::array({z.real(), z.imag()}); };
    json j;
    j["a"] = {{"verdict", to_string(r.a.verdict)}, {"witness", r.a.name}};
    if (r.a.variable >= 0)
        j["a"]["value"] = cj(r.a.value);
    json checks = json::array();
    for (auto& c : r.b.checks)
        checks.push_back({{"crossing", c.crossing},
                          {"pass", c.overpass ? "over" : "under"},
                          {"u", c.u_name},
                          {"v", c.v_name},
                          {"branch", c.positive_branch ? "Im u > 0" : "Im u < 0"},
                          {"fractions", {cj(c.f1), cj(c.f2)}},
                          {"verdict", to_string(c.verdict)}});
    j["b"] = {{"verdict", to_string(r.b.verdict)}, {"checks", checks}, {"skipped_bigon_passes", r.b.skipped}};
    j["c"] = {{"verdict", to_string(r.c.verdict)}};
    if (r.c.verdict == Verdict::Pass)
        j["c"].update({{"crossing", r.c.crossing},
                       {"fraction", cj(r.c.fraction)},
                       {"expression", r.c.expression}});
    auto secs = [](const std::vector<SectionAngles>& v) {
        json a = json::array();
        for (auto& s : v)
            a.push_back({{"crossing", s.crossing},
                         {"pass", s.overpass ? "over" : "under"},
                         {"shape", s.shape},
                         {"angles", s.angles},
                         {"in_range", s.in_range}});
        return a;
    };
    j["convexity"] = {{"verdict", to_string(r.convexity.verdict)},
                      {"labels", secs(r.convexity.sections)},
                      {"developed", secs(r.convexity.developed)}};
    if (!r.convexity.note.empty())
        j["convexity"]["note"] = r.convexity.note;
    j["passed"] = r.passed();
    return j;
}

nlohmann::json horoballs_to_json(const HoroballConfig& h)
{
    using nlohmann::json;
    json vs = json::array();
    for (auto& v : h.vertices) {
        json e = {{"vertex", v.vertex},
                  {"polyhedron", v.top ? "top" : "bottom"},
                  {"at_infinity", v.at_infinity},
                  {"meridian", {v.meridian.real(), v.meridian.imag()}}};
        if (v.at_infinity) {
            e["height"] = 1.0;
        } else {
            e["center"] = {v.center.real(), v.center.imag()};
            e["diameter"] = v.diameter;
        }
        vs.push_back(e);
    }
    return {{"base_region", h.base_region},
            {"vertices", vs},
            {"null_arcs", h.null_arcs},
            {"spread", std::max(h.top.spread, h.bottom.spread)},
            {"mismatches", h.top.mismatches + h.bottom.mismatches}};
}

}  // namespace arcgeo
