#include "arcgeo/triangulate.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <numeric>

namespace arcgeo {

namespace {

constexpr double kPi = std::numbers::pi;

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x)
    {
        while (p[x] != x)
            x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a != b)
            p[std::max(a, b)] = std::min(a, b);
    }
};

int vertex_of(const LinkDiagram& d, bool top, int edge)
{
    return top ? d.over_end(edge) : d.under_end(edge);
}

// polyhedron edge through corner (c, s): one of the two edges at the corner names it
int corner_key(const LinkDiagram& d, bool top, const Corner& c)
{
    int e = ((c.slot % 2 == 0) == top) ? d.edge_at(c.crossing, c.slot) : d.edge_at(c.crossing, c.slot + 1);
    return c.crossing * d.edge_count() + e;
}

// argument with flat shapes pinned to 0 or pi
double shape_arg(cplx w, bool flat)
{
    if (flat)
        return w.real() > 0 ? 0.0 : kPi;
    return std::arg(w);
}

}  // namespace

std::pair<IdealPolyhedron, IdealPolyhedron> menasco(const LinkDiagram& d)
{
    DiagramReport rep = classify(d);
    if (!rep.alternating)
        throw std::runtime_error("menasco: diagram is not alternating");
    UnionFind chain(d.crossing_count());
    for (int b : rep.bigons)
        chain.unite(d.regions()[b].corners[0].crossing, d.regions()[b].corners[1].crossing);

    std::pair<IdealPolyhedron, IdealPolyhedron> out;
    for (int side = 0; side < 2; ++side) {
        bool top = side == 0;
        IdealPolyhedron& P = top ? out.first : out.second;
        P.top = top;
        UnionFind keys(d.crossing_count() * d.edge_count());
        for (int b : rep.bigons) {
            const Region& r = d.regions()[b];
            keys.unite(corner_key(d, top, r.corners[0]), corner_key(d, top, r.corners[1]));
        }
        std::map<int, int> key_edge;
        std::set<int> verts;
        for (const Region& r : d.regions()) {
            const int k = r.arity();
            if (k < 3)
                continue;
            std::vector<int> vs;
            for (const Corner& c : r.corners)
                vs.push_back(vertex_of(d, top, d.edge_at(c.crossing, c.slot)));
            for (int j = 0; j < k; ++j) {
                int key = keys.find(corner_key(d, top, r.corners[j]));
                auto it = key_edge.find(key);
                if (it == key_edge.end()) {
                    PolyhedronEdge e;
                    e.a = vs[j];
                    e.b = vs[(j + 1) % k];
                    e.crossing = r.corners[j].crossing;
                    e.arc_class = chain.find(e.crossing);
                    it = key_edge.emplace(key, static_cast<int>(P.edges.size())).first;
                    P.edges.push_back(e);
                }
                P.corner_edge[{r.id, j}] = it->second;
            }
            std::set<int> distinct(vs.begin(), vs.end());
            if (static_cast<int>(distinct.size()) != k) {
                P.degenerate = true;
                P.note = "region " + std::to_string(r.id) + " repeats a vertex";
            }
            verts.insert(vs.begin(), vs.end());
            P.faces.push_back(vs);
            P.face_region.push_back(r.id);
        }
        P.vertices.assign(verts.begin(), verts.end());
        if (P.faces.empty()) {
            P.degenerate = true;
            P.note = "no region with three or more sides";
        } else if (P.faces.size() < 3) {
            P.degenerate = true;
            P.note = "only " + std::to_string(P.faces.size()) + " faces after bigon collapse (flat pillow)";
        } else if (P.euler() != 2) {
            P.degenerate = true;
            P.note = "V - E + F = " + std::to_string(P.euler()) + " after bigon collapse";
        }
    }
    return out;
}

int tet_edge_index(int i, int j)
{
    if (i > j)
        std::swap(i, j);
    static const int idx[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    return idx[i][j];
}

cplx edge_shape(cplx z, int i, int j)
{
    int k = tet_edge_index(i, j);
    if (k == 0 || k == 5)
        return z;
    if (k == 1 || k == 4)
        return 1.0 / (1.0 - z);
    return 1.0 - 1.0 / z;
}

void compute_shapes(Triangulation& tri)
{
    for (auto& t : tri.tets) {
        const Development& dev = t.top ? tri.horoballs.top : tri.horoballs.bottom;
        BoundaryPoint p[4];
        for (int i = 0; i < 4; ++i)
            p[i] = dev.center.at(t.vertex[i]);
        cplx q[4];
        for (int i = 1; i < 4; ++i) {
            if (p[0].inf)
                q[i] = p[i].z;
            else
                q[i] = p[i].inf ? cplx(0) : 1.0 / (p[i].z - p[0].z);
            if (!p[0].inf && !p[i].inf && std::abs(p[i].z - p[0].z) == 0.0)
                throw std::runtime_error("compute_shapes: coincident ideal vertices");
        }
        if (p[0].inf && (p[1].inf || p[2].inf || p[3].inf))
            throw std::runtime_error("compute_shapes: two ideal vertices at infinity");
        cplx den = q[2] - q[1];
        if (std::abs(den) < 1e-14)
            throw std::runtime_error("compute_shapes: zero translation in a cross-section");
        t.z = (q[3] - q[1]) / den;
    }
}

namespace {

struct BoundaryTriangle {
    int region = -1;
    int fan = 0;
    std::array<int, 3> sides{};
};

// attempts to cone both polyhedra from the given apexes; returns a reason on failure
std::string build(const LinkDiagram& d, const std::pair<IdealPolyhedron, IdealPolyhedron>& poly, int pt, int pb,
                  const std::map<int, int>& roots, std::vector<Tetrahedron>& tets)
{
    tets.clear();
    std::vector<BoundaryTriangle> tris;
    for (int fi : poly.first.face_region) {
        const int k = d.regions()[fi].arity();
        const int r = roots.at(fi);
        for (int t = 1; t < k - 1; ++t)
            tris.push_back({fi, t, {r % k, (r + t) % k, (r + t + 1) % k}});
    }
    const int nt = static_cast<int>(tris.size());
    std::vector<std::array<int, 2>> owner(nt * 2, {-1, -1});   // (tet, face) per polyhedron

    auto glue = [&](int t1, int f1, int t2, const std::array<int, 4>& perm) -> bool {
        std::array<int, 4> seen{};
        for (int j = 0; j < 4; ++j) {
            if (perm[j] < 0 || perm[j] > 3 || seen[perm[j]]++)
                return false;
        }
        int f2 = perm[f1];
        if (tets[t1].neighbor[f1] >= 0 || tets[t2].neighbor[f2] >= 0)
            return false;
        tets[t1].neighbor[f1] = t2;
        tets[t1].gluing[f1] = perm;
        std::array<int, 4> inv{};
        for (int j = 0; j < 4; ++j)
            inv[perm[j]] = j;
        tets[t2].neighbor[f2] = t1;
        tets[t2].gluing[f2] = inv;
        return true;
    };
    auto index_in = [&](int t, int v) {
        for (int i = 0; i < 4; ++i)
            if (tets[t].vertex[i] == v)
                return i;
        return -1;
    };

    for (int side = 0; side < 2; ++side) {
        const bool top = side == 0;
        const int p = top ? pt : pb;
        const IdealPolyhedron& P = top ? poly.first : poly.second;
        auto verts = [&](int ti) {
            const Region& r = d.regions()[tris[ti].region];
            std::array<int, 3> v{};
            for (int m = 0; m < 3; ++m) {
                const Corner& c = r.corners[tris[ti].sides[m]];
                v[m] = vertex_of(d, top, d.edge_at(c.crossing, c.slot));
            }
            return v;
        };
        // edges of the fanned boundary: polyhedron edges and diagonals
        std::map<std::array<int, 4>, std::vector<std::pair<int, std::pair<int, int>>>> edge_tris;
        for (int ti = 0; ti < nt; ++ti) {
            const int k = d.regions()[tris[ti].region].arity();
            auto v = verts(ti);
            const auto& sd = tris[ti].sides;
            for (int m = 0; m < 3; ++m) {
                int a = sd[m], b = sd[(m + 1) % 3];
                int va = v[m], vb = v[(m + 1) % 3];
                std::array<int, 4> key;
                if ((b - a + k) % k == 1)
                    key = {0, P.corner_edge.at({tris[ti].region, a}), 0, 0};
                else if ((a - b + k) % k == 1)
                    key = {0, P.corner_edge.at({tris[ti].region, b}), 0, 0};
                else
                    key = {1, tris[ti].region, std::min(a, b), std::max(a, b)};
                edge_tris[key].push_back({ti, {std::min(va, vb), std::max(va, vb)}});
            }
        }
        for (auto& [key, list] : edge_tris)
            if (list.size() != 2)
                return "boundary edge shared by " + std::to_string(list.size()) + " triangles";
        std::vector<int> base(nt, -1);
        for (int ti = 0; ti < nt; ++ti) {
            auto v = verts(ti);
            if (v[0] == p || v[1] == p || v[2] == p)
                continue;
            if (v[0] == v[1] || v[1] == v[2] || v[0] == v[2])
                return "fan triangle with a repeated vertex";
            Tetrahedron T;
            T.top = top;
            T.vertex = top ? std::array<int, 4>{p, v[0], v[1], v[2]} : std::array<int, 4>{p, v[0], v[2], v[1]};
            T.region = tris[ti].region;
            T.fan = tris[ti].fan;
            tets.push_back(T);
            base[ti] = static_cast<int>(tets.size()) - 1;
            owner[ti * 2 + side] = {base[ti], 0};
        }
        for (auto& [key, list] : edge_tris) {
            auto [k1, e1] = list[0];
            auto [k2, e2] = list[1];
            if (e1.first == p || e1.second == p)
                continue;
            bool in1 = base[k1] < 0, in2 = base[k2] < 0;
            if (in1 && in2)
                return "an edge avoiding the apex lies between two apex triangles";
            if (!in1 && !in2) {
                int t1 = base[k1], t2 = base[k2];
                int i1 = -1, i2 = -1;
                for (int i = 1; i < 4; ++i) {
                    if (tets[t1].vertex[i] != e1.first && tets[t1].vertex[i] != e1.second)
                        i1 = i;
                    if (tets[t2].vertex[i] != e2.first && tets[t2].vertex[i] != e2.second)
                        i2 = i;
                }
                std::array<int, 4> perm{};
                for (int j = 0; j < 4; ++j)
                    perm[j] = j == i1 ? i2 : index_in(t2, tets[t1].vertex[j]);
                if (!glue(t1, i1, t2, perm))
                    return "inconsistent side gluing";
            } else {
                int kp = in1 ? k1 : k2, kn = in1 ? k2 : k1;
                auto en = in1 ? e2 : e1;
                auto vp = verts(kp);
                std::set<int> want{en.first, en.second, p}, got(vp.begin(), vp.end());
                if (want != got)
                    return "apex triangle does not match its neighbour's edge";
                int tn = base[kn], i = -1;
                for (int m = 1; m < 4; ++m)
                    if (tets[tn].vertex[m] != en.first && tets[tn].vertex[m] != en.second)
                        i = m;
                if (owner[kp * 2 + side][0] >= 0)
                    return "apex triangle claimed twice";
                owner[kp * 2 + side] = {tn, i};
            }
        }
    }
    // the two polyhedra meet along the fanned regions
    for (int ti = 0; ti < nt; ++ti) {
        auto [ta, fa] = owner[ti * 2];
        auto [tb, fb] = owner[ti * 2 + 1];
        if (ta < 0 || tb < 0)
            return "boundary triangle without a tetrahedron face";
        const Region& r = d.regions()[tris[ti].region];
        std::array<int, 4> perm{-1, -1, -1, -1};
        for (int s : tris[ti].sides) {
            const Corner& c = r.corners[s];
            int e = d.edge_at(c.crossing, c.slot);
            int ia = index_in(ta, vertex_of(d, true, e)), ib = index_in(tb, vertex_of(d, false, e));
            if (ia < 0 || ib < 0)
                return "top/bottom face mismatch";
            perm[ia] = ib;
        }
        perm[fa] = fb;
        if (!glue(ta, fa, tb, perm))
            return "inconsistent top/bottom gluing";
    }
    for (auto& t : tets)
        for (int i = 0; i < 4; ++i)
            if (t.neighbor[i] < 0)
                return "unglued tetrahedron face";
    return "";
}

}  // namespace

Triangulation subdivide(const LinkDiagram& d, const std::pair<IdealPolyhedron, IdealPolyhedron>& poly,
                        const HoroballConfig& h, const SubdivideOptions& opt)
{
    Triangulation best;
    best.horoballs = h;
    best.alternate_fan = opt.alternate_fan;
    if (poly.first.degenerate || poly.second.degenerate) {
        best.attempts.push_back("degenerate polyhedron: " + poly.first.note + poly.second.note);
        return best;
    }
    for (const Development* dev : {&h.top, &h.bottom})
        for (auto& [f, sides] : dev->face_sides)
            for (auto& s : sides)
                if (std::abs(s) == 0.0)
                    throw std::runtime_error("subdivide: zero label on a side of region " + std::to_string(f));

    const auto& faces = poly.first.face_region;
    std::map<int, int> fan_start;
    for (int fi : faces) {
        const Region& r = d.regions()[fi];
        int bestj = 0;
        for (int j = 1; j < r.arity(); ++j) {
            int lj = d.edges()[d.edge_at(r.corners[j].crossing, r.corners[j].slot)].label;
            int lb = d.edges()[d.edge_at(r.corners[bestj].crossing, r.corners[bestj].slot)].label;
            if (opt.alternate_fan ? lj > lb : lj < lb)
                bestj = j;
        }
        fan_start[fi] = bestj;
    }
    bool have_fallback = false;
    for (int pt : poly.first.vertices) {
        for (int pb : poly.second.vertices) {
            std::map<int, int> roots;
            bool ok = true;
            for (std::size_t f = 0; f < faces.size() && ok; ++f) {
                const auto& a = poly.first.faces[f];
                const auto& b = poly.second.faces[f];
                std::vector<int> ca, cb;
                for (std::size_t j = 0; j < a.size(); ++j) {
                    if (a[j] == pt)
                        ca.push_back(static_cast<int>(j));
                    if (b[j] == pb)
                        cb.push_back(static_cast<int>(j));
                }
                if (ca.size() > 1 || cb.size() > 1 || (!ca.empty() && !cb.empty() && a.size() > 3 && ca[0] != cb[0])) {
                    ok = false;
                    break;
                }
                roots[faces[f]] = !ca.empty() ? ca[0] : !cb.empty() ? cb[0] : fan_start[faces[f]];
            }
            std::string tag = "apex (" + std::to_string(pt) + "," + std::to_string(pb) + "): ";
            if (!ok) {
                best.attempts.push_back(tag + "fan roots conflict");
                continue;
            }
            Triangulation tri;
            tri.horoballs = h;
            tri.alternate_fan = opt.alternate_fan;
            std::string why = build(d, poly, pt, pb, roots, tri.tets);
            if (!why.empty()) {
                best.attempts.push_back(tag + why);
                continue;
            }
            try {
                compute_shapes(tri);
            } catch (const std::runtime_error& e) {
                best.attempts.push_back(tag + e.what());
                continue;
            }
            tri.apex_top = pt;
            tri.apex_bottom = pb;
            tri.roots = roots;
            tri.valid = true;
            bool oriented = true;
            for (auto& t : tri.tets)
                oriented = oriented && t.z.imag() >= -kFlatTol;
            if (oriented || !have_fallback) {
                tri.attempts = best.attempts;
                if (!oriented)
                    tri.attempts.push_back(tag + "negatively oriented tetrahedron; kept as fallback");
                best = tri;
                have_fallback = true;
            }
            if (oriented)
                goto done;
            best.attempts.push_back(tag + "negatively oriented tetrahedron");
        }
    }
done:
    if (!best.valid)
        return best;
    // labels of the new diagonals: u' + u'' = u at the fan root
    for (const Development* dev : {&h.top, &h.bottom}) {
        for (int fi : faces) {
            const auto& vs = dev->face_vertices.at(fi);
            const int k = static_cast<int>(vs.size());
            if (k < 4 || !dev->face_sides.count(fi))
                continue;
            const int r = best.roots.at(fi);
            Eigen::Matrix2cd Gi = dev->frame.at(vs[r]).inverse();
            auto at = [&](int j) { return mobius(Gi, dev->center.at(vs[((j % k) + k) % k])); };
            BoundaryPoint prev = at(r - 1), next = at(r + 1);
            for (int s = r + 2; s <= r + k - 2; ++s) {
                BoundaryPoint mid = at(s);
                DerivedLabel lab;
                lab.top = dev->top;
                lab.region = fi;
                lab.root = r;
                lab.diagonal = s % k;
                lab.label = dev->face_sides.at(fi)[r];
                if (prev.inf || next.inf || mid.inf) {
                    lab.residual = std::numeric_limits<double>::infinity();
                } else {
                    lab.first = mid.z - prev.z;
                    lab.second = next.z - mid.z;
                    cplx sum = lab.first + lab.second;
                    lab.residual = std::min(std::abs(sum - lab.label), std::abs(sum + lab.label));
                }
                best.derived.push_back(lab);
            }
        }
    }
    return best;
}

TriangulationReport verify_triangulation(const LinkDiagram& d, const Triangulation& tri)
{
    TriangulationReport rep;
    rep.expected_cusps = d.component_count();
    if (!tri.valid || tri.tets.empty()) {
        rep.failures.push_back("no triangulation");
        return rep;
    }
    const auto& T = tri.tets;
    const int n = static_cast<int>(T.size());

    rep.gluing_closed = true;
    for (int t = 0; t < n; ++t)
        for (int i = 0; i < 4; ++i) {
            int u = T[t].neighbor[i];
            if (u < 0) {
                rep.gluing_closed = false;
                continue;
            }
            int back = T[t].gluing[i][i];
            if (T[u].neighbor[back] != t)
                rep.gluing_closed = false;
            for (int j = 0; j < 4; ++j)
                if (T[u].gluing[back][T[t].gluing[i][j]] != j)
                    rep.gluing_closed = false;
        }
    if (!rep.gluing_closed)
        rep.failures.push_back("gluing is not a closed pairing of faces");

    rep.min_imag = std::numeric_limits<double>::infinity();
    rep.max_imag = -rep.min_imag;
    for (auto& t : T) {
        rep.min_imag = std::min(rep.min_imag, t.z.imag());
        rep.max_imag = std::max(rep.max_imag, t.z.imag());
        rep.flat_count += t.flat();
        cplx prod = t.z * (1.0 - 1.0 / t.z) * (1.0 / (1.0 - t.z));
        rep.max_companion_error = std::max(rep.max_companion_error, std::abs(prod + 1.0));
    }
    if (rep.min_imag < -kFlatTol)
        rep.failures.push_back("negatively oriented tetrahedron (Im z < -1e-9)");
    if (rep.max_imag <= kFlatTol)
        rep.failures.push_back("every tetrahedron is flat");
    if (rep.max_companion_error > 1e-12)
        rep.failures.push_back("shape companion identity");

    // edge classes
    UnionFind ef(n * 6);
    for (int t = 0; t < n; ++t)
        for (int i = 0; i < 4; ++i) {
            int u = T[t].neighbor[i];
            if (u < 0)
                continue;
            for (int a = 0; a < 4; ++a)
                for (int b = a + 1; b < 4; ++b)
                    if (a != i && b != i)
                        ef.unite(t * 6 + tet_edge_index(a, b),
                                 u * 6 + tet_edge_index(T[t].gluing[i][a], T[t].gluing[i][b]));
        }
    static const int ends[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    std::map<int, EdgeClassReport> classes;
    for (int t = 0; t < n; ++t)
        for (int k = 0; k < 6; ++k)
            classes[ef.find(t * 6 + k)].members.push_back({t, k});
    for (auto& [root, ec] : classes) {
        ec.product = 1.0;
        for (auto& [t, k] : ec.members) {
            cplx w = edge_shape(T[t].z, ends[k][0], ends[k][1]);
            ec.product *= w;
            ec.winding += shape_arg(w, T[t].flat());
        }
        ec.product_error = std::abs(ec.product - 1.0);
        ec.winding_error = std::abs(ec.winding - 2 * kPi);
        rep.max_product_error = std::max(rep.max_product_error, ec.product_error);
        rep.max_winding_error = std::max(rep.max_winding_error, ec.winding_error);
        rep.edge_classes.push_back(ec);
    }
    if (rep.max_product_error > 1e-9)
        rep.failures.push_back("edge product differs from 1");
    if (rep.max_winding_error > 1e-9)
        rep.failures.push_back("edge winding differs from 2 pi");

    // cusp cross-sections: triangles (t, a), sides (t, a, f), corners (t, a, b)
    UnionFind cf(n * 4), sf(n * 16), kf(n * 16);
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            int u = T[t].neighbor[f];
            if (u < 0)
                continue;
            const auto& g = T[t].gluing[f];
            for (int a = 0; a < 4; ++a) {
                if (a == f)
                    continue;
                cf.unite(t * 4 + a, u * 4 + g[a]);
                sf.unite(t * 16 + a * 4 + f, u * 16 + g[a] * 4 + g[f]);
                for (int b = 0; b < 4; ++b)
                    if (b != a && b != f)
                        kf.unite(t * 16 + a * 4 + b, u * 16 + g[a] * 4 + g[b]);
            }
        }
    std::map<int, CuspReport> cusps;
    std::map<int, std::set<int>> side_classes, corner_classes;
    for (int t = 0; t < n; ++t)
        for (int a = 0; a < 4; ++a) {
            int c = cf.find(t * 4 + a);
            ++cusps[c].triangles;
            for (int f = 0; f < 4; ++f)
                if (f != a) {
                    side_classes[c].insert(sf.find(t * 16 + a * 4 + f));
                    corner_classes[c].insert(kf.find(t * 16 + a * 4 + f));
                }
        }
    // shape-only development of each cusp; every closed loop must have trivial rotation
    std::map<int, std::array<cplx, 4>> placed;
    auto third = [&](int t, int a, int x, int y, cplx px, cplx py) {
        // position of the remaining corner w given corners x, y of cusp triangle (t, a)
        static const int even[12][4] = {{0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}, {1, 0, 3, 2}, {1, 2, 0, 3},
                                        {1, 3, 2, 0}, {2, 0, 1, 3}, {2, 1, 3, 0}, {2, 3, 0, 1}, {3, 0, 2, 1},
                                        {3, 1, 0, 2}, {3, 2, 1, 0}};
        for (auto& e : even)
            if (e[0] == a && e[1] == x) {
                cplx zx = edge_shape(T[t].z, a, x);
                return e[2] == y ? px + zx * (py - px) : px + (py - px) / zx;
            }
        return cplx(std::nan(""), 0);
    };
    for (auto& [c, cr] : cusps) {
        for (int t0 = 0; t0 < n; ++t0)
            for (int a0 = 0; a0 < 4; ++a0) {
                if (cf.find(t0 * 4 + a0) != c || placed.count(t0 * 4 + a0))
                    continue;
                int x = (a0 + 1) % 4, y = (a0 + 2) % 4;
                std::array<cplx, 4> pos{};
                pos[x] = 0.0;
                pos[y] = 1.0;
                int w = 6 - a0 - x - y;
                pos[w] = third(t0, a0, x, y, pos[x], pos[y]);
                placed[t0 * 4 + a0] = pos;
                std::deque<int> q{t0 * 4 + a0};
                while (!q.empty()) {
                    int id = q.front();
                    q.pop_front();
                    int t = id / 4, a = id % 4;
                    const auto P = placed[id];
                    for (int f = 0; f < 4; ++f) {
                        if (f == a)
                            continue;
                        int u = T[t].neighbor[f];
                        const auto& g = T[t].gluing[f];
                        int b1 = -1, b2 = -1;
                        for (int b = 0; b < 4; ++b)
                            if (b != a && b != f)
                                (b1 < 0 ? b1 : b2) = b;
                        int a2 = g[a], x2 = g[b1], y2 = g[b2];
                        int nid = u * 4 + a2;
                        if (!placed.count(nid)) {
                            std::array<cplx, 4> np{};
                            np[x2] = P[b1];
                            np[y2] = P[b2];
                            np[6 - a2 - x2 - y2] = third(u, a2, x2, y2, P[b1], P[b2]);
                            placed[nid] = np;
                            q.push_back(nid);
                        } else {
                            const auto& Q = placed[nid];
                            cplx den = P[b2] - P[b1];
                            if (std::abs(den) > 1e-300) {
                                cplx alpha = (Q[y2] - Q[x2]) / den;
                                cr.rotation_error = std::max(cr.rotation_error, std::abs(alpha - 1.0));
                            }
                        }
                    }
                }
            }
    }
    for (auto& [c, cr] : cusps) {
        cr.edges = static_cast<int>(side_classes[c].size());
        cr.vertices = static_cast<int>(corner_classes[c].size());
        cr.combinatorics_ok = 3 * cr.triangles == 2 * cr.edges && 2 * cr.vertices == cr.triangles;
        rep.max_rotation_error = std::max(rep.max_rotation_error, cr.rotation_error);
        if (!cr.combinatorics_ok)
            rep.failures.push_back("cusp tiling violates 3F = 2E or V = F/2");
        rep.cusps.push_back(cr);
    }
    rep.cusp_count_ok = static_cast<int>(rep.cusps.size()) == rep.expected_cusps;
    if (!rep.cusp_count_ok)
        rep.failures.push_back("cusp count " + std::to_string(rep.cusps.size()) + " differs from component count " +
                               std::to_string(rep.expected_cusps));
    if (rep.max_rotation_error > 1e-9)
        rep.failures.push_back("cusp holonomy has a non-trivial rotation");

    for (double m : meridian_lengths(d, tri.horoballs))
        rep.max_meridian_error = std::max(rep.max_meridian_error, std::abs(m - 1.0));
    if (!(rep.max_meridian_error <= 1e-9))
        rep.failures.push_back("meridian translation differs from 1");

    // opposite edges seen from vertex 0 and vertex 1 carry the same shape
    for (auto& t : T) {
        const Development& dev = t.top ? tri.horoballs.top : tri.horoballs.bottom;
        auto frame = [&](int apex) {
            BoundaryPoint o = dev.center.at(t.vertex[apex]);
            std::array<cplx, 4> q{};
            for (int i = 0; i < 4; ++i) {
                if (i == apex)
                    continue;
                BoundaryPoint p = dev.center.at(t.vertex[i]);
                q[i] = o.inf ? p.z : p.inf ? cplx(0) : 1.0 / (p.z - o.z);
            }
            return q;
        };
        auto P = frame(0), R = frame(1);
        cplx u1 = P[1] - P[2], v1 = P[3] - P[1];
        cplx u2 = R[0] - R[2], v2 = R[2] - R[3];
        double err = std::abs(-v2 / u2 - (u1 + v1) / v1);
        rep.max_opposite_error = std::max(rep.max_opposite_error, err);
    }
    if (!(rep.max_opposite_error <= 1e-9))
        rep.failures.push_back("opposite-shape identity");

    for (auto& lab : tri.derived)
        rep.max_additivity_error = std::max(rep.max_additivity_error, lab.residual);
    if (!(rep.max_additivity_error <= 1e-9))
        rep.failures.push_back("diagonal labels do not add up");
    return rep;
}

namespace {

double zeta_even(int s)
{
    // Euler-Maclaurin with N = 10
    const int N = 10;
    double sum = 0;
    for (int k = 1; k < N; ++k)
        sum += std::pow(k, -s);
    double ds = s;
    sum += std::pow(N, 1 - ds) / (ds - 1) + 0.5 * std::pow(N, -ds);
    static const double B[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66};
    double rising = ds, fact = 2;
    for (int j = 1; j <= 5; ++j) {
        sum += B[j - 1] / fact * rising * std::pow(N, -ds - 2 * j + 1);
        rising *= (ds + 2 * j - 1) * (ds + 2 * j);
        fact *= (2 * j + 1) * (2 * j + 2);
    }
    return sum;
}

}  // namespace

double lobachevsky(double theta)
{
    static const std::vector<double> coef = [] {
        std::vector<double> c(51, 0.0);
        for (int n = 1; n <= 50; ++n)
            c[n] = zeta_even(2 * n) / (n * (2.0 * n + 1));
        return c;
    }();
    double t = std::remainder(theta, kPi);   // odd and pi-periodic
    if (t == 0)
        return 0;
    double r = t - t * std::log(std::abs(2 * t));
    double q = (t / kPi) * (t / kPi), p = t;
    for (int n = 1; n <= 50; ++n) {
        p *= q;
        r += coef[n] * p;
    }
    return r;
}

double tetrahedron_volume(cplx z)
{
    if (std::abs(z.imag()) <= kFlatTol)
        return 0.0;
    return lobachevsky(std::arg(z)) + lobachevsky(std::arg(1.0 - 1.0 / z)) + lobachevsky(std::arg(1.0 / (1.0 - z)));
}

double volume(const Triangulation& tri)
{
    double v = 0;
    for (auto& t : tri.tets) {
        if (t.z.imag() < -kFlatTol)
            throw std::runtime_error("volume: negatively oriented tetrahedron");
        v += tetrahedron_volume(t.z);
    }
    return v;
}

std::string to_string(Conclusion c)
{
    switch (c) {
    case Conclusion::GeodesicArcs: return "GEODESIC_ARCS";
    case Conclusion::Fail: return "FAIL";
    case Conclusion::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

namespace {

Verdict pass_if(bool ok)
{
    return ok ? Verdict::Pass : Verdict::Fail;
}

bool acceptable(const CheckResult& c)
{
    return c.verdict == Verdict::Pass || (c.verdict == Verdict::Vacuous && c.name == "condition (b)");
}

}  // namespace

Certificate certify(const LinkDiagram& d, const EquationSystem& sys, const Solution& input, const CertifyOptions& opt)
{
    Certificate cert;
    auto add = [&](const std::string& name, Verdict v, double value, double tol, const std::string& detail = "") {
        cert.checks.push_back({name, v, value, tol, detail});
    };
    bool construction_failed = false;
    auto finish = [&]() {
        bool all = true;
        for (auto& c : cert.checks)
            all = all && acceptable(c);
        if (all && !construction_failed)
            cert.conclusion = Conclusion::GeodesicArcs;
        else if (construction_failed) {
            bool other = false;
            for (auto& c : cert.checks)
                other = other || (!acceptable(c) && c.name != "triangulation");
            cert.conclusion = other ? Conclusion::Fail : Conclusion::Inconclusive;
        } else
            cert.conclusion = Conclusion::Fail;
        return cert;
    };

    Solution sol = input;
    try {
        sol = refine(sys, input, opt.refine_tol);
    } catch (const std::runtime_error&) {
    }
    sol.residual = residual_norm(sys, sol.x);
    sol.iterations = 0;
    sol.start_index = -1;
    cert.solution = sol;
    add("residual", pass_if(sol.residual < 1e-9), sol.residual, 1e-9);

    ConditionsReport cr = check_conditions(d, sys, sol);
    cert.conditions = cr;
    add("condition (a)", cr.a.verdict, cr.a.value.imag(), kRealTol, cr.a.name);
    add("condition (b)", cr.b.verdict, static_cast<double>(cr.b.checks.size()), kAngleMargin);
    add("condition (c)", cr.c.verdict, cr.c.fraction.imag(), kRealTol, cr.c.expression);
    add("cross-sectional convexity", cr.convexity.verdict, 0, kAngleMargin, cr.convexity.note);
    if (cr.c.verdict != Verdict::Pass) {
        cert.summary = "condition (c) fails: every corner fraction is real, no development exists";
        return finish();
    }

    HoroballConfig h;
    try {
        HoroballOptions ho;
        ho.base_region = opt.base_region;
        h = develop(d, sys, sol, ho);
    } catch (const std::runtime_error& e) {
        add("development", Verdict::Fail, 0, 0, e.what());
        cert.summary = e.what();
        return finish();
    }
    double spread = std::max(h.top.spread, h.bottom.spread);
    add("development consistency", pass_if(spread < 1e-8 && h.top.mismatches + h.bottom.mismatches == 0), spread,
        1e-8);
    CrossRatioAudit audit = cross_ratio_audit(d, sys, h, sol);
    add("cross-ratio audit", pass_if(audit.max_deviation < 1e-8), audit.max_deviation, 1e-8);

    auto poly = menasco(d);
    bool poly_ok = !poly.first.degenerate && !poly.second.degenerate;
    add("polyhedra", pass_if(poly_ok), poly.first.euler(), 0, poly.first.note + poly.second.note);
    if (!poly_ok) {
        cert.summary = "Menasco polyhedra are degenerate";
        return finish();
    }
    SubdivideOptions so;
    so.alternate_fan = opt.alternate_fan;
    Triangulation tri = subdivide(d, poly, h, so);
    if (!tri.valid) {
        construction_failed = true;
        add("triangulation", Verdict::Fail, 0, 0, "no cone apex pair gives a consistent subdivision");
        cert.witnesses["attempts"] = tri.attempts;
        cert.summary = "could not build a coned subdivision";
        return finish();
    }
    TriangulationReport tr = verify_triangulation(d, tri);
    cert.triangulation = tr;
    add("edge products (2)", pass_if(tr.max_product_error < 1e-9), tr.max_product_error, 1e-9);
    add("edge winding", pass_if(tr.max_winding_error < 1e-9), tr.max_winding_error, 1e-9);
    add("flatness (3)", pass_if(tr.min_imag >= -kFlatTol), tr.min_imag, kFlatTol);
    add("not all flat", pass_if(tr.max_imag > kFlatTol), tr.max_imag, kFlatTol);
    add("shape companions (1)", pass_if(tr.max_companion_error < 1e-12), tr.max_companion_error, 1e-12);
    add("opposite shapes (1)", pass_if(tr.max_opposite_error < 1e-9), tr.max_opposite_error, 1e-9);
    bool comb = tr.cusp_count_ok;
    for (auto& c : tr.cusps)
        comb = comb && c.combinatorics_ok;
    add("cusp combinatorics", pass_if(comb), static_cast<double>(tr.cusps.size()), 0);
    add("completeness (4): rotation", pass_if(tr.max_rotation_error < 1e-9), tr.max_rotation_error, 1e-9);
    add("completeness (4): meridian", pass_if(tr.max_meridian_error < 1e-9), tr.max_meridian_error, 1e-9);
    add("diagonal additivity", pass_if(tr.max_additivity_error < 1e-9), tr.max_additivity_error, 1e-9);
    add("gluing closure", pass_if(tr.gluing_closed), 0, 0);

    // flat tetrahedra: their crossing diagonals must not be one crossing arc
    std::map<std::tuple<bool, int, int>, std::set<int>> arc_classes;
    for (const IdealPolyhedron* P : {&poly.first, &poly.second})
        for (auto& e : P->edges)
            arc_classes[{P->top, std::min(e.a, e.b), std::max(e.a, e.b)}].insert(e.arc_class);
    static const int ends[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    int violations = 0;
    nlohmann::json flat_witness = nlohmann::json::array();
    for (std::size_t ti = 0; ti < tri.tets.size(); ++ti) {
        const auto& t = tri.tets[ti];
        if (!t.flat())
            continue;
        for (int k = 0; k < 3; ++k) {
            cplx w = edge_shape(t.z, ends[k][0], ends[k][1]);
            if (w.real() > 0)
                continue;
            auto cls = [&](int kk) {
                int a = t.vertex[ends[kk][0]], b = t.vertex[ends[kk][1]];
                auto it = arc_classes.find({t.top, std::min(a, b), std::max(a, b)});
                return it == arc_classes.end() ? std::set<int>{} : it->second;
            };
            auto c1 = cls(k), c2 = cls(5 - k);
            std::vector<int> common;
            std::set_intersection(c1.begin(), c1.end(), c2.begin(), c2.end(), std::back_inserter(common));
            if (!common.empty()) {
                ++violations;
                flat_witness.push_back({{"tetrahedron", ti}, {"arc_class", common.front()}});
            }
        }
    }
    add("simplicity audit", pass_if(violations == 0), violations, 0,
        std::to_string(tr.flat_count) + " flat tetrahedra");
    cert.witnesses["flat_conflicts"] = flat_witness;

    try {
        cert.volume = volume(tri);
    } catch (const std::runtime_error& e) {
        cert.volume = 0;
    }
    cert.witnesses["apex"] = {tri.apex_top, tri.apex_bottom};
    cert.witnesses["tetrahedra"] = tri.tets.size();
    cert.witnesses["condition_c"] = cr.c.expression;
    finish();
    cert.summary = cert.conclusion == Conclusion::GeodesicArcs
                       ? "every crossing arc is isotopic to a simple geodesic"
                       : "at least one check failed";
    return cert;
}

Certificate certify(const LinkDiagram& d, const CertifyOptions& opt)
{
    Certificate cert;
    EquationSystem sys;
    try {
        sys = region_equations(d);
    } catch (const std::runtime_error& e) {
        cert.conclusion = Conclusion::Fail;
        cert.checks.push_back({"equations", Verdict::Fail, 0, 0, e.what()});
        cert.summary = e.what();
        return cert;
    }
    if (sys.equations.empty() || sys.size() == 0) {
        cert.conclusion = Conclusion::Fail;
        cert.checks.push_back({"equations", Verdict::Fail, 0, 0, "empty system"});
        return cert;
    }
    SolveReport rep = solve(sys, opt.solver);
    GeometricPick pick = pick_geometric(rep.solutions, sys, d);
    if (!pick.solution) {
        cert.conclusion = Conclusion::Fail;
        cert.checks.push_back({"solve", rep.solutions.empty() ? Verdict::Fail : Verdict::Pass, rep.best_residual,
                               opt.solver.tolerance,
                               std::to_string(rep.solutions.size()) + " distinct solutions"});
        cert.checks.push_back({"condition (c)", Verdict::Fail, 0, kRealTol, pick.diagnostic});
        cert.summary = pick.diagnostic;
        return cert;
    }
    return certify(d, sys, *pick.solution, opt);
}

nlohmann::json triangulation_to_json(const Triangulation& tri)
{
    using nlohmann::json;
    json tets = json::array();
    for (auto& t : tri.tets) {
        json g = json::array();
        for (int i = 0; i < 4; ++i)
            g.push_back(t.gluing[i]);
        tets.push_back({{"polyhedron", t.top ? "top" : "bottom"},
                        {"vertices", t.vertex},
                        {"region", t.region},
                        {"fan", t.fan},
                        {"shape", {t.z.real(), t.z.imag()}},
                        {"neighbors", t.neighbor},
                        {"gluings", g}});
    }
    json roots = json::object();
    for (auto& [f, r] : tri.roots)
        roots[std::to_string(f)] = r;
    return {{"valid", tri.valid},
            {"apex", {tri.apex_top, tri.apex_bottom}},
            {"fan_roots", roots},
            {"alternate_fan", tri.alternate_fan},
            {"tetrahedra", tets},
            {"edge_shape_convention", "edges 01,23: z; 02,13: 1/(1-z); 03,12: 1-1/z"}};
}

nlohmann::json certificate_to_json(const Certificate& c, const EquationSystem* sys)
{
    using nlohmann::json;
    json checks = json::array();
    for (auto& k : c.checks)
        checks.push_back({{"name", k.name},
                          {"verdict", to_string(k.verdict)},
                          {"value", k.value},
                          {"tolerance", k.tolerance},
                          {"detail", k.detail}});
    json j = {{"conclusion", to_string(c.conclusion)},
              {"summary", c.summary},
              {"checks", checks},
              {"volume", c.volume},
              {"witnesses", c.witnesses}};
    if (c.solution && sys) {
        json a = json::object();
        for (int i = 0; i < sys->size(); ++i)
            a[sys->variables[i].name] = {c.solution->x[i].real(), c.solution->x[i].imag()};
        j["solution"] = {{"assignment", a}, {"residual", c.solution->residual}};
    }
    if (c.conditions)
        j["conditions"] = conditions_to_json(*c.conditions);
    if (c.triangulation) {
        const auto& t = *c.triangulation;
        json cusps = json::array();
        for (auto& cu : t.cusps)
            cusps.push_back({{"F", cu.triangles}, {"E", cu.edges}, {"V", cu.vertices}, {"rotation_error", cu.rotation_error}});
        j["triangulation"] = {{"edge_classes", t.edge_classes.size()},
                              {"max_product_error", t.max_product_error},
                              {"max_winding_error", t.max_winding_error},
                              {"min_imag", t.min_imag},
                              {"max_imag", t.max_imag},
                              {"flat", t.flat_count},
                              {"cusps", cusps},
                              {"max_meridian_error", t.max_meridian_error},
                              {"max_opposite_error", t.max_opposite_error},
                              {"max_additivity_error", t.max_additivity_error},
                              {"failures", t.failures}};
    }
    return j;
}

}  // namespace arcgeo
