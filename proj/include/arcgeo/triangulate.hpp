#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "arcgeo/geometry.hpp"

namespace arcgeo {

inline constexpr double kFlatTol = 1e-9;

struct PolyhedronEdge {
    int a = -1, b = -1;     // vertex ids
    int crossing = -1;      // crossing arc it comes from (bigon chains collapsed)
    int arc_class = -1;     // representative crossing of the bigon chain
};

struct IdealPolyhedron {
    bool top = true;
    std::vector<int> vertices;                  // crossing ids (over- or underpasses)
    std::vector<int> face_region;               // region id per face
    std::vector<std::vector<int>> faces;        // vertex cycle per face, side order
    std::vector<PolyhedronEdge> edges;
    std::map<std::pair<int, int>, int> corner_edge;   // (region, corner) -> edge
    bool degenerate = false;
    std::string note;
    int euler() const
    {
        return static_cast<int>(vertices.size()) - static_cast<int>(edges.size()) + static_cast<int>(faces.size());
    }
};

std::pair<IdealPolyhedron, IdealPolyhedron> menasco(const LinkDiagram& d);

struct Tetrahedron {
    bool top = true;
    std::array<int, 4> vertex{};    // vertex 0 is the cone apex
    int region = -1;                // boundary triangle it cones over
    int fan = 0;                    // triangle index inside the region's fan
    cplx z;                         // shape of edges 01 and 23
    std::array<int, 4> neighbor{-1, -1, -1, -1};
    std::array<std::array<int, 4>, 4> gluing{};   // gluing[i][j]: vertex of neighbor[i] matched with j
    bool flat() const { return std::abs(z.imag()) <= kFlatTol; }
};

struct DerivedLabel {
    bool top = true;
    int region = -1;
    int root = -1;       // corner whose vertex the fan starts from
    int diagonal = -1;   // side index of the diagonal's far vertex
    cplx first, second;  // u' and u''
    cplx label;          // the original label they must add up to
    double residual = 0;
};

struct Triangulation {
    std::vector<Tetrahedron> tets;
    int apex_top = -1, apex_bottom = -1;
    std::map<int, int> roots;           // region -> fan root side
    bool alternate_fan = false;
    HoroballConfig horoballs;
    std::vector<DerivedLabel> derived;
    std::vector<std::string> attempts;  // rejected apex pairs and why
    bool valid = false;
};

struct SubdivideOptions {
    bool alternate_fan = false;   // root fans at the greatest edge label instead of the least
};

// edge (i,j) of a tetrahedron -> 0..5; opposite edges are k and 5-k
int tet_edge_index(int i, int j);
cplx edge_shape(cplx z, int i, int j);

void compute_shapes(Triangulation& tri);
Triangulation subdivide(const LinkDiagram& d, const std::pair<IdealPolyhedron, IdealPolyhedron>& poly,
                        const HoroballConfig& h, const SubdivideOptions& opt = {});

struct EdgeClassReport {
    std::vector<std::pair<int, int>> members;   // (tet, edge index)
    cplx product;
    double winding = 0;
    double product_error = 0;
    double winding_error = 0;
};

struct CuspReport {
    int triangles = 0;   // F
    int edges = 0;       // E
    int vertices = 0;    // V
    bool combinatorics_ok = false;
    double rotation_error = 0;   // |alpha - 1| over non-tree gluings
};

struct TriangulationReport {
    std::vector<EdgeClassReport> edge_classes;
    std::vector<CuspReport> cusps;
    double max_product_error = 0;
    double max_winding_error = 0;
    double min_imag = 0;
    double max_imag = 0;
    int flat_count = 0;
    double max_companion_error = 0;
    double max_opposite_error = 0;
    double max_additivity_error = 0;
    double max_meridian_error = 0;
    double max_rotation_error = 0;
    bool gluing_closed = false;
    bool cusp_count_ok = false;
    int expected_cusps = 0;
    std::vector<std::string> failures;
    bool passed() const { return failures.empty(); }
};

TriangulationReport verify_triangulation(const LinkDiagram& d, const Triangulation& tri);

double lobachevsky(double theta);
double tetrahedron_volume(cplx z);
double volume(const Triangulation& tri);

enum class Conclusion { GeodesicArcs, Fail, Inconclusive };
std::string to_string(Conclusion c);

struct CheckResult {
    std::string name;
    Verdict verdict = Verdict::Fail;
    double value = 0;
    double tolerance = 0;
    std::string detail;
};

struct Certificate {
    Conclusion conclusion = Conclusion::Inconclusive;
    std::vector<CheckResult> checks;
    double volume = 0;
    std::optional<Solution> solution;
    std::optional<ConditionsReport> conditions;
    std::optional<TriangulationReport> triangulation;
    std::string summary;
    nlohmann::json witnesses = nlohmann::json::object();
};

struct CertifyOptions {
    SolverConfig solver;
    int base_region = -1;
    bool alternate_fan = false;
    double refine_tol = 1e-12;
};

// full pipeline from a given solution
Certificate certify(const LinkDiagram& d, const EquationSystem& sys, const Solution& sol,
                    const CertifyOptions& opt = {});
// solves, picks the geometric branch, refines, then certifies
Certificate certify(const LinkDiagram& d, const CertifyOptions& opt = {});

nlohmann::json triangulation_to_json(const Triangulation& tri);
nlohmann::json certificate_to_json(const Certificate& c, const EquationSystem* sys = nullptr);

}  // namespace arcgeo
