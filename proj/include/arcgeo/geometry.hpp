#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "arcgeo/equations.hpp"
#include "arcgeo/solver.hpp"

namespace arcgeo {

inline constexpr double kRealTol = 1e-8;     // |Im| at or below counts as real
inline constexpr double kAngleMargin = 1e-10;

enum class Verdict { Pass, Fail, Vacuous, Boundary };
std::string to_string(Verdict v);

struct ConditionA {
    Verdict verdict = Verdict::Vacuous;
    int variable = -1;   // witness edge variable
    std::string name;
    cplx value;
};

struct PassCheck {
    int crossing = -1;
    bool overpass = true;
    std::string u_name, v_name;   // outgoing, incoming edge labels
    cplx u, v;
    cplx f1, f2;                  // the two fractions of the branch chosen by sign(Im u)
    bool positive_branch = true;  // Im u > 0
    Verdict verdict = Verdict::Pass;
};

struct ConditionB {
    Verdict verdict = Verdict::Pass;
    std::vector<PassCheck> checks;
    int skipped = 0;   // passes touching a bigon
};

struct ConditionC {
    Verdict verdict = Verdict::Fail;
    int crossing = -1;
    cplx fraction;
    std::string expression;
};

struct SectionAngles {
    int crossing = -1;
    bool overpass = true;      // top polyhedron vertex
    std::string shape;         // "quadrilateral", "triangle" or "polygon"
    std::vector<double> angles;
    bool in_range = true;
};

struct Convexity {
    Verdict verdict = Verdict::Pass;
    std::vector<SectionAngles> sections;     // from labels
    std::vector<SectionAngles> developed;    // from developed horoball centres (empty if unavailable)
    std::string note;
};

struct ConditionsReport {
    ConditionA a;
    ConditionB b;
    ConditionC c;
    Convexity convexity;
    bool passed() const
    {
        // (b) holds vacuously when every pass touches a bigon
        return a.verdict == Verdict::Pass && (b.verdict == Verdict::Pass || b.verdict == Verdict::Vacuous) &&
               c.verdict == Verdict::Pass &&
               convexity.verdict == Verdict::Pass;
    }
};

ConditionA check_condition_a(const EquationSystem& sys, const std::vector<cplx>& x);
ConditionsReport check_conditions(const LinkDiagram& d, const EquationSystem& sys, const Solution& sol);

// Boundary point of upper half space; `inf` marks the point at infinity.
struct BoundaryPoint {
    cplx z;
    bool inf = false;
};

BoundaryPoint mobius(const Eigen::Matrix2cd& m, const BoundaryPoint& p);
// cross-ratio [p0,p1;p2,p3] = (p3-p2)(p1-p0)/((p2-p0)(p1-p3)), projective
cplx cross_ratio(const BoundaryPoint& p0, const BoundaryPoint& p1, const BoundaryPoint& p2, const BoundaryPoint& p3);

// Developing data for one of the two polyhedra.
struct Development {
    bool top = true;
    std::vector<int> faces;                                   // non-bigon regions
    std::map<int, std::vector<int>> face_vertices;            // region -> vertex of each side
    std::map<int, std::vector<Eigen::Matrix2cd>> face_frames; // F_0..F_k in the region's own frame
    std::map<int, std::vector<cplx>> face_sides;              // side labels of each placed region
    std::map<int, Eigen::Matrix2cd> face_map;                 // region frame -> common frame
    std::map<int, Eigen::Matrix2cd> frame;                    // vertex -> frame taking the height-1 horosphere at infinity to it
    std::map<int, BoundaryPoint> center;
    std::vector<int> degenerate_faces;                        // regions with a zero crossing term
    double spread = 0;     // disagreement between repeated placements of one vertex
    int mismatches = 0;    // vertices placed both at infinity and finitely
    int vertex_of_edge(int edge) const { return top ? over_of_edge[edge] : under_of_edge[edge]; }
    std::vector<int> over_of_edge, under_of_edge;
};

struct HoroballVertex {
    int vertex = -1;   // crossing index
    bool top = true;
    bool at_infinity = false;
    cplx center;
    double diameter = 0;   // Euclidean diameter; 0 at infinity
    cplx meridian;         // unit direction
};

struct HoroballConfig {
    int base_region = -1;
    Development top, bottom;
    std::vector<HoroballVertex> vertices;
    std::vector<std::string> null_arcs;   // crossing arcs with zero label
};

struct HoroballOptions {
    int base_region = -1;   // -1: first region of arity >= 3
};

HoroballConfig develop(const LinkDiagram& d, const EquationSystem& sys, const Solution& sol,
                       const HoroballOptions& opt = {});

struct CrossRatioEntry {
    bool top = true;
    int region = -1;
    int corner = -1;
    cplx cross_ratio, xi;
    int sign = 1;         // which of +xi / -xi matched
    double deviation = 0;
};

struct CrossRatioAudit {
    double max_deviation = 0;
    std::vector<CrossRatioEntry> entries;
};

CrossRatioAudit cross_ratio_audit(const LinkDiagram& d, const EquationSystem& sys, const HoroballConfig& h,
                                  const Solution& sol);

// max difference of cross-ratios of all placed quadruples between two developments
double base_covariance(const HoroballConfig& a, const HoroballConfig& b);

// meridian translation seen from each placed vertex: |P'' - P'| should be 1
std::vector<double> meridian_lengths(const LinkDiagram& d, const HoroballConfig& h);

// interior angles of every cusp cross-section computed from developed centres
std::vector<SectionAngles> developed_sections(const HoroballConfig& h);

nlohmann::json conditions_to_json(const ConditionsReport& r);
nlohmann::json horoballs_to_json(const HoroballConfig& h);

}  // namespace arcgeo
