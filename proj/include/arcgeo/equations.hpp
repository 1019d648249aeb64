#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "arcgeo/diagram.hpp"
#include "arcgeo/polynomial.hpp"

namespace arcgeo {

struct LabelVar {
    enum class Kind { Crossing, Edge };
    Kind kind = Kind::Crossing;
    int id = 0;           // index inside its kind
    int provenance = -1;  // representative crossing, or edge index
    std::string name;     // w1.., u1..
};

// value = (var < 0 ? 0 : x[var]) + shift
struct SideExpr {
    int var = -1;
    int shift = 0;
    cplx eval(const std::vector<cplx>& x) const { return (var < 0 ? cplx(0) : x[var]) + static_cast<double>(shift); }
    Polynomial poly() const;
    std::string str(const std::vector<std::string>& names) const;
    bool operator==(const SideExpr& o) const { return var == o.var && shift == o.shift; }
};

struct Labels {
    std::vector<LabelVar> variables;
    std::vector<int> crossing_var;  // crossing -> variable index (merged through bigon chains)
    std::vector<int> edge_var;      // edge -> variable index, -1 when collapsed by a bigon
    int crossing_vars = 0;
    int edge_vars = 0;
};

// keyed by (edge index, region id)
using SideMap = std::map<std::pair<int, int>, SideExpr>;

struct EquationProvenance {
    int region = -1;
    int relation = 0;              // 1..3
    int window_start = 0;          // first corner of the window
    std::vector<SideExpr> cleared; // side expressions multiplied in to clear denominators
};

struct EquationSystem {
    std::vector<LabelVar> variables;
    std::vector<Polynomial> equations;
    std::vector<EquationProvenance> provenance;
    SideMap side_map;
    std::vector<int> crossing_var;
    std::vector<int> edge_var;
    // per region, per corner: epsilon in the crossing term eps * w (0 for bigons)
    std::vector<std::vector<int>> corner_sign;
    int crossing_vars = 0;
    int edge_vars = 0;

    int size() const { return static_cast<int>(variables.size()); }
    std::vector<std::string> names() const;
    int index_of(const std::string& name) const;
};

// sides and crossing terms of one region at an assignment
struct RegionValues {
    std::vector<cplx> sides;   // side j = edge at the slot of corner j
    std::vector<cplx> terms;   // eps_j * w_j at corner j
};

Labels allocate_labels(const LinkDiagram& d);
SideMap side_expressions(const LinkDiagram& d, const Labels& labels);
struct EquationOptions {
    // region -> corner starting the first of the three windows (default: last corner)
    std::map<int, int> first_window;
};

EquationSystem region_equations(const LinkDiagram& d);
EquationSystem region_equations(const LinkDiagram& d, const EquationOptions& opt);

RegionValues region_values(const EquationSystem& sys, const LinkDiagram& d, int region, const std::vector<cplx>& x);
std::vector<cplx> xi_params(const EquationSystem& sys, const LinkDiagram& d, int region, const std::vector<cplx>& x);
// walk matrix E(s_0) C(t_0) E(s_1) C(t_1) ... around the region
Eigen::Matrix2cd region_holonomy(const EquationSystem& sys, const LinkDiagram& d, int region,
                                 const std::vector<cplx>& x);

struct Evaluation {
    Eigen::VectorXcd residual;
    Eigen::MatrixXcd jacobian;
};

Evaluation evaluate_system(const EquationSystem& sys, const std::vector<cplx>& x);
Eigen::VectorXcd residual_vector(const EquationSystem& sys, const std::vector<cplx>& x);
double residual_norm(const EquationSystem& sys, const std::vector<cplx>& x);

nlohmann::json system_to_json(const EquationSystem& sys);
std::string system_to_text(const EquationSystem& sys, const LinkDiagram& d);

}  // namespace arcgeo
