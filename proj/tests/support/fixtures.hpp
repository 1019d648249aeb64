#pragma once

#include <map>
#include <string>

#include "arcgeo/families.hpp"
#include "arcgeo/triangulate.hpp"

#ifndef ARCGEO_TEST_DATA
#define ARCGEO_TEST_DATA "tests/data"
#endif
#ifndef ARCGEO_FIXTURE_DATA
#define ARCGEO_FIXTURE_DATA "data"
#endif

namespace fixtures {

inline const char* kTrefoil = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
inline const char* kFigureEight = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";
inline const char* kL8a = "X[1,15,2,16] X[3,12,4,11] X[5,2,6,3] X[7,1,8,10] X[9,14,10,13] X[14,6,15,7] X[12,9,13,8] X[16,5,11,4]";
inline const char* kKinkedTrefoil = "X[2,5,3,6] X[4,1,5,2] X[6,3,7,4] X[1,7,8,8]";
inline const char* k819 = "X[16,6,1,5] X[6,2,7,1] X[11,3,12,2] X[3,15,4,14] X[4,10,5,9] X[12,8,13,7] X[8,14,9,13] X[15,11,16,10]";

inline std::string golden_path()
{
    return std::string(ARCGEO_TEST_DATA) + "/golden_8_8_2.txt";
}

// two-decimal values printed in the source, in its own variable names
inline const std::map<std::string, arcgeo::cplx>& published_8_8_2()
{
    static const std::map<std::string, arcgeo::cplx> v = {
        {"w1", {0.37, -0.52}},  {"w2", {-0.37, -0.52}}, {"w3", {-0.13, 0.39}},  {"w4", {0.19, 0.34}},
        {"w5", {-0.19, 0.34}},  {"w6", {-0.13, -0.39}}, {"u1", {-0.08, 0.63}},  {"u2", {-0.5, 0.36}},
        {"u3", {-0.58, 0.27}},  {"u4", {-0.37, 0.52}},  {"u5", {-0.85, 0.78}},  {"u6", {-0.37, 0.52}},
        {"u7", {-0.5, 1.9}},    {"u8", {-0.63, 0.52}},  {"u9", {-0.63, 0.52}},  {"u10", {-0.05, 0.78}},
        {"u11", {-0.42, 0.27}}, {"u12", {-0.92, 0.63}}};
    return v;
}

struct Solved {
    arcgeo::LinkDiagram diagram;
    arcgeo::EquationSystem system;
    arcgeo::SolveReport report;
    arcgeo::GeometricPick pick;
    arcgeo::Solution refined;
    double solve_seconds = 0;
};

Solved solve_fixture(const std::string& pd, int starts = 200, std::uint64_t seed = 1);

// cached per process
const Solved& l8a();
const Solved& figure_eight();
const Solved& braid(int n);

}  // namespace fixtures
