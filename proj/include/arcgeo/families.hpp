#pragma once

#include <string>
#include <vector>

#include "arcgeo/equations.hpp"
#include "arcgeo/solver.hpp"

namespace arcgeo {

// closure of (s1 s3 .. s(2k+1) s2^-1 .. s(2k)^-1)^n, optionally followed by s1 s3 .. s(2k+1)
struct BraidSpec {
    int k = 1;
    int n = 2;
    bool suffixed = false;
};

std::vector<int> braid_word(const BraidSpec& spec);   // signed generator indices
PDCode braid_pd(const std::vector<int>& word, int strands);
LinkDiagram braid_diagram(const BraidSpec& spec);

struct BraidClosedForm {
    LinkDiagram diagram;
    EquationSystem system;
    Solution solution;         // w = +-i/2 by crossing sign, every edge label (-1-i)/2
    bool applies = false;      // every non-bigon region is a triangle
    std::vector<int> arities;  // sorted region arities of the generated diagram
    std::string note;
};

BraidClosedForm braid_closed_form(const BraidSpec& spec);

// (sec(pi/m) / 2)^2
cplx regular_region_shape(int m);

}  // namespace arcgeo
