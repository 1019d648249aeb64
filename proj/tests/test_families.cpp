#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"

using namespace arcgeo;

TEST_CASE("braid words")
{
    CHECK(braid_word({1, 2, false}) == std::vector<int>{1, 3, -2, 1, 3, -2});
    CHECK(braid_word({1, 2, true}) == std::vector<int>{1, 3, -2, 1, 3, -2, 1, 3});
    CHECK(braid_word({2, 2, false}).size() == 10);
    CHECK_THROWS(braid_word({1, 1, false}));
    CHECK_THROWS(braid_word({0, 2, false}));
}

TEST_CASE("braid diagrams are alternating with 3n (+2) crossings")
{
    for (int n = 2; n <= 4; ++n)
        for (bool suffixed : {false, true}) {
            auto d = braid_diagram({1, n, suffixed});
            CHECK(d.crossing_count() == 3 * n + (suffixed ? 2 : 0));
            auto r = classify(d);
            CHECK(r.alternating);
            CHECK(r.reduced);
        }
}

TEST_CASE("closed-form labels")
{
    for (int n = 2; n <= 4; ++n) {
        auto cf = braid_closed_form({1, n, false});
        for (int c = 0; c < cf.diagram.crossing_count(); ++c) {
            cplx w = cf.solution.x[cf.system.crossing_var[c]];
            CHECK(std::abs(w - static_cast<double>(cf.diagram.sign(c)) * cplx(0, 0.5)) < 1e-15);
        }
        cplx u(-0.5, -0.5);
        CHECK(std::abs(u * u - cplx(0, 0.5)) < 1e-15);
        CHECK(std::abs(cplx(0, 0.5) / (u * u) - regular_region_shape(3)) < 1e-12);
        // the generated diagrams have 4-sided regions, where these labels do not close up
        CHECK(cf.applies == (cf.arities.back() <= 3));
    }
}

TEST_CASE("numerically solved braid members")
{
    const auto& b = fixtures::braid(2);
    auto c = certify(b.diagram, b.system, b.refined);
    CHECK(c.conclusion == Conclusion::GeodesicArcs);
    CHECK(c.volume > 5.0);
}

TEST_CASE("regular region shape")
{
    CHECK(std::abs(regular_region_shape(3) - 1.0) < 1e-12);
    CHECK(std::abs(regular_region_shape(4) - 0.5) < 1e-12);
    CHECK(std::abs(regular_region_shape(5).real() - (3 - std::sqrt(5.0)) / 2) < 1e-12);
    CHECK(regular_region_shape(7).imag() == 0.0);
    CHECK_THROWS(regular_region_shape(2));
}
