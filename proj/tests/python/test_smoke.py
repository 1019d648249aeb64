import math
import os

import pytest

import arcgeo

FIGURE_EIGHT = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]"
TREFOIL = [(1, 4, 2, 5), (3, 6, 4, 1), (5, 2, 6, 3)]


def test_classify():
    info = arcgeo.classify(FIGURE_EIGHT)
    assert info["crossings"] == 4
    assert info["alternating"]
    assert sorted(info["region_arities"]) == [2, 2, 3, 3, 3, 3]


def test_parse_error():
    with pytest.raises(ValueError):
        arcgeo.classify("X[1,2,3]")


def test_equations():
    sys = arcgeo.equations(FIGURE_EIGHT)
    assert len(sys["equations"]) == 12
    assert "xi1" in arcgeo.equations_text(FIGURE_EIGHT)


def test_solve_and_certify_round_trip():
    out = arcgeo.solve(FIGURE_EIGHT, starts=40, seed=5)
    assert out["geometric"] is not None
    sol = out["solutions"][out["geometric"]]
    cert = arcgeo.certify(FIGURE_EIGHT, solution=sol)
    assert cert["conclusion"] == "GEODESIC_ARCS"
    assert abs(cert["volume"] - 2.029883212819307) < 1e-9


def test_trefoil_fails():
    assert arcgeo.certify(TREFOIL, starts=20)["conclusion"] == "FAIL"


def test_braid():
    b = arcgeo.braid(1, 2)
    assert len(b["pd"]) == 6
    assert set(b["closed_form"]["assignment"]) >= {"w1", "u1"}
    with pytest.raises(Exception):
        arcgeo.braid(1, 1)


def test_numeric_helpers():
    assert abs(arcgeo.regular_region_shape(3) - 1) < 1e-12
    assert abs(arcgeo.regular_region_shape(5) - (3 - math.sqrt(5)) / 2) < 1e-12
    assert arcgeo.tetrahedron_volume(0.5 + 0j) == 0.0
    z = complex(0.5, math.sqrt(3) / 2)
    assert abs(arcgeo.tetrahedron_volume(z) - 3 * arcgeo.lobachevsky(math.pi / 3)) < 1e-14


def test_data_fixture_certifies():
    data = os.environ.get("ARCGEO_DATA")
    if not data:
        pytest.skip("ARCGEO_DATA not set")
    with open(os.path.join(data, "figure8.pd")) as f:
        assert arcgeo.certify(f.read(), starts=30)["conclusion"] == "GEODESIC_ARCS"
