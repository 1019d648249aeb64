"""Hyperbolicity equations and geodesic crossing-arc certificates for alternating links."""

import json

from . import _arcgeo
from ._arcgeo import (
    ParseError,
    StructureError,
    classify,
    lobachevsky,
    regular_region_shape,
    tetrahedron_volume,
)

__all__ = [
    "ParseError",
    "StructureError",
    "braid",
    "certify",
    "classify",
    "equations",
    "equations_text",
    "lobachevsky",
    "regular_region_shape",
    "solve",
    "tetrahedron_volume",
]


def _pd_text(pd):
    if isinstance(pd, str):
        return pd
    return " ".join("X[%s]" % ",".join(str(int(e)) for e in x) for x in pd)


def equations(pd):
    """Generated region relations as a dict (variables, equations, provenance)."""
    return json.loads(_arcgeo.equations_json(_pd_text(pd)))


def equations_text(pd):
    return _arcgeo.equations_text(_pd_text(pd))


def solve(pd, starts=200, seed=1):
    """Distinct solutions and the index of the geometric one (or None)."""
    return json.loads(_arcgeo.solve_json(_pd_text(pd), starts, seed))


def certify(pd, starts=200, seed=1, solution=None):
    """Certificate dict; `solution` may be a dict as returned inside solve()['solutions']."""
    sol = "" if solution is None else json.dumps(solution)
    return json.loads(_arcgeo.certify_json(_pd_text(pd), starts, seed, sol))


def braid(k, n, suffixed=False):
    """PD code of the closed braid and its closed-form labels."""
    cf = _arcgeo.braid_closed_form(k, n, suffixed)
    return {
        "pd": [tuple(x) for x in _arcgeo.braid_pd(k, n, suffixed)],
        "closed_form": {
            "applies": cf["applies"],
            "residual": cf["residual"],
            "assignment": json.loads(cf["assignment"]),
        },
        "region_arities": list(cf["arities"]),
    }
