"""Numerical integration rules on triangles.

Rules are returned in barycentric coordinates with weights that sum to 1;
multiply the weighted sum by the triangle area to integrate.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import QuadratureFailure

_SQRT15 = math.sqrt(15.0)

# Classic symmetric rules, keyed by the highest polynomial degree they
# integrate exactly.  Each entry: list of (weight, (l1, l2, l3)).
_SYMMETRIC_RULES = {
    1: [(1.0, (1 / 3, 1 / 3, 1 / 3))],
    2: [
        (1 / 3, (2 / 3, 1 / 6, 1 / 6)),
        (1 / 3, (1 / 6, 2 / 3, 1 / 6)),
        (1 / 3, (1 / 6, 1 / 6, 2 / 3)),
    ],
    3: [
        (-27 / 48, (1 / 3, 1 / 3, 1 / 3)),
        (25 / 48, (0.6, 0.2, 0.2)),
        (25 / 48, (0.2, 0.6, 0.2)),
        (25 / 48, (0.2, 0.2, 0.6)),
    ],
}


def _build_degree5():
    a = (6.0 + _SQRT15) / 21.0
    b = (6.0 - _SQRT15) / 21.0
    wa = (155.0 + _SQRT15) / 1200.0
    wb = (155.0 - _SQRT15) / 1200.0
    pts = [(9 / 40, (1 / 3, 1 / 3, 1 / 3))]
    for alpha, w in ((a, wa), (b, wb)):
        rest = 1.0 - 2.0 * alpha
        pts.append((w, (rest, alpha, alpha)))
        pts.append((w, (alpha, rest, alpha)))
        pts.append((w, (alpha, alpha, rest)))
    return pts


_SYMMETRIC_RULES[5] = _build_degree5()


def _collapsed_rule(degree: int):
    """Tensor Gauss rule on the square collapsed onto the triangle.

    Exact for total degree `degree`; not symmetric under vertex
    permutations, but exactness makes the point layout irrelevant for
    polynomial integrands.
    """
    n_s = (degree + 3) // 2  # radial direction picks up the Jacobian
    n_t = (degree + 2) // 2
    xs, ws = np.polynomial.legendre.leggauss(n_s)
    xt, wt = np.polynomial.legendre.leggauss(n_t)
    # map [-1, 1] -> [0, 1]
    xs = 0.5 * (xs + 1.0)
    ws = 0.5 * ws
    xt = 0.5 * (xt + 1.0)
    wt = 0.5 * wt
    pts = []
    for s, w_s in zip(xs, ws):
        for t, w_t in zip(xt, wt):
            xi = s * (1.0 - t)
            eta = s * t
            # Jacobian of the collapse is s; factor 2 renormalizes the
            # reference-triangle area 1/2 to barycentric weights summing to 1.
            pts.append((2.0 * w_s * w_t * s, (1.0 - xi - eta, xi, eta)))
    return pts


def triangle_rule(degree: int = 5) -> tuple[np.ndarray, np.ndarray]:
    """Return (points, weights) for a rule exact to `degree` on a triangle.

    points has shape (n, 3) in barycentric coordinates, weights sum to 1.
    """
    if degree < 1:
        raise QuadratureFailure(f"quadrature degree must be >= 1, got {degree}")
    rule = _SYMMETRIC_RULES.get(degree)
    if rule is None:
        rule = _collapsed_rule(degree)
    weights = np.array([w for w, _ in rule])
    points = np.array([p for _, p in rule])
    return points, weights


def integrate_on_triangle(f, vertices, degree: int = 5) -> float:
    """Integrate callable f(x, y) over the triangle given by vertices (3, 2)."""
    vertices = np.asarray(vertices, dtype=float)
    v01 = vertices[1] - vertices[0]
    v02 = vertices[2] - vertices[0]
    area = 0.5 * abs(v01[0] * v02[1] - v01[1] * v02[0])
    if area <= 0.0:
        raise QuadratureFailure("degenerate triangle in integration")
    bary, w = triangle_rule(degree)
    xy = bary @ vertices
    vals = np.array([f(x, y) for x, y in xy])
    return area * float(np.dot(w, vals))
