"""Shape functions of the hexagon-supported multiresolution plate basis.

Every grid node carries three functions: a deflection function and two
rotation functions (conventions: thx pairs with dw/dy, thy with -dw/dx).
On each of the six hexagon sub-domains around the node, the functions are
the cubic plate-bending polynomials of the local vertex occupied by that
node, written in the area coordinates of the sub-domain triangle.  At
resolution m, node (r, s) uses the same functions scaled by 1/m around
its grid position; the rotation functions are additionally divided by m
so the nodal dw/dy, -dw/dx interpretation survives the scaling.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import OutsideDomain
from .geometry import (
    HexDomain,
    LocalFrame,
    SubTriangle,
    barycentric_coeffs,
    classify_points,
    grid_indices,
    node_position,
    subtriangle_partition,
)

_CONTAIN_TOL = 1e-9


@dataclass
class ShapeEval:
    """Value and derivatives of one scalar shape function.

    value: (...,), grad: (..., 2), hess: (..., 3) as (dxx, dyy, dxy).
    """

    value: np.ndarray
    grad: np.ndarray
    hess: np.ndarray

    @staticmethod
    def zeros(shape) -> "ShapeEval":
        return ShapeEval(np.zeros(shape), np.zeros(shape + (2,)), np.zeros(shape + (3,)))

    def scaled(self, val_f: float, grad_f: float, hess_f: float) -> "ShapeEval":
        return ShapeEval(self.value * val_f, self.grad * grad_f, self.hess * hess_f)


@dataclass
class BasisTriple:
    """The (deflection, rotation-x, rotation-y) functions of one node."""

    w: ShapeEval
    thx: ShapeEval
    thy: ShapeEval

    def functions(self) -> tuple[ShapeEval, ShapeEval, ShapeEval]:
        return self.w, self.thx, self.thy


def _safe_pow(col: np.ndarray, p: int) -> np.ndarray:
    if p < 0:
        return np.zeros_like(col)
    if p == 0:
        return np.ones_like(col)
    return col**p


def _eval_terms(terms, L: np.ndarray):
    """Evaluate sum of c * L1^e1 L2^e2 L3^e3 with first/second L-derivatives.

    L: (n, 3).  Returns value (n,), dL (n, 3), d2L (n, 3, 3).
    """
    n = L.shape[0]
    val = np.zeros(n)
    dL = np.zeros((n, 3))
    d2L = np.zeros((n, 3, 3))
    for coef, exps in terms:
        if coef == 0.0:
            continue
        cols = [_safe_pow(L[:, a], exps[a]) for a in range(3)]
        val += coef * cols[0] * cols[1] * cols[2]
        for a in range(3):
            ea = exps[a]
            if ea == 0:
                continue
            da = ea * _safe_pow(L[:, a], ea - 1)
            rest = np.ones(n)
            for o in range(3):
                if o != a:
                    rest = rest * cols[o]
            dL[:, a] += coef * da * rest
            # second derivatives
            if ea >= 2:
                d2L[:, a, a] += coef * ea * (ea - 1) * _safe_pow(L[:, a], ea - 2) * rest
            for bvar in range(a + 1, 3):
                eb = exps[bvar]
                if eb == 0:
                    continue
                db = eb * _safe_pow(L[:, bvar], eb - 1)
                rest2 = np.ones(n)
                for o in range(3):
                    if o != a and o != bvar:
                        rest2 = rest2 * cols[o]
                mixed = coef * da * db * rest2
                d2L[:, a, bvar] += mixed
                d2L[:, bvar, a] += mixed
    return val, dL, d2L


def _exp(i: int, p: int, j: int = -1, q: int = 0):
    e = [0, 0, 0]
    e[i] = p
    if j >= 0:
        e[j] = q
    return tuple(e)


def _family_terms(i0: int, bb: np.ndarray, cc: np.ndarray):
    """Monomial terms of (N, Nx, Ny) for the node at local vertex i0 (0-based)."""
    j0 = (i0 + 1) % 3
    k0 = (i0 + 2) % 3
    terms_n = [
        (1.0, _exp(i0, 1)),
        (1.0, _exp(i0, 2, j0, 1)),
        (1.0, _exp(i0, 2, k0, 1)),
        (-1.0, _exp(i0, 1, j0, 2)),
        (-1.0, _exp(i0, 1, k0, 2)),
    ]
    terms_nx = [
        (-bb[k0], _exp(i0, 2, j0, 1)),
        (bb[j0], _exp(i0, 2, k0, 1)),
        (0.5 * (bb[j0] - bb[k0]), (1, 1, 1)),
    ]
    terms_ny = [
        (-cc[k0], _exp(i0, 2, j0, 1)),
        (cc[j0], _exp(i0, 2, k0, 1)),
        (0.5 * (cc[j0] - cc[k0]), (1, 1, 1)),
    ]
    return terms_n, terms_nx, terms_ny


def _to_xy(dL: np.ndarray, d2L: np.ndarray, bb: np.ndarray, cc: np.ndarray,
           twoA: float):
    """Push L-space derivatives through the affine map to x, y derivatives."""
    gx = dL @ (bb / twoA)
    gy = dL @ (cc / twoA)
    grad = np.stack([gx, gy], axis=-1)
    wb = bb / twoA
    wc = cc / twoA
    hxx = np.einsum("nab,a,b->n", d2L, wb, wb)
    hyy = np.einsum("nab,a,b->n", d2L, wc, wc)
    hxy = np.einsum("nab,a,b->n", d2L, wb, wc)
    hess = np.stack([hxx, hyy, hxy], axis=-1)
    return grad, hess


def _eval_domain(domain: HexDomain, frame: LocalFrame, points: np.ndarray,
                 check: bool = False):
    """Evaluate the domain's nodal family at points (n, 2) in node-relative coords."""
    verts = frame.domain_triangle(domain)
    a0, bb, cc, twoA = barycentric_coeffs(verts)
    L = (a0 + points[:, :1] * bb + points[:, 1:] * cc) / twoA
    if check and np.any(L < -_CONTAIN_TOL):
        raise OutsideDomain(f"point outside sub-domain {domain.name}")
    i0 = frame.domain_center_vertex(domain) - 1
    out = []
    for terms in _family_terms(i0, bb, cc):
        val, dL, d2L = _eval_terms(terms, L)
        grad, hess = _to_xy(dL, d2L, bb, cc, twoA)
        out.append(ShapeEval(val, grad, hess))
    return tuple(out)


def _as_points(p):
    p = np.asarray(p, dtype=float)
    scalar = p.ndim == 1
    return np.atleast_2d(p), scalar


def _squeeze(triple, scalar: bool):
    if not scalar:
        return triple
    return tuple(ShapeEval(f.value[0], f.grad[0], f.hess[0]) for f in triple)


def split_shape_eval(domain: HexDomain, p, frame: LocalFrame):
    """(N, Nx, Ny) of the central node's family on one hexagon sub-domain.

    p is relative to the node; it must lie in the closed sub-domain.
    """
    if domain == HexDomain.OUTSIDE:
        raise OutsideDomain("cannot evaluate on OUTSIDE")
    pts, scalar = _as_points(p)
    triple = _eval_domain(domain, frame, pts, check=True)
    return _squeeze(triple, scalar)


def full_node_eval(p, frame: LocalFrame):
    """(phi, phi_x, phi_y) of the full-node functions at node-relative p.

    Zero (with zero derivatives) outside the hexagonal support.
    """
    pts, scalar = _as_points(p)
    n = len(pts)
    doms = classify_points(pts, frame)
    outs = [ShapeEval.zeros((n,)) for _ in range(3)]
    for dom in HexDomain:
        if dom == HexDomain.OUTSIDE:
            continue
        mask = doms == dom.value
        if not mask.any():
            continue
        triple = _eval_domain(dom, frame, pts[mask])
        for out, f in zip(outs, triple):
            out.value[mask] = f.value
            out.grad[mask] = f.grad
            out.hess[mask] = f.hess
    return _squeeze(tuple(outs), scalar)


def _scale_triple(triple, m: int) -> BasisTriple:
    """Apply resolution scaling to raw node-relative evaluations."""
    N, Nx, Ny = triple
    w = N.scaled(1.0, m, m * m)
    thx = Nx.scaled(1.0 / m, 1.0, m)
    thy = Ny.scaled(1.0 / m, 1.0, m)
    return BasisTriple(w, thx, thy)


def basis_eval(frame: LocalFrame, m: int, idx: tuple[int, int], p) -> BasisTriple:
    """Basis triple of grid node idx at resolution m, evaluated at local p.

    p is in element-local coordinates; evaluation and integration are
    meant to stay inside the element, which clips boundary-node supports
    implicitly.
    """
    pts, scalar = _as_points(p)
    q = m * (pts - node_position(frame, m, idx))
    triple = full_node_eval(q, frame)
    if scalar:
        triple = tuple(ShapeEval(np.atleast_1d(f.value), np.atleast_2d(f.grad),
                                 np.atleast_2d(f.hess)) for f in triple)
    scaled = _scale_triple(triple, m)
    if scalar:
        return BasisTriple(*(ShapeEval(f.value[0], f.grad[0], f.hess[0])
                             for f in scaled.functions()))
    return scaled


def subtriangle_basis(frame: LocalFrame, m: int, tri: SubTriangle, p) -> list[BasisTriple]:
    """Basis triples of the three corners of a sub-triangle, from within it.

    Evaluation is forced onto the hexagon sub-domain each corner presents
    to this cell, so points on cell edges get that cell's polynomial.
    """
    pts, scalar = _as_points(p)
    out = []
    for idx, dom in zip(tri.corner_nodes, tri.corner_domains):
        q = m * (pts - node_position(frame, m, idx))
        triple = _eval_domain(dom, frame, q, check=True)
        scaled = _scale_triple(triple, m)
        if scalar:
            scaled = BasisTriple(*(ShapeEval(f.value[0], f.grad[0], f.hess[0])
                                   for f in scaled.functions()))
        out.append(scaled)
    return out


def nesting_residual(frame: LocalFrame, m: int, idx: tuple[int, int],
                     component: str = "w", degree: int = 5) -> float:
    """Diagnostic: least-squares residual of projecting a resolution-m basis
    function onto the span of the resolution-2m basis.

    Returns the relative weighted-L2 residual over the element.  The two
    spans are generally not nested; this reports how far from nested they
    are and asserts nothing.
    """
    from .quadrature import triangle_rule

    comp = {"w": 0, "thx": 1, "thy": 2}[component]
    m2 = 2 * m
    bary, wts = triangle_rule(degree)
    pts_list = []
    w_list = []
    for tri in subtriangle_partition(frame, m2):
        pts_list.append(bary @ tri.vertices)
        w_list.append(wts * tri.area)
    pts = np.vstack(pts_list)
    wq = np.concatenate(w_list)

    target = basis_eval(frame, m, idx, pts).functions()[comp].value
    cols = []
    for fine_idx in grid_indices(m2):
        triple = basis_eval(frame, m2, fine_idx, pts)
        for f in triple.functions():
            cols.append(f.value)
    A = np.stack(cols, axis=1)
    sw = np.sqrt(wq)
    coef, *_ = np.linalg.lstsq(A * sw[:, None], target * sw, rcond=None)
    resid = target - A @ coef
    num = np.sqrt(float(np.dot(wq, resid**2)))
    den = np.sqrt(float(np.dot(wq, target**2)))
    return num / den if den > 0 else num
