"""Benchmark plate models and their reference result tables.

Three classic thin-plate problems, each modeled with two refinable
triangular elements: a unit square (simply supported and clamped), a 60
degree rhombic plate with two opposite edges simply supported, and a
quadrant of a circular plate with symmetry conditions on the radius edges.

Each case carries frozen reference sequences for its reported
coefficients.  ``run_case`` solves the models, evaluates the probes and
returns flat result rows suitable for CSV/JSON reporting, including the
refinement-equivalence check against the per-cell conventional assembly.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .assembly import (BCKind, BoundaryCondition, Model,
                       apply_boundary_conditions, assemble)
from .element import MRElement, PlateMaterial
from .errors import UnknownCase
from .oracle import build_equivalent_mono, equivalence_check
from .solve import Solution, field_eval, moment_eval, solve_system

#: benchmark material: E t^3 / (12 (1 - nu^2)) = 1 exactly
UNIT_RIGIDITY_MATERIAL = PlateMaterial(E=10.92, t=1.0, nu=0.3)

#: agreement bound for the refinement-equivalence check
EQUIVALENCE_TOL = 1e-9


def rl_label(m: int) -> str:
    """Resolution label p x q with p * q = (m+1)(m+2)/2, smaller first."""
    if m < 1:
        raise ValueError(f"scale must be >= 1, got {m}")
    a, b = m + 1, m + 2
    if a % 2 == 0:
        a //= 2
    else:
        b //= 2
    lo, hi = sorted((a, b))
    return f"{lo}x{hi}"


@dataclass(frozen=True)
class ProbeSpec:
    """One reported coefficient of a benchmark case."""

    quantity: str
    evaluate: Callable[[Solution], float]
    expected: dict
    tolerance: float


@dataclass(frozen=True)
class BenchmarkCase:
    name: str
    description: str
    default_ms: tuple[int, ...]
    build: Callable[..., Model]
    probes: tuple[ProbeSpec, ...]


def _square_model(m: int, kind: BCKind, hard_ss: bool = False,
                  quadrature_degree: int = 5) -> Model:
    mat = UNIT_RIGIDITY_MATERIAL
    els = [MRElement.from_vertices((0, 0), (1, 0), (1, 1), m, mat,
                                   quadrature_degree=quadrature_degree),
           MRElement.from_vertices((0, 0), (1, 1), (0, 1), m, mat,
                                   quadrature_degree=quadrature_degree)]
    edges = [((0, 0), (1, 0)), ((1, 0), (1, 1)), ((1, 1), (0, 1)),
             ((0, 1), (0, 0))]
    bcs = [BoundaryCondition(np.array(e), kind, hard=hard_ss) for e in edges]
    return Model(elements=els, uniform_q=1.0, bcs=bcs,
                 quadrature_degree=quadrature_degree)


def _skew_model(m: int, hard_ss: bool = False,
                quadrature_degree: int = 5) -> Model:
    mat = UNIT_RIGIDITY_MATERIAL
    s3 = np.sqrt(3.0) / 2.0
    a, b, c, d = (0.0, 0.0), (1.0, 0.0), (1.5, s3), (0.5, s3)
    els = [MRElement.from_vertices(a, b, d, m, mat,
                                   quadrature_degree=quadrature_degree),
           MRElement.from_vertices(b, c, d, m, mat,
                                   quadrature_degree=quadrature_degree)]
    bcs = [BoundaryCondition(np.array([a, b]), BCKind.SIMPLY_SUPPORTED,
                             hard=hard_ss),
           BoundaryCondition(np.array([d, c]), BCKind.SIMPLY_SUPPORTED,
                             hard=hard_ss)]
    return Model(elements=els, uniform_q=1.0, bcs=bcs,
                 quadrature_degree=quadrature_degree)


def _circle_model(m: int, kind: BCKind, hard_ss: bool = False,
                  quadrature_degree: int = 5) -> Model:
    mat = UNIT_RIGIDITY_MATERIAL
    c = 1.0 / np.sqrt(2.0)
    els = [MRElement.from_vertices((0, 0), (1, 0), (c, c), m, mat,
                                   quadrature_degree=quadrature_degree),
           MRElement.from_vertices((0, 0), (c, c), (0, 1), m, mat,
                                   quadrature_degree=quadrature_degree)]
    bcs = [BoundaryCondition(np.array([(0, 0), (1, 0)]), BCKind.SYMMETRY),
           BoundaryCondition(np.array([(0, 0), (0, 1)]), BCKind.SYMMETRY),
           BoundaryCondition(np.array([(1, 0), (c, c)]), kind, hard=hard_ss),
           BoundaryCondition(np.array([(c, c), (0, 1)]), kind, hard=hard_ss)]
    return Model(elements=els, uniform_q=1.0, bcs=bcs,
                 quadrature_degree=quadrature_degree)


def _deflection_probe(point, scale: float) -> Callable[[Solution], float]:
    def evaluate(sol: Solution) -> float:
        w, _, _ = field_eval(sol, point)
        return scale * w * UNIT_RIGIDITY_MATERIAL.rigidity
    return evaluate


def _moment_probe(point, scale: float,
                  component: str = "mx") -> Callable[[Solution], float]:
    def evaluate(sol: Solution) -> float:
        mom = moment_eval(sol, point)
        return scale * getattr(mom, component)
    return evaluate


_SQUARE_CENTER = (0.5, 0.5)
_SKEW_CENTER = (0.75, np.sqrt(3.0) / 4.0)

CASES: dict[str, BenchmarkCase] = {}


def _register(case: BenchmarkCase) -> None:
    CASES[case.name] = case


_register(BenchmarkCase(
    name="square-ss",
    description="simply supported unit square, uniform load, "
                "two-element model split along the diagonal",
    default_ms=(2, 4, 8, 16),
    build=lambda m, hard_ss=False, quadrature_degree=5: _square_model(
        m, BCKind.SIMPLY_SUPPORTED, hard_ss, quadrature_degree),
    probes=(
        ProbeSpec("deflection_center_100wD_qL4",
                  _deflection_probe(_SQUARE_CENTER, 100.0),
                  {2: 0.3950, 4: 0.4039, 8: 0.4058, 16: 0.4062}, 0.0005),
        ProbeSpec("moment_center_10M_qL2",
                  _moment_probe(_SQUARE_CENTER, 10.0),
                  {2: 0.5026, 4: 0.4880, 8: 0.4824, 16: 0.4800}, 0.002),
    ),
))

_register(BenchmarkCase(
    name="square-clamped",
    description="clamped unit square, uniform load, "
                "two-element model split along the diagonal",
    default_ms=(2, 4, 8, 16),
    build=lambda m, hard_ss=False, quadrature_degree=5: _square_model(
        m, BCKind.CLAMPED, hard_ss, quadrature_degree),
    probes=(
        ProbeSpec("deflection_center_100wD_qL4",
                  _deflection_probe(_SQUARE_CENTER, 100.0),
                  {2: 0.0998, 4: 0.1194, 8: 0.1249, 16: 0.1262}, 0.0005),
        ProbeSpec("moment_edge_middle_10M_qL2",
                  _moment_probe((0.5, 0.0), 10.0, "my"),
                  {2: -0.3551, 4: -0.4761, 8: -0.5028, 16: -0.5104}, 0.002),
    ),
))

_register(BenchmarkCase(
    name="skew-60",
    description="60 degree rhombic plate, two opposite edges simply "
                "supported and two free, uniform load",
    default_ms=(8, 12, 16),
    build=lambda m, hard_ss=False, quadrature_degree=5: _skew_model(
        m, hard_ss, quadrature_degree),
    probes=(
        ProbeSpec("deflection_center_100wD_qL4",
                  _deflection_probe(_SKEW_CENTER, 100.0),
                  {8: 0.7920, 12: 0.7937, 16: 0.7930}, 0.001),
    ),
))

_register(BenchmarkCase(
    name="circle-clamped",
    description="clamped circular plate quadrant, symmetry on the radius "
                "edges, straight-chord boundary, uniform load",
    default_ms=(3, 6),
    build=lambda m, hard_ss=False, quadrature_degree=5: _circle_model(
        m, BCKind.CLAMPED, hard_ss, quadrature_degree),
    probes=(
        ProbeSpec("deflection_center_wD_qr4",
                  _deflection_probe((0.0, 0.0), 1.0),
                  {3: 0.0145, 6: 0.0153}, 0.001),
    ),
))

_register(BenchmarkCase(
    name="circle-ss",
    description="simply supported circular plate quadrant, symmetry on "
                "the radius edges, straight-chord boundary, uniform load",
    default_ms=(3, 6),
    build=lambda m, hard_ss=False, quadrature_degree=5: _circle_model(
        m, BCKind.SIMPLY_SUPPORTED, hard_ss, quadrature_degree),
    probes=(
        ProbeSpec("deflection_center_wD_qr4",
                  _deflection_probe((0.0, 0.0), 1.0),
                  {3: 0.0638, 6: 0.0637}, 0.001),
        ProbeSpec("moment_center_M_qr2",
                  _moment_probe((0.0, 0.0), 1.0),
                  {3: 0.2103, 6: 0.2073}, 0.003),
    ),
))


def benchmark_case(name: str) -> BenchmarkCase:
    try:
        return CASES[name]
    except KeyError:
        known = ", ".join(sorted(CASES))
        raise UnknownCase(f"unknown case {name!r}; known cases: {known}") from None


def run_case(name: str, ms=None, quadrature_degree: int = 5,
             hard_ss: bool = False, check_equivalence: bool = True) -> list:
    """Solve one case for each requested scale and report result rows.

    Returns a list of dicts with keys case, m, rl, quantity, value,
    expected, tolerance, status.  Probe rows compare against the frozen
    reference sequence; equivalence and node-parity rows compare the
    refinable model against its per-cell conventional twin.
    """
    case = benchmark_case(name)
    rows = []
    for m in (case.default_ms if ms is None else tuple(ms)):
        model = case.build(m, hard_ss=hard_ss,
                           quadrature_degree=quadrature_degree)
        sol = solve_system(apply_boundary_conditions(assemble(model)))
        label = rl_label(m)
        for probe in case.probes:
            value = float(probe.evaluate(sol))
            expected = probe.expected.get(m)
            if expected is None:
                status = "info"
            elif abs(value - expected) <= probe.tolerance:
                status = "ok"
            else:
                status = "mismatch"
            rows.append({
                "case": name, "m": m, "rl": label,
                "quantity": probe.quantity, "value": value,
                "expected": expected, "tolerance": probe.tolerance,
                "status": status,
            })
        if check_equivalence:
            report = equivalence_check(model)
            diff = max(report.max_K_diff, report.max_solution_diff)
            rows.append({
                "case": name, "m": m, "rl": label,
                "quantity": "equivalence_max_diff", "value": diff,
                "expected": 0.0, "tolerance": EQUIVALENCE_TOL,
                "status": "ok" if report.ok else "mismatch",
            })
            mono_nodes = assemble(build_equivalent_mono(model).model).n_nodes
            rows.append({
                "case": name, "m": m, "rl": label,
                "quantity": "node_count_vs_conventional",
                "value": float(report.node_count),
                "expected": float(mono_nodes), "tolerance": 0.0,
                "status": "ok" if report.node_count == mono_nodes
                          else "mismatch",
            })
    return rows


def run_benchmark(names=None, ms=None, quadrature_degree: int = 5,
                  hard_ss: bool = False, check_equivalence: bool = True) -> dict:
    """Run several cases and bundle the rows into one report dict."""
    if names is None:
        names = list(CASES)
    rows = []
    for name in names:
        rows.extend(run_case(name, ms=ms, quadrature_degree=quadrature_degree,
                             hard_ss=hard_ss,
                             check_equivalence=check_equivalence))
    return {"rows": rows}
