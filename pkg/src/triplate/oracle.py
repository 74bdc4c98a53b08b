"""Conventional-element oracle for the multiresolution formulation.

Every sub-triangle of every element becomes one conventional cubic
plate-bending element (resolution 1) on its own canonical frame.  The
resulting model must match the multiresolution one exactly: same merged
nodes, same global stiffness up to a node permutation, same solution.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .assembly import GlobalSystem, Model, apply_boundary_conditions, assemble
from .element import MRElement
from .errors import PermutationNotFound
from .solve import solve_system


@dataclass
class MonoModel:
    """One conventional element per sub-triangle of the source model."""

    model: Model
    triangles: list[np.ndarray]   # (3, 2) global vertices per element


@dataclass
class EquivalenceReport:
    node_count: int
    dof_count: int
    mono_element_count: int
    max_K_diff: float
    max_solution_diff: float
    tolerance: float = 1e-9

    @property
    def ok(self) -> bool:
        return (self.max_K_diff < self.tolerance
                and self.max_solution_diff < self.tolerance)


def build_equivalent_mono(model: Model) -> MonoModel:
    """Explode each element's refinement partition into m=1 elements."""
    triangles = []
    elements = []
    for elem in model.elements:
        for tri in elem.partition():
            verts = elem.frame.to_global(tri.vertices)
            triangles.append(verts)
            elements.append(MRElement.from_vertices(
                verts[0], verts[1], verts[2], 1, elem.material,
                elem.quadrature_degree))
    mono = Model(elements=elements, uniform_q=model.uniform_q,
                 point_loads=list(model.point_loads), bcs=list(model.bcs),
                 merge_tolerance=model.merge_tolerance,
                 quadrature_degree=model.quadrature_degree)
    return MonoModel(model=mono, triangles=triangles)


def _node_permutation(multi: GlobalSystem, mono: GlobalSystem) -> np.ndarray:
    """perm[j] = multi node id coincident with mono node j."""
    if multi.n_nodes != mono.n_nodes:
        raise PermutationNotFound(
            f"node counts differ: multi {multi.n_nodes}, mono {mono.n_nodes}")
    tree = cKDTree(multi.node_coords)
    dist, perm = tree.query(mono.node_coords)
    tol = max(multi.merge_tol, mono.merge_tol)
    if np.any(dist > tol) or len(set(perm.tolist())) != len(perm):
        raise PermutationNotFound("node tables do not match one-to-one")
    return perm


def equivalence_check(model: Model, mono: MonoModel | None = None,
                      tolerance: float = 1e-9) -> EquivalenceReport:
    """Compare global stiffness and solution of both formulations."""
    if mono is None:
        mono = build_equivalent_mono(model)
    sys_multi = assemble(model)
    sys_mono = assemble(mono.model)
    perm = _node_permutation(sys_multi, sys_mono)
    dof_perm = (3 * np.repeat(perm, 3) + np.tile([0, 1, 2], len(perm)))
    inv_perm = np.empty_like(dof_perm)
    inv_perm[dof_perm] = np.arange(len(dof_perm))

    K_mono = sys_mono.K.tocsr()[inv_perm][:, inv_perm]
    dK = (sys_multi.K - K_mono).tocoo()
    scale = max(abs(sys_multi.K).max(), 1e-300)
    max_K_diff = float(abs(dK.data).max() / scale) if dK.nnz else 0.0

    max_sol_diff = 0.0
    if model.bcs:
        sol_multi = solve_system(apply_boundary_conditions(sys_multi))
        sol_mono = solve_system(apply_boundary_conditions(sys_mono))
        a_multi = sol_multi.dofs
        a_mono = np.zeros_like(a_multi)
        a_mono[dof_perm] = sol_mono.dofs
        s = max(float(np.abs(a_multi).max()), 1e-300)
        max_sol_diff = float(np.abs(a_multi - a_mono).max() / s)

    return EquivalenceReport(
        node_count=sys_multi.n_nodes,
        dof_count=sys_multi.n_dofs,
        mono_element_count=len(mono.model.elements),
        max_K_diff=max_K_diff,
        max_solution_diff=max_sol_diff,
        tolerance=tolerance,
    )
