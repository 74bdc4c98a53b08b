"""Circular plate quadrant: straight-chord model vs arc-following mesh.

The benchmark case models a quadrant of a unit-radius circular plate
with two refinable triangles whose outer edges are straight chords, so
the refined geometry is an inscribed octagon no matter how large m gets.
This demo first shows that the two-element sequence converges to the
octagon plate, not the disk.  It then rebuilds the quadrant as a fan of
conventional (m=1) triangles whose boundary nodes follow the arc, and
both deflection coefficients converge to the analytic disk rows: the
gap in the benchmark is a geometry-modeling artifact, not an element
defect.

Center moments are trickier: the raw probe evaluates the curvature of
one element at the fan apex, and that single-vertex sample does not
converge there.  Angle-averaged samples on small rings recover the disk
moments to a few percent.

Run: python3 demos/demo_circular_quadrant.py
"""
import numpy as np

from triplate import (BCKind, BoundaryCondition, MRElement, Model,
                      PlateMaterial, apply_boundary_conditions, assemble,
                      field_eval, moment_eval, run_case, solve_system)

MATERIAL = PlateMaterial(E=10.92, t=1.0, nu=0.3)

DISK = {"clamped w": 1.0 / 64.0,
        "ss w": 5.3 / (64.0 * 1.3),
        "clamped M": 1.3 / 16.0,
        "ss M": 3.3 / 16.0}


def fan_mesh_quadrant(n, kind, hard=False):
    """Quadrant of the unit disk as n rings of conventional triangles.

    Ring i carries i+1 nodes at radius i/n; outer-ring nodes sit exactly
    on the arc, and each outer chord gets its own boundary segment.
    """
    def ring(i):
        if i == 0:
            return np.array([[0.0, 0.0]])
        th = np.linspace(0.0, np.pi / 2.0, i + 1)
        return np.column_stack([np.cos(th), np.sin(th)]) * (i / n)

    rings = [ring(i) for i in range(n + 1)]
    elements = []
    for i in range(1, n + 1):
        inner, outer = rings[i - 1], rings[i]
        for j in range(i):
            elements.append(MRElement.from_vertices(
                outer[j], outer[j + 1], inner[j], 1, MATERIAL))
            if j < i - 1:
                elements.append(MRElement.from_vertices(
                    inner[j], outer[j + 1], inner[j + 1], 1, MATERIAL))

    bcs = [BoundaryCondition(np.array([[0.0, 0.0], [1.0, 0.0]]),
                             BCKind.SYMMETRY),
           BoundaryCondition(np.array([[0.0, 0.0], [0.0, 1.0]]),
                             BCKind.SYMMETRY)]
    arc = rings[n]
    for j in range(n):
        bcs.append(BoundaryCondition(np.array([arc[j], arc[j + 1]]),
                                     kind, hard=hard))
    return Model(elements=elements, uniform_q=1.0, bcs=bcs)


def solve_fan(n, kind):
    return solve_system(apply_boundary_conditions(assemble(
        fan_mesh_quadrant(n, kind))))


def ring_average_moment(sol, r, k=24):
    """Angle average of (Mx+My)/2 on a ring; near the center this equals
    M(0) + c r^2, so two radii extrapolate to the center moment."""
    th = (np.arange(k) + 0.5) * (np.pi / 2.0) / k
    vals = []
    for t in th:
        mom = moment_eval(sol, (r * np.cos(t), r * np.sin(t)))
        vals.append(0.5 * (mom.mx + mom.my))
    return float(np.mean(vals))


def center_moment_estimate(sol, r1=0.15, r2=0.30):
    a1, a2 = ring_average_moment(sol, r1), ring_average_moment(sol, r2)
    return (a1 * r2 ** 2 - a2 * r1 ** 2) / (r2 ** 2 - r1 ** 2)


def main():
    print("part 1: the stored two-element benchmark (straight chords)")
    print(f"  {'case':<15} {'m':>3} {'measured':>10} {'reference':>10} "
          f"{'disk':>8}")
    for name, key in (("circle-clamped", "clamped w"), ("circle-ss", "ss w")):
        for r in run_case(name, ms=(3, 6, 12), check_equivalence=False):
            if not r["quantity"].startswith("deflection"):
                continue
            ref = r["expected"]
            ref_txt = f"{ref:10.4f}" if ref is not None else "         -"
            print(f"  {name:<15} {r['m']:>3} {r['value']:10.6f} {ref_txt} "
                  f"{DISK[key]:8.5f}")
    print("  the geometry is frozen at two chords per quadrant, so the")
    print("  sequence converges to the octagon plate, well below both the")
    print("  stored reference rows and the disk values.")

    print("\npart 2: arc-following fan mesh, center deflection w D / q r^4")
    print(f"  {'n rings':>7} {'elements':>8} {'clamped':>10} {'ss':>10}")
    sols = {}
    for n in (4, 8, 16, 32):
        sols[(n, "c")] = solve_fan(n, BCKind.CLAMPED)
        sols[(n, "s")] = solve_fan(n, BCKind.SIMPLY_SUPPORTED)
        wc = field_eval(sols[(n, "c")], (0.0, 0.0))[0]
        ws = field_eval(sols[(n, "s")], (0.0, 0.0))[0]
        print(f"  {n:>7} {n * n:>8} {wc:>10.6f} {ws:>10.6f}")
    print(f"  disk (nu=0.3):    {DISK['clamped w']:>10.6f} "
          f"{DISK['ss w']:>10.6f}")
    print("  both boundary conditions converge to the disk row once the")
    print("  boundary nodes track the arc; the nonconforming element does")
    print("  not lock onto the straightened-boundary (polygon) limit.")

    print("\npart 3: center moments M / q r^2 need a smoothed estimator")
    n = 16
    raw_c = moment_eval(sols[(n, "c")], (0.0, 0.0)).mx
    raw_s = moment_eval(sols[(n, "s")], (0.0, 0.0)).mx
    est_c = center_moment_estimate(sols[(n, "c")])
    est_s = center_moment_estimate(sols[(n, "s")])
    print(f"  {'':<10} {'vertex sample':>14} {'ring average':>13} "
          f"{'disk':>8}")
    print(f"  {'clamped':<10} {raw_c:>14.4f} {est_c:>13.4f} "
          f"{DISK['clamped M']:>8.4f}")
    print(f"  {'ss':<10} {raw_s:>14.4f} {est_s:>13.4f} "
          f"{DISK['ss M']:>8.4f}")
    print("  the apex vertex sample stays ~1.5x the disk value at every n")
    print("  (single-element curvature at a fan apex is not a convergent")
    print("  estimator); ring-averaged samples land within a few percent.")
    print("  the benchmark's stored moment rows come from the same type of")
    print("  corner-vertex probe on the two-element model.")


if __name__ == "__main__":
    main()
