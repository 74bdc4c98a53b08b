"""Refinable model vs per-cell conventional assembly: exact equivalence.

A resolution-m refinable triangle restricted to any of its m^2 cells is
the conventional cubic plate triangle on that cell.  Splitting every
element of a model into its cells and assembling the conventional way
must therefore reproduce the same global system up to a node permutation.
This demo runs that check on each benchmark and prints the matched node
counts and the worst entrywise disagreements.

Run: python3 demos/demo_mono_equivalence.py
"""
from triplate import benchmark_case, equivalence_check, rl_label


def main():
    print(f"{'case':<15} {'m':>3} {'rl':>6} {'nodes':>6} {'cells':>6} "
          f"{'|dK|_max':>10} {'|dw|_max':>10} {'verdict':>8}")
    jobs = [("square-ss", 4), ("square-clamped", 4), ("skew-60", 8),
            ("circle-clamped", 6), ("circle-ss", 6)]
    for name, m in jobs:
        model = benchmark_case(name).build(m)
        report = equivalence_check(model)
        cells = sum(el.m ** 2 for el in model.elements)
        print(f"{name:<15} {m:>3} {rl_label(m):>6} {report.node_count:>6} "
              f"{cells:>6} {report.max_K_diff:>10.2e} "
              f"{report.max_solution_diff:>10.2e} "
              f"{'same' if report.ok else 'DIFFERENT':>8}")
    print("\nthe refinable model carries exactly as many nodes as the")
    print("conventional mesh of its cells, and the assembled stiffness and")
    print("the solved deflections agree to machine precision; refining a")
    print("resolution scale is the same computation as remeshing, without")
    print("rebuilding element connectivity.")


if __name__ == "__main__":
    main()
