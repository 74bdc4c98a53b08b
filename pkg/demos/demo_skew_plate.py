"""60 degree skew plate: two opposite edges simply supported, two free.

The rhombic planform exercises non-axis-aligned element frames and free
edges.  Deflections are normalized as 100 w D / (q L^4) with L the edge
length; the sequence should settle near the analytic 0.7945.

Run: python3 demos/demo_skew_plate.py
"""
from triplate import rl_label, run_case

ANALYTIC = 0.7945


def main():
    print("60 degree rhombus, edge length 1, uniform load, D = 1")
    print("center deflection coefficient 100 w D / q L^4 "
          f"(analytic {ANALYTIC})")
    print(f"  {'m':>3} {'rl':>6} {'measured':>12} {'reference':>10} "
          f"{'meas-analytic':>14}")
    for r in run_case("skew-60", ms=(4, 8, 12, 16, 24),
                      check_equivalence=False):
        ref = r["expected"]
        ref_txt = f"{ref:10.4f}" if ref is not None else "         -"
        print(f"  {r['m']:>3} {rl_label(r['m']):>6} {r['value']:12.6f} "
              f"{ref_txt} {r['value'] - ANALYTIC:+14.4f}")
    print("\nthe measured sequence crosses the analytic value near m=8 and")
    print("settles a few thousandths below it (free-edge and soft-support")
    print("modeling effects); it agrees with the stored reference at m=12")
    print("and 16, while at m=8 it sits 0.003 high, outside the 0.001 band.")


if __name__ == "__main__":
    main()
