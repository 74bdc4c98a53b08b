"""Square plate benchmark: refinement study against the reference tables.

Solves the two-element unit square (simply supported and clamped) over a
range of resolution scales and prints the normalized coefficients next
to the stored reference sequences and the series-solution limits.

The measured sequences converge monotonically from the flexible side
toward the analytic limits, but they do not pass through the stored
reference points; the stored rows sit much closer to the limit at every
scale.  The acceptance suite reports this as a finding rather than
papering over it.

Run: python3 demos/demo_square_convergence.py
"""
from triplate import rl_label, run_case

# classic thin-plate series values for nu = 0.3
ANALYTIC = {
    ("square-ss", "deflection_center_100wD_qL4"): 0.4062,
    ("square-ss", "moment_center_10M_qL2"): 0.4789,
    ("square-clamped", "deflection_center_100wD_qL4"): 0.1265,
    ("square-clamped", "moment_edge_middle_10M_qL2"): -0.5133,
}


def print_case(name, ms):
    rows = run_case(name, ms=ms, check_equivalence=False)
    quantities = sorted({r["quantity"] for r in rows})
    for quantity in quantities:
        limit = ANALYTIC[(name, quantity)]
        print(f"\n{name}: {quantity} (series limit {limit})")
        print(f"  {'m':>3} {'rl':>6} {'measured':>12} {'reference':>10} "
              f"{'meas-limit':>11} {'ref-limit':>10}")
        for r in rows:
            if r["quantity"] != quantity:
                continue
            ref = r["expected"]
            ref_txt = f"{ref:10.4f}" if ref is not None else "         -"
            ref_err = f"{ref - limit:+10.4f}" if ref is not None else "         -"
            print(f"  {r['m']:>3} {rl_label(r['m']):>6} "
                  f"{r['value']:12.6f} {ref_txt} "
                  f"{r['value'] - limit:+11.4f} {ref_err}")


def main():
    ms = (2, 4, 8, 16, 24)
    print("two-element unit square, uniform load, D = 1")
    print_case("square-ss", ms)
    print_case("square-clamped", ms)
    print("\nnote: scales beyond the stored table (m=24) keep shrinking the")
    print("gap to the series limit, confirming convergence of the element;")
    print("the offset against the stored reference sequence is systematic")
    print("at every scale and is analyzed in the project notes.")


if __name__ == "__main__":
    main()
