"""Groebner dimension against the dimension formulas on the pinned subset.

    python3 scripts/pinned_dimension.py
"""
import time

from charscheme.analysis import scheme_report
from charscheme.cli import summary_table
from charscheme.suite import pinned_dimension


def main():
    rows = []
    for s in pinned_dimension():
        t0 = time.time()
        r = scheme_report(s)
        row = r.summary_row()
        row["status"] = (f"formula {r.dim_formula} symmetric {r.dim_formula_symmetric} "
                         f"mult {r.multiplicity_sum} {time.time() - t0:.2f}s")
        rows.append(row)
    print(summary_table(rows))


if __name__ == "__main__":
    main()
