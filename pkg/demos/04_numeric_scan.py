"""Exact grid scans of the counting inequalities."""

# %% Every comparison is done on Fractions, so there is no rounding to worry about.
from qcross.scan import ScanGrid, scan_numeric_lemmas

rep = scan_numeric_lemmas(ScanGrid(checks=("ratio_bounds", "gauss_bounds"), q=(2, 3), m_max=12))
print(rep.summary())

# %% The h1 / h2 comparison: strict in one direction or the other, except where the two coincide.
rep = scan_numeric_lemmas(ScanGrid(checks=("h1_vs_h2",), q=(2,), k_max=5, n_extra=0))
for row in rep.rows:
    p = row.grid_point
    print(f"k={p['k']} t={p['t']}: h1^2 {row.relation} h2^2 expected, {row.status}")

# %% Where k = t + 1 the two families are identical, so the strict comparison fails.
print([(r.grid_point["k"], r.grid_point["t"]) for r in rep.violations])
