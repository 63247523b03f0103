"""Which (l', n) can carry a weight-one summand with l = 3 and length 2?

The length equation leaves three candidates; comparing ranks of
S^m(T) (x) det E^{1,0} against E^{l-m,m} kills two of them.

Run:  python demos/length_exclusion.py
"""

from math import comb

from kuga_cert.higgs_model import degree_sum, length_bound, theta_injectivity_obstruction
from kuga_cert.rep_catalog import diophantine_solutions, su1n_wedge_entry

l, sigma = 3, 2
for lp, n in diophantine_solutions(l, sigma):
    lhs, rhs = comb(n + sigma - 1, sigma), comb(l, sigma) * comb(lp, sigma)
    verdict = "excluded" if theta_injectivity_obstruction(l, lp, n, sigma) else "survives"
    print(f"l'={lp:2d} n={n:2d}  bound={length_bound(l, lp, n)}  "
          f"degree sum={degree_sum(l, lp, n, sigma)}  {lhs:3d} vs {rhs:3d}  {verdict}")

entry, _ = su1n_wedge_entry(3, 2)
print(f"\nthe survivor is realised by {entry.label}: hodge {entry.hodge}, length {entry.predicted_length}")
