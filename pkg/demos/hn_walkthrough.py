"""Step through a Harder-Narasimhan computation with perturbed slopes.

Run:  python demos/hn_walkthrough.py
"""

from fractions import Fraction

from kuga_cert.filtration_engine import Node, SubobjectLattice, epsilon0, hn_filtration, slope_poly

# A < B < F, degree vectors pair with (1, t) to give mu + t * mu'
lat = SubobjectLattice(
    [Node("A", 1, (3, 0)), Node("B", 2, (4, 1)), Node("F", 3, (5, 3))],
    [("A", "B"), ("B", "F")],
    "F",
)
for g in lat.ids:
    print(f"mu_t({g}) = {slope_poly(lat, g)}")

e0 = epsilon0(lat)
print(f"\nno slope crossings in (0, {e0}]")
for eps in (None, e0, e0 / 10, Fraction(0)):
    res = hn_filtration(lat, eps)
    where = "for all small t" if eps is None else f"at t = {eps}"
    print(f"HN {where}: {' < '.join(res.chain)}")

# quotient slopes of the small-t filtration
res = hn_filtration(lat)
for g, mu in zip(res.chain, res.slopes):
    print(f"  {g}: {mu}   (at t = {e0}: {mu(e0)})")
