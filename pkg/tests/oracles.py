"""Independent brute-force oracles.

Nothing here calls into the code under test except for reading plain data
off a lattice (ids, ranks, degree vectors, the order).
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb, factorial

import sympy


# --- intersection numbers via sympy -------------------------------------------


def sympy_degree(dims, c1) -> Fraction:
    """c1 . (x_1 + ... + x_s)^(n-1) with x^dims = 1, by symbolic expansion."""
    xs = sympy.symbols(f"x1:{len(dims) + 1}")
    n = sum(dims)
    expr = sympy.expand(sum(sympy.Rational(str(a)) * x for a, x in zip(c1, xs)) * sum(xs) ** (n - 1))
    coeff = sympy.Poly(expr, *xs).coeff_monomial(tuple(dims)) if expr != 0 else 0
    return Fraction(str(coeff))


def sympy_slope(dims, rank, c1) -> Fraction:
    return sympy_degree(dims, c1) / rank


# --- Young tableaux and characters ---------------------------------------------


def _cells(lam):
    return [(i, j) for i, row in enumerate(lam) for j in range(row)]


def ssyt(lam, d):
    """All semistandard tableaux of shape lam with entries 1..d (as dicts)."""
    cells = _cells(lam)
    out = []

    def fill(k, tab):
        if k == len(cells):
            out.append(dict(tab))
            return
        i, j = cells[k]
        low = 1
        if j > 0:
            low = max(low, tab[(i, j - 1)])
        if i > 0:
            low = max(low, tab[(i - 1, j)] + 1)
        for v in range(low, d + 1):
            tab[(i, j)] = v
            fill(k + 1, tab)
        tab.pop((i, j), None)

    fill(0, {})
    return out


def ssyt_count(lam, d) -> int:
    return len(ssyt(lam, d))


def schur_poly(lam, variables):
    total = 0
    for tab in ssyt(lam, len(variables)):
        term = 1
        for v in tab.values():
            term *= variables[v - 1]
        total += term
    return sympy.expand(total)


def wedge_character(r, x, y):
    """Character of wedge^r(V (x) T): elementary symmetric e_r in all x_a y_b."""
    weights = [a * b for a in x for b in y]
    return sympy.expand(sum(sympy.Mul(*c) for c in itertools.combinations(weights, r)))


# --- spin basis -------------------------------------------------------------------


def spin_split(n):
    """Count subsets of {1..n} by bitmask, split by membership of n."""
    without = sum(1 for mask in range(2**n) if not mask >> (n - 1) & 1)
    return without, 2**n - without


# --- length equation ----------------------------------------------------------------


def length_equation_holds(l, lp, n, sigma) -> bool:
    return Fraction(l * lp * (n + 1), (l + lp) * n) == sigma


def direct_degree_sum(l, lp, n, sigma) -> Fraction:
    total = Fraction(0)
    for m in range(sigma + 1):
        total += Fraction(factorial(n + m - 1), factorial(m) * factorial(n - 1)) * (
            Fraction(l * lp, l + lp) - m
        )
    return total


def obstructed(l, lp, n, m) -> bool:
    return comb(n + m - 1, m) > comb(l, m) * comb(lp, m)


# --- filtrations -----------------------------------------------------------------------


class PlainLattice:
    """Raw data of a lattice: ranks, degree vectors, order, functionals."""

    def __init__(self, lattice):
        self.ids = list(lattice.ids)
        self.top = lattice.top
        self.rank = {i: lattice.node(i).rank for i in self.ids}
        self.deg = {i: lattice.node(i).degrees for i in self.ids}
        self.rows = lattice.functionals
        self.lt = {(a, b) for b in self.ids for a in lattice.below(b)}

    def value(self, degrees, rank, eps) -> Fraction:
        total = Fraction(0)
        for nu, row in enumerate(self.rows):
            total += eps**nu * sum(f * d for f, d in zip(row, degrees))
        return total / rank

    def quotient_value(self, lower, upper, eps) -> Fraction:
        if lower is None:
            return self.value(self.deg[upper], self.rank[upper], eps)
        d = [a - b for a, b in zip(self.deg[upper], self.deg[lower])]
        return self.value(d, self.rank[upper] - self.rank[lower], eps)

    def strictly_between(self, lower, upper):
        return [
            h for h in self.ids
            if (h, upper) in self.lt and (lower is None or (lower, h) in self.lt)
            and (lower is None or self.rank[h] > self.rank[lower])
        ]


def brute_force_hn_chains(lattice, eps):
    """Every chain 0 < G_1 < ... < G_k = top whose quotients are semistable
    at ``eps`` with strictly decreasing slopes."""
    plain = PlainLattice(lattice)
    found = []

    def semistable(lower, upper):
        mu = plain.quotient_value(lower, upper, eps)
        return all(plain.quotient_value(lower, h, eps) <= mu for h in plain.strictly_between(lower, upper))

    def extend(chain, last_slope):
        lower = chain[-1] if chain else None
        for g in plain.ids:
            if lower is not None and ((lower, g) not in plain.lt or plain.rank[g] <= plain.rank[lower]):
                continue
            mu = plain.quotient_value(lower, g, eps)
            if last_slope is not None and not mu < last_slope:
                continue
            if not semistable(lower, g):
                continue
            if g == plain.top:
                found.append(tuple(chain + [g]))
            else:
                extend(chain + [g], mu)

    extend([], None)
    return found


def all_maximal_chains(lattice):
    plain = PlainLattice(lattice)
    minimal = [g for g in plain.ids if not any((h, g) in plain.lt for h in plain.ids)]
    covers = {
        a: [b for b in plain.ids if (a, b) in plain.lt
            and not any((a, c) in plain.lt and (c, b) in plain.lt for c in plain.ids)]
        for a in plain.ids
    }
    out = []

    def walk(chain):
        if chain[-1] == plain.top:
            out.append(tuple(chain))
            return
        for b in covers[chain[-1]]:
            walk(chain + [b])

    for g in minimal:
        walk([g])
    return out
