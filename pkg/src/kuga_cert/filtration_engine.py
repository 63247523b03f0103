"""Harder-Narasimhan and weak Jordan-Hoelder filtrations on finite lattices.

A :class:`SubobjectLattice` is a finite poset of saturated subobjects of a
sheaf ``F`` (the top node).  Each node carries a rank and a degree vector;
a matrix of *functionals* turns a degree vector into the coefficients of a
slope polynomial

    mu'_t(G) = sum_nu  t^nu * (functionals[nu] . degrees(G)) / rk(G),

so row 0 is the unperturbed slope and further rows are the perturbation
directions.  Filtrations "for small epsilon" compare these polynomials
lexicographically and certify the range ``(0, epsilon0]`` on which the
lexicographic answer is the pointwise answer.

The zero subobject is implicit: chains are reported as ``G_1 < ... < G_k = F``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence

import sympy

from .chow_calculus import FactorProfile, evaluate_monomial_sum, linear_form, linear_form_power, poly_multiply
from .errors import InvalidInputError, LatticeDiagnostic, PreconditionError
from .rationals import as_fraction, fraction_str

ZERO = "0"  # id reserved for the zero object (used as the top of dual lattices)


@dataclass(frozen=True)
class SlopePolynomial:
    """Rational polynomial in ``t``; trailing zero coefficients are dropped."""

    coeffs: tuple

    def __post_init__(self):
        coeffs = [as_fraction(c) for c in self.coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __call__(self, t) -> Fraction:
        t = as_fraction(t)
        value = Fraction(0)
        for c in reversed(self.coeffs):
            value = value * t + c
        return value

    def coefficient(self, nu: int) -> Fraction:
        return self.coeffs[nu] if nu < len(self.coeffs) else Fraction(0)

    @property
    def constant(self) -> Fraction:
        return self.coefficient(0)

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __sub__(self, other: "SlopePolynomial") -> "SlopePolynomial":
        size = max(len(self.coeffs), len(other.coeffs))
        return SlopePolynomial(
            tuple(self.coefficient(k) - other.coefficient(k) for k in range(size))
        )

    def lex_sign(self) -> int:
        """Sign of the polynomial at every sufficiently small t > 0."""
        for c in self.coeffs:
            if c:
                return 1 if c > 0 else -1
        return 0

    def lex_cmp(self, other: "SlopePolynomial") -> int:
        return (self - other).lex_sign()

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(fraction_str(c) + ("*" + mono if mono else ""))
        return " + ".join(terms).replace("+ -", "- ")


class _LexKey:
    """Sort key ordering polynomials lexicographically by coefficients."""

    __slots__ = ("poly",)

    def __init__(self, poly: SlopePolynomial):
        self.poly = poly

    def __lt__(self, other):
        return self.poly.lex_cmp(other.poly) < 0

    def __eq__(self, other):
        return self.poly.lex_cmp(other.poly) == 0


@dataclass(frozen=True)
class Node:
    id: str
    rank: int
    degrees: tuple

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(as_fraction(d) for d in self.degrees))


class SubobjectLattice:
    """Immutable finite poset of subobjects with ranks and degree vectors.

    ``edges`` are pairs ``(smaller, larger)``; the order is their reflexive
    transitive closure.  Equal-rank strict inclusions are allowed only between
    mu'-equivalent nodes (degree difference killed by every functional).
    """

    def __init__(
        self,
        nodes: Iterable,
        edges: Iterable,
        top: str,
        functionals: Sequence | None = None,
        _allow_zero_id: bool = False,
    ):
        node_list = [n if isinstance(n, Node) else Node(n["id"], n["rank"], tuple(n["degrees"])) for n in nodes]
        if not node_list:
            raise InvalidInputError("a lattice needs at least one node")
        self._nodes = {}
        for node in node_list:
            if not isinstance(node.id, str) or not node.id:
                raise InvalidInputError(f"node ids must be nonempty strings: {node.id!r}")
            if node.id == ZERO and not _allow_zero_id:
                raise InvalidInputError(f"node id {ZERO!r} is reserved for the zero object")
            if node.id in self._nodes:
                raise InvalidInputError(f"duplicate node id {node.id!r}")
            if not isinstance(node.rank, int) or isinstance(node.rank, bool) or node.rank < 1:
                raise InvalidInputError(f"node {node.id}: rank must be a positive integer")
            self._nodes[node.id] = node
        width = len(node_list[0].degrees)
        if any(len(n.degrees) != width for n in node_list):
            raise InvalidInputError("all degree vectors must have the same length")
        if functionals is None:
            functionals = [[1 if i == j else 0 for j in range(width)] for i in range(width)]
        self.functionals = tuple(tuple(as_fraction(x) for x in row) for row in functionals)
        if any(len(row) != width for row in self.functionals):
            raise InvalidInputError(f"functional rows must have length {width}")
        if top not in self._nodes:
            raise InvalidInputError(f"top {top!r} is not a node")
        self.top = top

        self.edges = tuple(sorted({(str(a), str(b)) for a, b in edges}))
        below = {i: set() for i in self._nodes}
        for a, b in self.edges:
            if a not in self._nodes or b not in self._nodes:
                raise InvalidInputError(f"edge ({a}, {b}) mentions an unknown node")
            if a == b:
                raise InvalidInputError(f"self-loop at {a}")
            below[b].add(a)
        # transitive closure by repeated relaxation (lattices here are small)
        changed = True
        while changed:
            changed = False
            for b in below:
                extra = set().union(*(below[a] for a in below[b])) - below[b] if below[b] else set()
                if extra:
                    below[b] |= extra
                    changed = True
        for b, lows in below.items():
            if b in lows:
                raise InvalidInputError(f"the order has a cycle through {b!r}")
        self._below = {b: frozenset(lows) for b, lows in below.items()}
        missing = set(self._nodes) - self._below[top] - {top}
        if missing:
            raise InvalidInputError(f"nodes not contained in the top: {sorted(missing)}")
        for b, lows in self._below.items():
            for a in lows:
                ra, rb = self._nodes[a].rank, self._nodes[b].rank
                if ra > rb or (ra == rb and not self.mu_equivalent(a, b)):
                    raise InvalidInputError(
                        f"rank must increase along {a} < {b} unless the two are mu'-equivalent"
                    )
        self._polys = {}

    # --- basic queries -----------------------------------------------------

    @property
    def ids(self) -> list:
        return sorted(self._nodes)

    def __len__(self) -> int:
        return len(self._nodes)

    def __contains__(self, node_id) -> bool:
        return node_id in self._nodes

    def node(self, node_id: str) -> Node:
        try:
            return self._nodes[node_id]
        except KeyError:
            raise InvalidInputError(f"unknown node {node_id!r}") from None

    def rank(self, node_id: str) -> int:
        return self.node(node_id).rank

    def below(self, node_id: str) -> frozenset:
        """Ids strictly contained in ``node_id``."""
        self.node(node_id)
        return self._below[node_id]

    def leq(self, a: str, b: str) -> bool:
        self.node(a)
        return a == b or a in self.below(b)

    def pairing(self, degrees: Sequence) -> tuple:
        return tuple(sum((f * d for f, d in zip(row, degrees)), Fraction(0)) for row in self.functionals)

    def mu_equivalent(self, g: str, f: str) -> bool:
        """Equal rank and degree difference annihilated by every functional."""
        if not self.leq(g, f):
            raise InvalidInputError(f"{g!r} is not contained in {f!r}")
        ng, nf = self.node(g), self.node(f)
        if ng.rank != nf.rank:
            return False
        return not any(self.pairing([x - y for x, y in zip(nf.degrees, ng.degrees)]))

    def poly(self, node_id: str) -> SlopePolynomial:
        if node_id not in self._polys:
            node = self.node(node_id)
            self._polys[node_id] = SlopePolynomial(
                tuple(c / node.rank for c in self.pairing(node.degrees))
            )
        return self._polys[node_id]

    # --- derived lattices ----------------------------------------------------

    def quotient(self, g: str) -> "SubobjectLattice":
        """Lattice of ``H / g`` for nodes ``H > g`` of larger rank."""
        base = self.node(g)
        if g == self.top:
            raise InvalidInputError("the quotient by the top is zero")
        keep = [h for h in self.ids if g in self._below[h] and self._nodes[h].rank > base.rank]
        nodes = [
            Node(h, self._nodes[h].rank - base.rank,
                 tuple(x - y for x, y in zip(self._nodes[h].degrees, base.degrees)))
            for h in keep
        ]
        kept = set(keep)
        edges = [(a, b) for b in keep for a in self._below[b] if a in kept]
        return SubobjectLattice(nodes, edges, self.top, self.functionals, _allow_zero_id=True)

    def dual(self) -> "SubobjectLattice":
        """Order-dual lattice of the ``(F/G)^dual``, ``G`` running over proper nodes.

        Node ``G`` of the dual stands for ``(F/G)^dual``; the top of the dual is
        ``F^dual`` and carries the id ``"0"`` (the kernel being zero).
        """
        top = self._nodes[self.top]
        keep = [g for g in self.ids if g != self.top and self._nodes[g].rank < top.rank]
        nodes = [
            Node(g, top.rank - self._nodes[g].rank,
                 tuple(y - x for x, y in zip(top.degrees, self._nodes[g].degrees)))
            for g in keep
        ]
        nodes.append(Node(ZERO, top.rank, tuple(-x for x in top.degrees)))
        kept = set(keep)
        edges = [(b, a) for b in keep for a in self._below[b] if a in kept]
        edges += [(g, ZERO) for g in keep]
        return SubobjectLattice(nodes, edges, ZERO, self.functionals, _allow_zero_id=True)

    # --- serialization ---------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "schema_version": 1,
            "nodes": [
                {"id": i, "rank": self._nodes[i].rank,
                 "degrees": [fraction_str(d) for d in self._nodes[i].degrees]}
                for i in self.ids
            ],
            "edges": [list(e) for e in self.edges],
            "top": self.top,
            "functionals": [[fraction_str(x) for x in row] for row in self.functionals],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "SubobjectLattice":
        return cls(
            [Node(n["id"], n["rank"], tuple(n["degrees"])) for n in data["nodes"]],
            [tuple(e) for e in data.get("edges", [])],
            data["top"],
            data.get("functionals"),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubobjectLattice):
            return NotImplemented
        return (
            self._nodes == other._nodes
            and self._below == other._below
            and self.top == other.top
            and self.functionals == other.functionals
        )

    def __repr__(self) -> str:
        return f"SubobjectLattice({len(self)} nodes, top={self.top!r})"


def twist_functionals(profile: FactorProfile, iota: int) -> tuple:
    """Functionals for Chern-vector degrees giving ``mu + t * mu_{D^(iota)}``."""
    profile.check_index(iota)
    weights = profile.component_weights
    twist = tuple(w if j == iota else Fraction(0) for j, w in enumerate(weights, start=1))
    return (tuple(weights), twist)


def polarization_functionals(profile: FactorProfile, d_coeffs: Sequence, h_coeffs: Sequence) -> tuple:
    """Functionals for the slope against ``(D + t H)^(n-1)``, D and H linear in the x_i.

    Row ``nu`` sends a Chern vector ``c`` to ``C(n-1, nu) c . D^(n-1-nu) H^nu``,
    so the slope polynomial has degree at most ``n - 1``.
    """
    d_coeffs = [as_fraction(x) for x in d_coeffs]
    h_coeffs = [as_fraction(x) for x in h_coeffs]
    if len(d_coeffs) != profile.s or len(h_coeffs) != profile.s:
        raise InvalidInputError(f"D and H need {profile.s} coefficients")
    top = profile.n - 1
    rows = []
    for nu in range(top + 1):
        power = poly_multiply(linear_form_power(d_coeffs, top - nu), linear_form_power(h_coeffs, nu))
        rows.append(tuple(
            comb(top, nu) * evaluate_monomial_sum(profile, poly_multiply(linear_form([1 if k == j else 0 for k in range(profile.s)]), power))
            for j in range(profile.s)
        ))
    return tuple(rows)


# --- slope polynomials and epsilon0 ----------------------------------------------


def slope_poly(lattice: SubobjectLattice, node: str, functionals: Sequence | None = None) -> SlopePolynomial:
    """Slope polynomial of ``node``, optionally under other functionals."""
    if functionals is None:
        return lattice.poly(node)
    n = lattice.node(node)
    rows = [[as_fraction(x) for x in row] for row in functionals]
    if any(len(row) != len(n.degrees) for row in rows):
        raise InvalidInputError(f"functional rows must have length {len(n.degrees)}")
    return SlopePolynomial(
        tuple(sum((f * d for f, d in zip(row, n.degrees)), Fraction(0)) / n.rank for row in rows)
    )


def lex_max(polys: Sequence[SlopePolynomial]) -> int:
    """Index of the lexicographically largest polynomial (first one on ties)."""
    if not polys:
        raise InvalidInputError("lex_max of an empty list")
    best = 0
    for k in range(1, len(polys)):
        if polys[k].lex_cmp(polys[best]) > 0:
            best = k
    return best


def _to_fraction(r) -> Fraction:
    return Fraction(int(r.p), int(r.q))


def _bisect_root(coeffs: list, a: Fraction, b: Fraction) -> Fraction:
    """Lower end of a bracket around the simple root in (a, b), tight relative to the root."""
    value = lambda t: sum(c * t**k for k, c in enumerate(coeffs))  # noqa: E731
    sign_a = value(a) > 0
    while a <= 0 or (b - a) * 1000 > a:
        mid = (a + b) / 2
        if (value(mid) > 0) == sign_a:
            a = mid
        else:
            b = mid
    return a


def _positive_root_lower_bound(coeffs: tuple) -> Fraction | None:
    """Exact smallest positive root if rational, else a rational just below it."""
    coeffs = list(coeffs)
    while coeffs and coeffs[0] == 0:  # divide out powers of t
        coeffs.pop(0)
    if len(coeffs) <= 1:
        return None
    signs = [c > 0 for c in coeffs if c]
    if all(sg == signs[0] for sg in signs):  # Descartes: no positive root
        return None
    if len(coeffs) == 2:
        root = -coeffs[0] / coeffs[1]
        return root if root > 0 else None
    t = sympy.Symbol("t")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], t, domain="QQ")
    best = None
    for factor, _mult in poly.factor_list()[1]:
        if factor.degree() == 1:
            c1, c0 = (_to_fraction(c) for c in factor.all_coeffs())
            candidates = [-c0 / c1]
        else:
            # irreducible of degree >= 2: simple irrational roots, so the sign changes
            # across every isolating interval and exact bisection is safe
            fc = [_to_fraction(c) for c in reversed(factor.all_coeffs())]
            candidates = [
                _bisect_root(fc, _to_fraction(lo), _to_fraction(hi))
                for (lo, hi), _ in factor.intervals(inf=0)
            ]
        for r in candidates:
            if r > 0 and (best is None or r < best):
                best = r
    return best


@lru_cache(maxsize=65536)
def _pair_epsilon(diff: tuple) -> Fraction:
    root = _positive_root_lower_bound(diff)
    return Fraction(1) if root is None else min(Fraction(1), root / 2)


def epsilon_for(polys: Iterable[SlopePolynomial]) -> Fraction:
    """Largest certified epsilon0 <= 1 on which all pairwise comparisons are lex."""
    distinct = sorted({p.coeffs for p in polys})
    eps = Fraction(1)
    for a, b in itertools.combinations(distinct, 2):
        eps = min(eps, _pair_epsilon((SlopePolynomial(a) - SlopePolynomial(b)).coeffs))
    return eps


def epsilon0(lattice: SubobjectLattice) -> Fraction:
    """Positive epsilon0 such that on ``(0, epsilon0]`` every pair of node slope
    polynomials compares as it does lexicographically (1 if all are constant).

    Half the smallest positive crossing point over all pairs, found by exact
    real-root isolation.
    """
    return epsilon_for(lattice.poly(i) for i in lattice.ids)


# --- stability -----------------------------------------------------------------


def _value(lattice: SubobjectLattice, node: str, epsilon) -> Fraction:
    return lattice.poly(node)(epsilon)


def is_semistable(lattice: SubobjectLattice, node: str, epsilon=0) -> bool:
    """No subobject of ``node`` has larger slope at ``epsilon``."""
    epsilon = as_fraction(epsilon)
    mu = _value(lattice, node, epsilon)
    return all(_value(lattice, h, epsilon) <= mu for h in lattice.below(node))


def is_stable(lattice: SubobjectLattice, node: str, epsilon=0) -> bool:
    """Every subobject of smaller rank has strictly smaller slope at ``epsilon``."""
    epsilon = as_fraction(epsilon)
    mu = _value(lattice, node, epsilon)
    rank = lattice.rank(node)
    return all(
        _value(lattice, h, epsilon) < mu
        for h in lattice.below(node)
        if lattice.rank(h) < rank
    )


def mu_equivalent(lattice: SubobjectLattice, g: str, f: str) -> bool:
    return lattice.mu_equivalent(g, f)


# --- filtrations -----------------------------------------------------------------


@dataclass(frozen=True)
class FiltrationResult:
    chain: tuple  # G_1 < ... < G_k = F (zero omitted)
    slopes: tuple  # slope polynomial of each quotient G_i / G_{i-1}
    kind: str  # "HN" or "weakJH"
    epsilon0: Fraction | None  # certified range (0, epsilon0]; None for a fixed epsilon
    epsilon: Fraction | None = None  # the fixed epsilon, if one was requested

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "chain": list(self.chain),
            "slopes": [[fraction_str(c) for c in p.coeffs] for p in self.slopes],
            "epsilon0": None if self.epsilon0 is None else fraction_str(self.epsilon0),
            "epsilon": None if self.epsilon is None else fraction_str(self.epsilon),
        }


def _compare(a: SlopePolynomial, b: SlopePolynomial, epsilon) -> int:
    if epsilon is None:
        return a.lex_cmp(b)
    va, vb = a(epsilon), b(epsilon)
    return (va > vb) - (va < vb)


def max_destabilizer(lattice: SubobjectLattice, epsilon=None) -> str:
    """Maximal destabilizing node: largest slope, then largest rank, then smallest id.

    ``epsilon=None`` compares slopes for all sufficiently small epsilon > 0
    (lexicographically); a rational ``epsilon`` compares values there.
    Raises :class:`LatticeDiagnostic` if some node of the same slope is not
    contained in the winner.
    """
    if epsilon is not None:
        epsilon = as_fraction(epsilon)
    best = None
    for node in lattice.ids:
        if best is None:
            best = node
            continue
        c = _compare(lattice.poly(node), lattice.poly(best), epsilon)
        if c > 0 or (c == 0 and lattice.rank(node) > lattice.rank(best)):
            best = node
    for node in lattice.ids:
        if node != best and _compare(lattice.poly(node), lattice.poly(best), epsilon) >= 0:
            if not lattice.leq(node, best):
                raise LatticeDiagnostic(
                    f"input not HN-coherent: {node!r} has the maximal slope "
                    f"{lattice.poly(best)} but is not contained in {best!r}"
                )
    return best


def hn_filtration(lattice: SubobjectLattice, epsilon=None) -> FiltrationResult:
    """The unique Harder-Narasimhan filtration.

    Without ``epsilon`` the filtration is the one valid for every epsilon in
    the returned range ``(0, epsilon0]``; with a rational ``epsilon`` it is
    computed at that value (``epsilon=0`` gives the unperturbed filtration).
    """
    if epsilon is not None:
        epsilon = as_fraction(epsilon)
        if epsilon < 0:
            raise InvalidInputError("epsilon must be nonnegative")
    chain = []
    current = lattice
    eps0 = Fraction(1)
    while True:
        if epsilon is None:
            eps0 = min(eps0, epsilon0(current))
        g = max_destabilizer(current, epsilon)
        chain.append(g)
        if g == lattice.top:
            break
        current = current.quotient(g)
    slopes = []
    previous = None
    for g in chain:
        node = lattice.node(g)
        if previous is None:
            slopes.append(lattice.poly(g))
        else:
            prev = lattice.node(previous)
            slopes.append(SlopePolynomial(tuple(
                c / (node.rank - prev.rank)
                for c in lattice.pairing([x - y for x, y in zip(node.degrees, prev.degrees)])
            )))
        previous = g
    for k in range(1, len(slopes)):
        if _compare(slopes[k - 1], slopes[k], epsilon) <= 0:
            raise LatticeDiagnostic(
                f"input not HN-coherent: quotient slopes {slopes[k - 1]} and {slopes[k]} "
                f"do not decrease along {chain[k - 1]!r} < {chain[k]!r}"
            )
    if epsilon is None:
        eps0 = min(eps0, epsilon_for(slopes))
    return FiltrationResult(tuple(chain), tuple(slopes), "HN",
                            eps0 if epsilon is None else None, epsilon)


def weak_jh(lattice: SubobjectLattice) -> FiltrationResult:
    """Weak Jordan-Hoelder filtration at epsilon = 0 that is HN for small epsilon > 0."""
    if not is_semistable(lattice, lattice.top, 0):
        raise PreconditionError("the top is not semistable at epsilon = 0")
    result = hn_filtration(lattice)
    mu = lattice.poly(lattice.top).constant
    if any(p.constant != mu for p in result.slopes):
        raise LatticeDiagnostic(
            "input not HN-coherent: limit slopes of the small-epsilon filtration differ from mu(F)"
        )
    return FiltrationResult(result.chain, result.slopes, "weakJH", result.epsilon0)


# --- socle / cosocle -------------------------------------------------------------


def _join(lattice: SubobjectLattice, members: Iterable[str]) -> str:
    members = set(members)
    uppers = [u for u in lattice.ids if all(lattice.leq(m, u) for m in members)]
    least = [u for u in uppers if all(lattice.leq(u, v) for v in uppers)]
    if len(least) != 1:
        raise LatticeDiagnostic(
            f"lattice not closed under joins: no least upper bound of {sorted(members)}"
        )
    return least[0]


def socle(lattice: SubobjectLattice) -> str:
    """Join of the stable nodes of slope ``mu(F)`` (slopes at epsilon = 0)."""
    top = lattice.top
    if not is_semistable(lattice, top, 0):
        raise PreconditionError("the top is not semistable at epsilon = 0")
    mu = lattice.poly(top).constant
    stable = [
        g for g in lattice.ids
        if lattice.poly(g).constant == mu and is_stable(lattice, g, 0)
    ]
    return _join(lattice, stable)


def cosocle(lattice: SubobjectLattice) -> str:
    """Socle of the dual lattice: the id of the kernel ``K`` with ``F/K`` the cosocle.

    Returns ``"0"`` when the cosocle is ``F`` itself.
    """
    return socle(lattice.dual())


# --- random lattices ---------------------------------------------------------------


def random_modular_lattice(
    rng: random.Random,
    max_nodes: int = 20,
    n_coeffs: int = 2,
    degree_range: int = 2,
) -> SubobjectLattice:
    """Random lattice of a direct sum of filtered pieces.

    Each piece is a chain of subobjects with random rank and degree jumps;
    the lattice is the product of the chains, so ranks and degrees are
    modular and the Harder-Narasimhan filtration is well defined.
    """
    while True:
        lengths = [rng.randint(1, 4) for _ in range(rng.randint(1, 3))]
        size = 1
        for length in lengths:
            size *= length + 1
        if size - 1 <= max_nodes:
            break
    steps = [
        [(rng.randint(1, 2), [rng.randint(-degree_range, degree_range) for _ in range(n_coeffs)])
         for _ in range(length)]
        for length in lengths
    ]

    def cumulative(piece, upto):
        rank = sum(r for r, _ in steps[piece][:upto])
        degs = [sum(d[k] for _, d in steps[piece][:upto]) for k in range(n_coeffs)]
        return rank, degs

    nodes, edges = [], []
    positions = [p for p in itertools.product(*(range(length + 1) for length in lengths)) if any(p)]
    for pos in positions:
        rank, degs = 0, [0] * n_coeffs
        for piece, upto in enumerate(pos):
            r, d = cumulative(piece, upto)
            rank += r
            degs = [a + b for a, b in zip(degs, d)]
        nodes.append(Node("g" + "_".join(map(str, pos)), rank, tuple(degs)))
        for piece in range(len(pos)):
            if pos[piece] > 0:
                lower = list(pos)
                lower[piece] -= 1
                if any(lower):
                    edges.append(("g" + "_".join(map(str, lower)), "g" + "_".join(map(str, pos))))
    top = "g" + "_".join(map(str, lengths))
    return SubobjectLattice(nodes, edges, top)
