"""Admissible weight-one representations, SU(1,n) wedge families and the
combinatorics (Schur functors, a Diophantine length equation) used to rule
candidates in or out.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .chow_calculus import ChernVector, FactorProfile
from .errors import InvalidInputError
from .higgs_model import HiggsData, HodgePiece, length_bound, theta_injectivity_obstruction

FAMILIES = ("a", "b", "c", "d_fork", "d_end")

# Orderings of a wedge entry's Hodge pair:
#   "weight-space": the j-th exterior power sits in W^{1,0}  -> (C(p,j), C(p,j-1))
#   "wedge-target": SU(1,n) -> SU(C(n,k-1), C(n,k))          -> (C(n,k-1), C(n,k))
CONVENTIONS = ("weight-space", "wedge-target")


@dataclass(frozen=True)
class DomainFactor:
    family: str
    n: int
    q: int | None = None  # second parameter of a(p, q); there n plays p

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidInputError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        for name, value in (("n", self.n), ("q", self.q)):
            if value is not None and (not isinstance(value, int) or isinstance(value, bool)):
                raise InvalidInputError(f"{name} must be an integer")
        if self.family == "a":
            if self.q is None or not self.n >= self.q >= 1:
                raise InvalidInputError("a(p, q) needs p >= q >= 1")
        else:
            if self.q is not None:
                raise InvalidInputError(f"family {self.family} takes a single parameter")
            lowest = {"b": 2, "c": 1, "d_fork": 4, "d_end": 4}[self.family]
            if self.n < lowest:
                raise InvalidInputError(f"{self.family}(n) needs n >= {lowest}")

    @classmethod
    def a(cls, p: int, q: int) -> "DomainFactor":
        return cls("a", p, q)

    def __str__(self) -> str:
        if self.family == "a":
            return f"a({self.n},{self.q})"
        return f"{self.family}({self.n})"


@dataclass(frozen=True)
class RepEntry:
    label: str
    hodge: tuple
    predicted_length: int | None = None
    convention: str = "weight-space"
    derived: bool = False  # True when the numbers come from general theory only

    def __post_init__(self):
        l, lp = self.hodge
        if l < 1 or lp < 1:
            raise InvalidInputError(f"Hodge numbers must be positive: {self.hodge}")
        if self.convention not in CONVENTIONS:
            raise InvalidInputError(f"unknown convention {self.convention!r}")
        if self.predicted_length is not None and not 1 <= self.predicted_length <= min(l, lp):
            raise InvalidInputError(
                f"predicted length {self.predicted_length} outside 1..min(l, l')"
            )

    def swapped(self) -> "RepEntry":
        """The same entry written in the other ordering convention."""
        other = CONVENTIONS[1 - CONVENTIONS.index(self.convention)]
        return RepEntry(self.label, self.hodge[::-1], self.predicted_length, other, self.derived)


@dataclass(frozen=True)
class Partition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(self.parts)
        if any(not isinstance(p, int) or p < 1 for p in parts):
            raise InvalidInputError(f"partition parts must be positive integers: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise InvalidInputError(f"partition parts must weakly decrease: {parts}")
        object.__setattr__(self, "parts", parts)

    def __len__(self):
        return len(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


# --- Deligne-Satake catalogue ---------------------------------------------------


def spin_weight_spaces(n: int) -> tuple:
    """Split the spin basis ``f_J`` (J a subset of 1..n) by whether n is in J."""
    if not isinstance(n, int) or n < 2:
        raise InvalidInputError("spin_weight_spaces needs n >= 2")
    without = with_n = 0
    for r in range(n + 1):
        for subset in itertools.combinations(range(1, n + 1), r):
            if n in subset:
                with_n += 1
            else:
                without += 1
    return (without, with_n)


def admissible_reps(factor: DomainFactor) -> list:
    fam, n = factor.family, factor.n
    if fam == "a":
        if factor.q > 1:
            return [RepEntry(f"{factor}:standard", (n, factor.q))]
        return [RepEntry(f"{factor}:wedge^{j}", (comb(n, j), comb(n, j - 1))) for j in range(1, n + 1)]
    if fam == "b":
        return [RepEntry(f"{factor}:spin", (2 ** (n - 1), 2 ** (n - 1)))]
    if fam == "c":
        return [RepEntry(f"{factor}:standard", (n, n))]
    if fam == "d_fork":
        return [RepEntry(f"{factor}:standard", (n, n))]
    # half-spin weight spaces: standard dimension, not read off from the classification
    return [RepEntry(f"{factor}:half-spin", (2 ** (n - 2), 2 ** (n - 2)), derived=True)]


def su1n_wedge_entry(n: int, k: int) -> tuple:
    """Entry and Higgs data of the k-th wedge of the standard SU(1,n) representation.

    The Higgs data lives on the single-factor profile of dimension n and is
    normalised so that the Arakelov equality holds.
    """
    if not isinstance(n, int) or n < 1:
        raise InvalidInputError("n must be a positive integer")
    if not isinstance(k, int) or not 1 <= k <= n:
        raise InvalidInputError(f"k must lie in 1..{n}, got {k!r}")
    l, lp = comb(n, k - 1), comb(n, k)
    predicted = comb(n - 1, k - 1)
    if length_bound(l, lp, n) != predicted:  # pragma: no cover - identity check
        raise AssertionError("wedge length identity failed")
    entry = RepEntry(f"su(1,{n}):wedge^{k}", (l, lp), predicted, convention="wedge-target")
    # mu(E10) - mu(E01) = mu(Omega) with c1(E10) = -c1(E01) = a x gives a = l l' / (n (l + l'))
    a = Fraction(l * lp, n * (l + lp))
    data = HiggsData(
        HodgePiece(l, ChernVector((a,))),
        HodgePiece(lp, ChernVector((-a,))),
        frozenset({1}),
        label=entry.label,
        observed_length=predicted,
    )
    return entry, data


def standard_ball_higgs(n: int) -> HiggsData:
    """Uniformising Higgs bundle ``Omega(-1/(n+1)) + O(-1/(n+1))`` on an n-ball quotient."""
    if not isinstance(n, int) or n < 1:
        raise InvalidInputError("n must be a positive integer")
    c = Fraction(1, n + 1)
    return HiggsData(
        HodgePiece(n, ChernVector((c,))),
        HodgePiece(1, ChernVector((-c,))),
        frozenset({1}),
        label=f"ball({n})",
        observed_length=1,
    )


def ball_profile(n: int) -> FactorProfile:
    return FactorProfile.single(n)


# --- Schur functors ----------------------------------------------------------------


def schur_dim(partition, d: int) -> int:
    """dim S_lambda(C^d) by the hook-content formula."""
    lam = partition if isinstance(partition, Partition) else Partition(tuple(partition))
    if not isinstance(d, int) or d < 1:
        raise InvalidInputError("d must be a positive integer")
    if len(lam) > d:
        return 0
    conj = lam.conjugate().parts
    num = den = 1
    for i, row in enumerate(lam.parts):
        for j in range(row):
            num *= d + j - i
            den *= (row - j - 1) + (conj[j] - i - 1) + 1
    return num // den


def cauchy_wedge(r: int, n: int) -> list:
    """Summands of ``wedge^r (V tensor T)`` with dim V = 2, dim T = n.

    ``wedge^r(V x T) = sum over lambda |- r of S_lambda V x S_lambda' T``,
    lambda' the conjugate; only lambda with <= 2 rows and <= n columns survive.
    """
    if not isinstance(n, int) or n < 1:
        raise InvalidInputError("n must be a positive integer")
    if not isinstance(r, int) or not 0 <= r <= 2 * n:
        raise InvalidInputError(f"r must lie in 0..{2 * n}")
    out = []
    for second in range(0, r // 2 + 1):
        first = r - second
        if first > n:
            continue
        lam = Partition(tuple(p for p in (first, second) if p))
        out.append((lam, lam.conjugate()))
    return out


# --- length equation -------------------------------------------------------------------


@dataclass(frozen=True)
class LinearFamily:
    """Infinite solution family ``l' = slope * n`` (every n >= 1)."""

    slope: int

    def lp(self, n: int) -> int:
        return self.slope * n

    def sample(self, up_to: int) -> list:
        return [(self.slope * n, n) for n in range(1, up_to + 1)]


def diophantine_solutions(l: int, sigma: int):
    """Positive integer pairs (l', n) with ``sigma = l l' (n+1) / ((l + l') n)``.

    Solving for l' gives ``l' = sigma l n / (d n + l)`` with ``d = l - sigma``.
    If d = 0 this is the family l' = l n (returned as :class:`LinearFamily`).
    If d >= 1, note ``(dn + l) | sigma l n`` and
    ``d * sigma l n = sigma l (dn + l) - sigma l^2``, so ``(dn + l) | sigma l^2``;
    hence ``dn + l <= sigma l^2`` and ``n <= (sigma l^2 - l) / d``: a finite scan.
    """
    if not isinstance(l, int) or l < 1:
        raise InvalidInputError("l must be a positive integer")
    if not isinstance(sigma, int) or not 1 <= sigma <= l:
        raise InvalidInputError(f"sigma must lie in 1..{l}")
    d = l - sigma
    if d == 0:
        return LinearFamily(l)
    out = []
    for n in range(1, (sigma * l * l - l) // d + 1):
        num, den = sigma * l * n, d * n + l
        if num % den == 0:
            out.append((num // den, n))
    return out


# --- low-rank verdicts -------------------------------------------------------------------


class Verdict(str, enum.Enum):
    FORCED = "forced"
    OPEN = "open"
    NOT_COVERED = "not-covered"


def low_rank_verdict(l: int, lp: int, n: int) -> Verdict:
    """Whether the length condition is forced for Hodge numbers (l, l') over an n-ball."""
    for name, v in (("l", l), ("l'", lp), ("n", n)):
        if not isinstance(v, int) or v < 1:
            raise InvalidInputError(f"{name} must be a positive integer")
    if l > lp:
        l, lp = lp, l
    if n == 2 and l == 3 and lp == 5:
        return Verdict.OPEN
    if n == 1 or lp == n * l or (n >= 3 and l <= 3) or (n == 2 and l <= 3):
        return Verdict.FORCED
    return Verdict.NOT_COVERED


def length_condition_status(l: int, lp: int, n: int) -> str:
    """Plain outcome of the numerical test: "integral", "non-integral" or "obstructed"."""
    bound = length_bound(l, lp, n)
    if bound.denominator != 1 or bound > min(l, lp):
        return "non-integral"
    top = int(bound)
    if any(theta_injectivity_obstruction(l, lp, n, m) for m in range(1, top + 1)):
        return "obstructed"
    return "integral"


def low_rank_table(max_l: int, max_n: int, max_lp: int | None = None) -> list:
    """Rows (l, l', n, bound, verdict) for l <= l' <= max_lp, l <= max_l, n <= max_n."""
    max_lp = max_n if max_lp is None else max_lp
    rows = []
    for l in range(1, max_l + 1):
        for lp in range(l, max_lp + 1):
            for n in range(1, max_n + 1):
                rows.append((l, lp, n, length_bound(l, lp, n), low_rank_verdict(l, lp, n)))
    return rows
