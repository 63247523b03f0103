"""Rank/degree shadow of weight-one Higgs bundles and their certification.

A summand ``(E = E^{1,0} + E^{0,1}, theta)`` is recorded by the ranks and
first Chern classes of its two Hodge pieces plus the set of factors on
which the Higgs field is nonzero.  Every test on Arakelov equality,
purity and the length of the iterated Higgs field only needs this data.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

from .chow_calculus import ChernVector, FactorProfile, SheafClass, slope
from .errors import InvalidInputError, NotApplicableError, PreconditionError
from .rationals import fraction_str


@dataclass(frozen=True)
class HodgePiece:
    rank: int
    c1: ChernVector

    def __post_init__(self):
        if not isinstance(self.rank, int) or isinstance(self.rank, bool) or self.rank < 0:
            raise InvalidInputError(f"Hodge piece rank must be a nonnegative integer: {self.rank!r}")
        if not isinstance(self.c1, ChernVector):
            object.__setattr__(self, "c1", ChernVector(tuple(self.c1)))
        if self.rank == 0 and not self.c1.is_zero():
            raise InvalidInputError("a rank-zero Hodge piece must have c1 = 0")

    def sheaf(self) -> SheafClass:
        if self.rank == 0:
            raise InvalidInputError("slope of a zero-rank Hodge piece is undefined")
        return SheafClass(self.rank, self.c1)


@dataclass(frozen=True)
class HiggsData:
    """One irreducible weight-one summand.

    ``support`` holds the (1-based) factors ``i`` with ``theta_i != 0``.
    ``observed_length`` is the measured length of the iterated Higgs field on
    ``det E^{1,0}``, when known.
    """

    p10: HodgePiece
    p01: HodgePiece
    support: frozenset = frozenset()
    unitary: bool = False
    observed_length: int | None = None
    label: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "support", frozenset(self.support))
        if len(self.p10.c1) != len(self.p01.c1):
            raise InvalidInputError("E^{1,0} and E^{0,1} Chern vectors differ in length")
        if not (self.p10.c1 + self.p01.c1).is_zero():
            raise InvalidInputError(
                "invariant c1-sum violated: c1(E^{1,0}) + c1(E^{0,1}) must vanish"
            )
        if self.unitary != (not self.support):
            raise InvalidInputError(
                "invariant unitary-support violated: unitary exactly when the support is empty"
            )
        if self.observed_length is not None and (
            not isinstance(self.observed_length, int) or self.observed_length < 0
        ):
            raise InvalidInputError(f"observed length must be a nonnegative integer: {self.observed_length!r}")

    @property
    def hodge_numbers(self) -> tuple:
        return (self.p10.rank, self.p01.rank)

    def scaled(self, factor) -> "HiggsData":
        """Same data with every Chern vector multiplied by ``factor``."""
        return HiggsData(
            HodgePiece(self.p10.rank, self.p10.c1 * factor),
            HodgePiece(self.p01.rank, self.p01.c1 * factor),
            self.support,
            self.unitary,
            self.observed_length,
            self.label,
        )

    def to_dict(self) -> dict:
        out = {
            "p10": {"rank": self.p10.rank, "c1": self.p10.c1.to_list()},
            "p01": {"rank": self.p01.rank, "c1": self.p01.c1.to_list()},
            "support": sorted(self.support),
            "unitary": self.unitary,
        }
        if self.observed_length is not None:
            out["observed_length"] = self.observed_length
        if self.label is not None:
            out["label"] = self.label
        return out

    @classmethod
    def from_dict(cls, data: Mapping) -> "HiggsData":
        return cls(
            HodgePiece(data["p10"]["rank"], ChernVector(tuple(data["p10"]["c1"]))),
            HodgePiece(data["p01"]["rank"], ChernVector(tuple(data["p01"]["c1"]))),
            frozenset(data.get("support", ())),
            bool(data.get("unitary", False)),
            data.get("observed_length"),
            data.get("label"),
        )


def _check_compatible(profile: FactorProfile, v: HiggsData) -> None:
    if len(v.p10.c1) != profile.s:
        raise InvalidInputError(
            f"Chern vectors have length {len(v.p10.c1)}, profile has {profile.s} factors"
        )
    for i in v.support:
        profile.check_index(i)


def _pieces_for_slopes(profile: FactorProfile, v: HiggsData):
    _check_compatible(profile, v)
    if v.unitary:
        raise NotApplicableError("the Arakelov defect is not defined for a unitary summand")
    if v.p10.rank < 1 or v.p01.rank < 1:
        raise InvalidInputError("both Hodge pieces need positive rank")
    return v.p10.sheaf(), v.p01.sheaf()


def arakelov_defect(profile: FactorProfile, v: HiggsData) -> Fraction:
    """``mu(Omega^1) - (mu(E^{1,0}) - mu(E^{0,1}))``; zero is the Arakelov equality."""
    e10, e01 = _pieces_for_slopes(profile, v)
    mu_omega = slope(profile, SheafClass.cotangent(profile))
    return mu_omega - (slope(profile, e10) - slope(profile, e01))


def restated_equality(profile: FactorProfile, v: HiggsData, iota: int) -> bool:
    """``(l + l') / l' * mu(E^{1,0}) == mu(Omega_iota)``."""
    e10, _ = _pieces_for_slopes(profile, v)
    l, lp = v.hodge_numbers
    return Fraction(l + lp, lp) * slope(profile, e10) == slope(
        profile, SheafClass.factor(profile, iota)
    )


class PurityDiagnostic(str, enum.Enum):
    UNITARY = "unitary"
    VIOLATES_PURITY = "violates purity theorem"
    NOT_FORCED = "equality fails, purity not forced"


def purity_check(profile: FactorProfile, v: HiggsData) -> int | PurityDiagnostic:
    """Purity index of a summand with Arakelov equality, else a diagnostic."""
    if v.unitary:
        return PurityDiagnostic.UNITARY
    if arakelov_defect(profile, v) != 0:
        return PurityDiagnostic.NOT_FORCED
    if len(v.support) != 1:
        return PurityDiagnostic.VIOLATES_PURITY
    (index,) = v.support
    return index


@dataclass(frozen=True)
class WedgeRow:
    m: int
    rank: int  # rk E^{l-m,m} = C(l, l-m) C(l', m)
    det_rank: int  # rk <det E^{1,0}>^{l-m,m} = C(n_iota + m - 1, m)
    slope: Fraction  # mu(E^{l-m,m})


@dataclass(frozen=True)
class WedgeTable:
    l: int
    lp: int
    n: int
    rows: tuple
    step: Fraction  # mu(Omega^1), the drop in slope from m to m + 1

    def as_rows(self) -> list:
        return [(r.m, r.rank, r.det_rank, fraction_str(r.slope)) for r in self.rows]


def wedge_table(profile: FactorProfile, v: HiggsData, iota: int | None = None) -> WedgeTable:
    """Ranks and slopes of the pieces of the ``l``-th wedge Higgs bundle."""
    defect = arakelov_defect(profile, v)
    if defect != 0:
        raise PreconditionError(f"Arakelov equality fails (defect {defect})")
    if iota is None:
        index = purity_check(profile, v)
        if not isinstance(index, int):
            raise PreconditionError(f"no purity index: {index.value}")
        iota = index
    profile.check_index(iota)
    l, lp = v.hodge_numbers
    n = profile.dim(iota)
    mu10 = slope(profile, v.p10.sheaf())
    mu01 = slope(profile, v.p01.sheaf())
    rows = tuple(
        WedgeRow(
            m,
            comb(l, l - m) * comb(lp, m),
            comb(n + m - 1, m),
            (l - m) * mu10 + m * mu01,
        )
        for m in range(min(l, lp) + 1)
    )
    return WedgeTable(l, lp, n, rows, slope(profile, SheafClass.cotangent(profile)))


def _positive_ints(**kwargs) -> None:
    for name, value in kwargs.items():
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise InvalidInputError(f"{name} must be a positive integer, got {value!r}")


def length_bound(l: int, lp: int, n: int) -> Fraction:
    """``l l' (n+1) / ((l + l') n)``, the minimal possible length."""
    _positive_ints(l=l, lp=lp, n=n)
    return Fraction(l * lp * (n + 1), (l + lp) * n)


def degree_sum(l: int, lp: int, n: int, sigma: int) -> Fraction:
    """Normalised degree of ``<det E^{1,0}>`` if it had length ``sigma``.

    ``sum_{m=0}^{sigma} C(n+m-1, m) (l l' / (l + l') - m)``, i.e. the degree
    divided by ``mu(Omega^1)``.
    """
    _positive_ints(l=l, lp=lp, n=n)
    if not isinstance(sigma, int) or not 0 <= sigma <= min(l, lp):
        raise InvalidInputError(f"sigma must lie in 0..{min(l, lp)}, got {sigma!r}")
    centre = Fraction(l * lp, l + lp)
    return sum((comb(n + m - 1, m) * (centre - m) for m in range(sigma + 1)), Fraction(0))


def degree_sum_closed_form(l: int, lp: int, n: int, sigma: int) -> Fraction:
    """Closed form of :func:`degree_sum`."""
    _positive_ints(l=l, lp=lp, n=n)
    return (
        (Fraction(l * lp, n * (l + lp)) - Fraction(sigma, n + 1))
        * (sigma + 1)
        * comb(sigma + n, sigma + 1)
    )


def theta_injectivity_obstruction(l: int, lp: int, n: int, m: int) -> bool:
    """True when ``S^m(T) (x) det E^{1,0}`` cannot inject into ``E^{l-m,m}``.

    That is ``C(n+m-1, m) > C(l, m) C(l', m)``.
    """
    _positive_ints(l=l, lp=lp, n=n)
    if not isinstance(m, int) or not 1 <= m <= min(l, lp):
        raise InvalidInputError(f"m must lie in 1..{min(l, lp)}, got {m!r}")
    return comb(n + m - 1, m) > comb(l, m) * comb(lp, m)


# --- certification ------------------------------------------------------------


@dataclass
class SummandVerdict:
    index: int
    label: str | None
    hodge_numbers: tuple
    unitary: bool
    arakelov_defect: Fraction | None = None  # None: not applicable (unitary)
    purity_index: int | None = None
    purity_type: str | None = None
    condition1: bool = False
    condition2: bool | None = None  # None: not evaluated (see diagnostics)
    condition2_applies: bool = False
    length_bound: Fraction | None = None
    observed_length: int | None = None
    obstructed_at: tuple = ()
    notes: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.condition1 and bool(self.condition2) and not self.diagnostics

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "label": self.label,
            "hodge_numbers": list(self.hodge_numbers),
            "unitary": self.unitary,
            "arakelov_defect": None if self.arakelov_defect is None else fraction_str(self.arakelov_defect),
            "purity_index": self.purity_index,
            "purity_type": self.purity_type,
            "condition1": self.condition1,
            "condition2": self.condition2,
            "condition2_applies": self.condition2_applies,
            "length_bound": None if self.length_bound is None else fraction_str(self.length_bound),
            "observed_length": self.observed_length,
            "obstructed_at": list(self.obstructed_at),
            "notes": list(self.notes),
            "diagnostics": list(self.diagnostics),
            "passed": self.passed,
        }


@dataclass
class Certificate:
    summands: list

    @property
    def condition1(self) -> bool:
        return all(s.condition1 for s in self.summands)

    @property
    def condition2(self) -> bool:
        # summands where condition 2 was never evaluated do not count as failures here
        return not any(s.condition2 is False for s in self.summands)

    @property
    def diagnostics(self) -> list:
        return [f"summand {s.index}: {d}" for s in self.summands for d in s.diagnostics]

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.summands)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "condition1": self.condition1,
            "condition2": self.condition2,
            "diagnostics": self.diagnostics,
            "summands": [s.to_dict() for s in self.summands],
        }


def _condition2(profile: FactorProfile, v: HiggsData, iota: int, verdict: SummandVerdict) -> None:
    l, lp = v.hodge_numbers
    n = profile.dim(iota)
    bound = length_bound(l, lp, n)
    verdict.length_bound = bound
    verdict.condition2_applies = True
    ok = True
    if bound.denominator != 1:
        verdict.notes.append(f"length bound {fraction_str(bound)} is not an integer")
        ok = False
    if bound > min(l, lp):
        verdict.notes.append(
            f"length bound {fraction_str(bound)} exceeds min(l, l') = {min(l, lp)}"
        )
        ok = False
    top = min(int(bound), min(l, lp))
    verdict.obstructed_at = tuple(
        m for m in range(1, top + 1) if theta_injectivity_obstruction(l, lp, n, m)
    )
    if verdict.obstructed_at:
        m = verdict.obstructed_at[0]
        verdict.notes.append(
            f"rank obstruction at m={m}: C(n+m-1,m)={comb(n + m - 1, m)} > "
            f"C(l,m)C(l',m)={comb(l, m) * comb(lp, m)}"
        )
        ok = False
    if v.observed_length is not None and v.observed_length != bound:
        verdict.notes.append(
            f"observed length {v.observed_length} differs from bound {fraction_str(bound)}"
        )
        ok = False
    verdict.condition2 = ok


def certify_summand(profile: FactorProfile, v: HiggsData, index: int = 1) -> SummandVerdict:
    verdict = SummandVerdict(
        index, v.label, v.hodge_numbers, v.unitary, observed_length=v.observed_length
    )
    try:
        _check_compatible(profile, v)
    except InvalidInputError as exc:
        verdict.diagnostics.append(str(exc))
        return verdict
    if v.observed_length is not None and v.observed_length > min(v.hodge_numbers):
        verdict.diagnostics.append(
            f"observed length {v.observed_length} exceeds min(l, l') = {min(v.hodge_numbers)}"
        )
    if v.unitary:
        verdict.condition1 = True
        verdict.condition2 = True
        verdict.notes.append("unitary: both conditions hold trivially")
        return verdict
    try:
        verdict.arakelov_defect = arakelov_defect(profile, v)
    except InvalidInputError as exc:
        verdict.diagnostics.append(str(exc))
        return verdict
    verdict.condition1 = verdict.arakelov_defect == 0
    purity = purity_check(profile, v)
    if purity is PurityDiagnostic.NOT_FORCED:
        verdict.notes.append(f"Arakelov defect {fraction_str(verdict.arakelov_defect)} > 0")
        verdict.condition2 = None
        if verdict.arakelov_defect < 0:
            verdict.diagnostics.append("negative Arakelov defect violates the Arakelov inequality")
        return verdict
    if purity is PurityDiagnostic.VIOLATES_PURITY:
        verdict.diagnostics.append(
            f"{purity.value}: Arakelov equality with support {sorted(v.support)}"
        )
        return verdict
    verdict.purity_index = purity
    verdict.purity_type = profile.type_of(purity)
    if verdict.purity_type == "B":
        _condition2(profile, v, purity, verdict)
    else:
        verdict.condition2 = True
        verdict.notes.append(f"pure of type {verdict.purity_type}: condition 2 holds vacuously")
    return verdict


def certify(profile: FactorProfile, summands: Sequence[HiggsData]) -> Certificate:
    """Check both conditions of the characterisation for every summand."""
    return Certificate(
        [certify_summand(profile, v, k) for k, v in enumerate(summands, start=1)]
    )
