"""Intersection numbers and slopes on a product of irreducible factors.

The log cotangent bundle splits as ``Omega_1 + ... + Omega_s`` with
``rk(Omega_i) = n_i``.  Writing ``x_i = c_1(Omega_i)`` the only nonzero top
intersection is ``x_1^{n_1} ... x_s^{n_s}``, which we normalise to 1.  Every
first Chern class handled here lives in the span of the ``x_i``, so a class is
just its coefficient vector (a :class:`ChernVector`).

Factor indices are 1-based throughout (``iota = 1..s``), matching the
notation of the underlying geometry; JSON files use the same convention.

All arithmetic is exact (:class:`fractions.Fraction`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import factorial, prod
from typing import Iterable, Iterator, Mapping

from .errors import DataMissingError, InvalidInputError
from .rationals import as_fraction, fraction_str

FACTOR_TYPES = ("A", "B", "C")

Monomial = tuple  # exponent vector (e_1, ..., e_s)
Polynomial = Mapping  # Monomial -> Fraction


@dataclass(frozen=True)
class FactorProfile:
    """Ranks and types of the stable direct factors ``Omega_i``.

    ``c2_ratios`` maps a 1-based type-B factor index to the user supplied
    ratio ``c_2(Omega_i).(top classes) / c_1(Omega_i)^2.(top classes)``.
    """

    dims: tuple
    types: tuple
    c2_ratios: Mapping = field(default_factory=dict)

    def __post_init__(self):
        dims = tuple(self.dims)
        types = tuple(self.types)
        if not dims:
            raise InvalidInputError("a profile needs at least one factor")
        if any(not isinstance(d, int) or isinstance(d, bool) or d < 1 for d in dims):
            raise InvalidInputError(f"factor dimensions must be positive integers: {dims}")
        if len(types) != len(dims):
            raise InvalidInputError(f"{len(dims)} dims but {len(types)} types")
        for i, (d, t) in enumerate(zip(dims, types), start=1):
            if t not in FACTOR_TYPES:
                raise InvalidInputError(f"factor {i}: unknown type {t!r}")
            if (t == "A") != (d == 1):
                raise InvalidInputError(
                    f"factor {i}: type A holds exactly for rank-one factors (n={d}, type {t})"
                )
        ratios = {}
        for key, value in dict(self.c2_ratios).items():
            i = int(key)
            if not 1 <= i <= len(dims):
                raise InvalidInputError(f"c2 ratio given for unknown factor {key!r}")
            ratios[i] = as_fraction(value)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "types", types)
        object.__setattr__(self, "c2_ratios", ratios)

    @classmethod
    def single(cls, n: int, type_: str | None = None) -> "FactorProfile":
        """Profile with one factor of rank ``n`` (type A or B by default)."""
        return cls((n,), (type_ or ("A" if n == 1 else "B"),))

    @property
    def s(self) -> int:
        return len(self.dims)

    @property
    def n(self) -> int:
        """Total dimension."""
        return sum(self.dims)

    def dim(self, i: int) -> int:
        self.check_index(i)
        return self.dims[i - 1]

    def type_of(self, i: int) -> str:
        self.check_index(i)
        return self.types[i - 1]

    def check_index(self, i: int) -> None:
        if not isinstance(i, int) or not 1 <= i <= self.s:
            raise InvalidInputError(f"factor index {i!r} out of range 1..{self.s}")

    @cached_property
    def canonical_power(self) -> dict:
        """Expansion of ``c_1(omega)^(n-1) = (x_1 + ... + x_s)^(n-1)``.

        Monomials with ``e_i > n_i`` vanish in the Chow ring and are dropped.
        """
        return _truncated_canonical_power(self.dims)

    @cached_property
    def component_weights(self) -> tuple:
        """The binomial weights ``alpha_iota`` splitting the slope.

        Pairing ``c_1(F) = sum a_j x_j`` with ``(x_1+...+x_s)^(n-1)`` only
        picks up the monomial ``x^dims / x_j`` from the power, so
        ``c_1(F).c_1(omega)^(n-1) = sum_j alpha_j a_j`` where ``alpha_j`` is
        the multinomial coefficient of ``x^(dims - e_j)``:
        ``(n-1)! / ((n_j - 1)! prod_{k != j} n_k!)``.  Equivalently
        ``alpha_j`` is the scale turning the tuple ``(D_j^{n_j-1}, D_k^{n_k})``
        (whose pairing with ``c_1(F)`` is ``a_j``) into its share of the slope.
        """
        denominator = prod(factorial(d) for d in self.dims)
        return tuple(
            Fraction(factorial(self.n - 1) * d, denominator) for d in self.dims
        )

    def to_dict(self) -> dict:
        out = {"dims": list(self.dims), "types": list(self.types)}
        if self.c2_ratios:
            out["c2_ratios"] = {
                str(i): fraction_str(r) for i, r in sorted(self.c2_ratios.items())
            }
        return out

    @classmethod
    def from_dict(cls, data: Mapping) -> "FactorProfile":
        return cls(
            tuple(data["dims"]),
            tuple(data["types"]),
            {int(k): v for k, v in dict(data.get("c2_ratios") or {}).items()},
        )


@dataclass(frozen=True)
class ChernVector:
    """``c_1 = sum a_i c_1(Omega_i)`` stored as the coefficients ``a_i``."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(as_fraction(a) for a in self.coeffs))

    @classmethod
    def zero(cls, s: int) -> "ChernVector":
        return cls((0,) * s)

    @classmethod
    def basis(cls, s: int, i: int) -> "ChernVector":
        """The class ``c_1(Omega_i)`` (1-based ``i``)."""
        return cls(tuple(1 if j == i else 0 for j in range(1, s + 1)))

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def _same_length(self, other: "ChernVector") -> None:
        if len(self) != len(other):
            raise InvalidInputError(f"Chern vectors of lengths {len(self)} and {len(other)}")

    def __add__(self, other: "ChernVector") -> "ChernVector":
        self._same_length(other)
        return ChernVector(tuple(a + b for a, b in zip(self, other)))

    def __sub__(self, other: "ChernVector") -> "ChernVector":
        self._same_length(other)
        return ChernVector(tuple(a - b for a, b in zip(self, other)))

    def __neg__(self) -> "ChernVector":
        return ChernVector(tuple(-a for a in self))

    def __mul__(self, scalar) -> "ChernVector":
        scalar = as_fraction(scalar)
        return ChernVector(tuple(scalar * a for a in self))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_list(self) -> list:
        return [fraction_str(a) for a in self.coeffs]


@dataclass(frozen=True)
class SheafClass:
    """The pair (rank, c_1) that slopes depend on."""

    rank: int
    c1: ChernVector

    def __post_init__(self):
        if not isinstance(self.rank, int) or self.rank < 1:
            raise InvalidInputError(f"sheaf rank must be a positive integer, got {self.rank!r}")
        if not isinstance(self.c1, ChernVector):
            object.__setattr__(self, "c1", ChernVector(tuple(self.c1)))

    @classmethod
    def factor(cls, profile: FactorProfile, i: int) -> "SheafClass":
        """``Omega_i`` itself."""
        return cls(profile.dim(i), ChernVector.basis(profile.s, i))

    @classmethod
    def cotangent(cls, profile: FactorProfile) -> "SheafClass":
        """``Omega^1_Y(log S)``: rank n, c_1 = sum of all x_i."""
        return cls(profile.n, ChernVector((1,) * profile.s))

    @classmethod
    def log_canonical(cls, profile: FactorProfile) -> "SheafClass":
        """``omega_Y(S) = det Omega^1_Y(log S)``."""
        return cls(1, ChernVector((1,) * profile.s))


# --- polynomial plumbing ----------------------------------------------------


def _compositions(total: int, parts: int, bounds=None) -> Iterator[tuple]:
    cap = total if bounds is None else min(total, bounds[0])
    if parts == 1:
        if total <= cap:
            yield (total,)
        return
    rest_bounds = None if bounds is None else bounds[1:]
    for first in range(cap + 1):
        for rest in _compositions(total - first, parts - 1, rest_bounds):
            yield (first,) + rest


def linear_form_power(coeffs: Iterable, k: int, bounds=None) -> dict:
    """Multinomial expansion of ``(sum c_i x_i)^k`` as {exponents: coefficient}.

    With ``bounds``, only monomials with ``e_i <= bounds[i]`` are kept
    (expansion in the truncated ring ``Q[x] / (x_i^(bounds[i] + 1))``).
    """
    coeffs = [as_fraction(c) for c in coeffs]
    if k < 0:
        raise InvalidInputError("negative power")
    out = {}
    for exps in _compositions(k, len(coeffs), bounds):
        multinomial = factorial(k) // prod(factorial(e) for e in exps)
        term = Fraction(multinomial) * prod(
            (c**e for c, e in zip(coeffs, exps)), start=Fraction(1)
        )
        if term:
            out[exps] = term
    return out


def poly_multiply(p: Polynomial, q: Polynomial, bounds=None) -> dict:
    out: dict = {}
    for ea, ca in p.items():
        for eb, cb in q.items():
            e = tuple(a + b for a, b in zip(ea, eb))
            if bounds is not None and any(x > b for x, b in zip(e, bounds)):
                continue
            out[e] = out.get(e, Fraction(0)) + as_fraction(ca) * as_fraction(cb)
    return {e: c for e, c in out.items() if c}


@lru_cache(maxsize=256)
def _truncated_canonical_power(dims: tuple) -> dict:
    return linear_form_power([1] * len(dims), sum(dims) - 1, dims)


def linear_form(coeffs: Iterable) -> dict:
    """The degree-one polynomial ``sum c_i x_i``."""
    coeffs = list(coeffs)
    s = len(coeffs)
    return {
        tuple(1 if j == i else 0 for j in range(s)): as_fraction(c)
        for i, c in enumerate(coeffs)
        if as_fraction(c)
    }


# --- operations ---------------------------------------------------------------


def top_intersection(profile: FactorProfile, exponents) -> Fraction:
    """``x_1^{e_1} ... x_s^{e_s}`` under the normalisation ``x^dims = 1``.

    Zero unless the exponents equal the factor dimensions; in particular
    ``x_i^{n_i + 1} = 0``.
    """
    exponents = tuple(exponents)
    if len(exponents) != profile.s:
        raise InvalidInputError(f"expected {profile.s} exponents, got {len(exponents)}")
    if any(not isinstance(e, int) or e < 0 for e in exponents):
        raise InvalidInputError(f"exponents must be nonnegative integers: {exponents}")
    if sum(exponents) != profile.n:
        raise InvalidInputError(
            f"degree {sum(exponents)} does not match dimension {profile.n}"
        )
    return Fraction(1) if exponents == profile.dims else Fraction(0)


def evaluate_monomial_sum(profile: FactorProfile, polynomial: Polynomial) -> Fraction:
    """Linear extension of :func:`top_intersection` to a homogeneous polynomial."""
    total = Fraction(0)
    for exps, coeff in polynomial.items():
        exps = tuple(exps)
        if sum(exps) != profile.n:
            raise InvalidInputError(
                f"polynomial is not homogeneous of degree {profile.n}: monomial {exps}"
            )
        total += as_fraction(coeff) * top_intersection(profile, exps)
    return total


def degree(profile: FactorProfile, c1: ChernVector) -> Fraction:
    """``c_1 . c_1(omega)^(n-1)``, by expanding the product."""
    if len(c1) != profile.s:
        raise InvalidInputError(f"Chern vector has length {len(c1)}, profile has {profile.s} factors")
    return evaluate_monomial_sum(
        profile, poly_multiply(linear_form(c1), profile.canonical_power, profile.dims)
    )


def slope(profile: FactorProfile, f: SheafClass) -> Fraction:
    """``mu(F) = c_1(F).c_1(omega)^(n-1) / rk(F)``."""
    return degree(profile, f.c1) / f.rank


def component_slope(profile: FactorProfile, f: SheafClass, iota: int) -> Fraction:
    """The share of ``mu(F)`` seen by the ``iota``-th semi-polarization.

    Equal to ``alpha_iota * a_iota / rk(F)``; summing over ``iota`` gives
    :func:`slope` exactly.
    """
    profile.check_index(iota)
    if len(f.c1) != profile.s:
        raise InvalidInputError(f"Chern vector has length {len(f.c1)}, profile has {profile.s} factors")
    return profile.component_weights[iota - 1] * f.c1[iota - 1] / f.rank


def perturbed_slope(profile: FactorProfile, f: SheafClass, iota: int, epsilon) -> Fraction:
    """``mu(F) + epsilon * component_slope(F, iota)``."""
    return slope(profile, f) + as_fraction(epsilon) * component_slope(profile, f, iota)


def yau_ball_test(profile: FactorProfile, i: int) -> bool:
    """Chern number equality ``2 (n_i + 1) c_2 = n_i c_1^2`` for a type-B factor."""
    if profile.type_of(i) != "B":
        raise InvalidInputError(f"factor {i} has type {profile.type_of(i)}, not B")
    if i not in profile.c2_ratios:
        raise DataMissingError(f"no c2 ratio supplied for factor {i}")
    n_i = profile.dim(i)
    return 2 * (n_i + 1) * profile.c2_ratios[i] == n_i
