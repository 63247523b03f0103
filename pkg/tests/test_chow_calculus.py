from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kuga_cert.chow_calculus import (
    ChernVector,
    FactorProfile,
    SheafClass,
    component_slope,
    evaluate_monomial_sum,
    linear_form_power,
    perturbed_slope,
    slope,
    top_intersection,
    yau_ball_test,
)
from kuga_cert.errors import DataMissingError, InvalidInputError

from oracles import sympy_slope

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def profiles(draw, max_s=4, max_n=8):
    s = draw(st.integers(1, max_s))
    dims = []
    for _ in range(s):
        room = max_n - sum(dims) - (s - len(dims) - 1)
        dims.append(draw(st.integers(1, max(1, min(4, room)))))
    types = tuple("A" if d == 1 else draw(st.sampled_from("BC")) for d in dims)
    return FactorProfile(tuple(dims), types)


@st.composite
def profile_and_sheaf(draw):
    p = draw(profiles())
    c1 = ChernVector(tuple(draw(rationals) for _ in range(p.s)))
    return p, SheafClass(draw(st.integers(1, 6)), c1)


# --- profile --------------------------------------------------------------------


def test_profile_type_a_iff_rank_one():
    FactorProfile((1, 2), ("A", "B"))
    with pytest.raises(InvalidInputError, match="type A"):
        FactorProfile((2,), ("A",))
    with pytest.raises(InvalidInputError, match="type A"):
        FactorProfile((1,), ("B",))


@pytest.mark.parametrize(
    "dims,types",
    [((), ()), ((0,), ("B",)), ((2,), ("B", "C")), ((2,), ("X",))],
)
def test_profile_rejects(dims, types):
    with pytest.raises(InvalidInputError):
        FactorProfile(dims, types)


def test_profile_round_trip():
    p = FactorProfile((2, 1, 3), ("B", "A", "C"), {1: "1/3"})
    assert FactorProfile.from_dict(p.to_dict()) == p
    assert p.n == 6 and p.s == 3


def test_c2_ratio_for_unknown_factor():
    with pytest.raises(InvalidInputError):
        FactorProfile((2,), ("B",), {2: "1/3"})


# --- top_intersection / evaluate_monomial_sum -----------------------------------------


def test_top_intersection_values():
    p = FactorProfile((2, 3), ("B", "B"))
    assert top_intersection(p, (2, 3)) == 1
    assert top_intersection(p, (3, 2)) == 0
    q = FactorProfile((1, 1), ("A", "A"))
    assert top_intersection(q, (1, 1)) == 1
    assert top_intersection(q, (2, 0)) == 0


def test_top_intersection_degree_mismatch():
    with pytest.raises(InvalidInputError, match="degree"):
        top_intersection(FactorProfile((2, 3), ("B", "B")), (2, 2))


@given(profiles(max_s=3, max_n=6))
def test_top_intersection_supported_on_dims_only(p):
    from itertools import product

    nonzero = [
        e for e in product(range(p.n + 1), repeat=p.s)
        if sum(e) == p.n and top_intersection(p, e) != 0
    ]
    assert nonzero == [p.dims]


def test_evaluate_monomial_sum_examples():
    q = FactorProfile((1, 1), ("A", "A"))
    assert evaluate_monomial_sum(q, linear_form_power([1, 1], 2)) == 2
    assert evaluate_monomial_sum(FactorProfile.single(2), {(2,): 1}) == 1
    p = FactorProfile((1, 2), ("A", "B"))
    assert evaluate_monomial_sum(p, linear_form_power([1, 1], 3)) == 3


def test_evaluate_monomial_sum_rejects_inhomogeneous():
    with pytest.raises(InvalidInputError, match="homogeneous"):
        evaluate_monomial_sum(FactorProfile.single(2), {(2,): 1, (1,): 1})


# --- slopes ---------------------------------------------------------------------------


def test_slope_of_single_factor():
    # under x^n = 1 the tangent factor of a surface has c1.c1(omega) = 1, rank 2
    p = FactorProfile.single(2)
    assert slope(p, SheafClass.factor(p, 1)) == Fraction(1, 2)
    assert sympy_slope((2,), 2, (1,)) == Fraction(1, 2)


@pytest.mark.parametrize("n", range(1, 7))
def test_canonical_slope_is_n_times_cotangent(n):
    p = FactorProfile.single(n)
    assert slope(p, SheafClass.log_canonical(p)) == n * slope(p, SheafClass.cotangent(p))


@given(profiles(), st.integers(1, 5))
def test_zero_class_has_zero_slope(p, r):
    assert slope(p, SheafClass(r, ChernVector.zero(p.s))) == 0


@settings(max_examples=60, deadline=None)
@given(profile_and_sheaf())
def test_slope_matches_symbolic_expansion(data):
    p, f = data
    assert slope(p, f) == sympy_slope(p.dims, f.rank, list(f.c1))


@given(profiles())
def test_factor_slopes_coincide(p):
    values = {slope(p, SheafClass.factor(p, i)) for i in range(1, p.s + 1)}
    assert len(values) == 1
    assert values == {slope(p, SheafClass.cotangent(p))}


@given(profile_and_sheaf(), rationals)
def test_slope_linear_in_c1(data, a):
    p, f = data
    assert slope(p, SheafClass(f.rank, f.c1 * a)) == a * slope(p, f)


# --- component slopes ---------------------------------------------------------------------


@given(profile_and_sheaf())
def test_component_slopes_sum_to_slope(data):
    p, f = data
    assert sum(component_slope(p, f, i) for i in range(1, p.s + 1)) == slope(p, f)


@given(profiles())
def test_component_slope_of_factor_supported_on_itself(p):
    for i in range(1, p.s + 1):
        omega_i = SheafClass.factor(p, i)
        for iota in range(1, p.s + 1):
            assert (component_slope(p, omega_i, iota) != 0) == (iota == i)


def test_component_slope_two_curves():
    p = FactorProfile((1, 1), ("A", "A"))
    f = SheafClass(1, ChernVector((1, 0)))
    assert (component_slope(p, f, 1), component_slope(p, f, 2)) == (slope(p, f), 0)


def test_component_slope_zero_class_and_bad_index():
    p = FactorProfile((2, 1), ("B", "A"))
    zero = SheafClass(3, ChernVector.zero(2))
    assert all(component_slope(p, zero, i) == 0 for i in (1, 2))
    with pytest.raises(InvalidInputError, match="out of range"):
        component_slope(p, zero, 3)


@given(profile_and_sheaf(), rationals)
def test_perturbed_slope(data, eps):
    p, f = data
    assert perturbed_slope(p, f, 1, 0) == slope(p, f)
    assert perturbed_slope(p, f, 1, eps) == slope(p, f) + eps * component_slope(p, f, 1)


@given(profiles(), rationals)
def test_perturbation_only_moves_its_own_factor(p, eps):
    for iota in range(1, p.s + 1):
        for j in range(1, p.s + 1):
            omega_j = SheafClass.factor(p, j)
            moved = perturbed_slope(p, omega_j, iota, eps) != slope(p, omega_j)
            assert moved == (j == iota and eps != 0)


# --- Yau test -----------------------------------------------------------------------------


@pytest.mark.parametrize("n", range(2, 11))
def test_yau_equality(n):
    ball = Fraction(n, 2 * (n + 1))
    assert yau_ball_test(FactorProfile((n,), ("B",), {1: ball}), 1)
    assert not yau_ball_test(FactorProfile((n,), ("B",), {1: ball + 1}), 1)


def test_yau_surface_value():
    assert yau_ball_test(FactorProfile((2,), ("B",), {1: "1/3"}), 1)


def test_yau_errors():
    with pytest.raises(DataMissingError):
        yau_ball_test(FactorProfile.single(3), 1)
    with pytest.raises(InvalidInputError, match="not B"):
        yau_ball_test(FactorProfile((3, 1), ("C", "A"), {1: 1}), 1)


def test_rationals_reject_floats():
    with pytest.raises(InvalidInputError):
        ChernVector((0.5,))
    with pytest.raises(InvalidInputError):
        ChernVector(("0.5",))
    assert ChernVector(("-2/4", 3)).coeffs == (Fraction(-1, 2), 3)


@settings(max_examples=40, deadline=None)
@given(profile_and_sheaf())
def test_truncated_expansion_matches_full_expansion(data):
    from kuga_cert.chow_calculus import degree, linear_form, poly_multiply

    p, f = data
    full = poly_multiply(linear_form(f.c1), linear_form_power([1] * p.s, p.n - 1))
    assert evaluate_monomial_sum(p, full) == degree(p, f.c1)
    assert all(all(e <= d for e, d in zip(exps, p.dims)) for exps in p.canonical_power)
