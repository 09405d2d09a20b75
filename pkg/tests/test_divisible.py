"""The interval-function model: pointwise ops, cloning, and sharp elements."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qlogic import catalog
from qlogic.algebra import AlgebraError, find_isomorphism
from qlogic.divisible import (
    IntervalFunction,
    complement,
    constant,
    diagonal_clone,
    indicator,
    indicator_algebra,
    is_sharp_function,
    luka_neg,
    luka_plus,
    lukasiewicz_rationals,
    outer,
    pointwise_sum,
    product_bimorphism,
    sample_function,
    sharp_elements_report,
    square_sum,
)
from qlogic.mv import check_mv_axioms

unit_fractions = st.fractions(min_value=0, max_value=1, max_denominator=30)


def fn(*values):
    return IntervalFunction([Fraction(v) for v in values])


def test_values_validated():
    with pytest.raises(AlgebraError):
        IntervalFunction([Fraction(3, 2)])


def test_pointwise_sum_partial():
    f = fn("1/2", "3/4")
    assert pointwise_sum(f, fn("1/2", "1/4")).values == (Fraction(1), Fraction(1))
    assert pointwise_sum(f, fn(0, "1/2")) is None  # 3/4 + 1/2 > 1


def test_complement_involutive():
    f = fn("1/3", 1, 0)
    assert complement(complement(f)) == f
    assert pointwise_sum(f, complement(f)) == constant(3, 1)


def test_outer_then_diagonal_squares():
    f = fn("1/2", "1/3")
    diag = diagonal_clone(outer(f, f))
    assert diag.values == (Fraction(1, 4), Fraction(1, 9))
    assert diag == product_bimorphism(f, f)


def test_diagonal_of_outer_with_unit_restores():
    f = fn("2/5", "1/7", 1)
    assert diagonal_clone(outer(f, constant(3, 1))) == f
    assert diagonal_clone(outer(constant(3, 1), f)) == f


def test_clone_defect_is_f_minus_f_squared():
    # c(f,f) = f^2, so f and its clone differ by f - f^2; at f = 1/2 the gap
    # is 1/4, the worst case
    f = constant(2, Fraction(1, 2))
    clone = product_bimorphism(f, f)
    assert clone.values == (Fraction(1, 4), Fraction(1, 4))
    gap = pointwise_sum(clone, complement(f))
    assert gap is not None  # f^2 <= f, i.e. f^2 is orthogonal to f'


def test_square_sum_partial():
    F = outer(fn("1/2", "1/2"), fn(1, 1))
    assert square_sum(F, F).values[0][0] == Fraction(1)
    assert square_sum(F, outer(constant(2, 1), constant(2, 1))) is None


def test_sharp_iff_indicator():
    assert is_sharp_function(indicator(4, {0, 2}))
    assert not is_sharp_function(fn(1, "1/2", 0))
    assert is_sharp_function(constant(3, 0)) and is_sharp_function(constant(3, 1))


def test_luka_characteristic_identity_instance():
    a, b = Fraction(1, 3), Fraction(1, 2)
    lhs = luka_plus(luka_neg(luka_plus(luka_neg(a), b)), b)
    rhs = luka_plus(luka_neg(luka_plus(a, luka_neg(b))), a)
    assert lhs == rhs == Fraction(1, 2)


def test_lukasiewicz_sampled_axioms():
    rep = check_mv_axioms(lukasiewicz_rationals(), sample_budget=1000, seed=11)
    assert rep.passed
    assert rep.mode == "sampled"
    assert rep.triples_checked == 1000


@given(a=unit_fractions, b=unit_fractions)
@settings(max_examples=200, deadline=None)
def test_luka_plus_commutative_monotone(a, b):
    assert luka_plus(a, b) == luka_plus(b, a)
    assert luka_plus(a, b) >= a
    assert luka_plus(a, luka_neg(a)) == 1


@given(a=unit_fractions, b=unit_fractions)
@settings(max_examples=200, deadline=None)
def test_luka_characteristic_identity_property(a, b):
    lhs = luka_plus(luka_neg(luka_plus(luka_neg(a), b)), b)
    rhs = luka_plus(luka_neg(luka_plus(a, luka_neg(b))), a)
    assert lhs == rhs == max(a, b)


@given(st.lists(unit_fractions, min_size=1, max_size=5))
@settings(max_examples=100, deadline=None)
def test_product_bimorphism_below_both_factors(values):
    f = IntervalFunction(values)
    p = product_bimorphism(f, f)
    assert all(x <= y for x, y in zip(p.values, f.values))


def test_indicator_algebra_matches_powerset():
    for n in (1, 2, 3):
        assert (
            find_isomorphism(indicator_algebra(n), catalog.boolean_powerset(n))
            is not None
        )


def test_sharp_elements_report_n2():
    rep = sharp_elements_report(2, sample_budget=200, seed=5)
    assert rep.passed
    assert rep.sharp_count == 4
    assert rep.isomorphic_to_powerset is True


def test_sample_function_deterministic():
    a = sample_function(random.Random(9), 4)
    b = sample_function(random.Random(9), 4)
    assert a == b


def test_model_hidden_variable_instance():
    # the indicator subalgebra supports the full hidden-variable pipeline
    from qlogic.cloning import find_cloning_bimorphism
    from qlogic.mv import hidden_variable_construct, verify_hidden_variable
    from qlogic.states import enumerate_vertex_states

    alg = indicator_algebra(2)
    out = find_cloning_bimorphism(alg)
    assert out.status == "witness-found"
    parts = tuple(alg.index(l) for l in ("{1}", "{2}"))
    model = hidden_variable_construct(alg, out.witnesses[0], parts)
    rep = verify_hidden_variable(model, enumerate_vertex_states(alg), mixtures=50, seed=3)
    assert rep.passed


def test_json_serialization():
    doc = fn("1/2", 1).to_json_dict()
    assert doc == {"n": 2, "values": ["1/2", "1/1"]}
