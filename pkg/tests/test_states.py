"""State constraints, exact vertex enumeration, and separation."""

from fractions import Fraction

import pytest

from qlogic import catalog
from qlogic.algebra import derive_order
from qlogic.fuzz import random_algebras
from qlogic.states import (
    check_state,
    enumerate_vertex_states,
    is_separating,
    monotone_under,
    state_constraints,
)


def test_chain2_forces_half():
    alg = catalog.chain(2)
    poly = enumerate_vertex_states(alg)
    assert len(poly.vertices) == 1
    assert poly.vertices[0][alg.index("1/2")] == Fraction(1, 2)


def test_bp2_two_dispersion_free_vertices():
    alg = catalog.boolean_powerset(2)
    poly = enumerate_vertex_states(alg)
    a, b = alg.index("{1}"), alg.index("{2}")
    values = sorted((v[a], v[b]) for v in poly.vertices)
    assert values == [(Fraction(0), Fraction(1)), (Fraction(1), Fraction(0))]


def test_mo2_four_vertices():
    alg = catalog.mo(2)
    poly = enumerate_vertex_states(alg)
    a, b = alg.index("a1"), alg.index("a2")
    values = sorted((v[a], v[b]) for v in poly.vertices)
    # independent oracle: the polytope is a product of two segments
    assert values == [
        (Fraction(x), Fraction(y)) for x in (0, 1) for y in (0, 1)
    ]


@pytest.mark.parametrize("k", (1, 2, 3))
def test_powerset_vertices_dispersion_free(k):
    alg = catalog.boolean_powerset(k)
    poly = enumerate_vertex_states(alg)
    assert len(poly.vertices) == k
    for v in poly.vertices:
        assert all(x in (0, 1) for x in v)


def test_constraint_rows_mention_unit():
    alg = catalog.boolean_powerset(2)
    rows = state_constraints(alg)
    unit_rows = [r for r, rhs in rows if rhs == 1]
    assert len(unit_rows) == 1
    assert unit_rows[0][alg.unit] == 1


def test_horizontal_sum_of_two_bp1_reported():
    # no expectation asserted beyond running the enumeration
    alg = catalog.horizontal_sum(
        catalog.boolean_powerset(1), catalog.boolean_powerset(1)
    )
    poly = enumerate_vertex_states(alg)
    sep, merged = is_separating(alg, poly)
    assert len(poly.vertices) >= 1
    assert isinstance(sep, bool) and isinstance(merged, list)


def full_catalog():
    return [
        catalog.boolean_powerset(1),
        catalog.boolean_powerset(2),
        catalog.boolean_powerset(3),
        catalog.chain(2),
        catalog.chain(3),
        catalog.chain(4),
        catalog.mo(1),
        catalog.mo(2),
        catalog.mo(3),
        catalog.product(catalog.chain(2), catalog.chain(2)),
        catalog.wright_triangle(),
    ]


def test_vertices_satisfy_constraints_exactly():
    for alg in full_catalog():
        poly = enumerate_vertex_states(alg)
        for v in poly.vertices:
            assert check_state(alg, v) == []


def test_vertex_states_monotone():
    for alg in full_catalog():
        poly = enumerate_vertex_states(alg)
        for v in poly.vertices:
            assert monotone_under(alg, v)


def test_supplement_law():
    for alg in full_catalog():
        supp = derive_order(alg).supplement
        poly = enumerate_vertex_states(alg)
        for v in poly.vertices:
            for p in alg.elements():
                assert v[supp[p]] == 1 - v[p]


def test_separation_across_catalog():
    for alg in full_catalog():
        poly = enumerate_vertex_states(alg)
        sep, merged = is_separating(alg, poly)
        assert sep, f"merged pairs on {alg.labels}: {merged}"


def test_fuzz_states_well_formed():
    for alg in random_algebras(seed=303, count=25, max_size=9):
        poly = enumerate_vertex_states(alg)
        for v in poly.vertices:
            assert check_state(alg, v) == []
            assert monotone_under(alg, v)


def test_vertices_sorted_and_distinct():
    for alg in full_catalog():
        poly = enumerate_vertex_states(alg)
        assert list(poly.vertices) == sorted(set(poly.vertices))


def test_json_vertices_exact_fractions():
    alg = catalog.chain(2)
    poly = enumerate_vertex_states(alg)
    doc = poly.to_json_list(alg)
    assert doc == [{"0": "0/1", "1/2": "1/2", "1": "1/1"}]
