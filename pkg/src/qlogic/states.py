"""Exact-rational state polytopes of finite effect algebras.

A state assigns each element a rational in [0, 1], additively over the
partial sum, with value 1 on the unit.  The state space is the polytope cut
out by those equalities and the nonnegativity inequalities; vertices are
enumerated by solving every maximal-rank subsystem with active nonnegativity
constraints, entirely over Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .algebra import AlgebraError, ElementId, FiniteEffectAlgebra, derive_order

MAX_STATE_CARRIER = 32


class EmptyStateSpace(AlgebraError):
    """The algebra admits no states at all."""


@dataclass(frozen=True)
class StatePolytope:
    """Vertex states, each a tuple of Fractions indexed by ElementId."""

    vertices: tuple[tuple[Fraction, ...], ...]
    affine_dimension: int

    def to_json_list(self, alg: FiniteEffectAlgebra) -> list[dict]:
        return [
            {alg.labels[p]: _fraction_str(v[p]) for p in alg.elements()}
            for v in self.vertices
        ]


def _fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def state_constraints(
    alg: FiniteEffectAlgebra,
) -> list[tuple[tuple[Fraction, ...], Fraction]]:
    """Equality rows (coefficients, rhs): v_unit = 1 and v_a + v_b = v_c.

    v_zero = 0 is not postulated; it falls out of the 0 + 0 = 0 row.
    """
    n = alg.size
    rows = []
    unit_row = [Fraction(0)] * n
    unit_row[alg.unit] = Fraction(1)
    rows.append((tuple(unit_row), Fraction(1)))
    for a in alg.elements():
        for b in range(a, n):
            c = alg.table[a][b]
            if c is None:
                continue
            row = [Fraction(0)] * n
            row[a] += 1
            row[b] += 1
            row[c] -= 1
            if any(row):
                rows.append((tuple(row), Fraction(0)))
    return rows


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]] | None:
    """Reduced row echelon form of an augmented matrix; None if inconsistent."""
    mat = [row[:] for row in rows]
    ncols = len(mat[0]) - 1 if mat else 0
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = mat[r][col]
        mat[r] = [x / inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
    for i in range(r, len(mat)):
        if mat[i][-1] != 0:
            return None
    return mat[:r], pivots


def enumerate_vertex_states(alg: FiniteEffectAlgebra) -> StatePolytope:
    """Exact vertex enumeration of the state polytope.

    Raises EmptyStateSpace when the algebra admits no states.
    """
    n = alg.size
    if n > MAX_STATE_CARRIER:
        raise AlgebraError(
            f"vertex enumeration supports carriers up to {MAX_STATE_CARRIER} "
            f"elements, got {n}"
        )
    eqs = state_constraints(alg)
    aug = [list(row) + [rhs] for row, rhs in eqs]
    reduced = _rref(aug)
    if reduced is None:
        raise EmptyStateSpace("the additivity constraints are inconsistent")
    base_rows, pivots = reduced
    k = n - len(pivots)

    vertices = set()
    for zeros in combinations(range(n), k):
        system = [row[:] for row in base_rows]
        for i in zeros:
            row = [Fraction(0)] * (n + 1)
            row[i] = Fraction(1)
            system.append(row)
        solved = _rref(system)
        if solved is None:
            continue
        rows, pivs = solved
        if len(pivs) < n:
            continue
        point = [Fraction(0)] * n
        for row, col in zip(rows, pivs):
            point[col] = row[-1]
        if all(x >= 0 for x in point):
            vertices.add(tuple(point))

    if not vertices:
        raise EmptyStateSpace("the state polytope is empty")
    verts = tuple(sorted(vertices))
    return StatePolytope(vertices=verts, affine_dimension=_affine_dim(verts))


def _affine_dim(vertices: tuple[tuple[Fraction, ...], ...]) -> int:
    if len(vertices) <= 1:
        return 0
    base = vertices[0]
    diffs = [
        [x - y for x, y in zip(v, base)] + [Fraction(0)] for v in vertices[1:]
    ]
    reduced = _rref(diffs)
    assert reduced is not None
    return len(reduced[1])


def is_separating(
    alg: FiniteEffectAlgebra, polytope: StatePolytope
) -> tuple[bool, list[tuple[ElementId, ElementId]]]:
    """True iff every pair of distinct elements is split by some vertex state.

    Sufficient for all states: every state is a convex mixture of vertices.
    """
    merged = []
    for p in alg.elements():
        for q in range(p + 1, alg.size):
            if all(v[p] == v[q] for v in polytope.vertices):
                merged.append((p, q))
    return not merged, merged


def check_state(alg: FiniteEffectAlgebra, values) -> list[str]:
    """Violations of the state axioms for an explicit value assignment."""
    out = []
    if values[alg.unit] != 1:
        out.append("value at the unit is not 1")
    for p in alg.elements():
        if values[p] < 0:
            out.append(f"negative value at {alg.labels[p]}")
    for a in alg.elements():
        for b in range(a, alg.size):
            c = alg.table[a][b]
            if c is not None and values[a] + values[b] != values[c]:
                out.append(
                    f"additivity fails on ({alg.labels[a]}, {alg.labels[b]})"
                )
    return out


def monotone_under(alg: FiniteEffectAlgebra, values) -> bool:
    lo = derive_order(alg).leq
    return all(
        values[p] <= values[q]
        for p in alg.elements()
        for q in alg.elements()
        if lo[p][q]
    )
