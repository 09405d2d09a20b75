"""Finite effect algebras stored as dense partial-sum tables.

The carrier is a list of labelled elements and the partial binary sum is a
square table with ``None`` marking undefined entries.  Validation checks the
four effect-algebra axioms by full exhaustion; every derived notion (order,
supplements, atoms, compatibility, coherence, Boolean-ness) is then computed
by direct scans of the table.  Algebras are immutable and hashable, so the
derived structures are cached per algebra.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

ElementId = int

MAX_CARRIER = 64


class AlgebraError(Exception):
    """Base class for errors raised by this package."""


class MalformedTable(AlgebraError):
    """Structurally broken input (labels, keys, conflicts) before axiom checks."""


class ValidationError(AlgebraError):
    """An effect-algebra axiom fails; ``witnesses`` names the offending labels."""

    def __init__(self, message: str, witnesses: tuple[str, ...] = ()):
        super().__init__(message)
        self.witnesses = witnesses


class CommutativityViolation(ValidationError):
    pass


class AssociativityViolation(ValidationError):
    pass


class SupplementMissing(ValidationError):
    pass


class SupplementNotUnique(ValidationError):
    pass


class UnitIsotropic(ValidationError):
    pass


class NotAnOrthoalgebra(AlgebraError):
    pass


class ZeroHasNoIndex(AlgebraError):
    pass


@dataclass(frozen=True)
class FiniteEffectAlgebra:
    """A validated finite effect algebra (labels, zero, unit, partial sum table)."""

    labels: tuple[str, ...]
    zero: ElementId
    unit: ElementId
    table: tuple[tuple[ElementId | None, ...], ...]

    @property
    def size(self) -> int:
        return len(self.labels)

    def elements(self) -> range:
        return range(len(self.labels))

    def sum(self, p: ElementId, q: ElementId) -> ElementId | None:
        return self.table[p][q]

    def perp(self, p: ElementId, q: ElementId) -> bool:
        return self.table[p][q] is not None

    def label(self, p: ElementId) -> str:
        return self.labels[p]

    def index(self, label: str) -> ElementId:
        try:
            return self.labels.index(label)
        except ValueError:
            raise MalformedTable(f"unknown element label {label!r}") from None

    def to_json_dict(self) -> dict:
        sums = []
        for p in self.elements():
            for q in range(p, self.size):
                c = self.table[p][q]
                if c is not None:
                    sums.append([self.labels[p], self.labels[q], self.labels[c]])
        return {
            "elements": list(self.labels),
            "zero": self.labels[self.zero],
            "unit": self.labels[self.unit],
            "sums": sums,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


def validate(
    elements,
    zero: str,
    unit: str,
    sums,
    max_size: int = MAX_CARRIER,
) -> FiniteEffectAlgebra:
    """Build and validate an algebra from (a, b, c) label triples meaning a+b=c.

    One orientation per pair suffices; the table is symmetrized.  Conflicting
    orientations raise CommutativityViolation.
    """
    labels = tuple(elements)
    _check_structure(labels, zero, unit, max_size)
    n = len(labels)
    pos = {lbl: i for i, lbl in enumerate(labels)}
    table: list[list[ElementId | None]] = [[None] * n for _ in range(n)]
    for triple in sums:
        if len(triple) != 3:
            raise MalformedTable(f"sum entry {triple!r} is not an [a, b, c] triple")
        a, b, c = triple
        for lbl in (a, b, c):
            if lbl not in pos:
                raise MalformedTable(f"sum entry mentions unknown label {lbl!r}")
        i, j, k = pos[a], pos[b], pos[c]
        for x, y in ((i, j), (j, i)):
            if table[x][y] is not None and table[x][y] != k:
                raise CommutativityViolation(
                    f"conflicting values for {a!r}(+){b!r}", (a, b)
                )
            table[x][y] = k
    return _validate_checked(labels, pos[zero], pos[unit], table)


def validate_table(
    labels,
    zero: ElementId,
    unit: ElementId,
    table,
    max_size: int = MAX_CARRIER,
) -> FiniteEffectAlgebra:
    """Validate a raw square table (no symmetrization; asymmetry is an error)."""
    labels = tuple(labels)
    if not (0 <= zero < len(labels)) or not (0 <= unit < len(labels)):
        raise MalformedTable("zero/unit index out of range")
    _check_structure(labels, labels[zero], labels[unit], max_size)
    n = len(labels)
    rows = [list(row) for row in table]
    if len(rows) != n or any(len(row) != n for row in rows):
        raise MalformedTable("sum table is not square over the carrier")
    for row in rows:
        for v in row:
            if v is not None and not (0 <= v < n):
                raise MalformedTable(f"table value {v!r} out of range")
    return _validate_checked(labels, zero, unit, rows)


def from_json_dict(doc: dict, max_size: int = MAX_CARRIER) -> FiniteEffectAlgebra:
    """Load an algebra from the published JSON format; unknown keys rejected."""
    if not isinstance(doc, dict):
        raise MalformedTable("algebra document must be a JSON object")
    expected = {"elements", "zero", "unit", "sums"}
    unknown = set(doc) - expected
    if unknown:
        raise MalformedTable(f"unknown keys in algebra document: {sorted(unknown)}")
    missing = expected - set(doc)
    if missing:
        raise MalformedTable(f"missing keys in algebra document: {sorted(missing)}")
    if not isinstance(doc["elements"], list) or not all(
        isinstance(x, str) for x in doc["elements"]
    ):
        raise MalformedTable("'elements' must be an array of strings")
    if not isinstance(doc["sums"], list):
        raise MalformedTable("'sums' must be an array of [a, b, c] triples")
    return validate(doc["elements"], doc["zero"], doc["unit"], doc["sums"], max_size)


def from_json(text: str, max_size: int = MAX_CARRIER) -> FiniteEffectAlgebra:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedTable(f"invalid JSON: {exc}") from exc
    return from_json_dict(doc, max_size)


def _check_structure(labels, zero, unit, max_size):
    if len(set(labels)) != len(labels):
        raise MalformedTable("element labels are not pairwise distinct")
    if len(labels) > max_size:
        raise MalformedTable(f"carrier size {len(labels)} exceeds cap {max_size}")
    for lbl in (zero, unit):
        if lbl not in labels:
            raise MalformedTable(f"distinguished element {lbl!r} not in carrier")
    if zero == unit:
        raise MalformedTable("degenerate algebra with 0 = 1 is rejected")


def _validate_checked(labels, zero, unit, table) -> FiniteEffectAlgebra:
    n = len(labels)

    # (i) commutativity, in definedness and value
    for p in range(n):
        for q in range(p, n):
            if table[p][q] != table[q][p]:
                raise CommutativityViolation(
                    f"{labels[p]!r}(+){labels[q]!r} and its flip disagree",
                    (labels[p], labels[q]),
                )

    # p orthogonal to 1 forces p = 0
    for p in range(n):
        if table[p][unit] is not None and p != zero:
            raise UnitIsotropic(
                f"{labels[p]!r} is orthogonal to the unit but nonzero", (labels[p],)
            )

    # unique orthosupplement
    for p in range(n):
        supp = [q for q in range(n) if table[p][q] == unit]
        if not supp:
            raise SupplementMissing(
                f"{labels[p]!r} has no orthosupplement", (labels[p],)
            )
        if len(supp) > 1:
            raise SupplementNotUnique(
                f"{labels[p]!r} has several orthosupplements "
                f"{[labels[q] for q in supp]}",
                (labels[p],) + tuple(labels[q] for q in supp),
            )

    # associativity, fully exhausted
    for q in range(n):
        for r in range(n):
            qr = table[q][r]
            if qr is None:
                continue
            for p in range(n):
                if table[p][qr] is None:
                    continue
                pq = table[p][q]
                if pq is None or table[pq][r] != table[p][qr]:
                    raise AssociativityViolation(
                        f"associativity fails on "
                        f"({labels[p]!r}, {labels[q]!r}, {labels[r]!r})",
                        (labels[p], labels[q], labels[r]),
                    )

    return FiniteEffectAlgebra(
        labels=tuple(labels),
        zero=zero,
        unit=unit,
        table=tuple(tuple(row) for row in table),
    )


# ---------------------------------------------------------------------------
# Derived order structure


@dataclass(frozen=True)
class OrderStructure:
    """Induced partial order (p <= q iff q = p + r for some r) and supplement map."""

    leq: tuple[tuple[bool, ...], ...]
    supplement: tuple[ElementId, ...]


@lru_cache(maxsize=None)
def derive_order(alg: FiniteEffectAlgebra) -> OrderStructure:
    n = alg.size
    leq = tuple(
        tuple(any(alg.table[p][r] == q for r in range(n)) for q in range(n))
        for p in range(n)
    )
    supplement = tuple(
        next(q for q in range(n) if alg.table[p][q] == alg.unit) for p in range(n)
    )
    return OrderStructure(leq=leq, supplement=supplement)


def leq(alg: FiniteEffectAlgebra, p: ElementId, q: ElementId) -> bool:
    return derive_order(alg).leq[p][q]


def supplement(alg: FiniteEffectAlgebra, p: ElementId) -> ElementId:
    return derive_order(alg).supplement[p]


def meet(alg: FiniteEffectAlgebra, p: ElementId, q: ElementId) -> ElementId | None:
    """Greatest lower bound of {p, q}, or None when the bound set has no maximum."""
    lo = derive_order(alg).leq
    lower = [r for r in alg.elements() if lo[r][p] and lo[r][q]]
    for m in lower:
        if all(lo[r][m] for r in lower):
            return m
    return None


def join(alg: FiniteEffectAlgebra, p: ElementId, q: ElementId) -> ElementId | None:
    """Least upper bound of {p, q}, or None when it does not exist."""
    lo = derive_order(alg).leq
    upper = [r for r in alg.elements() if lo[p][r] and lo[q][r]]
    for m in upper:
        if all(lo[m][r] for r in upper):
            return m
    return None


def is_sharp(alg: FiniteEffectAlgebra, p: ElementId) -> bool:
    m = meet(alg, p, supplement(alg, p))
    return m == alg.zero


def sharp_elements(alg: FiniteEffectAlgebra) -> tuple[ElementId, ...]:
    return tuple(p for p in alg.elements() if is_sharp(alg, p))


@lru_cache(maxsize=None)
def atoms(alg: FiniteEffectAlgebra) -> tuple[ElementId, ...]:
    """Minimal nonzero elements, in carrier order."""
    lo = derive_order(alg).leq
    out = []
    for p in alg.elements():
        if p == alg.zero:
            continue
        below = [x for x in alg.elements() if lo[x][p]]
        if set(below) == {alg.zero, p}:
            out.append(p)
    return tuple(out)


def is_atomic(alg: FiniteEffectAlgebra) -> bool:
    lo = derive_order(alg).leq
    ats = atoms(alg)
    return all(
        p == alg.zero or any(lo[a][p] for a in ats) for p in alg.elements()
    )


def isotropic_index(alg: FiniteEffectAlgebra, p: ElementId) -> int:
    """Largest n such that the n-fold sum p + ... + p is defined."""
    if p == alg.zero:
        raise ZeroHasNoIndex("the zero element has no finite isotropic index")
    n = 1
    acc = p
    while alg.table[acc][p] is not None:
        acc = alg.table[acc][p]
        n += 1
        if n > alg.size:  # impossible in a validated (cancellative) algebra
            raise AlgebraError("isotropic index exceeds carrier size")
    return n


def is_archimedean(alg: FiniteEffectAlgebra) -> bool:
    try:
        for p in alg.elements():
            if p != alg.zero:
                isotropic_index(alg, p)
    except AlgebraError:
        return False
    return True


def are_compatible(
    alg: FiniteEffectAlgebra, p: ElementId, q: ElementId
) -> list[tuple[ElementId, ElementId, ElementId]]:
    """All Mackey decompositions (x, y, z): p = x+z, q = y+z, mutually orthogonal."""
    t = alg.table
    out = []
    for x in alg.elements():
        for y in alg.elements():
            if t[x][y] is None:
                continue
            for z in alg.elements():
                if t[x][z] is None or t[y][z] is None:
                    continue
                if t[x][z] == p and t[y][z] == q:
                    out.append((x, y, z))
    return out


@lru_cache(maxsize=None)
def incompatible_pairs(
    alg: FiniteEffectAlgebra,
) -> tuple[tuple[ElementId, ElementId], ...]:
    out = []
    for p in alg.elements():
        for q in range(p + 1, alg.size):
            if not are_compatible(alg, p, q):
                out.append((p, q))
    return tuple(out)


def is_orthoalgebra(
    alg: FiniteEffectAlgebra,
) -> tuple[bool, ElementId | None]:
    """True iff no nonzero p has p + p defined; counterexample otherwise."""
    for p in alg.elements():
        if p != alg.zero and alg.table[p][p] is not None:
            return False, p
    return True, None


def check_coherence(
    alg: FiniteEffectAlgebra,
) -> tuple[bool, tuple[ElementId, ElementId, ElementId] | None]:
    """True iff every mutually orthogonal triple has a defined total sum."""
    ok, witness = is_orthoalgebra(alg)
    if not ok:
        raise NotAnOrthoalgebra(
            f"coherence is checked on orthoalgebras only; "
            f"{alg.labels[witness]!r} + itself is defined"
        )
    t = alg.table
    for p in alg.elements():
        for q in alg.elements():
            pq = t[p][q]
            if pq is None:
                continue
            for r in alg.elements():
                if t[p][r] is not None and t[q][r] is not None and t[pq][r] is None:
                    return False, (p, q, r)
    return True, None


@lru_cache(maxsize=None)
def is_boolean(alg: FiniteEffectAlgebra) -> bool:
    """Boolean-ness, decided two independent ways; the deciders must agree."""
    via_compat = _boolean_via_compatibility(alg)
    via_lattice = _boolean_via_lattice(alg)
    if via_compat != via_lattice:
        raise AlgebraError(
            "internal inconsistency: the compatibility-based and lattice-based "
            "Boolean deciders disagree"
        )
    return via_compat


def _boolean_via_compatibility(alg: FiniteEffectAlgebra) -> bool:
    ok, _ = is_orthoalgebra(alg)
    if not ok:
        return False
    coherent, _ = check_coherence(alg)
    if not coherent:
        return False
    return not incompatible_pairs(alg)


def _boolean_via_lattice(alg: FiniteEffectAlgebra) -> bool:
    n = alg.size
    meets = [[meet(alg, p, q) for q in range(n)] for p in range(n)]
    joins = [[join(alg, p, q) for q in range(n)] for p in range(n)]
    for p in range(n):
        for q in range(n):
            if meets[p][q] is None or joins[p][q] is None:
                return False
    supp = derive_order(alg).supplement
    for p in range(n):
        if meets[p][supp[p]] != alg.zero or joins[p][supp[p]] != alg.unit:
            return False
    for p in range(n):
        for q in range(n):
            for r in range(n):
                if meets[p][joins[q][r]] != joins[meets[p][q]][meets[p][r]]:
                    return False
    return True


# ---------------------------------------------------------------------------
# Structure report


@dataclass(frozen=True)
class StructureReport:
    is_effect_algebra: bool
    is_orthoalgebra: bool
    is_orthomodular_poset: bool
    is_boolean: bool
    sharp_elements: tuple[ElementId, ...]
    atoms: tuple[ElementId, ...]
    iota: dict
    is_atomic: bool
    is_archimedean: bool
    incompatible_pairs: tuple[tuple[ElementId, ElementId], ...]

    def to_json_dict(self, alg: FiniteEffectAlgebra) -> dict:
        return {
            "is_effect_algebra": self.is_effect_algebra,
            "is_orthoalgebra": self.is_orthoalgebra,
            "is_orthomodular_poset": self.is_orthomodular_poset,
            "is_boolean": self.is_boolean,
            "sharp_elements": [alg.labels[p] for p in self.sharp_elements],
            "atoms": [alg.labels[p] for p in self.atoms],
            "iota": {alg.labels[p]: v for p, v in self.iota.items()},
            "is_atomic": self.is_atomic,
            "is_archimedean": self.is_archimedean,
            "incompatible_pairs": [
                [alg.labels[p], alg.labels[q]] for p, q in self.incompatible_pairs
            ],
        }


def structure_report(alg: FiniteEffectAlgebra) -> StructureReport:
    ortho, _ = is_orthoalgebra(alg)
    coherent = check_coherence(alg)[0] if ortho else False
    return StructureReport(
        is_effect_algebra=True,
        is_orthoalgebra=ortho,
        is_orthomodular_poset=ortho and coherent,
        is_boolean=is_boolean(alg),
        sharp_elements=sharp_elements(alg),
        atoms=atoms(alg),
        iota={p: isotropic_index(alg, p) for p in alg.elements() if p != alg.zero},
        is_atomic=is_atomic(alg),
        is_archimedean=is_archimedean(alg),
        incompatible_pairs=incompatible_pairs(alg),
    )


# ---------------------------------------------------------------------------
# Isomorphism search (backtracking on labelled tables)


def find_isomorphism(
    a: FiniteEffectAlgebra, b: FiniteEffectAlgebra
) -> dict[ElementId, ElementId] | None:
    """A sum-preserving bijection a -> b fixing zero and unit, or None."""
    if a.size != b.size:
        return None

    def profile(alg, p):
        lo = derive_order(alg).leq
        degree = sum(1 for q in alg.elements() if alg.table[p][q] is not None)
        down = sum(1 for q in alg.elements() if lo[q][p])
        up = sum(1 for q in alg.elements() if lo[p][q])
        return (degree, down, up)

    prof_a = {p: profile(a, p) for p in a.elements()}
    prof_b = {p: profile(b, p) for p in b.elements()}
    if sorted(prof_a.values()) != sorted(prof_b.values()):
        return None

    mapping: dict[ElementId, ElementId] = {a.zero: b.zero, a.unit: b.unit}
    used = {b.zero, b.unit}
    todo = sorted(
        (p for p in a.elements() if p not in mapping),
        key=lambda p: (prof_a[p], p),
    )

    def consistent(p, q):
        for x, y in mapping.items():
            sa = a.table[p][x]
            sb = b.table[q][y]
            if (sa is None) != (sb is None):
                return False
            if sa is not None and sa in mapping and mapping[sa] != sb:
                return False
        return True

    def rec(i):
        if i == len(todo):
            # full check: definedness and values must transfer both ways
            for p in a.elements():
                for q in a.elements():
                    s = a.table[p][q]
                    t = b.table[mapping[p]][mapping[q]]
                    if (s is None) != (t is None):
                        return False
                    if s is not None and mapping[s] != t:
                        return False
            return True
        p = todo[i]
        for q in b.elements():
            if q in used or prof_b[q] != prof_a[p]:
                continue
            if not consistent(p, q):
                continue
            mapping[p] = q
            used.add(q)
            if rec(i + 1):
                return True
            del mapping[p]
            used.discard(q)
        return False

    return dict(mapping) if rec(0) else None
