"""Exhaustive backtracking search for cloning bimorphisms c: P x P -> P.

A cloning witness is a total table satisfying the unit laws c(p,1)=c(1,p)=p
and biadditivity in each argument.  Existence is decided at the bimorphism
level; a completed exhaustive search with no witness is a proof of
nonexistence, while a budget abort is reported as such and never as
nonexistence.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .algebra import (
    AlgebraError,
    ElementId,
    FiniteEffectAlgebra,
    NotAnOrthoalgebra,
    are_compatible,
    atoms,
    derive_order,
    is_boolean,
    is_orthoalgebra,
    meet,
)

DEFAULT_NODE_BUDGET = 10**8


class NotBoolean(AlgebraError):
    pass


class DecompositionMismatch(AlgebraError):
    pass


@dataclass(frozen=True)
class CloningWitness:
    """A total map c: E x E -> E passing verify_witness on its algebra."""

    algebra: FiniteEffectAlgebra
    table: tuple[tuple[ElementId, ...], ...]

    def value(self, p: ElementId, q: ElementId) -> ElementId:
        return self.table[p][q]

    def is_symmetric(self) -> bool:
        n = self.algebra.size
        return all(
            self.table[p][q] == self.table[q][p]
            for p in range(n)
            for q in range(p + 1, n)
        )

    def to_json_dict(self) -> dict:
        labels = self.algebra.labels
        rows = sorted(
            [labels[p], labels[q], labels[self.table[p][q]]]
            for p in self.algebra.elements()
            for q in self.algebra.elements()
        )
        return {"witness": rows}


@dataclass
class SearchOutcome:
    status: str  # "witness-found" | "no-witness" | "aborted"
    witnesses: list[CloningWitness]
    nodes_explored: int
    wall_time: float = field(compare=False, default=0.0)

    def to_json_dict(self) -> dict:
        # wall_time excluded: reports must be deterministic
        return {
            "status": self.status,
            "witnesses": [w.to_json_dict() for w in self.witnesses],
            "nodes_explored": self.nodes_explored,
        }


def find_cloning_bimorphism(
    alg: FiniteEffectAlgebra,
    enumerate_all: bool = False,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> SearchOutcome:
    """Search for all/first cloning bimorphism tables, deterministically.

    Branch cells are taken atom x atom first, then the remaining cells in
    ascending index order; candidate values ascend.  Constraint propagation
    derives sums and differences along orthogonal pairs and prunes
    contradictions, so composite cells are rarely branched on.
    """
    start = time.perf_counter()
    n = alg.size
    sumt = alg.table
    lo = derive_order(alg).leq

    # sub[x][z] = the unique y with x + y = z (cancellativity), else None
    sub: list[list[ElementId | None]] = [[None] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            z = sumt[x][y]
            if z is not None:
                sub[x][z] = y

    orth_pairs = [
        (a, b) for a in range(n) for b in range(a, n) if sumt[a][b] is not None
    ]

    ats = atoms(alg)
    branch_cells: list[tuple[int, int]] = []
    seen = set()
    for p in ats:
        for q in ats:
            branch_cells.append((p, q))
            seen.add((p, q))
    for p in range(n):
        for q in range(n):
            if (p, q) not in seen:
                branch_cells.append((p, q))

    def propagate(tab: list[list[ElementId | None]]) -> bool:
        changed = True
        while changed:
            changed = False
            for a, b in orth_pairs:
                s = sumt[a][b]
                for q in range(n):
                    for (ra, ca), (rb, cb), (rs, cs) in (
                        (((a, q)), ((b, q)), ((s, q))),
                        (((q, a)), ((q, b)), ((q, s))),
                    ):
                        x = tab[ra][ca]
                        y = tab[rb][cb]
                        z = tab[rs][cs]
                        if x is not None and y is not None:
                            w = sumt[x][y]
                            if w is None:
                                return False
                            if z is None:
                                tab[rs][cs] = w
                                changed = True
                            elif z != w:
                                return False
                        elif z is not None:
                            if x is not None:
                                w = sub[x][z]
                                if w is None:
                                    return False
                                tab[rb][cb] = w
                                changed = True
                            elif y is not None:
                                w = sub[y][z]
                                if w is None:
                                    return False
                                tab[ra][ca] = w
                                changed = True
        return True

    seed: list[list[ElementId | None]] = [[None] * n for _ in range(n)]
    for p in range(n):
        seed[p][alg.unit] = p
        seed[alg.unit][p] = p
        seed[p][alg.zero] = alg.zero
        seed[alg.zero][p] = alg.zero

    witnesses: list[CloningWitness] = []
    nodes = 0
    aborted = False

    def rec(tab: list[list[ElementId | None]]) -> None:
        nonlocal nodes, aborted
        cell = None
        for p, q in branch_cells:
            if tab[p][q] is None:
                cell = (p, q)
                break
        if cell is None:
            full = tuple(tuple(row) for row in tab)
            ok, violation = verify_witness(alg, full)
            if not ok:  # propagation checks every constraint; must not happen
                raise AlgebraError(f"search produced an invalid table: {violation}")
            witnesses.append(CloningWitness(algebra=alg, table=full))
            return
        p, q = cell
        for v in range(n):
            # sound filter: any witness has c(p,q) <= p and c(p,q) <= q
            if not (lo[v][p] and lo[v][q]):
                continue
            nodes += 1
            if nodes > node_budget:
                aborted = True
                return
            nxt = [row[:] for row in tab]
            nxt[p][q] = v
            if propagate(nxt):
                rec(nxt)
            if aborted or (witnesses and not enumerate_all):
                return

    if propagate(seed):
        rec(seed)

    witnesses.sort(key=lambda w: w.table)
    if aborted:
        status = "aborted"
    elif witnesses:
        status = "witness-found"
    else:
        status = "no-witness"
    return SearchOutcome(
        status=status,
        witnesses=witnesses,
        nodes_explored=nodes,
        wall_time=time.perf_counter() - start,
    )


def verify_witness(
    alg: FiniteEffectAlgebra, table
) -> tuple[bool, str | None]:
    """Check all cloning-witness invariants; report the first violation."""
    n = alg.size
    labels = alg.labels
    sumt = alg.table
    if len(table) != n or any(len(row) != n for row in table):
        return False, "table is not square over the carrier"
    for p in range(n):
        for q in range(n):
            v = table[p][q]
            if not isinstance(v, int) or not (0 <= v < n):
                return False, f"cell ({labels[p]}, {labels[q]}) is not an element"
    for p in range(n):
        if table[p][alg.unit] != p:
            return False, f"unit law fails: c({labels[p]}, 1) != {labels[p]}"
        if table[alg.unit][p] != p:
            return False, f"unit law fails: c(1, {labels[p]}) != {labels[p]}"
    if table[alg.unit][alg.unit] != alg.unit:
        return False, "c(1, 1) != 1"
    for a in range(n):
        for b in range(a, n):
            s = sumt[a][b]
            if s is None:
                continue
            for q in range(n):
                w = sumt[table[a][q]][table[b][q]]
                if w is None:
                    return False, (
                        f"biadditivity fails: c({labels[a]}, {labels[q]}) is not "
                        f"orthogonal to c({labels[b]}, {labels[q]})"
                    )
                if w != table[s][q]:
                    return False, (
                        f"biadditivity fails: c({labels[a]}(+){labels[b]}, "
                        f"{labels[q]}) != c({labels[a]}, {labels[q]}) (+) "
                        f"c({labels[b]}, {labels[q]})"
                    )
                w = sumt[table[q][a]][table[q][b]]
                if w is None:
                    return False, (
                        f"biadditivity fails: c({labels[q]}, {labels[a]}) is not "
                        f"orthogonal to c({labels[q]}, {labels[b]})"
                    )
                if w != table[q][s]:
                    return False, (
                        f"biadditivity fails: c({labels[q]}, {labels[a]}(+)"
                        f"{labels[b]}) != c({labels[q]}, {labels[a]}) (+) "
                        f"c({labels[q]}, {labels[b]})"
                    )
    return True, None


def meet_witness(alg: FiniteEffectAlgebra) -> CloningWitness:
    """The meet-table witness c(p, q) = p /\\ q, available on Boolean algebras."""
    if not is_boolean(alg):
        raise NotBoolean("the meet witness exists only on Boolean algebras")
    n = alg.size
    table = tuple(
        tuple(meet(alg, p, q) for q in range(n)) for p in range(n)
    )
    witness = CloningWitness(algebra=alg, table=table)
    ok, violation = verify_witness(alg, table)
    if not ok:
        raise AlgebraError(f"meet witness failed verification: {violation}")
    return witness


@dataclass(frozen=True)
class LemmaReport:
    orthogonality_passed: bool  # c(p,q) = 0  iff  p orthogonal to q
    idempotence_passed: bool  # c(p,p) = p
    violations: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return self.orthogonality_passed and self.idempotence_passed

    def to_json_dict(self) -> dict:
        return {
            "orthogonality_passed": self.orthogonality_passed,
            "idempotence_passed": self.idempotence_passed,
            "violations": list(self.violations),
        }


def check_witness_lemmas(
    alg: FiniteEffectAlgebra, witness: CloningWitness
) -> LemmaReport:
    """Exhaustively check the two witness lemmas, valid on orthoalgebras only."""
    ok, bad = is_orthoalgebra(alg)
    if not ok:
        raise NotAnOrthoalgebra(
            f"the witness lemmas hold on orthoalgebras only; "
            f"{alg.labels[bad]!r} + itself is defined"
        )
    violations = []
    orth_ok = True
    idem_ok = True
    for p in alg.elements():
        for q in alg.elements():
            zero_val = witness.table[p][q] == alg.zero
            perp = alg.perp(p, q)
            if zero_val != perp:
                orth_ok = False
                violations.append(
                    f"c({alg.labels[p]}, {alg.labels[q]}) = 0 is {zero_val} "
                    f"but orthogonality is {perp}"
                )
    for p in alg.elements():
        if witness.table[p][p] != p:
            idem_ok = False
            violations.append(f"c({alg.labels[p]}, {alg.labels[p]}) != {alg.labels[p]}")
    return LemmaReport(
        orthogonality_passed=orth_ok,
        idempotence_passed=idem_ok,
        violations=tuple(violations),
    )


def compatibility_core(
    alg: FiniteEffectAlgebra,
    witness: CloningWitness,
    p: ElementId,
    q: ElementId,
) -> tuple[ElementId, ElementId, ElementId]:
    """The unique Mackey decomposition (r, a, b) read off the witness table."""
    ok, bad = is_orthoalgebra(alg)
    if not ok:
        raise NotAnOrthoalgebra(
            f"compatibility cores are defined on orthoalgebras; "
            f"{alg.labels[bad]!r} + itself is defined"
        )
    supp = derive_order(alg).supplement
    r = witness.table[p][q]
    a = witness.table[p][supp[q]]
    b = witness.table[supp[p]][q]
    t = alg.table
    if t[r][a] != p or t[r][b] != q or t[a][b] is None:
        raise DecompositionMismatch(
            f"witness does not decompose ({alg.labels[p]}, {alg.labels[q]})"
        )
    decomps = are_compatible(alg, p, q)
    if decomps != [(a, b, r)]:
        raise DecompositionMismatch(
            f"decomposition of ({alg.labels[p]}, {alg.labels[q]}) is not the "
            f"unique one: {decomps}"
        )
    return r, a, b
