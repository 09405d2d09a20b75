"""MV-algebras, the MV -> effect-algebra view, and hidden-variable models.

The hidden-variable construction takes an effect algebra with a cloning
witness and a decomposition of the unit into parts whose lower intervals are
totally ordered and sum-closed.  Each interval carries a truncated-sum MV
structure; their product is the hidden-variable carrier, and the witness
rows at the parts give the embedding h.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from .algebra import (
    AlgebraError,
    ElementId,
    FiniteEffectAlgebra,
    derive_order,
    is_sharp,
    validate,
)
from .cloning import CloningWitness, verify_witness
from .states import StatePolytope, check_state

DEFAULT_SEED = 20260823


class ConstructionFailed(AlgebraError):
    pass


class FiniteMV:
    """A finite MV carrier with explicit operation tables.

    Elements may be any hashable values (interval ElementIds, tuples, ...).
    """

    def __init__(self, elements, plus_map, neg_map, zero, one):
        self.elements = tuple(elements)
        self.plus_map = plus_map
        self.neg_map = neg_map
        self.zero = zero
        self.one = one

    def plus(self, a, b):
        return self.plus_map[(a, b)]

    def neg(self, a):
        return self.neg_map[a]

    def leq(self, a, b) -> bool:
        # the MV order: a <= b iff a' + b = 1
        return self.plus(self.neg(a), b) == self.one


class SampledMV:
    """An MV carrier too large to enumerate, probed through a seeded sampler."""

    def __init__(self, plus, neg, zero, one, sample):
        self.plus = plus
        self.neg = neg
        self.zero = zero
        self.one = one
        self.sample = sample
        self.elements = None


@dataclass(frozen=True)
class MVReport:
    passed: bool
    mode: str  # "exhaustive" | "sampled"
    triples_checked: int
    violations: tuple[str, ...]
    seed: int | None = None

    def to_json_dict(self) -> dict:
        return {
            "passed": self.passed,
            "mode": self.mode,
            "triples_checked": self.triples_checked,
            "violations": list(self.violations),
            "seed": self.seed,
        }


def check_mv_axioms(carrier, sample_budget: int = 1000, seed: int = DEFAULT_SEED) -> MVReport:
    """Verify the eight MV identities, exhaustively or on sampled triples."""
    violations = []
    plus, neg, zero, one = carrier.plus, carrier.neg, carrier.zero, carrier.one
    if neg(zero) != one:
        violations.append("0' != 1")

    def check_triple(a, b, c):
        if plus(a, b) != plus(b, a):
            violations.append(f"commutativity fails on ({a}, {b})")
        if plus(plus(a, b), c) != plus(a, plus(b, c)):
            violations.append(f"associativity fails on ({a}, {b}, {c})")
        if plus(a, neg(a)) != one:
            violations.append(f"a + a' != 1 at {a}")
        if plus(a, zero) != a:
            violations.append(f"a + 0 != a at {a}")
        if neg(neg(a)) != a:
            violations.append(f"a'' != a at {a}")
        if plus(a, one) != one:
            violations.append(f"a + 1 != 1 at {a}")
        lhs = plus(neg(plus(neg(a), b)), b)
        rhs = plus(neg(plus(a, neg(b))), a)
        if lhs != rhs:
            violations.append(f"(a'+b)'+b != (a+b')'+a on ({a}, {b})")

    if carrier.elements is not None:
        count = 0
        for a in carrier.elements:
            for b in carrier.elements:
                for c in carrier.elements:
                    check_triple(a, b, c)
                    count += 1
        return MVReport(
            passed=not violations,
            mode="exhaustive",
            triples_checked=count,
            violations=tuple(violations),
        )

    rng = random.Random(seed)
    for _ in range(sample_budget):
        check_triple(carrier.sample(rng), carrier.sample(rng), carrier.sample(rng))
    return MVReport(
        passed=not violations,
        mode="sampled",
        triples_checked=sample_budget,
        violations=tuple(violations),
        seed=seed,
    )


def effect_algebra_of_mv(mv: FiniteMV) -> FiniteEffectAlgebra:
    """The induced effect algebra: a + b kept only when a <= b' in the MV order."""
    labels = [str(e) for e in mv.elements]
    pos = {e: labels[i] for i, e in enumerate(mv.elements)}
    sums = []
    for a in mv.elements:
        for b in mv.elements:
            if mv.leq(a, mv.neg(b)):
                sums.append([pos[a], pos[b], pos[mv.plus(a, b)]])
    return validate(labels, pos[mv.zero], pos[mv.one], sums)


# ---------------------------------------------------------------------------
# Chain decompositions of the unit


def is_chain_ideal(alg: FiniteEffectAlgebra, p: ElementId) -> bool:
    """[0, p] totally ordered and closed under the inherited partial sum."""
    lo = derive_order(alg).leq
    interval = [x for x in alg.elements() if lo[x][p]]
    for x in interval:
        for y in interval:
            if not (lo[x][y] or lo[y][x]):
                return False
            s = alg.table[x][y]
            if s is not None and not lo[s][p]:
                return False
    return True


def interval_elements(alg: FiniteEffectAlgebra, p: ElementId) -> list[ElementId]:
    lo = derive_order(alg).leq
    return sorted(
        (x for x in alg.elements() if lo[x][p]),
        key=lambda x: sum(1 for y in alg.elements() if lo[y][x]),
    )


def find_chain_decomposition(
    alg: FiniteEffectAlgebra,
) -> list[tuple[ElementId, ...]]:
    """All multisets {p_n} of chain-ideal parts with total sum 1."""
    candidates = [
        p for p in alg.elements() if p != alg.zero and is_chain_ideal(alg, p)
    ]
    results: list[tuple[ElementId, ...]] = []

    def extend(parts: list[ElementId], acc: ElementId, start: int) -> None:
        for i in range(start, len(candidates)):
            c = candidates[i]
            s = alg.table[acc][c] if acc != alg.zero else c
            if s is None:
                continue
            if s == alg.unit:
                results.append(tuple(parts + [c]))
            else:
                extend(parts + [c], s, i)

    extend([], alg.zero, 0)
    results.sort(key=lambda t: (len(t), t))
    return results


# ---------------------------------------------------------------------------
# Hidden-variable construction


@dataclass(frozen=True)
class HiddenVariableModel:
    algebra: FiniteEffectAlgebra
    witness: CloningWitness
    decomposition: tuple[ElementId, ...]
    mv: FiniteMV
    h: dict  # ElementId -> tuple of interval ElementIds

    def to_json_dict(self) -> dict:
        labels = self.algebra.labels
        return {
            "decomposition": [labels[p] for p in self.decomposition],
            "h": {
                labels[x]: [labels[c] for c in img]
                for x, img in sorted(self.h.items())
            },
            "components": [
                {
                    "part": labels[p],
                    "interval": [
                        labels[x] for x in interval_elements(self.algebra, p)
                    ],
                }
                for p in self.decomposition
            ],
        }


def interval_mv(alg: FiniteEffectAlgebra, p: ElementId) -> FiniteMV:
    """Truncated-sum MV structure on the chain ideal [0, p]."""
    if not is_chain_ideal(alg, p):
        raise ConstructionFailed(
            f"[0, {alg.labels[p]}] is not a totally ordered sum-closed interval"
        )
    interval = interval_elements(alg, p)
    iset = set(interval)
    plus_map = {}
    for x in interval:
        for y in interval:
            s = alg.table[x][y]
            plus_map[(x, y)] = s if s is not None and s in iset else p
    neg_map = {}
    for x in interval:
        z = next((z for z in interval if alg.table[x][z] == p), None)
        if z is None:
            raise ConstructionFailed(
                f"no complement of {alg.labels[x]} inside [0, {alg.labels[p]}]"
            )
        neg_map[x] = z
    return FiniteMV(
        elements=tuple(interval),
        plus_map=plus_map,
        neg_map=neg_map,
        zero=alg.zero,
        one=p,
    )


def product_mv(components: list[FiniteMV]) -> FiniteMV:
    elements = tuple(iproduct(*(c.elements for c in components)))
    plus_map = {}
    for a in elements:
        for b in elements:
            plus_map[(a, b)] = tuple(
                c.plus(x, y) for c, x, y in zip(components, a, b)
            )
    neg_map = {a: tuple(c.neg(x) for c, x in zip(components, a)) for a in elements}
    return FiniteMV(
        elements=elements,
        plus_map=plus_map,
        neg_map=neg_map,
        zero=tuple(c.zero for c in components),
        one=tuple(c.one for c in components),
    )


def hidden_variable_construct(
    alg: FiniteEffectAlgebra,
    witness: CloningWitness,
    decomposition,
) -> HiddenVariableModel:
    """Build and fully verify the product-of-intervals hidden-variable model."""
    parts = tuple(decomposition)
    ok, violation = verify_witness(alg, witness.table)
    if not ok:
        raise ConstructionFailed(f"witness fails verification: {violation}")

    acc = alg.zero
    for p in parts:
        nxt = alg.table[acc][p] if acc != alg.zero else p
        if nxt is None:
            raise ConstructionFailed("decomposition parts are not summable")
        acc = nxt
    if acc != alg.unit:
        raise ConstructionFailed("decomposition does not sum to the unit")
    for p in parts:
        if not is_sharp(alg, p):
            raise ConstructionFailed(f"part {alg.labels[p]} is not sharp")

    components = [interval_mv(alg, p) for p in parts]
    mv = product_mv(components)
    axioms = check_mv_axioms(mv)
    if not axioms.passed:
        raise ConstructionFailed(
            f"product carrier violates the MV axioms: {axioms.violations[0]}"
        )

    h = {
        x: tuple(witness.table[p][x] for p in parts) for x in alg.elements()
    }
    mv_elems = set(mv.elements)
    for x, img in h.items():
        if img not in mv_elems:
            raise ConstructionFailed(
                f"h({alg.labels[x]}) leaves the product carrier"
            )
    if len(set(h.values())) != alg.size:
        raise ConstructionFailed("h is not injective")
    if len(mv.elements) != alg.size:
        raise ConstructionFailed("h is not a bijection onto the product carrier")
    for x in alg.elements():
        for y in alg.elements():
            if alg.table[x][y] is not None:
                if h[alg.table[x][y]] != mv.plus(h[x], h[y]):
                    raise ConstructionFailed(
                        f"h is not additive on ({alg.labels[x]}, {alg.labels[y]})"
                    )
    return HiddenVariableModel(
        algebra=alg, witness=witness, decomposition=parts, mv=mv, h=h
    )


def order_reflection_holds(model: HiddenVariableModel) -> bool:
    """x <= y' in the source iff h(x) <= h(y)' in the MV order, exhaustively."""
    alg = model.algebra
    lo = derive_order(alg).leq
    supp = derive_order(alg).supplement
    mv, h = model.mv, model.h
    for x in alg.elements():
        for y in alg.elements():
            src = lo[x][supp[y]]
            tgt = mv.leq(h[x], mv.neg(h[y]))
            if src != tgt:
                return False
    return True


def lift_state(model: HiddenVariableModel, omega) -> dict:
    """The lifted state on the MV carrier: value at (x_n) is omega(sum of x_n)."""
    alg = model.algebra
    out = {}
    for m in model.mv.elements:
        acc = alg.zero
        for x in m:
            nxt = alg.table[acc][x]
            if nxt is None:
                raise ConstructionFailed(
                    "component tuple is not orthosummable in the source algebra"
                )
            acc = nxt
        out[m] = omega[acc]
    return out


def check_lifted_state(model: HiddenVariableModel, omega, omega_bar) -> list[str]:
    """Hidden-variable conditions for one state and one candidate lift."""
    violations = []
    alg = model.algebra
    for q in alg.elements():
        if omega_bar[model.h[q]] != omega[q]:
            violations.append(
                f"lifted state disagrees with the source state at {alg.labels[q]}"
            )
    induced = effect_algebra_of_mv(model.mv)
    values = [omega_bar[e] for e in model.mv.elements]
    for msg in check_state(induced, values):
        violations.append(f"lift is not a state on the MV effect algebra: {msg}")
    return violations


@dataclass(frozen=True)
class HiddenVariableReport:
    passed: bool
    states_checked: int
    mixtures_checked: int
    order_reflection: bool
    violations: tuple[str, ...]
    seed: int

    def to_json_dict(self) -> dict:
        return {
            "passed": self.passed,
            "states_checked": self.states_checked,
            "mixtures_checked": self.mixtures_checked,
            "order_reflection": self.order_reflection,
            "violations": list(self.violations),
            "seed": self.seed,
        }


def verify_hidden_variable(
    model: HiddenVariableModel,
    polytope: StatePolytope,
    mixtures: int = 100,
    seed: int = DEFAULT_SEED,
) -> HiddenVariableReport:
    """Check the lift conditions on every vertex state plus random mixtures."""
    violations: list[str] = []
    states = [list(v) for v in polytope.vertices]
    rng = random.Random(seed)
    n_mix = 0
    if len(polytope.vertices) >= 1:
        for _ in range(mixtures):
            weights = [Fraction(rng.randint(1, 12)) for _ in polytope.vertices]
            total = sum(weights)
            mixed = [
                sum(w * v[p] for w, v in zip(weights, polytope.vertices)) / total
                for p in model.algebra.elements()
            ]
            states.append(mixed)
            n_mix += 1
    for omega in states:
        omega_bar = lift_state(model, omega)
        violations.extend(check_lifted_state(model, omega, omega_bar))
    reflection = order_reflection_holds(model)
    if not reflection:
        violations.append("order reflection of h fails")
    return HiddenVariableReport(
        passed=not violations,
        states_checked=len(polytope.vertices),
        mixtures_checked=n_mix,
        order_reflection=reflection,
        violations=tuple(violations),
        seed=seed,
    )
