"""The non-atomic interval-function model: [0,1]-valued functions on N points.

The carrier is uncountable, so it is represented intensionally: operations
act on explicit rational vectors, and the model's laws are checked on seeded
samples plus adversarial corners.  All arithmetic is exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraError, FiniteEffectAlgebra, find_isomorphism, validate
from .catalog import boolean_powerset
from .mv import SampledMV

DEFAULT_SEED = 20260823


def _as_unit_fraction(x) -> Fraction:
    f = Fraction(x)
    if not 0 <= f <= 1:
        raise AlgebraError(f"value {f} outside [0, 1]")
    return f


@dataclass(frozen=True)
class IntervalFunction:
    """An exact-rational function on {1..N} with values in [0, 1]."""

    values: tuple[Fraction, ...]

    def __init__(self, values):
        object.__setattr__(
            self, "values", tuple(_as_unit_fraction(v) for v in values)
        )

    @property
    def domain_size(self) -> int:
        return len(self.values)

    def __call__(self, x: int) -> Fraction:
        return self.values[x]

    def to_json_dict(self) -> dict:
        return {
            "n": self.domain_size,
            "values": [f"{v.numerator}/{v.denominator}" for v in self.values],
        }


@dataclass(frozen=True)
class SquareIntervalFunction:
    """An exact-rational function on {1..N} x {1..N} with values in [0, 1]."""

    values: tuple[tuple[Fraction, ...], ...]

    def __init__(self, values):
        rows = tuple(tuple(_as_unit_fraction(v) for v in row) for row in values)
        if any(len(row) != len(rows) for row in rows):
            raise AlgebraError("square function table is not square")
        object.__setattr__(self, "values", rows)

    @property
    def side(self) -> int:
        return len(self.values)

    def __call__(self, x: int, y: int) -> Fraction:
        return self.values[x][y]

    def to_json_dict(self) -> dict:
        return {
            "n": self.side,
            "values": [
                f"{v.numerator}/{v.denominator}" for row in self.values for v in row
            ],
        }


def constant(n: int, value) -> IntervalFunction:
    return IntervalFunction([Fraction(value)] * n)


def indicator(n: int, support) -> IntervalFunction:
    support = set(support)
    return IntervalFunction(
        [Fraction(1) if x in support else Fraction(0) for x in range(n)]
    )


def pointwise_sum(f: IntervalFunction, g: IntervalFunction) -> IntervalFunction | None:
    """The partial sum (f+g)(x); None where some component exceeds 1."""
    if f.domain_size != g.domain_size:
        raise AlgebraError("domain sizes differ")
    sums = [a + b for a, b in zip(f.values, g.values)]
    if any(s > 1 for s in sums):
        return None
    return IntervalFunction(sums)


def complement(f: IntervalFunction) -> IntervalFunction:
    return IntervalFunction([1 - v for v in f.values])


def outer(f: IntervalFunction, g: IntervalFunction) -> SquareIntervalFunction:
    """The tensor-side element with table f(x) * g(y)."""
    if f.domain_size != g.domain_size:
        raise AlgebraError("domain sizes differ")
    return SquareIntervalFunction(
        [[a * b for b in g.values] for a in f.values]
    )


def square_sum(
    F: SquareIntervalFunction, G: SquareIntervalFunction
) -> SquareIntervalFunction | None:
    if F.side != G.side:
        raise AlgebraError("sides differ")
    rows = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(F.values, G.values)]
    if any(v > 1 for row in rows for v in row):
        return None
    return SquareIntervalFunction(rows)


def diagonal_clone(F: SquareIntervalFunction) -> IntervalFunction:
    """Restriction to the diagonal: the model's cloning map."""
    return IntervalFunction([F.values[x][x] for x in range(F.side)])


def product_bimorphism(f: IntervalFunction, g: IntervalFunction) -> IntervalFunction:
    """Pointwise product: the diagonal clone of the outer product of f and g."""
    if f.domain_size != g.domain_size:
        raise AlgebraError("domain sizes differ")
    return IntervalFunction([a * b for a, b in zip(f.values, g.values)])


def is_sharp_function(f: IntervalFunction) -> bool:
    # the order is pointwise, so the meet with the complement is pointwise min
    return all(min(v, 1 - v) == 0 for v in f.values)


def luka_plus(a, b) -> Fraction:
    return min(Fraction(a) + Fraction(b), Fraction(1))


def luka_neg(a) -> Fraction:
    return 1 - Fraction(a)


def sample_fraction(rng: random.Random, max_denominator: int = 24) -> Fraction:
    den = rng.randint(1, max_denominator)
    return Fraction(rng.randint(0, den), den)


def sample_function(
    rng: random.Random, n: int, max_denominator: int = 24
) -> IntervalFunction:
    return IntervalFunction([sample_fraction(rng, max_denominator) for _ in range(n)])


def lukasiewicz_rationals(max_denominator: int = 24) -> SampledMV:
    """The [0,1] Lukasiewicz MV prototype, probed on sampled rationals."""
    return SampledMV(
        plus=luka_plus,
        neg=luka_neg,
        zero=Fraction(0),
        one=Fraction(1),
        sample=lambda rng: sample_fraction(rng, max_denominator),
    )


def indicator_algebra(n: int) -> FiniteEffectAlgebra:
    """The {0,1}-valued elements with the inherited (disjoint-support) sums."""
    if n > 16:
        raise AlgebraError("indicator enumeration supports N <= 16")
    masks = sorted(range(1 << n), key=lambda m: (bin(m).count("1"), m))

    def label(m):
        return "{" + ",".join(str(i + 1) for i in range(n) if m >> i & 1) + "}"

    sums = []
    for a in masks:
        for b in masks:
            fa = indicator(n, {i for i in range(n) if a >> i & 1})
            fb = indicator(n, {i for i in range(n) if b >> i & 1})
            s = pointwise_sum(fa, fb)
            if s is not None:
                c = sum(1 << i for i in range(n) if s.values[i] == 1)
                sums.append([label(a), label(b), label(c)])
    return validate([label(m) for m in masks], label(0), label((1 << n) - 1), sums)


@dataclass(frozen=True)
class SharpElementsReport:
    n: int
    sharp_count: int
    all_indicators_sharp: bool
    closed_under_sum_and_complement: bool
    sampled_nonindicators_unsharp: bool
    isomorphic_to_powerset: bool | None  # None when N exceeds the powerset cap
    seed: int

    @property
    def passed(self) -> bool:
        return (
            self.all_indicators_sharp
            and self.closed_under_sum_and_complement
            and self.sampled_nonindicators_unsharp
            and self.isomorphic_to_powerset in (True, None)
        )

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "sharp_count": self.sharp_count,
            "all_indicators_sharp": self.all_indicators_sharp,
            "closed_under_sum_and_complement": self.closed_under_sum_and_complement,
            "sampled_nonindicators_unsharp": self.sampled_nonindicators_unsharp,
            "isomorphic_to_powerset": self.isomorphic_to_powerset,
            "seed": self.seed,
        }


def sharp_elements_report(
    n: int, sample_budget: int = 200, seed: int = DEFAULT_SEED
) -> SharpElementsReport:
    """Check that the sharp elements form the expected Boolean subalgebra."""
    subsets = [frozenset(i for i in range(n) if m >> i & 1) for m in range(1 << n)]
    indicators = {s: indicator(n, s) for s in subsets}

    all_sharp = all(is_sharp_function(f) for f in indicators.values())

    closed = True
    for s in subsets:
        if not is_sharp_function(complement(indicators[s])):
            closed = False
    for s in subsets:
        for t in subsets:
            total = pointwise_sum(indicators[s], indicators[t])
            if s & t:
                if total is not None:
                    closed = False
            elif total is None or not is_sharp_function(total):
                closed = False

    rng = random.Random(seed)
    nonind_ok = True
    for _ in range(sample_budget):
        f = sample_function(rng, n)
        if any(0 < v < 1 for v in f.values) and is_sharp_function(f):
            nonind_ok = False

    iso: bool | None = None
    if n <= 5:
        iso = find_isomorphism(indicator_algebra(n), boolean_powerset(n)) is not None

    return SharpElementsReport(
        n=n,
        sharp_count=len(subsets),
        all_indicators_sharp=all_sharp,
        closed_under_sum_and_complement=closed,
        sampled_nonindicators_unsharp=nonind_ok,
        isomorphic_to_powerset=iso,
        seed=seed,
    )
