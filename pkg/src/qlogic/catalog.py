"""Deterministic constructors for the canonical test algebras.

Labels are human-meaningful and fixed per constructor so serialized output
is stable across runs.
"""

from __future__ import annotations

from itertools import product as iproduct

from .algebra import AlgebraError, FiniteEffectAlgebra, validate

TOTAL_SIZE_CAP = 64


class BoundExceeded(AlgebraError):
    pass


def boolean_powerset(k: int) -> FiniteEffectAlgebra:
    """Subsets of {1..k} under disjoint union; the Boolean reference family."""
    if not 1 <= k <= 5:
        raise BoundExceeded(f"boolean_powerset supports 1 <= k <= 5, got {k}")
    masks = sorted(range(1 << k), key=lambda m: (bin(m).count("1"), m))

    def label(m):
        return "{" + ",".join(str(i + 1) for i in range(k) if m >> i & 1) + "}"

    sums = []
    for a in masks:
        for b in masks:
            if a & b == 0:
                sums.append([label(a), label(b), label(a | b)])
    return validate([label(m) for m in masks], label(0), label((1 << k) - 1), sums)


def chain(d: int) -> FiniteEffectAlgebra:
    """The chain {0, 1/d, ..., 1} with k/d + m/d defined iff k + m <= d."""
    if not 1 <= d <= 12:
        raise BoundExceeded(f"chain supports 1 <= D <= 12, got {d}")

    def label(k):
        if k == 0:
            return "0"
        if k == d:
            return "1"
        return f"{k}/{d}"

    sums = [
        [label(a), label(b), label(a + b)]
        for a in range(d + 1)
        for b in range(d + 1)
        if a + b <= d
    ]
    return validate([label(k) for k in range(d + 1)], "0", "1", sums)


def mo(n: int) -> FiniteEffectAlgebra:
    """The horizontal-sum orthoalgebra MO_n: n supplement pairs glued at 0, 1."""
    if not 1 <= n <= 6:
        raise BoundExceeded(f"mo supports 1 <= n <= 6, got {n}")
    labels = ["0", "1"]
    for i in range(1, n + 1):
        labels += [f"a{i}", f"a{i}'"]
    sums = [["0", lbl, lbl] for lbl in labels]
    sums += [[f"a{i}", f"a{i}'", "1"] for i in range(1, n + 1)]
    return validate(labels, "0", "1", sums)


def wright_triangle() -> FiniteEffectAlgebra:
    """Three 3-atom blocks pasted in a loop; orthoalgebra violating coherence.

    Blocks {a,b,c}, {c,d,e}, {e,f,a}: a, c, e are mutually orthogonal but
    (a + c) + e is undefined.
    """
    atom_names = ["a", "b", "c", "d", "e", "f"]
    labels = ["0", "1"] + atom_names + [x + "'" for x in atom_names]
    blocks = [("a", "b", "c"), ("c", "d", "e"), ("e", "f", "a")]
    sums = [["0", lbl, lbl] for lbl in labels]
    for block in blocks:
        for i in range(3):
            x, y, z = block[i], block[(i + 1) % 3], block[(i + 2) % 3]
            sums.append([x, y, z + "'"])
            sums.append([x, x + "'", "1"])
            sums.append([x + "'", x, "1"])
    return validate(labels, "0", "1", sums)


def horizontal_sum(*components: FiniteEffectAlgebra) -> FiniteEffectAlgebra:
    """Glue components at shared 0 and 1; no sums across components."""
    if len(components) < 2:
        raise BoundExceeded("horizontal_sum needs at least two components")
    labels = ["0", "1"]
    maps = []
    for k, comp in enumerate(components, start=1):
        m = {}
        for p in comp.elements():
            if p == comp.zero:
                m[p] = "0"
            elif p == comp.unit:
                m[p] = "1"
            else:
                m[p] = f"{k}:{comp.labels[p]}"
                labels.append(m[p])
        maps.append(m)
    if len(labels) > TOTAL_SIZE_CAP:
        raise BoundExceeded(f"horizontal sum has {len(labels)} elements (cap 64)")
    sums = []
    for comp, m in zip(components, maps):
        for p in comp.elements():
            for q in comp.elements():
                c = comp.table[p][q]
                if c is not None:
                    sums.append([m[p], m[q], m[c]])
    return validate(labels, "0", "1", sums)


def product(*components: FiniteEffectAlgebra) -> FiniteEffectAlgebra:
    """Direct product with componentwise partial sums."""
    if len(components) < 2:
        raise BoundExceeded("product needs at least two components")
    size = 1
    for comp in components:
        size *= comp.size
    if size > TOTAL_SIZE_CAP:
        raise BoundExceeded(f"product has {size} elements (cap 64)")

    def label(tup):
        return "(" + ",".join(c.labels[p] for c, p in zip(components, tup)) + ")"

    elems = list(iproduct(*(range(c.size) for c in components)))
    sums = []
    for a in elems:
        for b in elems:
            cs = [comp.table[x][y] for comp, x, y in zip(components, a, b)]
            if all(c is not None for c in cs):
                sums.append([label(a), label(b), label(tuple(cs))])
    zero = label(tuple(c.zero for c in components))
    unit = label(tuple(c.unit for c in components))
    return validate([label(t) for t in elems], zero, unit, sums)


# ---------------------------------------------------------------------------
# Spec strings for the CLI: e.g. "chain(3)", "product(chain(2),chain(2))"

_CONSTRUCTORS = {
    "boolean_powerset": boolean_powerset,
    "chain": chain,
    "mo": mo,
    "wright_triangle": wright_triangle,
    "horizontal_sum": horizontal_sum,
    "product": product,
}


def build_spec(text: str) -> FiniteEffectAlgebra:
    """Build a catalog algebra from a spec string like "mo(2)"."""
    expr, rest = _parse(text.strip())
    if rest.strip():
        raise BoundExceeded(f"trailing input in catalog spec: {rest!r}")
    return expr


def _parse(text: str):
    text = text.lstrip()
    name_end = 0
    while name_end < len(text) and (text[name_end].isalnum() or text[name_end] == "_"):
        name_end += 1
    name = text[:name_end]
    if name not in _CONSTRUCTORS:
        raise BoundExceeded(f"unknown catalog constructor {name!r}")
    rest = text[name_end:].lstrip()
    args = []
    if rest.startswith("("):
        rest = rest[1:]
        while True:
            rest = rest.lstrip()
            if rest.startswith(")"):
                rest = rest[1:]
                break
            if rest[:1].isdigit():
                num_end = 0
                while num_end < len(rest) and rest[num_end].isdigit():
                    num_end += 1
                args.append(int(rest[:num_end]))
                rest = rest[num_end:]
            else:
                sub, rest = _parse(rest)
                args.append(sub)
            rest = rest.lstrip()
            if rest.startswith(","):
                rest = rest[1:]
    return _CONSTRUCTORS[name](*args), rest
