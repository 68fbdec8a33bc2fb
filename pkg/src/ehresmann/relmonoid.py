"""Binary relations on a finite ground set, packed as bit masks.

Relations live on ground set {0, ..., n-1}; pair (x, y) is bit x*n + y.
Composition reads left to right: (x, z) in a b iff x a y and y b z for
some y.  dom/ran give the sub-identity relations on the domain and range.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product as iproduct

from .core import OpTableSemigroup

DEFAULT_CLOSURE_CAP = 100000


class ClosureOverflowError(RuntimeError):
    """Closure grew past the configured element cap."""


def closure_cap(cap: int | None = None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get("EHRESMANN_MAX_CLOSURE")
    return int(env) if env else DEFAULT_CLOSURE_CAP


@dataclass(frozen=True)
class Rel:
    n: int
    bits: int

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "Rel":
        bits = 0
        for x, y in pairs:
            if not (0 <= x < n and 0 <= y < n):
                raise ValueError(f"pair ({x},{y}) outside ground set of size {n}")
            bits |= 1 << (x * n + y)
        return cls(n, bits)

    def pairs(self):
        return tuple((x, y) for x in range(self.n) for y in range(self.n)
                     if self.bits >> (x * self.n + y) & 1)

    def has(self, x: int, y: int) -> bool:
        return bool(self.bits >> (x * self.n + y) & 1)

    def row(self, x: int) -> int:
        return self.bits >> (x * self.n) & ((1 << self.n) - 1)

    def issubset(self, other: "Rel") -> bool:
        return self.bits & other.bits == self.bits

    def converse(self) -> "Rel":
        return Rel.from_pairs(self.n, [(y, x) for x, y in self.pairs()])

    def __repr__(self):
        if self.bits == 0:
            return "Rel{}"
        return "Rel{" + ",".join(f"({x},{y})" for x, y in self.pairs()) + "}"


def identity(n: int) -> Rel:
    return Rel.from_pairs(n, [(x, x) for x in range(n)])


def empty(n: int) -> Rel:
    return Rel(n, 0)


def diagonal(n: int, members) -> Rel:
    return Rel.from_pairs(n, [(x, x) for x in members])


def compose(a: Rel, b: Rel) -> Rel:
    if a.n != b.n:
        raise ValueError(f"ground sizes differ: {a.n} vs {b.n}")
    n = a.n
    rows = [b.row(y) for y in range(n)]
    bits = 0
    for x in range(n):
        m = a.row(x)
        out = 0
        y = 0
        while m:
            if m & 1:
                out |= rows[y]
            m >>= 1
            y += 1
        bits |= out << (x * n)
    return Rel(n, bits)


def dom_ran(a: Rel):
    dom_members = [x for x in range(a.n) if a.row(x)]
    ran_members = [y for y in range(a.n)
                   if any(a.has(x, y) for x in range(a.n))]
    return diagonal(a.n, dom_members), diagonal(a.n, ran_members)


def dom(a: Rel) -> Rel:
    return dom_ran(a)[0]


def ran(a: Rel) -> Rel:
    return dom_ran(a)[1]


def classify(a: Rel) -> dict:
    """Row/column uniqueness flags: PT = partial maps, PT^c = their converses."""
    in_pt = all(bin(a.row(x)).count("1") <= 1 for x in range(a.n))
    in_ptc = all(sum(a.has(x, y) for x in range(a.n)) <= 1 for y in range(a.n))
    return {"in_PT": in_pt, "in_PTc": in_ptc, "in_I": in_pt and in_ptc}


def is_sub_identity(a: Rel) -> bool:
    return a.issubset(identity(a.n))


def natural_le(a: Rel, b: Rel) -> bool:
    """a <= b in the Ehresmann order: a = e b f for sub-identities e, f."""
    if a.n != b.n:
        raise ValueError("ground sizes differ")
    n = a.n
    subsets = range(1 << n)
    diags = [diagonal(n, [x for x in range(n) if s >> x & 1]) for s in subsets]
    for e in diags:
        eb = compose(e, b)
        for f in diags:
            if compose(eb, f) == a:
                return True
    return False


def all_relations(n: int):
    return [Rel(n, bits) for bits in range(1 << (n * n))]


def all_partial_maps(n: int):
    """All relations with at most one image per point ((n+1)^n of them)."""
    out = []
    for choice in iproduct(range(n + 1), repeat=n):
        pairs = [(x, y) for x, y in enumerate(choice) if y < n]
        out.append(Rel.from_pairs(n, pairs))
    return out


def all_partial_comaps(n: int):
    return [a.converse() for a in all_partial_maps(n)]


def all_partial_bijections(n: int):
    return [a for a in all_partial_maps(n) if classify(a)["in_I"]]


@dataclass
class RelationAlgebra:
    n: int
    elements: list  # Rel values, closed under compose/dom/ran
    index: dict

    def to_semigroup(self) -> OpTableSemigroup:
        k = len(self.elements)
        mult = [[self.index[compose(a, b)] for b in self.elements]
                for a in self.elements]
        plus = [self.index[dom(a)] for a in self.elements]
        star = [self.index[ran(a)] for a in self.elements]
        names = [repr(a) for a in self.elements]
        return OpTableSemigroup(k, mult, plus, star, names)


def generate(n: int, generators, cap: int | None = None) -> RelationAlgebra:
    """Least set of relations containing the generators and closed under
    composition, dom and ran."""
    cap = closure_cap(cap)
    gens = sorted(set(generators), key=lambda r: r.bits)
    for g in gens:
        if g.n != n:
            raise ValueError("generator ground size mismatch")
    elements = []
    index = {}

    def add(r):
        if r not in index:
            if len(elements) >= cap:
                raise ClosureOverflowError(
                    f"closure exceeded cap of {cap} elements")
            index[r] = len(elements)
            elements.append(r)
            return True
        return False

    for g in gens:
        add(g)
    frontier = list(elements)
    while frontier:
        new = []
        for a in frontier:
            d, r = dom_ran(a)
            for x in (d, r):
                if add(x):
                    new.append(x)
        snapshot = list(elements)
        for a in frontier:
            for b in snapshot:
                for c in (compose(a, b), compose(b, a)):
                    if add(c):
                        new.append(c)
        frontier = new
    return RelationAlgebra(n, elements, index)


def full_B(n: int) -> RelationAlgebra:
    els = all_relations(n)
    return RelationAlgebra(n, els, {r: i for i, r in enumerate(els)})


def full_PT(n: int) -> RelationAlgebra:
    els = sorted(all_partial_maps(n), key=lambda r: r.bits)
    return RelationAlgebra(n, els, {r: i for i, r in enumerate(els)})


def full_PTc(n: int) -> RelationAlgebra:
    els = sorted(all_partial_comaps(n), key=lambda r: r.bits)
    return RelationAlgebra(n, els, {r: i for i, r in enumerate(els)})


def full_I(n: int) -> RelationAlgebra:
    els = sorted(all_partial_bijections(n), key=lambda r: r.bits)
    return RelationAlgebra(n, els, {r: i for i, r in enumerate(els)})
