"""Finite Ehresmann semigroups presented by operation tables.

An element is its index in the multiplication table; the two unary tables
send each element to its domain projection (``plus``) and range projection
(``star``).  Names are display strings only and never affect identity.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .report import (AxiomReport, Check, CondResult, FAIL, INCONCLUSIVE,
                     PASS, combine_status)


class MalformedTableError(ValueError):
    """An operation table has the wrong shape or an out-of-range entry."""


@dataclass
class OpTableSemigroup:
    n: int
    mult: list
    plus: list
    star: list
    names: list | None = None

    def __post_init__(self):
        if self.n <= 0:
            raise MalformedTableError("need at least one element")
        if len(self.mult) != self.n:
            raise MalformedTableError("mult table must have n rows")
        for i, row in enumerate(self.mult):
            if len(row) != self.n:
                raise MalformedTableError(f"mult row {i} has length {len(row)}")
            for j, v in enumerate(row):
                if not (isinstance(v, int) and 0 <= v < self.n):
                    raise MalformedTableError(f"mult[{i}][{j}] = {v!r} out of range")
        for label, table in (("plus", self.plus), ("star", self.star)):
            if len(table) != self.n:
                raise MalformedTableError(f"{label} table must have length n")
            for i, v in enumerate(table):
                if not (isinstance(v, int) and 0 <= v < self.n):
                    raise MalformedTableError(f"{label}[{i}] = {v!r} out of range")
        if self.names is not None and len(self.names) != self.n:
            raise MalformedTableError("names must have length n")

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def prod(self, seq) -> int:
        seq = list(seq)
        if not seq:
            raise ValueError("empty product")
        acc = seq[0]
        for s in seq[1:]:
            acc = self.mult[acc][s]
        return acc

    def name(self, i: int) -> str:
        return self.names[i] if self.names else str(i)

    def elements(self):
        return range(self.n)


def verify_ehresmann(S: OpTableSemigroup) -> AxiomReport:
    """Check associativity and the eight defining unary identities.

    Each check is reported PASS or FAIL with a witness tuple on FAIL.
    """
    m, p, st = S.mult, S.plus, S.star
    rng = range(S.n)
    checks = []

    w = None
    for x in rng:
        for y in rng:
            for z in rng:
                if m[m[x][y]][z] != m[x][m[y][z]]:
                    w = (x, y, z)
                    break
            if w:
                break
        if w:
            break
    checks.append(Check("associativity", w is None, w))

    def check1(name, pred):
        for x in rng:
            if not pred(x):
                checks.append(Check(name, False, (x,)))
                return
        checks.append(Check(name, True))

    def check2(name, pred):
        for x in rng:
            for y in rng:
                if not pred(x, y):
                    checks.append(Check(name, False, (x, y)))
                    return
        checks.append(Check(name, True))

    check1("x^+ x = x", lambda x: m[p[x]][x] == x)
    check2("x^+ y^+ = y^+ x^+", lambda x, y: m[p[x]][p[y]] == m[p[y]][p[x]])
    check2("(x y)^+ = (x y^+)^+", lambda x, y: p[m[x][y]] == p[m[x][p[y]]])
    check1("x x^* = x", lambda x: m[x][st[x]] == x)
    check2("x^* y^* = y^* x^*", lambda x, y: m[st[x]][st[y]] == m[st[y]][st[x]])
    check2("(x y)^* = (x^* y)^*", lambda x, y: st[m[x][y]] == st[m[st[x]][y]])
    check1("(x^+)^* = x^+", lambda x: st[p[x]] == p[x])
    check1("(x^*)^+ = x^*", lambda x: p[st[x]] == st[x])
    return AxiomReport(checks)


def verify_restriction(S: OpTableSemigroup, side: str = "both") -> AxiomReport:
    """Check the ample identity for the requested side(s)."""
    if side not in ("left", "right", "both"):
        raise ValueError(f"side must be left, right or both, not {side!r}")
    m, p, st = S.mult, S.plus, S.star
    rng = range(S.n)
    checks = []
    if side in ("left", "both"):
        w = None
        for x in rng:
            for y in rng:
                if m[x][p[y]] != m[p[m[x][y]]][x]:
                    w = (x, y)
                    break
            if w:
                break
        checks.append(Check("x y^+ = (x y)^+ x", w is None, w))
    if side in ("right", "both"):
        w = None
        for x in rng:
            for y in rng:
                if m[st[x]][y] != m[y][st[m[x][y]]]:
                    w = (x, y)
                    break
            if w:
                break
        checks.append(Check("x^* y = y (x y)^*", w is None, w))
    return AxiomReport(checks)


@dataclass
class ProjectionSet:
    members: tuple
    semigroup: OpTableSemigroup

    def meet(self, e: int, f: int) -> int:
        return self.semigroup.mult[e][f]

    def leq(self, e: int, f: int) -> bool:
        return self.semigroup.mult[e][f] == e

    def below(self, e: int):
        return [g for g in self.members if self.leq(g, e)]

    def __contains__(self, e):
        return e in self.members

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)


def projections(S: OpTableSemigroup) -> ProjectionSet:
    """The common image of the two unary operations, as a meet semilattice."""
    plus_img = sorted(set(S.plus))
    star_img = sorted(set(S.star))
    if plus_img != star_img:
        raise ValueError(
            f"images of plus {plus_img} and star {star_img} differ; "
            "the (x^+)^* = x^+ identities do not hold on this data")
    for e in plus_img:
        if S.plus[e] != e or S.star[e] != e:
            raise ValueError(f"projection {e} is not fixed by the unary operations")
    return ProjectionSet(tuple(plus_img), S)


@dataclass
class OrderRelations:
    le_l: list
    le_r: list
    le: list


def natural_orders(S: OpTableSemigroup) -> OrderRelations:
    """The natural left/right/two-sided partial orders as boolean tables.

    a <=_l b iff a = a^+ b;  a <=_r b iff a = b a^*;
    a <= b iff a = a^+ b f for some projection f.
    """
    m, p, st = S.mult, S.plus, S.star
    P = projections(S).members
    rng = range(S.n)
    le_l = [[m[p[a]][b] == a for b in rng] for a in rng]
    le_r = [[m[b][st[a]] == a for b in rng] for a in rng]
    le = [[any(m[m[p[a]][b]][f] == a for f in P) for b in rng] for a in rng]
    return OrderRelations(le_l, le_r, le)


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


@dataclass
class Congruence:
    n: int
    class_of: list
    classes: list

    def same(self, a: int, b: int) -> bool:
        return self.class_of[a] == self.class_of[b]

    def num_classes(self) -> int:
        return len(self.classes)


def _congruence_from_unionfind(uf, n) -> Congruence:
    reps = {}
    classes = []
    class_of = [0] * n
    for x in range(n):
        r = uf.find(x)
        if r not in reps:
            reps[r] = len(classes)
            classes.append([])
        class_of[x] = reps[r]
        classes[reps[r]].append(x)
    return Congruence(n, class_of, [tuple(c) for c in classes])


def sigma(S: OpTableSemigroup):
    """Least congruence identifying all projections, plus the reduced quotient.

    Union-find seeded with all projection pairs, closed under left and right
    translation by every element until fixpoint.  Closure under the unary
    operations is automatic: once the projections form a single class, x = y
    forces x^+ = y^+ because both sides are projections.
    """
    P = projections(S).members
    m = S.mult
    uf = _UnionFind(S.n)
    work = deque((P[0], e) for e in P[1:])
    while work:
        a, b = work.popleft()
        if not uf.union(a, b):
            continue
        for z in range(S.n):
            za, zb = m[z][a], m[z][b]
            if uf.find(za) != uf.find(zb):
                work.append((za, zb))
            az, bz = m[a][z], m[b][z]
            if uf.find(az) != uf.find(bz):
                work.append((az, bz))
    cong = _congruence_from_unionfind(uf, S.n)

    co = cong.class_of
    for x in range(S.n):
        assert co[S.plus[x]] == co[P[0]] and co[S.star[x]] == co[P[0]]

    reps = [cls[0] for cls in cong.classes]
    k = len(reps)
    qmult = [[co[m[reps[i]][reps[j]]] for j in range(k)] for i in range(k)]
    qplus = [co[S.plus[reps[i]]] for i in range(k)]
    qstar = [co[S.star[reps[i]]] for i in range(k)]
    qnames = ["[" + S.name(reps[i]) + "]" for i in range(k)]
    quotient = OpTableSemigroup(k, qmult, qplus, qstar, qnames)
    return cong, quotient


def proper_elements(S: OpTableSemigroup, cong: Congruence | None = None) -> frozenset:
    """Elements uniquely determined by (s^+, s^*, sigma-class of s)."""
    if cong is None:
        cong, _ = sigma(S)
    fibers = {}
    for s in range(S.n):
        key = (S.plus[s], S.star[s], cong.class_of[s])
        fibers.setdefault(key, []).append(s)
    return frozenset(s for group in fibers.values() if len(group) == 1
                     for s in group)


def is_strictly_proper(S: OpTableSemigroup, cong: Congruence | None = None) -> bool:
    return len(proper_elements(S, cong)) == S.n


def is_matching(S: OpTableSemigroup, seq) -> bool:
    """True iff star of each factor equals plus of the next."""
    seq = list(seq)
    if not seq:
        raise ValueError("empty sequence")
    return all(S.star[seq[i]] == S.plus[seq[i + 1]] for i in range(len(seq) - 1))


def _corestrict_factorization(S: OpTableSemigroup, seq, e: int):
    """Shrink a matching factorization on the right down to range projection e.

    Returns s_n' = s_n e, s_{n-1}' = s_{n-1} (s_n')^+, ... ; the result is a
    matching factorization of (product e) with componentwise smaller factors.
    """
    m, p = S.mult, S.plus
    out = list(seq)
    out[-1] = m[out[-1]][e]
    for i in range(len(out) - 2, -1, -1):
        out[i] = m[out[i]][p[out[i + 1]]]
    return out


def matchify(S: OpTableSemigroup, seq):
    """Shrink the factors of a product so they match, keeping the product.

    Recursive: match the prefix, split off t^* s_n on the right, then run a
    corestriction pass over the matched prefix.
    """
    seq = list(seq)
    if not seq:
        raise ValueError("empty sequence")
    if len(seq) == 1:
        return seq
    head = matchify(S, seq[:-1])
    t = S.prod(seq[:-1])
    sn = seq[-1]
    last = S.mul(S.star[t], sn)
    e = S.mul(S.star[t], S.plus[sn])
    head = _corestrict_factorization(S, head, e)
    return head + [last]


def _matching_products(S: OpTableSemigroup, Y):
    """Map element -> least length of a matching factorization over Y.

    Saturates the product automaton, so an element is absent iff it has no
    matching Y-factorization of any length.
    """
    m, p, st = S.mult, S.plus, S.star
    minlen = {y: 1 for y in Y}
    frontier = set(Y)
    length = 1
    while frontier:
        length += 1
        new = set()
        for prod in frontier:
            for y in Y:
                if p[y] == st[prod]:
                    q = m[prod][y]
                    if q not in minlen:
                        minlen[q] = length
                        new.add(q)
        frontier = new
    return minlen


def _enumerate_matching_factorizations(S, Y, target, max_len, cap):
    """All matching Y-sequences with the given product, up to max_len.

    Returns (list of tuples, truncated flag).
    """
    m, p, st = S.mult, S.plus, S.star
    Y = sorted(Y)
    found = []
    truncated = False
    stack = [((y,), y) for y in Y]
    while stack:
        seq, prod = stack.pop()
        if prod == target:
            found.append(seq)
            if len(found) > cap:
                truncated = True
                break
        if len(seq) < max_len:
            for y in Y:
                if p[y] == st[seq[-1]]:
                    stack.append((seq + (y,), m[prod][y]))
    return found, truncated


def _block_expansions(S, Y, max_block, cap):
    """For each y in Y, matching Y-sequences of length 2..max_block with product y."""
    out = {}
    truncated = False
    for y in sorted(Y):
        seqs, trunc = _enumerate_matching_factorizations(S, Y, y, max_block, cap)
        out[y] = [s for s in seqs if len(s) >= 2]
        truncated = truncated or trunc
    return out, truncated


def _equivalent_factorizations(S, Yset, start, goal, max_len, expansions, budget):
    """BFS over contract/expand moves; True / False(saturated) / None(budget)."""
    if start == goal:
        return True
    seen = {start}
    frontier = deque([start])
    pruned = False
    while frontier:
        fact = frontier.popleft()
        neighbours = []
        k = len(fact)
        for i in range(k):
            for j in range(i + 1, k):
                prod = S.prod(fact[i:j + 1])
                if prod in Yset:
                    neighbours.append(fact[:i] + (prod,) + fact[j + 1:])
        for i in range(k):
            for block in expansions.get(fact[i], ()):
                if k - 1 + len(block) <= max_len:
                    neighbours.append(fact[:i] + block + fact[i + 1:])
        for nb in neighbours:
            if nb == goal:
                return True
            if nb not in seen:
                if len(seen) >= budget:
                    pruned = True
                    continue
                seen.add(nb)
                frontier.append(nb)
    return None if pruned else False


@dataclass
class ProperIdealReport:
    conditions: list  # CondResult per condition

    @property
    def status(self) -> str:
        return combine_status(c.status for c in self.conditions)

    def __getitem__(self, name):
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)

    def lines(self):
        return [c.line() for c in self.conditions]


def check_proper_ideal(S: OpTableSemigroup, Y, max_len: int,
                       budget: int = 20000) -> ProperIdealReport:
    """Check the defining conditions of a proper generating ideal Y.

    (1) projections lie in Y; (2) Y is an order ideal; (3) Y-elements are
    proper; (4) every element has a matching Y-factorization of length at
    most max_len; (5) factorizations of length at most max_len are pairwise
    equivalent under contract/expand moves, searched with intermediate
    length cap max_len + 2.  Condition (5) is a bounded search and may come
    back INCONCLUSIVE; factorization length is unbounded in general, so no
    completeness is claimed.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    Yset = frozenset(Y)
    for y in Yset:
        if not 0 <= y < S.n:
            raise ValueError(f"Y member {y} out of range")
    conds = []

    P = projections(S)
    missing = [e for e in P if e not in Yset]
    conds.append(CondResult("projections_in_Y", FAIL if missing else PASS,
                            tuple(missing) or None))

    orders = natural_orders(S)
    ideal_witness = None
    for y in sorted(Yset):
        for s in range(S.n):
            if orders.le[s][y] and s not in Yset:
                ideal_witness = (s, y)
                break
        if ideal_witness:
            break
    conds.append(CondResult("Y_is_order_ideal", FAIL if ideal_witness else PASS,
                            ideal_witness))

    cong, _ = sigma(S)
    fibers = {}
    for s in range(S.n):
        fibers.setdefault((S.plus[s], S.star[s], cong.class_of[s]), []).append(s)
    improper_witness = None
    for y in sorted(Yset):
        group = fibers[(S.plus[y], S.star[y], cong.class_of[y])]
        if len(group) > 1:
            others = [t for t in group if t != y]
            improper_witness = (y, others[0])
            break
    conds.append(CondResult("Y_elements_proper",
                            FAIL if improper_witness else PASS, improper_witness))

    minlen = _matching_products(S, Yset)
    unreachable = [s for s in range(S.n) if s not in minlen]
    too_long = [s for s in range(S.n) if minlen.get(s, 0) > max_len]
    if unreachable:
        conds.append(CondResult("factorization_exists", FAIL, (unreachable[0],)))
    elif too_long:
        conds.append(CondResult("factorization_exists", INCONCLUSIVE,
                                (too_long[0], minlen[too_long[0]])))
    else:
        conds.append(CondResult("factorization_exists", PASS))

    if any(c.status == FAIL for c in conds):
        conds.append(CondResult("factorizations_equivalent", INCONCLUSIVE,
                                ("skipped: earlier condition failed",)))
        return ProperIdealReport(conds)

    expansions, trunc = _block_expansions(S, Yset, max_len + 1, budget)
    status, witness = PASS, None
    for s in range(S.n):
        facts, t2 = _enumerate_matching_factorizations(S, Yset, s, max_len, budget)
        if t2:
            trunc = True
        base = facts[0] if facts else None
        for other in facts[1:]:
            res = _equivalent_factorizations(S, Yset, base, other,
                                             max_len + 2, expansions, budget)
            if res is not True:
                # saturation inside the length cap cannot prove inequivalence
                status, witness = INCONCLUSIVE, (s, base, other)
                break
        if status != PASS:
            break
    if status == PASS and trunc:
        status, witness = INCONCLUSIVE, ("enumeration truncated",)
    conds.append(CondResult("factorizations_equivalent", status, witness))
    return ProperIdealReport(conds)
