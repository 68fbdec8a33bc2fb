"""Labelled directed graphs over a semilattice with restriction structure.

An edge is a triple (d, label, r) of source vertex, label and target
vertex; a path is a tuple of consecutive edges.  Restriction shrinks the
source of an edge down the semilattice order, corestriction the target.
Labels come from a finite monoid (ints) or a free monoid (tuples of
letter strings, the empty tuple being the identity).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .report import AxiomReport, Check, FAIL, INCONCLUSIVE, PASS


class RestrictionUndefinedError(ValueError):
    """A required restriction or corestriction is missing or invalid."""


@dataclass
class Semilattice:
    n: int
    meet: list
    names: list | None = None

    def __post_init__(self):
        if self.n <= 0:
            raise ValueError("need at least one element")
        if len(self.meet) != self.n or any(len(r) != self.n for r in self.meet):
            raise ValueError("meet table must be n x n")
        rng = range(self.n)
        for e in rng:
            for f in rng:
                v = self.meet[e][f]
                if not (isinstance(v, int) and 0 <= v < self.n):
                    raise ValueError(f"meet[{e}][{f}] = {v!r} out of range")
                if v != self.meet[f][e]:
                    raise ValueError(f"meet not commutative at ({e},{f})")
            if self.meet[e][e] != e:
                raise ValueError(f"meet not idempotent at {e}")
        for e in rng:
            for f in rng:
                for g in rng:
                    if self.meet[self.meet[e][f]][g] != self.meet[e][self.meet[f][g]]:
                        raise ValueError(f"meet not associative at ({e},{f},{g})")
        if self.names is not None and len(self.names) != self.n:
            raise ValueError("names must have length n")

    def leq(self, e: int, f: int) -> bool:
        return self.meet[e][f] == e

    def below(self, e: int):
        return [g for g in range(self.n) if self.leq(g, e)]

    def name(self, e: int) -> str:
        return self.names[e] if self.names else str(e)


def chain_semilattice(k: int, names=None) -> Semilattice:
    """k-chain 0 < 1 < ... < k-1 (meet = min)."""
    return Semilattice(k, [[min(i, j) for j in range(k)] for i in range(k)], names)


@dataclass
class FiniteMonoid:
    n: int
    mult: list
    identity: int
    names: list | None = None

    def __post_init__(self):
        rng = range(self.n)
        if len(self.mult) != self.n or any(len(r) != self.n for r in self.mult):
            raise ValueError("mult table must be n x n")
        for a in rng:
            for b in rng:
                v = self.mult[a][b]
                if not (isinstance(v, int) and 0 <= v < self.n):
                    raise ValueError(f"mult[{a}][{b}] out of range")
        for a in rng:
            for b in rng:
                for c in rng:
                    if self.mult[self.mult[a][b]][c] != self.mult[a][self.mult[b][c]]:
                        raise ValueError(f"monoid not associative at ({a},{b},{c})")
        e = self.identity
        if not (0 <= e < self.n) or any(self.mult[e][a] != a or self.mult[a][e] != a
                                        for a in rng):
            raise ValueError("identity element is not a two-sided identity")

    is_free = False

    @property
    def one(self):
        return self.identity

    def mul(self, a, b):
        return self.mult[a][b]

    def is_identity(self, label) -> bool:
        return label == self.identity

    def elements(self):
        return range(self.n)

    def check_label(self, label):
        if not (isinstance(label, int) and 0 <= label < self.n):
            raise ValueError(f"label {label!r} not a monoid element")

    def label_str(self, label) -> str:
        return self.names[label] if self.names else str(label)


@dataclass
class FreeMonoid:
    alphabet: tuple

    def __post_init__(self):
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("alphabet letters must be distinct")
        self.alphabet = tuple(self.alphabet)

    is_free = True

    @property
    def one(self):
        return ()

    def mul(self, a, b):
        return tuple(a) + tuple(b)

    def is_identity(self, label) -> bool:
        return len(label) == 0

    def check_label(self, label):
        if not isinstance(label, tuple) or any(x not in self.alphabet for x in label):
            raise ValueError(f"label {label!r} not a word over {self.alphabet}")

    def label_str(self, label) -> str:
        return "1" if not label else "".join(str(x) for x in label)


class ResGraph:
    """Labelled directed graph with optional restriction/corestriction maps.

    restrict/corestrict may be dicts keyed by (edge, vertex), or callables
    (edge, vertex) -> edge, or None when the structure is absent.
    """

    def __init__(self, sl: Semilattice, mon, edges, restrict=None, corestrict=None):
        self.sl = sl
        self.mon = mon
        for (d, lab, r) in edges:
            if not (0 <= d < sl.n and 0 <= r < sl.n):
                raise ValueError(f"edge ({d},{lab!r},{r}) has a bad vertex")
            mon.check_label(lab)
        self.edges = frozenset(edges)
        self._edge_list = sorted(self.edges)
        self._restrict = restrict
        self._corestrict = corestrict
        self._out = {}
        for c in self._edge_list:
            self._out.setdefault(c[0], []).append(c)

    @property
    def has_restrictions(self) -> bool:
        return self._restrict is not None and self._corestrict is not None

    def sorted_edges(self):
        return list(self._edge_list)

    def edges_from(self, v: int):
        return self._out.get(v, [])

    def edge_str(self, c) -> str:
        d, lab, r = c
        return f"({self.sl.name(d)},{self.mon.label_str(lab)},{self.sl.name(r)})"

    def _apply(self, table, c, v, kind):
        if table is None:
            raise RestrictionUndefinedError(f"graph has no {kind} structure")
        if callable(table):
            out = table(c, v)
        else:
            out = table.get((c, v))
        if out is None:
            raise RestrictionUndefinedError(
                f"{kind} of {self.edge_str(c)} to {self.sl.name(v)} is undefined")
        if out not in self.edges:
            raise RestrictionUndefinedError(
                f"{kind} of {self.edge_str(c)} to {self.sl.name(v)} "
                f"gives {out!r}, which is not an edge")
        return out

    def restrict(self, c, g: int):
        if c not in self.edges:
            raise ValueError(f"{c!r} is not an edge")
        if not self.sl.leq(g, c[0]):
            raise RestrictionUndefinedError(
                f"restriction of {self.edge_str(c)} to non-lower vertex {g}")
        return self._apply(self._restrict, c, g, "restriction")

    def corestrict(self, c, h: int):
        if c not in self.edges:
            raise ValueError(f"{c!r} is not an edge")
        if not self.sl.leq(h, c[2]):
            raise RestrictionUndefinedError(
                f"corestriction of {self.edge_str(c)} to non-lower vertex {h}")
        return self._apply(self._corestrict, c, h, "corestriction")

    def materialized(self) -> "ResGraph":
        """Copy with restriction/corestriction stored extensionally."""
        restr, corestr = {}, {}
        for c in self._edge_list:
            for g in self.sl.below(c[0]):
                restr[(c, g)] = self.restrict(c, g)
            for h in self.sl.below(c[2]):
                corestr[(c, h)] = self.corestrict(c, h)
        return ResGraph(self.sl, self.mon, self.edges, restr, corestr)


# ---------------------------------------------------------------------------
# paths

def make_path(G: ResGraph, edges) -> tuple:
    edges = tuple(edges)
    if not edges:
        raise ValueError("paths are non-empty")
    for c in edges:
        if c not in G.edges:
            raise ValueError(f"{c!r} is not an edge")
    for a, b in zip(edges, edges[1:]):
        if a[2] != b[0]:
            raise ValueError(f"edges {a!r} and {b!r} are not composable")
    return edges


def path_d(p) -> int:
    return p[0][0]


def path_r(p) -> int:
    return p[-1][2]


def path_label(G: ResGraph, p):
    lab = p[0][1]
    for c in p[1:]:
        lab = G.mon.mul(lab, c[1])
    return lab


def path_vertices(p):
    return (p[0][0],) + tuple(c[2] for c in p)


def restrict_path(G: ResGraph, p, e: int) -> tuple:
    """Left-to-right fold of edge restriction; source becomes e."""
    if not G.sl.leq(e, path_d(p)):
        raise RestrictionUndefinedError(f"{e} is not below the path source")
    out = []
    cur = e
    for c in p:
        nc = G.restrict(c, cur)
        out.append(nc)
        cur = nc[2]
    return tuple(out)


def corestrict_path(G: ResGraph, p, f: int) -> tuple:
    """Right-to-left fold of edge corestriction; target becomes f."""
    if not G.sl.leq(f, path_r(p)):
        raise RestrictionUndefinedError(f"{f} is not below the path target")
    out = []
    cur = f
    for c in reversed(p):
        nc = G.corestrict(c, cur)
        out.append(nc)
        cur = nc[0]
    return tuple(reversed(out))


def all_paths(G: ResGraph, max_len: int):
    """All paths of length 1..max_len, in deterministic order."""
    out = []
    frontier = [(c,) for c in G.sorted_edges()]
    for _ in range(max_len):
        out.extend(frontier)
        frontier = [p + (c,) for p in frontier for c in G.edges_from(p[-1][2])]
    return out


def composable_chains(G: ResGraph, min_len: int, max_len: int):
    for p in all_paths(G, max_len):
        if len(p) >= min_len:
            yield p


# ---------------------------------------------------------------------------
# axiom checking

def check_axioms(G: ResGraph, max_chain: int = 3) -> AxiomReport:
    """Machine-check the edge-level restriction/corestriction axioms.

    The chain axioms quantify over arbitrarily long edge chains; they are
    checked for chains up to max_chain.  For partial multiactions chains of
    length 2 plus induction already cover the general case, since the
    composite edges exist at every intermediate step.
    """
    checks = []
    sl, mon = G.sl, G.mon
    one = mon.one

    w = None
    for e in range(sl.n):
        if (e, one, e) not in G.edges:
            w = (e,)
            break
    checks.append(Check("identity_loops_present", w is None, w))

    def try_restrict(c, g):
        try:
            return G.restrict(c, g)
        except RestrictionUndefinedError:
            return None

    def try_corestrict(c, h):
        try:
            return G.corestrict(c, h)
        except RestrictionUndefinedError:
            return None

    w_def = None
    for c in G.sorted_edges():
        for g in sl.below(c[0]):
            if try_restrict(c, g) is None:
                w_def = (c, g)
                break
        if w_def:
            break
    checks.append(Check("restriction_total", w_def is None, w_def))

    w_def = None
    for c in G.sorted_edges():
        for h in sl.below(c[2]):
            if try_corestrict(c, h) is None:
                w_def = (c, h)
                break
        if w_def:
            break
    checks.append(Check("corestriction_total", w_def is None, w_def))

    # the remaining axioms evaluate restrictions of identity loops and are
    # only meaningful once the structural checks hold
    if not all(c.ok for c in checks):
        return AxiomReport(checks)

    def first_violation(name, gen):
        for witness in gen:
            checks.append(Check(name, False, witness))
            return
        checks.append(Check(name, True))

    def gen_r1():
        for c in G.sorted_edges():
            for g in sl.below(c[0]):
                rc = G.restrict(c, g)
                if rc[0] != g or rc[1] != c[1] or not sl.leq(rc[2], c[2]):
                    yield (c, g, rc)

    def gen_r2():
        for c in G.sorted_edges():
            if G.restrict(c, c[0]) != c:
                yield (c,)

    def gen_r3():
        for c in G.sorted_edges():
            for g in sl.below(c[0]):
                rc = G.restrict(c, g)
                for h in sl.below(g):
                    if G.restrict(rc, h) != G.restrict(c, h):
                        yield (c, g, h)

    def gen_r5():
        for e in range(sl.n):
            for f in sl.below(e):
                if G.restrict((e, one, e), f) != (f, one, f):
                    yield (e, f)

    def gen_cr1():
        for c in G.sorted_edges():
            for h in sl.below(c[2]):
                cc = G.corestrict(c, h)
                if cc[2] != h or cc[1] != c[1] or not sl.leq(cc[0], c[0]):
                    yield (c, h, cc)

    def gen_cr2():
        for c in G.sorted_edges():
            if G.corestrict(c, c[2]) != c:
                yield (c,)

    def gen_cr3():
        for c in G.sorted_edges():
            for g in sl.below(c[2]):
                cc = G.corestrict(c, g)
                for h in sl.below(g):
                    if G.corestrict(cc, h) != G.corestrict(c, h):
                        yield (c, g, h)

    def gen_cr5():
        for e in range(sl.n):
            for f in sl.below(e):
                if G.corestrict((e, one, e), f) != (f, one, f):
                    yield (e, f)

    def gen_r4():
        for chain in composable_chains(G, 2, max_chain):
            comp = (chain[0][0], path_label(G, chain), chain[-1][2])
            if comp not in G.edges:
                continue
            for e0 in sl.below(comp[0]):
                restricted = restrict_path(G, chain, e0)
                expected = (e0, comp[1], restricted[-1][2])
                if G.restrict(comp, e0) != expected:
                    yield (chain, e0)

    def gen_cr4():
        for chain in composable_chains(G, 2, max_chain):
            comp = (chain[0][0], path_label(G, chain), chain[-1][2])
            if comp not in G.edges:
                continue
            for en in sl.below(comp[2]):
                corestricted = corestrict_path(G, chain, en)
                expected = (corestricted[0][0], comp[1], en)
                if G.corestrict(comp, en) != expected:
                    yield (chain, en)

    def gen_c():
        for c in G.sorted_edges():
            for g in sl.below(c[0]):
                rc = G.restrict(c, g)
                for h in sl.below(c[2]):
                    ch = G.corestrict(c, h)
                    lhs = G.corestrict(rc, sl.meet[rc[2]][h])
                    rhs = G.restrict(ch, sl.meet[ch[0]][g])
                    target = (sl.meet[g][ch[0]], c[1], sl.meet[rc[2]][h])
                    if lhs != rhs or lhs != target:
                        yield (c, g, h)

    first_violation("R1", gen_r1())
    first_violation("R2", gen_r2())
    first_violation("R3", gen_r3())
    first_violation("R4", gen_r4())
    first_violation("R5", gen_r5())
    first_violation("CR1", gen_cr1())
    first_violation("CR2", gen_cr2())
    first_violation("CR3", gen_cr3())
    first_violation("CR4", gen_cr4())
    first_violation("CR5", gen_cr5())
    first_violation("C", gen_c())

    if not G.mon.is_free:
        labels = set()
        seen = set()
        frontier = deque()
        for c in G.sorted_edges():
            state = (c[2], c[1])
            labels.add(c[1])
            if state not in seen:
                seen.add(state)
                frontier.append(state)
        while frontier:
            v, lab = frontier.popleft()
            for c in G.edges_from(v):
                state = (c[2], mon.mul(lab, c[1]))
                labels.add(state[1])
                if state not in seen:
                    seen.add(state)
                    frontier.append(state)
        missing = [t for t in mon.elements() if t not in labels]
        checks.append(Check("every_label_has_a_path", not missing,
                            tuple(missing) or None))

    return AxiomReport(checks)


def check_path_axioms(G: ResGraph, bound: int = 3) -> AxiomReport:
    """Check the path-level laws over all paths up to the length bound."""
    sl = G.sl
    paths = all_paths(G, bound)
    checks = []

    def first_violation(name, gen):
        for witness in gen:
            checks.append(Check(name, False, witness))
            return
        checks.append(Check(name, True))

    def gen_r3a():
        for p in paths:
            for e in sl.below(path_d(p)):
                rp = restrict_path(G, p, e)
                for g in sl.below(e):
                    if restrict_path(G, rp, g) != restrict_path(G, p, g):
                        yield (p, e, g)

    def gen_cr3a():
        for p in paths:
            for f in sl.below(path_r(p)):
                cp = corestrict_path(G, p, f)
                for g in sl.below(f):
                    if corestrict_path(G, cp, g) != corestrict_path(G, p, g):
                        yield (p, f, g)

    def gen_r4a():
        for p in paths:
            for q in paths:
                if path_r(p) != path_d(q) or len(p) + len(q) > bound:
                    continue
                for e in sl.below(path_d(p)):
                    rp = restrict_path(G, p, e)
                    if restrict_path(G, p + q, e) != rp + restrict_path(G, q, path_r(rp)):
                        yield (p, q, e)

    def gen_cr4a():
        for p in paths:
            for q in paths:
                if path_r(p) != path_d(q) or len(p) + len(q) > bound:
                    continue
                for g in sl.below(path_r(q)):
                    cq = corestrict_path(G, q, g)
                    if corestrict_path(G, p + q, g) != corestrict_path(G, p, path_d(cq)) + cq:
                        yield (p, q, g)

    def gen_ca():
        for p in paths:
            for e in sl.below(path_d(p)):
                rp = restrict_path(G, p, e)
                for f in sl.below(path_r(p)):
                    cp = corestrict_path(G, p, f)
                    lhs = corestrict_path(G, rp, sl.meet[path_r(rp)][f])
                    rhs = restrict_path(G, cp, sl.meet[path_d(cp)][e])
                    if lhs != rhs:
                        yield (p, e, f)

    first_violation("R3a", gen_r3a())
    first_violation("R4a", gen_r4a())
    first_violation("CR3a", gen_cr3a())
    first_violation("CR4a", gen_cr4a())
    first_violation("Ca", gen_ca())
    return AxiomReport(checks)


# ---------------------------------------------------------------------------
# the congruence ~ generated by contracting composable blocks

def contract_step(G: ResGraph, p, i: int, j: int):
    """Replace the block of edges at 1-based positions i..j by the composite
    edge, when it exists; None otherwise."""
    if not (1 <= i <= j <= len(p)) or j - i < 1:
        raise ValueError(f"bad block positions ({i},{j}) for length {len(p)}")
    block = p[i - 1:j]
    comp = (block[0][0], path_label(G, block), block[-1][2])
    if comp not in G.edges:
        return None
    return p[:i - 1] + (comp,) + p[j:]


def _contractions(G: ResGraph, p):
    out = []
    for i in range(1, len(p)):
        for j in range(i + 1, len(p) + 1):
            q = contract_step(G, p, i, j)
            if q is not None:
                out.append(q)
    return out


def _expansions_of_edge(G: ResGraph, c, max_block: int):
    """Composable edge chains of length 2..max_block with the same
    endpoints and label product as c."""
    target = c[1]
    out = []
    stack = [((e,), e[1]) for e in G.edges_from(c[0])]
    while stack:
        chain, lab = stack.pop()
        if len(chain) >= 2 and chain[-1][2] == c[2] and lab == target:
            out.append(chain)
        if len(chain) >= max_block:
            continue
        if G.mon.is_free and not _is_prefix(lab, target):
            continue
        for e in G.edges_from(chain[-1][2]):
            stack.append((chain + (e,), G.mon.mul(lab, e[1])))
    return out


def _is_prefix(word, target):
    return len(word) <= len(target) and tuple(target[:len(word)]) == tuple(word)


def _is_pm(G: ResGraph) -> bool:
    for c in G.sorted_edges():
        for d in G.edges_from(c[2]):
            if (c[0], G.mon.mul(c[1], d[1]), d[2]) not in G.edges:
                return False
    return True


def _is_cover_shaped(G: ResGraph) -> bool:
    if not G.mon.is_free:
        return False
    for (d, lab, r) in G.edges:
        if len(lab) > 1:
            return False
        if len(lab) == 0 and d != r:
            return False
    return True


@dataclass
class EquivalenceResult:
    status: str
    reason: str = ""


def equivalent_paths(G: ResGraph, p, q, max_nodes: int = 20000,
                     max_len: int | None = None) -> EquivalenceResult:
    """Semi-decide whether two paths are identified by the congruence ~.

    Endpoint or label disagreement is an immediate FAIL.  In the two
    normal-form regimes (partial multiaction; cover-shaped graph) the
    answer is exact; otherwise a bounded bidirectional search over
    contract/expand moves returns PASS or INCONCLUSIVE.
    """
    p, q = make_path(G, p), make_path(G, q)
    if path_d(p) != path_d(q) or path_r(p) != path_r(q):
        return EquivalenceResult(FAIL, "endpoints differ")
    if path_label(G, p) != path_label(G, q):
        return EquivalenceResult(FAIL, "labels differ")
    if p == q:
        return EquivalenceResult(PASS, "equal paths")

    if _is_pm(G):
        nf_p = (path_d(p), path_label(G, p), path_r(p))
        nf_q = (path_d(q), path_label(G, q), path_r(q))
        status = PASS if nf_p == nf_q else FAIL
        return EquivalenceResult(status, "partial multiaction normal form")
    if _is_cover_shaped(G):
        nf_p = tuple(c for c in p if c[1])
        nf_q = tuple(c for c in q if c[1])
        status = PASS if nf_p == nf_q else FAIL
        return EquivalenceResult(status, "cover normal form")

    if max_len is None:
        max_len = max(len(p), len(q)) + 2

    def neighbours(path):
        out = _contractions(G, path)
        for i, c in enumerate(path):
            cap = max_len - len(path) + 1
            if cap >= 2:
                for block in _expansions_of_edge(G, c, cap):
                    out.append(path[:i] + block + path[i + 1:])
        return out

    seen = {p: 0, q: 1}
    frontier = deque([p, q])
    while frontier:
        if len(seen) > max_nodes:
            return EquivalenceResult(INCONCLUSIVE, "node budget exhausted")
        cur = frontier.popleft()
        side = seen[cur]
        for nb in neighbours(cur):
            if nb in seen:
                if seen[nb] != side:
                    return EquivalenceResult(PASS, "search met")
                continue
            seen[nb] = side
            frontier.append(nb)
    return EquivalenceResult(INCONCLUSIVE, "search saturated within length cap")
