"""Partial multiactions of monoids, premorphisms, and the recovery of
proper restriction semigroups from partial actions on semilattices.

A premorphism sends each label to a binary relation on the ground set,
laxly compatibly with the monoid product; its graph form has one edge per
related pair.  Left/right determinism of the graph corresponds to the
relations being partial maps / their converses, and both together to
partial bijections, which is the classical partial-action setting.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import core, product, relmonoid
from .core import OpTableSemigroup
from .relmonoid import Rel
from .report import AxiomReport, Check
from .resgraph import FiniteMonoid, ResGraph, Semilattice


@dataclass
class Premorphism:
    mon: FiniteMonoid
    ground: int
    phi: dict  # label index -> Rel

    def rel(self, t: int) -> Rel:
        return self.phi[t]


@dataclass
class PartialAction:
    """A premorphism whose ground set carries a semilattice order."""

    sl: Semilattice
    mon: FiniteMonoid
    phi: dict

    def premorphism(self) -> Premorphism:
        return Premorphism(self.mon, self.sl.n, self.phi)


def _phi_items(pm):
    return [(t, pm.phi[t]) for t in sorted(pm.phi)]


def validate_premorphism(pm) -> AxiomReport:
    """Nonempty relations, id inside phi_1, and phi_s phi_t inside phi_st."""
    checks = []
    n = pm.ground if isinstance(pm, Premorphism) else pm.sl.n
    w = None
    for t in pm.mon.elements():
        if t not in pm.phi:
            w = (t, "missing")
            break
        if pm.phi[t].n != n:
            w = (t, "ground size mismatch")
            break
        if pm.phi[t].bits == 0:
            w = (t, "empty relation")
            break
    checks.append(Check("relations_nonempty", w is None, w))
    if w is not None:
        return AxiomReport(checks)

    ident = relmonoid.identity(n)
    ok = ident.issubset(pm.phi[pm.mon.one])
    checks.append(Check("identity_in_phi_1", ok, None if ok else (pm.mon.one,)))

    w = None
    for s in pm.mon.elements():
        for t in pm.mon.elements():
            comp = relmonoid.compose(pm.phi[s], pm.phi[t])
            if not comp.issubset(pm.phi[pm.mon.mul(s, t)]):
                w = (s, t)
                break
        if w:
            break
    checks.append(Check("phi_s_phi_t_in_phi_st", w is None, w))
    return AxiomReport(checks)


@dataclass
class PMGraph:
    """Labelled graph over a plain set, closed under composable label
    products; the category form of a premorphism."""

    n_vertices: int
    mon: FiniteMonoid
    edges: frozenset


def graph_to_premorphism(G) -> Premorphism:
    """Read the label-indexed relations off a partial multiaction."""
    mon = G.mon
    if mon.is_free:
        raise ValueError("premorphisms need a finite label monoid")
    n = G.n_vertices if isinstance(G, PMGraph) else G.sl.n
    phi = {}
    for t in mon.elements():
        pairs = [(d, r) for (d, lab, r) in G.edges if lab == t]
        if not pairs:
            raise ValueError(f"label {t} has no edge; relation would be empty")
        phi[t] = Rel.from_pairs(n, pairs)
    pm = Premorphism(mon, n, phi)
    report = validate_premorphism(pm)
    if not report.ok:
        bad = report.failures()[0]
        raise ValueError(f"graph is not a partial multiaction: "
                         f"{bad.name} witness={bad.witness}")
    return pm


def premorphism_to_graph(pm) -> PMGraph:
    """Edges (x, t, y) for the pairs of phi_t; (PM) holds by the lax
    compatibility law."""
    report = validate_premorphism(pm)
    if not report.ok:
        bad = report.failures()[0]
        raise ValueError(f"not a premorphism: {bad.name} witness={bad.witness}")
    n = pm.ground if isinstance(pm, Premorphism) else pm.sl.n
    edges = set()
    for t, rel in _phi_items(pm):
        for (x, y) in rel.pairs():
            edges.add((x, t, y))
    return PMGraph(n, pm.mon, frozenset(edges))


def check_determinism(G) -> dict:
    """LD: at most one target per (source, label); RD dually."""
    ld, rd = True, True
    seen_out, seen_in = set(), set()
    for (d, lab, r) in G.edges:
        if (d, lab) in seen_out:
            ld = False
        if (r, lab) in seen_in:
            rd = False
        seen_out.add((d, lab))
        seen_in.add((r, lab))
    return {"LD": ld, "RD": rd}


def check_sigma_iff_label(G: ResGraph):
    """Test, on the product table, whether sigma-related means same label.

    Returns (ok, witness); guaranteed true for deterministic graphs.
    """
    S, edges = product.build_product(G)
    cong, _ = core.sigma(S)
    for i in range(S.n):
        for j in range(S.n):
            same_class = cong.same(i, j)
            same_label = edges[i][1] == edges[j][1]
            if same_class != same_label:
                return False, (edges[i], edges[j])
    return True, None


@dataclass
class RestrictionClass:
    left: bool
    right: bool
    report: AxiomReport


def classify_restriction(G: ResGraph) -> RestrictionClass:
    """Is the product a proper left / proper right restriction semigroup?

    Each side needs the ample identity together with the one-sided
    properness condition (equal projection and sigma class force equality).
    """
    S, edges = product.build_product(G)
    cong, _ = core.sigma(S)
    rep = core.verify_restriction(S, "both")
    checks = list(rep.checks)

    w = None
    for a in range(S.n):
        for b in range(a + 1, S.n):
            if S.plus[a] == S.plus[b] and cong.same(a, b):
                w = (edges[a], edges[b])
                break
        if w:
            break
    checks.append(Check("left_proper", w is None, w))

    w = None
    for a in range(S.n):
        for b in range(a + 1, S.n):
            if S.star[a] == S.star[b] and cong.same(a, b):
                w = (edges[a], edges[b])
                break
        if w:
            break
    checks.append(Check("right_proper", w is None, w))

    report = AxiomReport(checks)
    left = report["x y^+ = (x y)^+ x"].ok and report["left_proper"].ok
    right = report["x^* y = y (x y)^*"].ok and report["right_proper"].ok
    return RestrictionClass(left, right, report)


def search_sigma_label_violation(seed: int, tries: int = 200):
    """Random search for a compatible graph whose product separates two
    same-label edges under sigma.

    Samples down-rectangle edge sets (source- and target-downward closed
    per label) over small semilattices, which always admit the
    target-preserving restriction and source-preserving corestriction.
    Returns (witness graph, edge pair) or None.  Finding none at this
    scale reports absence only; it is no nonexistence claim.
    """
    import random as _random

    from .resgraph import chain_semilattice, check_axioms

    rng = _random.Random(seed)
    diamond = Semilattice(4, [[0, 0, 0, 0], [0, 1, 0, 1],
                              [0, 0, 2, 2], [0, 1, 2, 3]])
    lattices = [chain_semilattice(2), chain_semilattice(3), diamond]
    t2 = FiniteMonoid(2, [[0, 1], [1, 1]], 0)
    t3 = FiniteMonoid(3, [[0, 1, 2], [1, 2, 2], [2, 2, 2]], 0)
    monoids = [t2, t3]
    for _ in range(tries):
        sl = rng.choice(lattices)
        mon = rng.choice(monoids)
        edges = {(e, mon.one, e) for e in range(sl.n)}
        for t in mon.elements():
            if t == mon.one:
                continue
            for _seed in range(rng.randint(1, 3)):
                e = rng.randrange(sl.n)
                f = rng.randrange(sl.n)
                edges |= {(g, t, h) for g in sl.below(e) for h in sl.below(f)}
        # close under composable label products (down-rectangles compose
        # into down-rectangles, so this terminates quickly)
        changed = True
        while changed:
            changed = False
            for (d1, l1, r1) in list(edges):
                for (d2, l2, r2) in list(edges):
                    if r1 == d2:
                        comp = (d1, mon.mul(l1, l2), r2)
                        if comp[1] != mon.one and comp not in edges:
                            edges.add(comp)
                            changed = True
        restrict, corestrict = {}, {}
        for c in edges:
            d, lab, r = c
            for g in sl.below(d):
                restrict[(c, g)] = (g, lab, g) if lab == mon.one else (g, lab, r)
            for h in sl.below(r):
                corestrict[(c, h)] = (h, lab, h) if lab == mon.one else (d, lab, h)
        G = ResGraph(sl, mon, edges, restrict, corestrict)
        if not check_axioms(G, max_chain=2).ok:
            continue
        ok, witness = check_sigma_iff_label(G)
        if not ok:
            return G, witness
    return None


def check_partial_action_laws(pa: PartialAction) -> AxiomReport:
    """For deterministic relations: domains (ranges) are order ideals and
    the maps are order-preserving in the available direction."""
    sides = []
    if all(relmonoid.classify(r)["in_PT"] for r in pa.phi.values()):
        sides.append("LD")
    if all(relmonoid.classify(r)["in_PTc"] for r in pa.phi.values()):
        sides.append("RD")
    if not sides:
        raise ValueError("laws need a deterministic premorphism (LD or RD)")
    sl = pa.sl
    checks = []
    if "LD" in sides:
        w = None
        for t, rel in _phi_items(pa):
            domain = [x for x in range(sl.n) if rel.row(x)]
            for e in domain:
                for f in sl.below(e):
                    if f not in domain:
                        w = (t, f, e)
                        break
                if w:
                    break
            if w:
                break
        checks.append(Check("domains_are_order_ideals", w is None, w))

        w = None
        for t, rel in _phi_items(pa):
            image = dict(rel.pairs())
            for e in image:
                for f in image:
                    if sl.leq(f, e) and not sl.leq(image[f], image[e]):
                        w = (t, f, e)
                        break
                if w:
                    break
            if w:
                break
        checks.append(Check("maps_order_preserving", w is None, w))
    if "RD" in sides:
        w = None
        for t, rel in _phi_items(pa):
            rng = [y for y in range(sl.n) if any(rel.has(x, y) for x in range(sl.n))]
            for e in rng:
                for f in sl.below(e):
                    if f not in rng:
                        w = (t, f, e)
                        break
                if w:
                    break
            if w:
                break
        checks.append(Check("ranges_are_order_ideals", w is None, w))

        w = None
        for t, rel in _phi_items(pa):
            preimage = {y: x for (x, y) in rel.pairs()}
            for e in preimage:
                for f in preimage:
                    if sl.leq(f, e) and not sl.leq(preimage[f], preimage[e]):
                        w = (t, f, e)
                        break
                if w:
                    break
            if w:
                break
        checks.append(Check("inverse_maps_order_preserving", w is None, w))
    return AxiomReport(checks)


def validate_partial_action(pa: PartialAction) -> AxiomReport:
    """Premorphism laws plus: every relation is a partial bijection that is
    an order isomorphism between order ideals."""
    checks = list(validate_premorphism(pa).checks)
    if not all(c.ok for c in checks):
        return AxiomReport(checks)
    w = None
    for t, rel in _phi_items(pa):
        if not relmonoid.classify(rel)["in_I"]:
            w = (t,)
            break
    checks.append(Check("relations_are_partial_bijections", w is None, w))
    if w is None:
        laws = check_partial_action_laws(pa)
        checks.extend(laws.checks)
    return AxiomReport(checks)


def _apply(rel: Rel, x: int):
    row = rel.row(x)
    assert row and row & (row - 1) == 0, "not defined or not single-valued"
    return row.bit_length() - 1


def _apply_inv(rel: Rel, y: int):
    xs = [x for x in range(rel.n) if rel.has(x, y)]
    assert len(xs) == 1, "not defined or not injective"
    return xs[0]


def partial_action_graph(pa: PartialAction) -> ResGraph:
    """The partial multiaction of a partial action, with the induced
    restriction (g, t, g phi_t) and corestriction (h phi_t^{-1}, t, h)."""
    report = validate_partial_action(pa)
    if not report.ok:
        bad = report.failures()[0]
        raise ValueError(f"not a partial action: {bad.name} witness={bad.witness}")
    edges = set()
    for t, rel in _phi_items(pa):
        for (x, y) in rel.pairs():
            edges.add((x, t, y))
    restrict = {}
    corestrict = {}
    for (x, t, y) in edges:
        rel = pa.phi[t]
        for g in pa.sl.below(x):
            restrict[((x, t, y), g)] = (g, t, _apply(rel, g))
        for h in pa.sl.below(y):
            corestrict[((x, t, y), h)] = (_apply_inv(rel, h), t, h)
    return ResGraph(pa.sl, pa.mon, edges, restrict, corestrict)


def build_pair_form(pa: PartialAction):
    """The pair semigroup of a partial action: elements (e, s) with e in
    dom(phi_s), product (e,s)(f,t) = ((e phi_s ^ f) phi_s^{-1}, s t),
    plus (e, 1), star (e phi_s, 1)."""
    report = validate_partial_action(pa)
    if not report.ok:
        bad = report.failures()[0]
        raise ValueError(f"not a partial action: {bad.name} witness={bad.witness}")
    sl, mon = pa.sl, pa.mon
    pairs = [(e, s) for s in sorted(mon.elements())
             for e in range(sl.n) if pa.phi[s].row(e)]
    idx = {p: i for i, p in enumerate(pairs)}
    k = len(pairs)
    mult = [[0] * k for _ in range(k)]
    for i, (e, s) in enumerate(pairs):
        es = _apply(pa.phi[s], e)
        for j, (f, t) in enumerate(pairs):
            m = sl.meet[es][f]
            # ranges are order ideals, so the meet stays in ran(phi_s)
            e2 = _apply_inv(pa.phi[s], m)
            mult[i][j] = idx[(e2, mon.mul(s, t))]
    plus = [idx[(e, mon.one)] for (e, s) in pairs]
    star = [idx[(_apply(pa.phi[s], e), mon.one)] for (e, s) in pairs]
    names = [f"({sl.name(e)},{mon.label_str(s)})" for (e, s) in pairs]
    return OpTableSemigroup(k, mult, plus, star, names), pairs


def pair_form_iso_check(pa: PartialAction) -> AxiomReport:
    """(e, s) -> (e, s, e phi_s) is an isomorphism onto the product of the
    induced graph."""
    S1, pairs = build_pair_form(pa)
    G = partial_action_graph(pa)
    S2, edges = product.build_product(G)
    idx2 = {c: i for i, c in enumerate(edges)}
    psi = [idx2[(e, s, _apply(pa.phi[s], e))] for (e, s) in pairs]
    checks = []
    checks.append(Check("bijective", sorted(psi) == list(range(S2.n)), None))
    w = None
    for a in range(S1.n):
        for b in range(S1.n):
            if psi[S1.mult[a][b]] != S2.mult[psi[a]][psi[b]]:
                w = (pairs[a], pairs[b])
                break
        if w:
            break
    checks.append(Check("preserves_multiplication", w is None, w))
    w = None
    for a in range(S1.n):
        if (psi[S1.plus[a]] != S2.plus[psi[a]]
                or psi[S1.star[a]] != S2.star[psi[a]]):
            w = (pairs[a],)
            break
    checks.append(Check("preserves_unary_operations", w is None, w))
    return AxiomReport(checks)
