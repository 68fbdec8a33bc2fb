"""The Ehresmann semigroup built from a labelled graph with restrictions.

When the graph is a partial multiaction (edges closed under composable
label products), path classes are single edges and the whole semigroup is
a finite operation table: c . d corestricts c and restricts d to the meet
of the adjacent endpoints and composes the results.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import core
from .core import OpTableSemigroup
from .report import AxiomReport, Check
from .resgraph import FiniteMonoid, ResGraph, Semilattice


class PMViolationError(ValueError):
    """A composable pair of edges has no composite edge."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"missing composite edge for {witness!r}")


class InapplicableError(ValueError):
    """Operation precondition not met by this graph."""


def projection_semilattice(S: OpTableSemigroup):
    """P(S) as a Semilattice, with maps between projection elements of S
    and semilattice indices."""
    P = core.projections(S).members
    index = {e: i for i, e in enumerate(P)}
    meet = [[index[S.mult[e][f]] for f in P] for e in P]
    names = [S.name(e) for e in P]
    return Semilattice(len(P), meet, names), list(P), index


def check_pm(G: ResGraph):
    """Return a witness composable pair with no composite edge, or None."""
    for c in G.sorted_edges():
        for d in G.edges_from(c[2]):
            if (c[0], G.mon.mul(c[1], d[1]), d[2]) not in G.edges:
                return (c, d)
    return None


def build_product(G: ResGraph):
    """Operation table of the product semigroup over the edge set.

    Requires the graph to satisfy (PM) and to carry total restriction and
    corestriction maps; full axiom conformance is the caller's business
    (see resgraph.check_axioms).
    """
    witness = check_pm(G)
    if witness is not None:
        raise PMViolationError(witness)
    one = G.mon.one
    for e in range(G.sl.n):
        if (e, one, e) not in G.edges:
            raise ValueError(f"missing identity loop at vertex {e}")
    edges = G.sorted_edges()
    idx = {c: i for i, c in enumerate(edges)}
    k = len(edges)
    mult = [[0] * k for _ in range(k)]
    for i, c in enumerate(edges):
        for j, d in enumerate(edges):
            m = G.sl.meet[c[2]][d[0]]
            c2 = G.corestrict(c, m)
            d2 = G.restrict(d, m)
            comp = (c2[0], G.mon.mul(c2[1], d2[1]), d2[2])
            mult[i][j] = idx[comp]
    plus = [idx[(c[0], one, c[0])] for c in edges]
    star = [idx[(c[2], one, c[2])] for c in edges]
    names = [G.edge_str(c) for c in edges]
    return OpTableSemigroup(k, mult, plus, star, names), edges


def edge_le_l(G: ResGraph, u, v) -> bool:
    return any(G.restrict(v, g) == u for g in G.sl.below(v[0]))


def edge_le_r(G: ResGraph, u, v) -> bool:
    return any(G.corestrict(v, h) == u for h in G.sl.below(v[2]))


def edge_le(G: ResGraph, u, v) -> bool:
    """u <= v in the edge order: u is a corestriction of a restriction of v."""
    for g in G.sl.below(v[0]):
        m = G.restrict(v, g)
        for h in G.sl.below(m[2]):
            if G.corestrict(m, h) == u:
                return True
    return False


def check_construction_claims(G: ResGraph, built=None) -> AxiomReport:
    """Verify the structure-theorem claims about the product semigroup:
    sigma refines label fibers, the natural orders are restriction
    reachability, and the projections form a copy of the vertex
    semilattice."""
    S, edges = built if built is not None else build_product(G)
    cong, _ = core.sigma(S)
    checks = []

    w = None
    for cls in cong.classes:
        labels = {edges[i][1] for i in cls}
        if len(labels) > 1:
            w = tuple(edges[i] for i in cls[:2])
            break
    checks.append(Check("sigma_implies_equal_labels", w is None, w))

    orders = core.natural_orders(S)
    w = None
    for i in range(S.n):
        for j in range(S.n):
            if orders.le_l[i][j] != edge_le_l(G, edges[i], edges[j]):
                w = (edges[i], edges[j])
                break
        if w:
            break
    checks.append(Check("le_l_is_restriction_reachability", w is None, w))

    w = None
    for i in range(S.n):
        for j in range(S.n):
            if orders.le_r[i][j] != edge_le_r(G, edges[i], edges[j]):
                w = (edges[i], edges[j])
                break
        if w:
            break
    checks.append(Check("le_r_is_corestriction_reachability", w is None, w))

    w = None
    for i in range(S.n):
        for j in range(S.n):
            if orders.le[i][j] != edge_le(G, edges[i], edges[j]):
                w = (edges[i], edges[j])
                break
        if w:
            break
    checks.append(Check("le_is_two_sided_reachability", w is None, w))

    one = G.mon.one
    P = core.projections(S).members
    expected = {(e, one, e) for e in range(G.sl.n)}
    actual = {edges[i] for i in P}
    if actual != expected:
        checks.append(Check("projections_are_identity_loops", False,
                            (tuple(sorted(actual)),)))
    else:
        w = None
        for e in range(G.sl.n):
            for f in range(G.sl.n):
                i = next(i for i in P if edges[i] == (e, one, e))
                j = next(j for j in P if edges[j] == (f, one, f))
                prod_edge = edges[S.mult[i][j]]
                if prod_edge != (G.sl.meet[e][f], one, G.sl.meet[e][f]):
                    w = (e, f)
                    break
            if w:
                break
        checks.append(Check("projections_are_identity_loops", w is None, w))
    return AxiomReport(checks)


def check_properness_criterion(G: ResGraph) -> bool:
    """Common-upper-bound test for same-letter edges.

    Applies to graphs labelled by single letters of a free monoid or the
    empty word, with empty-word edges exactly the identity loops.  True
    means every pair of edges sharing a non-identity label lies below a
    common edge in the edge order, which forces the sigma classes of the
    product to be exactly the label fibers.
    """
    if not G.mon.is_free:
        raise InapplicableError("criterion needs free-monoid labels")
    for (d, lab, r) in G.edges:
        if len(lab) > 1:
            raise InapplicableError(f"label {lab!r} is not a letter or identity")
        if len(lab) == 0 and d != r:
            raise InapplicableError(f"identity-labelled edge ({d},{r}) is not a loop")
    by_letter = {}
    for c in G.sorted_edges():
        if c[1]:
            by_letter.setdefault(c[1], []).append(c)
    for group in by_letter.values():
        for i, u in enumerate(group):
            for v in group[i:]:
                if not any(edge_le(G, u, w) and edge_le(G, v, w) for w in group):
                    return False
    return True


@dataclass
class UnderlyingGraphResult:
    graph: ResGraph
    to_element: dict      # edge -> element of S in Y
    of_element: dict      # element of S in Y -> edge
    cong: core.Congruence
    quotient: OpTableSemigroup
    proj_list: list
    proj_index: dict


def underlying_graph(S: OpTableSemigroup, Y=None,
                     cong: core.Congruence | None = None) -> UnderlyingGraphResult:
    """The labelled graph on P(S) whose edges are the triples of Y-elements.

    Y must contain the projections, be an order ideal and consist of proper
    elements; the restriction of an edge to g is the triple of g*a, the
    corestriction to h the triple of a*h.
    """
    if Y is None:
        Y = range(S.n)
    Yset = frozenset(Y)
    if cong is None:
        cong, quotient = core.sigma(S)
    else:
        _, quotient = core.sigma(S)
    sl, proj_list, proj_index = projection_semilattice(S)
    P = frozenset(proj_list)
    if not P <= Yset:
        raise ValueError("Y must contain all projections")
    orders = core.natural_orders(S)
    for y in Yset:
        for s in range(S.n):
            if orders.le[s][y] and s not in Yset:
                raise ValueError(f"Y is not an order ideal: {s} <= {y}")
    proper = core.proper_elements(S, cong)
    bad = sorted(Yset - proper)
    if bad:
        raise ValueError(f"Y contains non-proper elements {bad}")

    mon = FiniteMonoid(quotient.n, quotient.mult, cong.class_of[proj_list[0]],
                       quotient.names)
    of_element, to_element = {}, {}
    for a in sorted(Yset):
        edge = (proj_index[S.plus[a]], cong.class_of[a], proj_index[S.star[a]])
        assert edge not in to_element, "triple map not injective on Y"
        of_element[a] = edge
        to_element[edge] = a

    restrict, corestrict = {}, {}
    for a, edge in of_element.items():
        for g in sl.below(edge[0]):
            ga = S.mult[proj_list[g]][a]
            restrict[(edge, g)] = of_element[ga]
        for h in sl.below(edge[2]):
            ah = S.mult[a][proj_list[h]]
            corestrict[(edge, h)] = of_element[ah]
    graph = ResGraph(sl, mon, set(to_element), restrict, corestrict)
    return UnderlyingGraphResult(graph, to_element, of_element, cong,
                                 quotient, proj_list, proj_index)


def structure_iso_check(S: OpTableSemigroup, Y=None) -> AxiomReport:
    """Check that a |-> (a^+, [a], a^*) is an isomorphism onto the product
    of the underlying graph.  Requires a strictly proper S (Y defaults to
    all of S)."""
    checks = []
    cong, _ = core.sigma(S)
    proper = core.proper_elements(S, cong)
    if Y is None:
        Y = range(S.n)
    Yset = frozenset(Y)
    collision = None
    seen = {}
    for a in sorted(Yset):
        key = (S.plus[a], S.star[a], cong.class_of[a])
        if key in seen:
            collision = (seen[key], a)
            break
        seen[key] = a
    checks.append(Check("triple_map_injective", collision is None, collision))
    if collision is not None:
        return AxiomReport(checks)
    if Yset != frozenset(range(S.n)) and not Yset <= proper:
        checks.append(Check("Y_elements_proper", False,
                            (sorted(Yset - proper)[0],)))
        return AxiomReport(checks)

    ug = underlying_graph(S, Yset, cong)
    pm_witness = check_pm(ug.graph)
    checks.append(Check("underlying_graph_is_partial_multiaction",
                        pm_witness is None, pm_witness))
    if pm_witness is not None:
        return AxiomReport(checks)

    S2, edges2 = build_product(ug.graph)
    idx2 = {c: i for i, c in enumerate(edges2)}
    psi = [idx2[ug.of_element[a]] for a in range(S.n)]

    checks.append(Check("bijective", sorted(psi) == list(range(S2.n)),
                        None if sorted(psi) == list(range(S2.n)) else (len(set(psi)), S2.n)))

    w = None
    for a in range(S.n):
        for b in range(S.n):
            if psi[S.mult[a][b]] != S2.mult[psi[a]][psi[b]]:
                w = (a, b)
                break
        if w:
            break
    checks.append(Check("preserves_multiplication", w is None, w))

    w = None
    for a in range(S.n):
        if psi[S.plus[a]] != S2.plus[psi[a]] or psi[S.star[a]] != S2.star[psi[a]]:
            w = (a,)
            break
    checks.append(Check("preserves_unary_operations", w is None, w))
    return AxiomReport(checks)


def round_trip_check(G: ResGraph) -> AxiomReport:
    """Build the product of G, recover its underlying graph, and check it is
    isomorphic to G (vertex by vertex, with labels matched through the
    sigma classes).  Needs sigma classes to be exactly the label fibers."""
    checks = []
    S, edges = build_product(G)
    cong, _ = core.sigma(S)

    label_of_class = {}
    w = None
    for i, c in enumerate(edges):
        cls = cong.class_of[i]
        if cls in label_of_class and label_of_class[cls] != c[1]:
            w = (c,)
            break
        label_of_class[cls] = c[1]
    fiber = {}
    for i, c in enumerate(edges):
        fiber.setdefault(c[1], set()).add(cong.class_of[i])
    if w is None:
        for lab, classes in fiber.items():
            if len(classes) > 1:
                w = (lab,)
                break
    checks.append(Check("sigma_classes_are_label_fibers", w is None, w))
    if w is not None:
        return AxiomReport(checks)

    ug = underlying_graph(S)
    one = G.mon.one
    # underlying vertex j is the projection (e,1,e) of the product; read e back
    vertex_map = {}
    for j, elem in enumerate(ug.proj_list):
        loop = edges[elem]
        assert loop[1] == one and loop[0] == loop[2]
        vertex_map[j] = loop[0]

    recovered = set()
    for (d, cls, r) in ug.graph.edges:
        recovered.add((vertex_map[d], label_of_class[cls], vertex_map[r]))
    same = recovered == set(G.edges)
    checks.append(Check("edge_sets_match", same,
                        None if same else (tuple(sorted(recovered ^ set(G.edges))[:2]),)))
    if not same:
        return AxiomReport(checks)

    # compare restriction actions through the correspondence
    w = None
    for (d, cls, r) in ug.graph.sorted_edges():
        g_edge = (vertex_map[d], label_of_class[cls], vertex_map[r])
        for g in ug.graph.sl.below(d):
            got = ug.graph.restrict((d, cls, r), g)
            want = G.restrict(g_edge, vertex_map[g])
            if (vertex_map[got[0]], label_of_class[got[1]], vertex_map[got[2]]) != want:
                w = (g_edge, vertex_map[g])
                break
        for h in ug.graph.sl.below(r):
            got = ug.graph.corestrict((d, cls, r), h)
            want = G.corestrict(g_edge, vertex_map[h])
            if (vertex_map[got[0]], label_of_class[got[1]], vertex_map[got[2]]) != want:
                w = (g_edge, vertex_map[h])
                break
        if w:
            break
    checks.append(Check("restrictions_match", w is None, w))
    return AxiomReport(checks)
