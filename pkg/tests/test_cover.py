import random

import pytest

from ehresmann import core, corpus, product, relmonoid, resgraph
from ehresmann.cover import (CanonicalPath, GeneratorError,
                             build_cover_graph, canonical_preimage,
                             canonicalize, cover_mult, cover_plus_star,
                             enumerate_canonical, fes_witness_check,
                             max_edge_for_letter, phi, to_path, verify_cover)
from ehresmann.report import PASS


def e2_cover():
    return build_cover_graph(corpus.chain(2), [0, 1])


def test_e2_cover_edge_sets():
    """Edges solved by hand on the two-chain f < e (0 = f, 1 = e): the top
    generator acts everywhere, the bottom one only at the bottom."""
    cg = e2_cover()
    by_letter = {}
    for (d, lab, r) in cg.graph.edges:
        by_letter.setdefault(lab, set()).add((d, r))
    assert by_letter[()] == {(0, 0), (1, 1)}
    assert by_letter[("x1",)] == {(1, 1), (0, 0)}   # letter for e
    assert by_letter[("x0",)] == {(0, 0)}           # letter for f


def test_cover_graph_axioms_all_cases():
    for name, S, gens in corpus.cover_cases():
        cg = build_cover_graph(S, gens)
        rep = resgraph.check_axioms(cg.graph, max_chain=3)
        assert rep.ok, (name, [c.line() for c in rep.failures()])


def test_vertices_are_projections():
    for name, S, gens in corpus.cover_cases():
        cg = build_cover_graph(S, gens)
        assert list(cg.proj_list) == list(core.projections(S).members), name


def test_non_generating_set_rejected():
    with pytest.raises(GeneratorError):
        build_cover_graph(corpus.rel_pt2(), [0])


def test_edges_below_letter_maximum():
    for name, S, gens in corpus.cover_cases():
        cg = build_cover_graph(S, gens)
        for c in cg.graph.sorted_edges():
            if not c[1]:
                continue
            top = max_edge_for_letter(cg, c[1][0])
            assert top in cg.graph.edges, name
            assert product.edge_le(cg.graph, c, top), name


def test_canonicalize():
    cg = e2_cover()
    G = cg.graph
    assert canonicalize(cg, ((1, (), 1),)) == CanonicalPath.loop_at(1)
    p = ((1, (), 1), (1, ("x1",), 1), (1, (), 1))
    assert canonicalize(cg, p) == CanonicalPath((1, "x1", 1))
    u = canonicalize(cg, p)
    assert canonicalize(cg, to_path(cg, u)) == u  # idempotent


def test_cover_mult_loops():
    cg = e2_cover()
    assert cover_mult(cg, CanonicalPath.loop_at(1), CanonicalPath.loop_at(0)) \
        == CanonicalPath.loop_at(0)
    assert cover_mult(cg, CanonicalPath.loop_at(1), CanonicalPath.loop_at(1)) \
        == CanonicalPath.loop_at(1)


def test_cover_mult_two_chain_example():
    # (e,e,e) . (f,f,f) corestricts the left factor to the bottom
    cg = e2_cover()
    u = CanonicalPath((1, "x1", 1))
    v = CanonicalPath((0, "x0", 0))
    assert cover_mult(cg, u, v) == CanonicalPath((0, "x1", 0, "x0", 0))


def test_cover_mult_associative_bounded():
    for name, S, gens in corpus.cover_cases()[:2]:
        cg = build_cover_graph(S, gens)
        forms = enumerate_canonical(cg, 2)
        sample = forms if len(forms) <= 25 else forms[::  len(forms) // 25 + 1]
        for u in sample:
            for v in sample:
                uv = cover_mult(cg, u, v)
                for w in sample:
                    assert cover_mult(cg, uv, w) == \
                        cover_mult(cg, u, cover_mult(cg, v, w)), name


def test_cover_unary_identities_bounded():
    cg = e2_cover()
    forms = enumerate_canonical(cg, 3)
    for u in forms:
        up, us = cover_plus_star(cg, u)
        assert cover_mult(cg, up, u) == u              # x^+ x = x
        assert cover_mult(cg, u, us) == u              # x x^* = x
        for v in forms:
            vp, vs = cover_plus_star(cg, v)
            assert cover_mult(cg, up, vp) == cover_mult(cg, vp, up)
            uv = cover_mult(cg, u, v)
            assert cover_plus_star(cg, uv)[0] == \
                cover_plus_star(cg, cover_mult(cg, u, vp))[0]


def test_cover_plus_star():
    cg = e2_cover()
    assert cover_plus_star(cg, CanonicalPath.loop_at(1)) == \
        (CanonicalPath.loop_at(1), CanonicalPath.loop_at(1))
    u = CanonicalPath((1, "x1", 1))
    assert cover_plus_star(cg, u) == \
        (CanonicalPath.loop_at(1), CanonicalPath.loop_at(1))
    v = CanonicalPath((0, "x1", 0, "x0", 0))
    assert cover_plus_star(cg, v) == \
        (CanonicalPath.loop_at(0), CanonicalPath.loop_at(0))


def test_phi_examples():
    cg = e2_cover()
    S = cg.S
    assert phi(cg, CanonicalPath.loop_at(1)) == 1
    w = CanonicalPath((0, "x1", 0, "x0", 0))
    assert phi(cg, w) == S.prod([0, 1, 0, 0, 0]) == 0
    u = CanonicalPath((1, "x1", 1))
    v = CanonicalPath((0, "x0", 0))
    assert phi(cg, cover_mult(cg, u, v)) == S.mult[phi(cg, u)][phi(cg, v)]


def test_phi_of_canonicalize_agrees_on_raw_paths():
    cg = e2_cover()
    for p in resgraph.all_paths(cg.graph, 3):
        u = canonicalize(cg, p)
        raw = cg.proj_list[p[0][0]]
        for c in p:
            if c[1]:
                raw = cg.S.mult[raw][cg.valuation[c[1][0]]]
            raw = cg.S.mult[raw][cg.proj_list[c[2]]]
        assert phi(cg, u) == raw


def test_preimage_round_trip_all_cases():
    for name, S, gens in corpus.cover_cases():
        cg = build_cover_graph(S, gens)
        for s in range(S.n):
            u = canonical_preimage(cg, s)
            assert phi(cg, u) == s, (name, s)


def test_preimage_of_projection_is_loop():
    for name, S, gens in corpus.cover_cases():
        cg = build_cover_graph(S, gens)
        for e in core.projections(S).members:
            u = canonical_preimage(cg, e)
            assert u.is_loop and cg.proj_list[u.d] == e, name


def test_preimage_of_generator_is_single_edge():
    S = corpus.eight_monoid()
    name, _, gens = corpus.cover_cases()[2]
    cg = build_cover_graph(S, gens)
    for g in gens:
        if g in core.projections(S).members:
            continue
        u = canonical_preimage(cg, g)
        assert u.length == 1
        assert cg.proj_list[u.d] == S.plus[g]
        assert cg.proj_list[u.r] == S.star[g]


def test_phi_morphism_sampled():
    rng = random.Random(5)
    for name, S, gens in corpus.cover_cases():
        cg = build_cover_graph(S, gens)
        forms = enumerate_canonical(cg, 2)
        for _ in range(300):
            u = rng.choice(forms)
            v = rng.choice(forms)
            assert phi(cg, cover_mult(cg, u, v)) == \
                S.mult[phi(cg, u)][phi(cg, v)], name
            up, us = cover_plus_star(cg, u)
            assert phi(cg, up) == S.plus[phi(cg, u)], name
            assert phi(cg, us) == S.star[phi(cg, u)], name


def test_sigma_label_on_canonical_forms():
    # same letter word <=> sigma-related; tested through the constructive
    # chain: every form is the product of its edges, each edge below the
    # letter maximum
    cg = e2_cover()
    forms = [u for u in enumerate_canonical(cg, 2) if not u.is_loop]
    for u in forms:
        for v in forms:
            if u.word == v.word:
                for i in range(u.length):
                    a = u.word[i]
                    top = max_edge_for_letter(cg, a)
                    eu = (u.entries[2 * i], (a,), u.entries[2 * i + 2])
                    ev = (v.entries[2 * i], (a,), v.entries[2 * i + 2])
                    assert product.edge_le(cg.graph, eu, top)
                    assert product.edge_le(cg.graph, ev, top)


def test_verify_cover_e2():
    rep = verify_cover(corpus.chain(2), [0, 1], len_bound=3)
    assert rep.ok, [c.line() for c in rep.failures()]


def test_verify_cover_pt2_len2():
    name, S, gens = corpus.cover_cases()[1]
    rep = verify_cover(S, gens, len_bound=2)
    assert rep.ok, [c.line() for c in rep.failures()]


def test_verify_cover_pt3():
    # 64-element partial transformation monoid; cycle, swap, merge and a
    # partial identity generate it
    alg = relmonoid.full_PT(3)
    S = alg.to_semigroup()
    gens = [alg.index[relmonoid.Rel.from_pairs(3, pairs)] for pairs in (
        [(0, 1), (1, 2), (2, 0)],
        [(0, 1), (1, 0), (2, 2)],
        [(0, 0), (1, 0), (2, 2)],
        [(0, 0), (1, 1)],
    )]
    rep = verify_cover(S, gens, len_bound=2)
    assert rep.ok, [c.line() for c in rep.failures()]


def test_fes_witness_found_in_b2():
    rep = fes_witness_check()
    assert rep.status == PASS
    assert rep.ground_size == 2
    x, y = rep.x, rep.y
    left = relmonoid.compose(x, relmonoid.dom(y))
    right = relmonoid.compose(relmonoid.dom(relmonoid.compose(x, y)), x)
    assert relmonoid.dom(left) == relmonoid.dom(right)
    assert relmonoid.ran(left) != relmonoid.ran(right)


def test_fes_witness_known_candidate():
    # the candidate pair from the one-row relation and the point fixer
    x = relmonoid.Rel.from_pairs(2, [(0, 0), (0, 1)])
    y = relmonoid.Rel.from_pairs(2, [(1, 1)])
    left = relmonoid.compose(x, relmonoid.dom(y))
    right = relmonoid.compose(relmonoid.dom(relmonoid.compose(x, y)), x)
    assert relmonoid.dom(left) == relmonoid.dom(right)
    assert relmonoid.ran(left) != relmonoid.ran(right)


def test_fes_terms_sigma_related_in_b2():
    # in the relation monoid all projections collapse, so the two term
    # values are sigma-related in any interpretation
    alg = relmonoid.full_B(2)
    S = alg.to_semigroup()
    cong, _ = core.sigma(S)
    rep = fes_witness_check()
    x, y = rep.x, rep.y
    left = relmonoid.compose(x, relmonoid.dom(y))
    right = relmonoid.compose(relmonoid.dom(relmonoid.compose(x, y)), x)
    assert cong.same(alg.index[left], alg.index[right])
