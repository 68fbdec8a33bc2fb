import pytest

from ehresmann import core, relmonoid
from ehresmann.relmonoid import ClosureOverflowError, Rel

from oracles import compose_pairs


def rel(n, *pairs):
    return Rel.from_pairs(n, pairs)


def test_compose_identity_and_empty():
    a = rel(3, (0, 1), (2, 2))
    assert relmonoid.compose(relmonoid.identity(3), a) == a
    assert relmonoid.compose(a, relmonoid.identity(3)) == a
    assert relmonoid.compose(relmonoid.empty(3), a) == relmonoid.empty(3)


def test_compose_matches_set_oracle():
    # the example on a 4-point ground set: {(0,2),(1,3)} ; {(2,2)} = {(0,2)}
    a = rel(4, (0, 2), (1, 3))
    b = rel(4, (2, 2))
    out = relmonoid.compose(a, b)
    assert set(out.pairs()) == compose_pairs(set(a.pairs()), set(b.pairs()))
    assert out == rel(4, (0, 2))

    import random
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(1, 4)
        pa = {(rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(0, 6))}
        pb = {(rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(0, 6))}
        x, y = Rel.from_pairs(n, pa), Rel.from_pairs(n, pb)
        assert set(relmonoid.compose(x, y).pairs()) == compose_pairs(pa, pb)


def test_compose_ground_mismatch():
    with pytest.raises(ValueError):
        relmonoid.compose(rel(2, (0, 0)), rel(3, (0, 0)))


def test_dom_ran():
    ident = relmonoid.identity(2)
    assert relmonoid.dom_ran(ident) == (ident, ident)

    tau = rel(2, (0, 0), (0, 1))
    d, r = relmonoid.dom_ran(tau)
    assert d == rel(2, (0, 0))
    assert r == ident

    e = relmonoid.empty(2)
    assert relmonoid.dom_ran(e) == (e, e)

    for a in relmonoid.all_relations(2):
        d, r = relmonoid.dom_ran(a)
        assert relmonoid.compose(d, a) == a
        assert relmonoid.compose(a, r) == a


def test_classify():
    assert relmonoid.classify(relmonoid.identity(2)) == {
        "in_PT": True, "in_PTc": True, "in_I": True}
    assert relmonoid.classify(rel(2, (0, 0), (0, 1))) == {
        "in_PT": False, "in_PTc": True, "in_I": False}
    assert relmonoid.classify(rel(3, (0, 2), (1, 2))) == {
        "in_PT": True, "in_PTc": False, "in_I": False}


def test_classify_closed_under_operations():
    for flag, rels in (("in_PT", relmonoid.all_partial_maps(2)),
                       ("in_PTc", relmonoid.all_partial_comaps(2)),
                       ("in_I", relmonoid.all_partial_bijections(2))):
        for a in rels:
            d, r = relmonoid.dom_ran(a)
            assert relmonoid.classify(d)[flag] and relmonoid.classify(r)[flag]
            for b in rels:
                assert relmonoid.classify(relmonoid.compose(a, b))[flag]


def test_generate_single_relation():
    alg = relmonoid.generate(1, [rel(1, (0, 0))])
    assert len(alg.elements) == 1
    alg = relmonoid.generate(1, [rel(1, (0, 0)), relmonoid.empty(1)])
    assert len(alg.elements) == 2


def test_generate_full_b2():
    alg = relmonoid.generate(2, relmonoid.all_relations(2))
    assert len(alg.elements) == 16
    S = alg.to_semigroup()
    assert core.verify_ehresmann(S).ok


def test_generate_all_partial_maps_is_pt2():
    alg = relmonoid.generate(2, relmonoid.all_partial_maps(2))
    assert len(alg.elements) == 9
    S = alg.to_semigroup()
    assert core.verify_ehresmann(S).ok
    assert core.verify_restriction(S, "left").ok


def test_full_monoid_sizes():
    assert len(relmonoid.full_B(2).elements) == 16
    assert len(relmonoid.full_PT(2).elements) == 9
    assert len(relmonoid.full_PTc(2).elements) == 9
    assert len(relmonoid.full_I(2).elements) == 7
    assert len(relmonoid.full_I(3).elements) == 34


def test_closure_cap_overflow():
    with pytest.raises(ClosureOverflowError):
        relmonoid.generate(2, relmonoid.all_relations(2), cap=5)


def test_closure_cap_env(monkeypatch):
    monkeypatch.setenv("EHRESMANN_MAX_CLOSURE", "5")
    with pytest.raises(ClosureOverflowError):
        relmonoid.generate(2, relmonoid.all_relations(2))


def test_natural_le_contained_in_inclusion():
    rels = relmonoid.all_relations(2)
    for a in rels:
        for b in rels:
            if relmonoid.natural_le(a, b):
                assert a.issubset(b)


def test_natural_le_equals_inclusion_on_partial_bijections():
    rels = relmonoid.all_partial_bijections(2)
    for a in rels:
        for b in rels:
            assert relmonoid.natural_le(a, b) == a.issubset(b)


def test_inclusion_strictly_bigger_on_b4():
    # mu subset of tau but mu not <= tau, on the 4-point ground set
    mu = rel(4, (0, 2), (1, 3))
    tau = rel(4, (0, 2), (0, 3), (1, 2), (1, 3))
    assert mu.issubset(tau)
    assert not relmonoid.natural_le(mu, tau)


def test_natural_le_on_table_agrees_with_relation_level():
    alg = relmonoid.full_B(2)
    S = alg.to_semigroup()
    orders = core.natural_orders(S)
    for i, a in enumerate(alg.elements):
        for j, b in enumerate(alg.elements):
            assert orders.le[i][j] == relmonoid.natural_le(a, b)


def test_i2_table_order_is_inclusion():
    # on the symmetric inverse monoid the natural order of the table is
    # exactly relation inclusion
    alg = relmonoid.full_I(2)
    S = alg.to_semigroup()
    orders = core.natural_orders(S)
    for i, a in enumerate(alg.elements):
        for j, b in enumerate(alg.elements):
            assert orders.le[i][j] == a.issubset(b)
