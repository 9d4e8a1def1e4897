import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxshadow.core import NoUpperBoundWithin, Wall

from .conftest import INF_DIHEDRAL, group

SYSTEMS = ["A2", "B2", "A3", "H3", "Atilde2", "Gtilde2", "triangle(3,3,4)", INF_DIHEDRAL]


def test_generators_are_involutions():
    for name in SYSTEMS:
        W = group(name)
        for s in range(W.rank):
            assert W.gen(s).length == 1
            assert W.mul_gen(W.gen(s), s) == W.identity


@pytest.mark.parametrize("name", ["A2", "B2", "H3", "Gtilde2", "triangle(2,3,7)"])
def test_braid_relations(name):
    W = group(name)
    for s in range(W.rank):
        for t in range(s + 1, W.rank):
            m = int(W.system.m(s, t))
            g = W.element([s, t] * m)
            assert g == W.identity
            assert W.element([s, t] * (m - 1)) != W.identity


def test_infinite_bond_has_no_relation():
    W = group(INF_DIHEDRAL)
    g = W.element([0, 1] * 20)
    assert g.length == 40


def test_shortlex_word():
    W = group("A2")
    g = W.parse_word("s2 s1 s2")
    assert g.word == (0, 1, 0)
    assert W.format_word(g.word) == "s1 s2 s1"
    assert W.parse_word("e") == W.identity
    assert W.format_word(()) == "e"


def test_parse_word_errors():
    with pytest.raises(ValueError):
        group("A2").parse_word("s3")


def test_finite_group_order():
    for name, order in (("A2", 6), ("B2", 8), ("A3", 24), ("H3", 120)):
        W = group(name)
        seen = {W.identity}
        frontier = [W.identity]
        while frontier:
            nxt = []
            for g in frontier:
                for s in range(W.rank):
                    h = W.mul_gen(g, s)
                    if h not in seen:
                        seen.add(h)
                        nxt.append(h)
            frontier = nxt
        assert len(seen) == order


def words(max_len=10):
    return st.lists(st.integers(0, 2), max_size=max_len)


@given(st.sampled_from(["A3", "Atilde2", "Gtilde2", "triangle(3,3,4)"]), words())
@settings(max_examples=120, deadline=None)
def test_element_invariants(name, word):
    W = group(name)
    g = W.element(word)
    assert g.length <= len(word)
    assert (g.length - len(word)) % 2 == 0
    assert W.element(g.word) == g and len(g.word) == g.length
    assert len(W.inversion_set(g)) == g.length
    assert W.multiply(g, W.inverse(g)) == W.identity
    assert W.inverse(W.inverse(g)) == g
    # inversion roots are exactly the positive roots sent negative by g^-1
    for beta in W.inversion_set(g):
        assert W.separates_from_id(beta, g)


@given(st.sampled_from(["A3", "Atilde2", "triangle(3,3,4)"]), words(8), words(8))
@settings(max_examples=80, deadline=None)
def test_length_subadditive_and_weak_order(name, u, v):
    W = group(name)
    g, h = W.element(u), W.element(v)
    gh = W.multiply(g, h)
    assert gh.length <= g.length + h.length
    if gh.length == g.length + h.length:
        assert W.weak_leq(g, gh)


def test_prefixes_are_below():
    W = group("Gtilde2")
    g = W.parse_word("s1 s2 s3 s2 s1 s2 s3")
    for k in range(len(g.word) + 1):
        p = W.element(g.word[:k])
        assert W.weak_leq(p, g)
    assert not W.weak_leq(W.gen(2), W.gen(0))


def test_reflection():
    W = group("triangle(3,3,4)")
    g = W.parse_word("s1 s2 s3")
    beta = W.apply(g, W.simple_roots[0])
    r = W.reflection(beta)
    assert W.multiply(r, r) == W.identity
    assert W.apply(r, beta) == tuple(-x for x in beta)
    assert r == W.multiply(W.multiply(g, W.gen(0)), W.inverse(g))
    wall = Wall(W, tuple(-x for x in beta))
    assert wall == Wall(W, beta) and wall.refl == r


def test_joins():
    A2 = group("A2")
    s, t = A2.gen(0), A2.gen(1)
    assert A2.join(s, t, 3) == A2.parse_word("s1 s2 s1")
    B2 = group("B2")
    assert B2.join(B2.gen(0), B2.gen(1), 4).length == 4
    D = group(INF_DIHEDRAL)
    assert D.join(D.gen(0), D.gen(1), 8) == NoUpperBoundWithin(8)
    G = group("Gtilde2")
    u = G.parse_word("s1 s2")
    assert G.join(u, G.identity, 5) == u
    assert G.join(u, u, 5) == u


def test_join_is_least_upper_bound():
    W = group("Atilde2")
    # s1 s2 and s3 have no upper bound: it would invert both alpha_3 and delta - alpha_3
    assert W.join(W.parse_word("s1 s2"), W.gen(2), 10) == NoUpperBoundWithin(10)
    u, v = W.parse_word("s1 s2"), W.parse_word("s2 s1")
    j = W.join(u, v, 8)
    assert j == W.parse_word("s1 s2 s1")
    # every common upper bound within the radius lies above j
    for w, inv in (x for layer in W.upper_layers(u, 6) for x in layer):
        if W.inversion_set(v) <= inv:
            assert W.inversion_set(j) <= inv


def test_descent_walls_and_json():
    W = group("A2")
    g = W.parse_word("s1 s2")
    walls = W.descent_walls(g)
    assert [s for s, _ in walls] == [1]
    data = g.to_json()
    assert data["word"] == "s1 s2" and data["length"] == 2
    assert len(data["inversion_roots"]) == 2
