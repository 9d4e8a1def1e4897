import pytest

from coxshadow.oracle import (
    Ball,
    BallCapExceeded,
    Inconclusive,
    NotUnique,
    build_ball,
    oracle_cone_partition,
    oracle_length,
    oracle_part_minimum,
    oracle_reduced,
    oracle_shi_partition,
    oracle_small_roots,
    verify_bipodality,
)

from .conftest import INF_DIHEDRAL, RANDOM_RANK3, context, group


def test_ball_sizes():
    assert len(build_ball(group("A2"), 0)) == 1
    assert len(build_ball(group(INF_DIHEDRAL), 3)) == 7
    assert len(build_ball(group("A2"), 10)) == 6
    assert len(build_ball(group("H3"), 20)) == 120
    with pytest.raises(ValueError):
        build_ball(group("A2"), -1)


@pytest.mark.parametrize("name", ["Atilde2", "triangle(3,3,4)", RANDOM_RANK3])
def test_ball_structure(name):
    W = group(name)
    small, big = Ball(W, 5), Ball(W, 6)
    assert len(small) < len(big)
    for i, g in enumerate(big.elements):
        assert g.length == big.depth[i]
        assert bin(big.mask[i]).count("1") == big.depth[i]
        for s in range(W.rank):
            h = W.mul_gen(g, s)
            if h.length < g.length:
                assert h in big
            assert (big.nbr[i][s] >= 0) == (h in big)
        assert big.elements[big.inverse_idx[i]] == W.inverse(g)


def test_ball_cap():
    with pytest.raises(BallCapExceeded):
        Ball(group("triangle(3,3,4)"), 12, cap=100)


def test_reducedness():
    ball = Ball(group("A2"), 5)
    assert not oracle_reduced(ball, [0, 0])
    assert oracle_reduced(ball, [0, 1, 0])
    assert not oracle_reduced(ball, [0, 1, 0, 1])
    assert oracle_reduced(ball, [])
    with pytest.raises(Inconclusive):
        oracle_reduced(ball, [0, 1] * 3)
    assert oracle_length(ball, group("A2").parse_word("s2 s1 s2")) == 3


def test_walls_and_distance():
    W = group("Gtilde2")
    ball = Ball(W, 8)
    g = ball.index[W.parse_word("s1 s2 s3")]
    h = ball.index[W.parse_word("s2 s3")]
    assert ball.distance(g, h) == W.multiply(W.inverse(W.parse_word("s1 s2 s3")), W.parse_word("s2 s3")).length
    assert ball.leq(ball.index[W.gen(0)], g)
    assert not ball.leq(ball.index[W.gen(1)], g)
    assert ball.on_geodesic(ball.index[W.parse_word("s1 s2")], g)
    assert sorted(ball.below(g)) == sorted(ball.index[W.element(g_word)] for g_word in ([], [0], [0, 1], [0, 1, 2]))


def test_cone_partitions():
    D = Ball(group(INF_DIHEDRAL), 10)
    assert len(oracle_cone_partition(D, 3)) == 3
    A = Ball(group("A2"), 8)
    parts = oracle_cone_partition(A, 3)
    assert len(parts) == 6 and all(len(p) == 1 for p in parts)
    with pytest.raises(ValueError):
        oracle_cone_partition(A, 0)


def test_cone_partition_unstable_is_inconclusive():
    # G~2 cone types need extensions longer than 2 to separate
    with pytest.raises(Inconclusive):
        oracle_cone_partition(Ball(group("Gtilde2"), 8), 2)


def test_cone_classes_match_reachable_states():
    c = context("Atilde2")
    ball = Ball(c.W, 10)
    assert len(oracle_cone_partition(ball, 4)) == c.minimal.n_states


def test_part_minimum():
    W = group(INF_DIHEDRAL)
    ball = Ball(W, 8)
    s = ball.index[W.gen(0)]
    part = [i for i in range(len(ball)) if ball.word_of(i)[:1] == [0]]
    assert oracle_part_minimum(ball, part) == s
    assert oracle_part_minimum(ball, [s]) == s
    t = ball.index[W.gen(1)]
    assert isinstance(oracle_part_minimum(ball, [s, t]), NotUnique)
    with pytest.raises(ValueError):
        oracle_part_minimum(ball, [])


def test_shi_partition_of_infinite_dihedral():
    W = group(INF_DIHEDRAL)
    ball = Ball(W, 8)
    small = [ball.wall_index[a] for a in W.simple_roots]
    assert len(oracle_shi_partition(ball, small)) == 3


def test_small_roots_oracle():
    W = group(INF_DIHEDRAL)
    assert oracle_small_roots(W, 4) == set(W.simple_roots)
    assert len(oracle_small_roots(group("A2"), 3)) == 3
    assert len(oracle_small_roots(group("Gtilde2"), 8)) == 12


def test_bipodality_vacuous_cases():
    commuting = verify_bipodality(group("rank 2"), 6)
    assert commuting.ok and commuting.hypothesis_met == 0
    a2 = verify_bipodality(group("A2"), 6)
    assert a2.ok and a2.hypothesis_met == 0 and a2.instances > 0


@pytest.mark.parametrize("name", ["Gtilde2", "Atilde2", "triangle(3,3,4)", RANDOM_RANK3])
def test_bipodality_holds(name):
    rep = verify_bipodality(group(name), 10)
    assert rep.ok, rep.failures[:3]
    assert rep.hypothesis_met > 0
    assert set(rep.to_json()) >= {"instances", "passed", "skipped", "failures"}
