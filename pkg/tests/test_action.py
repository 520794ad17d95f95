import random
from collections import deque

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sl12gen.action import (
    GUARD_ENV,
    PointSpace,
    SpaceTooLarge,
    VectorSpace,
    alt_order,
    contains,
    gl_order,
    normal_closure,
    orbit,
    orbits,
    point_guard,
    schreier_sims,
    sl_order,
)
from sl12gen.ff import make_field
from sl12gen.gens import w_matrix
from sl12gen.matq import Matrix, diag, perm_matrix
from sl12gen.perm import Permutation


def brute_closure(gens, space):
    """All elements of <gens> by breadth-first multiplication (the oracle)."""
    els = [space.element(g) for g in gens]
    start = space.identity()
    seen = {space.key(start)}
    queue = deque([start])
    while queue:
        g = queue.popleft()
        for s in els:
            h = space.mul(g, s)
            k = space.key(h)
            if k not in seen:
                seen.add(k)
                queue.append(h)
    return len(seen)


def sl2_gens(p):
    F = make_field(p)
    return F, [Matrix.from_rows(F, [[1, 1], [0, 1]]), Matrix.from_rows(F, [[0, 1], [-1, 0]])]


@st.composite
def perm_groups(draw):
    n = draw(st.integers(2, 7))
    k = draw(st.integers(1, 3))
    rnd = draw(st.randoms(use_true_random=False))
    gens = []
    for _ in range(k):
        img = list(range(n))
        rnd.shuffle(img)
        gens.append(Permutation(img))
    return n, gens


@pytest.mark.parametrize("p,order", [(2, 6), (3, 24), (5, 120)])
def test_sl2_orders_match_oracle(p, order):
    F, gens = sl2_gens(p)
    space = VectorSpace(F, 2)
    assert brute_closure(gens, space) == order
    chain = schreier_sims(gens, space)
    assert chain.order() == order and chain.certificate == "schreier-generators"


@pytest.mark.parametrize("m,cycles", [(5, [[(1, 2, 3)], [(1, 2, 3, 4, 5)]]),
                                      (8, [[(1, 2, 3)], [(2, 3, 4, 5, 6, 7, 8)]])])
def test_alt_orders_match_oracle(m, cycles):
    gens = [Permutation.from_cycles(m, c) for c in cycles]
    space = PointSpace(m)
    assert brute_closure(gens, space) == alt_order(m)
    assert schreier_sims(gens, space).order() == alt_order(m)


def test_sym3():
    gens = [Permutation.from_cycles(3, [(1, 2, 3)]), Permutation.from_cycles(3, [(1, 2)])]
    assert schreier_sims(gens, PointSpace(3)).order() == 6


@given(perm_groups())
def test_random_permutation_groups_match_oracle(case):
    n, gens = case
    space = PointSpace(n)
    chain = schreier_sims(gens, space)
    assert chain.order() == brute_closure(gens, space)


@given(perm_groups(), st.integers(0, 2**31))
def test_randomized_chain_matches_deterministic(case, seed):
    n, gens = case
    space = PointSpace(n)
    assert schreier_sims(gens, space, randomized=True, seed=seed).order() == schreier_sims(gens, space).order()


@given(perm_groups(), st.integers(0, 2**31))
def test_membership_of_random_words(case, seed):
    n, gens = case
    space = PointSpace(n)
    chain = schreier_sims(gens, space)
    rng = random.Random(seed)
    assert chain.verify_words(20, rng)
    g = Permutation.identity(n)
    for _ in range(rng.randint(1, 30)):
        g = g * rng.choice(gens)
    assert contains(chain, g)


def test_outsider_rejected():
    space = PointSpace(6)
    chain = schreier_sims([Permutation.from_cycles(6, [(1, 2, 3)]), Permutation.from_cycles(6, [(2, 3, 4, 5, 6)])], space)
    assert chain.order() == alt_order(6)
    assert Permutation.from_cycles(6, [(1, 2)]) not in chain
    assert Permutation.from_cycles(6, [(1, 2), (3, 4)]) in chain


@given(perm_groups())
def test_orbits_partition_space(case):
    n, gens = case
    space = PointSpace(n)
    obs = orbits(gens, space)
    assert sum(len(o) for o in obs) == n
    pts = sorted(int(x) for o in obs for x in o.points)
    assert pts == list(range(n))


def test_orbit_paths_reach_points():
    F, gens = sl2_gens(3)
    space = VectorSpace(F, 2)
    o = orbit(gens, space.basis_point(1), space)
    assert len(o) == 8
    els = [space.element(g) for g in gens]
    for pt in o.points:
        g = space.identity()
        for k in o.path(int(pt)):
            g = space.mul(g, els[k])
        assert space.image(g, o.root) == int(pt)


def test_vector_ranking():
    F = make_field(3, 2)
    space = VectorSpace(F, 2)
    assert space.size == 80
    u = F.gen()
    assert space.point_of([1, 0]) == 0
    assert space.basis_point(2) == 8
    pt = space.point_of([u, 2])
    assert list(space.decode(pt)) == [0, 1, 2, 0]
    assert int(space.encode(space.decode(pt))) == pt


@given(st.sampled_from([(2, 1), (3, 1), (2, 2), (5, 1), (3, 2)]), st.integers(0, 10**6))
def test_images_agree_with_matrix_action(field, seed):
    F = make_field(*field)
    rng = np.random.default_rng(seed)
    n = 3
    rows = [[F.from_int(int(v)) for v in rng.integers(0, F.q, n)] for _ in range(n)]
    M = Matrix.from_rows(F, rows)
    space = VectorSpace(F, n)
    e = space.element(M)
    pts = rng.integers(0, space.size, 20)
    imgs = space.images(e, pts)
    for pt, img in zip(pts, imgs):
        v = [F(list(c)) for c in space.decode(int(pt)).reshape(n, F.a)]
        w = [sum((v[i] * M[i, j] for i in range(n)), F.zero) for j in range(n)]
        expected = space.point_of(w) if any(not x.is_zero() for x in w) else -1
        assert int(img) == expected == space.image(e, int(pt))


def test_guard(monkeypatch):
    with pytest.raises(SpaceTooLarge):
        VectorSpace(make_field(2, 2), 12)
    monkeypatch.setenv(GUARD_ENV, "100")
    assert point_guard() == 100
    with pytest.raises(SpaceTooLarge):
        VectorSpace(make_field(3), 5)
    assert point_guard(5000) == 5000


def _alt5(F):
    return [perm_matrix(F, 5, [(1, 2, 3)]), perm_matrix(F, 5, [(1, 2, 3, 4, 5)])]


def test_normal_closure_lemma5_q3():
    F = make_field(3)
    chain = normal_closure(_alt5(F), [w_matrix(F, 1)], VectorSpace(F, 5))
    assert chain.order() == 2 * sl_order(5, F)


def test_normal_closure_of_identity():
    F = make_field(3)
    chain = normal_closure(_alt5(F), [diag(F, [1] * 5)], VectorSpace(F, 5))
    assert chain.order() == 1


def _sign_diagonal_oracle(F):
    # conjugates of diag(1,1,1,1,-1) under Alt(5) are the five single-sign diagonals
    singles = [diag(F, [-1 if i == k else 1 for i in range(5)]) for k in range(5)]
    return brute_closure(singles, VectorSpace(F, 5))


def test_normal_closure_t0_is_sign_diagonal_group():
    F = make_field(3)
    chain = normal_closure(_alt5(F), [w_matrix(F, 0)], VectorSpace(F, 5))
    assert chain.order() == _sign_diagonal_oracle(F) == 32


def test_normal_closure_is_normal():
    F = make_field(3)
    space = VectorSpace(F, 5)
    amb = _alt5(F)
    chain = normal_closure(amb, [w_matrix(F, 1)], space)
    els = [space.element(a) for a in amb]
    for s in chain.strong:
        for a in els:
            c = space.mul(space.mul(space.inv(a), s), a)
            assert chain.contains_raw(c)


def test_order_bound_certificate():
    F, gens = sl2_gens(5)
    chain = schreier_sims(gens, VectorSpace(F, 2), upper_bound=sl_order(2, 5))
    assert chain.certificate == "order-bound" and chain.order() == 120


def test_reference_orders():
    assert sl_order(2, 3) == 24 and gl_order(2, 3) == 48
    assert sl_order(12, 2) == gl_order(12, 2)
    assert sl_order(5, 4) * 3 == gl_order(5, 4)
    assert alt_order(12) == 239500800
