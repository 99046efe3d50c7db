import random
from itertools import combinations

import pytest

import oracles
from matstruct.certificates import verify_certificate
from matstruct.constructions import (
    clique,
    complete_graph,
    copies_of_u12,
    free_matroid,
    graphic,
    linear_matroid,
    rank_zero,
    uniform,
)
from matstruct.corpus import disjoint_bases_corpus, upper_triangular_gf3
from matstruct.covering import has_minor
from matstruct.matroid import MatroidError, direct_sum, dual, is_basis, loops_coloops
from matstruct.triangular import (
    TriangularPair,
    decompose_trivial,
    extract_selfdual,
    extract_triangularone,
    extract_triangulartwo,
    goodbasis_split,
    is_triangular,
    reduce_triangular,
)


def closure(r, ground, S):
    S = frozenset(S)
    return frozenset(x for x in ground if r[S | {x}] == r[S])


def oracle_upper(M, a, b):
    """Prefix closures compared as sets, from an enumerated rank table."""
    g = list(M.ground)
    r = oracles.rank_dict(g, lambda S: M.rank(S))
    if not (r[frozenset(a)] == r[frozenset(b)] == len(a) == r[frozenset(g)]):
        return False
    return all(closure(r, g, a[:k]) == closure(r, g, b[:k]) for k in range(1, len(a) + 1))


def gf3_example():
    M = linear_matroid(3, [[1, 0, 1, 2], [0, 1, 0, 1]], ["a1", "a2", "b1", "b2"])
    return M, TriangularPair(("a1", "a2"), ("b1", "b2"))


# ------------------------------------------------------------ goodbasis


@pytest.mark.parametrize(
    "M,t,captured",
    [(uniform(2, 6), 2, 4), (free_matroid(["f0", "f1", "f2"]), 0, 0), (uniform(1, 4), 1, 3)],
)
def test_goodbasis_examples(M, t, captured):
    got_t, cap = goodbasis_split(M, M.ground)
    assert got_t == t and len(cap) == captured


@pytest.mark.parametrize("seed", range(10))
def test_goodbasis_bound_random_orders(seed):
    rng = random.Random(seed)
    M = clique(4)[0]
    order = list(M.ground)
    rng.shuffle(order)
    t, cap = goodbasis_split(M, order)
    assert len(cap) >= M.n // (M.r + 1)
    assert all(M.rank(set(order[:t]) | {x}) == M.rank(order[:t]) for x in cap)
    if t:
        _, shorter = t - 1, set(order[: t - 1])
        extra = [x for x in M.ground if x not in shorter and M.rank(shorter | {x}) == M.rank(shorter)]
        assert len(extra) < M.n // (M.r + 1)


# ------------------------------------------------------------ is_triangular


def test_triangular_examples():
    M, p = gf3_example()
    assert is_triangular(M, p)
    assert oracle_upper(M, p.a, p.b)
    swapped = TriangularPair(p.a, p.b[::-1])
    assert not is_triangular(M, swapped) and not oracle_upper(M, swapped.a, swapped.b)
    P = copies_of_u12(2)
    pp = TriangularPair(("x1", "x2"), ("y1", "y2"))
    assert is_triangular(P, pp, "upper") and is_triangular(P, pp, "lower")


def test_involution_is_self_inverse():
    _, p = gf3_example()
    phi = p.phi
    assert all(phi[phi[x]] == x for x in phi)
    assert set(phi) == set(p.a) | set(p.b)


@pytest.mark.parametrize("seed", range(20))
def test_upper_matches_oracle_and_lower_matches_dual(seed):
    rng = random.Random(seed)
    r = rng.choice((2, 3))
    M, a, b = upper_triangular_gf3(r, rng)
    ap, bp = list(a), list(b)
    if seed % 2:
        i, j = rng.sample(range(r), 2)
        bp[i], bp[j] = bp[j], bp[i]
    pair = TriangularPair(tuple(ap), tuple(bp))
    assert is_triangular(M, pair) == oracle_upper(M, ap, bp)
    D = dual(M)
    low = TriangularPair(tuple(ap), tuple(bp), "lower")
    assert is_triangular(D, low) == is_triangular(D, low, via_dual=True) == oracle_upper(M, ap, bp)


def test_bad_pairs_rejected():
    with pytest.raises(MatroidError):
        TriangularPair(("a",), ("b", "c"))
    with pytest.raises(MatroidError):
        TriangularPair(("a",), ("b",), "sideways")


# ------------------------------------------------------------ reduction


def test_reduce_examples():
    M, p = gf3_example()
    N, q = reduce_triangular(M, p, set())
    assert N.ground == M.ground and q == p
    P = copies_of_u12(2)
    pp = TriangularPair(("x1", "x2"), ("y1", "y2"))
    N, q = reduce_triangular(P, pp, {"x1"})
    assert (N.r, N.n) == (1, 2) and q.a == ("x2",) and q.b == ("y2",)
    for mode in ("contract-X", "contract-phiX"):
        N, q = reduce_triangular(M, p, {"a1"}, mode)
        assert is_triangular(N, q) and oracle_upper(N, q.a, q.b)


@pytest.mark.parametrize("seed", range(15))
def test_reduce_every_subset(seed):
    rng = random.Random(100 + seed)
    M, a, b = upper_triangular_gf3(rng.choice((2, 3, 4)), rng)
    pair = TriangularPair(a, b)
    for k in range(len(a) + 1):
        for X in combinations(a, k):
            for mode in ("contract-X", "contract-phiX"):
                N, q = reduce_triangular(M, pair, X, mode)
                assert is_triangular(N, q)


def test_reduce_rejects_bad_input():
    M, p = gf3_example()
    with pytest.raises(MatroidError):
        reduce_triangular(M, p, {"b1"})
    with pytest.raises(MatroidError):
        reduce_triangular(M, TriangularPair(p.a, p.b[::-1]), set())


# ------------------------------------------------------------ extractors


def test_triangularone_examples():
    U = uniform(2, 4)
    ex = extract_triangularone(U, {"e0", "e1"}, {"e2", "e3"}, 2, 3)
    assert ex.outcome == "uniform" and verify_certificate(U, ex.certificate.target, ex.certificate)
    P = copies_of_u12(2)
    ex = extract_triangularone(P, {"x1", "x2"}, {"y1", "y2"}, 2, 2)
    assert ex.outcome == "lower"
    N = ex.certificate.minor_of(P)
    assert is_triangular(N, ex.pair, "lower") and set(N.ground) == set(P.ground)
    K = clique(3)[0]
    ex = extract_triangularone(K, {"e0_1", "e1_2", "e2_3"}, {"e0_2", "e0_3", "e1_3"}, 2, 1)
    assert ex.outcome == "lower"
    N = ex.certificate.minor_of(K)
    assert N.r == 1 and is_triangular(N, ex.pair, "lower")
    assert is_triangular(dual(N), TriangularPair(ex.pair.a, ex.pair.b), "upper")


def test_triangularone_needs_disjoint_bases():
    U = uniform(2, 4)
    with pytest.raises(MatroidError):
        extract_triangularone(U, {"e0", "e1"}, {"e1", "e2"}, 2, 1)


def test_triangulartwo_examples():
    P = copies_of_u12(2)
    pp = TriangularPair(("x1", "x2"), ("y1", "y2"))
    ex = extract_triangulartwo(P, pp, 2, 0)
    assert ex.outcome == "parallel" and ex.certificate.target.n == 0
    ex = extract_triangulartwo(P, pp, 2, 2)
    assert ex.outcome == "parallel" and ex.certificate.target.n == 4
    assert verify_certificate(P, ex.certificate.target, ex.certificate)
    rng = random.Random(7)
    M, a, b = upper_triangular_gf3(4, rng)
    ex = extract_triangulartwo(M, TriangularPair(a, b), 2, 1)
    assert ex.outcome in ("uniform", "parallel")
    c = ex.certificate
    assert verify_certificate(M, c.target, c)
    mnr = c.minor_of(M)
    assert is_basis(mnr, [x for x in a if x in mnr]) and is_basis(mnr, [x for x in b if x in mnr])


@pytest.mark.parametrize("inst", disjoint_bases_corpus(), ids=lambda i: i.name)
def test_selfdual_agrees_with_exhaustive_search(inst):
    M = inst.matroid
    ex = extract_selfdual(M, inst.A, inst.B, 2, 2)
    u = has_minor(M, uniform(2, 4))
    p = has_minor(M, copies_of_u12(2))
    if ex.outcome == "failed":
        assert u is None and p is None
        return
    c = ex.certificate
    assert verify_certificate(M, c.target, c)
    mnr = c.minor_of(M)
    assert is_basis(mnr, [x for x in inst.A if x in mnr])
    assert is_basis(mnr, [x for x in inst.B if x in mnr])
    assert (u if ex.outcome == "uniform" else p) is not None


def test_selfdual_graphic_sum_gives_parallel_pairs():
    K = clique(3)[0]
    KK = direct_sum(K, graphic(complete_graph(4, start=4)))
    A = {"e0_1", "e1_2", "e2_3", "e4_5", "e5_6", "e6_7"}
    ex = extract_selfdual(KK, A, set(KK.ground) - A, 2, 2)
    assert ex.outcome == "parallel"
    assert has_minor(KK, uniform(2, 4)) is None


def test_decompose_trivial_examples():
    M = direct_sum(free_matroid(["f0", "f1"]), rank_zero(["z0", "z1"]))
    ex = decompose_trivial(M, 2)
    assert ex.outcome == "trivial" and ex.removed == 0
    U = uniform(2, 4)
    assert decompose_trivial(U, 2).outcome == "uniform"
    M = direct_sum(copies_of_u12(3), free_matroid(["c0", "c1"]))
    ex = decompose_trivial(M, 3)
    assert ex.outcome == "parallel" and ex.certificate.target.n == 6
    assert verify_certificate(M, ex.certificate.target, ex.certificate)


@pytest.mark.parametrize("seed", range(12))
def test_decompose_trivial_outcomes_verify(seed):
    rng = random.Random(seed)
    r, n, q = rng.randint(1, 3), rng.randint(2, 7), rng.choice((2, 3))
    rows = [[rng.randrange(q) for _ in range(n)] for _ in range(r)]
    M = linear_matroid(q, rows)
    s = rng.choice((1, 2))
    ex = decompose_trivial(M, s)
    assert ex.outcome in ("uniform", "parallel", "trivial")
    c = ex.certificate
    if ex.outcome == "trivial":
        N = c.minor_of(M)
        lo, co = loops_coloops(N)
        assert lo | co == frozenset(N.ground)
        assert ex.removed == M.n - N.n <= ex.bound
    else:
        assert verify_certificate(M, c.target, c)
