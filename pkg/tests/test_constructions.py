from itertools import combinations

import pytest

import oracles
from matstruct.constructions import (
    Graph,
    bicircular_plus,
    clique,
    complete_graph,
    copies_of_u12,
    gfq_representable,
    graphic,
    is_a_complete,
    is_b_clique,
    is_framed_by,
    linear_matroid,
    projective_geometry,
    representation_matroid,
    uniform,
    vandermonde,
)
from matstruct.corpus import vamos
from matstruct.matroid import MatroidError, is_circuit, is_isomorphic, same_matroid


def circuits_through(M, I):
    """Elements e outside I with I + e a circuit, by direct enumeration."""
    return [e for e in M.ground if e not in I and is_circuit(M, set(I) | {e})]


def brute_a_complete(M, B, a):
    return all(circuits_through(M, I) for k in range(2, a + 1) for I in combinations(sorted(B), k))


def test_small_families():
    U = uniform(2, 4)
    assert all(U.rank(S) == 2 for S in combinations(U.ground, 3))
    Z = uniform(0, 3)
    assert all(Z.rank({e}) == 0 for e in Z.ground)
    T = copies_of_u12(3)
    assert (T.n, T.r) == (6, 3)


@pytest.mark.parametrize("n,q,size", [(2, 2, 3), (3, 2, 7), (3, 3, 13), (2, 4, 5), (4, 2, 15)])
def test_projective_geometry_sizes(n, q, size):
    P = projective_geometry(n, q)
    assert (P.n, P.r) == (size, n)
    # simple: no loops, no parallel pairs
    assert all(P.rank({e}) == 1 for e in P.ground)
    assert all(P.rank(set(p)) == 2 for p in combinations(P.ground, 2))


def test_pg_1_2_is_u23_and_identity_is_free():
    assert is_isomorphic(projective_geometry(2, 2), uniform(2, 3)) is not None
    I3 = linear_matroid(2, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert I3.rank(I3.ground) == 3


@pytest.mark.parametrize("s,q", [(2, 5), (3, 7), (2, 4)])
def test_vandermonde_is_uniform(s, q):
    V = vandermonde(s, q)
    assert is_isomorphic(V, uniform(s, q)) is not None


def test_graphic_examples():
    K3 = graphic(complete_graph(3))
    assert is_isomorphic(K3, uniform(2, 3)) is not None
    L = graphic(Graph(("0",), (("l", "0", "0"),)))
    assert L.rank({"l"}) == 0


def test_clique_predicates():
    M, B = clique(3)
    assert is_framed_by(M, B) and is_b_clique(M, B)
    assert is_a_complete(M, B, 2) and not is_a_complete(M, B, 3)
    assert brute_a_complete(M, B, 2) and not brute_a_complete(M, B, 3)
    U = uniform(3, 3)
    assert is_framed_by(U, U.ground) and not is_b_clique(U, U.ground)


def test_fano_with_a_basis_is_not_framed():
    # the seventh point lies on none of the three lines spanned by basis pairs
    F = projective_geometry(3, 2)
    B = {"100", "010", "001"}
    assert not is_framed_by(F, B)
    basis_cols = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    # every proper subset of the basis leaves (1,1,1) outside its span
    for k in range(3):
        for sub in combinations(basis_cols, k):
            assert oracles.gf_prime_rank(list(sub) + [(1, 1, 1)], 2) == k + 1
    assert is_a_complete(F, B, 3)


def test_pg32_is_four_complete():
    P = projective_geometry(4, 2)
    B = {"1000", "0100", "0010", "0001"}
    assert is_a_complete(P, B, 4)
    assert brute_a_complete(P, B, 4)
    with pytest.raises(MatroidError):
        is_a_complete(P, B, 1)


def test_bicircular_plus_examples():
    M, V = bicircular_plus(complete_graph(3))
    assert M.r == 3
    assert M.rank({"e0_1", "e0_2", "e1_2"}) == 3
    assert is_b_clique(M, V)
    P, _ = bicircular_plus(Graph(("u", "v"), (("e1", "u", "v"), ("e2", "u", "v"))))
    assert P.rank({"e1", "e2", "vu"}) == 2
    big, W = bicircular_plus(complete_graph(5))
    assert is_b_clique(big, W)
    verts = list(complete_graph(5).vertices)
    edges = list(complete_graph(5).edges)
    for S in combinations(big.ground, 4):
        assert big.rank(S) == oracles.bicircular_plus_rank(verts, edges, big.vertex_labels, set(S))


@pytest.mark.parametrize(
    "M,q,expect",
    [
        (uniform(2, 4), 2, False),
        (uniform(2, 4), 3, True),
        (uniform(1, 5), 2, True),
        (projective_geometry(3, 2), 3, False),
        (projective_geometry(3, 2), 4, True),
        (uniform(3, 6), 4, True),
        (uniform(3, 6), 3, False),
        (vamos(), 2, False),
    ],
)
def test_representability(M, q, expect):
    rep = gfq_representable(M, q)
    assert (rep is not None) == expect
    if rep is not None:
        assert same_matroid(representation_matroid(M, rep, q), M)


def test_representation_is_rejected_above_cap():
    with pytest.raises(MatroidError):
        gfq_representable(uniform(5, 6), 2)
