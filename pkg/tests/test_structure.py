import random
from itertools import combinations

import pytest

import oracles
from matstruct.constructions import (
    clique,
    copies_of_u12,
    is_a_complete,
    is_b_clique,
    linear_matroid,
    projective_geometry,
    uniform,
)
from matstruct.covering import tau
from matstruct.matroid import direct_sum, freeze, is_isomorphic, minor, same_matroid, simplify
from matstruct.perturb import HypothesisViolation, apply_shift, pipe_contract, principal_extension, validate_shift
from matstruct.structure import (
    CliqueDecomposition,
    NotFound,
    NotSpanningClique,
    ShapeViolation,
    StackDecl,
    build_complete,
    find_skew_frame_set,
    joint_density_bound,
    spanning_clique_decompose,
    spanning_geometry_decompose,
    upgrade_complete,
    verify_stack,
    verify_threenonsingular_witness,
)


def unit(i, r):
    return "".join("1" if j == i else "0" for j in range(r))


def sum_label(idx, r):
    return "".join("1" if j in idx else "0" for j in range(r))


def brute_complete(M, B, a):
    """Every I of size 2..a in B has some e with I + e a circuit (by ranks)."""
    g = list(M.ground)
    for k in range(2, a + 1):
        for I in combinations(sorted(B), k):
            I = set(I)
            if not any(
                e not in I
                and M.rank(I | {e}) == k
                and all(M.rank((I | {e}) - {x}) == k for x in I | {e})
                for e in g
            ):
                return False
    return True


def binary_clique(n, extra):
    """``M(K_{n+1})`` over GF(2) with frame ``f1..fn`` plus extra columns
    given as lists of frame indices."""
    cols, labels = [], []
    for i in range(n):
        cols.append([1 if j == i else 0 for j in range(n)])
        labels.append(f"f{i + 1}")
    for i, j in combinations(range(n), 2):
        cols.append([1 if k in (i, j) else 0 for k in range(n)])
        labels.append(f"g{i + 1}{j + 1}")
    for lab, idx in extra.items():
        cols.append([1 if k in idx else 0 for k in range(n)])
        labels.append(lab)
    rows = [list(r) for r in zip(*cols)]
    return linear_matroid(2, rows, labels), {f"f{i + 1}" for i in range(n)}


# ------------------------------------------------------ complete builders


def test_build_complete_rank_three():
    r = 6
    P = projective_geometry(r, 2)
    B = {unit(i, r) for i in range(r)}
    B0 = [unit(i, r) for i in range(3)]
    block = ([unit(i, r) for i in range(3, 6)], sum_label({3, 4, 5}, r))
    out = build_complete(P, B, B0, [block], 2, 3)
    N = out.matroid
    assert N.r == 3 and out.witness.a == 3
    assert is_a_complete(N, out.witness.joint_set, 3)
    assert brute_complete(N, out.witness.joint_set, 3)
    assert out.witness.check(N)
    via_cert = out.certificate.minor_of(P)
    rng = random.Random(0)
    assert via_cert.ground == N.ground
    for _ in range(500):
        S = rng.sample(N.ground, rng.randint(0, 5))
        assert via_cert.rank(S) == N.rank(S)


def test_build_complete_rejects_bad_input():
    r = 6
    P = projective_geometry(r, 2)
    B = {unit(i, r) for i in range(r)}
    with pytest.raises(HypothesisViolation):
        build_complete(P, B, [unit(i, r) for i in range(3)], [], 2, 3)
    with pytest.raises(HypothesisViolation):
        build_complete(P, B, [unit(i, r) for i in range(2)], [], 2, 2)
    with pytest.raises(HypothesisViolation):
        # block plus x is not a circuit
        build_complete(P, B, [unit(i, r) for i in range(3)], [([unit(i, r) for i in range(3, 6)], sum_label({3, 4}, r))], 2, 3)


def test_upgrade_complete_rank_four():
    r = 9
    P = projective_geometry(r, 2)
    B = {unit(i, r) for i in range(r)}
    out = upgrade_complete(P, B, 3, 4)
    assert out.matroid.r == 4 and is_a_complete(out.matroid, out.witness.joint_set, 4)
    assert brute_complete(out.matroid, out.witness.joint_set, 4)


def test_upgrade_complete_hypotheses():
    P = projective_geometry(6, 2)
    B = {unit(i, 6) for i in range(6)}
    with pytest.raises(HypothesisViolation):
        upgrade_complete(P, B, 2, 3)
    with pytest.raises(HypothesisViolation):
        upgrade_complete(P, B, 3, 4)
    K, frame = clique(9)
    with pytest.raises(HypothesisViolation):
        upgrade_complete(K, frame, 3, 4)


@pytest.mark.parametrize("r,t", [(4, 2), (5, 3), (4, 3)])
def test_joint_density_bound_below_tau(r, t):
    P = projective_geometry(r, 2)
    B = {unit(i, r) for i in range(r)}
    X, bound = joint_density_bound(P, B, t, 2)
    assert len(X) == len(list(combinations(range(r), t)))
    exact, _ = tau(P, 1, cap=40)
    assert bound <= exact
    if r <= 4:
        g = list(P.ground)
        assert exact == oracles.covering_number(g, oracles.rank_dict(g, lambda S: P.rank(S)), 1)


def test_joint_density_trivial_case():
    U = uniform(2, 3)
    assert joint_density_bound(U, U.ground[:2], 3, 2) == (frozenset(), 0)


# ------------------------------------------------------ stacks


def test_verify_stack_examples():
    U = uniform(2, 4)
    assert verify_stack(U, StackDecl([U.ground], 2, 1, 2))
    assert not verify_stack(uniform(2, 3), StackDecl([uniform(2, 3).ground], 2, 1, 2))
    E = uniform(0, 0, [])
    assert verify_stack(E, StackDecl([], 2, 0, 2))
    S = direct_sum(uniform(2, 4, ["a0", "a1", "a2", "a3"]), uniform(2, 4, ["b0", "b1", "b2", "b3"]))
    assert verify_stack(S, StackDecl([["a0", "a1", "a2", "a3"], ["b0", "b1", "b2", "b3"]], 2, 2, 2))
    assert not verify_stack(S, StackDecl([["a0", "a1", "a2", "a3"], ["b0", "b1", "b2", "b3"]], 2, 2, 1))


# ------------------------------------------------------ spanning cliques


def test_three_nonsingular_examples():
    M, B = binary_clique(6, {"x1": [0, 2, 4], "x2": [1, 3, 5]})
    assert verify_threenonsingular_witness(M, B, set(), set(), set(), set())
    got = verify_threenonsingular_witness(M, B, {"f1", "f2"}, {"f3", "f4"}, {"f5", "f6"}, {"x1", "x2"})
    expect = all(minor(M, B - Bi, ()).rank({"x1", "x2"}) == 2 for Bi in ({"f1", "f2"}, {"f3", "f4"}, {"f5", "f6"}))
    assert got == expect
    L, B2 = binary_clique(3, {"z": []})
    assert not verify_threenonsingular_witness(L, B2, {"f1"}, {"f2"}, {"f3"}, {"z"})
    with pytest.raises(ShapeViolation):
        verify_threenonsingular_witness(L, B2, {"f1"}, {"f2"}, set(), {"z"})


def check_decomposition(M, B, dec):
    assert isinstance(dec, CliqueDecomposition)
    N = pipe_contract(M, dec.C1)
    assert validate_shift(N, dec.shift)[0]
    Mhat, _ = apply_shift(N, dec.shift)
    assert same_matroid(Mhat, dec.result)
    assert is_b_clique(dec.result, dec.frame)
    assert dec.path.validate()[0] and dec.path.connects(M, dec.result)
    assert len(dec.path) <= 7 * len(dec.X)
    assert len(dec.C1) <= 3 * len(dec.X) and len(dec.C2) <= len(dec.X)
    rest = frozenset(M.ground) - B - dec.X
    assert dec.W0 | dec.W1 | dec.W2 == rest
    assert not (dec.W0 & dec.W1 or dec.W0 & dec.W2 or dec.W1 & dec.W2)


def test_clique_already_clean():
    M, B = binary_clique(5, {})
    dec = spanning_clique_decompose(M, B)
    check_decomposition(M, B, dec)
    assert dec.X == frozenset() and dec.C1 == dec.C2 == frozenset()
    assert same_matroid(dec.result, M) and len(dec.path) == 0


def test_clique_parallel_element():
    M, B = binary_clique(4, {"z": [0]})
    dec = spanning_clique_decompose(M, B)
    check_decomposition(M, B, dec)
    assert dec.shift.psi.get("z") == "f1" and len(dec.path) == 0


def test_clique_element_spanned_by_three():
    M, B = binary_clique(5, {"z": [0, 1, 2]})
    dec = spanning_clique_decompose(M, B)
    check_decomposition(M, B, dec)
    assert dec.X == {"z"}


def test_clique_rejects_non_clique():
    U = uniform(3, 3)
    with pytest.raises(NotSpanningClique):
        spanning_clique_decompose(U, U.ground)


def test_clique_minor_check_branch():
    M, B = binary_clique(3, {"z": [0, 1, 2]})
    F = projective_geometry(3, 2)
    assert is_isomorphic(M, F) is not None
    cert = spanning_clique_decompose(M, B, s=2, n=3, check_minors=True)
    assert not isinstance(cert, CliqueDecomposition)
    assert cert.target.n == 7


# ------------------------------------------------------ spanning geometry


def test_skew_frame_examples():
    F = projective_geometry(3, 2)
    assert find_skew_frame_set(F, F.ground, 2)[0] == frozenset()
    G = direct_sum(F, uniform(1, 1, ["c"]))
    assert find_skew_frame_set(G, F.ground, 2)[0] == {"c"}
    F4 = projective_geometry(4, 2)
    W = freeze(principal_extension(F4, set(F4.ground), "x"))
    got, blocked = find_skew_frame_set(W, F4.ground, 3)
    assert got == {"x"} and all(e in F4.ground for e in blocked)


def test_geometry_parallel_point():
    F = projective_geometry(3, 2)
    M = freeze(principal_extension(F, {"100"}, "x"))
    dec = spanning_geometry_decompose(M, F.ground, 2)
    assert dec.C == frozenset() and dec.shift.psi == {"x": "100"} and len(dec.path) == 0


def test_geometry_point_on_a_line():
    F = projective_geometry(3, 2)
    M = freeze(principal_extension(F, {"100", "010"}, "x"))
    dec = spanning_geometry_decompose(M, F.ground, 2)
    assert len(dec.C) == 1 and len(dec.path) <= 4
    assert is_isomorphic(simplify(dec.result)[0], F) is not None
    assert validate_shift(M, dec.shift)[0]


def test_geometry_free_point_brute_force():
    P = projective_geometry(4, 2)
    M = freeze(principal_extension(P, set(P.ground), "x"))
    dec = spanning_geometry_decompose(M, P.ground, 2, k_cap=2)
    # the smallest size is confirmed by trying every smaller independent set
    k = len(dec.C)
    for size in range(k):
        for C in combinations(M.ground, size):
            if M.rank(C) != size:
                continue
            rc = M.rank(C)
            bad = [
                x for x in M.ground
                if x not in P.ground and M.rank(set(C) | {x}) > rc
                and not any(M.rank(set(C) | {x, y}) == rc + 1 == M.rank(set(C) | {y}) for y in P.ground)
            ]
            assert bad
    assert len(dec.path) <= 4 * k


def test_geometry_not_found_and_bad_frame():
    F = projective_geometry(3, 2)
    M = freeze(principal_extension(F, {"100", "010"}, "x"))
    with pytest.raises(NotFound):
        spanning_geometry_decompose(M, F.ground, 2, k_cap=0)
    with pytest.raises(HypothesisViolation):
        spanning_geometry_decompose(M, list(F.ground)[:6], 2)
    U = copies_of_u12(1)
    with pytest.raises(HypothesisViolation):
        spanning_geometry_decompose(U, U.ground, 6)
