from itertools import combinations

import pytest
from hypothesis import given, strategies as st

import oracles
from matstruct import io
from matstruct.certificates import MinorCertificate, verify_certificate
from matstruct.constructions import clique, linear_matroid, projective_geometry, uniform
from matstruct.corpus import typed_corpus, vamos
from matstruct.matroid import (
    LabelCollisionError,
    MatroidError,
    UnknownElementError,
    bases,
    closure,
    connectivity,
    contract,
    delete,
    direct_sum,
    dual,
    freeze,
    fundamental_circuit,
    is_basis,
    is_circuit,
    is_isomorphic,
    lambda_,
    local_connectivity,
    loops_coloops,
    minor,
    relabel,
    same_matroid,
    simplify,
)

CORPUS = typed_corpus()


def rank_map(M):
    return oracles.rank_dict(M.ground, lambda S: M.rank(S))


@pytest.mark.parametrize("entry", CORPUS, ids=lambda e: e.name)
def test_corpus_rank_axioms_by_enumeration(entry):
    M = entry.matroid
    if M.n > 7:
        pytest.skip("pairwise submodularity enumeration limited to 7 elements")
    assert oracles.axioms_hold(M.ground, rank_map(M))


def test_linear_rank_against_elimination():
    rows = [[1, 0, 2, 1, 0], [0, 1, 1, 1, 2], [1, 1, 0, 2, 2]]
    M = linear_matroid(3, rows)
    cols = list(zip(*rows))
    for k in range(6):
        for S in combinations(range(5), k):
            assert M.rank([M.ground[i] for i in S]) == oracles.gf_prime_rank([cols[i] for i in S], 3)


@pytest.mark.parametrize("entry", CORPUS[:20], ids=lambda e: e.name)
def test_dual_rank_formula_and_involution(entry):
    M = entry.matroid
    r = rank_map(M)
    d = oracles.dual_rank(M.ground, r)
    D = dual(M)
    assert all(D.rank(S) == v for S, v in d.items())
    assert dual(D) is M
    assert same_matroid(freeze(dual(freeze(D))), M)


@given(st.integers(0, 2**9 - 1), st.integers(0, 2**9 - 1))
def test_minor_rank_matches_definition(cbits, dbits):
    M = vamos()
    C = [M.ground[i] for i in range(M.n) if cbits >> i & 1]
    D = [M.ground[i] for i in range(M.n) if dbits >> i & 1 and not cbits >> i & 1]
    N = minor(M, C, D)
    rest, mr = oracles.minor_rank(M.ground, rank_map(M), C, D)
    assert list(N.ground) == rest
    assert all(N.rank(S) == v for S, v in mr.items())


def test_minor_operations_commute():
    M = projective_geometry(3, 2)
    a, b, c = M.ground[:3]
    assert same_matroid(contract(delete(M, {a}), {b}), delete(contract(M, {b}), {a}))
    assert same_matroid(contract(contract(M, {a}), {b}), contract(M, {a, b}))
    # duality swaps contraction and deletion
    assert same_matroid(dual(contract(M, {c})), delete(dual(M), {c}))


def test_closure_circuits_and_connectivity():
    F = projective_geometry(3, 2)
    assert closure(F, {"100", "010"}) == {"100", "010", "110"}
    assert is_circuit(F, {"100", "010", "110"})
    assert not is_circuit(F, {"100", "010"})
    assert fundamental_circuit(F, {"100", "010", "001"}, "111") == {"100", "010", "001", "111"}
    assert local_connectivity(F, {"100", "010"}, {"001", "011"}) == 1
    assert lambda_(F, {"100"}) == 1
    assert connectivity(F, {"100"}, set(F.ground) - {"100"}) == (1, 1)


def test_loops_coloops_and_direct_sum():
    M = direct_sum(uniform(0, 1, ["z"]), uniform(1, 1, ["c"]))
    assert loops_coloops(M) == ({"z"}, {"c"})
    with pytest.raises(LabelCollisionError):
        direct_sum(uniform(1, 2), uniform(1, 2))


def test_unknown_labels():
    with pytest.raises(UnknownElementError):
        uniform(1, 2).rank({"nope"})
    with pytest.raises(MatroidError):
        uniform(3, 2)


def test_bases_enumeration():
    assert len(bases(uniform(2, 4))) == 6
    V = vamos()
    assert len(bases(V)) == 70 - 5
    assert all(is_basis(V, B) for B in bases(V))


def test_simplify_keeps_least_labels():
    M = linear_matroid(2, [[1, 1, 0, 0], [0, 0, 1, 0]], ["b", "a", "c", "z"])
    si, rep = simplify(M)
    assert set(si.ground) == {"a", "c"}
    assert rep == {"b": "a", "z": None}


@pytest.mark.parametrize(
    "M,N,iso",
    [
        (uniform(2, 4), projective_geometry(2, 3), True),
        (clique(3)[0], projective_geometry(3, 2), False),
        (vamos(), relabel(vamos(), {"a": "q", "q": "a"}), True),
    ],
)
def test_isomorphism_against_brute_force(M, N, iso):
    f = is_isomorphic(M, N)
    brute = oracles.isomorphic(list(M.ground), rank_map(M), list(N.ground), rank_map(N))
    assert (f is not None) == iso == (brute is not None)
    if f is not None:
        assert all(N.rank({f[x] for x in S}) == M.rank(S) for S in map(set, combinations(M.ground, 3)))


def test_fano_vs_nonfano_not_isomorphic():
    fano = CORPUS[[e.name for e in CORPUS].index("fano")].matroid
    nonfano = CORPUS[[e.name for e in CORPUS].index("nonfano")].matroid
    assert is_isomorphic(fano, nonfano) is None


def test_certificate_verifies_and_tamper_is_caught():
    F = projective_geometry(3, 2)
    cert = MinorCertificate(frozenset({"001"}), frozenset({"111"}), {}, None)
    N = minor(F, {"001"}, {"111"})
    image = {e: e for e in N.ground}
    cert = MinorCertificate(cert.contract, cert.delete, image, N)
    assert verify_certificate(F, N, cert).ok
    assert cert.normalized(F)
    # contracting 001 makes 100/101 parallel; swapping images of 100 and 110 breaks that
    bad = dict(image)
    bad["100"], bad["110"] = bad["110"], bad["100"]
    v = verify_certificate(F, N, MinorCertificate(cert.contract, cert.delete, bad, N))
    assert not v.ok and "rank mismatch" in v.message


@pytest.mark.parametrize("entry", CORPUS, ids=lambda e: e.name)
def test_io_round_trip(entry):
    M = entry.matroid
    text = io.dumps(M)
    doc = io.loads(text)
    N = io.matroid_from_dict(doc)
    assert same_matroid(M, N)
    assert io.dumps(N) == text or doc["kind"] == "bases"


def test_io_schema_errors():
    with pytest.raises(io.SchemaError, match="line 1"):
        io.loads("{not json")
    with pytest.raises(io.SchemaError, match="format"):
        io.loads('{"type": "matroid"}')
    with pytest.raises(io.SchemaError, match="unknown matroid kind"):
        io.matroid_from_dict({"kind": "spline"})


def test_unnormalized_certificate_still_verifies():
    F = projective_geometry(3, 2)
    C = {"100", "010", "110"}  # a dependent contraction set
    N = minor(F, C, ())
    cert = MinorCertificate(frozenset(C), frozenset(), {e: e for e in N.ground}, N)
    assert verify_certificate(F, N, cert).ok
    assert not cert.normalized(F)
