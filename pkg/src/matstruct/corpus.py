"""Seeded instance sets used by the test and acceptance suites."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .constructions import (
    Graph,
    bicircular,
    bicircular_plus,
    clique,
    complete_graph,
    copies_of_u12,
    free_matroid,
    graphic,
    linear_matroid,
    projective_geometry,
    rank_zero,
    uniform,
)
from .matroid import BasesMatroid, Matroid, delete, direct_sum, freeze, is_basis, relabel
from .perturb import principal_extension

DEFAULT_SEED = 20240601


@dataclass
class Entry:
    name: str
    kind: str
    matroid: Matroid


def vamos() -> BasesMatroid:
    """The Vámos matroid: all 4-sets except five of the six pair unions."""
    ground = ["a", "a'", "b", "b'", "c", "c'", "d", "d'"]
    pairs = [("a", "a'"), ("b", "b'"), ("c", "c'"), ("d", "d'")]
    bad = set()
    for p, q in combinations(range(4), 2):
        if (p, q) != (2, 3):
            bad.add(frozenset(pairs[p] + pairs[q]))
    return BasesMatroid(ground, [b for b in map(frozenset, combinations(ground, 4)) if b not in bad])


def _random_linear(rng: random.Random, q: int, r: int, n: int, stem: str) -> Matroid:
    rows = [[rng.randrange(q) for _ in range(n)] for _ in range(r)]
    return linear_matroid(q, rows, [f"{stem}{i}" for i in range(n)])


def typed_corpus(seed: int = DEFAULT_SEED) -> list[Entry]:
    """At least 25 matroids on at most 9 elements covering every backend."""
    rng = random.Random(seed)
    out: list[Entry] = []

    def add(name, kind, M):
        out.append(Entry(name, kind, M))

    for r, n in [(0, 3), (1, 3), (2, 4), (2, 5), (3, 5), (2, 6), (3, 6), (4, 7)]:
        add(f"U{r},{n}", "uniform", uniform(r, n))
    add("free4", "uniform", free_matroid([f"f{i}" for i in range(4)]))
    add("zero3", "uniform", rank_zero([f"z{i}" for i in range(3)]))
    add("fano", "linear", projective_geometry(3, 2))
    add("PG(1,3)", "linear", projective_geometry(2, 3))
    add("PG(1,4)", "linear", projective_geometry(2, 4))
    add("nonfano", "linear", linear_matroid(3, [[1, 0, 0, 1, 1, 0, 1], [0, 1, 0, 1, 0, 1, 1], [0, 0, 1, 0, 1, 1, 1]]))
    ag = [(1, x, y) for x in range(3) for y in range(3)]
    add("AG(2,3)", "linear", linear_matroid(3, [list(c) for c in zip(*ag)], [f"p{x}{y}" for _, x, y in ag]))
    add("rand-GF2", "linear", _random_linear(rng, 2, 3, 7, "g"))
    add("rand-GF3", "linear", _random_linear(rng, 3, 3, 6, "h"))
    add("rand-GF4", "linear", _random_linear(rng, 4, 2, 5, "k"))
    add("rand-GF5", "linear", _random_linear(rng, 5, 3, 6, "l"))
    add("M(K4)", "graphic", clique(3)[0])
    add("M(K4)-e", "graphic", graphic(Graph(("0", "1", "2", "3"), tuple(e for e in complete_graph(4).edges if e[0] != "e2_3"))))
    add("C5", "graphic", graphic(Graph(tuple("01234"), tuple((f"c{i}", str(i), str((i + 1) % 5)) for i in range(5)))))
    add(
        "theta+loop",
        "graphic",
        graphic(Graph(("0", "1", "2"), (("p", "0", "1"), ("q", "0", "1"), ("s", "1", "2"), ("t", "0", "2"), ("o", "2", "2")))),
    )
    add("B+(K3)", "bicircular_plus", bicircular_plus(complete_graph(3))[0])
    add("B(K4)", "bicircular", bicircular(complete_graph(4)))
    add("2U12", "derived", copies_of_u12(2))
    add("3U12", "derived", copies_of_u12(3))
    add("U13+U12", "derived", direct_sum(uniform(1, 3, ["s0", "s1", "s2"]), uniform(1, 2, ["t0", "t1"])))
    add("vamos", "bases", vamos())
    F = projective_geometry(3, 2)
    add("fano+line", "derived", freeze(principal_extension(F, set(F.ground[:2]), "x")))
    add("fano+free", "derived", freeze(principal_extension(F, set(F.ground), "x")))
    return out


@dataclass
class BasesInstance:
    name: str
    matroid: Matroid
    A: frozenset
    B: frozenset


def upper_triangular_gf3(r: int, rng: random.Random) -> tuple[Matroid, tuple, tuple]:
    """``[I | T]`` over GF(3) with ``T`` upper triangular with nonzero diagonal."""
    T = [[0] * r for _ in range(r)]
    for i in range(r):
        T[i][i] = rng.choice((1, 2))
        for j in range(i + 1, r):
            T[i][j] = rng.randrange(3)
    rows = [[1 if i == j else 0 for j in range(r)] + T[i] for i in range(r)]
    a = tuple(f"a{i + 1}" for i in range(r))
    b = tuple(f"b{i + 1}" for i in range(r))
    return linear_matroid(3, rows, list(a + b)), a, b


def disjoint_bases_corpus(seed: int = DEFAULT_SEED) -> list[BasesInstance]:
    rng = random.Random(seed)
    out = []
    U = uniform(2, 4)
    out.append(BasesInstance("U2,4", U, frozenset({"e0", "e1"}), frozenset({"e2", "e3"})))
    for t in (1, 2, 3):
        M = copies_of_u12(t)
        A = frozenset(f"x{i}" for i in range(1, t + 1))
        out.append(BasesInstance(f"{t}U1,2", M, A, frozenset(M.ground) - A))
    K, _ = clique(3)
    K2 = graphic(complete_graph(4, start=4))
    KK = direct_sum(K, K2)
    A = frozenset({"e0_1", "e1_2", "e2_3", "e4_5", "e5_6", "e6_7"})
    out.append(BasesInstance("M(K4)+M(K4)", KK, A, frozenset(KK.ground) - A))
    out.append(BasesInstance("M(K4)", K, frozenset({"e0_1", "e1_2", "e2_3"}), frozenset({"e0_2", "e0_3", "e1_3"})))
    for r in (2, 3, 4):
        M, a, b = upper_triangular_gf3(r, rng)
        out.append(BasesInstance(f"[I|T] GF(3) r={r}", M, frozenset(a), frozenset(b)))
    U36 = uniform(3, 6)
    out.append(BasesInstance("U3,6", U36, frozenset(U36.ground[:3]), frozenset(U36.ground[3:])))
    F = projective_geometry(3, 2)
    out.append(BasesInstance("fano-minus", F, frozenset({"100", "010", "001"}), frozenset({"110", "011", "111"})))
    for inst in out:
        assert is_basis(inst.matroid, inst.A) and is_basis(inst.matroid, inst.B), inst.name
    return out


POOL_GROUND = tuple(f"g{i}" for i in range(6))


def six_element_pool() -> list[tuple[str, Matroid]]:
    """Matroids on the common ground set ``g0..g5``."""

    def on_pool(M):
        return freeze(relabel(M, dict(zip(M.ground, POOL_GROUND))))

    F = projective_geometry(3, 2)

    return [
        ("U2,6", on_pool(uniform(2, 6))),
        ("U3,6", on_pool(uniform(3, 6))),
        ("U1,3+U1,3", on_pool(direct_sum(uniform(1, 3, ["s0", "s1", "s2"]), uniform(1, 3, ["t0", "t1", "t2"])))),
        ("M(K4)", on_pool(clique(3)[0])),
        ("fano-e", on_pool(delete(F, {F.ground[-1]}))),
        ("3U1,2", on_pool(copies_of_u12(3))),
    ]
