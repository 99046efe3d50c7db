"""Matroid families and structural-class predicates."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from . import kernels
from .gf import GF, FieldError, field
from .matroid import (
    BicircularPlusMatroid,
    GraphicMatroid,
    LinearMatroid,
    Matroid,
    MatroidError,
    SizeLimitError,
    UniformMatroid,
    bits,
    direct_sum,
    is_basis,
    relabel,
    simplify,
    support_mask,
)


@dataclass(frozen=True)
class Graph:
    """Multigraph with loops.  ``edges`` holds ``(label, u, v)`` triples."""

    vertices: tuple
    edges: tuple

    def __post_init__(self):
        vs = set(self.vertices)
        for lab, u, v in self.edges:
            if u not in vs or v not in vs:
                raise MatroidError(f"edge {lab} has an undeclared endpoint")


def complete_graph(n: int, start: int = 0) -> Graph:
    verts = tuple(str(i) for i in range(start, start + n))
    edges = tuple((f"e{u}_{v}", u, v) for u, v in combinations(verts, 2))
    return Graph(verts, edges)


def uniform(r: int, n: int, labels=None) -> UniformMatroid:
    if labels is None:
        labels = [f"e{i}" for i in range(n)]
    if len(labels) != n:
        raise MatroidError("label count differs from n")
    return UniformMatroid(r, labels)


def free_matroid(labels) -> UniformMatroid:
    labels = list(labels)
    return UniformMatroid(len(labels), labels)


def rank_zero(labels) -> UniformMatroid:
    return UniformMatroid(0, list(labels))


def copies_of_u12(t: int, prefix=("x", "y")) -> Matroid:
    """``t U_{1,2}`` with parallel pairs ``(x1, y1), ..., (xt, yt)``."""
    if t == 0:
        return UniformMatroid(0, [])
    M = UniformMatroid(1, [f"{prefix[0]}1", f"{prefix[1]}1"])
    for i in range(2, t + 1):
        M = direct_sum(M, UniformMatroid(1, [f"{prefix[0]}{i}", f"{prefix[1]}{i}"]))
    return M


def linear_matroid(q: int, matrix, labels=None, fld: GF | None = None) -> LinearMatroid:
    """Column matroid of ``matrix`` (a list of rows) over GF(q)."""
    fld = fld or field(q)
    A = np.asarray(matrix, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(1, -1) if A.size else np.zeros((0, 0), np.int64)
    ncols = A.shape[1] if A.ndim == 2 else 0
    if labels is None:
        labels = [f"c{i}" for i in range(ncols)]
    if len(labels) != ncols:
        raise MatroidError(f"dimension mismatch: {len(labels)} labels for {ncols} columns")
    return LinearMatroid(fld, A.T.reshape(ncols, A.shape[0]), labels)


def linear_from_columns(q: int, columns: dict, fld: GF | None = None) -> LinearMatroid:
    labels = list(columns)
    dims = {len(v) for v in columns.values()}
    if len(dims) > 1:
        raise MatroidError("dimension mismatch between columns")
    d = dims.pop() if dims else 0
    V = np.array([list(columns[k]) for k in labels], dtype=np.int64).reshape(len(labels), d)
    return LinearMatroid(fld or field(q), V, labels)


def point_label(vec, q: int) -> str:
    if q <= 10:
        return "".join(str(x) for x in vec)
    return ".".join(str(x) for x in vec)


def projective_points(n: int, q: int) -> list[tuple]:
    pts = []
    for vec in product(range(q), repeat=n):
        nz = [x for x in vec if x]
        if nz and nz[0] == 1:
            pts.append(vec)
    return pts


def projective_geometry(n: int, q: int) -> LinearMatroid:
    """PG(n-1, q): one normalized vector per 1-dimensional subspace of GF(q)^n."""
    if n < 1:
        raise MatroidError("projective geometry needs n >= 1")
    try:
        fld = field(q)
    except FieldError as exc:
        raise MatroidError(str(exc)) from None
    pts = projective_points(n, q)
    return LinearMatroid(fld, np.array(pts, np.int64), [point_label(p, q) for p in pts])


def vandermonde(s: int, q: int) -> LinearMatroid:
    """Columns ``(1, a, ..., a^(s-1))`` for every ``a`` in GF(q); this is ``U_{s,q}``."""
    fld = field(q)
    cols = {f"a{alpha}": [fld.power(alpha, j) for j in range(s)] for alpha in range(q)}
    return linear_from_columns(q, cols, fld)


def graphic(G: Graph) -> GraphicMatroid:
    return GraphicMatroid(G.vertices, G.edges)


def clique(n: int):
    """``M(K_{n+1})`` with frame the star at vertex 0: a rank-``n`` clique."""
    G = complete_graph(n + 1)
    M = graphic(G)
    B = frozenset(lab for lab, u, v in G.edges if u == "0")
    return M, B


def bicircular_plus(G: Graph, vertex_labels=None):
    M = BicircularPlusMatroid(G.vertices, G.edges, vertex_labels)
    return M, M.frame


def bicircular(G: Graph):
    M, V = bicircular_plus(G)
    from .matroid import delete

    return delete(M, V)


# ------------------------------------------------------------ predicates


def frame_supports(M: Matroid, B) -> dict[str, frozenset]:
    """For each element outside ``B``, the basis part of its fundamental circuit."""
    b = M.mask(B)
    out = {}
    for i, e in enumerate(M.ground):
        if b >> i & 1:
            continue
        if M._rank_mask(1 << i) == 0:
            out[e] = frozenset()
        else:
            out[e] = M.labels(support_mask(M, b, i))
    return out


def is_framed_by(M: Matroid, B) -> bool:
    if not is_basis(M, B):
        return False
    return all(len(s) <= 2 for s in frame_supports(M, B).values())


def is_b_clique(M: Matroid, B) -> bool:
    if not is_framed_by(M, B):
        return False
    pairs = {s for s in frame_supports(M, B).values() if len(s) == 2}
    return all(frozenset(p) in pairs for p in combinations(sorted(B), 2))


def complete_witness(M: Matroid, B, a: int):
    """Map ``I -> e_I`` over ``I ⊆ B`` with ``2 <= |I| <= a`` and
    ``I + e_I`` a circuit, or ``None`` when some ``I`` has no such element."""
    if not is_basis(M, B):
        raise MatroidError("not a basis: " + ", ".join(M.ordered(B)))
    first: dict[frozenset, str] = {}
    for e, s in frame_supports(M, B).items():
        if 2 <= len(s) <= a:
            first.setdefault(s, e)
    out = {}
    for k in range(2, a + 1):
        for I in combinations(M.ordered(B), k):
            I = frozenset(I)
            if I not in first:
                return None
            out[I] = first[I]
    return out


def is_a_complete(M: Matroid, B, a: int) -> bool:
    if a < 2:
        raise MatroidError("a-completeness needs a >= 2")
    return complete_witness(M, B, a) is not None


def gfq_representable(M: Matroid, q: int, cap_rank: int = 4):
    """A GF(q) representation ``label -> vector`` or ``None``.

    Backtracks over points of PG(r-1, q) for the simplification with a
    fixed basis sent to unit vectors.
    """
    r = M.r
    if r > cap_rank:
        raise SizeLimitError(f"representability search capped at rank {cap_rank}")
    fld = field(q)
    si, rep = simplify(M)
    npts = (q**r - 1) // (q - 1) if r else 0
    if si.n > npts:
        return None
    if r == 0:
        return {e: (0,) * 0 for e in M.ground}
    basis = list(bits(_greedy(si)))
    pts = [np.array(p, np.int64) for p in projective_points(r, q)]
    units = [tuple(1 if i == j else 0 for i in range(r)) for j in range(r)]
    unit_idx = [next(k for k, p in enumerate(pts) if tuple(p) == u) for u in units]
    order = basis + [i for i in range(si.n) if i not in basis]
    assign: dict[int, int] = {b: unit_idx[j] for j, b in enumerate(basis)}
    used = set(assign.values())

    def consistent(i, pidx):
        placed = [j for j in order if j in assign]
        for k in range(0, r):
            for S in combinations(placed, k):
                m = 1 << i
                for j in S:
                    m |= 1 << j
                want = si._rank_mask(m)
                vecs = np.array([pts[assign[j]] for j in S] + [pts[pidx]], np.int64).T
                if kernels.gf_rank(vecs, fld) != want:
                    return False
        return True

    def search(pos):
        if pos == len(order):
            return True
        i = order[pos]
        for pidx in range(len(pts)):
            if pidx in used or not consistent(i, pidx):
                continue
            assign[i] = pidx
            used.add(pidx)
            if search(pos + 1):
                return True
            del assign[i]
            used.discard(pidx)
        return False

    if not search(len(basis)):
        return None
    out = {}
    for i, e in enumerate(si.ground):
        out[e] = tuple(int(x) for x in pts[assign[i]])
    for e, v in rep.items():
        out[e] = (0,) * r if v is None else out[v]
    return {e: out[e] for e in M.ground}


def _greedy(M: Matroid) -> int:
    cur, r = 0, 0
    for i in range(M.n):
        if M._rank_mask(cur | 1 << i) > r:
            cur |= 1 << i
            r += 1
    return cur


def representation_matroid(M: Matroid, rep: dict, q: int) -> LinearMatroid:
    return linear_from_columns(q, {e: rep[e] for e in M.ground})


__all__ = [
    "Graph",
    "complete_graph",
    "uniform",
    "free_matroid",
    "rank_zero",
    "copies_of_u12",
    "linear_matroid",
    "linear_from_columns",
    "projective_geometry",
    "vandermonde",
    "graphic",
    "clique",
    "bicircular_plus",
    "bicircular",
    "is_framed_by",
    "is_b_clique",
    "is_a_complete",
    "complete_witness",
    "gfq_representable",
    "relabel",
]
