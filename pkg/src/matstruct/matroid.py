"""Rank-oracle matroids, structural wrappers and derived queries.

A :class:`Matroid` owns an ordered ground set of string labels; subsets are
handled internally as integer bitmasks over that order.  Backends implement
``_compute_rank(mask)``; wrappers compose lazily.  Small matroids
(``n <= TABLE_MAX``) can materialize a full rank table, which every
exhaustive check in the package uses.

Memoization is a plain dict per instance.  Concurrent callers may compute
the same entry twice; they never observe different values.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

import numpy as np

from . import kernels
from .gf import GF

TABLE_MAX = 24


class MatroidError(ValueError):
    """Base class for matroid precondition failures."""


class UnknownElementError(MatroidError):
    pass


class LabelCollisionError(MatroidError):
    pass


class SizeLimitError(MatroidError):
    pass


def bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class Matroid:
    kind = "abstract"

    def __init__(self, ground: Iterable[str]):
        labels = tuple(str(x) for x in ground)
        if len(set(labels)) != len(labels):
            raise LabelCollisionError(f"duplicate labels in ground set: {labels}")
        self.ground = labels
        self.n = len(labels)
        self._index = {lab: i for i, lab in enumerate(labels)}
        self._memo: dict[int, int] = {}
        self._table: np.ndarray | None = None
        self._r: int | None = None

    # -- subset encoding -------------------------------------------------
    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def mask(self, A) -> int:
        if isinstance(A, (int, np.integer)):
            return int(A)
        if isinstance(A, str):
            A = (A,)
        m = 0
        for a in A:
            try:
                m |= 1 << self._index[a]
            except KeyError:
                raise UnknownElementError(f"{a!r} is not an element of the ground set") from None
        return m

    def labels(self, mask: int) -> frozenset:
        return frozenset(self.ground[i] for i in bits(mask))

    def ordered(self, A) -> list[str]:
        """Elements of ``A`` in ground-set order."""
        m = self.mask(A)
        return [self.ground[i] for i in bits(m)]

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownElementError(f"{label!r} is not an element of the ground set") from None

    def __contains__(self, label) -> bool:
        return label in self._index

    # -- rank --------------------------------------------------------------
    def _compute_rank(self, mask: int) -> int:
        raise NotImplementedError

    def _rank_mask(self, mask: int) -> int:
        if self._table is not None:
            return int(self._table[mask])
        r = self._memo.get(mask)
        if r is None:
            r = int(self._compute_rank(mask))
            self._memo[mask] = r
        return r

    def rank(self, A=None) -> int:
        if A is None:
            return self.r
        return self._rank_mask(self.mask(A))

    @property
    def r(self) -> int:
        if self._r is None:
            self._r = self._rank_mask(self.full)
        return self._r

    # -- tables ------------------------------------------------------------
    def table(self) -> np.ndarray:
        if self._table is None:
            if self.n > TABLE_MAX:
                raise SizeLimitError(f"rank table needs n <= {TABLE_MAX}, got {self.n}")
            t = np.ascontiguousarray(self._build_table(), dtype=np.uint8)
            t.setflags(write=False)
            self._table = t
        return self._table

    def has_table(self) -> bool:
        return self._table is not None

    def _build_table(self) -> np.ndarray:
        out = np.zeros(1 << self.n, np.uint8)
        for m in range(1, 1 << self.n):
            out[m] = self._rank_mask(m)
        return out

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"<{type(self).__name__} n={self.n} r={self.r}>"


def _base_table_or_none(M: Matroid):
    return M.table() if M.n <= TABLE_MAX else None


# ---------------------------------------------------------------- backends


class UniformMatroid(Matroid):
    kind = "uniform"

    def __init__(self, r: int, ground):
        super().__init__(ground)
        if not 0 <= r <= self.n:
            raise MatroidError(f"uniform matroid needs 0 <= r <= n, got r={r}, n={self.n}")
        self.rank_bound = r

    def _compute_rank(self, mask):
        return min(popcount(mask), self.rank_bound)

    def _build_table(self):
        return np.minimum(kernels.popcounts(self.n), self.rank_bound)


class LinearMatroid(Matroid):
    """Column matroid of an integer-coded matrix over GF(q)."""

    kind = "linear"

    def __init__(self, fld: GF, vectors, ground):
        super().__init__(ground)
        V = np.asarray(vectors, dtype=np.int64)
        if V.ndim != 2 or V.shape[0] != self.n:
            raise MatroidError(f"expected one vector per element, got shape {V.shape}")
        if V.size and (V.min() < 0 or V.max() >= fld.q):
            raise MatroidError(f"entries must lie in 0..{fld.q - 1}")
        self.field = fld
        self.vectors = V
        self.vectors.setflags(write=False)
        self.dim = V.shape[1]

    def _compute_rank(self, mask):
        sel = list(bits(mask))
        if not sel:
            return 0
        return kernels.gf_rank(self.vectors[sel].T, self.field)

    def _build_table(self):
        return kernels.linear_rank_table(self.vectors, self.field)

    def vector(self, label) -> tuple:
        return tuple(int(x) for x in self.vectors[self.index(label)])


class GraphicMatroid(Matroid):
    """Cycle matroid of a multigraph; loops allowed."""

    kind = "graphic"

    def __init__(self, vertices, edges):
        vertices = [str(v) for v in vertices]
        super().__init__([e[0] for e in edges])
        self.vertices = tuple(vertices)
        vid = {v: i for i, v in enumerate(vertices)}
        if len(vid) != len(vertices):
            raise MatroidError("duplicate vertex labels")
        try:
            self.edges = tuple((str(lab), str(u), str(v)) for lab, u, v in edges)
            self._us = np.array([vid[u] for _, u, _ in self.edges], np.int64)
            self._vs = np.array([vid[v] for _, _, v in self.edges], np.int64)
        except KeyError as exc:
            raise MatroidError(f"edge endpoint {exc} is not a declared vertex") from None

    _bicircular = False

    def _compute_rank(self, mask):
        sel = np.fromiter(bits(mask), np.int64)
        return kernels.graph_rank(self._us, self._vs, len(self.vertices), sel, self._bicircular)

    def _build_table(self):
        if self.n == 0:
            return np.zeros(1, np.uint8)
        return kernels.graph_rank_table(self._us, self._vs, len(self.vertices), self._bicircular)


class BicircularPlusMatroid(GraphicMatroid):
    """Framed bicircular matroid: ground set is the edges then the vertices.

    Vertex elements act as loop edges at their vertex, so rank is
    ``|V(X)|`` minus the number of acyclic components of ``X``.
    """

    kind = "bicircular_plus"
    _bicircular = True

    def __init__(self, vertices, edges, vertex_labels=None):
        vertices = [str(v) for v in vertices]
        if vertex_labels is None:
            vertex_labels = {v: f"v{v}" for v in vertices}
        self.graph_edges = tuple((str(lab), str(u), str(v)) for lab, u, v in edges)
        self.vertex_labels = {str(v): str(vertex_labels[v]) for v in vertices}
        all_edges = list(self.graph_edges) + [(self.vertex_labels[v], v, v) for v in vertices]
        super().__init__(vertices, all_edges)

    @property
    def frame(self) -> frozenset:
        return frozenset(self.vertex_labels.values())


class BasesMatroid(Matroid):
    """Matroid given by its list of bases; rank = largest basis intersection."""

    kind = "bases"

    def __init__(self, ground, bases):
        super().__init__(ground)
        self.bases = tuple(sorted({self.mask(b) for b in bases}))
        if not self.bases:
            raise MatroidError("a matroid needs at least one basis")
        sizes = {popcount(b) for b in self.bases}
        if len(sizes) != 1:
            raise MatroidError("bases must be equicardinal")

    def _compute_rank(self, mask):
        return max(popcount(mask & b) for b in self.bases)

    def _build_table(self):
        idx = np.arange(1 << self.n, dtype=np.int64)
        pc = kernels.popcounts(self.n)
        best = np.zeros(1 << self.n, np.uint8)
        for b in self.bases:
            np.maximum(best, pc[idx & b], out=best)
        return best


class TableMatroid(Matroid):
    kind = "table"

    def __init__(self, ground, table):
        super().__init__(ground)
        t = np.ascontiguousarray(table, dtype=np.uint8)
        if t.shape != (1 << self.n,):
            raise MatroidError("rank table has the wrong length")
        t.setflags(write=False)
        self._table = t

    def _compute_rank(self, mask):  # pragma: no cover - table always present
        return int(self._table[mask])


# ----------------------------------------------------------------- wrappers


class RelabeledMatroid(Matroid):
    kind = "relabel"

    def __init__(self, base: Matroid, labels):
        super().__init__(labels)
        if self.n != base.n:
            raise MatroidError("relabeling must keep the ground-set size")
        self.base = base

    def _compute_rank(self, mask):
        return self.base._rank_mask(mask)

    def _build_table(self):
        return self.base.table()


class MinorMatroid(Matroid):
    """``base / contract \\ delete``; rank ``r(A | C) - r(C)``."""

    kind = "minor"

    def __init__(self, base: Matroid, contract: int, delete: int):
        if contract & delete:
            raise MatroidError("contract and delete sets overlap: " + ", ".join(sorted(base.labels(contract & delete))))
        self.base = base
        self.cmask = contract
        self.dmask = delete
        keep = base.full & ~(contract | delete)
        self._pos = list(bits(keep))
        super().__init__([base.ground[i] for i in self._pos])
        self._rc = base._rank_mask(contract)

    def to_base(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= 1 << self._pos[i]
        return out

    def _compute_rank(self, mask):
        return self.base._rank_mask(self.to_base(mask) | self.cmask) - self._rc

    def _build_table(self):
        bt = _base_table_or_none(self.base)
        if bt is None:
            return super()._build_table()
        dm = kernels.deposit_masks(self._pos) | self.cmask
        return bt[dm] - self._rc


class DualMatroid(Matroid):
    kind = "dual"

    def __init__(self, base: Matroid):
        super().__init__(base.ground)
        self.base = base

    def _compute_rank(self, mask):
        return popcount(mask) + self.base._rank_mask(self.full & ~mask) - self.base.r

    def _build_table(self):
        bt = self.base.table().astype(np.int16)
        return kernels.popcounts(self.n).astype(np.int16) + bt[::-1] - self.base.r


class DirectSum(Matroid):
    kind = "direct_sum"

    def __init__(self, first: Matroid, second: Matroid):
        clash = set(first.ground) & set(second.ground)
        if clash:
            raise LabelCollisionError(f"direct sum needs disjoint ground sets; shared: {sorted(clash)}")
        super().__init__(first.ground + second.ground)
        self.first, self.second = first, second

    def _compute_rank(self, mask):
        lo = mask & self.first.full
        hi = mask >> self.first.n
        return self.first._rank_mask(lo) + self.second._rank_mask(hi)

    def _build_table(self):
        t1 = self.first.table().astype(np.uint8)
        t2 = self.second.table().astype(np.uint8)
        return np.add.outer(t2, t1).ravel()


class PrincipalExtension(Matroid):
    """Adds ``label`` freely to the flat spanned by ``anchor``."""

    kind = "principal_extension"

    def __init__(self, base: Matroid, anchor: int, label: str):
        if label in base:
            raise LabelCollisionError(f"label {label!r} already in ground set")
        super().__init__(base.ground + (label,))
        self.base = base
        self.anchor = anchor

    def _compute_rank(self, mask):
        bit = 1 << self.base.n
        low = mask & ~bit
        r = self.base._rank_mask(low)
        if mask & bit:
            return min(r + 1, self.base._rank_mask(low | self.anchor))
        return r

    def _build_table(self):
        bt = self.base.table()
        idx = np.arange(1 << self.base.n, dtype=np.int64)
        high = np.minimum(bt.astype(np.int16) + 1, bt[idx | self.anchor])
        return np.concatenate([bt, high.astype(np.uint8)])


class PipeContraction(Matroid):
    """``(M / C) + O_C``: contract ``C`` but keep its elements as loops."""

    kind = "pipe_contraction"

    def __init__(self, base: Matroid, cmask: int):
        super().__init__(base.ground)
        self.base = base
        self.cmask = cmask
        self._rc = base._rank_mask(cmask)

    def _compute_rank(self, mask):
        return self.base._rank_mask(mask | self.cmask) - self._rc

    def _build_table(self):
        bt = self.base.table()
        idx = np.arange(1 << self.n, dtype=np.int64)
        return bt[idx | self.cmask] - self._rc


class ShiftedMatroid(Matroid):
    """``psi(M)``: elements of the domain become loops or parallel copies.

    ``targets`` maps a domain index to a target index, or to -1 for a loop.
    """

    kind = "shifted"

    def __init__(self, base: Matroid, targets: dict[int, int]):
        super().__init__(base.ground)
        self.base = base
        self.targets = dict(targets)
        self.xmask = 0
        for x in self.targets:
            self.xmask |= 1 << x

    def _map(self, mask):
        out = mask & ~self.xmask
        for x, y in self.targets.items():
            if mask >> x & 1 and y >= 0:
                out |= 1 << y
        return out

    def _compute_rank(self, mask):
        return self.base._rank_mask(self._map(mask))

    def _build_table(self):
        bt = self.base.table()
        idx = np.arange(1 << self.n, dtype=np.int64)
        mapped = idx & ~np.int64(self.xmask)
        for x, y in self.targets.items():
            if y >= 0:
                mapped |= np.where(idx >> x & 1, np.int64(1) << y, np.int64(0))
        return bt[mapped]


# ------------------------------------------------------------- operations


def rank(M: Matroid, A=()) -> int:
    return M.rank(A)


def closure(M: Matroid, A) -> frozenset:
    return M.labels(closure_mask(M, M.mask(A)))


def closure_mask(M: Matroid, mask: int) -> int:
    r = M._rank_mask(mask)
    out = mask
    for i in range(M.n):
        if not mask >> i & 1 and M._rank_mask(mask | 1 << i) == r:
            out |= 1 << i
    return out


def local_connectivity(M: Matroid, A, B) -> int:
    a, b = M.mask(A), M.mask(B)
    return M._rank_mask(a) + M._rank_mask(b) - M._rank_mask(a | b)


def lambda_(M: Matroid, A) -> int:
    a = M.mask(A)
    return M._rank_mask(a) + M._rank_mask(M.full & ~a) - M.r


def connectivity(M: Matroid, A, B):
    """``(local, lambda)``; ``lambda`` is ``None`` unless ``B`` is the complement of ``A``."""
    a, b = M.mask(A), M.mask(B)
    local = M._rank_mask(a) + M._rank_mask(b) - M._rank_mask(a | b)
    lam = None
    if a & b == 0 and a | b == M.full:
        lam = lambda_(M, a)
    return local, lam


def minor(M: Matroid, C=(), D=()) -> Matroid:
    c, d = M.mask(C), M.mask(D)
    if c == 0 and d == 0:
        return M
    return MinorMatroid(M, c, d)


def contract(M: Matroid, C) -> Matroid:
    return minor(M, C, ())


def delete(M: Matroid, D) -> Matroid:
    return minor(M, (), D)


def restrict(M: Matroid, S) -> Matroid:
    return minor(M, (), M.full & ~M.mask(S))


def dual(M: Matroid) -> Matroid:
    if isinstance(M, DualMatroid):
        return M.base
    return DualMatroid(M)


def direct_sum(M: Matroid, N: Matroid) -> Matroid:
    return DirectSum(M, N)


def relabel(M: Matroid, mapping) -> Matroid:
    if callable(mapping):
        labels = [mapping(x) for x in M.ground]
    else:
        labels = [mapping.get(x, x) for x in M.ground]
    return RelabeledMatroid(M, labels)


def freeze(M: Matroid) -> TableMatroid:
    """Copy ``M`` into an explicit rank table (drops the wrapper chain)."""
    if isinstance(M, TableMatroid):
        return M
    return TableMatroid(M.ground, M.table())


def is_independent(M: Matroid, A) -> bool:
    m = M.mask(A)
    return M._rank_mask(m) == popcount(m)


def is_basis(M: Matroid, A) -> bool:
    m = M.mask(A)
    return popcount(m) == M.r and M._rank_mask(m) == M.r


def is_spanning(M: Matroid, A) -> bool:
    return M.rank(A) == M.r


def is_circuit(M: Matroid, A) -> bool:
    m = M.mask(A)
    k = popcount(m)
    if k == 0 or M._rank_mask(m) != k - 1:
        return False
    return all(M._rank_mask(m & ~(1 << i)) == k - 1 for i in bits(m))


def greedy_basis(M: Matroid, S=None, start=()) -> frozenset:
    """Extend independent ``start`` greedily in ground order inside ``S``."""
    m = M.full if S is None else M.mask(S)
    cur = M.mask(start)
    r = M._rank_mask(cur)
    for i in bits(m & ~cur):
        if M._rank_mask(cur | 1 << i) > r:
            cur |= 1 << i
            r += 1
    return M.labels(cur)


def greedy_basis_mask(M: Matroid, m: int, start: int = 0) -> int:
    cur = start
    r = M._rank_mask(cur)
    for i in bits(m & ~cur):
        if M._rank_mask(cur | 1 << i) > r:
            cur |= 1 << i
            r += 1
    return cur


def loops_coloops(M: Matroid):
    loops = frozenset(e for i, e in enumerate(M.ground) if M._rank_mask(1 << i) == 0)
    coloops = frozenset(e for i, e in enumerate(M.ground) if M._rank_mask(M.full & ~(1 << i)) == M.r - 1)
    return loops, coloops


def fundamental_circuit(M: Matroid, B, f: str) -> frozenset:
    b = M.mask(B)
    if not is_basis(M, b):
        raise MatroidError("not a basis: " + ", ".join(M.ordered(b)))
    fi = M.index(f)
    if b >> fi & 1:
        raise MatroidError(f"{f!r} lies in the basis")
    if M._rank_mask(1 << fi) == 0:
        return frozenset({f})
    return frozenset({f}) | M.labels(support_mask(M, b, fi))


def support_mask(M: Matroid, bmask: int, fi: int) -> int:
    """Elements ``x`` of independent ``bmask`` with ``f`` outside ``cl(B - x)``.

    When ``f`` is spanned by ``B`` this is the basis part of its
    fundamental circuit.
    """
    out = 0
    for i in bits(bmask):
        rest = bmask & ~(1 << i)
        if M._rank_mask(rest | 1 << fi) > M._rank_mask(rest):
            out |= 1 << i
    return out


def parallel_classes(M: Matroid) -> list[list[int]]:
    """Classes of nonloops under parallelism, each sorted by ground index."""
    classes: list[list[int]] = []
    for i in range(M.n):
        if M._rank_mask(1 << i) == 0:
            continue
        for cls in classes:
            if M._rank_mask(1 << i | 1 << cls[0]) == 1:
                cls.append(i)
                break
        else:
            classes.append([i])
    return classes


def simplify(M: Matroid):
    """``(si(M), rep)``; ``rep`` sends each deleted element to its kept
    representative (``None`` for loops).  Representatives are the
    lexicographically least labels of their classes."""
    rep: dict[str, str | None] = {}
    keep = 0
    for i in range(M.n):
        if M._rank_mask(1 << i) == 0:
            rep[M.ground[i]] = None
    for cls in parallel_classes(M):
        labs = [M.ground[i] for i in cls]
        least = min(labs)
        keep |= 1 << M.index(least)
        for lab in labs:
            if lab != least:
                rep[lab] = least
    return minor(M, (), M.full & ~keep), rep


def same_rank_function(M: Matroid, N: Matroid) -> bool:
    """Same ground order and identical rank on every subset."""
    if M.ground != N.ground:
        return False
    if M.n <= TABLE_MAX:
        return bool(np.array_equal(M.table(), N.table()))
    raise SizeLimitError(f"exhaustive rank comparison needs n <= {TABLE_MAX}")


def same_matroid(M: Matroid, N: Matroid) -> bool:
    """Equal as matroids on the same label set (orders may differ)."""
    if set(M.ground) != set(N.ground):
        return False
    if M.ground == N.ground:
        return same_rank_function(M, N)
    perm = [N.index(x) for x in M.ground]
    dm = kernels.deposit_masks(perm)
    return bool(np.array_equal(M.table(), N.table()[dm]))


def check_rank_axioms(M: Matroid) -> int:
    """0 if the rank table satisfies the axioms, else a violation code."""
    return kernels.axiom_violation(M.table(), M.n)


def bases(M: Matroid) -> list[frozenset]:
    t = M.table()
    pc = kernels.popcounts(M.n)
    masks = np.nonzero((pc == M.r) & (t == M.r))[0]
    return [M.labels(int(m)) for m in masks]


def flats_of_rank(M: Matroid, k: int) -> list[int]:
    """All rank-``k`` flats as masks, in order of first discovery."""
    seen: dict[int, None] = {}
    nonloops = [i for i in range(M.n) if M._rank_mask(1 << i) > 0]
    if k == 0:
        return [closure_mask(M, 0)]
    for combo in combinations(nonloops, k):
        m = 0
        for i in combo:
            m |= 1 << i
        if M._rank_mask(m) == k:
            f = closure_mask(M, m)
            seen.setdefault(f, None)
    return list(seen)


# ----------------------------------------------------------- isomorphism


def _element_invariants(t: np.ndarray, k: int, weights) -> list[tuple]:
    pc = kernels.popcounts(k).astype(np.int64)
    key = pc * (k + 1) + t.astype(np.int64)
    idx = np.arange(1 << k, dtype=np.int64)
    out = []
    for i in range(k):
        sel = key[(idx >> i & 1) == 1]
        out.append((weights[i],) + tuple(np.bincount(sel, minlength=(k + 1) * (k + 1))))
    return out


def table_isomorphism(t1, t2, k: int, w1=None, w2=None):
    """Bijection ``p`` (list) with ``t1[S] == t2[p(S)]`` for all ``S``, or None."""
    w1 = w1 if w1 is not None else [1] * k
    w2 = w2 if w2 is not None else [1] * k
    if sorted(w1) != sorted(w2):
        return None
    pc = kernels.popcounts(k).astype(np.int64)
    h1 = np.bincount(pc * (k + 1) + t1, minlength=(k + 1) ** 2)
    h2 = np.bincount(pc * (k + 1) + t2, minlength=(k + 1) ** 2)
    if not np.array_equal(h1, h2):
        return None
    inv1 = _element_invariants(t1, k, w1)
    inv2 = _element_invariants(t2, k, w2)
    if sorted(inv1) != sorted(inv2):
        return None
    cands = {i: [j for j in range(k) if inv2[j] == inv1[i]] for i in range(k)}
    order = sorted(range(k), key=lambda i: (len(cands[i]), i))
    perm = [-1] * k
    used = [False] * k

    def extend(pos, mm1, mm2):
        if pos == k:
            return True
        i = order[pos]
        bi = np.int64(1) << i
        for j in cands[i]:
            if used[j]:
                continue
            bj = np.int64(1) << j
            if not np.array_equal(t1[mm1 | bi], t2[mm2 | bj]):
                continue
            used[j] = True
            perm[i] = j
            if extend(pos + 1, np.concatenate([mm1, mm1 | bi]), np.concatenate([mm2, mm2 | bj])):
                return True
            used[j] = False
            perm[i] = -1
        return False

    if extend(0, np.zeros(1, np.int64), np.zeros(1, np.int64)):
        return perm
    return None


def is_isomorphic(M: Matroid, N: Matroid, cap: int = 16):
    """A rank-preserving bijection ``E(M) -> E(N)`` as a dict, or ``None``."""
    if M.n != N.n or M.r != N.r:
        return None
    sM, repM = simplify(M)
    sN, repN = simplify(N)
    if max(sM.n, sN.n) > cap:
        raise SizeLimitError(f"isomorphism test capped at {cap} simplified elements")
    if sM.n != sN.n:
        return None
    loopsM = [e for e, v in repM.items() if v is None]
    loopsN = [e for e, v in repN.items() if v is None]
    if len(loopsM) != len(loopsN):
        return None

    def members(S, rep):
        groups = {e: [e] for e in S.ground}
        for e, v in rep.items():
            if v is not None:
                groups[v].append(e)
        return groups

    gM, gN = members(sM, repM), members(sN, repN)
    w1 = [len(gM[e]) for e in sM.ground]
    w2 = [len(gN[e]) for e in sN.ground]
    perm = table_isomorphism(sM.table(), sN.table(), sM.n, w1, w2)
    if perm is None:
        return None
    out = {}
    for i, e in enumerate(sM.ground):
        f = sN.ground[perm[i]]
        for x, y in zip(sorted(gM[e], key=M.index), sorted(gN[f], key=N.index)):
            out[x] = y
    for x, y in zip(loopsM, loopsN):
        out[x] = y
    return out
