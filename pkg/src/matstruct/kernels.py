"""Hot numeric kernels.

Every kernel has a loop form (compiled with numba when available) and a
numpy/pure-Python twin used when numba is disabled.  The dispatching
wrappers at the bottom are the only names the rest of the package uses.

Rank tables are ``uint8`` arrays indexed by subset bitmask: ``t[mask]`` is
the rank of the subset whose bits are set.
"""

from __future__ import annotations

import numpy as np

from ._accel import HAVE_NUMBA, njit

# ---------------------------------------------------------------- GF(q) rank


def _gf_rank_loop(mat, add, mul, neg, inv):
    a = mat.copy()
    d, k = a.shape
    rank = 0
    for col in range(k):
        piv = -1
        for row in range(rank, d):
            if a[row, col] != 0:
                piv = row
                break
        if piv < 0:
            continue
        if piv != rank:
            for c in range(k):
                tmp = a[rank, c]
                a[rank, c] = a[piv, c]
                a[piv, c] = tmp
        s = inv[a[rank, col]]
        for c in range(k):
            a[rank, c] = mul[s, a[rank, c]]
        for row in range(rank + 1, d):
            f = a[row, col]
            if f != 0:
                nf = neg[f]
                for c in range(col, k):
                    a[row, c] = add[a[row, c], mul[nf, a[rank, c]]]
        rank += 1
        if rank == d:
            break
    return rank


def _linear_rank_table_loop(V, add, mul, neg, inv):
    # V is n x d: one row per ground element.  Depth-first over subsets in
    # increasing-index order, keeping an incremental echelon basis per depth.
    n, d = V.shape
    size = 1 << n
    table = np.zeros(size, np.uint8)
    rows = np.zeros((n + 1, d), np.int64)
    piv = np.zeros(n + 1, np.int64)
    mask_at = np.zeros(n + 2, np.int64)
    rank_at = np.zeros(n + 2, np.int64)
    next_at = np.zeros(n + 2, np.int64)
    v = np.zeros(d, np.int64)
    depth = 0
    while depth >= 0:
        j = next_at[depth]
        if j >= n:
            depth -= 1
            continue
        next_at[depth] = j + 1
        rk = rank_at[depth]
        for t in range(d):
            v[t] = V[j, t]
        for i in range(rk):
            c = v[piv[i]]
            if c != 0:
                nc = neg[c]
                for t in range(d):
                    v[t] = add[v[t], mul[nc, rows[i, t]]]
        p = -1
        for t in range(d):
            if v[t] != 0:
                p = t
                break
        newrk = rk
        if p >= 0:
            s = inv[v[p]]
            for t in range(d):
                rows[rk, t] = mul[s, v[t]]
            piv[rk] = p
            newrk = rk + 1
        m = mask_at[depth] | (np.int64(1) << j)
        table[m] = newrk
        depth += 1
        mask_at[depth] = m
        rank_at[depth] = newrk
        next_at[depth] = j + 1
    return table


# ------------------------------------------------------------ graph ranks


def _uf_find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _graph_rank_of(us, vs, nv, sel, bicircular, parent, ecount, vcount):
    # sel: indices of chosen elements.  For the bicircular rule an element
    # with us == vs is a loop edge (vertex elements are encoded this way).
    for i in range(nv):
        parent[i] = i
        ecount[i] = 0
        vcount[i] = 1
    touched = np.zeros(nv, np.uint8)
    rank = 0
    for idx in sel:
        u = us[idx]
        w = vs[idx]
        touched[u] = 1
        touched[w] = 1
        ru = _uf_find(parent, u)
        rw = _uf_find(parent, w)
        if ru != rw:
            parent[rw] = ru
            ecount[ru] += ecount[rw] + 1
            vcount[ru] += vcount[rw]
            if not bicircular:
                rank += 1
        else:
            ecount[ru] += 1
    if not bicircular:
        return rank
    for i in range(nv):
        if touched[i] and _uf_find(parent, i) == i:
            if ecount[i] >= vcount[i]:
                rank += vcount[i]
            else:
                rank += vcount[i] - 1
    return rank


def _graph_rank_table_loop(us, vs, nv, bicircular):
    n = us.shape[0]
    size = 1 << n
    table = np.zeros(size, np.uint8)
    parent = np.zeros(nv, np.int64)
    ecount = np.zeros(nv, np.int64)
    vcount = np.zeros(nv, np.int64)
    sel = np.zeros(n, np.int64)
    for m in range(1, size):
        k = 0
        for i in range(n):
            if (m >> i) & 1:
                sel[k] = i
                k += 1
        table[m] = _graph_rank_of(us, vs, nv, sel[:k], bicircular, parent, ecount, vcount)
    return table


def _graph_rank_single(us, vs, nv, sel, bicircular):
    parent = np.zeros(nv, np.int64)
    ecount = np.zeros(nv, np.int64)
    vcount = np.zeros(nv, np.int64)
    return _graph_rank_of(us, vs, nv, sel, bicircular, parent, ecount, vcount)


# ------------------------------------------------------- table predicates


def _quotient_violation_loop(rM, rN, n):
    # First (mask, x) with rN[S+x]-rN[S] > rM[S+x]-rM[S], encoded mask*64+x.
    size = 1 << n
    for m in range(size):
        for x in range(n):
            if (m >> x) & 1:
                continue
            mx = m | (1 << x)
            if np.int64(rN[mx]) - np.int64(rN[m]) > np.int64(rM[mx]) - np.int64(rM[m]):
                return np.int64(m) * 64 + x
    return np.int64(-1)


def _quotient_violation_np(rM, rN, n):
    idx = np.arange(1 << n, dtype=np.int64)
    for x in range(n):
        bit = np.int64(1) << x
        base = idx[(idx & bit) == 0]
        dM = rM[base | bit].astype(np.int16) - rM[base]
        dN = rN[base | bit].astype(np.int16) - rN[base]
        bad = np.nonzero(dN > dM)[0]
        if bad.size:
            return int(base[bad[0]]) * 64 + x
    return -1


def _axiom_violation_loop(t, n):
    # 0 ok; 1 r(empty)!=0; 2 unit increase fails; 3 submodularity fails.
    if t[0] != 0:
        return 1
    size = 1 << n
    for m in range(size):
        for x in range(n):
            if (m >> x) & 1:
                continue
            d = np.int64(t[m | (1 << x)]) - np.int64(t[m])
            if d < 0 or d > 1:
                return 2
            for y in range(x + 1, n):
                if (m >> y) & 1:
                    continue
                lhs = np.int64(t[m | (1 << x)]) + np.int64(t[m | (1 << y)])
                rhs = np.int64(t[m | (1 << x) | (1 << y)]) + np.int64(t[m])
                if lhs < rhs:
                    return 3
    return 0


def _axiom_violation_np(t, n):
    if t[0] != 0:
        return 1
    idx = np.arange(1 << n, dtype=np.int64)
    t16 = t.astype(np.int16)
    for x in range(n):
        bx = np.int64(1) << x
        base = idx[(idx & bx) == 0]
        d = t16[base | bx] - t16[base]
        if np.any((d < 0) | (d > 1)):
            return 2
        for y in range(x + 1, n):
            by = np.int64(1) << y
            b2 = base[(base & by) == 0]
            if np.any(t16[b2 | bx] + t16[b2 | by] < t16[b2 | bx | by] + t16[b2]):
                return 3
    return 0


if HAVE_NUMBA:
    _gf_rank = njit(cache=True)(_gf_rank_loop)
    _linear_rank_table = njit(cache=True)(_linear_rank_table_loop)
    _uf_find = njit(cache=True)(_uf_find)
    _graph_rank_of = njit(cache=True)(_graph_rank_of)
    _graph_rank_table = njit(cache=True)(_graph_rank_table_loop)
    _graph_single = njit(cache=True)(_graph_rank_single)
    _quotient_violation = njit(cache=True)(_quotient_violation_loop)
    _axiom_violation = njit(cache=True)(_axiom_violation_loop)
else:
    _gf_rank = _gf_rank_loop
    _linear_rank_table = _linear_rank_table_loop
    _graph_rank_table = _graph_rank_table_loop
    _graph_single = _graph_rank_single
    _quotient_violation = _quotient_violation_np
    _axiom_violation = _axiom_violation_np


# --------------------------------------------------------------- public


def gf_rank(mat: np.ndarray, field) -> int:
    """Rank over ``field`` of an integer-coded ``d x k`` matrix."""
    if mat.size == 0:
        return 0
    return int(_gf_rank(np.ascontiguousarray(mat, dtype=np.int64), field.add, field.mul, field.neg, field.inv))


def linear_rank_table(vectors: np.ndarray, field) -> np.ndarray:
    """Ranks of every subset of the rows of ``vectors`` (``n x d``)."""
    V = np.ascontiguousarray(vectors, dtype=np.int64)
    if V.shape[1] == 0:
        return np.zeros(1 << V.shape[0], np.uint8)
    return _linear_rank_table(V, field.add, field.mul, field.neg, field.inv)


def graph_rank_table(us, vs, nv: int, bicircular: bool = False) -> np.ndarray:
    us = np.ascontiguousarray(us, dtype=np.int64)
    vs = np.ascontiguousarray(vs, dtype=np.int64)
    return _graph_rank_table(us, vs, max(nv, 1), bicircular)


def graph_rank(us, vs, nv: int, sel, bicircular: bool = False) -> int:
    sel = np.ascontiguousarray(sel, dtype=np.int64)
    return int(_graph_single(np.asarray(us, np.int64), np.asarray(vs, np.int64), max(nv, 1), sel, bicircular))


def quotient_violation(rM: np.ndarray, rN: np.ndarray, n: int):
    """``None`` if ``rN`` is a quotient of ``rM``, else ``(mask, x)``."""
    code = int(_quotient_violation(rM, rN, n))
    if code < 0:
        return None
    return code // 64, code % 64


def axiom_violation(table: np.ndarray, n: int) -> int:
    return int(_axiom_violation(table, n))


# numpy-only helpers shared by wrappers ----------------------------------


def popcounts(n: int) -> np.ndarray:
    pc = np.zeros(1, np.uint8)
    for _ in range(n):
        pc = np.concatenate([pc, pc + 1])
    return pc


def deposit_masks(positions) -> np.ndarray:
    """Map every sub-mask over ``len(positions)`` bits to a host mask."""
    out = np.zeros(1, np.int64)
    for p in positions:
        out = np.concatenate([out, out | (np.int64(1) << int(p))])
    return out
