"""Covering numbers, exhaustive minor search and uniform-minor extraction."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from . import kernels
from .certificates import MinorCertificate
from .matroid import (
    TABLE_MAX,
    Matroid,
    MatroidError,
    SizeLimitError,
    UniformMatroid,
    bits,
    closure_mask,
    contract,
    flats_of_rank,
    is_basis,
    minor,
    popcount,
    restrict,
    simplify,
    table_isomorphism,
)

TAU_CAP = 20
MINOR_CAP = 18


@dataclass
class CoverFamily:
    """Sets of rank at most ``a`` whose union is the ground set."""

    parts: list
    a: int

    def __len__(self):
        return len(self.parts)

    def validate(self, M: Matroid) -> bool:
        covered = frozenset().union(*self.parts) if self.parts else frozenset()
        if covered != frozenset(M.ground):
            return False
        return all(M.rank(p) <= self.a for p in self.parts)


# ------------------------------------------------------------------- tau


def _exact_cover(universe: int, sets: list[int]) -> list[int]:
    """Indices of a minimum subfamily of ``sets`` covering ``universe``."""
    sizes = [popcount(s) for s in sets]
    biggest = max(sizes)
    # greedy start gives the first incumbent
    best: list[int] = []
    left = universe
    while left:
        j = max(range(len(sets)), key=lambda i: (popcount(sets[i] & left), -i))
        best.append(j)
        left &= ~sets[j]
    containing = {x: [i for i, s in enumerate(sets) if s >> x & 1] for x in bits(universe)}

    def search(left, chosen):
        nonlocal best
        if not left:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        need = -(-popcount(left) // biggest)
        if len(chosen) + need >= len(best):
            return
        x = min(bits(left), key=lambda y: (len(containing[y]), y))
        for i in sorted(containing[x], key=lambda i: -popcount(sets[i] & left)):
            chosen.append(i)
            search(left & ~sets[i], chosen)
            chosen.pop()

    search(universe, [])
    return sorted(best)


def tau(M: Matroid, a: int, cap: int = TAU_CAP):
    """``(tau_a(M), CoverFamily)`` with a minimum cover as witness."""
    if a < 1:
        raise MatroidError("covering number needs a >= 1")
    if M.n == 0:
        return 0, CoverFamily([], a)
    if M.r <= a:
        return 1, CoverFamily([frozenset(M.ground)], a)
    si, rep = simplify(M)
    if si.n > cap:
        raise SizeLimitError(f"covering number capped at {cap} simplified elements, got {si.n}")
    members = {e: {e} for e in si.ground}
    loops = []
    for e, v in rep.items():
        if v is None:
            loops.append(e)
        else:
            members[v].add(e)
    if a == 1:
        simple_parts = [1 << i for i in range(si.n)]
    else:
        flats = flats_of_rank(si, a)
        simple_parts = [flats[i] for i in _exact_cover(si.full, flats)]
    parts = []
    for m in simple_parts:
        part = set()
        for e in si.labels(m):
            part |= members[e]
        parts.append(part)
    parts[0] |= set(loops)
    fam = CoverFamily([frozenset(p) for p in parts], a)
    return len(fam), fam


# ------------------------------------------------------------ minor search


def _minor_table(M: Matroid, tM, cmask: int, positions) -> np.ndarray:
    rc = M._rank_mask(cmask)
    if tM is not None:
        return (tM[kernels.deposit_masks(positions) | cmask] - rc).astype(np.uint8)
    host = kernels.deposit_masks(positions) | cmask
    return np.array([M._rank_mask(int(h)) - rc for h in host], np.uint8)


def find_minors(M: Matroid, N: Matroid, cap: int = MINOR_CAP, predicate=None):
    """Yield certificates for every way found of exhibiting ``N`` as a minor.

    Contract sets are independent of size ``r(M) - r(N)``, one per flat they
    span; the kept set is ``N``'s loops taken from that flat plus the
    remaining elements chosen outside it.
    """
    if M.n > cap:
        raise SizeLimitError(f"minor search capped at {cap} elements, got {M.n}")
    k = M.r - N.r
    if k < 0 or M.n - M.r < N.n - N.r or M.n < N.n:
        return
    tM = M.table() if M.n <= TABLE_MAX else None
    tN = N.table().astype(np.uint8)
    nloopsN = sum(1 for i in range(N.n) if N._rank_mask(1 << i) == 0)
    seen_flats = set()
    for C in combinations(range(M.n), k):
        cm = 0
        for i in C:
            cm |= 1 << i
        if M._rank_mask(cm) != k:
            continue
        F = closure_mask(M, cm)
        if F in seen_flats:
            continue
        seen_flats.add(F)
        loop_pool = list(bits(F & ~cm))
        if len(loop_pool) < nloopsN:
            continue
        outside = list(bits(M.full & ~F))
        need = N.n - nloopsN
        if need > len(outside):
            continue
        chosen_loops = loop_pool[:nloopsN]
        for T in combinations(outside, need):
            tm = 0
            for i in T:
                tm |= 1 << i
            if M._rank_mask(tm | cm) - k != N.r:
                continue
            positions = sorted(chosen_loops + list(T))
            t = _minor_table(M, tM, cm, positions)
            perm = table_isomorphism(t, tN, len(positions))
            if perm is None:
                continue
            keep = 0
            for i in positions:
                keep |= 1 << i
            image = {M.ground[p]: N.ground[perm[j]] for j, p in enumerate(positions)}
            cert = MinorCertificate(M.labels(cm), M.labels(M.full & ~(keep | cm)), image, N)
            if predicate is None or predicate(cert):
                yield cert


def has_minor(M: Matroid, N: Matroid, cap: int = MINOR_CAP, predicate=None):
    """First certificate from :func:`find_minors`, or ``None``."""
    return next(find_minors(M, N, cap, predicate), None)


# ------------------------------------------------------ uniform extraction


def uniform_target(a: int, b: int) -> UniformMatroid:
    return UniformMatroid(a + 1, [f"u{i}" for i in range(b)])


def _base_case(M: Matroid, bmask: int, a: int, b: int):
    X = bmask
    for x in bits(M.full & ~bmask):
        ok = True
        for S in combinations(list(bits(X)), a):
            sm = 0
            for i in S:
                sm |= 1 << i
            if M._rank_mask(sm | 1 << x) == M._rank_mask(sm):
                ok = False
                break
        if ok:
            X |= 1 << x
    if popcount(X) >= b:
        extra = list(bits(X & ~bmask))[: b - a - 1]
        keep = bmask
        for i in extra:
            keep |= 1 << i
        target = uniform_target(a, b)
        image = {M.ground[i]: target.ground[j] for j, i in enumerate(bits(keep))}
        return MinorCertificate(frozenset(), M.labels(M.full & ~keep), image, target)
    parts = []
    for S in combinations(list(bits(X)), a):
        sm = 0
        for i in S:
            sm |= 1 << i
        parts.append(M.labels(closure_mask(M, sm)))
    return CoverFamily(parts, a)


def udensity_extract(M: Matroid, B, a: int, b: int, tau_cap: int = TAU_CAP):
    """A ``U_{a+1,b}`` certificate in whose minor the surviving part of ``B``
    is a basis, or a cover with fewer than ``C(b,a)^(r-a)`` parts."""
    if not 1 <= a < b:
        raise MatroidError(f"need 1 <= a < b, got a={a}, b={b}")
    bmask = M.mask(B)
    if not is_basis(M, bmask):
        raise MatroidError("B is not a basis")
    if M.r <= a:
        raise MatroidError(f"need r(M) > a, got r(M)={M.r}")
    if M.r == a + 1:
        return _base_case(M, bmask, a, b)
    e = M.ground[next(bits(bmask))]
    M1 = contract(M, {e})
    sub = udensity_extract(M1, M.labels(bmask) - {e}, a, b, tau_cap)
    if isinstance(sub, MinorCertificate):
        return sub.lifted(contract={e})
    threshold = comb(b, a)
    union: list[frozenset] = []
    for F in sub.parts:
        Z = frozenset(F) | {e}
        zm = M.mask(Z)
        t, fam = tau(restrict(M, Z), a, tau_cap)
        if t >= threshold:
            # greedy maximal subset of B skew to Z
            Bp = 0
            rz = M._rank_mask(zm)
            for i in bits(bmask & ~zm):
                cand = Bp | 1 << i
                if M._rank_mask(cand | zm) == popcount(cand) + rz:
                    Bp = cand
            keep = zm | (bmask & ~Bp)
            N = minor(M, Bp, M.full & ~(keep | Bp))
            res = _base_case(N, N.mask(M.labels(bmask & ~Bp)), a, b)
            if not isinstance(res, MinorCertificate):
                raise AssertionError("dense part failed to yield a uniform minor")
            return res.lifted(contract=M.labels(Bp), delete=M.labels(M.full & ~(keep | Bp)))
        union.extend(fam.parts)
    return CoverFamily(union, a)


def image_of_basis_is_basis(M: Matroid, B, cert: MinorCertificate) -> bool:
    mnr = cert.minor_of(M)
    surv = [x for x in B if x in mnr]
    return is_basis(mnr, surv)
