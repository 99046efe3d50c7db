"""Complete-matroid builders, stacks, and the spanning clique and spanning
geometry decompositions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import ceil, comb

from .certificates import MinorCertificate
from .constructions import (
    complete_witness,
    frame_supports,
    gfq_representable,
    is_a_complete,
    is_b_clique,
    projective_geometry,
    uniform,
)
from .covering import MINOR_CAP, has_minor
from .gf import is_prime_power
from .matroid import (
    Matroid,
    MatroidError,
    SizeLimitError,
    bits,
    closure_mask,
    contract,
    flats_of_rank,
    is_basis,
    is_circuit,
    is_isomorphic,
    minor,
    popcount,
    restrict,
    simplify,
    support_mask,
)
from .perturb import (
    LOOP,
    HypothesisViolation,
    PerturbationPath,
    ShiftMap,
    apply_shift,
    pipe_contract,
    pipe_path,
    validate_shift,
)


class ShapeViolation(MatroidError):
    pass


class NotSpanningClique(MatroidError):
    pass


class CapExceeded(SizeLimitError):
    def __init__(self, msg, transcript=None):
        super().__init__(msg)
        self.transcript = transcript or []


class NotFound(MatroidError):
    def __init__(self, msg, residual=()):
        super().__init__(msg)
        self.residual = frozenset(residual)


def _require(cond: bool, what: str):
    if not cond:
        raise HypothesisViolation(what)


# ------------------------------------------------------- complete matroids


@dataclass
class CompleteWitness:
    """``circuits[I] = e_I`` with ``I + e_I`` a circuit for ``2 <= |I| <= a``."""

    joint_set: frozenset
    a: int
    circuits: dict

    def check(self, M: Matroid) -> bool:
        if not is_basis(M, self.joint_set):
            return False
        for k in range(2, self.a + 1):
            for I in combinations(sorted(self.joint_set), k):
                e = self.circuits.get(frozenset(I))
                if e is None or not is_circuit(M, set(I) | {e}):
                    return False
        return True


@dataclass
class CompleteMinor:
    matroid: Matroid
    contract: frozenset
    witness: CompleteWitness

    @property
    def certificate(self) -> MinorCertificate:
        return MinorCertificate(self.contract, frozenset(), {e: e for e in self.matroid.ground})


def _witness_or_raise(M: Matroid, B, a: int, what: str) -> dict:
    if not is_basis(M, B):
        raise HypothesisViolation(f"{what}: joint-set is not a basis")
    w = complete_witness(M, B, a)
    if w is None:
        raise HypothesisViolation(f"{what}: not {a}-complete with the given joint-set")
    return w


def build_complete(M: Matroid, B, B0, blocks, a: int, m: int | None = None) -> CompleteMinor:
    """An ``(a+1)``-complete minor of rank ``m`` with joint-set inside ``B0``.

    ``blocks`` is a list of ``(B_i, x_i)`` with ``B_i + x_i`` a circuit;
    ``C(m, a+1)`` of them are used.
    """
    B, B0 = frozenset(B), frozenset(B0)
    m = len(B0) if m is None else m
    _require(a >= 2, "a >= 2")
    _require(m > a, f"m > a (m={m}, a={a})")
    _require(len(B0) >= m, "|B0| >= m")
    _require(B0 <= B, "B0 inside the joint-set")
    h = comb(m, a + 1)
    _require(len(blocks) >= h, f"need h = C({m},{a + 1}) = {h} blocks, got {len(blocks)}")
    used = set(B0)
    for i, (Bi, xi) in enumerate(blocks):
        Bi = frozenset(Bi)
        _require(Bi <= B, f"block {i} inside the joint-set")
        _require(not (Bi & used), f"block {i} disjoint from B0 and earlier blocks")
        _require(len(Bi) > a, f"block {i} has more than a elements")
        _require(is_circuit(M, Bi | {xi}), f"block {i} plus {xi!r} is a circuit")
        used |= Bi
    _witness_or_raise(M, B, a, "build_complete")

    # contract the unused part of B so that (B0, B_1, ..., B_h) partitions it
    B0r = M.ordered(B0)[:m]
    reduced = []
    for Bi, xi in blocks[:h]:
        reduced.append((M.ordered(Bi)[: a + 1], xi))
    keep = set(B0r)
    for Bi, _ in reduced:
        keep |= set(Bi)
    Z = B - keep
    M1 = contract(M, Z)
    for i, (Bi, xi) in enumerate(reduced):
        if not is_circuit(M1, set(Bi) | {xi}):
            raise AssertionError(f"reduced block {i} plus {xi!r} is not a circuit")

    by_support: dict[frozenset, str] = {}
    for e, s in frame_supports(M1, keep).items():
        if len(s) == 2:
            by_support.setdefault(s, e)
    F: set = set()
    Fs = []
    for i, J in enumerate(combinations(B0r, a + 1)):
        Bi, xi = reduced[i]
        Fi = []
        for e, b in zip(J, Bi):
            f = by_support.get(frozenset((e, b)))
            if f is None:
                raise HypothesisViolation(f"no triangle through {e!r} and {b!r}")
            Fi.append(f)
        Mi = contract(M1, Fi)
        for e, b in zip(J, Bi):
            if not (Mi.rank({e}) == 1 and Mi.rank({b}) == 1 and Mi.rank({e, b}) == 1):
                raise AssertionError(f"{e!r} and {b!r} are not parallel in M / F_{i + 1}")
        if not is_circuit(Mi, set(J) | {xi}):
            raise AssertionError(f"J_{i + 1} plus {xi!r} is not a circuit of M / F_{i + 1}")
        Fs.append((list(J), xi))
        F |= set(Fi)
    MB0 = contract(M1, B0r)
    if MB0.rank(F) != len(F):
        raise AssertionError("F is not independent in M / B0")

    M0 = contract(M1, F)
    if not is_basis(M0, B0r):
        raise AssertionError("B0 is not a basis of M / F")
    for J, xi in Fs:
        if not is_circuit(M0, set(J) | {xi}):
            raise AssertionError(f"{J} plus {xi!r} is not a circuit of M / F")
    w = complete_witness(M0, B0r, a + 1)
    if w is None:
        raise AssertionError(f"result is not {a + 1}-complete")
    return CompleteMinor(M0, frozenset(Z) | frozenset(F), CompleteWitness(frozenset(B0r), a + 1, w))


def upgrade_complete(M: Matroid, B, a: int, m: int) -> CompleteMinor:
    """An ``(a+1)``-complete rank-``m`` minor of an ``a``-complete matroid.

    Needs ``a >= 3`` and ``r(M) >= m + (a+2) C(m, a+1)``, the amount the
    construction actually consumes.
    """
    _require(a >= 3, "upgrade needs a >= 3")
    _require(m > a, f"m > a (m={m}, a={a})")
    h = comb(m, a + 1)
    need = m + (a + 2) * h
    _require(M.r >= need, f"rank {M.r} below m + (a+2)h = {need}")
    B = frozenset(B)
    w = _witness_or_raise(M, B, a, "upgrade_complete")
    Bo = M.ordered(B)
    B0 = Bo[:m]
    F, zs, blocks = [], [], []
    for i in range(h):
        Bp = Bo[m + i * (a + 2) : m + (i + 1) * (a + 2)]
        Xi, Yi = Bp[:a], Bp[a - 1 :]
        z = Bp[a - 1]
        e, f = w[frozenset(Xi)], w[frozenset(Yi)]
        big = (set(Xi) | set(Yi) | {e, f}) - {z}
        if not is_circuit(M, big):
            raise AssertionError(f"(X_{i + 1} + Y_{i + 1} + e + f) - z is not a circuit")
        Bi = [x for x in Bp if x != z]
        if not is_circuit(contract(M, {f}), set(Bi) | {e}):
            raise AssertionError(f"B_{i + 1} plus {e!r} is not a circuit of M / f")
        F.append(f)
        zs.append(z)
        blocks.append((Bi, e))
    MF = contract(M, F)
    inner = build_complete(MF, B - set(zs), B0, blocks, a, m)
    return CompleteMinor(inner.matroid, inner.contract | frozenset(F), inner.witness)


def joint_density_bound(N: Matroid, B, t: int, s: int):
    """``(X, bound)``: ``X`` holds one ``e_I`` per ``t``-subset of ``B`` and
    ``bound = ceil(|X| / (s t)^t)`` is a lower bound on ``tau_{s-1}(N)``."""
    if t > N.r:
        return frozenset(), 0
    if t < 2:
        raise MatroidError("joint density needs t >= 2")
    w = _witness_or_raise(N, B, t, "joint_density_bound")
    X = frozenset(w[I] for I in w if len(I) == t)
    return X, ceil(Fraction(len(X), (s * t) ** t))


# ------------------------------------------------------------------ stacks


@dataclass
class StackDecl:
    partition: list
    q: int
    h: int
    t: int


def verify_stack(S: Matroid, decl: StackDecl, cap_rank: int = 4) -> bool:
    parts = [frozenset(p) for p in decl.partition]
    if len(parts) != decl.h:
        return False
    union = frozenset().union(*parts) if parts else frozenset()
    if union != frozenset(S.ground) or sum(map(len, parts)) != S.n:
        return False
    below: set = set()
    for X in parts:
        layer = restrict(contract(S, below), X)
        if layer.r > decl.t:
            return False
        if layer.r > cap_rank:
            raise SizeLimitError(f"stack layers capped at rank {cap_rank}")
        if gfq_representable(layer, decl.q, cap_rank) is not None:
            return False
        below |= X
    return True


# --------------------------------------------------------- spanning cliques


def verify_threenonsingular_witness(M: Matroid, B, B1, B2, B3, X) -> bool:
    B = frozenset(B)
    sets = [frozenset(B1), frozenset(B2), frozenset(B3), frozenset(X)]
    if len({len(s) for s in sets}) != 1:
        raise ShapeViolation("B1, B2, B3 and X must have equal sizes")
    if sum(map(len, sets)) != len(frozenset().union(*sets)):
        raise ShapeViolation("B1, B2, B3 and X must be disjoint")
    if not all(s <= B for s in sets[:3]) or sets[3] & B:
        raise ShapeViolation("B_i must lie in B and X outside it")
    m = len(sets[3])
    return all(contract(M, B - Bi).rank(sets[3]) == m for Bi in sets[:3])


@dataclass
class CliqueDecomposition:
    X: frozenset
    B1: frozenset
    B2: frozenset
    B3: frozenset
    W0: frozenset
    W1: frozenset
    W2: frozenset
    C1: frozenset
    C2: frozenset
    frame: frozenset
    shift: ShiftMap
    result: Matroid
    path: PerturbationPath
    transcript: list = field(default_factory=list)

    @property
    def h(self) -> int:
        return len(self.X)


def _supports(M: Matroid, X, B1, B2, B3, Bhat, f_idx):
    """``H_i(f)`` for i = 1, 2, 3 as masks of ``M``."""
    out = []
    for Bi in (B1, B2, B3):
        cm = X | ((B1 | B2 | B3) & ~Bi)
        N = minor(M, M.labels(cm), ())
        bm = N.mask(M.labels(Bhat))
        fi = N.index(M.ground[f_idx])
        if N._rank_mask(1 << fi) == 0:
            out.append(0)
        else:
            out.append(M.mask(N.labels(support_mask(N, bm, fi))))
    return out


def _three_matching(H):
    for b1 in bits(H[0]):
        for b2 in bits(H[1] & ~(1 << b1)):
            for b3 in bits(H[2] & ~(1 << b1) & ~(1 << b2)):
                return b1, b2, b3
    return None


def _grow_x(M: Matroid, bmask: int, x_cap: int, transcript: list):
    X = B1 = B2 = B3 = 0
    while True:
        Bhat = bmask & ~(B1 | B2 | B3)
        step = None
        for f in bits(M.full & ~(bmask | X)):
            H = _supports(M, X, B1, B2, B3, Bhat, f)
            mt = _three_matching(H)
            if mt is not None:
                step = f, mt
                break
        if step is None:
            return X, B1, B2, B3
        f, (b1, b2, b3) = step
        if popcount(X) >= x_cap:
            raise CapExceeded(f"X-growth passed the cap {x_cap}", transcript)
        X |= 1 << f
        B1 |= 1 << b1
        B2 |= 1 << b2
        B3 |= 1 << b3
        transcript.append(("grow", M.ground[f], M.ground[b1], M.ground[b2], M.ground[b3]))
        if not verify_threenonsingular_witness(
            M, M.labels(bmask), M.labels(B1), M.labels(B2), M.labels(B3), M.labels(X)
        ):
            raise AssertionError("grown X is not independent in every M / (B - B_i)")


def _excluded_minor_certificate(M: Matroid, s: int, n: int, cap: int):
    if M.n > cap:
        return None
    U = uniform(s, 2 * s)
    cert = has_minor(M, U, cap)
    if cert is not None:
        return cert
    q = 2
    while True:
        npts = (q**n - 1) // (q - 1)
        if npts > M.n:
            return None
        if is_prime_power(q):
            cert = has_minor(M, projective_geometry(n, q), cap)
            if cert is not None:
                return cert
        q += 1


def spanning_clique_decompose(M: Matroid, B, s: int = 2, n: int = 3, x_cap: int = 8,
                              check_minors: bool = False, minor_cap: int = MINOR_CAP):
    """Either a ``U_{s,2s}`` / rank-``n`` projective geometry certificate
    (only when ``check_minors``) or a :class:`CliqueDecomposition`."""
    B = frozenset(B)
    if not is_basis(M, B) or not is_a_complete(M, B, 2):
        raise NotSpanningClique("B is not the frame of a spanning clique restriction")
    if check_minors:
        cert = _excluded_minor_certificate(M, s, n, minor_cap)
        if cert is not None:
            return cert
    transcript: list = []
    bmask = M.mask(B)
    X, B1, B2, B3 = _grow_x(M, bmask, x_cap, transcript)
    Bbar = B1 | B2 | B3
    Bhat = bmask & ~Bbar

    rest = M.full & ~(bmask | X)
    W0 = W1 = W2 = 0
    partner: dict[int, int] = {}
    cm = Bbar | X
    rc = M._rank_mask(cm)
    for f in bits(rest):
        H = _supports(M, X, B1, B2, B3, Bhat, f)
        sizes = [popcount(x) for x in H]
        if sizes[0] == 2:
            W2 |= 1 << f
            continue
        if min(sizes) > 1:
            raise AssertionError(f"{M.ground[f]!r} violates the Hall dichotomy for a maximal X")
        if M._rank_mask(cm | 1 << f) == rc:
            W0 |= 1 << f
            continue
        for b in bits(Bhat):
            if M._rank_mask(cm | 1 << b | 1 << f) == rc + 1:
                partner[f] = b
                break
        else:
            raise AssertionError(f"{M.ground[f]!r} is neither spanned nor parallel to the frame")
        W1 |= 1 << f
    if W0 | W1 | W2 != rest or W0 & W1 or W0 & W2 or W1 & W2:
        raise AssertionError("W0, W1, W2 do not partition E - (B + X)")
    C1 = B2 | B3 | X
    mid = restrict(contract(M, M.labels(C1)), M.labels(Bhat | W2))
    if not is_b_clique(mid, M.labels(Bhat)):
        raise AssertionError("M / (B2 + B3 + X) | (Bhat + W2) is not a clique on Bhat")

    N = pipe_contract(M, M.labels(C1))
    psi = {e: LOOP for e in M.labels(B1 | W0)}
    for f, b in partner.items():
        psi[M.ground[f]] = M.ground[b]
    shift = ShiftMap(psi, M.labels(B1))
    ok, msg = validate_shift(N, shift)
    if not ok:
        raise AssertionError(f"constructed shift is invalid: {msg}")
    Mhat, p_shift = apply_shift(N, shift)
    p_pipe = pipe_path(M, M.labels(C1))
    p_shift.start = p_pipe.end
    path = p_pipe.extend(p_shift)
    frame = M.labels(Bhat)
    if not is_b_clique(Mhat, frame):
        raise AssertionError("result is not a clique on the reduced frame")
    if len(path) > 7 * popcount(X):
        raise AssertionError("path longer than 7|X|")
    L = M.labels
    return CliqueDecomposition(L(X), L(B1), L(B2), L(B3), L(W0), L(W1), L(W2), L(C1), L(B1),
                               frame, shift, Mhat, path, transcript)


# ------------------------------------------------------ spanning geometries


def _check_geometry(M: Matroid, R, q: int):
    R = frozenset(R)
    MR = restrict(M, R)
    if MR.r != M.r:
        raise HypothesisViolation("R is not spanning")
    if not is_prime_power(q):
        raise HypothesisViolation(f"{q} is not a prime power")
    npts = (q**M.r - 1) // (q - 1)
    if len(R) != npts or is_isomorphic(MR, projective_geometry(M.r, q), cap=max(16, npts)) is None:
        raise HypothesisViolation(f"R is not PG({M.r - 1},{q})")
    return MR


def find_skew_frame_set(M: Matroid, R, s: int):
    """Greedy maximal ``F`` skew to every rank-``(s-1)`` flat of ``R``.

    Returns ``(F, blocked)`` where ``blocked[e]`` is a flat that ``F + e``
    fails to be skew to.
    """
    R = frozenset(R)
    MR = restrict(M, R)
    flats = [M.mask(MR.labels(f)) for f in flats_of_rank(MR, s - 1)]
    rf = [M._rank_mask(f) for f in flats]
    F = 0
    blocked = {}
    for i in range(M.n):
        cand = F | 1 << i
        rc = M._rank_mask(cand)
        bad = next((fl for fl, r in zip(flats, rf) if M._rank_mask(cand | fl) != rc + r), None)
        if bad is None:
            F = cand
        else:
            blocked[M.ground[i]] = M.labels(bad)
    return M.labels(F), blocked


@dataclass
class GeometryDecomposition:
    C: frozenset
    shift: ShiftMap
    result: Matroid
    path: PerturbationPath
    skew_set: frozenset
    tried: int


def _parallel_over(M: Matroid, cm: int, rc: int, x: int, y: int) -> bool:
    return M._rank_mask(cm | 1 << y) == rc + 1 and M._rank_mask(cm | 1 << x | 1 << y) == rc + 1


def _residual(M: Matroid, cm: int, rmask: int) -> int:
    """Nonloops of ``M / C`` outside ``R`` with no parallel partner in ``R``."""
    rc = M._rank_mask(cm)
    out = 0
    for x in bits(M.full & ~rmask):
        if M._rank_mask(cm | 1 << x) == rc:
            continue
        if not any(_parallel_over(M, cm, rc, x, y) for y in bits(rmask)):
            out |= 1 << x
    return out


def spanning_geometry_decompose(M: Matroid, R, q: int, k_cap: int = 3, s: int = 2) -> GeometryDecomposition:
    """Smallest ``C`` (breadth-first by size) with every nonloop of ``M / C``
    parallel to an element of ``R``, and the resulting ``C``-shift."""
    R = frozenset(R)
    _check_geometry(M, R, q)
    rmask = M.mask(R)
    F, _ = find_skew_frame_set(M, R, s)
    order = M.ordered(F) + [e for e in M.ordered(R) if e not in F] + [e for e in M.ordered(M.full & ~rmask) if e not in F]
    idx = [M.index(e) for e in order]
    residual0 = _residual(M, 0, rmask)
    found = None
    tried = 0
    for k in range(0, k_cap + 1):
        for combo in combinations(idx, k):
            cm = 0
            for i in combo:
                cm |= 1 << i
            # a dependent C can be replaced by a basis of it
            if M._rank_mask(cm) != k:
                continue
            tried += 1
            if not _residual(M, cm, rmask):
                found = cm
                break
        if found is not None:
            break
    if found is None:
        raise NotFound(f"no C with |C| <= {k_cap}", M.labels(residual0))
    cl = closure_mask(M, found)
    rc = M._rank_mask(found)
    psi = {}
    for x in bits(M.full & ~rmask):
        if cl >> x & 1:
            psi[M.ground[x]] = LOOP
            continue
        y = next(y for y in bits(rmask) if _parallel_over(M, found, rc, x, y))
        psi[M.ground[x]] = M.ground[y]
    shift = ShiftMap(psi, M.labels(found))
    Mhat, path = apply_shift(M, shift)
    si, _ = simplify(Mhat)
    if is_isomorphic(si, projective_geometry(M.r, q), cap=max(16, si.n)) is None:
        raise AssertionError("simplified result is not the projective geometry")
    if len(path) > 4 * popcount(found):
        raise AssertionError("path longer than 4|C|")
    return GeometryDecomposition(M.labels(found), shift, Mhat, path, F, tried)
