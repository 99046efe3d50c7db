"""Triangular pairs of disjoint bases and the extractors built on them.

The extractors follow the inductive constructions step by step and assert
every intermediate claim at runtime.  Below the (astronomical) rank
hypotheses a step can fail; the search then backtracks over the free
choices (size of the leading block, which dense part to keep, which
series pair to use) and finally reports the failed step.  Every returned
object is checked independently before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .certificates import MinorCertificate, verify_certificate
from .constructions import copies_of_u12, uniform
from .covering import find_minors, udensity_extract, MINOR_CAP
from .matroid import (
    Matroid,
    MatroidError,
    UniformMatroid,
    bits,
    closure_mask,
    dual,
    greedy_basis_mask,
    is_basis,
    is_circuit,
    lambda_,
    minor,
    popcount,
    restrict,
    same_rank_function,
)


class ProofStepFailed(Exception):
    def __init__(self, step: str):
        super().__init__(step)
        self.step = step


@dataclass(frozen=True)
class TriangularPair:
    a: tuple
    b: tuple
    orientation: str = "upper"

    def __post_init__(self):
        if len(self.a) != len(self.b):
            raise MatroidError("triangular tuples must have equal length")
        if self.orientation not in ("upper", "lower"):
            raise MatroidError(f"unknown orientation {self.orientation!r}")

    @property
    def phi(self) -> dict:
        out = dict(zip(self.a, self.b))
        out.update(zip(self.b, self.a))
        return out

    def restricted(self, keep) -> "TriangularPair":
        keep = set(keep)
        pairs = [(x, y) for x, y in zip(self.a, self.b) if x in keep and y in keep]
        return TriangularPair(tuple(x for x, _ in pairs), tuple(y for _, y in pairs), self.orientation)

    def flipped(self) -> "TriangularPair":
        return TriangularPair(self.a, self.b, "lower" if self.orientation == "upper" else "upper")

    def __len__(self):
        return len(self.a)


@dataclass
class Extraction:
    """Outcome of an extractor.

    ``outcome`` is one of ``uniform``, ``parallel`` (``tU_{1,2}``),
    ``lower`` (a minor with a lower-triangular pair), ``trivial``
    (loops and coloops only) or ``failed``.
    """

    outcome: str
    certificate: MinorCertificate | None = None
    pair: TriangularPair | None = None
    transcript: list = field(default_factory=list)
    failed_step: str | None = None
    method: str = "proof"
    removed: int | None = None
    bound: object = None


# ------------------------------------------------------------ basic ops


def goodbasis_split(M: Matroid, ordering):
    """Least ``t`` whose prefix ``X`` has ``|cl(X) - X| >= floor(n/(r+1))``."""
    order = [M.index(x) for x in ordering]
    if sorted(order) != list(range(M.n)):
        raise MatroidError("ordering must enumerate the ground set")
    need = M.n // (M.r + 1)
    prefix = 0
    for t in range(M.n + 1):
        if t:
            prefix |= 1 << order[t - 1]
        cap = closure_mask(M, prefix) & ~prefix
        if popcount(cap) >= need:
            return t, M.labels(cap)
    raise AssertionError("pigeonhole bound violated")  # pragma: no cover


def _prefix_condition(M: Matroid, a, b) -> bool:
    am = bm = 0
    for x, y in zip(a, b):
        am |= 1 << M.index(x)
        bm |= 1 << M.index(y)
        ra = M._rank_mask(am)
        if ra != M._rank_mask(bm) or M._rank_mask(am | bm) != ra:
            return False
    return True


def is_triangular(M: Matroid, pair: TriangularPair, orientation: str | None = None, via_dual: bool = False) -> bool:
    orientation = orientation or pair.orientation
    A, B = set(pair.a), set(pair.b)
    if len(A) != len(pair.a) or len(B) != len(pair.b) or A & B:
        return False
    if A | B != set(M.ground):
        return False
    if not (is_basis(M, A) and is_basis(M, B)):
        return False
    if orientation == "upper":
        return _prefix_condition(M, pair.a, pair.b)
    if via_dual:
        return _prefix_condition(dual(M), pair.a, pair.b)
    return _prefix_condition(M, pair.a[::-1], pair.b[::-1])


def reduce_triangular(M: Matroid, pair: TriangularPair, X, mode: str = "contract-X"):
    """``M / X \\ phi(X)`` (``contract-X``) or ``M / phi(X) \\ X`` (``contract-phiX``)."""
    if not is_triangular(M, pair, "upper"):
        raise MatroidError("pair is not upper-triangular")
    X = frozenset(X)
    if not X <= set(pair.a):
        raise MatroidError("X must be a subset of the A-tuple")
    Y = frozenset(pair.phi[x] for x in X)
    if mode == "contract-X":
        N = minor(M, X, Y)
    elif mode == "contract-phiX":
        N = minor(M, Y, X)
    else:
        raise MatroidError(f"unknown mode {mode!r}")
    return N, pair.restricted(set(N.ground))


def _check_disjoint_bases(M: Matroid, A, B):
    A, B = frozenset(A), frozenset(B)
    if A & B or not is_basis(M, A) or not is_basis(M, B):
        raise MatroidError("A and B must be disjoint bases")
    return A, B


def _bases_condition(M: Matroid, cert: MinorCertificate, A, B) -> bool:
    mnr = cert.minor_of(M)
    return is_basis(mnr, [x for x in A if x in mnr]) and is_basis(mnr, [x for x in B if x in mnr])


class _Budget:
    def __init__(self, limit):
        self.left = limit

    def tick(self, step):
        self.left -= 1
        if self.left < 0:
            raise ProofStepFailed(f"search budget exhausted at {step}")


def _uniform_check(M: Matroid, Aprime: int, A0: int, s: int):
    """A ``U_{s,2s}`` certificate in ``M`` from the uniform-density lemma on
    ``M / A'`` with basis ``A0``, or ``None``."""
    P = minor(M, M.labels(Aprime), ())
    try:
        res = udensity_extract(P, M.labels(A0), s - 1, 2 * s) if s >= 2 else None
    except MatroidError:
        return None
    if isinstance(res, MinorCertificate):
        return res.lifted(contract=M.labels(Aprime))
    return None


def _dense_parts(P: Matroid, k: int, target: int):
    """Rank-``<= k-1`` flats of ``P`` ordered by how much of ``target`` they hold."""
    from .matroid import flats_of_rank

    if k == 1:
        flats = [closure_mask(P, 0)]
    else:
        flats = flats_of_rank(P, k - 1)
    flats = [f & target for f in flats]
    uniq = sorted(set(flats) | {0}, key=lambda f: (-popcount(f), f))
    return uniq


# -------------------------------------------------------- triangular one


def extract_triangularone(M: Matroid, A, B, s: int, t: int, budget: int = 4000) -> Extraction:
    """``U_{s,2s}`` with both bases surviving, or a rank-``t`` minor carrying a
    lower-triangular pair in ``A^t x B^t``."""
    A, B = _check_disjoint_bases(M, A, B)
    if s < 2 or t < 0:
        raise MatroidError("need s >= 2 and t >= 0")
    M0 = restrict(M, A | B)
    outside = frozenset(M.ground) - (A | B)
    log: list = []
    try:
        kind, C, D, payload = _tri_one(M0, M0.mask(A), M0.mask(B), s, t, log, _Budget(budget))
    except ProofStepFailed as exc:
        return Extraction("failed", transcript=log, failed_step=exc.step)
    if kind == "uniform":
        cert = payload.lifted(delete=outside)
        if not verify_certificate(M, cert.target, cert) or not _bases_condition(M, cert, A, B):
            return Extraction("failed", transcript=log, failed_step="uniform certificate failed verification")
        return Extraction("uniform", cert, transcript=log)
    pair = payload
    cert = MinorCertificate(frozenset(C), frozenset(D) | outside, {x: x for x in pair.a + pair.b})
    N = cert.minor_of(M)
    if N.r != t or not is_triangular(N, pair, "lower"):
        return Extraction("failed", transcript=log, failed_step="lower pair failed verification")
    return Extraction("lower", cert, pair, transcript=log)


def _tri_one(M: Matroid, A: int, B: int, s: int, t: int, log, budget):
    """Returns ``(kind, contract_labels, delete_labels, payload)`` relative to ``M``
    (whose ground set is ``A | B``)."""
    budget.tick("triangularone")
    if t == 0:
        return "lower", M.labels(A), M.labels(B), TriangularPair((), (), "lower")
    n = popcount(A)
    Alist = list(bits(A))
    if n < t:
        # no lower pair of length t fits, but the uniform outcome still might
        for A0c in combinations(Alist, s) if n >= s else ():
            A0 = sum(1 << i for i in A0c)
            cert = _uniform_check(M, A & ~A0, A0, s)
            if cert is not None and _bases_condition(M, cert, M.labels(A), M.labels(B)):
                log.append({"step": "uniform density", "A0": sorted(M.labels(A0))})
                return "uniform", None, None, cert
        raise ProofStepFailed(f"rank {n} below t={t}")
    last_error = "no admissible choice of A0"
    for k in range(min(s, n), 0, -1):
        for A0c in combinations(Alist, k):
            A0 = sum(1 << i for i in A0c)
            Ap = A & ~A0
            if k == s:
                cert = _uniform_check(M, Ap, A0, s)
                if cert is not None and _bases_condition(M, cert, M.labels(A), M.labels(B)):
                    log.append({"step": "uniform density", "A0": sorted(M.labels(A0))})
                    return "uniform", None, None, cert
            P = minor(M, M.labels(Ap), M.labels(A0))
            B0 = P.mask(M.labels(B)) & greedy_basis_mask(P, P.full)
            B0m = M.mask(P.labels(B0))
            rest = B & ~B0m
            Pc = minor(M, M.labels(Ap), ())
            restP = Pc.mask(M.labels(rest))
            for part in _dense_parts(Pc, k, restP):
                budget.tick("majority")
                Bpp = M.mask(Pc.labels(part))
                Y = M.mask(Pc.labels(greedy_basis_mask(Pc, part)))
                B1 = Bpp & ~Y
                if popcount(B1) < t - 1:
                    continue
                try:
                    res = _tri_one_step(M, A, B, A0, Ap, B0m, Y, B1, s, t, log, budget)
                except ProofStepFailed as exc:
                    last_error = exc.step
                    continue
                return res
    raise ProofStepFailed(last_error)


def _tri_one_step(M, A, B, A0, Ap, B0, Y, B1, s, t, log, budget):
    keep = A | B0 | B1
    Mp = minor(M, M.labels(Y), M.labels(M.full & ~(keep | Y)))
    n = popcount(A)
    if Mp.r != n - popcount(Y):
        raise ProofStepFailed("r(M') = n - |Y|")
    mA0, mB0, mAp, mB1 = (Mp.mask(M.labels(x)) for x in (A0, B0, Ap, B1))
    if Mp._rank_mask(mAp) != popcount(mAp) or closure_mask(Mp, mAp) & mB1 != mB1:
        raise ProofStepFailed("A' independent and spanning B1 in M'")
    Md = dual(Mp)
    # cocircuit K inside A0 | B0 meeting both sides
    pool = list(bits(mA0 | mB0))
    K = None
    for size in range(2, len(pool) + 1):
        for S in combinations(pool, size):
            sm = sum(1 << i for i in S)
            if sm & mA0 and sm & mB0 and is_circuit(Md, sm):
                K = sm
                break
        if K is not None:
            break
    if K is None:
        raise ProofStepFailed("cocircuit meeting A0 and B0")
    # A1: greedy basis of cl(A') extending B1; A' - A1 is what it used from A'
    Z = greedy_basis_mask(Mp, mAp, mB1)
    used = Z & mAp
    mA1 = mAp & ~used
    if popcount(mA1) != popcount(mB1):
        raise ProofStepFailed("|A1| = |B1|")
    for a in bits(K & mA0):
        for b in bits(K & mB0):
            budget.tick("series pair")
            contract_pp = used | ((mA0 | mB0) & ~(1 << a | 1 << b))
            Mpp = minor(Mp, Mp.labels(contract_pp), ())
            la, lb = Mp.ground[a], Mp.ground[b]
            ab = Mpp.mask({la, lb})
            if not is_circuit(dual(Mpp), ab):
                continue
            sub = minor(Mpp, {la}, {lb})
            A1l, B1l = Mp.labels(mA1), Mp.labels(mB1)
            if not (is_basis(sub, A1l) and is_basis(sub, B1l)):
                raise ProofStepFailed("A1, B1 bases of M''/a\\b")
            log.append({"step": "series pair", "a": la, "b": lb, "rank": sub.r})
            try:
                kind, C, D, payload = _tri_one(sub, sub.mask(A1l), sub.mask(B1l), s, t - 1, log, budget)
            except ProofStepFailed:
                log.append({"step": "backtrack", "a": la, "b": lb})
                continue
            Cfull = M.labels(Y) | Mp.labels(contract_pp)
            Dfull = M.labels(M.full & ~(keep | Y))
            if kind == "uniform":
                return "uniform", None, None, payload.lifted(contract=Cfull | {la}, delete=Dfull | {lb})
            pair = TriangularPair((la,) + payload.a, (lb,) + payload.b, "lower")
            return "lower", Cfull | C, Dfull | D, pair
    raise ProofStepFailed("series pair {a, b} in M''")


# -------------------------------------------------------- triangular two


def extract_triangulartwo(M: Matroid, pair: TriangularPair, s: int, t: int, budget: int = 4000) -> Extraction:
    """``U_{s,2s}`` or ``tU_{1,2}`` with both tuples meeting the minor in bases."""
    if not is_triangular(M, pair, "upper"):
        raise MatroidError("pair is not upper-triangular")
    if s < 2 or t < 0:
        raise MatroidError("need s >= 2 and t >= 0")
    log: list = []
    try:
        cert = _tri_two(M, pair, s, t, log, _Budget(budget))
    except ProofStepFailed as exc:
        return Extraction("failed", transcript=log, failed_step=exc.step)
    A, B = set(pair.a), set(pair.b)
    if not verify_certificate(M, cert.target, cert) or not _bases_condition(M, cert, A, B):
        return Extraction("failed", transcript=log, failed_step="certificate failed verification")
    kind = "uniform" if isinstance(cert.target, UniformMatroid) and cert.target.n == 2 * s and cert.target.r == s else "parallel"
    if t == 0:
        kind = "parallel"
    return Extraction(kind, cert, transcript=log)


def _tri_two(M: Matroid, pair: TriangularPair, s: int, t: int, log, budget) -> MinorCertificate:
    budget.tick("triangulartwo")
    if t == 0:
        return MinorCertificate(frozenset(pair.a), frozenset(pair.b), {}, copies_of_u12(0))
    n = len(pair)
    if n < t:
        raise ProofStepFailed(f"rank {n} below t={t}")
    phi = pair.phi
    last = "no admissible block"
    for k in range(min(s, n), 0, -1):
        A0l = pair.a[:k]
        B0l = pair.b[:k]
        Apl = pair.a[k:]
        Bpl = pair.b[k:]
        A0, Ap = M.mask(A0l), M.mask(Apl)
        if k == s:
            cert = _uniform_check(M, Ap, A0, s)
            if cert is not None and _bases_condition(M, cert, set(pair.a), set(pair.b)):
                log.append({"step": "uniform density", "A0": list(A0l)})
                return cert
        P = minor(M, Apl, ())
        for part in _dense_parts(P, k, P.mask(Bpl)):
            budget.tick("majority")
            Bpp = [x for x in Bpl if P.mask(x) & part]
            sub = restrict(P, Bpp)
            h, captured = goodbasis_split(sub, Bpp)
            Y = [sub.ground[i] for i in bits(greedy_basis_mask(sub, sub.mask(Bpp[:h])))]
            B1 = [x for x in Bpp[h:] if x in captured]
            if len(B1) < t - 1:
                continue
            X = [phi[y] for y in Y]
            A1 = [phi[y] for y in B1]
            keepB = set(B0l) | set(Y) | set(B1)
            keepA = set(A0l) | set(X) | set(A1)
            Dp = frozenset(pair.b) - keepB
            Cp = frozenset(pair.a) - keepA
            Mp = minor(M, Cp, Dp)
            pp = pair.restricted(Mp.ground)
            try:
                cert = _tri_two_step(M, Mp, pp, A0l, B0l, X, Y, A1, B1, s, t, log, budget)
            except ProofStepFailed as exc:
                last = exc.step
                continue
            return cert.lifted(contract=Cp, delete=Dp)
    raise ProofStepFailed(last)


def _tri_two_step(M, Mp, pp, A0l, B0l, X, Y, A1, B1, s, t, log, budget) -> MinorCertificate:
    if not is_triangular(Mp, pp, "upper"):
        raise ProofStepFailed("pair stays upper-triangular in M'")
    XY = set(X) | set(Y)
    Np = minor(Mp, XY, ())
    side1 = set(A1) | set(B1)
    if lambda_(Np, Np.mask(side1)) != 0:
        raise ProofStepFailed("lambda_{N'}(A1 | B1) = 0")
    N1 = restrict(Np, side1)
    alt = minor(minor(Mp, set(Y), set(X)), set(A0l), set(B0l))
    if not same_rank_function(N1, alt):
        raise ProofStepFailed("N1 = (M'/Y \\ X)/A0 \\ B0")
    p1 = pp.restricted(side1)
    if not is_triangular(N1, p1, "upper"):
        raise ProofStepFailed("pair upper-triangular in N1")
    N0 = restrict(Np, set(A0l) | set(B0l))
    mA0, mB0 = N0.mask(A0l), N0.mask(B0l)
    circ = None
    pool = list(range(N0.n))
    for size in range(2, N0.n + 1):
        for S in combinations(pool, size):
            sm = sum(1 << i for i in S)
            if sm & mA0 and sm & mB0 and is_circuit(N0, sm):
                circ = sm
                break
        if circ is not None:
            break
    if circ is None:
        raise ProofStepFailed("circuit of N0 meeting A0 and B0")
    a = next(bits(circ & mA0))
    b = next(bits(circ & mB0))
    la, lb = N0.ground[a], N0.ground[b]
    log.append({"step": "parallel pair", "a": la, "b": lb, "rest_rank": N1.r})
    rec = _tri_two(N1, p1, s, t - 1, log, budget)
    C0 = N0.labels(circ & ~(1 << a | 1 << b))
    D0 = N0.labels(N0.full & ~circ)
    if isinstance(rec.target, UniformMatroid) and rec.target.r == s and rec.target.n == 2 * s and t - 1 > 0:
        # a uniform minor inside N1 lifts directly
        return rec.lifted(contract=XY, delete=set(A0l) | set(B0l))
    target = copies_of_u12(t)
    image = {la: "x1", lb: "y1"}
    for src, dst in rec.image.items():
        i = int(dst[1:]) + 1
        image[src] = f"{dst[0]}{i}"
    return MinorCertificate(frozenset(XY) | C0 | rec.contract, D0 | rec.delete, image, target)


# ------------------------------------------------------------- self dual


def _exhaustive(M: Matroid, A, B, s: int, t: int, cap: int):
    def ok(cert):
        return _bases_condition(M, cert, A, B)

    for target, kind in ((uniform(s, 2 * s, [f"u{i}" for i in range(2 * s)]), "uniform"), (copies_of_u12(t), "parallel")):
        cert = next(find_minors(M, target, cap, ok), None)
        if cert is not None:
            return kind, cert
    return None, None


def extract_selfdual(
    M: Matroid, A, B, s: int, t: int, budget: int = 4000, fallback: bool = True, cap: int = MINOR_CAP
) -> Extraction:
    """``U_{s,2s}`` or ``tU_{1,2}`` minor in which ``A`` and ``B`` meet the minor in bases.

    Dualizes ``M | (A | B)``, extracts a lower pair there for the largest
    feasible ``t'``, then runs the upper-triangular extractor on the dual of
    that minor.  If every ``t'`` fails, an exhaustive certificate search
    (with the same basis conditions) is used and recorded as the method.
    """
    A, B = _check_disjoint_bases(M, A, B)
    if s < 2 or t < 0:
        raise MatroidError("need s >= 2 and t >= 0")
    outside = frozenset(M.ground) - (A | B)
    M1 = dual(restrict(M, A | B))
    r = len(A)
    top = min(r, _selfdual_tprime(s, t))
    log: list = []
    for tp in range(top, t - 1, -1):
        ex1 = extract_triangularone(M1, A, B, s, tp, budget)
        log.append({"step": "triangularone", "t_prime": tp, "outcome": ex1.outcome, "failed": ex1.failed_step})
        if ex1.outcome == "uniform":
            c = ex1.certificate
            cert = MinorCertificate(c.delete | outside, c.contract, dict(c.image), c.target)
            return _finish(M, A, B, "uniform", cert, log, "proof")
        if ex1.outcome != "lower":
            continue
        c1 = ex1.certificate
        M2d = minor(restrict(M, A | B), c1.delete, c1.contract)
        ex2 = extract_triangulartwo(M2d, ex1.pair.flipped(), s, t, budget)
        log.append({"step": "triangulartwo", "t_prime": tp, "outcome": ex2.outcome, "failed": ex2.failed_step})
        if ex2.outcome in ("uniform", "parallel"):
            cert = ex2.certificate.lifted(contract=c1.delete, delete=c1.contract | outside)
            return _finish(M, A, B, ex2.outcome, cert, log, "proof")
    if fallback and M.n - len(outside) <= cap:
        kind, cert = _exhaustive(restrict(M, A | B), A, B, s, t, cap)
        log.append({"step": "exhaustive search", "found": kind})
        if cert is not None:
            return _finish(M, A, B, kind, cert.lifted(delete=outside), log, "exhaustive")
    return Extraction("failed", transcript=log, failed_step="no t' succeeded")


def _selfdual_tprime(s: int, t: int) -> int:
    v = 1
    base = s * 4**s
    for _ in range(t):
        v *= base
        if v > 10**6:
            break
    return v


def _finish(M, A, B, kind, cert, log, method):
    if not verify_certificate(M, cert.target, cert) or not _bases_condition(M, cert, A, B):
        return Extraction("failed", transcript=log, failed_step="certificate failed verification")
    return Extraction(kind, cert, transcript=log, method=method)


# ------------------------------------------------------------- trichotomy


def decompose_trivial(M: Matroid, s: int, budget: int = 4000) -> Extraction:
    """``U_{s,2s}``, ``sU_{1,2}``, or a minor of loops and coloops.

    The disjoint-bases branch is attempted whenever ``r(E - B) >= s``; the
    proof's threshold ``h`` is astronomically large, and using the smaller
    threshold only adds attempts, never changes what a valid outcome is.
    """
    from .bounds import unavoidable_k

    if s < 0:
        raise MatroidError("s must be non-negative")
    bound = unavoidable_k(s)
    log: list = []
    if s == 0:
        basis = M.labels(greedy_basis_mask(M, M.full))
        cert = MinorCertificate(basis, frozenset(M.ground) - basis, {}, uniform(0, 0, []))
        return Extraction("uniform", cert, transcript=log, bound=bound)
    Bm = greedy_basis_mask(M, M.full)
    Xm = M.full & ~Bm
    Xp = greedy_basis_mask(M, Xm)
    h = popcount(Xp)
    if s >= 2 and h >= s:
        ext = greedy_basis_mask(M, Bm, Xp) & Bm
        B2 = Bm & ~ext
        P = minor(M, M.labels(ext), M.labels(Xm & ~Xp))
        ex = extract_selfdual(P, M.labels(Xp), M.labels(B2), s, s, budget)
        log.append({"step": "disjoint bases", "rank": P.r, "outcome": ex.outcome})
        if ex.outcome in ("uniform", "parallel"):
            cert = ex.certificate.lifted(contract=M.labels(ext), delete=M.labels(Xm & ~Xp))
            if verify_certificate(M, cert.target, cert):
                return Extraction(ex.outcome, cert, transcript=log + ex.transcript, method=ex.method, bound=bound)
    if s == 1 and h >= 1:
        # a non-loop element outside the basis lies on a circuit of size >= 2
        x = next(bits(Xp))
        circ = M.labels(1 << x) | M.labels(_support(M, Bm, x))
        y = sorted(circ - {M.ground[x]}, key=M.index)[0]
        rest = circ - {M.ground[x], y}
        cert = MinorCertificate(frozenset(rest), frozenset(M.ground) - circ, {M.ground[x]: "x1", y: "y1"}, copies_of_u12(1))
        return Extraction("parallel", cert, transcript=log, bound=bound)
    Mx = minor(M, M.labels(Xp), ())
    J = Mx.mask(M.labels(Bm)) & greedy_basis_mask(Mx, Mx.mask(M.labels(Bm)))
    Bprime = Bm & ~M.mask(Mx.labels(J))
    cert = MinorCertificate(M.labels(Xp), M.labels(Bprime), {e: e for e in M.ground if not (M.mask(e) & (Xp | Bprime))})
    N = cert.minor_of(M)
    from .matroid import loops_coloops

    lo, co = loops_coloops(N)
    if lo | co != frozenset(N.ground):
        return Extraction("failed", transcript=log, failed_step="third outcome is not all loops and coloops")
    removed = popcount(Xp) + popcount(Bprime)
    log.append({"step": "loops and coloops", "removed": removed})
    return Extraction("trivial", cert, transcript=log, removed=removed, bound=bound)


def _support(M, bmask, x):
    from .matroid import support_mask

    return support_mask(M, bmask, x)
