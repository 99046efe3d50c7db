"""Elementary lifts and projections, distance certificates and shifts."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .certificates import MinorCertificate
from .matroid import (
    TABLE_MAX,
    Matroid,
    MatroidError,
    PipeContraction,
    PrincipalExtension,
    ShiftedMatroid,
    SizeLimitError,
    TableMatroid,
    bits,
    closure_mask,
    dual,
    flats_of_rank,
    freeze,
    minor,
    same_matroid,
)

LOOP = None  # shift target meaning "becomes a loop"


class InvalidShift(MatroidError):
    pass


class HypothesisViolation(MatroidError):
    pass


def _fresh(M: Matroid, stem: str = "p") -> str:
    i = 0
    while f"{stem}{i}" in M:
        i += 1
    return f"{stem}{i}"


def _reorder(N: Matroid, order) -> Matroid:
    """``N`` as a table matroid on the ground order ``order``."""
    if tuple(N.ground) == tuple(order):
        return N
    perm = [N.index(x) for x in order]
    return TableMatroid(order, N.table()[kernels.deposit_masks(perm)])


# --------------------------------------------------- extensions, quotients


def principal_extension(M: Matroid, A, label: str) -> Matroid:
    """Add ``label`` freely to ``cl(A)``: ``r(S+e) = min(r(S)+1, r(S | A))``."""
    return PrincipalExtension(M, M.mask(A), label)


def principal_coextension(M: Matroid, A, label: str) -> Matroid:
    return dual(PrincipalExtension(dual(M), M.mask(A), label))


def quotient_check(M: Matroid, N: Matroid, samples: int = 20000, seed: int = 0):
    """``(is_quotient, exhaustive)`` for ``N`` a quotient of ``M``:
    ``r_M(S+x) - r_M(S) >= r_N(S+x) - r_N(S)`` for all ``S``, ``x``."""
    if set(M.ground) != set(N.ground):
        raise MatroidError("quotient test needs a common ground set")
    if M.n <= TABLE_MAX:
        Nt = _reorder(N, M.ground)
        return kernels.quotient_violation(M.table(), Nt.table(), M.n) is None, True
    rng = random.Random(seed)
    idx = [N.index(x) for x in M.ground]
    for _ in range(samples):
        m = rng.getrandbits(M.n)
        x = rng.randrange(M.n)
        if m >> x & 1:
            continue
        nm = sum(1 << idx[i] for i in bits(m))
        dM = M._rank_mask(m | 1 << x) - M._rank_mask(m)
        dN = N._rank_mask(nm | 1 << idx[x]) - N._rank_mask(nm)
        if dN > dM:
            return False, False
    return True, False


def is_elementary_projection(M: Matroid, N: Matroid) -> bool:
    if set(M.ground) != set(N.ground):
        raise MatroidError("elementary projection needs a common ground set")
    if N.r != M.r - 1:
        return False
    return quotient_check(M, N)[0]


def is_elementary_lift(M: Matroid, N: Matroid) -> bool:
    return is_elementary_projection(N, M)


def projection_witness(M: Matroid, N: Matroid, label: str | None = None) -> Matroid:
    """Extension ``W`` of ``M`` by one element with ``W / e = N``."""
    label = label or _fresh(M)
    Nt = _reorder(N, M.ground).table().astype(np.int16)
    t = np.concatenate([M.table().astype(np.int16), Nt + 1])
    return TableMatroid(M.ground + (label,), t.astype(np.uint8))


# ----------------------------------------------------------------- paths


@dataclass
class Step:
    """``projection``: previous = ``W \\ e``, next = ``W / e``; ``lift`` the reverse."""

    kind: str
    witness: Matroid
    label: str
    after: Matroid


@dataclass
class PerturbationPath:
    start: Matroid
    steps: list = field(default_factory=list)

    def __len__(self):
        return len(self.steps)

    @property
    def end(self) -> Matroid:
        return self.steps[-1].after if self.steps else self.start

    def matroids(self):
        out = [self.start]
        out.extend(s.after for s in self.steps)
        return out

    def extend(self, other: "PerturbationPath") -> "PerturbationPath":
        return PerturbationPath(self.start, self.steps + other.steps)

    def reversed(self) -> "PerturbationPath":
        mats = self.matroids()
        steps = []
        for i in range(len(self.steps) - 1, -1, -1):
            s = self.steps[i]
            kind = "lift" if s.kind == "projection" else "projection"
            steps.append(Step(kind, s.witness, s.label, mats[i]))
        return PerturbationPath(self.end, steps)

    def dualized(self) -> "PerturbationPath":
        steps = []
        for s in self.steps:
            kind = "lift" if s.kind == "projection" else "projection"
            steps.append(Step(kind, freeze(dual(s.witness)), s.label, freeze(dual(s.after))))
        return PerturbationPath(freeze(dual(self.start)), steps)

    def validate(self) -> tuple[bool, str]:
        prev = self.start
        for i, s in enumerate(self.steps):
            W, e = s.witness, s.label
            dele = minor(W, (), {e})
            con = minor(W, {e}, ())
            src, dst = (dele, con) if s.kind == "projection" else (con, dele)
            if not same_matroid(prev, src):
                return False, f"step {i}: witness does not restrict to the previous matroid"
            if not same_matroid(s.after, dst):
                return False, f"step {i}: witness does not give the next matroid"
            if s.kind == "projection":
                ok = is_elementary_projection(prev, s.after)
            else:
                ok = is_elementary_lift(prev, s.after)
            if not ok:
                return False, f"step {i}: not an elementary {s.kind}"
            prev = s.after
        return True, "ok"

    def connects(self, M: Matroid, N: Matroid) -> bool:
        return same_matroid(self.start, M) and same_matroid(self.end, N)


def pipe_contract(M: Matroid, C) -> Matroid:
    """``M // C = (M / C) + O_C`` on the same ground set."""
    return PipeContraction(M, M.mask(C))


def pipe_path(M: Matroid, C) -> PerturbationPath:
    """At most ``|C|`` projections from ``M`` to ``M // C``: extend by a parallel
    copy of each element of ``C`` and contract it."""
    cur = freeze(M)
    path = PerturbationPath(cur)
    for c in M.ordered(C):
        ci = cur.index(c)
        if cur._rank_mask(1 << ci) == 0:
            continue
        lab = _fresh(cur)
        W = freeze(principal_extension(cur, {c}, lab))
        nxt = freeze(minor(W, {lab}, ()))
        path.steps.append(Step("projection", W, lab, nxt))
        cur = nxt
    return path


def path_from_common_minor(M: Matroid, N: Matroid, X, side: str = "contract") -> PerturbationPath:
    """Path of length at most ``2|X|`` when ``M / X = N / X`` (or ``M \\ X = N \\ X``)."""
    if set(M.ground) != set(N.ground):
        raise MatroidError("common-minor path needs a common ground set")
    X = frozenset(X)
    if side == "delete":
        return path_from_common_minor(dual(M), dual(N), X, "contract").dualized()
    if side != "contract":
        raise MatroidError(f"unknown side {side!r}")
    if not same_matroid(minor(M, X, ()), minor(N, X, ())):
        raise HypothesisViolation("M / X and N / X differ")
    p1 = pipe_path(M, X)
    p2 = pipe_path(N, X)
    if not same_matroid(p1.end, p2.end):  # pragma: no cover - follows from the check above
        raise HypothesisViolation("M // X and N // X differ")
    back = p2.reversed()
    back.start = p1.end
    return p1.extend(back)


# ----------------------------------------------------------------- shifts


@dataclass
class ShiftMap:
    """``psi``: each element of the domain goes to a target label or to LOOP."""

    psi: dict
    witness: frozenset

    @property
    def domain(self) -> frozenset:
        return frozenset(self.psi)


def validate_shift(M: Matroid, shift: ShiftMap) -> tuple[bool, str]:
    X = shift.domain
    for x in X | shift.witness:
        if x not in M:
            return False, f"{x!r} is not an element"
    for x, y in shift.psi.items():
        if y is not LOOP and (y not in M or y in X):
            return False, f"target of {x!r} must be an element outside the domain"
    cm = M.mask(shift.witness)
    clC = closure_mask(M, cm)
    rc = M._rank_mask(cm)
    for x in M.ordered(X):
        xi = M.index(x)
        y = shift.psi[x]
        if clC >> xi & 1:
            if y is not LOOP:
                return False, f"{x!r} lies in cl(C) but is not sent to a loop"
            continue
        if y is LOOP:
            return False, f"{x!r} is outside cl(C) but sent to a loop"
        yi = M.index(y)
        if not (M._rank_mask(cm | 1 << yi) == rc + 1 and M._rank_mask(cm | 1 << xi | 1 << yi) == rc + 1):
            return False, f"{x!r} and {y!r} are not parallel in M / C"
    return True, "ok"


def shifted(M: Matroid, psi: dict) -> Matroid:
    targets = {M.index(x): (-1 if y is LOOP else M.index(y)) for x, y in psi.items()}
    return ShiftedMatroid(M, targets)


def apply_shift(M: Matroid, shift: ShiftMap):
    """``(psi(M), path)`` with ``len(path) <= 4|C|``.

    ``psi'`` (``psi`` on ``X - C``) agrees with ``M`` after contracting
    ``C``; ``psi`` and ``psi'`` agree after deleting ``C``.
    """
    ok, msg = validate_shift(M, shift)
    if not ok:
        raise InvalidShift(msg)
    C = shift.witness
    Mhat = freeze(shifted(M, shift.psi))
    mid = freeze(shifted(M, {x: y for x, y in shift.psi.items() if x not in C}))
    p1 = path_from_common_minor(M, mid, C, "contract")
    p2 = path_from_common_minor(mid, Mhat, C, "delete")
    p2.start = p1.end
    return Mhat, p1.extend(p2)


# ------------------------------------------------------- exact distance


def _closure_table(t: np.ndarray, n: int) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.int64)
    cl = idx.copy()
    for x in range(n):
        b = np.int64(1) << x
        cl |= np.where(t[idx | b] == t, b, 0)
    return cl


def _flats(t: np.ndarray, n: int):
    cl = _closure_table(t, n)
    return np.nonzero(cl == np.arange(1 << n))[0].tolist(), cl


def modular_cuts(t: np.ndarray, n: int):
    """Nonempty modular cuts (as sets of flat masks) that do not contain ``cl(empty)``."""
    flats, _ = _flats(t, n)
    flats.sort(key=lambda f: (-int(t[f]), f))
    rank = {f: int(t[f]) for f in flats}
    supers = {f: [g for g in flats if g != f and g & f == f] for f in flats}
    # modular pairs whose intersection is a given flat
    meet_of: dict[int, list] = {f: [] for f in flats}
    for i, f in enumerate(flats):
        for g in flats[i + 1 :]:
            if f & g == f or f & g == g:
                continue
            m = f & g
            if rank[f] + rank[g] == int(t[f | g]) + rank.get(m, -99):
                meet_of[m].append((f, g))
    bottom = flats[-1]
    out = []
    state: dict[int, bool] = {}

    def rec(i):
        if i == len(flats):
            cut = frozenset(f for f, v in state.items() if v)
            if cut and bottom not in cut:
                out.append(cut)
            return
        f = flats[i]
        forced_out = any(not state[g] for g in supers[f])
        forced_in = any(state[a] and state[b] for a, b in meet_of[f])
        if forced_in and forced_out:
            return
        options = [True] if forced_in else [False] if forced_out else [False, True]
        for v in options:
            state[f] = v
            rec(i + 1)
            del state[f]

    rec(0)
    return out


def _projections(t: np.ndarray, n: int):
    _, cl = _flats(t, n)
    for cut in modular_cuts(t, n):
        inside = np.zeros(1 << n, np.uint8)
        inside[list(cut)] = 1
        yield (t.astype(np.int16) - inside[cl]).astype(np.uint8)


def _dual_table(t: np.ndarray, n: int) -> np.ndarray:
    r = int(t[-1])
    return (kernels.popcounts(n).astype(np.int16) + t[::-1].astype(np.int16) - r).astype(np.uint8)


def _neighbors(t: np.ndarray, n: int):
    for p in _projections(t, n):
        yield "projection", p
    for p in _projections(_dual_table(t, n), n):
        yield "lift", _dual_table(p, n)


@dataclass
class DistResult:
    d: int | None  # None means "greater than cap"
    path: PerturbationPath | None
    cap: int


def dist_exact(M: Matroid, N: Matroid, cap: int = 3, max_n: int = 8) -> DistResult:
    """Exact distance up to ``cap`` by bidirectional breadth-first search."""
    if set(M.ground) != set(N.ground):
        raise MatroidError("distance needs a common ground set")
    if M.n > max_n:
        raise SizeLimitError(f"exact distance capped at {max_n} elements")
    n = M.n
    order = M.ground
    tM = M.table()
    tN = _reorder(N, order).table()
    kM, kN = tM.tobytes(), tN.tobytes()
    if kM == kN:
        return DistResult(0, PerturbationPath(freeze(M)), cap)
    if abs(M.r - N.r) > cap:
        return DistResult(None, None, cap)
    # parent maps: key -> (parent key, kind of move from parent to key)
    par = [{kM: None}, {kN: None}]
    tables = {kM: tM, kN: tN}
    fronts = [[kM], [kN]]
    depth = [0, 0]
    meet = None
    while meet is None and depth[0] + depth[1] < cap:
        side = 0 if len(fronts[0]) <= len(fronts[1]) else 1
        nxt = []
        for k in fronts[side]:
            t = tables[k]
            for kind, nt in _neighbors(t, n):
                nk = nt.tobytes()
                if nk in par[side]:
                    continue
                par[side][nk] = (k, kind)
                tables.setdefault(nk, nt)
                nxt.append(nk)
                if nk in par[1 - side]:
                    meet = nk
                    break
            if meet is not None:
                break
        depth[side] += 1
        fronts[side] = nxt
        if not nxt and meet is None:
            break
    if meet is None:
        return DistResult(None, None, cap)
    # walk back to both ends
    chain_a = []
    k = meet
    while par[0][k] is not None:
        pk, kind = par[0][k]
        chain_a.append((pk, kind, k))
        k = pk
    chain_a.reverse()
    chain_b = []
    k = meet
    while par[1][k] is not None:
        pk, kind = par[1][k]
        # move pk -> k of this kind, traversed backwards: k -> pk
        chain_b.append((k, "lift" if kind == "projection" else "projection", pk))
        k = pk
    path = PerturbationPath(TableMatroid(order, tM))
    for a, kind, b in chain_a + chain_b:
        A, B = TableMatroid(order, tables[a]), TableMatroid(order, tables[b])
        lab = _fresh(A)
        W = projection_witness(A, B, lab) if kind == "projection" else projection_witness(B, A, lab)
        path.steps.append(Step(kind, W, lab, B))
    return DistResult(len(path), path, cap)


def dist_lower_bound(M: Matroid, N: Matroid) -> int:
    return abs(M.r - N.r)


# ------------------------------------------------------- desk-scale check


@dataclass
class PerturbationReport:
    mode: str
    target: tuple
    hypothesis_met: bool
    conclusion_holds: bool | None
    branch: str | None = None
    hypothesis_certificate: MinorCertificate | None = None
    conclusion_certificate: MinorCertificate | None = None
    note: str = ""


def perturbation_minor_check(Mhat: Matroid, e: str, mode: str, target: tuple, cap: int = 18) -> PerturbationReport:
    """Check the conclusion about ``N`` given the one-element witness ``Mhat``.

    ``mode='projection'``: ``M = Mhat \\ e`` and ``N = Mhat / e``;
    ``mode='lift'``: ``M = Mhat / e`` and ``N = Mhat \\ e``.
    ``target`` is ``('pg', n, q)`` or ``('uniform', s)``.
    """
    from .bounds import Overflow, perturbthm_uniform_threshold
    from .constructions import projective_geometry, uniform
    from .covering import has_minor

    if mode not in ("projection", "lift"):
        raise MatroidError(f"unknown mode {mode!r}")
    dele, con = minor(Mhat, (), {e}), minor(Mhat, {e}, ())
    M, N = (dele, con) if mode == "projection" else (con, dele)
    if not is_elementary_projection(M, N) if mode == "projection" else not is_elementary_lift(M, N):
        return PerturbationReport(mode, target, False, None, note="N is not an elementary " + mode + " of M")
    if target[0] == "uniform":
        s = target[1]
        k = perturbthm_uniform_threshold(s)
        if isinstance(k, Overflow) or M.n < 2 * k or M.r < k:
            return PerturbationReport(mode, target, False, None, note=f"hypothesis not met: needs a U_{{{k},{2 * k}}}-minor")
        big = uniform(k, 2 * k)
        hc = has_minor(M, big, cap)
        if hc is None:
            return PerturbationReport(mode, target, False, None, note="hypothesis not met")
        cc = has_minor(N, uniform(s, 2 * s), cap)
        return PerturbationReport(mode, target, True, cc is not None, None, hc, cc)
    _, n, q = target
    if n < 3:
        raise MatroidError("projective target needs n >= 3")
    G = projective_geometry(n, q)
    hc = has_minor(M, G, cap)
    if hc is None:
        return PerturbationReport(mode, target, False, None, note=f"hypothesis not met: no PG({n - 1},{q})-minor")
    M0 = minor(Mhat, hc.contract, hc.delete)
    # G is M0 \ e for a projection and M0 / e for a lift
    Gm = minor(M0, (), {e}) if mode == "projection" else minor(M0, {e}, ())
    ei = M0.index(e)
    if mode == "projection":
        want = projective_geometry(n - 1, q)
        branch = "hyperplane"
        # a PG(n-2,q)-restriction (hyperplane of G) whose closure misses e
        for hmask in flats_of_rank(Gm, n - 1):
            hm = M0.mask(Gm.labels(hmask))
            if M0._rank_mask(hm | 1 << ei) > M0._rank_mask(hm):
                break
        else:
            branch = "none"
        cc = has_minor(N, want, cap)
        return PerturbationReport(mode, target, True, cc is not None, branch, hc, cc)
    if n - 3 == 0:
        want = uniform(1, 1, ["p"])
    else:
        want = projective_geometry(n - 2, q)
    branch = "skew-basis"
    for lmask in flats_of_rank(Gm, 2):
        lm = M0.mask(Gm.labels(lmask))
        if M0._rank_mask(lm | 1 << ei) == M0._rank_mask(lm):
            branch = "line"
            break
    cc = has_minor(N, want, cap)
    note = ""
    if branch == "skew-basis":
        note = "every line is skew to e; N keeps the full geometry"
        full = has_minor(N, G, cap)
        if full is None:
            note += " (not confirmed)"
    return PerturbationReport(mode, target, True, cc is not None, branch, hc, cc, note)
