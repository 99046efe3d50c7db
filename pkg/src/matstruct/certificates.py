"""Minor certificates and their independent verification."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .matroid import TABLE_MAX, Matroid, MatroidError, SizeLimitError, bits, minor


@dataclass(frozen=True)
class MinorCertificate:
    """Witness that ``M / contract \\ delete`` is isomorphic to ``target``
    under ``image`` (a map from the surviving elements of ``M`` onto
    ``E(target)``)."""

    contract: frozenset
    delete: frozenset
    image: dict
    target: Matroid | None = field(default=None, compare=False)

    def minor_of(self, M: Matroid) -> Matroid:
        return minor(M, self.contract, self.delete)

    def normalized(self, M: Matroid) -> bool:
        """Contract set independent and delete set coindependent in ``M``."""
        c, d = M.mask(self.contract), M.mask(self.delete)
        indep = M._rank_mask(c) == len(self.contract)
        coindep = M._rank_mask(M.full & ~d) == M.r
        return indep and coindep

    def lifted(self, contract=(), delete=()) -> "MinorCertificate":
        """The same certificate seen from a matroid that additionally
        contracts ``contract`` and deletes ``delete`` first."""
        return MinorCertificate(
            self.contract | frozenset(contract), self.delete | frozenset(delete), dict(self.image), self.target
        )


@dataclass
class Verdict:
    ok: bool
    message: str = ""

    def __bool__(self):
        return self.ok


def verify_certificate(M: Matroid, N: Matroid, cert: MinorCertificate) -> Verdict:
    """Exhaustively compare ranks of ``M / C \\ D`` and ``N`` through the image."""
    C, D = cert.contract, cert.delete
    for lab in C | D:
        if lab not in M:
            return Verdict(False, f"{lab!r} not in E(M)")
    if C & D:
        return Verdict(False, f"contract and delete overlap: {sorted(C & D)}")
    rest = [e for e in M.ground if e not in C and e not in D]
    if set(cert.image) != set(rest):
        return Verdict(False, "image domain differs from E(M) - (C | D)")
    targets = [cert.image[e] for e in rest]
    if len(set(targets)) != len(targets) or set(targets) != set(N.ground):
        return Verdict(False, "image is not a bijection onto E(N)")
    k = len(rest)
    if k > TABLE_MAX:
        raise SizeLimitError(f"certificate verification capped at {TABLE_MAX} surviving elements")
    try:
        mnr = minor(M, C, D)
    except MatroidError as exc:
        return Verdict(False, str(exc))
    t_minor = mnr.table().astype(np.int64)
    # minor ground order equals ``rest``; pull N's table into that order
    perm = [N.index(cert.image[e]) for e in mnr.ground]
    t_target = N.table()[kernels.deposit_masks(perm)].astype(np.int64)
    diff = np.nonzero(t_minor != t_target)[0]
    if diff.size:
        m = int(diff[0])
        S = [mnr.ground[i] for i in bits(m)]
        return Verdict(
            False,
            f"rank mismatch on {{{', '.join(S)}}}: minor has {t_minor[m]}, target has {t_target[m]}",
        )
    return Verdict(True, "ok")
