"""Exact big-integer evaluation of the explicit bound formulas.

Values with more than ``cap`` decimal digits (default 10**4) are replaced by
an :class:`Overflow` marker that carries the formula and a lower bound on
``log10`` of the true value.  The marker compares greater than every
integer, so ``count <= bound`` stays meaningful.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import total_ordering
from math import comb

DIGIT_CAP = 10_000


class BoundError(ValueError):
    pass


@total_ordering
@dataclass(frozen=True)
class Overflow:
    expr: str
    log10_at_least: float

    def __eq__(self, other):
        return isinstance(other, Overflow) and other.expr == self.expr

    def __hash__(self):
        return hash(self.expr)

    def __lt__(self, other):
        if isinstance(other, int):
            return False
        return NotImplemented

    def __gt__(self, other):
        if isinstance(other, int):
            return True
        return NotImplemented

    def __str__(self):
        return f"<exceeds 10^{int(self.log10_at_least)}: {self.expr}>"


def _log10(x) -> float:
    if isinstance(x, Overflow):
        return x.log10_at_least
    if x <= 0:
        return float("-inf")
    return math.log10(x) if x < 10**300 else (x.bit_length() - 1) * math.log10(2)


def _check(v: int, expr: str, cap: int):
    if v >= 10**cap:
        return Overflow(expr, float(cap))
    return v


def power(b, e, cap: int = DIGIT_CAP, expr: str = ""):
    """``b**e`` exactly, or an Overflow when it has more than ``cap`` digits."""
    expr = expr or f"({b})^({e})"
    if isinstance(b, Overflow) or isinstance(e, Overflow):
        if e == 0 or b == 1:
            return 1
        scale = float(cap) if isinstance(e, Overflow) else e
        return Overflow(expr, max(float(cap), max(_log10(b), 0.0) * scale))
    if e == 0 or b == 1:
        return 1
    if b == 0:
        return 0
    est = e * math.log10(b)
    if est > cap + 1:
        return Overflow(expr, est)
    return _check(b**e, expr, cap)


def mul(x, y, cap: int = DIGIT_CAP, expr: str = ""):
    if isinstance(x, Overflow) or isinstance(y, Overflow):
        if x == 0 or y == 0:
            return 0
        return Overflow(expr or f"({x})*({y})", max(float(cap), _log10(x) + _log10(y)))
    return _check(x * y, expr or f"{x}*{y}", cap)


def _need(cond: bool, msg: str):
    if not cond:
        raise BoundError(msg)


def unavoidable_k(s: int, cap: int = DIGIT_CAP):
    """``4^(4^(2 s^2))``."""
    _need(s >= 0, "s >= 0")
    return power(4, power(4, 2 * s * s, cap), cap, f"4^(4^({2 * s * s}))")


def triangularone_rank(s: int, t: int, cap: int = DIGIT_CAP):
    """``4^(s t)``."""
    _need(s >= 2 and t >= 0, "s >= 2, t >= 0")
    return power(4, s * t, cap, f"4^({s * t})")


def triangulartwo_rank(s: int, t: int, cap: int = DIGIT_CAP):
    """``(s 4^s)^t``."""
    _need(s >= 2 and t >= 0, "s >= 2, t >= 0")
    return power(s * 4**s, t, cap, f"({s}*4^{s})^{t}")


def selfdual_rank(s: int, t: int, cap: int = DIGIT_CAP):
    """``4^(s (s 4^s)^t)``."""
    _need(s >= 2 and t >= 0, "s >= 2, t >= 0")
    inner = mul(s, triangulartwo_rank(s, t, cap), cap)
    return power(4, inner, cap, f"4^({s}*({s}*4^{s})^{t})")


def bigmatroid_h(s: int, cap: int = DIGIT_CAP):
    """``4^(4^(2 s^2)) / 2``."""
    k = unavoidable_k(s, cap)
    if isinstance(k, Overflow):
        return Overflow(f"4^(4^({2 * s * s}))/2", k.log10_at_least - math.log10(2))
    return k // 2


def buildcomplete_h(m: int, a: int, cap: int = DIGIT_CAP):
    """``C(m, a+1)``."""
    _need(m >= 0 and a >= 1, "m >= 0, a >= 1")
    return _check(comb(m, a + 1), f"C({m},{a + 1})", cap)


def upgradecomplete_rank(m: int, a: int, cap: int = DIGIT_CAP):
    """``m^(a+1)``."""
    _need(m >= 0 and a >= 1, "m >= 0, a >= 1")
    return power(m, a + 1, cap, f"{m}^{a + 1}")


def threecompletewin_rank(s: int, p: int, cap: int = DIGIT_CAP):
    """``(16 s^2 p^4)^((2p)^(2p))``."""
    _need(s >= 1 and p >= 1, "s >= 1, p >= 1")
    e = power(2 * p, 2 * p, cap)
    return power(16 * s * s * p**4, e, cap, f"(16*{s}^2*{p}^4)^((2*{p})^(2*{p}))")


def threenonsingular_chain(s: int, n0: int, cap: int = DIGIT_CAP) -> list:
    """``[m_0, m_1, m_2, m_3]`` with ``m_3 = n0 + C(n0,3)`` and
    ``m_k = 4^(s (s 4^s)^(m_{k+1}))``."""
    _need(s >= 2 and n0 >= 0, "s >= 2, n0 >= 0")
    ms = [_check(n0 + comb(n0, 3), f"{n0}+C({n0},3)", cap)]
    for k in (2, 1, 0):
        nxt = ms[0]
        inner = mul(s, power(s * 4**s, nxt, cap), cap)
        ms.insert(0, power(4, inner, cap, f"m_{k} = 4^({s}*({s}*4^{s})^m_{k + 1})"))
    return ms


def maintech_dist(h: int, cap: int = DIGIT_CAP):
    _need(h >= 0, "h >= 0")
    return _check(7 * h, f"7*{h}", cap)


def maingeom_dist(k: int, cap: int = DIGIT_CAP):
    _need(k >= 0, "k >= 0")
    return _check(4 * k, f"4*{k}", cap)


def perturbthm_uniform_threshold(s: int, cap: int = DIGIT_CAP):
    """``s 2^(4s)``: the uniform minor ``U_{n, 2n}`` with this ``n``."""
    _need(s >= 0, "s >= 0")
    return mul(s, power(2, 4 * s, cap), cap, f"{s}*2^({4 * s})")


REGISTRY = {
    "unavoidable_k": (unavoidable_k, ("s",)),
    "triangularone_rank": (triangularone_rank, ("s", "t")),
    "triangulartwo_rank": (triangulartwo_rank, ("s", "t")),
    "selfdual_rank": (selfdual_rank, ("s", "t")),
    "bigmatroid_h": (bigmatroid_h, ("s",)),
    "buildcomplete_h": (buildcomplete_h, ("m", "a")),
    "upgradecomplete_rank": (upgradecomplete_rank, ("m", "a")),
    "threecompletewin_rank": (threecompletewin_rank, ("s", "p")),
    "threenonsingular_chain": (threenonsingular_chain, ("s", "n0")),
    "maintech_dist": (maintech_dist, ("h",)),
    "maingeom_dist": (maingeom_dist, ("k",)),
    "perturbthm_uniform_threshold": (perturbthm_uniform_threshold, ("s",)),
}


def evaluate(name: str, *params: int, cap: int = DIGIT_CAP):
    try:
        fn, names = REGISTRY[name]
    except KeyError:
        raise BoundError(f"unknown bound {name!r}; known: {', '.join(REGISTRY)}") from None
    if len(params) != len(names):
        raise BoundError(f"{name} takes parameters ({', '.join(names)})")
    return fn(*params, cap=cap)


def render(value) -> str:
    if isinstance(value, list):
        return "[" + ", ".join(render(v) for v in value) + "]"
    return str(value)
