from math import comb

import pytest

from matstruct import bounds
from matstruct.bounds import REGISTRY, BoundError, Overflow, evaluate, render


def test_examples():
    assert evaluate("unavoidable_k", 0) == 4
    assert evaluate("selfdual_rank", 2, 0) == 16
    assert evaluate("buildcomplete_h", 5, 2) == 10


def test_direct_formulas():
    assert evaluate("unavoidable_k", 1) == 4 ** (4**2)
    assert evaluate("triangularone_rank", 2, 3) == 4**6
    assert evaluate("triangulartwo_rank", 3, 2) == (3 * 4**3) ** 2
    assert evaluate("selfdual_rank", 2, 1) == 4 ** (2 * 2 * 4**2)
    assert evaluate("bigmatroid_h", 1) == 4 ** (4**2) // 2
    assert evaluate("upgradecomplete_rank", 4, 3) == 4**4
    assert evaluate("threecompletewin_rank", 1, 1) == 16**4
    assert evaluate("maintech_dist", 3) == 21
    assert evaluate("maingeom_dist", 3) == 12
    assert evaluate("perturbthm_uniform_threshold", 1) == 16
    for m in range(8):
        for a in range(1, 6):
            assert evaluate("buildcomplete_h", m, a) == comb(m, a + 1)


def test_chain_last_term():
    ms = evaluate("threenonsingular_chain", 2, 4)
    assert ms[3] == 4 + comb(4, 3)
    assert all(isinstance(m, Overflow) for m in ms[:3])


def not_smaller(y, x):
    # two overflow markers are not ordered against each other
    if isinstance(y, Overflow):
        return True
    if isinstance(x, Overflow):
        return False
    return y >= x


@pytest.mark.parametrize("name", sorted(REGISTRY))
def test_monotone_in_each_parameter(name):
    fn, names = REGISTRY[name]
    lows = {"s": 2, "t": 0, "m": 0, "a": 1, "p": 1, "n0": 0, "h": 0, "k": 0}
    if name in ("unavoidable_k", "bigmatroid_h", "perturbthm_uniform_threshold"):
        lows["s"] = 0 if name != "bigmatroid_h" else 1
    if name == "threecompletewin_rank":
        lows["s"] = 1
    base = [lows[n] for n in names]
    for i in range(len(names)):
        prev = None
        for step in range(4):
            params = list(base)
            params[i] += step
            v = evaluate(name, *params, cap=60)
            val = v if isinstance(v, list) else [v]
            if prev is not None:
                for x, y in zip(prev, val):
                    assert not_smaller(y, x), (name, params)
            prev = val


@pytest.mark.parametrize("cap", [1, 2, 3, 5, 8])
def test_overflow_exactly_at_cap(cap):
    # 10^cap has cap + 1 digits and is the first value to overflow
    below = 10**cap - 1
    assert bounds._check(below, "x", cap) == below
    assert isinstance(bounds._check(10**cap, "x", cap), Overflow)
    assert isinstance(bounds.power(10, cap, cap), Overflow)
    assert bounds.power(10, cap - 1, cap) == 10 ** (cap - 1)


def test_overflow_boundary_through_registry():
    v = 4**6  # 4096, four digits
    assert evaluate("triangularone_rank", 2, 3, cap=4) == v
    assert isinstance(evaluate("triangularone_rank", 2, 3, cap=3), Overflow)
    assert evaluate("maintech_dist", 1428, cap=4) == 9996
    assert isinstance(evaluate("maintech_dist", 1429, cap=4), Overflow)


def test_overflow_orders_above_integers():
    o = evaluate("unavoidable_k", 3)
    assert isinstance(o, Overflow)
    assert o > 10**100 and not o < 5
    assert "exceeds" in render(o)
    assert render([1, o]).startswith("[1, <exceeds")


def test_invalid_parameters():
    with pytest.raises(BoundError):
        evaluate("selfdual_rank", 1, 0)
    with pytest.raises(BoundError):
        evaluate("nope", 1)
    with pytest.raises(BoundError):
        evaluate("buildcomplete_h", 5)
    with pytest.raises(BoundError):
        evaluate("unavoidable_k", -1)
