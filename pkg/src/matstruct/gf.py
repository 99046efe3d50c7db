"""Finite fields GF(q) as lookup tables.

Elements are the integers ``0..q-1``; for ``q = p**k`` an element encodes
the polynomial whose base-``p`` digits are its coefficients (least
significant digit = constant term).  Multiplication reduces modulo a fixed
monic irreducible polynomial so that representations are identical across
runs.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np

# Coefficients listed from the constant term upward, leading 1 included.
FIXED_POLYNOMIALS = {
    4: (1, 1, 1),  # x^2 + x + 1
    8: (1, 1, 0, 1),  # x^3 + x + 1
    9: (1, 0, 1),  # x^2 + 1
}


class FieldError(ValueError):
    pass


def factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, k


def _polymul_mod(a, b, p, modpoly):
    k = len(modpoly) - 1
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for deg in range(len(prod) - 1, k - 1, -1):
        c = prod[deg]
        if c:
            for i in range(k + 1):
                prod[deg - k + i] = (prod[deg - k + i] - c * modpoly[i]) % p
    return prod[:k]


def _is_irreducible(poly, p):
    k = len(poly) - 1
    # no factor of degree 1..k//2; brute force over monic candidates
    for d in range(1, k // 2 + 1):
        for coeffs in product(range(p), repeat=d):
            divisor = list(coeffs) + [1]
            rem = list(poly)
            for deg in range(k, d - 1, -1):
                c = rem[deg]
                if c:
                    for i in range(d + 1):
                        rem[deg - d + i] = (rem[deg - d + i] - c * divisor[i]) % p
            if not any(rem[:d]):
                return False
    return True


def default_polynomial(q: int) -> tuple[int, ...]:
    p, k = factor_prime_power(q)
    if k == 1:
        return (0, 1)
    if q in FIXED_POLYNOMIALS:
        return FIXED_POLYNOMIALS[q]
    for coeffs in product(range(p), repeat=k):
        poly = tuple(reversed(coeffs)) + (1,)
        if poly[0] and _is_irreducible(poly, p):
            return poly
    raise FieldError(f"no irreducible polynomial found for q={q}")  # pragma: no cover


class GF:
    """Arithmetic tables for GF(q)."""

    def __init__(self, q: int, polynomial=None):
        self.q = q
        self.p, self.k = factor_prime_power(q)
        self.polynomial = tuple(polynomial) if polynomial is not None else default_polynomial(q)
        if len(self.polynomial) != self.k + 1 or self.polynomial[-1] != 1:
            raise FieldError(f"polynomial {self.polynomial} has the wrong degree for q={q}")
        if self.k > 1 and not _is_irreducible(self.polynomial, self.p):
            raise FieldError(f"polynomial {self.polynomial} is reducible over GF({self.p})")
        p, k = self.p, self.k
        digits = [self._digits(x) for x in range(q)]
        add = np.zeros((q, q), np.int64)
        mul = np.zeros((q, q), np.int64)
        for x in range(q):
            for y in range(q):
                add[x, y] = self._encode([(a + b) % p for a, b in zip(digits[x], digits[y])])
                if k == 1:
                    mul[x, y] = (x * y) % p
                else:
                    mul[x, y] = self._encode(_polymul_mod(digits[x], digits[y], p, self.polynomial))
        self.add, self.mul = add, mul
        self.neg = np.array([int(np.nonzero(add[x] == 0)[0][0]) for x in range(q)], np.int64)
        inv = np.zeros(q, np.int64)
        for x in range(1, q):
            inv[x] = int(np.nonzero(mul[x] == 1)[0][0])
        self.inv = inv
        for arr in (self.add, self.mul, self.neg, self.inv):
            arr.setflags(write=False)

    def _digits(self, x):
        out = []
        for _ in range(self.k):
            out.append(x % self.p)
            x //= self.p
        return out

    def _encode(self, digits):
        x = 0
        for d in reversed(digits):
            x = x * self.p + d
        return x

    def power(self, x: int, e: int) -> int:
        r = 1
        for _ in range(e):
            r = int(self.mul[r, x])
        return r

    def __repr__(self):
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)


def is_prime_power(q: int) -> bool:
    try:
        factor_prime_power(q)
    except FieldError:
        return False
    return True
