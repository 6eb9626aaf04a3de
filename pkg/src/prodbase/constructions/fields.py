"""Small finite fields as lookup tables.

An element of GF(p^f) is the integer sum(c_i * p^i) of its coefficient
vector modulo a pinned primitive polynomial, so 0 and 1 keep their usual
labels and the class of x is labelled p.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..errors import InputError

# Coefficients (constant term first, monic leading term omitted).
PRIMITIVE_POLYNOMIALS: dict[int, tuple[int, ...]] = {
    4: (1, 1),                    # x^2 + x + 1
    8: (1, 1, 0),                 # x^3 + x + 1
    9: (2, 2),                    # x^2 + 2x + 2
    16: (1, 1, 0, 0),             # x^4 + x + 1
    25: (2, 4),                   # x^2 + 4x + 2
    27: (1, 2, 0),                # x^3 + 2x + 1
    32: (1, 0, 1, 0, 0),          # x^5 + x^2 + 1
    49: (3, 6),                   # x^2 + 6x + 3
    64: (1, 1, 0, 1, 1, 0),       # x^6 + x^4 + x^3 + x + 1
    81: (2, 1, 0, 0),             # x^4 + x + 2
    121: (2, 7),                  # x^2 + 7x + 2
    125: (3, 3, 0),               # x^3 + 3x + 3
    128: (1, 1, 0, 0, 0, 0, 0),   # x^7 + x + 1
}


def factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise InputError(f"{q} is not a prime power")
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q
    f, r = 0, q
    while r % p == 0:
        r //= p
        f += 1
    if r != 1:
        raise InputError(f"{q} is not a prime power")
    return p, f


class GF:
    __slots__ = ("q", "p", "f", "add", "mul", "neg", "inv", "primitive", "frobenius")

    def __init__(self, q: int):
        p, f = factor_prime_power(q)
        self.q, self.p, self.f = q, p, f
        digits = np.array([[(x // p**i) % p for i in range(f)] for x in range(q)], dtype=np.int64)
        weights = p ** np.arange(f)
        self.add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        self.neg = ((-digits) % p) @ weights
        if f == 1:
            self.mul = np.outer(np.arange(q), np.arange(q)) % q
        else:
            if q not in PRIMITIVE_POLYNOMIALS:
                raise InputError(f"no pinned polynomial for GF({q})")
            self.mul = self._poly_mul_table(digits, weights, PRIMITIVE_POLYNOMIALS[q])
        self.inv = np.zeros(q, dtype=np.int64)
        for x in range(1, q):
            self.inv[x] = int(np.nonzero(self.mul[x] == 1)[0][0])
        self.primitive = self._find_primitive()
        self.frobenius = np.array([self.power(x, p) for x in range(q)], dtype=np.int64)

    def _poly_mul_table(self, digits, weights, poly) -> np.ndarray:
        p, f, q = self.p, self.f, self.q
        red = np.array(poly, dtype=np.int64)
        table = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(a, q):
                prod = np.convolve(digits[a], digits[b]) % p
                for deg in range(2 * f - 2, f - 1, -1):
                    c = prod[deg]
                    if c:
                        prod[deg] = 0
                        prod[deg - f: deg] = (prod[deg - f: deg] - c * red) % p
                val = int(prod[:f] @ weights)
                table[a, b] = table[b, a] = val
        return table

    def power(self, x: int, e: int) -> int:
        r = 1
        for _ in range(e):
            r = int(self.mul[r, x])
        return r

    def element_order(self, x: int) -> int:
        if x == 0:
            raise InputError("zero has no multiplicative order")
        k, r = 1, x
        while r != 1:
            r = int(self.mul[r, x])
            k += 1
        return k

    def _find_primitive(self) -> int:
        candidates = [self.p] if self.f > 1 else []
        candidates += list(range(1, self.q))
        for x in candidates:
            if x and self.element_order(x) == self.q - 1:
                return x
        raise InputError(f"GF({self.q}) has no primitive element: bad polynomial")

    def is_square(self, x: int) -> bool:
        if x == 0:
            return True
        return bool(np.any(self.mul.diagonal() == x))


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)
