"""Arithmetic in small finite fields GF(p^k), q = p^k <= 4096.

Elements are integers ``0..q-1``; the base-p digits of an element are its
coefficients in the polynomial basis ``1, x, ..., x^(k-1)`` (lowest first).
Every modulus in :data:`MODULI` is primitive, so ``x`` generates the
multiplicative group and multiplication runs through log/antilog tables.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import DomainError

MAX_ORDER = 4096

#: (p, k) -> monic primitive modulus, coefficients lowest degree first.
#: Lexicographically first primitive polynomial for each pair; frozen so
#: element encodings never change between runs or platforms.
MODULI = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (2, 9): (1, 0, 0, 0, 1, 0, 0, 0, 0, 1),
    (2, 10): (1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1),
    (2, 11): (1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 12): (1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1),
    (3, 2): (2, 1, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 1, 0, 0, 1),
    (3, 5): (1, 2, 0, 0, 0, 1),
    (3, 6): (2, 1, 0, 0, 0, 0, 1),
    (3, 7): (1, 2, 1, 0, 0, 0, 0, 1),
    (5, 2): (2, 1, 1),
    (5, 3): (2, 3, 0, 1),
    (5, 4): (2, 2, 1, 0, 1),
    (5, 5): (2, 4, 0, 0, 0, 1),
    (7, 2): (3, 1, 1),
    (7, 3): (2, 3, 0, 1),
    (7, 4): (5, 3, 1, 0, 1),
    (11, 2): (7, 1, 1),
    (11, 3): (4, 1, 0, 1),
    (13, 2): (2, 1, 1),
    (13, 3): (6, 1, 0, 1),
    (17, 2): (3, 1, 1),
    (19, 2): (2, 1, 1),
    (23, 2): (7, 1, 1),
    (29, 2): (3, 1, 1),
    (31, 2): (12, 1, 1),
    (37, 2): (5, 1, 1),
    (41, 2): (12, 1, 1),
    (43, 2): (3, 1, 1),
    (47, 2): (13, 1, 1),
    (53, 2): (5, 1, 1),
    (59, 2): (2, 1, 1),
    (61, 2): (2, 1, 1),
}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int):
    """``(p, k)`` with ``q == p**k``, or None."""
    if q < 2:
        return None
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    return (p, k) if r == 1 else None


def _least_primitive_root(p: int) -> int:
    if p == 2:
        return 1
    n = p - 1
    factors = [f for f in range(2, n + 1) if n % f == 0 and _is_prime(f)]
    for g in range(2, p):
        if all(pow(g, n // f, p) != 1 for f in factors):
            return g
    raise AssertionError("no primitive root")


class FiniteField:
    """GF(q) with integer-encoded elements."""

    def __init__(self, q: int):
        pk = prime_power(q)
        if pk is None:
            raise DomainError(f"{q} is not a prime power")
        if q > MAX_ORDER:
            raise DomainError(f"field order {q} exceeds {MAX_ORDER}")
        self.p, self.k = pk
        self.q = q
        if self.k == 1:
            g = _least_primitive_root(self.p)
            self.modulus = ((-g) % self.p, 1)
        else:
            self.modulus = MODULI[pk]
        self._build_log_tables()

    def _build_log_tables(self):
        p, k, q = self.p, self.k, self.q
        f = self.modulus
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        coeffs = [1] + [0] * (k - 1)
        for i in range(q - 1):
            e = sum(c * p**j for j, c in enumerate(coeffs))
            exp[i] = e
            log[e] = i
            # multiply by x and reduce by the monic modulus
            top = coeffs[-1]
            coeffs = [0] + coeffs[:-1]
            if top:
                coeffs = [(c - top * f[j]) % p for j, c in enumerate(coeffs)]
        for i in range(q - 1, 2 * (q - 1)):
            exp[i] = exp[i - (q - 1)]
        if len(set(exp[: q - 1])) != q - 1:
            raise AssertionError(f"modulus for GF({q}) is not primitive")
        self._exp = exp
        self._log = log
        self._digits = None
        self._add = None

    # -- scalar arithmetic -----------------------------------------------
    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    @property
    def generator(self):
        return self._exp[1]

    def digits(self, a: int) -> tuple:
        p = self.p
        return tuple((a // p**j) % p for j in range(self.k))

    def from_digits(self, ds) -> int:
        return sum((d % self.p) * self.p**j for j, d in enumerate(ds))

    def _add_rows(self):
        if self._add is None:
            tab = self.add_table()
            self._add = tab.tolist()
        return self._add

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % self.p
        return self._add_rows()[a][b]

    def neg(self, a: int) -> int:
        if self.p == 2 or a == 0:
            return a
        if self.k == 1:
            return (-a) % self.p
        return self.from_digits(-d for d in self.digits(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n == 0:
            return 1
        if a == 0:
            return 0
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("log of zero")
        return self._log[a]

    def exp(self, n: int) -> int:
        return self._exp[n % (self.q - 1)]

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def elements(self) -> range:
        return range(self.q)

    def dot(self, u, v) -> int:
        acc = 0
        for a, b in zip(u, v):
            if a and b:
                acc = self.add(acc, self.mul(a, b))
        return acc

    # -- tables ------------------------------------------------------------
    def add_table(self) -> np.ndarray:
        q, p = self.q, self.p
        idx = np.arange(q, dtype=np.int64)
        if p == 2:
            return np.bitwise_xor.outer(idx, idx)
        out = np.zeros((q, q), dtype=np.int64)
        for j in range(self.k):
            w = p**j
            d = (idx // w) % p
            out += ((d[:, None] + d[None, :]) % p) * w
        return out

    def mul_table(self) -> np.ndarray:
        q = self.q
        log = np.array(self._log, dtype=np.int64)
        exp = np.array(self._exp, dtype=np.int64)
        out = exp[(log[:, None] + log[None, :])]
        out[0, :] = 0
        out[:, 0] = 0
        return out

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and other.q == self.q

    def __hash__(self):
        return hash(("GF", self.q))


@lru_cache(maxsize=None)
def GF(q: int) -> FiniteField:
    """Shared field instance for order ``q``."""
    return FiniteField(q)


def subfield_map(small: FiniteField, big: FiniteField) -> list[int]:
    """Embedding of GF(q) into GF(q^k) as an element table ``small -> big``.

    The image of the generator of ``small`` is the first root (in the
    subfield of ``big``) of the minimal polynomial of that generator.
    """
    if small.p != big.p or big.k % small.k:
        raise DomainError(f"GF({small.q}) is not a subfield of GF({big.q})")
    if small.q == big.q:
        return list(range(small.q))
    step = (big.q - 1) // (small.q - 1)
    sub = [big.exp(step * j) for j in range(small.q - 1)]
    f = small.modulus  # coefficients lie in the prime field, encoded identically

    def value(beta):
        acc = 0
        for c in reversed(f):
            acc = big.add(big.mul(acc, beta), c)
        return acc

    beta = next(b for b in sub if value(b) == 0)
    table = [0] * small.q
    for j in range(small.q - 1):
        table[small.exp(j)] = big.pow(beta, j)
    return table
