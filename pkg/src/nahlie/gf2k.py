"""Exact arithmetic in the perfect field K = GF(2^k), 1 <= k <= 16.

Elements are ints in [0, 2^k) whose bits are the coefficients of a
polynomial over GF(2), reduced modulo a fixed irreducible polynomial of
degree k.  The modulus is the *lexicographically least* irreducible
polynomial of degree k (smallest integer encoding with the leading x^k
bit included); it is computed once per k and cached, so serialized
elements are portable across runs.

Addition is XOR.  Multiplication and inversion go through log/antilog
tables built on the least primitive element, so every operation is a
table lookup.  Because the field is perfect, squaring is a bijection and
sqrt(a) = a^(2^(k-1)) is its exact inverse.

Elements serialize as lowercase hex strings of the bit pattern
("0", "1", ..., "3" in GF(4)).
"""

from __future__ import annotations

from functools import lru_cache

MAX_DEGREE = 16


def _poly_mul_mod(a: int, b: int, mod: int, k: int) -> int:
    """Carry-less product of a and b reduced modulo mod (degree k)."""
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        b >>= 1
        a <<= 1
        if a >> k & 1:
            a ^= mod
    return acc


def _is_irreducible(poly: int, k: int) -> bool:
    """Trial division by every polynomial of degree 1..k//2."""
    for d in range(1, k // 2 + 1):
        for div in range(1 << d, 1 << (d + 1)):
            rem = poly
            while rem.bit_length() > d:
                rem ^= div << (rem.bit_length() - d - 1)
            if rem == 0:
                return False
    return True


def _least_irreducible(k: int) -> int:
    for cand in range(1 << k, 1 << (k + 1)):
        if _is_irreducible(cand, k):
            return cand
    raise AssertionError(f"no irreducible polynomial of degree {k}")


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


class GF:
    """The field GF(2^k) with table-driven arithmetic.

    Use :func:`gf` to get the cached instance for a given k.
    """

    def __init__(self, k: int) -> None:
        if not 1 <= k <= MAX_DEGREE:
            raise ValueError(f"field degree k={k} out of range 1..{MAX_DEGREE}")
        self.k = k
        self.size = 1 << k
        self.modulus = _least_irreducible(k)
        self._build_tables()

    def _build_tables(self) -> None:
        order = self.size - 1
        factors = _prime_factors(order) if order > 1 else []
        gen = None
        for cand in range(2, self.size):
            if all(self._pow_raw(cand, order // p) != 1 for p in factors):
                gen = cand
                break
        if gen is None:
            gen = 1  # k == 1: the group is trivial
        self.generator = gen
        self._exp = [0] * (2 * order + 2)
        self._log = [0] * self.size
        val = 1
        for i in range(order):
            self._exp[i] = val
            self._log[val] = i
            val = _poly_mul_mod(val, gen, self.modulus, self.k)
        for i in range(order, 2 * order + 2):
            self._exp[i] = self._exp[i - order] if order else 1

    def _pow_raw(self, a: int, n: int) -> int:
        acc = 1
        while n:
            if n & 1:
                acc = _poly_mul_mod(acc, a, self.modulus, self.k)
            a = _poly_mul_mod(a, a, self.modulus, self.k)
            n >>= 1
        return acc

    # -- basic operations -------------------------------------------------

    def check(self, a: int) -> int:
        if not 0 <= a < self.size:
            raise ValueError(f"{a} is not an element of GF(2^{self.k})")
        return a

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        order = self.size - 1
        return self._exp[(order - self._log[a]) % order] if order else 1

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            return 0 if n else 1
        order = self.size - 1
        if order == 0:
            return 1
        return self._exp[(self._log[a] * n) % order]

    def square(self, a: int) -> int:
        return self.mul(a, a)

    def sqrt(self, a: int) -> int:
        """The unique square root: a^(2^(k-1)), inverse of Frobenius."""
        return self.pow(a, 1 << (self.k - 1))

    def elements(self) -> range:
        return range(self.size)

    # -- serialization -----------------------------------------------------

    @staticmethod
    def to_hex(a: int) -> str:
        return format(a, "x")

    def from_hex(self, s: str) -> int:
        try:
            a = int(s, 16)
        except (TypeError, ValueError):
            raise ValueError(f"not a hex field element: {s!r}") from None
        return self.check(a)

    def __repr__(self) -> str:
        return f"GF(2^{self.k}; mod={bin(self.modulus)})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GF) and other.k == self.k

    def __hash__(self) -> int:
        return hash(("GF2k", self.k))


@lru_cache(maxsize=None)
def gf(k: int = 1) -> GF:
    """Cached GF(2^k) instance (default: the prime field GF(2))."""
    return GF(k)
