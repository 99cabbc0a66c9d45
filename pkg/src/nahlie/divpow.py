"""The truncated divided-power algebra O(n, m̄) over GF(2^k).

Basis monomials are x^(a) = x_1^(a_1) ... x_n^(a_n) with 0 <= a_i <
2^(m_i); m_i is the height of the variable x_i.  A multi-index packs
into one machine word as concatenated m_i-bit fields, so the packed
values enumerate the full basis 0 .. 2^m - 1 (m = sum m_i) and the
product rule is a single bit test: by Lucas' theorem the binomial
coefficient C(a+b, a) is odd exactly when a AND b = 0 bitwise, in which
case a + b = a OR b and the result stays in bounds automatically.

Polynomials are sparse maps packed-index -> nonzero field element.
Divided powers of elements of the maximal ideal follow the multinomial
expansion (sum u_t)^(r) = sum over r_1+...+r_t = r of the product of
u_t^(r_t), with single-variable powers weighted by the parity of
(l s)!/((l!)^s s!) computed through Legendre's 2-adic valuation
v2(N!) = N - popcount(N).  Powers >= 2 of monomials in two or more
variables vanish because squares of elements of the maximal ideal are
zero in characteristic 2.  The expansion is accumulated without height
bounds and bounds are enforced at the end, so a divided power that does
not exist in O(n, m̄) raises instead of silently truncating.
"""

from __future__ import annotations

from .errors import InputError, PreconditionError
from .gf2k import GF, gf

MAX_TOTAL_HEIGHT = 24


def v2_factorial(n: int) -> int:
    """2-adic valuation of n! (Legendre): n minus its binary digit sum."""
    return n - bin(n).count("1")


def divided_power_coeff_parity(l: int, s: int) -> int:
    """(l*s)! / ((l!)^s * s!) mod 2, the coefficient in (u^(l))^(s)."""
    val = v2_factorial(l * s) - s * v2_factorial(l) - v2_factorial(s)
    return 1 if val == 0 else 0


class DividedPowerAlgebra:
    """O(n, m̄) with a fixed ground field GF(2^k)."""

    def __init__(self, heights, k: int = 1) -> None:
        heights = tuple(int(h) for h in heights)
        if not heights:
            raise InputError("need at least one variable")
        if any(h < 1 for h in heights):
            raise InputError(f"heights must be positive: {heights}")
        if sum(heights) > MAX_TOTAL_HEIGHT:
            raise InputError(
                f"total height {sum(heights)} exceeds cap {MAX_TOTAL_HEIGHT}"
            )
        self.heights = heights
        self.n = len(heights)
        self.m = sum(heights)
        self.dim = 1 << self.m
        self.K: GF = gf(k)
        offs = []
        off = 0
        for h in heights:
            offs.append(off)
            off += h
        self.offsets = tuple(offs)
        self.field_masks = tuple((1 << h) - 1 for h in heights)
        # delta = the top multi-index (2^{m_i} - 1, ..., 2^{m_n} - 1)
        self.delta = self.dim - 1

    # -- multi-index packing ------------------------------------------------

    def pack(self, alpha) -> int:
        alpha = tuple(alpha)
        if len(alpha) != self.n:
            raise InputError(f"multi-index length {len(alpha)} != n={self.n}")
        idx = 0
        for i, a in enumerate(alpha):
            if not 0 <= a < (1 << self.heights[i]):
                raise InputError(
                    f"exponent {a} out of range for variable {i + 1}"
                    f" (height {self.heights[i]})"
                )
            idx |= a << self.offsets[i]
        return idx

    def unpack(self, idx: int) -> tuple:
        return tuple(
            (idx >> self.offsets[i]) & self.field_masks[i] for i in range(self.n)
        )

    def exponent(self, idx: int, i: int) -> int:
        return (idx >> self.offsets[i]) & self.field_masks[i]

    def deg(self, idx: int) -> int:
        return sum(self.unpack(idx))

    def monomials(self) -> range:
        return range(self.dim)

    def check_index(self, idx: int) -> int:
        if not 0 <= idx < self.dim:
            raise InputError(f"packed index {idx} out of range")
        return idx

    def mono_mul(self, a: int, b: int) -> int | None:
        """x^(a) * x^(b): a|b when disjoint (Lucas), else zero (None)."""
        self.check_index(a)
        self.check_index(b)
        if a & b:
            return None
        return a | b

    # -- polynomial constructors ---------------------------------------------

    def zero(self) -> "DPoly":
        return DPoly(self, {})

    def one(self) -> "DPoly":
        return DPoly(self, {0: 1})

    def const(self, c: int) -> "DPoly":
        self.K.check(c)
        return DPoly(self, {0: c} if c else {})

    def x(self, i: int) -> "DPoly":
        """The variable x_i, i in 1..n."""
        if not 1 <= i <= self.n:
            raise InputError(f"variable index {i} out of range 1..{self.n}")
        return DPoly(self, {1 << self.offsets[i - 1]: 1})

    def monomial(self, alpha, c: int = 1) -> "DPoly":
        self.K.check(c)
        idx = alpha if isinstance(alpha, int) else self.pack(alpha)
        self.check_index(idx)
        return DPoly(self, {idx: c} if c else {})

    def xbar(self, i: int) -> "DPoly":
        """x_i^(2^{m_i} - 1), the top power of x_i."""
        if not 1 <= i <= self.n:
            raise InputError(f"variable index {i} out of range 1..{self.n}")
        return DPoly(self, {self.field_masks[i - 1] << self.offsets[i - 1]: 1})

    def from_terms(self, terms) -> "DPoly":
        out: dict[int, int] = {}
        for idx, c in terms:
            self.check_index(idx)
            self.K.check(c)
            new = self.K.add(out.get(idx, 0), c)
            if new:
                out[idx] = new
            else:
                out.pop(idx, None)
        return DPoly(self, out)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DividedPowerAlgebra)
            and other.heights == self.heights
            and other.K == self.K
        )

    def __hash__(self):
        return hash((self.heights, self.K.k))

    def __repr__(self) -> str:
        return f"O(n={self.n}, m={self.heights}; GF(2^{self.K.k}))"


def _check_same_ambient(f: "DPoly", g: "DPoly") -> None:
    if f.alg != g.alg:
        raise InputError("mismatched ambient algebras")


class DPoly:
    """Sparse divided-power polynomial; immutable by convention."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: DividedPowerAlgebra, terms: dict) -> None:
        self.alg = alg
        self.terms = terms

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "DPoly") -> "DPoly":
        _check_same_ambient(self, other)
        add = self.alg.K.add
        out = dict(self.terms)
        for idx, c in other.terms.items():
            new = add(out.get(idx, 0), c)
            if new:
                out[idx] = new
            else:
                out.pop(idx, None)
        return DPoly(self.alg, out)

    __sub__ = __add__  # characteristic 2

    def __mul__(self, other: "DPoly") -> "DPoly":
        _check_same_ambient(self, other)
        K = self.alg.K
        out: dict[int, int] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                if a & b:
                    continue
                g = a | b
                c = K.mul(ca, cb)
                new = K.add(out.get(g, 0), c)
                if new:
                    out[g] = new
                else:
                    out.pop(g, None)
        return DPoly(self.alg, out)

    def cmul(self, c: int) -> "DPoly":
        K = self.alg.K
        K.check(c)
        if c == 0:
            return self.alg.zero()
        if c == 1:
            return self
        return DPoly(self.alg, {idx: K.mul(c, v) for idx, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DPoly)
            and other.alg == self.alg
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash((self.alg, tuple(sorted(self.terms.items()))))

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def constant_term(self) -> int:
        return self.terms.get(0, 0)

    def drop_constant(self) -> "DPoly":
        if 0 not in self.terms:
            return self
        out = dict(self.terms)
        del out[0]
        return DPoly(self.alg, out)

    def min_degree(self) -> int:
        """Smallest total degree of a monomial present; 0 for the zero
        polynomial would be meaningless, so raise there."""
        if not self.terms:
            raise PreconditionError("zero polynomial has no minimal degree")
        return min(self.alg.deg(idx) for idx in self.terms)

    def max_degree(self) -> int:
        if not self.terms:
            raise PreconditionError("zero polynomial has no maximal degree")
        return max(self.alg.deg(idx) for idx in self.terms)

    # -- derivations ----------------------------------------------------------

    def partial(self, i: int) -> "DPoly":
        """d/dx_i in the divided-power sense: x^(a) -> x^(a - e_i)."""
        alg = self.alg
        if not 1 <= i <= alg.n:
            raise InputError(f"variable index {i} out of range 1..{alg.n}")
        off = alg.offsets[i - 1]
        mask = alg.field_masks[i - 1]
        K = alg.K
        out: dict[int, int] = {}
        for idx, c in self.terms.items():
            a = (idx >> off) & mask
            if a == 0:
                continue
            g = (idx & ~(mask << off)) | ((a - 1) << off)
            new = K.add(out.get(g, 0), c)
            if new:
                out[g] = new
            else:
                out.pop(g, None)
        return DPoly(self.alg, out)

    # -- divided powers ---------------------------------------------------------

    def _single_term_power(self, alpha: tuple, c: int, s: int):
        """(c x^(alpha))^(s) as (exponent tuple, coeff) or None if zero.

        Exponents are unbounded here; the caller checks heights at the end.
        """
        K = self.alg.K
        if s == 0:
            return (0,) * self.alg.n, 1
        if s == 1:
            return alpha, c
        nz = [i for i, a in enumerate(alpha) if a]
        if len(nz) > 1:
            # decomposable monomial: its square is already zero
            return None
        i = nz[0]
        if divided_power_coeff_parity(alpha[i], s) == 0:
            return None
        out = list(alpha)
        out[i] = alpha[i] * s
        return tuple(out), K.pow(c, s)

    def divided_power(self, r: int) -> "DPoly":
        """f^(r) for f in the maximal ideal (zero constant term)."""
        alg = self.alg
        K = alg.K
        if r < 0:
            raise InputError(f"divided power exponent must be >= 0: {r}")
        if r == 0:
            return alg.one()
        if self.constant_term != 0:
            raise PreconditionError(
                "divided powers are defined only on the maximal ideal"
            )
        if r == 1:
            return self
        terms = [(alg.unpack(idx), c) for idx, c in self.terms.items()]
        acc: dict[tuple, int] = {}

        def expand(t: int, left: int, exps: tuple, coeff: int) -> None:
            if t == len(terms):
                if left == 0:
                    new = K.add(acc.get(exps, 0), coeff)
                    if new:
                        acc[exps] = new
                    else:
                        acc.pop(exps, None)
                return
            alpha, c = terms[t]
            for s in range(left + 1):
                piece = self._single_term_power(alpha, c, s)
                if piece is None:
                    continue
                pexp, pc = piece
                # exponent tuples multiply by Lucas on each coordinate
                ok = True
                merged = []
                for a, b in zip(exps, pexp):
                    if a & b:
                        ok = False
                        break
                    merged.append(a | b)
                if not ok:
                    continue
                expand(t + 1, left - s, tuple(merged), K.mul(coeff, pc))

        expand(0, r, (0,) * alg.n, 1)
        out: dict[int, int] = {}
        for exps, c in acc.items():
            for i, a in enumerate(exps):
                if a >= (1 << alg.heights[i]):
                    raise PreconditionError(
                        f"divided power escapes O(n, m): term x^{exps}"
                    )
            out[alg.pack(exps)] = c
        return DPoly(alg, out)

    def inverse(self) -> "DPoly":
        """Inverse of a unit f = c(1 + u), u nilpotent: c^{-1} sum u^j."""
        alg = self.alg
        K = alg.K
        c = self.constant_term
        if c == 0:
            raise PreconditionError("not a unit: zero constant term")
        u = self.cmul(K.inv(c)) + alg.one()  # u = c^{-1} f - 1, nilpotent
        acc = alg.one()
        power = alg.one()
        while True:
            power = power * u
            if power.is_zero():
                break
            acc = acc + power
        return acc.cmul(K.inv(c))

    # -- serialization -------------------------------------------------------

    def to_json(self) -> list:
        alg = self.alg
        return [
            {"alpha": list(alg.unpack(idx)), "c": GF.to_hex(c)}
            for idx, c in sorted(self.terms.items())
        ]

    @classmethod
    def from_json(cls, alg: DividedPowerAlgebra, data) -> "DPoly":
        if not isinstance(data, list):
            raise InputError("polynomial JSON must be a list of terms")
        out: dict[int, int] = {}
        K = alg.K
        for t, item in enumerate(data):
            if not isinstance(item, dict) or set(item) != {"alpha", "c"}:
                raise InputError(f"term {t}: expected keys alpha, c")
            idx = alg.pack(item["alpha"])
            c = K.from_hex(item["c"])
            if idx in out:
                raise InputError(f"term {t}: duplicate monomial {item['alpha']}")
            if c:
                out[idx] = c
        return cls(alg, out)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for idx in sorted(self.terms):
            c = self.terms[idx]
            alpha = self.alg.unpack(idx)
            factors = []
            for i, a in enumerate(alpha):
                if a == 1:
                    factors.append(f"x{i + 1}")
                elif a > 1:
                    factors.append(f"x{i + 1}^({a})")
            mono = "*".join(factors) if factors else "1"
            bits.append(mono if c == 1 else f"{GF.to_hex(c)}*{mono}")
        return " + ".join(bits)


def poly_ring_checks(alg: DividedPowerAlgebra) -> None:
    """Cheap self-test used by demos: 1 is the unit, x_i^2 = 0."""
    one = alg.one()
    for i in range(1, alg.n + 1):
        xi = alg.x(i)
        assert (xi * one) == xi
        sq = xi * xi
        assert sq.is_zero()
