"""Special derivations W(n, m̄) = { sum f_i d_i } of O(n, m̄).

A derivation is stored by its coefficient vector (f_1, ..., f_n); the
partial derivations d_i form a free O(n, m̄)-module basis.  The bracket
of vector fields in characteristic 2 is

    [D1, D2] = sum_i (D1(g_i) + D2(f_i)) d_i,   D1 = sum f_i d_i, etc.

The defining "special" property D(u^(r)) = u^(r-1) D(u) for linear u
holds automatically for this action; the test suite checks it as a
property rather than enforcing it at runtime.
"""

from __future__ import annotations

from .divpow import DividedPowerAlgebra, DPoly
from .errors import InputError


class SpecialDerivation:
    __slots__ = ("alg", "comps")

    def __init__(self, alg: DividedPowerAlgebra, comps) -> None:
        comps = list(comps)
        if len(comps) != alg.n:
            raise InputError(f"need {alg.n} components, got {len(comps)}")
        for f in comps:
            if f.alg != alg:
                raise InputError("component in a different ambient algebra")
        self.alg = alg
        self.comps = comps

    @classmethod
    def zero(cls, alg: DividedPowerAlgebra) -> "SpecialDerivation":
        return cls(alg, [alg.zero() for _ in range(alg.n)])

    @classmethod
    def partial(cls, alg: DividedPowerAlgebra, i: int) -> "SpecialDerivation":
        if not 1 <= i <= alg.n:
            raise InputError(f"variable index {i} out of range 1..{alg.n}")
        comps = [alg.zero() for _ in range(alg.n)]
        comps[i - 1] = alg.one()
        return cls(alg, comps)

    def component(self, i: int) -> DPoly:
        return self.comps[i - 1]

    def __call__(self, f: DPoly) -> DPoly:
        if f.alg != self.alg:
            raise InputError("mismatched ambient algebras")
        out = self.alg.zero()
        for i, g in enumerate(self.comps):
            if not g.is_zero():
                out = out + g * f.partial(i + 1)
        return out

    def bracket(self, other: "SpecialDerivation") -> "SpecialDerivation":
        if other.alg != self.alg:
            raise InputError("mismatched ambient algebras")
        comps = [self(other.comps[i]) + other(self.comps[i]) for i in range(self.alg.n)]
        return SpecialDerivation(self.alg, comps)

    def __add__(self, other: "SpecialDerivation") -> "SpecialDerivation":
        return SpecialDerivation(
            self.alg, [a + b for a, b in zip(self.comps, other.comps)]
        )

    def cmul(self, c: int) -> "SpecialDerivation":
        return SpecialDerivation(self.alg, [f.cmul(c) for f in self.comps])

    def fmul(self, f: DPoly) -> "SpecialDerivation":
        return SpecialDerivation(self.alg, [f * g for g in self.comps])

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.comps)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SpecialDerivation)
            and other.alg == self.alg
            and other.comps == self.comps
        )

    def __hash__(self):
        return hash((self.alg, tuple(hash(f) for f in self.comps)))

    def min_degree(self) -> int:
        """Grading degree: min over nonzero components of |alpha| - 1."""
        degs = [f.min_degree() for f in self.comps if not f.is_zero()]
        if not degs:
            raise InputError("zero derivation has no degree")
        return min(degs) - 1

    def to_json(self) -> dict:
        return {"comps": [f.to_json() for f in self.comps]}

    @classmethod
    def from_json(cls, alg: DividedPowerAlgebra, data) -> "SpecialDerivation":
        if not isinstance(data, dict) or set(data) != {"comps"}:
            raise InputError("derivation JSON must have exactly the key 'comps'")
        comps = data["comps"]
        if not isinstance(comps, list) or len(comps) != alg.n:
            raise InputError(f"'comps' must list {alg.n} polynomials")
        return cls(alg, [DPoly.from_json(alg, c) for c in comps])

    def __repr__(self) -> str:
        bits = [
            f"({f!r})*d{i + 1}" for i, f in enumerate(self.comps) if not f.is_zero()
        ]
        return " + ".join(bits) if bits else "0"
