"""Exact dense linear algebra over GF(2^k) on bitsliced integer rows.

A length-n vector over GF(2^k) is stored as a list of k ints ("slices");
bit c of slice j is the j-th coefficient bit of the entry in column c.
Addition of vectors is a componentwise XOR and multiplication by a fixed
scalar is a k x k bit-matrix acting on the slices, so every row
operation costs O(k^2) word operations regardless of width.  For k = 1
this degrades to the familiar one-int-per-row GF(2) bitset style.

Everything here is exact; there are no tolerances anywhere.
"""

from __future__ import annotations

from functools import lru_cache

from .gf2k import GF, gf

Vec = list  # list[int] of length k


class LinOps:
    """Vector/matrix operations over a fixed GF(2^k)."""

    def __init__(self, K: GF) -> None:
        self.K = K
        self.k = K.k
        # scale_masks[c][r] = bitmask over input slices s feeding output
        # slice r under multiplication by the scalar c.
        masks = []
        for c in K.elements():
            rows = [0] * self.k
            for s in range(self.k):
                img = K.mul(c, 1 << s)
                for r in range(self.k):
                    if img >> r & 1:
                        rows[r] |= 1 << s
            masks.append(rows)
        self._scale_masks = masks

    # -- vectors -----------------------------------------------------------

    def vzero(self) -> Vec:
        return [0] * self.k

    def vcopy(self, v: Vec) -> Vec:
        return list(v)

    def is_zero(self, v: Vec) -> bool:
        return not any(v)

    def vget(self, v: Vec, col: int) -> int:
        a = 0
        for j in range(self.k):
            a |= (v[j] >> col & 1) << j
        return a

    def vset(self, v: Vec, col: int, a: int) -> None:
        for j in range(self.k):
            bit = 1 << col
            if a >> j & 1:
                v[j] |= bit
            else:
                v[j] &= ~bit

    def from_scalars(self, scalars) -> Vec:
        v = [0] * self.k
        for col, a in enumerate(scalars):
            for j in range(self.k):
                if a >> j & 1:
                    v[j] |= 1 << col
        return v

    def to_scalars(self, v: Vec, width: int) -> list[int]:
        return [self.vget(v, c) for c in range(width)]

    def vadd(self, a: Vec, b: Vec) -> Vec:
        return [x ^ y for x, y in zip(a, b)]

    def viadd(self, a: Vec, b: Vec) -> None:
        for j in range(self.k):
            a[j] ^= b[j]

    def vscale(self, c: int, v: Vec) -> Vec:
        if c == 1:
            return list(v)
        masks = self._scale_masks[c]
        out = [0] * self.k
        for r in range(self.k):
            m = masks[r]
            acc = 0
            s = 0
            while m:
                if m & 1:
                    acc ^= v[s]
                m >>= 1
                s += 1
            out[r] = acc
        return out

    def viaddmul(self, a: Vec, c: int, v: Vec) -> None:
        if c == 0:
            return
        if c == 1:
            self.viadd(a, v)
            return
        sv = self.vscale(c, v)
        self.viadd(a, sv)

    def support(self, v: Vec) -> int:
        """Bitmask of columns with a nonzero entry."""
        m = 0
        for s in v:
            m |= s
        return m

    def first_nonzero_col(self, v: Vec) -> int:
        m = self.support(v)
        if m == 0:
            return -1
        return (m & -m).bit_length() - 1

    def dot(self, a: Vec, b: Vec, width: int) -> int:
        acc = 0
        for c in range(width):
            x = self.vget(a, c)
            if x:
                y = self.vget(b, c)
                if y:
                    acc ^= self.K.mul(x, y)
        return acc

    # -- echelon forms -----------------------------------------------------

    def rref(self, rows: list[Vec]) -> tuple[list[Vec], list[int]]:
        """Reduced row echelon form; returns (rows, pivot columns)."""
        ech: list[Vec] = []
        pivots: list[int] = []
        for row in rows:
            self.insert(ech, pivots, row)
        return ech, pivots

    def insert(self, ech: list[Vec], pivots: list[int], row: Vec) -> bool:
        """Insert row into an rref echelon in place; True if rank grew."""
        v = list(row)
        for i, p in enumerate(pivots):
            c = self.vget(v, p)
            if c:
                self.viaddmul(v, c, ech[i])
        col = self.first_nonzero_col(v)
        if col < 0:
            return False
        lead = self.vget(v, col)
        if lead != 1:
            v = self.vscale(self.K.inv(lead), v)
        pos = 0
        while pos < len(pivots) and pivots[pos] < col:
            pos += 1
        for i in range(len(ech)):
            c = self.vget(ech[i], col)
            if c:
                self.viaddmul(ech[i], c, v)
        ech.insert(pos, v)
        pivots.insert(pos, col)
        return True

    def reduce_against(self, ech: list[Vec], pivots: list[int], row: Vec) -> Vec:
        v = list(row)
        for i, p in enumerate(pivots):
            c = self.vget(v, p)
            if c:
                self.viaddmul(v, c, ech[i])
        return v

    def rank(self, rows: list[Vec]) -> int:
        return len(self.rref(rows)[0])

    # -- kernels and solving -----------------------------------------------

    def transpose(self, rows: list[Vec], width: int) -> list[Vec]:
        out = [self.vzero() for _ in range(width)]
        for r, row in enumerate(rows):
            for c in range(width):
                a = self.vget(row, c)
                if a:
                    self.vset(out[c], r, a)
        return out

    def kernel(self, rows: list[Vec], width: int) -> list[Vec]:
        """Basis of {x in K^width : sum_c x_c * column_c = 0}.

        rows are the equations: for each row R, sum_c x_c R[c] = 0.
        """
        ech, pivots = self.rref(rows)
        pivot_set = set(pivots)
        basis = []
        for free in range(width):
            if free in pivot_set:
                continue
            v = self.vzero()
            self.vset(v, free, 1)
            for i, p in enumerate(pivots):
                a = self.vget(ech[i], free)
                if a:
                    self.vset(v, p, a)
            basis.append(v)
        return basis

    def left_kernel(self, rows: list[Vec], width: int) -> list[Vec]:
        """Basis of {c : sum_i c_i rows[i] = 0}."""
        return self.kernel(self.transpose(rows, width), len(rows))

    def solve(self, rows: list[Vec], width: int, rhs: Vec) -> Vec | None:
        """One solution x (length = len(rows' columns)? no: see below) of
        sum_c x_c col_c = rhs where cols are indexed 0..width-1 and rows
        are the equations stacked as in :meth:`kernel` -- i.e. solve
        A x = rhs with A given row-wise, x of length width."""
        aug = []
        for r, row in enumerate(rows):
            v = list(row)
            a = self.vget(rhs, r)
            self.vset(v, width, a)
            aug.append(v)
        ech, pivots = self.rref(aug)
        x = self.vzero()
        for i, p in enumerate(pivots):
            if p == width:
                return None
            a = self.vget(ech[i], width)
            if a:
                self.vset(x, p, a)
        return x

    # -- small dense matrices (lists of row Vecs) --------------------------

    def mat_from_scalars(self, m: list[list[int]]) -> list[Vec]:
        return [self.from_scalars(r) for r in m]

    def mat_to_scalars(self, rows: list[Vec], width: int) -> list[list[int]]:
        return [self.to_scalars(r, width) for r in rows]

    def identity(self, n: int) -> list[Vec]:
        out = []
        for i in range(n):
            v = self.vzero()
            self.vset(v, i, 1)
            out.append(v)
        return out

    def matvec(self, rows: list[Vec], x: Vec, width: int) -> Vec:
        out = self.vzero()
        for r, row in enumerate(rows):
            self.vset(out, r, self.dot(row, x, width))
        return out

    def matmul(self, a: list[Vec], b: list[Vec], width: int) -> list[Vec]:
        """a (p x q) times b (q x width); a rows have width q = len(b)."""
        out = []
        for row in a:
            acc = self.vzero()
            for j in range(len(b)):
                c = self.vget(row, j)
                if c:
                    self.viaddmul(acc, c, b[j])
            out.append(acc)
        return out

    def mat_inverse(self, rows: list[Vec], n: int) -> list[Vec] | None:
        aug = []
        for i, row in enumerate(rows):
            v = list(row)
            self.vset(v, n + i, 1)
            aug.append(v)
        ech, pivots = self.rref(aug)
        if pivots[:n] != list(range(n)) or len(pivots) < n:
            return None
        inv = []
        for i in range(n):
            v = self.vzero()
            for c in range(n):
                self.vset(v, c, self.vget(ech[i], n + c))
            inv.append(v)
        return inv


@lru_cache(maxsize=None)
def linops(k: int = 1) -> LinOps:
    return LinOps(gf(k))


class Subspace:
    """A subspace of K^n kept as rref rows; the canonical form makes
    equality a plain comparison."""

    def __init__(self, ops: LinOps, width: int, rows=()) -> None:
        self.ops = ops
        self.width = width
        self.rows: list[Vec] = []
        self.pivots: list[int] = []
        for r in rows:
            ops.insert(self.rows, self.pivots, r)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def copy(self) -> "Subspace":
        s = Subspace(self.ops, self.width)
        s.rows = [list(r) for r in self.rows]
        s.pivots = list(self.pivots)
        return s

    def add(self, v: Vec) -> bool:
        return self.ops.insert(self.rows, self.pivots, v)

    def contains(self, v: Vec) -> bool:
        return self.ops.is_zero(self.ops.reduce_against(self.rows, self.pivots, v))

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other.rows)

    def sum(self, other: "Subspace") -> "Subspace":
        s = self.copy()
        for r in other.rows:
            s.add(r)
        return s

    def intersect(self, other: "Subspace") -> "Subspace":
        stacked = [list(r) for r in self.rows] + [list(r) for r in other.rows]
        rels = self.ops.left_kernel(stacked, self.width)
        out = Subspace(self.ops, self.width)
        p = len(self.rows)
        for rel in rels:
            v = self.ops.vzero()
            for i in range(p):
                a = self.ops.vget(rel, i)
                if a:
                    self.ops.viaddmul(v, a, self.rows[i])
            out.add(v)
        return out

    def vectors(self):
        """All nonzero vectors, coefficient tuples in lexicographic order."""
        q = self.ops.K.size
        d = self.dim
        for code in range(1, q**d):
            v = self.ops.vzero()
            c = code
            for i in range(d):
                a = c % q
                c //= q
                if a:
                    self.ops.viaddmul(v, a, self.rows[i])
            yield v

    def projective_vectors(self):
        """One representative per 1-dimensional subspace: coefficient
        tuples whose first nonzero coefficient is 1."""
        q = self.ops.K.size
        d = self.dim
        for lead in range(d):
            for code in range(q ** (d - lead - 1)):
                v = self.ops.vcopy(self.rows[lead])
                c = code
                for i in range(lead + 1, d):
                    a = c % q
                    c //= q
                    if a:
                        self.ops.viaddmul(v, a, self.rows[i])
                yield v

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Subspace)
            and self.width == other.width
            and self.pivots == other.pivots
            and self.rows == other.rows
        )

    def __hash__(self):
        raise TypeError("Subspace is mutable; not hashable")

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, width={self.width})"
