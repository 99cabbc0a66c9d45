"""Triples (V, flag, b) over GF(2^k): invariants and canonical forms.

b is a symmetric bilinear form, usually non-alternating (characteristic
2 allows both), and the flag is an increasing chain of subspaces.  The
complete equivalence invariant is the table of dimensions

    n_qr  = dim (V_q n V_{r-1}^perp) / (V_q n V_r^perp + V_{q-1} n V_{r-1}^perp)
    n_qr1 = n_qr - dim(image of V_q n V_{r-1}^perp n V^0)

where V^0 = {v : b(v,v) = 0}.  In characteristic 2 the length map
q(v) = b(v,v) is additive and Frobenius-semilinear, so v -> sqrt(q(v))
is K-linear and V^0 is its kernel, a hyperplane for non-alternating b.

canonicalize produces a flag-coordinated basis in which b becomes
diag(M0, ..., M0, M1, ..., M1, 1_s) with M0 = [[0,1],[1,0]] and
M1 = [[0,1],[1,1]]; the block multiset is dictated by the invariants
(M1 blocks for the cells q<r with n_rq1 = 1, unit vectors for the cells
q=r with n_qq1 = 1, M0 blocks for the rest).  Extraction choices inside
each cell are not free: a careless pick can shift later invariants (for
b = diag(1, M0) pulling out e_1 strands the algorithm on an alternating
complement), so each candidate pair is accepted only after checking
that the complement's table equals the table of the still-missing
blocks.  The first-in-lexicographic-order candidate that preserves the
residual table is chosen, which keeps the output deterministic.
"""

from __future__ import annotations

from .errors import InputError, PreconditionError
from .gf2k import GF, gf
from .linalg import LinOps, Subspace, linops

M0 = ((0, 1), (1, 0))
M1 = ((0, 1), (1, 1))


class Flag:
    """Chain 0 = V_0 <= V_1 <= ... <= V_t = K^n of rref subspaces."""

    def __init__(self, ops: LinOps, n: int, chain: list[Subspace]) -> None:
        if not chain or chain[0].dim != 0:
            chain = [Subspace(ops, n)] + list(chain)
        if chain[-1].dim != n:
            raise InputError("flag must end at the full space")
        for q in range(1, len(chain)):
            if not chain[q].contains_space(chain[q - 1]):
                raise InputError(f"flag is not increasing at step {q}")
        self.ops = ops
        self.n = n
        self.chain = chain

    @classmethod
    def from_heights(cls, ops: LinOps, heights) -> "Flag":
        n = len(heights)
        if any(h < 1 for h in heights):
            raise InputError("flag heights must be positive")
        t = max(heights)
        chain = []
        for q in range(t + 1):
            rows = []
            for i, h in enumerate(heights):
                if h <= q:
                    v = ops.vzero()
                    ops.vset(v, i, 1)
                    rows.append(v)
            chain.append(Subspace(ops, n, rows))
        return cls(ops, n, chain)

    @property
    def length(self) -> int:
        return len(self.chain) - 1

    def subspace(self, q: int) -> Subspace:
        if q < 0:
            q = 0
        if q > self.length:
            q = self.length
        return self.chain[q]

    def height(self, v) -> int:
        for q in range(self.length + 1):
            if self.chain[q].contains(v):
                return q
        raise InputError("vector outside the full space (unreachable)")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Flag)
            and other.n == self.n
            and [s.rows for s in other.chain] == [s.rows for s in self.chain]
        )


class Triple:
    """(K^n, flag, b) with b symmetric given by an n x n scalar matrix."""

    def __init__(self, n: int, field_degree: int, matrix, flag: Flag) -> None:
        self.n = n
        self.K = gf(field_degree)
        self.ops = linops(field_degree)
        if len(matrix) != n or any(len(r) != n for r in matrix):
            raise InputError(f"matrix must be {n}x{n}")
        for i in range(n):
            for j in range(n):
                self.K.check(matrix[i][j])
                if matrix[i][j] != matrix[j][i]:
                    raise InputError("bilinear form matrix must be symmetric")
        if flag.n != n or flag.ops is not self.ops:
            raise InputError("flag dimension/field mismatch")
        self.matrix = [list(r) for r in matrix]
        self.brows = self.ops.mat_from_scalars(matrix)
        self.flag = flag

    @classmethod
    def from_heights(cls, matrix, heights, field_degree: int = 1) -> "Triple":
        ops = linops(field_degree)
        return cls(len(heights), field_degree, matrix, Flag.from_heights(ops, heights))

    def b(self, u, v) -> int:
        ops = self.ops
        w = ops.vzero()
        for i in range(self.n):
            c = ops.vget(u, i)
            if c:
                ops.viaddmul(w, c, self.brows[i])
        return ops.dot(w, v, self.n)

    def qlen(self, v) -> int:
        return self.b(v, v)

    def is_nondegenerate(self) -> bool:
        return self.ops.rank([list(r) for r in self.brows]) == self.n

    def is_alternating(self) -> bool:
        return all(self.matrix[i][i] == 0 for i in range(self.n))

    def perp(self, U: Subspace) -> Subspace:
        """Orthogonal complement {v : b(v, u) = 0 for all u in U}."""
        ops = self.ops
        rows = []
        for u in U.rows:
            w = ops.vzero()
            for i in range(self.n):
                c = ops.vget(u, i)
                if c:
                    ops.viaddmul(w, c, self.brows[i])
            rows.append(w)
        return Subspace(ops, self.n, ops.kernel(rows, self.n))

    def isotropic_space(self) -> Subspace:
        """V^0 = ker of the K-linear functional v -> sqrt(b(v, v))."""
        ops = self.ops
        row = ops.from_scalars([self.K.sqrt(self.matrix[i][i]) for i in range(self.n)])
        return Subspace(ops, self.n, ops.kernel([row], self.n))

    def to_json(self) -> dict:
        chain = []
        for q in range(1, self.flag.length + 1):
            sub = self.flag.subspace(q)
            chain.append(
                [[GF.to_hex(c) for c in self.ops.to_scalars(r, self.n)] for r in sub.rows]
            )
        return {
            "n": self.n,
            "field_degree": self.K.k,
            "matrix": [[GF.to_hex(c) for c in row] for row in self.matrix],
            "flag": {"kind": "subspaces", "chain": chain},
        }

    @classmethod
    def from_json(cls, data) -> "Triple":
        if not isinstance(data, dict) or set(data) != {"n", "field_degree", "matrix", "flag"}:
            raise InputError("triple JSON must have keys n, field_degree, matrix, flag")
        n = data["n"]
        K = gf(data["field_degree"])
        ops = linops(data["field_degree"])
        matrix = data["matrix"]
        if not isinstance(matrix, list) or len(matrix) != n:
            raise InputError(f"matrix must have {n} rows")
        parsed = [[K.from_hex(c) for c in row] for row in matrix]
        fl = data["flag"]
        if not isinstance(fl, dict) or "kind" not in fl:
            raise InputError("flag must be an object with a 'kind'")
        if fl["kind"] == "heights":
            if set(fl) != {"kind", "h"}:
                raise InputError("heights flag needs exactly the key 'h'")
            if len(fl["h"]) != n:
                raise InputError(f"need {n} heights")
            flag = Flag.from_heights(ops, fl["h"])
        elif fl["kind"] == "subspaces":
            if set(fl) != {"kind", "chain"}:
                raise InputError("subspaces flag needs exactly the key 'chain'")
            chain = [Subspace(ops, n)]
            for q, sub in enumerate(fl["chain"], 1):
                rows = []
                for vec in sub:
                    if len(vec) != n:
                        raise InputError(f"flag chain step {q}: vector length != n")
                    rows.append(ops.from_scalars([K.from_hex(c) for c in vec]))
                prev = chain[-1]
                cur = Subspace(ops, n, [list(r) for r in prev.rows] + rows)
                if not cur.contains_space(prev):
                    raise InputError(f"flag chain not increasing at step {q}")
                chain.append(cur)
            flag = Flag(ops, n, chain)
        else:
            raise InputError(f"unknown flag kind {fl['kind']!r}")
        return cls(n, data["field_degree"], parsed, flag)


class InvariantTable:
    """Map (q, r) -> (n_qr, n_qr1); zero cells are omitted."""

    def __init__(self, n: int, cells: dict) -> None:
        self.n = n
        self.cells = {k: tuple(v) for k, v in cells.items() if v[0] > 0}

    def entry(self, q: int, r: int) -> tuple[int, int]:
        return self.cells.get((q, r), (0, 0))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, InvariantTable)
            and other.n == self.n
            and other.cells == self.cells
        )

    def validate(self) -> None:
        total = 0
        for (q, r), (nn, n1) in self.cells.items():
            total += nn
            if n1 not in (0, 1):
                raise InputError(f"n_{q}{r}^1 must be 0 or 1")
            if n1 > min(nn, 1):
                raise InputError(f"n_{q}{r}^1 exceeds its bound")
            if self.entry(r, q)[0] != nn:
                raise InputError(f"pairing forces n_{q}{r} = n_{r}{q}")
            if q < r and n1 != 0:
                raise InputError(f"cells with q < r are isotropic: n_{q}{r}^1 = 0")
            if q == r and n1 == 0 and nn % 2:
                raise InputError(f"alternating cell ({q},{q}) must have even dimension")
        if total != self.n:
            raise InputError(f"cell dimensions sum to {total}, expected {self.n}")

    def to_json(self) -> dict:
        cells = [
            {"q": q, "r": r, "n": nn, "n1": n1}
            for (q, r), (nn, n1) in sorted(self.cells.items())
        ]
        return {"n": self.n, "cells": cells}

    @classmethod
    def from_json(cls, data) -> "InvariantTable":
        if not isinstance(data, dict) or set(data) != {"n", "cells"}:
            raise InputError("invariant table JSON must have keys n, cells")
        cells = {}
        for item in data["cells"]:
            if set(item) != {"q", "r", "n", "n1"}:
                raise InputError("table cell needs keys q, r, n, n1")
            cells[(item["q"], item["r"])] = (item["n"], item["n1"])
        return cls(data["n"], cells)

    def __repr__(self) -> str:
        bits = [f"n_{q}{r}=({nn},{n1})" for (q, r), (nn, n1) in sorted(self.cells.items())]
        return "InvariantTable(" + ", ".join(bits) + ")"


def invariants_table(t: Triple) -> InvariantTable:
    if not t.is_nondegenerate():
        raise PreconditionError("bilinear form is degenerate")
    iso = t.isotropic_space()
    length = t.flag.length
    perps = {q: t.perp(t.flag.subspace(q)) for q in range(length + 1)}
    cells = {}
    for q in range(1, length + 1):
        for r in range(1, length + 1):
            num = t.flag.subspace(q).intersect(perps[r - 1])
            den = t.flag.subspace(q).intersect(perps[r]).sum(
                t.flag.subspace(q - 1).intersect(perps[r - 1])
            )
            n_qr = num.dim - den.dim
            if n_qr <= 0:
                continue
            iso_part = num.intersect(iso)
            n1 = n_qr - (iso_part.sum(den).dim - den.dim)
            cells[(q, r)] = (n_qr, n1)
    return InvariantTable(t.n, cells)


def equivalent(t1: Triple, t2: Triple) -> bool:
    return invariants_table(t1) == invariants_table(t2)


# -- canonical forms ------------------------------------------------------------


def blocks_from_table(tab: InvariantTable) -> list[tuple]:
    """Block list ('M0'|'M1'|'U', q, r) in the output order: M0 blocks by
    (q, r), then M1 blocks by (q, r), then unit vectors by q."""
    tab.validate()
    m0, m1, units = [], [], []
    for (q, r), (nn, _n1) in sorted(tab.cells.items()):
        if q < r:
            mirror_n1 = tab.entry(r, q)[1]
            blocks = [("M1" if mirror_n1 else "M0", q, r)] * nn
            (m1 if mirror_n1 else m0).extend(blocks)
        elif q == r:
            n1 = tab.entry(q, q)[1]
            if n1:
                units.extend([("U", q, q)] * nn)
            else:
                m0.extend([("M0", q, q)] * (nn // 2))
    return m0 + m1 + units


def assemble_blocks(blocks) -> tuple[list[list[int]], list[int]]:
    """Scalar block-diagonal matrix and the height vector."""
    size = sum(1 if b[0] == "U" else 2 for b in blocks)
    mat = [[0] * size for _ in range(size)]
    heights = []
    pos = 0
    for kind, q, r in blocks:
        if kind == "U":
            mat[pos][pos] = 1
            heights.append(q)
            pos += 1
        else:
            block = M0 if kind == "M0" else M1
            for a in range(2):
                for b in range(2):
                    mat[pos + a][pos + b] = block[a][b]
            heights.extend([q, r])
            pos += 2
    return mat, heights


def canonical_from_invariants(tab: InvariantTable) -> tuple[list[list[int]], list[int]]:
    return assemble_blocks(blocks_from_table(tab))


class CanonicalResult:
    def __init__(self, change, canonical, heights, alternating: bool) -> None:
        self.change = change        # columns = new basis in old coordinates
        self.canonical = canonical  # block-diagonal scalar matrix
        self.heights = heights
        self.alternating = alternating

    def to_json(self) -> dict:
        return {
            "change": [[GF.to_hex(c) for c in row] for row in self.change],
            "canonical": [[GF.to_hex(c) for c in row] for row in self.canonical],
            "heights": list(self.heights),
            "alternating": self.alternating,
        }


def _table_of_blocks(blocks, field_degree: int, cache: dict) -> InvariantTable:
    key = tuple(blocks)
    if key not in cache:
        if not blocks:
            cache[key] = InvariantTable(0, {})
        else:
            mat, heights = assemble_blocks(blocks)
            cache[key] = invariants_table(
                Triple.from_heights(mat, heights, field_degree)
            )
    return cache[key]


class _Complement:
    """The working complement, tracked by a basis in original coordinates."""

    def __init__(self, t: Triple) -> None:
        self.t = t
        self.ops = t.ops
        self.basis = t.ops.identity(t.n)  # rows

    @property
    def dim(self) -> int:
        return len(self.basis)

    def to_global(self, coeffs):
        ops = self.ops
        v = ops.vzero()
        for i in range(self.dim):
            c = ops.vget(coeffs, i)
            if c:
                ops.viaddmul(v, c, self.basis[i])
        return v

    def flag_subspace(self, q: int) -> Subspace:
        """{c : combination lies in V_q}, in complement coordinates."""
        ops = self.ops
        vq = self.t.flag.subspace(q)
        residues = [ops.reduce_against(vq.rows, vq.pivots, row) for row in self.basis]
        return Subspace(ops, self.dim, ops.left_kernel(residues, self.t.n))

    def b(self, cu, cv) -> int:
        return self.t.b(self.to_global(cu), self.to_global(cv))

    def perp_of(self, sub: Subspace) -> Subspace:
        """Orthogonal complement inside the complement coordinates."""
        ops = self.ops
        rows = []
        for c in sub.rows:
            g = self.to_global(c)
            w = ops.vzero()
            for i in range(self.t.n):
                a = ops.vget(g, i)
                if a:
                    ops.viaddmul(w, a, self.t.brows[i])
            # restrict the functional to the complement basis
            rows.append(ops.from_scalars([ops.dot(w, row, self.t.n) for row in self.basis]))
        return Subspace(ops, self.dim, ops.kernel(rows, self.dim))

    def shrink(self, extracted) -> None:
        """Pass to the orthogonal complement of the extracted vectors."""
        ops = self.ops
        rows = []
        for g in extracted:
            w = ops.vzero()
            for i in range(self.t.n):
                a = ops.vget(g, i)
                if a:
                    ops.viaddmul(w, a, self.t.brows[i])
            rows.append(ops.from_scalars([ops.dot(w, row, self.t.n) for row in self.basis]))
        keep = ops.kernel(rows, self.dim)
        self.basis = [self.to_global(c) for c in keep]

    def residual_table(self, extracted, field_degree: int) -> InvariantTable | None:
        ops = self.ops
        rows = []
        for g in extracted:
            w = ops.vzero()
            for i in range(self.t.n):
                a = ops.vget(g, i)
                if a:
                    ops.viaddmul(w, a, self.t.brows[i])
            rows.append(ops.from_scalars([ops.dot(w, row, self.t.n) for row in self.basis]))
        keep = ops.kernel(rows, self.dim)
        basis = [self.to_global(c) for c in keep]
        if not basis:
            return InvariantTable(0, {})
        d = len(basis)
        bmat = [[self.t.b(basis[i], basis[j]) for j in range(d)] for i in range(d)]
        chain = []
        for q in range(self.t.flag.length + 1):
            vq = self.t.flag.subspace(q)
            residues = [ops.reduce_against(vq.rows, vq.pivots, row) for row in basis]
            chain.append(Subspace(ops, d, ops.left_kernel(residues, self.t.n)))
        sub = Triple(d, field_degree, bmat, Flag(ops, d, chain))
        if not sub.is_nondegenerate():
            return None
        return invariants_table(sub)


def canonicalize(t: Triple) -> CanonicalResult:
    if not t.is_nondegenerate():
        raise PreconditionError("bilinear form is degenerate")
    tab = invariants_table(t)
    blocks = blocks_from_table(tab)
    alternating = t.is_alternating()
    cache: dict = {}
    comp = _Complement(t)
    ops = t.ops
    K = t.K
    columns = []
    heights = []
    for step, (kind, q, r) in enumerate(blocks):
        remaining = blocks[step + 1 :]
        expected = _table_of_blocks(remaining, K.k, cache)
        Nu = comp.flag_subspace(q).intersect(comp.perp_of(comp.flag_subspace(r - 1)))
        if kind == "U":
            found = None
            for cu in Nu.vectors():
                length = comp.b(cu, cu)
                if length == 0:
                    continue
                cu = ops.vscale(K.inv(K.sqrt(length)), cu)
                g = comp.to_global(cu)
                if comp.residual_table([g], K.k) == expected:
                    found = [g]
                    break
            if found is None:
                raise AssertionError(f"no unit vector found for cell ({q},{q})")
        else:
            Nv = comp.flag_subspace(r).intersect(comp.perp_of(comp.flag_subspace(q - 1)))
            want_unit = kind == "M1"
            found = None
            for cv in Nv.vectors():
                length = comp.b(cv, cv)
                if want_unit:
                    if length == 0:
                        continue
                    cv = ops.vscale(K.inv(K.sqrt(length)), cv)
                elif length != 0:
                    continue
                for cu in Nu.vectors():
                    if comp.b(cu, cu) != 0:
                        continue
                    pair = comp.b(cu, cv)
                    if pair == 0:
                        continue
                    cu_n = ops.vscale(K.inv(pair), cu)
                    gu, gv = comp.to_global(cu_n), comp.to_global(cv)
                    if comp.residual_table([gu, gv], K.k) == expected:
                        found = [gu, gv]
                        break
                if found:
                    break
            if found is None:
                raise AssertionError(f"no {kind} pair found for cell ({q},{r})")
        columns.extend(found)
        heights.extend([q] if kind == "U" else [q, r])
        comp.shrink(found)
    canonical, expected_heights = assemble_blocks(blocks)
    if heights != expected_heights:
        raise AssertionError("height bookkeeping diverged from the block plan")
    # machine-checked postcondition: C^T b C = canonical
    n = t.n
    change_cols = [ops.to_scalars(v, n) for v in columns]
    change = [[change_cols[j][i] for j in range(n)] for i in range(n)]
    for a in range(n):
        for b in range(n):
            if t.b(columns[a], columns[b]) != canonical[a][b]:
                raise AssertionError("canonicalize postcondition C^T b C failed")
    result = CanonicalResult(change, canonical, heights, alternating)
    check = invariants_table(Triple.from_heights(canonical, heights, K.k))
    if check != tab:
        raise AssertionError("canonical form has different invariants than input")
    return result
