"""Symmetric differential forms over O(n, m̄) in degrees 0..3.

Degree-2 forms decompose as

    w = sum_i w_ii (dx_i)^(2)  +  sum_{i<j} w_ij dx_i dx_j

with DPoly coefficients; degree-3 monomials are (dx_i)^(3),
(dx_i)^(2) dx_j and dx_i dx_j dx_k, encoded by the sorted index triple.
The differential follows d(f dx^(g)) = sum_i (d_i f) dx_i dx^(g) where
dx_i dx^(g) carries the parity of g_i + 1, so dx_i dx_i = 0 while
dx_i (dx_i)^(2) = (dx_i)^(3).  Exactness questions (potentials, the
decomposition of H^2 into (dx_i)^(2)-classes and the de Rham classes
[xbar_i xbar_j dx_i dx_j]) are finite-dimensional linear solves over K.

The symmetric matrix of a 2-form is inverted exactly by the adjugate
divided by the determinant; the determinant, a unit of the local ring,
is inverted through the geometric series.
"""

from __future__ import annotations

from itertools import combinations, permutations

from .derivations import SpecialDerivation
from .divpow import DividedPowerAlgebra, DPoly
from .errors import InputError, PreconditionError
from .gf2k import GF
from .linalg import LinOps, linops


def _norm_poly_map(alg, mapping) -> dict:
    out = {}
    for key, f in mapping.items():
        if f.alg != alg:
            raise InputError("coefficient in a different ambient algebra")
        if not f.is_zero():
            out[key] = f
    return out


class Form1:
    """sum_i f_i dx_i with sparse coefficients keyed by i in 1..n."""

    __slots__ = ("alg", "coeffs")

    def __init__(self, alg: DividedPowerAlgebra, coeffs: dict) -> None:
        for i in coeffs:
            if not 1 <= i <= alg.n:
                raise InputError(f"dx index {i} out of range")
        self.alg = alg
        self.coeffs = _norm_poly_map(alg, coeffs)

    @classmethod
    def zero(cls, alg) -> "Form1":
        return cls(alg, {})

    @classmethod
    def dx(cls, alg, i: int) -> "Form1":
        return cls(alg, {i: alg.one()})

    def coeff(self, i: int) -> DPoly:
        return self.coeffs.get(i, self.alg.zero())

    def __add__(self, other: "Form1") -> "Form1":
        out = dict(self.coeffs)
        for i, f in other.coeffs.items():
            out[i] = out.get(i, self.alg.zero()) + f
        return Form1(self.alg, out)

    def fmul(self, g: DPoly) -> "Form1":
        return Form1(self.alg, {i: g * f for i, f in self.coeffs.items()})

    def cmul(self, c: int) -> "Form1":
        return Form1(self.alg, {i: f.cmul(c) for i, f in self.coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Form1)
            and other.alg == self.alg
            and other.coeffs == self.coeffs
        )

    def __repr__(self) -> str:
        bits = [f"({f!r})dx{i}" for i, f in sorted(self.coeffs.items())]
        return " + ".join(bits) if bits else "0"


class Form2:
    """sq[i] (dx_i)^(2) plus mix[(i, j)] dx_i dx_j with i < j."""

    __slots__ = ("alg", "sq", "mix")

    def __init__(self, alg: DividedPowerAlgebra, sq: dict, mix: dict) -> None:
        for i in sq:
            if not 1 <= i <= alg.n:
                raise InputError(f"(dx_{i})^(2) index out of range")
        for i, j in mix:
            if not (1 <= i < j <= alg.n):
                raise InputError(f"mixed index ({i},{j}) must satisfy i<j")
        self.alg = alg
        self.sq = _norm_poly_map(alg, sq)
        self.mix = _norm_poly_map(alg, mix)

    @classmethod
    def zero(cls, alg) -> "Form2":
        return cls(alg, {}, {})

    @classmethod
    def dx_squared(cls, alg, i: int) -> "Form2":
        return cls(alg, {i: alg.one()}, {})

    @classmethod
    def dxdx(cls, alg, i: int, j: int) -> "Form2":
        return cls(alg, {}, {(min(i, j), max(i, j)): alg.one()})

    def sq_coeff(self, i: int) -> DPoly:
        return self.sq.get(i, self.alg.zero())

    def mix_coeff(self, i: int, j: int) -> DPoly:
        if i == j:
            raise InputError("mixed coefficient needs distinct indices")
        return self.mix.get((min(i, j), max(i, j)), self.alg.zero())

    def __add__(self, other: "Form2") -> "Form2":
        sq = dict(self.sq)
        for i, f in other.sq.items():
            sq[i] = sq.get(i, self.alg.zero()) + f
        mix = dict(self.mix)
        for key, f in other.mix.items():
            mix[key] = mix.get(key, self.alg.zero()) + f
        return Form2(self.alg, sq, mix)

    def fmul(self, g: DPoly) -> "Form2":
        return Form2(
            self.alg,
            {i: g * f for i, f in self.sq.items()},
            {key: g * f for key, f in self.mix.items()},
        )

    def cmul(self, c: int) -> "Form2":
        return Form2(
            self.alg,
            {i: f.cmul(c) for i, f in self.sq.items()},
            {key: f.cmul(c) for key, f in self.mix.items()},
        )

    def is_zero(self) -> bool:
        return not self.sq and not self.mix

    def value_at_zero(self) -> "Form2":
        """The constant part w(0)."""
        alg = self.alg
        sq = {i: alg.const(f.constant_term) for i, f in self.sq.items()}
        mix = {key: alg.const(f.constant_term) for key, f in self.mix.items()}
        return Form2(alg, sq, mix)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Form2)
            and other.alg == self.alg
            and other.sq == self.sq
            and other.mix == self.mix
        )

    def __repr__(self) -> str:
        bits = [f"({f!r})(dx{i})^(2)" for i, f in sorted(self.sq.items())]
        bits += [f"({f!r})dx{i}dx{j}" for (i, j), f in sorted(self.mix.items())]
        return " + ".join(bits) if bits else "0"


class Form3:
    """Degree-3 forms keyed by the sorted triple of dx indices.

    (i,i,i) is (dx_i)^(3); (i,i,j) is (dx_i)^(2) dx_j; (i,j,k) is
    dx_i dx_j dx_k.  These exist to decide closedness of 2-forms; there
    is no differential out of degree 3.
    """

    __slots__ = ("alg", "coeffs")

    def __init__(self, alg: DividedPowerAlgebra, coeffs: dict) -> None:
        for key in coeffs:
            if len(key) != 3 or tuple(sorted(key)) != key:
                raise InputError(f"bad degree-3 key {key}")
            if not all(1 <= i <= alg.n for i in key):
                raise InputError(f"dx index out of range in {key}")
        self.alg = alg
        self.coeffs = _norm_poly_map(alg, coeffs)

    @classmethod
    def zero(cls, alg) -> "Form3":
        return cls(alg, {})

    def __add__(self, other: "Form3") -> "Form3":
        out = dict(self.coeffs)
        for key, f in other.coeffs.items():
            out[key] = out.get(key, self.alg.zero()) + f
        return Form3(self.alg, out)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Form3)
            and other.alg == self.alg
            and other.coeffs == self.coeffs
        )

    def __repr__(self) -> str:
        return " + ".join(
            f"({f!r})d[{key}]" for key, f in sorted(self.coeffs.items())
        ) or "0"


class EtaClass:
    """A class in H^2(Omega): eta = sum b_ij [dz_i dz_j], i < j."""

    __slots__ = ("alg", "b")

    def __init__(self, alg: DividedPowerAlgebra, b: dict) -> None:
        out = {}
        for (i, j), c in b.items():
            if not (1 <= i < j <= alg.n):
                raise InputError(f"eta index ({i},{j}) must satisfy i<j")
            alg.K.check(c)
            if c:
                out[(i, j)] = c
        self.alg = alg
        self.b = out

    @classmethod
    def zero(cls, alg) -> "EtaClass":
        return cls(alg, {})

    def is_zero(self) -> bool:
        return not self.b

    def __add__(self, other: "EtaClass") -> "EtaClass":
        out = dict(self.b)
        for key, c in other.b.items():
            out[key] = self.alg.K.add(out.get(key, 0), c)
        return EtaClass(self.alg, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, EtaClass) and other.alg == self.alg and other.b == self.b

    def to_json(self) -> list:
        return [
            {"i": i, "j": j, "c": GF.to_hex(c)} for (i, j), c in sorted(self.b.items())
        ]

    def __repr__(self) -> str:
        return " + ".join(
            f"{GF.to_hex(c)}[dz{i}dz{j}]" for (i, j), c in sorted(self.b.items())
        ) or "0"


# -- the differential ---------------------------------------------------------


def d0(f: DPoly) -> Form1:
    alg = f.alg
    return Form1(alg, {i: f.partial(i) for i in range(1, alg.n + 1)})


def d1(phi: Form1) -> Form2:
    alg = phi.alg
    mix: dict = {}
    for j, f in phi.coeffs.items():
        for i in range(1, alg.n + 1):
            if i == j:
                continue  # dx_i dx_i = 0
            df = f.partial(i)
            if df.is_zero():
                continue
            key = (min(i, j), max(i, j))
            mix[key] = mix.get(key, alg.zero()) + df
    return Form2(alg, {}, mix)


def d2(w: Form2) -> Form3:
    alg = w.alg
    out: dict = {}

    def acc(key, f):
        if not f.is_zero():
            out[key] = out.get(key, alg.zero()) + f

    for i, f in w.sq.items():
        for j in range(1, alg.n + 1):
            acc(tuple(sorted((i, i, j))), f.partial(j))
    for (i, j), f in w.mix.items():
        for kk in range(1, alg.n + 1):
            if kk == i or kk == j:
                continue  # dx_k dx_k dx_l = 0
            acc(tuple(sorted((i, j, kk))), f.partial(kk))
    return Form3(alg, out)


def differential(obj):
    if isinstance(obj, DPoly):
        return d0(obj)
    if isinstance(obj, Form1):
        return d1(obj)
    if isinstance(obj, Form2):
        return d2(obj)
    raise InputError(f"no differential for {type(obj).__name__}")


def is_closed(w: Form2) -> bool:
    return d2(w).is_zero()


# -- interior products and the Lie derivative ----------------------------------


def interior_product(D: SpecialDerivation, w: Form2) -> Form1:
    alg = w.alg
    out = Form1.zero(alg)
    for i, f in w.sq.items():
        di = D.component(i)
        if not di.is_zero():
            out = out + Form1(alg, {i: f * di})
    for (i, j), f in w.mix.items():
        di, dj = D.component(i), D.component(j)
        add = {}
        if not di.is_zero():
            add[j] = f * di
        if not dj.is_zero():
            add[i] = f * dj
        if add:
            out = out + Form1(alg, add)
    return out


def interior_product3(D: SpecialDerivation, w: Form3) -> Form2:
    alg = w.alg
    out = Form2.zero(alg)
    for key, f in w.coeffs.items():
        a, b, c = key
        if a == b == c:
            out = out + Form2(alg, {a: f * D.component(a)}, {})
        elif a == b:
            # (dx_a)^(2) dx_c
            da, dc = D.component(a), D.component(c)
            term = Form2.zero(alg)
            if not da.is_zero():
                term = term + Form2.dxdx(alg, a, c).fmul(f * da)
            if not dc.is_zero():
                term = term + Form2(alg, {a: f * dc}, {})
            out = out + term
        elif b == c:
            db, da = D.component(b), D.component(a)
            term = Form2.zero(alg)
            if not db.is_zero():
                term = term + Form2.dxdx(alg, a, b).fmul(f * db)
            if not da.is_zero():
                term = term + Form2(alg, {b: f * da}, {})
            out = out + term
        else:
            for drop in range(3):
                rest = tuple(v for t, v in enumerate(key) if t != drop)
                dv = D.component(key[drop])
                if not dv.is_zero():
                    out = out + Form2.dxdx(alg, *rest).fmul(f * dv)
    return out


def interior_product1(D: SpecialDerivation, phi: Form1) -> DPoly:
    alg = phi.alg
    out = alg.zero()
    for i, f in phi.coeffs.items():
        out = out + f * D.component(i)
    return out


def lie_derivative(D: SpecialDerivation, w: Form2) -> Form2:
    """Cartan homotopy formula: D w = D _| dw + d(D _| w)."""
    return interior_product3(D, d2(w)) + d1(interior_product(D, w))


def lie_derivative1(D: SpecialDerivation, phi: Form1) -> Form1:
    return interior_product(D, d1(phi)) + d0(interior_product1(D, phi))


# -- products of 1-forms -------------------------------------------------------


def mul_11(phi: Form1, psi: Form1) -> Form2:
    alg = phi.alg
    out = Form2.zero(alg)
    for i, f in phi.coeffs.items():
        for j, g in psi.coeffs.items():
            if i == j:
                continue  # dx_i dx_i = 0
            out = out + Form2.dxdx(alg, i, j).fmul(f * g)
    return out


def divided_square_1form(phi: Form1) -> Form2:
    """phi^(2) for phi = sum f_i dx_i: squares on the diagonal, products
    on mixed terms (relation (u_1+u_2)^(2) = u_1^(2) + u_1 u_2 + u_2^(2))."""
    alg = phi.alg
    sq = {i: f * f for i, f in phi.coeffs.items()}
    mix = {}
    for (i, fi), (j, fj) in combinations(sorted(phi.coeffs.items()), 2):
        mix[(i, j)] = fi * fj
    return Form2(alg, sq, mix)


# -- K-linear coordinates ------------------------------------------------------


class FormCoords:
    """Flattens forms to bitsliced vectors over K for exact solves."""

    def __init__(self, alg: DividedPowerAlgebra) -> None:
        self.alg = alg
        self.ops: LinOps = linops(alg.K.k)
        n, dim = alg.n, alg.dim
        self.pairs = list(combinations(range(1, n + 1), 2))
        self.pair_pos = {p: t for t, p in enumerate(self.pairs)}
        self.triples = []
        for a in range(1, n + 1):
            for b in range(a, n + 1):
                for c in range(b, n + 1):
                    self.triples.append((a, b, c))
        self.triple_pos = {t: i for i, t in enumerate(self.triples)}
        self.dim0 = dim
        self.dim1 = n * dim
        self.dim2 = (n + len(self.pairs)) * dim
        self.dim3 = len(self.triples) * dim

    def form1_vec(self, phi: Form1):
        v = self.ops.vzero()
        dim = self.alg.dim
        for i, f in phi.coeffs.items():
            base = (i - 1) * dim
            for idx, c in f.terms.items():
                self.ops.vset(v, base + idx, c)
        return v

    def vec_form1(self, v) -> Form1:
        alg, dim = self.alg, self.alg.dim
        coeffs = {}
        for i in range(1, alg.n + 1):
            base = (i - 1) * dim
            terms = {}
            for idx in range(dim):
                a = self.ops.vget(v, base + idx)
                if a:
                    terms[idx] = a
            if terms:
                coeffs[i] = DPoly(alg, terms)
        return Form1(alg, coeffs)

    def form2_vec(self, w: Form2):
        v = self.ops.vzero()
        alg, dim = self.alg, self.alg.dim
        for i, f in w.sq.items():
            base = (i - 1) * dim
            for idx, c in f.terms.items():
                self.ops.vset(v, base + idx, c)
        for key, f in w.mix.items():
            base = (alg.n + self.pair_pos[key]) * dim
            for idx, c in f.terms.items():
                self.ops.vset(v, base + idx, c)
        return v

    def form3_vec(self, w: Form3):
        v = self.ops.vzero()
        dim = self.alg.dim
        for key, f in w.coeffs.items():
            base = self.triple_pos[key] * dim
            for idx, c in f.terms.items():
                self.ops.vset(v, base + idx, c)
        return v

    def basis_form1(self):
        alg = self.alg
        for i in range(1, alg.n + 1):
            for idx in alg.monomials():
                yield Form1(alg, {i: alg.monomial(idx)})

    def basis_form2(self):
        alg = self.alg
        for i in range(1, alg.n + 1):
            for idx in alg.monomials():
                yield Form2(alg, {i: alg.monomial(idx)}, {})
        for key in self.pairs:
            for idx in alg.monomials():
                yield Form2(alg, {}, {key: alg.monomial(idx)})


def solve_potential(w: Form2) -> Form1 | None:
    """phi with d(phi) = w for exact w; None when the class is nonzero."""
    if not is_closed(w):
        raise PreconditionError("form is not closed")
    coords = FormCoords(w.alg)
    ops = coords.ops
    rows = [ops.vzero() for _ in range(coords.dim2)]
    for col, phi in enumerate(coords.basis_form1()):
        img = coords.form2_vec(d1(phi))
        for r in range(coords.dim2):
            a = ops.vget(img, r)
            if a:
                ops.vset(rows[r], col, a)
    sol = ops.solve(rows, coords.dim1, coords.form2_vec(w))
    if sol is None:
        return None
    phi = coords.vec_form1(sol)
    return phi


def realize_eta(eta: EtaClass) -> Form2:
    """sum b_ij xbar_i xbar_j dx_i dx_j, the cocycle of the class."""
    alg = eta.alg
    out = Form2.zero(alg)
    for (i, j), c in eta.b.items():
        f = (alg.xbar(i) * alg.xbar(j)).cmul(c)
        out = out + Form2(alg, {}, {(i, j): f})
    return out


def h2_class(w: Form2) -> tuple[dict, EtaClass]:
    """Unique decomposition w = sum c_i (dx_i)^(2) + realize_eta(b) + d(phi)."""
    if not is_closed(w):
        raise PreconditionError("form is not closed")
    alg = w.alg
    coords = FormCoords(alg)
    ops = coords.ops
    n = alg.n
    extra = n + len(coords.pairs)
    width = extra + coords.dim1
    rows = [ops.vzero() for _ in range(coords.dim2)]

    def scatter(col, vec):
        for r in range(coords.dim2):
            a = ops.vget(vec, r)
            if a:
                ops.vset(rows[r], col, a)

    for t in range(n):
        scatter(t, coords.form2_vec(Form2.dx_squared(alg, t + 1)))
    for t, key in enumerate(coords.pairs):
        cocycle = realize_eta(EtaClass(alg, {key: 1}))
        scatter(n + t, coords.form2_vec(cocycle))
    for col, phi in enumerate(coords.basis_form1()):
        scatter(extra + col, coords.form2_vec(d1(phi)))
    sol = ops.solve(rows, width, coords.form2_vec(w))
    if sol is None:
        raise PreconditionError("closed form failed to decompose (internal)")
    sq_classes = {}
    for t in range(n):
        c = ops.vget(sol, t)
        if c:
            sq_classes[t + 1] = c
    b = {}
    for t, key in enumerate(coords.pairs):
        c = ops.vget(sol, n + t)
        if c:
            b[key] = c
    return sq_classes, EtaClass(alg, b)


def cohomology_dim(alg: DividedPowerAlgebra, k: int) -> int:
    """dim H^k(S-Omega) for k in {0, 1, 2}: ker(d_k) minus im(d_{k-1})."""
    if k not in (0, 1, 2):
        raise InputError("cohomology computed only for degrees 0, 1, 2")
    coords = FormCoords(alg)
    ops = coords.ops

    def rank_d0():
        return ops.rank([coords.form1_vec(d0(alg.monomial(idx))) for idx in alg.monomials()])

    def rank_d1():
        return ops.rank([coords.form2_vec(d1(phi)) for phi in coords.basis_form1()])

    def rank_d2():
        return ops.rank([coords.form3_vec(d2(w)) for w in coords.basis_form2()])

    if k == 0:
        return coords.dim0 - rank_d0()
    if k == 1:
        return (coords.dim1 - rank_d1()) - rank_d0()
    return (coords.dim2 - rank_d2()) - rank_d1()


# -- the matrix dictionary ----------------------------------------------------


def matrix_of_form(w: Form2) -> list[list[DPoly]]:
    """Symmetric matrix M with M_ii = w_ii and M_ij = M_ji = w_ij."""
    alg = w.alg
    n = alg.n
    M = [[alg.zero() for _ in range(n)] for _ in range(n)]
    for i, f in w.sq.items():
        M[i - 1][i - 1] = f
    for (i, j), f in w.mix.items():
        M[i - 1][j - 1] = f
        M[j - 1][i - 1] = f
    return M


def form_from_matrix(alg: DividedPowerAlgebra, M) -> Form2:
    n = alg.n
    if len(M) != n or any(len(r) != n for r in M):
        raise InputError(f"matrix must be {n}x{n}")
    for i in range(n):
        for j in range(i + 1, n):
            if M[i][j] != M[j][i]:
                raise InputError("matrix of a symmetric form must be symmetric")
    sq = {i + 1: M[i][i] for i in range(n)}
    mix = {(i + 1, j + 1): M[i][j] for i in range(n) for j in range(i + 1, n)}
    return Form2(alg, sq, mix)


def poly_det(M) -> DPoly:
    """Determinant = permanent in characteristic 2, by permutation sum."""
    n = len(M)
    alg = M[0][0].alg
    det = alg.zero()
    for perm in permutations(range(n)):
        prod = alg.one()
        for i in range(n):
            prod = prod * M[i][perm[i]]
            if prod.is_zero():
                break
        det = det + prod
    return det


def invert_matrix(M) -> list[list[DPoly]]:
    """Adjugate over det; exact, and verified by multiplying back."""
    n = len(M)
    alg = M[0][0].alg
    det = poly_det(M)
    if det.constant_term == 0:
        raise PreconditionError("degenerate form: det(0) = 0")
    det_inv = det.inverse()
    inv = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [M[r][c] for c in range(n) if c != i]
                for r in range(n)
                if r != j
            ]
            cof = poly_det(minor) if minor else alg.one()
            inv[i][j] = det_inv * cof
    for i in range(n):
        for j in range(n):
            acc = alg.zero()
            for t in range(n):
                acc = acc + M[i][t] * inv[t][j]
            expect = alg.one() if i == j else alg.zero()
            if acc != expect:
                raise AssertionError("matrix inversion self-check failed")
    return inv


def is_nondegenerate(w: Form2) -> bool:
    return poly_det(matrix_of_form(w)).constant_term != 0


def is_nonalternating(w: Form2) -> bool:
    """Some w(D, D) != 0, i.e. a nonzero (dx_i)^(2) coefficient."""
    return bool(w.sq)


# -- JSON ----------------------------------------------------------------------


def form2_to_json(w: Form2) -> dict:
    alg = w.alg
    terms = []
    for i, f in sorted(w.sq.items()):
        terms.append({"kind": "sq", "i": i, "poly": f.to_json()})
    for (i, j), f in sorted(w.mix.items()):
        terms.append({"kind": "mix", "i": i, "j": j, "poly": f.to_json()})
    return {
        "n": alg.n,
        "heights": list(alg.heights),
        "field_degree": alg.K.k,
        "terms": terms,
    }


def form2_from_json(data) -> Form2:
    if not isinstance(data, dict):
        raise InputError("form JSON must be an object")
    required = {"n", "heights", "field_degree", "terms"}
    if set(data) != required:
        raise InputError(f"form JSON must have exactly the keys {sorted(required)}")
    heights = data["heights"]
    if not isinstance(heights, list) or len(heights) != data["n"]:
        raise InputError("'heights' must list one height per variable")
    alg = DividedPowerAlgebra(heights, k=data["field_degree"])
    w = Form2.zero(alg)
    for t, item in enumerate(data["terms"]):
        if not isinstance(item, dict) or "kind" not in item:
            raise InputError(f"term {t}: missing 'kind'")
        kind = item["kind"]
        if kind == "sq":
            if set(item) != {"kind", "i", "poly"}:
                raise InputError(f"term {t}: sq term needs keys kind, i, poly")
            i = item["i"]
            if not (isinstance(i, int) and 1 <= i <= alg.n):
                raise InputError(f"term {t}: index i out of range")
            w = w + Form2(alg, {i: DPoly.from_json(alg, item["poly"])}, {})
        elif kind == "mix":
            if set(item) != {"kind", "i", "j", "poly"}:
                raise InputError(f"term {t}: mix term needs keys kind, i, j, poly")
            i, j = item["i"], item["j"]
            if not (isinstance(i, int) and isinstance(j, int) and 1 <= i < j <= alg.n):
                raise InputError(f"term {t}: need 1 <= i < j <= n")
            w = w + Form2(alg, {}, {(i, j): DPoly.from_json(alg, item["poly"])})
        elif kind == "eta":
            if set(item) != {"kind", "i", "j", "c"}:
                raise InputError(f"term {t}: eta term needs keys kind, i, j, c")
            i, j = item["i"], item["j"]
            if not (isinstance(i, int) and isinstance(j, int) and 1 <= i < j <= alg.n):
                raise InputError(f"term {t}: need 1 <= i < j <= n")
            c = alg.K.from_hex(item["c"])
            w = w + realize_eta(EtaClass(alg, {(i, j): c}))
        else:
            raise InputError(f"term {t}: unknown kind {kind!r}")
    return w
