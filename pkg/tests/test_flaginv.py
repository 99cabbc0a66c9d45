"""Flagged bilinear triples: invariants, canonical forms, equivalence."""

import random

import pytest

from nahlie.errors import InputError, PreconditionError
from nahlie.flaginv import (
    Flag,
    InvariantTable,
    Triple,
    canonical_from_invariants,
    canonicalize,
    equivalent,
    invariants_table,
)
from nahlie.linalg import linops

EX1_MATRIX = [[1, 0, 1], [0, 0, 1], [1, 1, 0]]
EX1_HEIGHTS = [1, 2, 3]


def example1():
    return Triple.from_heights(EX1_MATRIX, EX1_HEIGHTS)


def example2():
    # diag(1, 1, M0) with e1 of height 4 and the rest of height 3
    m = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
    return Triple.from_heights(m, [4, 3, 3, 3])


def scalars(t, sub):
    return sorted(t.ops.to_scalars(r, t.n) for r in sub.rows)


def test_perp_and_isotropic_example1():
    t = example1()
    # V1^perp = <e2, e1+e3>, V^0 = <e2, e3>
    assert scalars(t, t.perp(t.flag.subspace(1))) == [[0, 1, 0], [1, 0, 1]]
    assert scalars(t, t.isotropic_space()) == [[0, 1, 0], [0, 0, 1]]
    full_perp = t.perp(t.flag.subspace(3))
    assert full_perp.dim == 0


def test_invariants_example1():
    tab = invariants_table(example1())
    assert tab.cells == {(1, 1): (1, 1), (2, 3): (1, 0), (3, 2): (1, 1)}


def test_invariants_trivial_flag():
    n = 4
    ident = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    tab = invariants_table(Triple.from_heights(ident, [1] * n))
    assert tab.cells == {(1, 1): (n, 1)}

    m0 = [[0, 1], [1, 0]]
    tab2 = invariants_table(Triple.from_heights(m0, [1, 1]))
    assert tab2.cells == {(1, 1): (2, 0)}


def test_canonicalize_example1():
    res = canonicalize(example1())
    assert res.canonical == [[0, 1, 0], [1, 1, 0], [0, 0, 1]]
    assert res.heights == [2, 3, 1]
    assert not res.alternating


def test_canonicalize_example2():
    res = canonicalize(example2())
    ident = [[1 if i == j else 0 for j in range(4)] for i in range(4)]
    assert res.canonical == ident
    assert res.heights == [3, 3, 3, 4]


def test_canonicalize_fixed_point():
    m0 = [[0, 1], [1, 0]]
    res = canonicalize(Triple.from_heights(m0, [1, 1]))
    assert res.canonical == m0
    assert res.heights == [1, 1]
    assert res.alternating


def test_unit_extraction_needs_care():
    # diag(1, M0): pulling out e1 would strand an alternating complement;
    # the canonical form is the identity.
    t = Triple.from_heights([[1, 0, 0], [0, 0, 1], [0, 1, 0]], [1, 1, 1])
    res = canonicalize(t)
    assert res.canonical == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert res.heights == [1, 1, 1]


def test_three_m1_blocks():
    # V1 = <e1,e2,e3> totally isotropic paired against unit vectors of
    # height 2: the cell (1,2) has n_12 = 3 with n_21^1 = 1, so all three
    # extracted pairs must come out as M1 blocks.
    n = 6
    m = [[0] * n for _ in range(n)]
    for i in range(3):
        m[i][3 + i] = m[3 + i][i] = 1
        m[3 + i][3 + i] = 1
    t = Triple.from_heights(m, [1, 1, 1, 2, 2, 2])
    tab = invariants_table(t)
    assert tab.entry(1, 2) == (3, 0)
    assert tab.entry(2, 1) == (3, 1)
    res = canonicalize(t)
    m1 = [[0, 1], [1, 1]]
    for blk in range(3):
        for a in range(2):
            for b in range(2):
                assert res.canonical[2 * blk + a][2 * blk + b] == m1[a][b]
    assert res.heights == [1, 2, 1, 2, 1, 2]


def test_postconditions_on_random_triples():
    rng = random.Random(31)
    for k in (1, 2):
        ops = linops(k)
        K = ops.K
        produced = 0
        while produced < 12:
            n = rng.randrange(2, 6)
            heights = [rng.randrange(1, 4) for _ in range(n)]
            m = [[0] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    m[i][j] = m[j][i] = rng.randrange(K.size)
            t = Triple.from_heights(m, heights, k)
            if not t.is_nondegenerate():
                continue
            produced += 1
            res = canonicalize(t)
            cols = [[res.change[i][j] for i in range(n)] for j in range(n)]
            # C^T b C = canonical
            for a in range(n):
                for b in range(n):
                    acc = 0
                    for i in range(n):
                        for j in range(n):
                            acc = K.add(acc, K.mul(K.mul(cols[a][i], m[i][j]), cols[b][j]))
                    assert acc == res.canonical[a][b]
            # flag coordination: column j lies in V_{height_j}
            for j in range(n):
                v = ops.from_scalars(cols[j])
                assert t.flag.subspace(res.heights[j]).contains(v)
            # round trip through the invariants
            tab = invariants_table(t)
            assert canonical_from_invariants(tab) == (res.canonical, res.heights)
            # M1 pairs have u-height < v-height; every extracted pair has
            # b(u,u)*b(v,v) = 0
            i = 0
            while i < n:
                if i + 1 < n and res.canonical[i][i + 1] == 1:
                    assert K.mul(res.canonical[i][i], res.canonical[i + 1][i + 1]) == 0
                    if res.canonical[i + 1][i + 1] != 0:
                        assert res.heights[i] < res.heights[i + 1]
                    i += 2
                else:
                    i += 1


def test_invariants_stable_under_flag_preserving_maps():
    rng = random.Random(47)
    for t, k in ((example1(), 1), (example2(), 1)):
        K = t.K
        n = t.n
        heights = [t.flag.height(row) for row in t.ops.identity(n)]
        tab = invariants_table(t)
        for _ in range(20):
            # random flag-preserving invertible map: triangular elementary
            # column operations e_j += c e_i allowed when h_i <= h_j
            P = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
            for _ in range(8):
                i, j = rng.randrange(n), rng.randrange(n)
                if i == j or heights[i] > heights[j]:
                    continue
                c = rng.randrange(1, K.size)
                for r in range(n):
                    P[r][j] = K.add(P[r][j], K.mul(c, P[r][i]))
            newb = [[0] * n for _ in range(n)]
            for a in range(n):
                for b in range(n):
                    acc = 0
                    for i in range(n):
                        for j in range(n):
                            acc = K.add(acc, K.mul(K.mul(P[i][a], t.matrix[i][j]), P[j][b]))
                    newb[a][b] = acc
            t2 = Triple.from_heights(newb, heights, k)
            assert invariants_table(t2) == tab


def test_equivalence():
    t = example1()
    assert equivalent(t, t)
    res = canonicalize(t)
    t_canon = Triple.from_heights(res.canonical, res.heights)
    assert equivalent(t, t_canon)
    ident = Triple.from_heights([[1, 0], [0, 1]], [1, 1])
    sympl = Triple.from_heights([[0, 1], [1, 0]], [1, 1])
    assert not equivalent(ident, sympl)


def test_canonical_from_invariants_examples():
    tab = invariants_table(example1())
    mat, heights = canonical_from_invariants(tab)
    assert mat == [[0, 1, 0], [1, 1, 0], [0, 0, 1]]
    assert heights == [2, 3, 1]

    tab2 = InvariantTable(3, {(1, 1): (3, 1)})
    assert canonical_from_invariants(tab2) == (
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [1, 1, 1],
    )
    tab3 = InvariantTable(2, {(1, 1): (2, 0)})
    assert canonical_from_invariants(tab3) == ([[0, 1], [1, 0]], [1, 1])


def test_inconsistent_tables_rejected():
    with pytest.raises(InputError):
        canonical_from_invariants(InvariantTable(3, {(1, 1): (2, 0)}))  # sums to 2
    with pytest.raises(InputError):
        canonical_from_invariants(InvariantTable(3, {(1, 1): (3, 0)}))  # odd alternating
    with pytest.raises(InputError):
        canonical_from_invariants(
            InvariantTable(2, {(1, 2): (1, 1), (2, 1): (1, 0)})
        )  # q<r cell cannot carry n1=1


def test_degenerate_rejected():
    zero = Triple.from_heights([[0, 0], [0, 0]], [1, 1])
    with pytest.raises(PreconditionError):
        invariants_table(zero)
    with pytest.raises(PreconditionError):
        canonicalize(zero)
    with pytest.raises(InputError):
        Triple.from_heights([[0, 1], [0, 0]], [1, 1])  # not symmetric


def test_triple_json_round_trip():
    t = example1()
    data = t.to_json()
    t2 = Triple.from_json(data)
    assert t2.matrix == t.matrix
    assert t2.flag == t.flag
    blob = {
        "n": 3,
        "field_degree": 1,
        "matrix": [["1", "0", "1"], ["0", "0", "1"], ["1", "1", "0"]],
        "flag": {"kind": "heights", "h": [1, 2, 3]},
    }
    t3 = Triple.from_json(blob)
    assert t3.matrix == t.matrix and t3.flag == t.flag
    assert invariants_table(t3) == invariants_table(t)


def test_triple_json_validation():
    base = {
        "n": 2,
        "field_degree": 1,
        "matrix": [["1", "0"], ["0", "1"]],
        "flag": {"kind": "heights", "h": [1, 1]},
    }
    bad = dict(base)
    bad["flag"] = {"kind": "subspaces", "chain": [[["1", "0"]], [["0", "1"]]]}
    with pytest.raises(InputError):
        Triple.from_json(bad)  # chain not increasing: V2 lacks V1
    bad2 = dict(base)
    bad2["matrix"] = [["1", "1"], ["0", "1"]]
    with pytest.raises(InputError):
        Triple.from_json(bad2)
    bad3 = dict(base)
    bad3["extra"] = 1
    with pytest.raises(InputError):
        Triple.from_json(bad3)


def test_stuttering_chain_json():
    # 0 = V1 = V2 < V3 < V4 expressed with empty chain steps
    chain = [
        [],
        [],
        [["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]],
        [["1", "0", "0", "0"]],
    ]
    blob = {
        "n": 4,
        "field_degree": 1,
        "matrix": [
            ["1", "0", "0", "0"],
            ["0", "1", "0", "0"],
            ["0", "0", "0", "1"],
            ["0", "0", "1", "0"],
        ],
        "flag": {"kind": "subspaces", "chain": chain},
    }
    t = Triple.from_json(blob)
    assert invariants_table(t) == invariants_table(example2())
