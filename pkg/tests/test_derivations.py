"""W(n, m̄): action, bracket, Jacobi, the special-derivation law."""

import random

from conftest import random_poly

from nahlie.derivations import SpecialDerivation
from nahlie.divpow import DividedPowerAlgebra


def random_derivation(alg, rng, nterms=3):
    return SpecialDerivation(alg, [random_poly(alg, rng, nterms) for _ in range(alg.n)])


def test_basis_actions():
    alg = DividedPowerAlgebra([3, 1])
    d1 = SpecialDerivation.partial(alg, 1)
    assert d1(alg.monomial((3, 0))) == alg.monomial((2, 0))
    D = SpecialDerivation(alg, [alg.zero(), alg.x(1)])  # x1 d2
    assert D(alg.x(2)) == alg.x(1)
    rng = random.Random(0)
    assert random_derivation(alg, rng)(alg.const(1)).is_zero()


def test_bracket_examples():
    alg = DividedPowerAlgebra([2, 1])
    d1 = SpecialDerivation.partial(alg, 1)
    d2 = SpecialDerivation.partial(alg, 2)
    assert d1.bracket(d2).is_zero()
    x1d1 = SpecialDerivation(alg, [alg.x(1), alg.zero()])
    assert x1d1.bracket(d1) == d1
    rng = random.Random(1)
    for _ in range(10):
        D = random_derivation(alg, rng)
        assert D.bracket(D).is_zero()


def test_jacobi_identity_randomized():
    rng = random.Random(2)
    for k in (1, 2):
        alg = DividedPowerAlgebra([2, 1, 1], k=k)
        for _ in range(12):
            a = random_derivation(alg, rng)
            b = random_derivation(alg, rng)
            c = random_derivation(alg, rng)
            total = (
                a.bracket(b.bracket(c))
                + b.bracket(c.bracket(a))
                + c.bracket(a.bracket(b))
            )
            assert total.is_zero()


def test_leibniz_rule():
    rng = random.Random(3)
    alg = DividedPowerAlgebra([2, 2])
    for _ in range(15):
        D = random_derivation(alg, rng)
        f = random_poly(alg, rng)
        g = random_poly(alg, rng)
        assert D(f * g) == D(f) * g + f * D(g)


def test_special_law_on_divided_powers():
    # D(u^(r)) = u^(r-1) D(u) for u a linear form
    rng = random.Random(4)
    alg = DividedPowerAlgebra([3, 3], k=2)
    for _ in range(10):
        D = random_derivation(alg, rng)
        u = alg.x(1).cmul(rng.randrange(1, 4)) + alg.x(2).cmul(rng.randrange(4))
        for r in range(2, 5):
            assert D(u.divided_power(r)) == u.divided_power(r - 1) * D(u)


def test_json_round_trip():
    alg = DividedPowerAlgebra([2, 1], k=2)
    rng = random.Random(5)
    D = random_derivation(alg, rng)
    assert SpecialDerivation.from_json(alg, D.to_json()) == D
