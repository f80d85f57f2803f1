"""Resultants and discriminants: vanishing, degree laws, Salmon formula."""

import random

import pytest

from humbert.elimination import (
    BothConstantError,
    DegenerateChainError,
    binary_discriminant,
    cubic_discriminant_iterated,
    cubic_discriminant_salmon,
    eliminate_chain,
    hessian_determinant,
    sylvester_matrix,
    sylvester_resultant,
)
from humbert.kummer import CUBIC_MONOMIALS
from humbert.polynomials import Polynomial, poly


def test_resultant_hand_values():
    x = Polynomial.variable("x")
    r = sylvester_resultant(x - 1, x + 1, "x")
    assert r.constant_value() in (2, -2)
    r = sylvester_resultant(x - poly("a1"), x - poly("a2"), "x")
    assert r in (poly("a1 - a2"), poly("a2 - a1"))


def test_resultant_degree_zero_convention():
    x = Polynomial.variable("x")
    # Res(c, q) = c^deg(q)
    assert sylvester_resultant(poly(1), x**2, "x") == poly(1)
    assert sylvester_resultant(poly(3), x**2, "x") == poly(9)
    with pytest.raises(BothConstantError):
        sylvester_resultant(poly(2), poly(3), "x")


def test_resultant_vanishing_planted_roots():
    rng = random.Random(10)
    x = Polynomial.variable("x")
    for _ in range(200):
        root = rng.randint(-20, 20)
        a, b = rng.randint(-9, 9) or 1, rng.randint(-9, 9) or 1
        p = (x - root) * poly(a) * (x - rng.randint(21, 40))
        q = (x - root) * poly(b) * (x + rng.randint(21, 40))
        assert sylvester_resultant(p, q, "x").is_zero()
    for _ in range(200):
        r1, r2 = rng.randint(-20, 0), rng.randint(1, 20)
        p, q = x - r1, x - r2
        assert not sylvester_resultant(p, q, "x").is_zero()


def test_resultant_multiplicative():
    rng = random.Random(11)
    x = Polynomial.variable("x")
    for _ in range(20):
        p = x - rng.randint(-9, 9)
        q = x * x + rng.randint(1, 9)
        r = x + rng.randint(-9, 9)
        lhs = sylvester_resultant(p * q, r, "x")
        rhs = sylvester_resultant(p, r, "x") * sylvester_resultant(q, r, "x")
        assert lhs == rhs


def _symbolic_univariate(deg, tstart):
    x = Polynomial.variable("x")
    p = Polynomial.zero()
    for i in range(deg + 1):
        p = p + Polynomial.variable(f"t{tstart + i}") * x**i
    return p, [f"t{tstart + i}" for i in range(deg + 1)]


def test_resultant_degree_law_symbolic():
    # Res of degree-m and degree-n forms is homogeneous of degree n in the
    # first form's coefficients and m in the second's
    for m in (1, 2, 3):
        for n in (1, 2, 3):
            p, pc = _symbolic_univariate(m, 0)
            q, qc = _symbolic_univariate(n, m + 1)
            r = sylvester_resultant(p, q, "x")
            assert r.is_homogeneous(pc) == n
            assert r.is_homogeneous(qc) == m


def test_sylvester_matrix_shape():
    x = Polynomial.variable("x")
    m = sylvester_matrix(x**2 - 1, x**3 + x, "x", 2, 3)
    assert len(m) == 5 and all(len(row) == 5 for row in m)


def test_binary_discriminant_quadratic():
    # c1 x^2 + c3 xy + c2 y^2 -> c3^2 - 4 c1 c2 up to rational scale
    c1, c2, c3 = (Polynomial.variable(n) for n in ("t0", "t1", "t2"))
    x, y = Polynomial.variable("x"), Polynomial.variable("y")
    f = c1 * x**2 + c3 * x * y + c2 * y**2
    d = binary_discriminant(f, "x", "y").primitive()
    ref = (c3 * c3 - poly(4) * c1 * c2).primitive()
    assert d == ref or d == -ref


def test_binary_discriminant_double_root():
    x, y = Polynomial.variable("x"), Polynomial.variable("y")
    assert binary_discriminant((x - y) ** 2, "x", "y").is_zero()
    assert not binary_discriminant(x * y, "x", "y").is_zero()
    rng = random.Random(12)
    for _ in range(50):
        r = rng.randint(-9, 9)
        f = (x - r * y) ** 2 * (x - (r + rng.randint(1, 5)) * y)
        assert binary_discriminant(f, "x", "y").is_zero()


def generic_cubic():
    f = Polynomial.zero()
    names = []
    for n, (i, j, k) in enumerate(CUBIC_MONOMIALS):
        t = f"t{n}"
        names.append(t)
        f = f + Polynomial.variable(t) * Polynomial.monomial({"x": i, "y": j, "z": k})
    return f, names


def cvar(i, j, k):
    n = CUBIC_MONOMIALS.index((i, j, k))
    return Polynomial.variable(f"t{n}")


def test_salmon_generic_properties():
    f, names = generic_cubic()
    d = cubic_discriminant_salmon(f)
    assert d.is_homogeneous(names) == 12
    content, prim = d.content_and_primitive()
    assert content == 13824
    assert len(prim.terms) == 2040


def test_salmon_hessian_b11_coefficient():
    # coefficient of x^2 in the x-partial of the Hessian determinant:
    # b11 = -24 c120 c201^2 + 24 c111 c201 c210 - 24 c102 c210^2
    #       - 18 c111^2 c300 + 72 c102 c120 c300
    f, _ = generic_cubic()
    fx = hessian_determinant(f).partial("x")
    b11 = (
        fx.coefficients_in("x")
        .get(2, Polynomial.zero())
        .coefficients_in("y")
        .get(0, Polynomial.zero())
        .coefficients_in("z")
        .get(0, Polynomial.zero())
    )
    ref = (
        poly(-24) * cvar(1, 2, 0) * cvar(2, 0, 1) ** 2
        + poly(24) * cvar(1, 1, 1) * cvar(2, 0, 1) * cvar(2, 1, 0)
        + poly(-24) * cvar(1, 0, 2) * cvar(2, 1, 0) ** 2
        + poly(-18) * cvar(1, 1, 1) ** 2 * cvar(3, 0, 0)
        + poly(72) * cvar(1, 0, 2) * cvar(1, 2, 0) * cvar(3, 0, 0)
    )
    assert b11 == ref


def test_salmon_known_cubics():
    x, y, z = (Polynomial.variable(n) for n in ("x", "y", "z"))
    fermat = x**3 + y**3 + z**3
    assert not cubic_discriminant_salmon(fermat).is_zero()
    nodal = y**2 * z - x**2 * (x + z)
    assert cubic_discriminant_salmon(nodal).is_zero()
    lines = (x + y) * (y + z) * (x + z)
    assert cubic_discriminant_salmon(lines).is_zero()
    cusp = y**2 * z - x**3
    assert cubic_discriminant_salmon(cusp).is_zero()


def test_salmon_divides_iterated():
    rng = random.Random(13)
    checked = 0
    while checked < 20:
        f = Polynomial.zero()
        for (i, j, k) in CUBIC_MONOMIALS:
            f = f + Polynomial.monomial({"x": i, "y": j, "z": k}, rng.randint(-9, 9))
        s = cubic_discriminant_salmon(f)
        it = cubic_discriminant_iterated(f)
        if s.is_zero():
            assert it.is_zero()
            continue
        assert s.primitive().divides(it)
        checked += 1


def test_eliminate_chain_basics():
    x = Polynomial.variable("x")
    r = eliminate_chain([x - poly("a1"), x - poly("a2")], ["x"])
    assert r in (poly("a1 - a2"), poly("a2 - a1"))
    with pytest.raises(DegenerateChainError):
        eliminate_chain([x - 1, x - 1], ["x"])
    with pytest.raises(Exception):
        eliminate_chain([x, x, x], ["x"])  # wrong arity


def test_eliminate_chain_two_levels():
    x, y = Polynomial.variable("x"), Polynomial.variable("y")
    a = poly("a1")
    # x = a, y = x  ==>  y = a
    r = eliminate_chain([x - a, y - x, y - poly("a2")], ["x", "y"])
    assert r.primitive() in (poly("a1 - a2"), poly("a2 - a1"))
