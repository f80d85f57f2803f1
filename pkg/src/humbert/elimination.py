"""Resultants, discriminants, and elimination chains.

The Sylvester resultant of p (degree m) and q (degree n) in a chosen
variable is the determinant of the (m+n) x (m+n) matrix whose first n
rows carry the coefficients of p and whose last m rows carry the
coefficients of q, each block in shifted copies.  When one argument has
degree 0 the resultant degenerates to a power: Res(c, q) = c^deg(q).
Both arguments of degree <= 0 is an error.

Discriminants:

* binary forms: disc(f) = Res(f_u, f_v), a (2d-2) x (2d-2) Sylvester
  determinant built from homogeneous coefficient lists;
* plane cubics: a 6 x 6 determinant whose first three rows are the
  coefficient vectors of the partials f_x, f_y, f_z on the quadric
  monomial basis [x^2, y^2, z^2, xy, xz, yz] and whose last three rows
  are the coefficient vectors of the partials of
  F = det(Hessian matrix of f) on the same basis;
* an independent iterated-resultant route for cubics:
  Res_y(Res_x(f_x, f_y), Res_x(f_y, f_z)) at z = 1, which the 6 x 6
  determinant divides.

``eliminate_chain`` performs pairwise resultants of adjacent
polynomials level by level, eliminating one variable per level.
"""

from __future__ import annotations

from typing import Sequence

from . import linalg
from .polynomials import NEG_INFINITY, Polynomial


class EliminationError(Exception):
    pass


class BothConstantError(EliminationError):
    """Resultant of two polynomials both free of the variable."""


class DegenerateChainError(EliminationError):
    """A resultant in an elimination chain vanished identically."""

    def __init__(self, level: int, pair: int, variable: str):
        super().__init__(
            f"resultant of pair {pair} vanished identically while "
            f"eliminating {variable!r} at chain level {level}"
        )
        self.level = level
        self.pair = pair
        self.variable = variable


class InhomogeneousError(EliminationError):
    pass


def _deg(p: Polynomial, name: str) -> int:
    d = p.degree_in(name)
    return -1 if d is NEG_INFINITY else d


def _coeff_list(p: Polynomial, name: str, degree: int) -> list[Polynomial]:
    """Coefficients [c_degree, ..., c_0] of powers of ``name``."""
    by_exp = p.coefficients_in(name)
    return [by_exp.get(e, Polynomial()) for e in range(degree, -1, -1)]


def sylvester_matrix(
    p: Polynomial, q: Polynomial, name: str, m: int | None = None, n: int | None = None
) -> list[list[Polynomial]]:
    """The (m+n) x (m+n) Sylvester matrix in the given variable.

    ``m`` and ``n`` default to the actual degrees but may be passed
    explicitly to treat the inputs as forms of larger formal degree.
    """
    if m is None:
        m = _deg(p, name)
    if n is None:
        n = _deg(q, name)
    if m <= 0 or n <= 0:
        raise EliminationError("Sylvester matrix needs both degrees positive")
    pc = _coeff_list(p, name, m)
    qc = _coeff_list(q, name, n)
    size = m + n
    zero = Polynomial()
    rows: list[list[Polynomial]] = []
    for i in range(n):
        rows.append([zero] * i + pc + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + qc + [zero] * (size - n - 1 - i))
    return rows


def _pseudo_rem(a: Polynomial, b: Polynomial, name: str) -> Polynomial:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a reduced mod b."""
    n = _deg(b, name)
    lb = b.coefficients_in(name)[n]
    x = Polynomial.variable(name)
    r = a
    e = _deg(a, name) - n + 1
    while not r.is_zero() and _deg(r, name) >= n:
        d = _deg(r, name)
        lr = r.coefficients_in(name)[d]
        r = lb * r - lr * x ** (d - n) * b
        e -= 1
    if e > 0:
        r = r * lb**e
    return r


def resultant_prs(p: Polynomial, q: Polynomial, name: str) -> Polynomial:
    """Resultant via the subresultant polynomial remainder sequence.

    Agrees exactly (including sign) with the Sylvester determinant, but
    avoids building the matrix; much faster when one argument has small
    degree in ``name`` while the coefficients involve several other
    variables.
    """
    a, b = _deg(p, name), _deg(q, name)
    if a <= 0 and b <= 0:
        raise BothConstantError(
            f"both arguments are constant in {name!r}; resultant undefined"
        )
    if p.is_zero() or q.is_zero():
        return Polynomial()
    if a <= 0:
        return p**b
    if b <= 0:
        return q**a
    sign = 1
    if a < b:
        p, q, a, b = q, p, b, a
        if a % 2 == 1 and b % 2 == 1:
            sign = -sign
    g = Polynomial.const(1)
    h = Polynomial.const(1)
    while True:
        d = _deg(p, name) - _deg(q, name)
        if _deg(p, name) % 2 == 1 and _deg(q, name) % 2 == 1:
            sign = -sign
        r = _pseudo_rem(p, q, name)
        p = q
        if r.is_zero():
            return Polynomial()
        q = r.divexact(g * h**d)
        g = p.coefficients_in(name)[_deg(p, name)]
        if d == 1:
            h = g
        elif d > 1:
            h = (g**d).divexact(h ** (d - 1))
        if _deg(q, name) <= 0:
            break
    da = _deg(p, name)
    res = q**da if da == 1 else (q**da).divexact(h ** (da - 1))
    return res if sign == 1 else -res


def resultant_onevar_nodes(
    p: Polynomial, q: Polynomial, name: str, var: str
) -> Polynomial:
    """Resultant in ``name`` when the coefficients involve one other
    variable: evaluate ``var`` at integer nodes, take fast integer
    remainder-sequence resultants, and interpolate.

    At nodes where a leading coefficient vanishes the formal-degree
    Sylvester determinant is evaluated directly, so every node value is
    the symbolic resultant evaluated there.
    """
    m, n = _deg(p, name), _deg(q, name)
    bound = m * max(_deg(q, var), 0) + n * max(_deg(p, var), 0)
    values = []
    for w in range(bound + 1):
        pw = p.substitute(var, w)
        qw = q.substitute(var, w)
        if _deg(pw, name) == m and _deg(qw, name) == n:
            values.append(resultant_prs(pw, qw, name).constant_value())
        else:
            mat = sylvester_matrix(pw, qw, name, m, n)
            values.append(
                linalg.det_int([[e.constant_value() for e in row] for row in mat])
            )
    return linalg._interpolate(var, list(range(bound + 1)), values)


def resultant_low_degree(p: Polynomial, q: Polynomial, name: str) -> Polynomial:
    """Res(p, q) in ``name`` when deg(q) is 1 or 2, in closed form.

    For deg(q) = 1 with q = b*t + c this is the scaled evaluation
    (-1)^m * sum_k p_k (-c)^k b^(m-k).  For deg(q) = 2 the powers t^k
    are reduced modulo q with a denominator-tracking linear recurrence,
    giving lc(q)^(m-1) * p == A*t + B (mod q); then
    Res(p, q) = (c*A^2 - b*A*B + a*B^2) / a^(m-1) exactly, where
    q = a*t^2 + b*t + c.  Signs match the Sylvester determinant.
    """
    m, n = _deg(p, name), _deg(q, name)
    if n not in (1, 2) or m < n:
        raise EliminationError("resultant_low_degree needs deg(q) in {1,2} <= deg(p)")
    coeffs = p.coefficients_in(name)
    qc = q.coefficients_in(name)
    zero = Polynomial()
    if n == 1:
        b, c = qc.get(1, zero), qc.get(0, zero)
        total = zero
        for k in range(m + 1):
            ck = coeffs.get(k, zero)
            if ck.is_zero():
                continue
            total = total + ck * (-c) ** k * b ** (m - k)
        return -total if m % 2 else total
    a, b, c = qc.get(2, zero), qc.get(1, zero), qc.get(0, zero)
    # t^k == (A_k*t + B_k) / a^(k-1) modulo q, for k >= 1
    ak, bk = Polynomial.const(1), zero
    big_a, big_b = zero, coeffs.get(0, zero) * a ** (m - 1)
    for k in range(1, m + 1):
        ck = coeffs.get(k, zero)
        if not ck.is_zero():
            scale = ck * a ** (m - k)
            big_a = big_a + scale * ak
            big_b = big_b + scale * bk
        if k < m:
            ak, bk = a * bk - b * ak, -c * ak
    num = c * big_a**2 - b * big_a * big_b + a * big_b**2
    return num.divexact(a ** (m - 1))


def _det_dispatch(matrix: list[list[Polynomial]], strategy: str) -> Polynomial:
    if strategy == "bareiss":
        return linalg.det(matrix)
    if strategy == "cofactor":
        return linalg.det(matrix, cofactor_threshold=len(matrix))
    used: set[str] = set()
    for row in matrix:
        for e in row:
            used |= e.variables()
    if strategy == "interp" or (strategy == "auto" and 1 <= len(used) <= 3 and len(matrix) >= 6):
        if len(used) <= 3 and used:
            return linalg.det_interpolated(matrix, sorted(used))
    return linalg.det(matrix)


def sylvester_resultant(
    p: Polynomial, q: Polynomial, name: str, strategy: str = "auto"
) -> Polynomial:
    """Resultant of p and q with respect to one variable.

    Degree-0 convention: Res(c, q) = c^deg(q) and symmetrically; both
    arguments of degree <= 0 raise BothConstantError.
    """
    m, n = _deg(p, name), _deg(q, name)
    if m <= 0 and n <= 0:
        raise BothConstantError(
            f"both arguments are constant in {name!r}; resultant undefined"
        )
    if p.is_zero() or q.is_zero():
        return Polynomial()
    if m <= 0:
        return p**n
    if n <= 0:
        return q**m
    if strategy == "prs":
        return resultant_prs(p, q, name)
    if strategy == "auto":
        if min(m, n) <= 2 and max(m, n) >= 3:
            if n <= 2:
                return resultant_low_degree(p, q, name)
            sign = -1 if (m * n) % 2 else 1
            r = resultant_low_degree(q, p, name)
            return -r if sign < 0 else r
        others = (p.variables() | q.variables()) - {name}
        if len(others) >= 2 and m + n >= 10:
            # the interpolation grid is a product over the other
            # variables' degree bounds; with two or more of them the
            # remainder-sequence route is far cheaper
            return resultant_prs(p, q, name)
        if len(others) == 1 and m + n >= 20:
            return resultant_onevar_nodes(p, q, name, next(iter(others)))
    return _det_dispatch(sylvester_matrix(p, q, name, m, n), strategy)


def binary_resultant(
    g: Polynomial, h: Polynomial, u: str, v: str, dg: int, dh: int, strategy: str = "auto"
) -> Polynomial:
    """Resultant of two binary forms of formal degrees dg, dh in (u, v).

    Built from the full homogeneous coefficient lists, so vanishing
    leading coefficients in ``u`` are handled correctly.
    """
    if dg <= 0 or dh <= 0:
        raise EliminationError("binary resultant needs positive formal degrees")
    gl = [g.coefficients_in(u).get(e, Polynomial()) for e in range(dg, -1, -1)]
    hl = [h.coefficients_in(u).get(e, Polynomial()) for e in range(dh, -1, -1)]
    # strip the complementary v-powers: the coefficient of u^(d-i) carries v^i
    gl = [c.coefficients_in(v).get(i, Polynomial()) if c else c for i, c in enumerate(gl)]
    hl = [c.coefficients_in(v).get(i, Polynomial()) if c else c for i, c in enumerate(hl)]
    size = dg + dh
    zero = Polynomial()
    rows: list[list[Polynomial]] = []
    for i in range(dh):
        rows.append([zero] * i + gl + [zero] * (size - dg - 1 - i))
    for i in range(dg):
        rows.append([zero] * i + hl + [zero] * (size - dh - 1 - i))
    return _det_dispatch(rows, strategy)


def binary_discriminant(f: Polynomial, u: str, v: str, strategy: str = "auto") -> Polynomial:
    """Discriminant of a binary form: Res(f_u, f_v) as a Sylvester det."""
    d = f.is_homogeneous([u, v])
    if d is None:
        raise InhomogeneousError(f"not homogeneous in ({u}, {v})")
    if d < 2:
        raise EliminationError("binary discriminant needs degree >= 2")
    return binary_resultant(f.partial(u), f.partial(v), u, v, d - 1, d - 1, strategy)


_QUADRIC_BASIS = ("x^2", "y^2", "z^2", "x*y", "x*z", "y*z")
_QUADRIC_EXPS = ((2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1), (0, 1, 1))


def quadric_coefficients(g: Polynomial) -> list[Polynomial]:
    """Coefficient vector of a quadric in (x, y, z) on the fixed basis
    [x^2, y^2, z^2, xy, xz, yz]; coefficients may involve other variables."""
    if g.is_homogeneous(["x", "y", "z"]) not in (0, 2):
        raise InhomogeneousError("not a quadric in (x, y, z)")
    out = [Polynomial() for _ in _QUADRIC_EXPS]
    index = {e: i for i, e in enumerate(_QUADRIC_EXPS)}
    for ex, cx in g.coefficients_in("x").items():
        for ey, cy in cx.coefficients_in("y").items():
            for ez, cz in cy.coefficients_in("z").items():
                if (ex, ey, ez) == (0, 0, 0) and cz.is_zero():
                    continue
                i = index.get((ex, ey, ez))
                if i is None:
                    if cz:
                        raise InhomogeneousError("not a quadric in (x, y, z)")
                    continue
                out[i] = out[i] + cz
    return out


def hessian_determinant(f: Polynomial) -> Polynomial:
    """det of the 3x3 matrix of second partials of f in (x, y, z)."""
    names = ("x", "y", "z")
    grad = [f.partial(n) for n in names]
    jac = [[grad[i].partial(names[j]) for j in range(3)] for i in range(3)]
    return linalg.det(jac)


def cubic_discriminant_salmon(f: Polynomial, strategy: str = "cofactor") -> Polynomial:
    """Discriminant of a plane cubic as a 6 x 6 determinant.

    Rows 1-3: quadric coefficient vectors of f_x, f_y, f_z.
    Rows 4-6: quadric coefficient vectors of F_x, F_y, F_z, where F is
    the determinant of the Hessian matrix of f.
    """
    if f.is_homogeneous(["x", "y", "z"]) != 3:
        raise InhomogeneousError("not a homogeneous cubic in (x, y, z)")
    rows = [quadric_coefficients(f.partial(n)) for n in ("x", "y", "z")]
    big_f = hessian_determinant(f)
    rows += [quadric_coefficients(big_f.partial(n)) for n in ("x", "y", "z")]
    return _det_dispatch(rows, strategy)


def cubic_discriminant_iterated(f: Polynomial, strategy: str = "auto") -> Polynomial:
    """Iterated-resultant route to the cubic discriminant (a multiple).

    Res_y(Res_x(f_x, f_y), Res_x(f_y, f_z)) evaluated at z = 1; the
    6 x 6 determinant divides this up to integer content.
    """
    if f.is_homogeneous(["x", "y", "z"]) != 3:
        raise InhomogeneousError("not a homogeneous cubic in (x, y, z)")
    fx, fy, fz = (f.partial(n) for n in ("x", "y", "z"))
    r1 = sylvester_resultant(fx, fy, "x", strategy)
    r2 = sylvester_resultant(fy, fz, "x", strategy)
    r3 = sylvester_resultant(r1, r2, "y", strategy)
    return r3.substitute("z", 1)


def eliminate_chain(
    polys: Sequence[Polynomial], names: Sequence[str], strategy: str = "auto"
) -> Polynomial:
    """Eliminate one variable per level by adjacent-pair resultants.

    Level i maps [p_0, ..., p_r] to [Res(p_0, p_1), ..., Res(p_{r-1}, p_r)]
    in names[i]; requires len(polys) == len(names) + 1 so the chain ends
    in a single polynomial.  A resultant vanishing identically raises
    DegenerateChainError carrying the level, pair, and variable.
    """
    if len(polys) != len(names) + 1:
        raise EliminationError("chain needs exactly one more polynomial than variables")
    level = list(polys)
    for li, name in enumerate(names):
        nxt = []
        for i in range(len(level) - 1):
            r = sylvester_resultant(level[i], level[i + 1], name, strategy)
            if r.is_zero():
                raise DegenerateChainError(li, i, name)
            nxt.append(r)
        level = nxt
    return level[0]
