"""The Kummer-plane line configuration and curve families through it.

The six lines dual to the Weierstrass points of
y^2 = x(x-1)(x-a1)(x-a2)(x-a3) are, in homogeneous coordinates [x:y:z],

    l_i: y + 2 a_i x + a_i^2 z   (i = 1, 2, 3)
    l_4: y + 2 x + z             (the branch point 1)
    l_5: y                       (the branch point 0)
    l_6: z                       (the branch point infinity)

and their 15 pairwise intersection points are, after clearing
denominators,

    q_ij  = [-(a_i + a_j) : 2 a_i a_j : 2]   (i < j <= 4, a_4 = 1)
    q_i5  = [-a_i : 0 : 2]
    q_i6  = [1 : -2 a_i : 0]
    q_56  = [1 : 0 : 0].

Conics and cubics through subsets of these points are produced either
by a single interpolation determinant (when the point count is one
less than the number of curve coefficients), from products of lines
over vertex covers, or by interpolating through extra random auxiliary
points.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd
from typing import Mapping, Sequence

from . import linalg
from .polynomials import Polynomial, specialize

Point = tuple[Polynomial, Polynomial, Polynomial]


class KummerError(Exception):
    pass


class DependentPointsError(KummerError):
    """The interpolation determinant vanished identically."""


class InsufficientCoversError(KummerError):
    pass


class FamilyIndependenceError(KummerError):
    """No independent family found within the reseed budget."""


# monomial bases in the fixed first-row order of the interpolation
# determinants: conics, then cubics
CONIC_MONOMIALS = ((2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (0, 1, 1), (1, 0, 1))
CUBIC_MONOMIALS = (
    (3, 0, 0),
    (0, 3, 0),
    (0, 0, 3),
    (2, 1, 0),
    (2, 0, 1),
    (1, 2, 0),
    (0, 2, 1),
    (1, 0, 2),
    (0, 1, 2),
    (1, 1, 1),
)


def monomial_basis(d: int) -> tuple[tuple[int, int, int], ...]:
    if d == 2:
        return CONIC_MONOMIALS
    if d == 3:
        return CUBIC_MONOMIALS
    raise KummerError(f"unsupported curve degree {d}")


def _normalize_point(coords: Sequence[Polynomial]) -> Point:
    """Scale constant projective coordinates to coprime integers."""
    if all(c.is_constant() for c in coords):
        vals = [c.constant_value() for c in coords]
        g = 0
        for v in vals:
            g = gcd(g, v)
        if g > 1:
            vals = [v // g for v in vals]
        return tuple(Polynomial.const(v) for v in vals)  # type: ignore[return-value]
    return tuple(coords)  # type: ignore[return-value]


class KummerPlane:
    """Lines and intersection points, optionally with parameters fixed.

    ``specialization`` maps parameter names (a1, a2, a3) to rational
    values; denominators are cleared so all data stays integral.  With
    ``symbolic_a4`` the fourth branch point is kept as the variable a4
    instead of the constant 1.
    """

    def __init__(
        self,
        specialization: Mapping[str, Fraction | int] | None = None,
        symbolic_a4: bool = False,
    ):
        self.specialization = {k: Fraction(v) for k, v in (specialization or {}).items()}
        self.symbolic_a4 = symbolic_a4
        for name, value in self.specialization.items():
            if name not in ("a1", "a2", "a3", "a4"):
                raise KummerError(f"cannot specialize {name!r}")
            if value in (0, 1):
                raise KummerError(f"{name} = {value} collides with a fixed branch point")
        vals = list(self.specialization.values())
        if len(set(vals)) != len(vals):
            raise KummerError("specialized branch points must be distinct")

    def _apply(self, p: Polynomial) -> Polynomial:
        """Specialize parameters and clear denominators (projectively safe
        only for forms used up to scale, which is all we need)."""
        if not self.symbolic_a4:
            p = p.substitute("a4", 1)
        if self.specialization:
            p, _ = specialize(p, self.specialization)
        return p

    def line(self, i: int) -> Polynomial:
        if i not in range(1, 7):
            raise KummerError(f"line index {i} out of range")
        x, y, z = (Polynomial.variable(n) for n in "xyz")
        if i == 5:
            return y
        if i == 6:
            return z
        a = Polynomial.variable(f"a{i}")
        return self._apply(y + 2 * a * x + a**2 * z)

    def lines(self) -> list[Polynomial]:
        return [self.line(i) for i in range(1, 7)]

    def point(self, i: int, j: int) -> Point:
        if i > j:
            i, j = j, i
        if not (1 <= i < j <= 6):
            raise KummerError(f"bad point indices ({i}, {j})")
        two = Polynomial.const(2)
        if j <= 4:
            ai = Polynomial.variable(f"a{i}")
            aj = Polynomial.variable(f"a{j}")
            coords = (-(ai + aj), 2 * ai * aj, two)
        elif j == 5:
            if i == 4:
                coords = (Polynomial.const(-1), Polynomial(), two)
            else:
                coords = (-Polynomial.variable(f"a{i}"), Polynomial(), two)
        else:  # j == 6
            if i == 5:
                coords = (Polynomial.const(1), Polynomial(), Polynomial())
            elif i == 4:
                coords = (Polynomial.const(1), Polynomial.const(-2), Polynomial())
            else:
                coords = (Polynomial.const(1), -2 * Polynomial.variable(f"a{i}"), Polynomial())
        # a common denominator-clearing factor keeps the point projective
        applied = self._apply_point(coords)
        return _normalize_point(applied)

    def _apply_point(self, coords: Sequence[Polynomial]) -> list[Polynomial]:
        from math import lcm

        if not self.symbolic_a4:
            coords = [c.substitute("a4", 1) for c in coords]
        if not self.specialization:
            return list(coords)
        # clear denominators jointly so the point stays projective
        cleared = [specialize(c, self.specialization) for c in coords]
        common = lcm(*(f for _, f in cleared))
        return [p * (common // f) for p, f in cleared]

    def points(self, pairs: Sequence[tuple[int, int]]) -> list[Point]:
        return [self.point(i, j) for i, j in pairs]

    def evaluate_at_point(self, f: Polynomial, pt: Point) -> Polynomial:
        """Substitute projective coordinates for (x, y, z)."""
        out = Polynomial()
        for ex, cx in f.coefficients_in("x").items():
            for ey, cy in cx.coefficients_in("y").items():
                for ez, cz in cy.coefficients_in("z").items():
                    out = out + cz * pt[0] ** ex * pt[1] ** ey * pt[2] ** ez
        return out

    def incident(self, i: int, j: int, k: int) -> bool:
        """Does q_jk lie on l_i?"""
        return self.evaluate_at_point(self.line(i), self.point(j, k)).is_zero()

    # -- curve construction -------------------------------------------

    def interpolation_matrix(
        self, d: int, points: Sequence[Point]
    ) -> list[list[Polynomial]]:
        basis = monomial_basis(d)
        if len(points) != len(basis) - 1:
            raise KummerError(
                f"degree {d} interpolation needs {len(basis) - 1} points, got {len(points)}"
            )
        x, y, z = (Polynomial.variable(n) for n in "xyz")
        first = [x**e[0] * y**e[1] * z**e[2] for e in basis]
        rows = [first]
        for pt in points:
            rows.append([pt[0] ** e[0] * pt[1] ** e[1] * pt[2] ** e[2] for e in basis])
        return rows

    def interpolate_unique(self, d: int, points: Sequence[Point]) -> Polynomial:
        """The curve of degree d through (d+1)(d+2)/2 - 1 points, as the
        expansion of the interpolation determinant along its first row."""
        rows = self.interpolation_matrix(d, points)
        f = linalg.det(rows, cofactor_threshold=len(rows))
        if f.is_zero():
            raise DependentPointsError(
                f"the {len(points)} points admit no unique degree-{d} curve"
            )
        return f

    def cover_basis_member(self, cover: Sequence[int]) -> Polynomial:
        out = Polynomial.const(1)
        for i in cover:
            out = out * self.line(i)
        return out

    def family_from_vertex_covers(
        self,
        d: int,
        points: Sequence[Point],
        covers: Sequence[Sequence[int]],
        seed: int = 0,
    ) -> list[Polynomial]:
        """A spanning family of degree-d curves through the points, each
        member a product of lines over a vertex cover of size d."""
        needed = len(monomial_basis(d)) - len(points)
        members = []
        for cover in covers:
            if len(cover) != d:
                raise KummerError(f"cover {cover} does not have size {d}")
            g = self.cover_basis_member(cover)
            for pt in points:
                if not self.evaluate_at_point(g, pt).is_zero():
                    raise KummerError(f"cover member {cover} misses a configuration point")
            members.append(g)
        basis = _independent_subset(members, needed, seed)
        if basis is None:
            raise InsufficientCoversError(
                f"vertex covers span fewer than {needed} independent members"
            )
        return basis

    def family_with_aux_points(
        self,
        d: int,
        points: Sequence[Point],
        aux_count: int,
        seed: int = 0,
        reseed_budget: int = 8,
    ) -> list[Polynomial]:
        """A spanning family of degree-d curves through shared points.

        Each member interpolates the shared points plus ``aux_count``
        fresh random rational auxiliary points, chosen off the six lines;
        member count is (number of curve coefficients) - (shared points).
        Independence is certified by the rank of the coefficient matrix
        at a random rational parameter specialization; dependent draws
        are reseeded up to ``reseed_budget`` times.
        """
        n_coeffs = len(monomial_basis(d))
        if len(points) + aux_count != n_coeffs - 1:
            raise KummerError(
                f"shared points + aux points must total {n_coeffs - 1} per member"
            )
        member_count = n_coeffs - len(points)
        rng = random.Random(seed)
        for attempt in range(reseed_budget + 1):
            members = []
            try:
                for _ in range(member_count):
                    aux = [self._random_point_off_lines(rng) for _ in range(aux_count)]
                    members.append(self.interpolate_unique(d, list(points) + aux))
            except DependentPointsError:
                continue
            if _independent_subset(members, member_count, rng.randrange(1 << 30)) is not None:
                return members
        raise FamilyIndependenceError(
            f"no independent family of {member_count} members in {reseed_budget + 1} attempts"
        )

    def joining_line(self, p: Point, q: Point) -> Polynomial:
        """The line through two distinct projective points (cross product)."""
        coeffs = (
            p[1] * q[2] - p[2] * q[1],
            p[2] * q[0] - p[0] * q[2],
            p[0] * q[1] - p[1] * q[0],
        )
        if all(c.is_zero() for c in coeffs):
            raise KummerError("joining line of coincident points")
        x, y, z = (Polynomial.variable(n) for n in "xyz")
        return (coeffs[0] * x + coeffs[1] * y + coeffs[2] * z).primitive()

    def family_structured(
        self, points: Sequence[Point], seed: int = 0
    ) -> list[Polynomial]:
        """A spanning family of cubics through the points built from
        products of configuration lines, joining lines, and interpolated
        conics — no auxiliary points.

        Candidate members: line triples over vertex covers of the point
        set; and, for each configuration line, that line times a conic
        through the off-line points (the unique conic when five points
        remain, or a pair of joining lines when four remain).  Raises
        InsufficientCoversError when the candidates do not span.
        """
        needed = len(monomial_basis(3)) - len(points)
        lines = {i: self.line(i) for i in range(1, 7)}
        on_line = {
            i: [self.evaluate_at_point(lines[i], pt).is_zero() for pt in points]
            for i in range(1, 7)
        }
        members: list[Polynomial] = []

        def add(candidate: Polynomial) -> None:
            if any(
                not self.evaluate_at_point(candidate, pt).is_zero() for pt in points
            ):
                return
            prim = candidate.primitive()
            if all(prim != m for m in members):
                members.append(prim)

        from itertools import combinations

        for trip in combinations(range(1, 7), 3):
            if all(any(on_line[i][n] for i in trip) for n in range(len(points))):
                add(lines[trip[0]] * lines[trip[1]] * lines[trip[2]])
        for i in range(1, 7):
            rem = [pt for n, pt in enumerate(points) if not on_line[i][n]]
            if len(rem) == 5:
                try:
                    conic = self.interpolate_unique(2, rem)
                except DependentPointsError:
                    continue
                add(lines[i] * conic)
            elif len(rem) == 4:
                for pairing in (
                    ((0, 1), (2, 3)),
                    ((0, 2), (1, 3)),
                    ((0, 3), (1, 2)),
                ):
                    try:
                        m1 = self.joining_line(rem[pairing[0][0]], rem[pairing[0][1]])
                        m2 = self.joining_line(rem[pairing[1][0]], rem[pairing[1][1]])
                    except KummerError:
                        continue
                    add(lines[i] * m1 * m2)
        basis = _independent_subset(members, needed, seed)
        if basis is None:
            raise InsufficientCoversError(
                f"structured members span fewer than {needed} dimensions"
            )
        return basis

    def _random_point_off_lines(self, rng: random.Random) -> Point:
        lines = self.lines()
        while True:
            coords = tuple(
                Polynomial.const(rng.randint(-40, 40)) for _ in range(3)
            )
            if all(c.constant_value() == 0 for c in coords):
                continue
            if any(self.evaluate_at_point(l, coords).is_zero() for l in lines):
                continue
            return _normalize_point(coords)

    # -- restriction to lines -------------------------------------------

    def restrict_to_line(self, f: Polynomial, i: int) -> tuple[Polynomial, str, str]:
        """Restrict a plane curve to l_i; returns (binary form, u, v).

        l_5 and l_6 set y = 0 and z = 0; the others are solved for y,
        giving a binary form in (x, z).
        """
        if i == 5:
            return f.substitute("y", 0), "x", "z"
        if i == 6:
            return f.substitute("z", 0), "x", "y"
        line = self.line(i)
        by_y = line.coefficients_in("y")
        c1 = by_y[1]
        if not c1.is_constant() or c1.constant_value() != 1:
            raise KummerError("line is not monic in y")
        rest = by_y.get(0, Polynomial())
        return f.substitute("y", -rest), "x", "z"


def _independent_subset(
    members: Sequence[Polynomial], needed: int, seed: int
) -> list[Polynomial] | None:
    """A subset of ``needed`` members independent over the fraction field,
    certified at a random rational specialization of the parameters
    (a nonzero specialized minor proves symbolic independence)."""
    if len(members) < needed:
        return None
    rng = random.Random(seed)
    params: set[str] = set()
    for m in members:
        params |= m.variables() - {"x", "y", "z"}
    assignment = {}
    for name in params:
        v = Fraction(rng.randint(2, 10**6), rng.randint(1, 997))
        assignment[name] = v
    basis_keys: dict[int, int] = {}
    vectors = []
    for m in members:
        spec, _ = specialize(m, assignment)
        vec: dict[int, Fraction] = {}
        for key, c in spec.terms.items():
            if key not in basis_keys:
                basis_keys[key] = len(basis_keys)
            vec[basis_keys[key]] = Fraction(c)
        vectors.append(vec)
    ncols = len(basis_keys)
    chosen: list[int] = []
    rows: list[list[Fraction]] = []
    for idx, vec in enumerate(vectors):
        cand = rows + [[vec.get(j, Fraction(0)) for j in range(ncols)]]
        if _rank_rational(cand) == len(cand):
            rows = cand
            chosen.append(idx)
            if len(chosen) == needed:
                return [members[i] for i in chosen]
    return None


def _rank_rational(rows: list[list[Fraction]]) -> int:
    m = [row[:] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [v * inv for v in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank
