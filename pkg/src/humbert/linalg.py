"""Fraction-free exact linear algebra over polynomial rings.

Determinants use the Bareiss single-step fraction-free elimination with
full pivoting (pivot chosen by minimal term count); every division in
the sweep is exact.  Small or pivot-starved matrices fall back to a
memoized cofactor expansion.  For matrices whose entries involve few
variables there is an evaluation/interpolation path: evaluate the
determinant at integer points, compute integer determinants, and
reconstruct the polynomial through Lagrange interpolation with a
rigorous per-variable degree bound (sum over rows of the maximal entry
degree, minimized against the column version).

Nullspaces are computed over the fraction field by Montante/Bareiss
Gauss-Jordan elimination; basis vectors are returned with polynomial
entries, normalized by integer content and sign.
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Sequence

from .polynomials import NEG_INFINITY, Polynomial

Matrix = Sequence[Sequence[Polynomial]]


class LinalgError(Exception):
    pass


def _as_poly(v) -> Polynomial:
    return Polynomial.const(v) if isinstance(v, int) else v


def _copy(m: Matrix) -> list[list[Polynomial]]:
    return [[_as_poly(e) for e in row] for row in m]


def det(m: Matrix, cofactor_threshold: int = 4) -> Polynomial:
    """Exact determinant of a square matrix of polynomials.

    Dispatches to cofactor expansion for small matrices, otherwise runs
    fraction-free Bareiss elimination with full pivoting.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise LinalgError("matrix is not square")
    if n == 0:
        return Polynomial.const(1)
    if n <= cofactor_threshold:
        return _det_cofactor(_copy(m))
    return _det_bareiss(_copy(m))


def _det_cofactor(m: list[list[Polynomial]]) -> Polynomial:
    n = len(m)
    cache: dict[tuple[int, int], Polynomial] = {}

    def minor(row: int, cols: int) -> Polynomial:
        # determinant of rows row..n-1 restricted to the column bitmask
        if row == n:
            return Polynomial.const(1)
        key = (row, cols)
        got = cache.get(key)
        if got is not None:
            return got
        total = Polynomial()
        sign = 1
        rest = cols
        while rest:
            low = rest & -rest
            j = low.bit_length() - 1
            entry = m[row][j]
            if entry:
                sub = minor(row + 1, cols ^ low)
                total = total + entry * sub if sign > 0 else total - entry * sub
            sign = -sign
            rest ^= low
        cache[key] = total
        return total

    return minor(0, (1 << n) - 1)


def _det_bareiss(m: list[list[Polynomial]]) -> Polynomial:
    n = len(m)
    sign = 1
    prev = Polynomial.const(1)
    for k in range(n - 1):
        best = None
        for i in range(k, n):
            for j in range(k, n):
                if m[i][j]:
                    t = len(m[i][j])
                    if best is None or t < best[0]:
                        best = (t, i, j)
                        if t == 1:
                            break
            if best is not None and best[0] == 1:
                break
        if best is None:
            return Polynomial()
        _, pi, pj = best
        if pi != k:
            m[k], m[pi] = m[pi], m[k]
            sign = -sign
        if pj != k:
            for row in m:
                row[k], row[pj] = row[pj], row[k]
            sign = -sign
        piv = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * piv - mik * m[k][j]).divexact(prev)
            m[i][k] = Polynomial()
        prev = piv
    d = m[n - 1][n - 1]
    return d if sign > 0 else -d


def det_int(m: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    n = len(m)
    if n == 0:
        return 1
    m = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                # column is zero below; try a column swap
                found = False
                for j in range(k + 1, n):
                    if any(m[i][j] for i in range(k, n)):
                        for row in m:
                            row[k], row[j] = row[j], row[k]
                        sign = -sign
                        found = True
                        break
                if not found:
                    return 0
                if not m[k][k]:
                    for i in range(k + 1, n):
                        if m[i][k]:
                            m[k], m[i] = m[i], m[k]
                            sign = -sign
                            break
        piv = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            if not mik and piv == prev:
                continue
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * piv - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = piv
    return sign * m[n - 1][n - 1]


def det_interpolated(m: Matrix, names: Sequence[str]) -> Polynomial:
    """Determinant by evaluation and interpolation in the given variables.

    Every matrix entry must involve only variables from ``names``.  The
    degree bound in each variable is the smaller of the row-sum and
    column-sum of maximal entry degrees, which bounds the degree of any
    determinant expansion term.
    """
    m = _copy(m)
    n = len(m)
    used = set()
    for row in m:
        for e in row:
            used |= e.variables()
    if not used <= set(names):
        raise LinalgError(f"entries involve {used - set(names)} outside interpolation variables")
    _check_budget(m, names)
    return _det_interp_rec(m, list(names))


class BudgetExceededError(LinalgError):
    """The interpolation grid estimate exceeds HUMBERT_MEM_BUDGET_MB."""


def _check_budget(m: Matrix, names: Sequence[str]) -> None:
    try:
        budget_mb = int(os.environ.get("HUMBERT_MEM_BUDGET_MB", "512"))
    except ValueError:
        budget_mb = 512
    nodes = 1
    for name in names:
        nodes *= _degree_bound(m, name) + 1
        if nodes > (budget_mb << 20) // 64:
            raise BudgetExceededError(
                f"interpolation grid needs >= {nodes} evaluations over {list(names)}; "
                f"raise HUMBERT_MEM_BUDGET_MB (currently {budget_mb}) to force this"
            )


def _degree_bound(m: list[list[Polynomial]], name: str) -> int:
    def d(e: Polynomial) -> int:
        deg = e.degree_in(name)
        return 0 if deg is NEG_INFINITY else deg

    n = len(m)
    row_sum = sum(max(d(e) for e in row) for row in m)
    col_sum = sum(max(d(m[i][j]) for i in range(n)) for j in range(n))
    return min(row_sum, col_sum)


def _det_interp_rec(m: list[list[Polynomial]], names: list[str]):
    if not names:
        return det_int([[e.constant_value() for e in row] for row in m])
    name = names[0]
    bound = _degree_bound(m, name)
    if bound == 0:
        sub = [[list(e.coefficients_in(name).values())[0] if e else Polynomial() for e in row] for row in m]
        inner = _det_interp_rec(sub, names[1:])
        return inner
    nodes = list(range(bound + 1))
    last = not names[1:]
    # per-entry coefficient split once; per-node Horner evaluation
    split = [
        [sorted(e.coefficients_in(name).items(), reverse=True) for e in row] for row in m
    ]
    values = []
    for t in nodes:
        mt = []
        for row in split:
            new_row = []
            for coeffs in row:
                if not coeffs:
                    new_row.append(0 if last else Polynomial())
                    continue
                deg = coeffs[0][0]
                if last:
                    acc = 0
                    prev = deg
                    for e, c in coeffs:
                        acc = acc * t ** (prev - e) + c.constant_value()
                        prev = e
                    acc *= t**prev
                else:
                    acc = Polynomial()
                    prev = deg
                    for e, c in coeffs:
                        acc = acc * t ** (prev - e) + c
                        prev = e
                    acc = acc * t**prev
                new_row.append(acc)
            mt.append(new_row)
        if last:
            values.append(det_int(mt))
        else:
            values.append(_det_interp_rec(mt, names[1:]))
    return _interpolate(name, nodes, values)


def _interpolate(name: str, nodes: list[int], values: list) -> Polynomial:
    """Exact Lagrange interpolation at the nodes 0..B; values are ints
    or Polynomials (in other variables) with integer coefficients.

    Uses the scaled form  B! * P(v) = sum_i y_i (-1)^(B-i) C(B,i) F(v)/(v-i)
    with F = prod (v - j), so all arithmetic stays in ZZ; the single
    exact division by B! happens coefficient-wise at the end.  This
    avoids rational normalization entirely, which dominates when the
    evaluated determinants are large integers.
    """
    B = len(nodes) - 1
    if nodes != list(range(B + 1)):
        raise LinalgError("interpolation nodes must be 0..B")
    if B == 0:
        v = values[0]
        return Polynomial.const(v) if isinstance(v, int) else v
    # binomial weights (-1)^(B-i) C(B,i)
    w = []
    c = 1
    for i in range(B + 1):
        w.append(-c if (B - i) % 2 else c)
        if i < B:
            c = c * (B - i) // (i + 1)
    fact = 1
    for i in range(2, B + 1):
        fact *= i
    # group scalar value sequences per monomial key of the inner variables
    per_key: dict[int, list[int]] = {}
    for i, v in enumerate(values):
        terms = ({0: v} if v else {}) if isinstance(v, int) else v.terms
        for key, coeff in terms.items():
            per_key.setdefault(key, [0] * (B + 1))[i] = coeff
    vkey = Polynomial.variable(name).leading_key()
    out: dict[int, int] = {}
    for key, ys in per_key.items():
        cs = [y * wi for y, wi in zip(ys, w)]
        num, _ = _lagrange_tree(cs, 0, B)
        for e, cval in enumerate(num):
            if not cval:
                continue
            q, r = divmod(cval, fact)
            if r:
                raise LinalgError("interpolation produced a non-integral coefficient")
            out[key + e * vkey] = out.get(key + e * vkey, 0) + q
    return Polynomial({k: v for k, v in out.items() if v})


def _lagrange_tree(cs: list[int], lo: int, hi: int) -> tuple[list[int], list[int]]:
    """Subproduct-tree combination for scaled Lagrange interpolation.

    Returns (N, F) with F = prod_{j in [lo,hi]} (v - j) and
    N = sum_{i in [lo,hi]} cs[i] * F / (v - i), as dense
    low-to-high coefficient lists.
    """
    if lo == hi:
        return [cs[lo]], [-lo, 1]
    mid = (lo + hi) // 2
    nl, fl = _lagrange_tree(cs, lo, mid)
    nr, fr = _lagrange_tree(cs, mid + 1, hi)
    n = _dense_add(_dense_mul(nl, fr), _dense_mul(nr, fl))
    return n, _dense_mul(fl, fr)


def _dense_add(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = a[:]
    for i, v in enumerate(b):
        out[i] += v
    return out


def _dense_mul(a: list[int], b: list[int]) -> list[int]:
    """Product of dense integer coefficient lists (low to high).

    Large products go through Kronecker substitution: coefficients are
    offset to non-negative, packed into one big integer each, multiplied
    with Python's native big-integer multiplication, and unpacked with
    an O(n) window-sum correction for the offset.
    """
    n, m = len(a), len(b)
    if n == 0 or m == 0:
        return []
    if n * m <= 1024:
        out = [0] * (n + m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        return out
    maxa = max(max(a), -min(a), 1)
    maxb = max(max(b), -min(b), 1)
    ka = 1 << maxa.bit_length()
    kb = 1 << maxb.bit_length()
    # slot bound: min(n,m) * (a_i + ka) * (b_j + kb) summed
    bound = min(n, m) * (2 * ka) * (2 * kb)
    sb = (bound.bit_length() + 8) // 8  # slot width in bytes
    pa = _pack([x + ka for x in a], sb)
    pb = _pack([x + kb for x in b], sb)
    raw = _unpack_slots(pa * pb, sb, n + m - 1)
    # corrections: (a+ka)(b+kb) = ab + ka*b + kb*a + ka*kb, summed over i+j=k
    pre_a = [0] * (n + 1)
    for i, x in enumerate(a):
        pre_a[i + 1] = pre_a[i] + x
    pre_b = [0] * (m + 1)
    for j, y in enumerate(b):
        pre_b[j + 1] = pre_b[j] + y
    out = []
    for k in range(n + m - 1):
        ilo, ihi = max(0, k - m + 1), min(k, n - 1)
        jlo, jhi = max(0, k - n + 1), min(k, m - 1)
        wa = pre_a[ihi + 1] - pre_a[ilo]
        wb = pre_b[jhi + 1] - pre_b[jlo]
        cnt = ihi - ilo + 1
        out.append(raw[k] - kb * wa - ka * wb - ka * kb * cnt)
    return out


def _pack(vals: list[int], slot_bytes: int) -> int:
    buf = bytearray(len(vals) * slot_bytes)
    for i, v in enumerate(vals):
        buf[i * slot_bytes : (i + 1) * slot_bytes] = v.to_bytes(slot_bytes, "little")
    return int.from_bytes(buf, "little")


def _unpack_slots(big: int, slot_bytes: int, count: int) -> list[int]:
    buf = big.to_bytes(count * slot_bytes + slot_bytes, "little")
    return [
        int.from_bytes(buf[i * slot_bytes : (i + 1) * slot_bytes], "little")
        for i in range(count)
    ]


def nullspace(m: Matrix) -> list[list[Polynomial]]:
    """Kernel basis of a matrix over the fraction field of the ring.

    Montante/Bareiss fraction-free Gauss-Jordan; returns vectors with
    polynomial entries, each normalized to integer-primitive form with
    a positive leading coefficient in its first nonzero entry.
    """
    m = _copy(m)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    col_perm = list(range(cols))
    prev = Polynomial.const(1)
    rank = 0
    for k in range(min(rows, cols)):
        best = None
        for i in range(rank, rows):
            for j in range(rank, cols):
                if m[i][j]:
                    t = len(m[i][j])
                    if best is None or t < best[0]:
                        best = (t, i, j)
        if best is None:
            break
        _, pi, pj = best
        if pi != rank:
            m[rank], m[pi] = m[pi], m[rank]
        if pj != rank:
            for row in m:
                row[rank], row[pj] = row[pj], row[rank]
            col_perm[rank], col_perm[pj] = col_perm[pj], col_perm[rank]
        piv = m[rank][rank]
        for i in range(rows):
            if i == rank:
                continue
            mik = m[i][rank]
            for j in range(rank + 1, cols):
                m[i][j] = (m[i][j] * piv - mik * m[rank][j]).divexact(prev)
            m[i][rank] = Polynomial()
        # Keep the processed diagonal equal to the current pivot (the
        # off-diagonal entries of earlier pivot columns are already 0).
        for c in range(rank):
            m[c][c] = (m[c][c] * piv).divexact(prev)
        prev = piv
        rank += 1
    d = prev  # det of the pivot block after full sweep
    basis: list[list[Polynomial]] = []
    for f in range(rank, cols):
        vec = [Polynomial() for _ in range(cols)]
        vec[col_perm[f]] = d
        for i in range(rank):
            vec[col_perm[i]] = -m[i][f]
        basis.append(_normalize_vector(vec))
    return basis


def _normalize_vector(vec: list[Polynomial]) -> list[Polynomial]:
    from math import gcd

    content = 0
    for p in vec:
        for c in p.terms.values():
            content = gcd(content, c)
        if content == 1:
            break
    if content == 0:
        return vec
    first = next(p for p in vec if p)
    if first.leading_coefficient() < 0:
        content = -content
    return [Polynomial({k: c // content for k, c in p.terms.items()}) for p in vec]
