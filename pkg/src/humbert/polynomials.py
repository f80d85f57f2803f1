"""Exact sparse multivariate polynomial arithmetic over the integers.

A polynomial is a dict mapping packed monomials to arbitrary-precision
integer coefficients.  The variable set is fixed and ordered:

    x, y, z            plane coordinates
    a1, a2, a3, a4     branch-point parameters
    t0 .. t14          family parameters

A monomial packs all 22 exponents into a single int, 20 bits per
variable, so monomial multiplication is a single integer addition.
Zero coefficients are never stored; the zero polynomial is the empty
dict.  All operations are pure and instances are treated as immutable.
"""

from __future__ import annotations

import heapq
import json
import re
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Mapping

VARS: tuple[str, ...] = ("x", "y", "z", "a1", "a2", "a3", "a4") + tuple(
    f"t{i}" for i in range(15)
)
NVARS = len(VARS)
_VAR_INDEX = {name: i for i, name in enumerate(VARS)}

_SHIFT = 20
_MASK = (1 << _SHIFT) - 1
_MAX_EXP = _MASK

NEG_INFINITY = float("-inf")


class PolynomialError(Exception):
    """Base error for polynomial operations."""


class MissingVariableError(PolynomialError):
    """An evaluation assignment does not cover a used variable."""

    def __init__(self, name: str):
        super().__init__(f"no value assigned to variable {name!r}")
        self.name = name


class ZeroPolynomialError(PolynomialError):
    """The operation is undefined for the zero polynomial."""


def var_id(name: str) -> int:
    try:
        return _VAR_INDEX[name]
    except KeyError:
        raise PolynomialError(f"unknown variable {name!r}") from None


def _unpack(key: int) -> tuple[int, ...]:
    return tuple((key >> (_SHIFT * i)) & _MASK for i in range(NVARS))


def _pack(exps: Iterable[int]) -> int:
    key = 0
    for i, e in enumerate(exps):
        if e:
            if e > _MAX_EXP:
                raise PolynomialError(f"exponent {e} exceeds supported range")
            key |= e << (_SHIFT * i)
    return key


def _total_degree_key(key: int) -> int:
    deg = 0
    while key:
        deg += key & _MASK
        key >>= _SHIFT
    return deg


def _grlex_sort_key(key: int) -> tuple:
    # Graded lexicographic: total degree first, then exponents in the
    # fixed variable order.
    return (_total_degree_key(key), _unpack(key))


def _grlex_heap_key(key: int) -> tuple:
    # min-heap entry ordered by descending graded-lex; the packed key
    # rides along in the last slot
    deg, exps = _grlex_sort_key(key)
    return (-deg, tuple(-e for e in exps), key)


class Polynomial:
    """Sparse polynomial in the fixed 22-variable ring over ZZ."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        self.terms: dict[int, int] = dict(terms) if terms else {}

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def const(cls, c: int) -> "Polynomial":
        return cls({0: c} if c else None)

    @classmethod
    def variable(cls, name: str) -> "Polynomial":
        return cls({1 << (_SHIFT * var_id(name)): 1})

    @classmethod
    def monomial(cls, exponents: Mapping[str, int], coeff: int = 1) -> "Polynomial":
        if not coeff:
            return cls()
        key = 0
        for name, e in exponents.items():
            if e < 0:
                raise PolynomialError("negative exponent")
            key |= e << (_SHIFT * var_id(name))
        return cls({key: coeff})

    # -- basic structure ---------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self) -> int:
        if not self.terms:
            return 0
        if len(self.terms) == 1 and 0 in self.terms:
            return self.terms[0]
        raise PolynomialError("polynomial is not constant")

    def __len__(self) -> int:
        return len(self.terms)

    def variables(self) -> set[str]:
        used: set[str] = set()
        for key in self.terms:
            i = 0
            while key:
                if key & _MASK:
                    used.add(VARS[i])
                key >>= _SHIFT
                i += 1
        return used

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.terms == ({0: other} if other else {})
        if isinstance(other, Polynomial):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- ring operations ---------------------------------------------

    def __add__(self, other) -> "Polynomial":
        if isinstance(other, int):
            other = Polynomial.const(other)
        elif not isinstance(other, Polynomial):
            return NotImplemented
        out = dict(self.terms)
        for key, c in other.terms.items():
            v = out.get(key, 0) + c
            if v:
                out[key] = v
            elif key in out:
                del out[key]
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        if isinstance(other, int):
            other = Polynomial.const(other)
        elif not isinstance(other, Polynomial):
            return NotImplemented
        out = dict(self.terms)
        for key, c in other.terms.items():
            v = out.get(key, 0) - c
            if v:
                out[key] = v
            elif key in out:
                del out[key]
        return Polynomial(out)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, int):
            if not other:
                return Polynomial()
            return Polynomial({k: c * other for k, c in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self.terms, other.terms
        if not a or not b:
            return Polynomial()
        if len(a) < len(b):
            a, b = b, a
        out: dict[int, int] = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                v = get(k, 0) + ca * cb
                if v:
                    out[k] = v
                else:
                    del out[k]
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise PolynomialError("negative power")
        result = Polynomial.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- calculus and substitution -------------------------------------

    def partial(self, name: str) -> "Polynomial":
        """Formal partial derivative with respect to one variable."""
        shift = _SHIFT * var_id(name)
        out: dict[int, int] = {}
        for key, c in self.terms.items():
            e = (key >> shift) & _MASK
            if e:
                out[key - (1 << shift)] = out.get(key - (1 << shift), 0) + c * e
        return Polynomial({k: c for k, c in out.items() if c})

    def coefficients_in(self, name: str) -> dict[int, "Polynomial"]:
        """Split into coefficients of powers of one variable.

        Returns {exponent: coefficient polynomial}, coefficients free of
        the named variable.
        """
        shift = _SHIFT * var_id(name)
        buckets: dict[int, dict[int, int]] = {}
        for key, c in self.terms.items():
            e = (key >> shift) & _MASK
            buckets.setdefault(e, {})[key - (e << shift)] = c
        return {e: Polynomial(t) for e, t in buckets.items()}

    def substitute(self, name: str, value: "Polynomial | int") -> "Polynomial":
        """Exact substitution of a polynomial (or integer) for a variable."""
        if isinstance(value, int):
            value = Polynomial.const(value)
        by_exp = self.coefficients_in(name)
        if list(by_exp) == [0]:
            return self
        result = Polynomial()
        power = Polynomial.const(1)
        prev_e = 0
        for e in sorted(by_exp):
            power = power * value ** (e - prev_e) if e != prev_e else power
            prev_e = e
            result = result + by_exp[e] * power
        return result

    def eval_rational(self, assignment: Mapping[str, Fraction | int]) -> Fraction:
        """Exact rational evaluation; every used variable must be assigned."""
        values: dict[int, Fraction] = {}
        for name, v in assignment.items():
            values[var_id(name)] = Fraction(v)
        total = Fraction(0)
        for key, c in self.terms.items():
            term = Fraction(c)
            i = 0
            k = key
            while k:
                e = k & _MASK
                if e:
                    if i not in values:
                        raise MissingVariableError(VARS[i])
                    term *= values[i] ** e
                k >>= _SHIFT
                i += 1
            total += term
        return total

    # -- degrees --------------------------------------------------------

    def degree_in(self, name: str):
        if not self.terms:
            return NEG_INFINITY
        shift = _SHIFT * var_id(name)
        return max((key >> shift) & _MASK for key in self.terms)

    def total_degree(self, names: Iterable[str] | None = None):
        if not self.terms:
            return NEG_INFINITY
        if names is None:
            return max(_total_degree_key(key) for key in self.terms)
        shifts = [_SHIFT * var_id(n) for n in names]
        return max(
            sum((key >> s) & _MASK for s in shifts) for key in self.terms
        )

    def is_homogeneous(self, names: Iterable[str] | None = None):
        """Common degree in the given variables, or None if inhomogeneous.

        The zero polynomial is homogeneous of every degree; returns 0.
        """
        if not self.terms:
            return 0
        if names is None:
            degs = {_total_degree_key(key) for key in self.terms}
        else:
            shifts = [_SHIFT * var_id(n) for n in names]
            degs = {
                sum((key >> s) & _MASK for s in shifts) for key in self.terms
            }
        return degs.pop() if len(degs) == 1 else None

    # -- normalization ---------------------------------------------------

    def leading_key(self) -> int:
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no leading term")
        return max(self.terms, key=_grlex_sort_key)

    def leading_coefficient(self) -> int:
        return self.terms[self.leading_key()]

    def content_and_primitive(self) -> tuple[int, "Polynomial"]:
        """Positive integer content and primitive part.

        The primitive part's leading coefficient (graded lex order) is
        positive; content * primitive = +-self.
        """
        if not self.terms:
            raise ZeroPolynomialError("content of the zero polynomial")
        content = 0
        for c in self.terms.values():
            content = gcd(content, c)
            if content == 1:
                break
        if self.leading_coefficient() < 0:
            content = -content
        prim = Polynomial({k: c // content for k, c in self.terms.items()})
        return abs(content), prim

    def primitive(self) -> "Polynomial":
        return self.content_and_primitive()[1]

    # -- exact division ----------------------------------------------------

    def divides(self, other: "Polynomial") -> bool:
        try:
            other.divexact(self)
            return True
        except PolynomialError:
            return False

    def divexact(self, divisor: "Polynomial") -> "Polynomial":
        """Exact division; raises PolynomialError when not divisible."""
        if divisor.is_zero():
            raise ZeroPolynomialError("division by zero polynomial")
        if self.is_zero():
            return Polynomial()
        if divisor.is_constant():
            d = divisor.constant_value()
            out = {}
            for k, c in self.terms.items():
                q, r = divmod(c, d)
                if r:
                    raise PolynomialError("not divisible (coefficient)")
                out[k] = q
            return Polynomial(out)
        dkey = divisor.leading_key()
        dexp = _unpack(dkey)
        dc = divisor.terms[dkey]
        rem = dict(self.terms)
        quo: dict[int, int] = {}
        # lazy max-heap over graded-lex order; stale entries are skipped
        heap = [_grlex_heap_key(k) for k in rem]
        heapq.heapify(heap)
        pushed = set(rem)
        while rem:
            lkey = None
            while heap:
                cand = heapq.heappop(heap)[-1]
                pushed.discard(cand)
                if cand in rem:
                    lkey = cand
                    break
            if lkey is None:
                raise PolynomialError("not divisible (remainder)")
            lexp = _unpack(lkey)
            if any(le < de for le, de in zip(lexp, dexp)):
                raise PolynomialError("not divisible (monomial)")
            q, r = divmod(rem[lkey], dc)
            if r:
                raise PolynomialError("not divisible (leading coefficient)")
            qkey = lkey - dkey
            quo[qkey] = q
            for k, c in divisor.terms.items():
                kk = k + qkey
                v = rem.get(kk, 0) - c * q
                if v:
                    rem[kk] = v
                    if kk not in pushed:
                        pushed.add(kk)
                        heapq.heappush(heap, _grlex_heap_key(kk))
                elif kk in rem:
                    del rem[kk]
        return Polynomial(quo)

    # -- serialization ---------------------------------------------------

    def sorted_terms(self) -> list[tuple[int, int]]:
        """Terms in descending graded-lex order, as (packed key, coeff)."""
        return sorted(self.terms.items(), key=lambda kv: _grlex_sort_key(kv[0]), reverse=True)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        pieces: list[str] = []
        for key, c in self.sorted_terms():
            factors: list[str] = []
            exps = _unpack(key)
            for i, e in enumerate(exps):
                if e == 1:
                    factors.append(VARS[i])
                elif e > 1:
                    factors.append(f"{VARS[i]}^{e}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)

    @classmethod
    def from_text(cls, text: str) -> "Polynomial":
        text = text.strip()
        if text in ("", "0"):
            return cls()
        token = re.compile(
            r"(?P<sign>[+-])?\s*(?P<body>(?:\d+|[A-Za-z]\w*(?:\^\d+)?)"
            r"(?:\s*\*\s*(?:\d+|[A-Za-z]\w*(?:\^\d+)?))*)\s*"
        )
        pos = 0
        result = cls()
        while pos < len(text):
            m = token.match(text, pos)
            if not m or m.end() == pos:
                raise PolynomialError(f"cannot parse polynomial text at {text[pos:pos+20]!r}")
            sign = -1 if m.group("sign") == "-" else 1
            coeff = sign
            exponents: dict[str, int] = {}
            for factor in re.split(r"\s*\*\s*", m.group("body")):
                if factor[0].isdigit():
                    coeff *= int(factor)
                else:
                    name, _, e = factor.partition("^")
                    exponents[name] = exponents.get(name, 0) + (int(e) if e else 1)
            result = result + cls.monomial(exponents, coeff)
            pos = m.end()
        return result

    def to_json_dict(self) -> dict:
        used = sorted(self.variables(), key=var_id)
        idx = [var_id(n) for n in used]
        terms = []
        for key, c in self.sorted_terms():
            exps = _unpack(key)
            terms.append({"c": str(c), "e": [exps[i] for i in idx]})
        return {"vars": used, "terms": terms}

    @classmethod
    def from_json_dict(cls, doc: dict) -> "Polynomial":
        names = doc["vars"]
        result: dict[int, int] = {}
        for term in doc["terms"]:
            key = _pack_named(names, term["e"])
            c = int(term["c"])
            if c:
                result[key] = result.get(key, 0) + c
        return cls({k: c for k, c in result.items() if c})

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "Polynomial":
        return cls.from_json_dict(json.loads(text))

    def __repr__(self) -> str:
        return f"Polynomial({self.to_text()})"

    __str__ = to_text


def _pack_named(names: list[str], exps: list[int]) -> int:
    key = 0
    for name, e in zip(names, exps):
        if e:
            key |= e << (_SHIFT * var_id(name))
    return key


def poly(text_or_int) -> Polynomial:
    """Convenience constructor from canonical text or an integer."""
    if isinstance(text_or_int, Polynomial):
        return text_or_int
    if isinstance(text_or_int, int):
        return Polynomial.const(text_or_int)
    return Polynomial.from_text(text_or_int)


def specialize(p: Polynomial, values: Mapping[str, Fraction | int]) -> tuple[Polynomial, int]:
    """Substitute rational values, clearing denominators.

    Returns (cleared polynomial, cleared factor): the polynomial equals
    factor * p(values) and the factor is a positive integer (a product
    of denominator powers).  Keeps the coefficient ring ZZ.
    """
    cleared = 1
    for name, value in values.items():
        value = Fraction(value)
        deg = p.degree_in(name)
        if deg is NEG_INFINITY or deg == 0:
            continue
        num, den = value.numerator, value.denominator
        shift = _SHIFT * var_id(name)
        out: dict[int, int] = {}
        for key, c in p.terms.items():
            e = (key >> shift) & _MASK
            k = key - (e << shift)
            v = out.get(k, 0) + c * num**e * den ** (deg - e)
            if v:
                out[k] = v
            elif k in out:
                del out[k]
        p = Polynomial(out)
        cleared *= den**deg
    return p, cleared


def univariate_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """GCD of two polynomials in (at most) one shared variable.

    Primitive pseudo-remainder sequence; result is primitive with a
    positive leading coefficient.
    """
    if p.is_zero():
        return q.primitive() if not q.is_zero() else Polynomial()
    if q.is_zero():
        return p.primitive()
    names = p.variables() | q.variables()
    if len(names) > 1:
        raise PolynomialError("univariate_gcd requires a single shared variable")
    if not names:
        return Polynomial.const(gcd(p.constant_value(), q.constant_value()))
    (name,) = names
    a, b = p.primitive(), q.primitive()
    if a.degree_in(name) < b.degree_in(name):
        a, b = b, a
    while not b.is_zero():
        r = _pseudo_remainder(a, b, name)
        a, b = b, (r.primitive() if not r.is_zero() else Polynomial())
    if a.is_constant():
        return Polynomial.const(1)
    return a.primitive()


def _pseudo_remainder(a: Polynomial, b: Polynomial, name: str) -> Polynomial:
    db = b.degree_in(name)
    lb = b.coefficients_in(name).get(db, Polynomial())
    v = Polynomial.variable(name)
    r = a
    while not r.is_zero() and r.degree_in(name) >= db:
        dr = r.degree_in(name)
        lr = r.coefficients_in(name)[dr]
        r = r * lb - b * lr * v ** (dr - db)
    return r
