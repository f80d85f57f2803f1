"""End-to-end computation of Humbert modular equations per configuration.

Each pipeline builds the configured curve family over the Kummer plane,
imposes tangency through discriminants, eliminates the family
parameters by resultant cascades, and normalizes the result:
dehomogenize the surviving parameter, strip integer content, and
trial-divide by the known degenerate factors a_i, a_i - 1, a_i - a_j
(the loci where the genus-2 model itself collapses), logging every
removal.

Conic pipelines run fully symbolic.  Cubic pipelines require at least
one specialized branch point unless full_symbolic=True is forced; the
heavy resultants go through the evaluation/interpolation determinant
path, whose work estimate is capped by the HUMBERT_MEM_BUDGET_MB
environment variable.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .elimination import (
    BothConstantError,
    DegenerateChainError,
    binary_discriminant,
    cubic_discriminant_iterated,
    cubic_discriminant_salmon,
    sylvester_resultant,
)
from . import linalg
from .graphs import ConfigGraph, delta_of
from .kummer import KummerPlane
from .polynomials import NEG_INFINITY, Polynomial, poly, specialize, univariate_gcd


class PipelineError(Exception):
    pass


class DegenerateConfigurationError(PipelineError):
    """The configuration forces an identically-zero discriminant."""


class SpecializationError(PipelineError):
    pass


class BudgetError(PipelineError):
    """Estimated work exceeds the configured memory/computation budget."""


def memory_budget_mb() -> int:
    try:
        return int(os.environ.get("HUMBERT_MEM_BUDGET_MB", "512"))
    except ValueError:
        return 512


# The labeled representatives actually used by the pipelines.
# Census classes are isomorphic to these under vertex relabeling.
PIPELINE_CONFIGS: dict[str, ConfigGraph] = {
    "(5,1)": ConfigGraph(2, ((1, 2), (2, 3), (3, 4), (4, 5), (1, 5)), (6,)),
    "(4,2)": ConfigGraph(2, ((1, 2), (2, 3), (3, 4), (1, 4)), (5, 6)),
    "(3,3)": ConfigGraph(2, ((1, 2), (2, 3), (1, 3)), (4, 5, 6)),
    "(9,0)a": ConfigGraph(
        3, ((1, 4), (1, 5), (1, 6), (2, 4), (2, 5), (2, 6), (3, 4), (3, 5), (3, 6)), ()
    ),
    "(9,0)b": ConfigGraph(
        3, ((1, 2), (1, 3), (1, 6), (2, 3), (2, 5), (3, 4), (4, 5), (4, 6), (5, 6)), ()
    ),
    "(8,1)": ConfigGraph(
        3, ((1, 2), (1, 3), (1, 5), (2, 3), (2, 4), (3, 4), (4, 5), (5, 6)), (6,)
    ),
    "(7,2)a": ConfigGraph(
        3, ((1, 2), (1, 3), (1, 6), (2, 3), (2, 4), (3, 4), (4, 5)), (5, 6)
    ),
    "(7,2)b": ConfigGraph(
        3, ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4), (5, 6)), (5, 6)
    ),
    "(6,3)": ConfigGraph(3, ((1, 2), (1, 3), (1, 6), (2, 3), (2, 5), (3, 4)), (4, 5, 6)),
    "(5,4)": ConfigGraph(3, ((1, 2), (1, 3), (1, 4), (2, 5), (2, 6)), (3, 4, 5, 6)),
    "(4,5)": ConfigGraph(3, ((1, 6), (2, 6), (3, 6), (4, 5)), (1, 2, 3, 4, 5)),
    "(3,6)": ConfigGraph(3, ((1, 2), (3, 4), (5, 6)), (1, 2, 3, 4, 5, 6)),
}

COVER_BASES: dict[str, tuple[tuple[int, ...], ...]] = {
    "(4,2)": ((1, 3), (2, 4)),
    "(3,3)": ((1, 2), (2, 3), (1, 3)),
}


@dataclass
class ModularEquation:
    """A computed (and normalized) Humbert modular equation."""

    config_label: str
    delta: int
    equation: Polynomial
    specialization: dict[str, Fraction] = field(default_factory=dict)
    normalization_log: list[dict] = field(default_factory=list)
    seed: int | None = None

    def to_json_dict(self) -> dict:
        return {
            "config": self.config_label,
            "delta": self.delta,
            "specialization": {
                k: str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
                for k, v in self.specialization.items()
            },
            "equation": self.equation.to_json_dict(),
            "equation_text": self.equation.to_text(),
            "normalization_log": self.normalization_log,
            "seed": self.seed,
        }


def _validate_specialization(values: Mapping[str, Fraction | int] | None) -> dict[str, Fraction]:
    out = {}
    for k, v in (values or {}).items():
        if k not in ("a1", "a2", "a3"):
            raise SpecializationError(f"cannot specialize {k!r}; only a1, a2, a3")
        v = Fraction(v)
        if v in (0, 1):
            raise SpecializationError(
                f"{k} = {v} is excluded: branch points must avoid 0, 1, infinity"
            )
        out[k] = v
    if len(set(out.values())) != len(out):
        raise SpecializationError("specialized branch points must be pairwise distinct")
    return out


def degenerate_factor_candidates(specialization: Mapping[str, Fraction]) -> list[Polynomial]:
    """a_i, a_i - 1, a_i - a_j with the specialization applied; constant
    results are dropped (their contribution lands in the content)."""
    names = ("a1", "a2", "a3")
    symbolic = []
    for n in names:
        a = Polynomial.variable(n)
        symbolic += [a, a - 1]
    for i in range(3):
        for j in range(i + 1, 3):
            symbolic.append(Polynomial.variable(names[i]) - Polynomial.variable(names[j]))
    out = []
    for f in symbolic:
        g, _ = specialize(f, specialization)
        if not g.is_constant():
            out.append(g.primitive())
    return out


def normalize(
    p: Polynomial,
    specialization: Mapping[str, Fraction],
    log: list[dict],
    label: str = "",
) -> Polynomial:
    """Primitive part after stripping logged degenerate factors."""
    if p.is_zero():
        raise DegenerateConfigurationError(
            f"{label}: elimination produced the zero polynomial"
        )
    content, p = p.content_and_primitive()
    if content != 1:
        log.append({"kind": "content", "value": str(content)})
    for f in degenerate_factor_candidates(specialization):
        mult = 0
        while True:
            try:
                q = p.divexact(f)
            except Exception:
                break
            p = q
            mult += 1
        if mult:
            log.append({"kind": "degenerate_factor", "factor": f.to_text(), "multiplicity": mult})
    content, p = p.content_and_primitive()
    if content != 1:
        log.append({"kind": "content", "value": str(content)})
    return p


def _dehomogenize(p: Polynomial, name: str, log: list[dict]) -> Polynomial:
    if p.degree_in(name) is not NEG_INFINITY and p.degree_in(name) > 0:
        p = p.substitute(name, 1)
    log.append({"kind": "dehomogenize", "var": name})
    return p


def _chain_with_collapse(
    polys: Sequence[Polynomial],
    names: Sequence[str],
    log: list[dict],
    strategy: str = "auto",
    strip_candidates: Sequence[Polynomial] = (),
) -> Polynomial:
    """Adjacent-pair resultant cascade, one variable per level.

    Members free of the level's variable carry no information about it:
    pairing one with a member that does contain the variable collapses
    the resultant to a pure power of the free member, and pairing two
    such copies later yields an identically zero resultant.  Each level
    therefore pairs only the members that contain the variable and
    passes the variable-free members through unchanged (logged).  Either
    way the level shrinks by exactly one, so the cascade ends with a
    single polynomial."""
    if len(polys) != len(names) + 1:
        raise PipelineError("chain needs exactly one more polynomial than variables")
    level = list(polys)
    deferred: list[Polynomial] = []
    for li, name in enumerate(names):
        level = [
            _strip_elim_content(p, name, li, log, deferred) for p in level
        ]
        for i, p in enumerate(level):
            if p.is_zero():
                raise DegenerateChainError(li, i, name)
        have = []
        free = []
        for p in level:
            d = p.degree_in(name)
            d = -1 if d is NEG_INFINITY else d
            (have if d >= 1 else free).append(p)
        if not have:
            raise BothConstantError(
                f"chain level {li}: no member involves {name!r}"
            )
        if free:
            log.append(
                {
                    "kind": "passed_through",
                    "level": li,
                    "var": name,
                    "count": len(free),
                }
            )
        if len(have) == 1:
            # A single equation in the variable is generically solvable,
            # so its projection imposes no condition; the carried members
            # alone describe the image.
            log.append({"kind": "solvable_dropped", "level": li, "var": name})
            level = free
            continue
        nxt = []
        for i in range(len(have) - 1):
            p, q = have[i], have[i + 1]
            try:
                r = sylvester_resultant(p, q, name, strategy)
            except linalg.BudgetExceededError as exc:
                raise BudgetError(f"chain level {li}, pair {i}: {exc}") from exc
            if r.is_zero():
                raise DegenerateChainError(li, i, name)
            nxt.append(_strip_intermediate(r, li, i, log, strip_candidates))
        level = nxt + free
    result = level[0]
    # multiply stripped elimination contents back in: each was a factor
    # of some intermediate, so its zero set may carry solutions; one
    # power suffices to preserve the vanishing locus
    for g in deferred:
        result = result * g
    return result


def _strip_elim_content(
    p: Polynomial, name: str, level: int, log: list[dict], deferred: list[Polynomial]
) -> Polynomial:
    """Divide out the content of ``p`` w.r.t. the variable about to be
    eliminated (the gcd of its coefficient polynomials), when that
    content is computable (coefficients in at most one variable).

    Res(g*f, q) = g^deg(q) * Res(f, q) for g free of the variable, so
    the content only rescales later resultants; it is appended to
    ``deferred`` and multiplied back into the final chain result."""
    coeffs = [c for c in p.coefficients_in(name).values() if not c.is_zero()]
    if len(coeffs) <= 1:
        return p
    free_vars: set[str] = set()
    for c in coeffs:
        free_vars |= c.variables()
    if len(free_vars) != 1:
        return p
    g = coeffs[0]
    for c in coeffs[1:]:
        g = univariate_gcd(g, c)
        if g.is_constant():
            return p
    log.append(
        {
            "kind": "elim_content",
            "level": level,
            "var": name,
            "poly": g.to_text(),
        }
    )
    deferred.append(g)
    return p.divexact(g)


def _strip_intermediate(
    r: Polynomial, level: int, pair: int, log: list[dict], candidates: Sequence[Polynomial]
) -> Polynomial:
    """Primitive part with degenerate factors trial-divided out.

    Res(c*f, g) = c^deg(g) * Res(f, g), so removing degenerate-factor
    content between levels only changes later resultants by powers of
    the same factors, which the final normalization strips anyway; it
    keeps the intermediate degrees small enough to finish.  Every
    removal is logged with its chain position."""
    content, r = r.content_and_primitive()
    if content != 1:
        log.append({"kind": "content", "level": level, "pair": pair, "value": str(content)})
    for cand in candidates:
        mult = 0
        while cand.divides(r):
            r = r.divexact(cand)
            mult += 1
        if mult:
            log.append(
                {
                    "kind": "factor",
                    "level": level,
                    "pair": pair,
                    "poly": cand.to_text(),
                    "multiplicity": mult,
                }
            )
    return r


# ---------------------------------------------------------------------
# conic pipelines


def compute_51(specialization: Mapping[str, Fraction | int] | None = None) -> ModularEquation:
    """Delta = 5: unique conic through the pentagon points, tangency to l_6."""
    spec = _validate_specialization(specialization)
    kp = KummerPlane(spec)
    cfg = PIPELINE_CONFIGS["(5,1)"]
    pts = kp.points(cfg.edges)
    f = kp.interpolate_unique(2, pts)
    g, u, v = kp.restrict_to_line(f, 6)
    d = binary_discriminant(g, u, v)
    log: list[dict] = []
    eq = normalize(d, spec, log, "(5,1)")
    return ModularEquation("(5,1)", delta_of(2, 5), eq, spec, log)


def _conic_family_pipeline(
    label: str, specialization: Mapping[str, Fraction | int] | None, swap_covers: bool = False
) -> ModularEquation:
    spec = _validate_specialization(specialization)
    kp = KummerPlane(spec)
    cfg = PIPELINE_CONFIGS[label]
    pts = kp.points(cfg.edges)
    covers = COVER_BASES[label]
    if swap_covers:
        covers = tuple(reversed(covers))
    basis = kp.family_from_vertex_covers(2, pts, covers)
    tnames = [f"t{i}" for i in range(len(basis))]
    f = sum(
        (Polynomial.variable(t) * b for t, b in zip(tnames, basis)), Polynomial()
    )
    discs = []
    for line in cfg.loops:
        g, u, v = kp.restrict_to_line(f, line)
        discs.append(binary_discriminant(g, u, v))
    log: list[dict] = []
    # affine chart t0 = 1 up front, as in the cubic cascades; keeps the
    # elimination variables down to the a_i for the final resultant
    discs = [_dehomogenize(d, "t0", log) for d in discs]
    r = _chain_with_collapse(
        discs, tnames[1:], log, strip_candidates=degenerate_factor_candidates(spec)
    )
    eq = normalize(r, spec, log, label)
    return ModularEquation(label, delta_of(2, cfg.k), eq, spec, log)


def compute_42(
    specialization: Mapping[str, Fraction | int] | None = None, swap_covers: bool = False
) -> ModularEquation:
    """Delta = 8: pencil l1 l3 t0 + l2 l4 t1, tangency to l5 and l6."""
    return _conic_family_pipeline("(4,2)", specialization, swap_covers)


def compute_33(specialization: Mapping[str, Fraction | int] | None = None) -> ModularEquation:
    """Delta = 9: net t0 l1 l2 + t1 l2 l3 + t2 l1 l3, tangency to l4, l5, l6."""
    return _conic_family_pipeline("(3,3)", specialization)


# ---------------------------------------------------------------------
# cubic pipelines


def _require_specialized(spec: dict, full_symbolic: bool, label: str):
    if not spec and not full_symbolic:
        raise SpecializationError(
            f"{label}: fix at least one of a1, a2, a3 (or pass full_symbolic=True); "
            "the fully symbolic cubic eliminations exceed desk scale"
        )


def compute_90(
    variant: str = "b",
    specialization: Mapping[str, Fraction | int] | None = None,
    full_symbolic: bool = False,
    cross_check: bool = False,
) -> ModularEquation:
    """Delta = 8: unique cubic through nine points; its discriminant.

    The bipartite variant "a" always raises the degeneracy error: its
    nine points are the complete intersection of two line triples, so
    every cubic through them is a pencil member and the interpolation
    cannot single one out (and any member's discriminant vanishes).
    """
    if variant not in ("a", "b"):
        raise PipelineError("variant must be 'a' or 'b'")
    label = f"(9,0){variant}"
    spec = _validate_specialization(specialization)
    _require_specialized(spec, full_symbolic or variant == "a", label)
    kp = KummerPlane(spec)
    cfg = PIPELINE_CONFIGS[label]
    pts = kp.points(cfg.edges)
    from .kummer import DependentPointsError

    try:
        f = kp.interpolate_unique(3, pts)
    except DependentPointsError as e:
        raise DegenerateConfigurationError(f"{label}: {e}") from e
    d = cubic_discriminant_salmon(f)
    if d.is_zero():
        raise DegenerateConfigurationError(f"{label}: identically-zero cubic discriminant")
    log: list[dict] = []
    if cross_check:
        alt = cubic_discriminant_iterated(f)
        if not alt.is_zero():
            prim = d.primitive()
            if not prim.divides(alt):
                raise PipelineError(f"{label}: iterated route disagrees with the 6x6 determinant")
            log.append({"kind": "cross_check", "method": "iterated_resultant", "result": "divides"})
    eq = normalize(d, spec, log, label)
    return ModularEquation(label, delta_of(3, 9), eq, spec, log)


def compute_90b(
    specialization: Mapping[str, Fraction | int] | None = None, **kw
) -> ModularEquation:
    return compute_90("b", specialization, **kw)


# labels whose nets admit a structured (line-product / line-times-conic)
# basis; the rest fall back to auxiliary interpolation points
STRUCTURED_LABELS = ("(8,1)", "(7,2)a", "(7,2)b", "(6,3)")


def _cubic_family(kp: KummerPlane, label: str, seed: int):
    cfg = PIPELINE_CONFIGS[label]
    pts = kp.points(cfg.edges)
    if label in STRUCTURED_LABELS:
        from .kummer import InsufficientCoversError

        try:
            return cfg, kp.family_structured(pts, seed)
        except InsufficientCoversError:
            pass
    aux = 9 - len(pts)
    return cfg, kp.family_with_aux_points(3, pts, aux, seed)


def _cubic_pipeline(
    label: str,
    specialization: Mapping[str, Fraction | int] | None,
    seed: int = 0,
    full_symbolic: bool = False,
    dual_seed: bool = True,
) -> ModularEquation:
    spec = _validate_specialization(specialization)
    _require_specialized(spec, full_symbolic, label)
    cfg = PIPELINE_CONFIGS[label]
    uses_aux = label not in COVER_BASES
    log: list[dict] = []
    eq = _cubic_run(label, spec, seed, log)
    if uses_aux and dual_seed:
        log2: list[dict] = []
        eq2 = _cubic_run(label, spec, seed + 1, log2)
        stable = _stable_part(eq, eq2)
        if stable is not None and stable != eq:
            log.append(
                {
                    "kind": "seed_stable_part",
                    "seeds": [seed, seed + 1],
                    "note": "aux-point-dependent factors removed",
                }
            )
            eq = stable
    return ModularEquation(label, delta_of(3, cfg.k), eq, spec, log, seed=seed)


def _cubic_run(label: str, spec: dict, seed: int, log: list[dict]) -> Polynomial:
    kp = KummerPlane(spec)
    cfg, basis = _cubic_family(kp, label, seed)
    tnames = [f"t{i}" for i in range(len(basis))]
    f = sum((Polynomial.variable(t) * b for t, b in zip(tnames, basis)), Polynomial())
    # dehomogenize the family parameter up front; the cascade runs in the
    # affine chart t0 = 1, which is harmless since t0 = 0 only selects the
    # degenerate sub-family and every discriminant here is homogeneous
    f_aff = f.substitute("t0", 1)
    big_d = cubic_discriminant_salmon(f_aff)
    if big_d.is_zero():
        raise DegenerateConfigurationError(f"{label}: identically-zero cubic discriminant")
    discs = [big_d]
    for line in cfg.loops:
        discs.append(_tangency_condition(kp, cfg, f_aff, line, log))
    log.append({"kind": "dehomogenize", "var": "t0"})
    r = _chain_with_collapse(
        discs, tnames[1:], log, strip_candidates=degenerate_factor_candidates(spec)
    )
    return normalize(r, spec, log, label)


_COORD_INDEX = {"x": 0, "y": 1, "z": 2}


def _tangency_condition(kp, cfg, f_aff: Polynomial, line: int, log: list[dict]) -> Polynomial:
    """Even-tangency condition on a looped line: discriminant of the
    restriction after dividing out the forced roots at configuration
    points on that line.

    Every family member passes through those points, so the restriction
    has a t-independent linear factor per point; the full binary
    discriminant would share that factor across loop lines (making the
    cascade vanish identically, e.g. when one q_ij sits on two looped
    lines), while the tangency we impose must happen at a fresh point.
    """
    g, u, v = kp.restrict_to_line(f_aff, line)
    ui, vi = _COORD_INDEX[u], _COORD_INDEX[v]
    for (j, k) in cfg.edges:
        if line not in (j, k):
            continue
        pt = kp.point(j, k)
        ell = pt[vi] * Polynomial.variable(u) - pt[ui] * Polynomial.variable(v)
        g = g.divexact(ell)
        log.append({"kind": "forced_root", "line": line, "point": f"q{j}{k}"})
    d = g.is_homogeneous([u, v])
    if d is None or d < 2:
        raise DegenerateConfigurationError(
            f"residual restriction to l_{line} has degree < 2; no free tangency point"
        )
    return binary_discriminant(g, u, v)


def _stable_part(p: Polynomial, q: Polynomial) -> Polynomial | None:
    """Exact-division-stable common part of two runs (univariate only)."""
    if p == q:
        return p
    names = p.variables() | q.variables()
    if len(names) > 1:
        return None
    g = univariate_gcd(p, q)
    return None if g.is_constant() else g


def compute_81(
    seed: int = 0,
    specialization: Mapping[str, Fraction | int] | None = None,
    full_symbolic: bool = False,
    dual_seed: bool = True,
) -> ModularEquation:
    """Delta = 9: aux-point pencil through the eight points, tangency to l_6."""
    return _cubic_pipeline("(8,1)", specialization, seed, full_symbolic, dual_seed)


def compute_72(
    variant: str = "a",
    specialization: Mapping[str, Fraction | int] | None = None,
    seed: int = 0,
    full_symbolic: bool = False,
    dual_seed: bool = True,
) -> ModularEquation:
    """Delta = 12: net through seven points, tangency to l_5 and l_6."""
    if variant not in ("a", "b"):
        raise PipelineError("variant must be 'a' or 'b'")
    return _cubic_pipeline(f"(7,2){variant}", specialization, seed, full_symbolic, dual_seed)


def compute_63(
    specialization: Mapping[str, Fraction | int] | None = None,
    seed: int = 0,
    full_symbolic: bool = False,
    dual_seed: bool = True,
) -> ModularEquation:
    """Delta = 13: web through six points, tangency to l_4, l_5, l_6."""
    return _cubic_pipeline("(6,3)", specialization, seed, full_symbolic, dual_seed)


def compute_generic_cubic(
    k: int,
    config: ConfigGraph | None = None,
    specialization: Mapping[str, Fraction | int] | None = None,
    seed: int = 0,
    full_symbolic: bool = False,
) -> ModularEquation:
    """Uniform recipe for any admissible cubic configuration (3 <= k <= 9)."""
    if not 3 <= k <= 9:
        raise PipelineError(f"k = {k} out of range; admissible cubic tuples need 3 <= k <= 9")
    label = {9: "(9,0)b", 8: "(8,1)", 7: "(7,2)a", 6: "(6,3)", 5: "(5,4)", 4: "(4,5)", 3: "(3,6)"}[k]
    if config is not None:
        for cand, g in PIPELINE_CONFIGS.items():
            if g.degree == 3 and g.canonical_form() == config.canonical_form():
                label = cand
                break
        else:
            raise PipelineError("config is not isomorphic to a supported cubic class")
    if label.startswith("(9,0)"):
        return compute_90(label[-1], specialization, full_symbolic)
    return _cubic_pipeline(label, specialization, seed, full_symbolic)


def humbert_identity_delta5(names: Sequence[str] = ("a1", "a2", "a3")) -> Polynomial:
    """Humbert's classical Delta = 5 relation, 4*A*B - C^2, as one polynomial.

    ``names`` fixes which variable plays which role; the (5,1) pipeline
    output matches the relation with the roles of the first and third
    branch points exchanged, i.e. names=("a3", "a2", "a1").
    """
    a1, a2, a3 = (Polynomial.variable(n) for n in names)
    one = poly(1)
    A = a1**2 * a3 - a2**2 + a3**2 * (one - a1) + a2 - a3
    B = a1**2 * a2 * a3 - a1 * a2**2 * a3
    C = (
        a1**2 * a3 * (a2 + one)
        - a2**2 * (a1 + a3)
        + a2 * a3**2 * (one - a1)
        + a1 * (a2 - a3)
    )
    return poly(4) * A * B - C * C


def count_singular_in_pencil(f1: Polynomial, f2: Polynomial) -> int:
    """Singular members of the pencil f1 + t f2, counted with multiplicity.

    The degree in t of (the primitive part of) the pencil's cubic
    discriminant; 12 for generic pencils."""
    t = Polynomial.variable("t0")
    d = cubic_discriminant_salmon(f1 + t * f2)
    if d.is_zero():
        raise DegenerateConfigurationError("pencil has identically-zero discriminant")
    deg = d.primitive().degree_in("t0")
    return int(deg)
