"""Command-line front end.

Three subcommands:

  compute  run one configuration pipeline and print/serialize the result
  graphs   enumerate configuration-graph classes for a given degree
  verify   run a named verification suite and report machine-readable
           pass/fail counters

Exit codes: 0 success (and, for verify, all checks passed); 1 usage or
input error; 2 degenerate configuration (identically-zero discriminant).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import graphs as graphmod
from . import linalg, pipelines
from .elimination import (
    binary_discriminant,
    cubic_discriminant_iterated,
    cubic_discriminant_salmon,
)
from .kummer import KummerPlane, monomial_basis
from .pipelines import (
    DegenerateConfigurationError,
    PipelineError,
    humbert_identity_delta5,
)
from .polynomials import Polynomial


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------
# compute

def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}")


def _parse_sets(items: list[str]) -> dict[str, Fraction]:
    out: dict[str, Fraction] = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--set expects a<i>=<rational>, got {item!r}")
        out[name.strip()] = _parse_rational(value.strip())
    return out


def _normalize_label(label: str) -> str:
    """Accept '5,1', '(5,1)', '9,0b', '(9,0)a', '7,2a' and so on."""
    s = label.strip().replace(" ", "").strip("()")
    suffix = ""
    if s and s[-1] in "ab":
        suffix = s[-1]
        s = s[:-1].rstrip(")")
    s = s.strip("()")
    parts = s.split(",")
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise UsageError(f"unrecognized configuration label: {label!r}")
    return f"({parts[0]},{parts[1]}){suffix}"


def _run_pipeline(label: str, spec, seed: int, full_symbolic: bool):
    if label == "(5,1)":
        return pipelines.compute_51(spec)
    if label == "(4,2)":
        return pipelines.compute_42(spec)
    if label == "(3,3)":
        return pipelines.compute_33(spec)
    if label in ("(9,0)a", "(9,0)b"):
        return pipelines.compute_90(label[-1], spec, full_symbolic)
    if label == "(9,0)":
        raise UsageError("(9,0) needs an a/b suffix: (9,0)a is bipartite, (9,0)b is not")
    if label == "(8,1)":
        return pipelines.compute_81(seed, spec, full_symbolic)
    if label in ("(7,2)a", "(7,2)b"):
        return pipelines.compute_72(label[-1], spec, seed, full_symbolic)
    if label == "(7,2)":
        raise UsageError("(7,2) needs an a/b suffix")
    if label == "(6,3)":
        return pipelines.compute_63(spec, seed, full_symbolic)
    if label in ("(5,4)", "(4,5)", "(3,6)"):
        k = int(label[1])
        return pipelines.compute_generic_cubic(k, None, spec, seed, full_symbolic)
    raise UsageError(f"no pipeline for configuration {label}")


def cmd_compute(args) -> int:
    label = _normalize_label(args.config)
    spec = _parse_sets(args.set or [])
    try:
        eq = _run_pipeline(label, spec, args.seed, args.full_symbolic)
    except DegenerateConfigurationError as exc:
        print(f"degenerate configuration: {exc}", file=sys.stderr)
        return 2
    except (PipelineError, pipelines.SpecializationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        text = json.dumps(eq.to_json_dict(), indent=2, sort_keys=True)
    else:
        lines = [
            f"config: {eq.config_label}",
            f"delta: {eq.delta}",
        ]
        if eq.specialization:
            fixed = ", ".join(f"{k} = {v}" for k, v in sorted(eq.specialization.items()))
            lines.append(f"specialization: {fixed}")
        lines.append(f"equation: {eq.equation.to_text()}")
        for entry in eq.normalization_log:
            lines.append(f"normalization: {json.dumps(entry, sort_keys=True)}")
        text = "\n".join(lines)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


# ---------------------------------------------------------------------
# graphs

def cmd_graphs(args) -> int:
    d = args.degree
    if d < 1:
        raise UsageError("--degree must be positive")
    if d >= 4 and not args.allow_multi_edges:
        raise UsageError(
            f"degree {d} requires multi-edges between distinct vertices;"
            " pass --allow-multi-edges for a best-effort enumeration"
        )
    classes = graphmod.enumerate_classes(d, allow_multi_edges=args.allow_multi_edges)
    doc = [
        {
            "label": c.label,
            "edges": [list(e) for e in c.representative.edges],
            "loops": list(c.representative.loops),
            "count": c.count,
            "delta": c.delta,
            "admissible": c.admissible,
            "pipeline_supported": c.pipeline_supported,
        }
        for c in classes
    ]
    print(json.dumps(doc, indent=2))
    return 0


# ---------------------------------------------------------------------
# verify

def _random_abc(rng: random.Random) -> dict[str, Fraction]:
    while True:
        vals = [Fraction(rng.randint(-50, 50), rng.randint(1, 20)) for _ in range(3)]
        if any(v in (0, 1) for v in vals):
            continue
        if len(set(vals)) != 3:
            continue
        return {"a1": vals[0], "a2": vals[1], "a3": vals[2]}


def verify_delta5(args) -> list[dict]:
    checks = []
    eq = pipelines.compute_51().equation
    ident = humbert_identity_delta5(("a3", "a2", "a1")).primitive()
    divisible = ident.divides(eq)
    checks.append({"name": "identity divides equation", "pass": divisible})
    quotient_ok = False
    if divisible:
        q = eq.divexact(ident)
        # the quotient must vanish only on the degenerate loci a_i = 0, 1
        # or a_i = a_j; here normalization has already stripped them all
        quotient_ok = q.is_constant()
        if not quotient_ok:
            cands = pipelines.degenerate_factor_candidates({})
            while not q.is_constant():
                for c in cands:
                    if c.divides(q):
                        q = q.divexact(c)
                        break
                else:
                    break
            quotient_ok = q.is_constant()
    checks.append({"name": "quotient supported on degenerate factors", "pass": quotient_ok})
    rng = random.Random(args.seed)
    samples = args.samples
    agree = 0
    for _ in range(samples):
        pt = _random_abc(rng)
        lhs = eq.eval_rational(pt) == 0
        rhs = ident.eval_rational(pt) == 0
        if lhs == rhs:
            agree += 1
    checks.append(
        {
            "name": f"random-point equivalence ({samples} samples)",
            "pass": agree == samples,
            "agree": agree,
        }
    )
    return checks


_CENSUS_EXPECTED = {
    2: {"(5,1)": 1, "(4,2)": 1, "(3,3)": 1, "(6,0)": 2, "(0,6)": 1},
    3: {
        "(9,0)": 2,
        "(8,1)": 1,
        "(7,2)": 2,
        "(6,3)": 1,
        "(5,4)": 1,
        "(4,5)": 1,
        "(3,6)": 1,
    },
}


def verify_census(args) -> list[dict]:
    checks = []
    for d, expected in _CENSUS_EXPECTED.items():
        classes = graphmod.enumerate_classes(d)
        got: dict[str, int] = {}
        for c in classes:
            base = c.label.rstrip("ab")
            got[base] = got.get(base, 0) + 1
        for tup, n in expected.items():
            checks.append(
                {
                    "name": f"d={d} classes {tup}",
                    "pass": got.get(tup, 0) == n,
                    "expected": n,
                    "got": got.get(tup, 0),
                }
            )
        if d == 3:
            nines = [c for c in classes if c.label.startswith("(9,0)")]
            bip = [c for c in nines if c.representative.is_bipartite()]
            checks.append({"name": "d=3 (9,0) has exactly one bipartite class", "pass": len(bip) == 1})
    return checks


def verify_degeneracy(args) -> list[dict]:
    try:
        pipelines.compute_90("a", {"a2": 2, "a3": 5})
        raised = False
    except DegenerateConfigurationError:
        raised = True
    return [{"name": "bipartite (9,0)a raises degeneracy", "pass": raised}]


def _random_pencil(rng: random.Random):
    """Two independent cubics through 8 random rational points."""
    basis = monomial_basis(3)
    while True:
        pts = set()
        while len(pts) < 8:
            pts.add((rng.randint(-9, 9), rng.randint(-9, 9), 1))
        rows = []
        for p in pts:
            rows.append(
                [Polynomial.const(p[0] ** i * p[1] ** j * p[2] ** k) for (i, j, k) in basis]
            )
        kernel = linalg.nullspace(rows)
        if len(kernel) != 2:
            continue
        out = []
        for vec in kernel:
            f = Polynomial.zero()
            for (i, j, k), c in zip(basis, vec):
                f = f + c * Polynomial.monomial({"x": i, "y": j, "z": k})
            out.append(f)
        return out[0], out[1]


def verify_pencil12(args) -> list[dict]:
    rng = random.Random(args.seed)
    good = 0
    trials = args.trials
    for _ in range(trials):
        f1, f2 = _random_pencil(rng)
        try:
            if pipelines.count_singular_in_pencil(f1, f2) == 12:
                good += 1
        except DegenerateConfigurationError:
            pass
    return [
        {
            "name": f"pencils with exactly 12 singular members ({trials} trials)",
            "pass": good == trials,
            "good": good,
        }
    ]


_HOMOGENEITY_LABELS = ("(9,0)b", "(8,1)", "(7,2)a", "(7,2)b", "(6,3)", "(5,4)", "(4,5)", "(3,6)")


def verify_homogeneity(args) -> list[dict]:
    checks = []
    spec = pipelines._validate_specialization({"a2": 2, "a3": 5})
    for label in _HOMOGENEITY_LABELS:
        kp = KummerPlane(spec)
        cfg, basis = pipelines._cubic_family(kp, label, args.seed)
        tnames = [f"t{i}" for i in range(len(basis))]
        f = sum(
            (Polynomial.variable(t) * b for t, b in zip(tnames, basis)), Polynomial()
        )
        d = cubic_discriminant_salmon(f)
        checks.append(
            {
                "name": f"{label} cubic discriminant homogeneous degree 12",
                "pass": (not d.is_zero()) and d.is_homogeneous(tnames) == 12,
            }
        )
        for line in cfg.loops:
            g, u, v = kp.restrict_to_line(f, line)
            t = binary_discriminant(g, u, v)
            checks.append(
                {
                    "name": f"{label} tangency discriminant on l_{line} degree 4",
                    "pass": (not t.is_zero()) and t.is_homogeneous(tnames) == 4,
                }
            )
    return checks


def verify_oracle_disc(args) -> list[dict]:
    rng = random.Random(args.seed)
    trials = max(args.trials, 20)
    ok = 0
    for _ in range(trials):
        f = Polynomial.zero()
        for (i, j, k) in monomial_basis(3):
            f = f + Polynomial.monomial({"x": i, "y": j, "z": k}, rng.randint(-9, 9))
        s = cubic_discriminant_salmon(f)
        it = cubic_discriminant_iterated(f)
        if s.is_zero() and it.is_zero():
            ok += 1
            continue
        if s.is_zero() or it.is_zero():
            continue
        sp, ip = s.primitive(), it.primitive()
        if sp == ip or sp == -ip or sp.divides(it):
            ok += 1
    return [
        {
            "name": f"Salmon vs iterated discriminant ({trials} cubics)",
            "pass": ok == trials,
            "agree": ok,
        }
    ]


_SUITES = {
    "delta5": verify_delta5,
    "census": verify_census,
    "degeneracy": verify_degeneracy,
    "pencil12": verify_pencil12,
    "homogeneity": verify_homogeneity,
    "oracle-disc": verify_oracle_disc,
}


def cmd_verify(args) -> int:
    fn = _SUITES.get(args.suite)
    if fn is None:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {sorted(_SUITES)}")
    checks = fn(args)
    passed = all(c["pass"] for c in checks)
    report = {
        "suite": args.suite,
        "pass": passed,
        "checks": checks,
        "passed": sum(1 for c in checks if c["pass"]),
        "total": len(checks),
    }
    print(json.dumps(report, indent=2))
    return 0 if passed else 1


# ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="humbert", description=__doc__)
    sub = p.add_subparsers(dest="command")

    c = sub.add_parser("compute", help="run one configuration pipeline")
    c.add_argument("--config", required=True, help="configuration label, e.g. 5,1 or 9,0b")
    c.add_argument("--set", action="append", metavar="a<i>=<rational>")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.add_argument("--full-symbolic", action="store_true")
    c.add_argument("--out", help="write output to this path instead of stdout")
    c.set_defaults(fn=cmd_compute)

    g = sub.add_parser("graphs", help="enumerate configuration-graph classes")
    g.add_argument("--degree", type=int, required=True)
    g.add_argument("--allow-multi-edges", action="store_true")
    g.set_defaults(fn=cmd_graphs)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", help=f"one of {', '.join(sorted(_SUITES))}")
    v.add_argument("--samples", type=int, default=1000)
    v.add_argument("--trials", type=int, default=20)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(fn=cmd_verify)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "fn", None):
        parser.print_help()
        return 1
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
