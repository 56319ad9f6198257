"""Command-line driver: computations with check rows and line-oriented reports.

Every subcommand prints informational lines followed by CHECK rows of the
form ``name | citation | expected | computed | PASS``; the exit code is 0
exactly when every check passes.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import random
import re
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

from . import conicbundle as cb
from . import golden, lattices, pencils, picard
from .coords import change_coordinates, pull_back_point, random_unimodular
from .exactalg import PolyParseError, RationalPoly, loads_poly
from .singclass import (
    SingularityError,
    classify_singularity,
    find_singular_points,
    milnor_number,
    total_tjurina,
)

REPORT_HEADER = "# cubicmoduli report"
SEP = " | "


@dataclass(frozen=True)
class Check:
    name: str
    citation: str
    expected: str
    computed: str
    passed: bool

    def line(self) -> str:
        fields = [self.name, self.citation, self.expected, self.computed, "PASS" if self.passed else "FAIL"]
        return "CHECK " + SEP.join(_escape(f) for f in fields)


def _escape(text: str) -> str:
    return str(text).replace("\\", "\\\\").replace("|", "\\/").replace("\n", " ")


def _unescape(text: str) -> str:
    return re.sub(r"\\(.)", lambda m: "|" if m.group(1) == "/" else m.group(1), text)


def check(name: str, citation: str, expected, computed) -> Check:
    """A check passes iff the two values are equal (exact for rationals)."""
    return Check(name, citation, _show(expected), _show(computed), expected == computed)


def _show(value) -> str:
    if isinstance(value, (list, tuple)):
        return "(" + ", ".join(_show(v) for v in value) + ")"
    return str(value)


@dataclass
class RunReport:
    command: str
    argv: list[str]
    seed: int
    digest: str
    checks: list[Check] = field(default_factory=list)
    info: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failing(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_text(self) -> str:
        out = [
            REPORT_HEADER,
            f"command: {self.command}",
            f"argv: {json.dumps(self.argv)}",
            f"seed: {self.seed}",
            f"digest: {self.digest}",
        ]
        out += [f"INFO {line}" for line in self.info]
        out += [c.line() for c in self.checks]
        out.append(f"summary: {sum(c.passed for c in self.checks)}/{len(self.checks)} checks passed")
        out.append(f"elapsed: {self.elapsed:.3f}s")
        return "\n".join(out) + "\n"


def parse_report(text: str) -> RunReport:
    lines = text.splitlines()
    if not lines or lines[0] != REPORT_HEADER:
        raise ValueError("not a cubicmoduli report")
    head: dict[str, str] = {}
    checks: list[Check] = []
    info: list[str] = []
    for line in lines[1:]:
        if line.startswith("CHECK "):
            parts = [_unescape(p) for p in line[len("CHECK "):].split(SEP)]
            if len(parts) != 5 or parts[4] not in ("PASS", "FAIL"):
                raise ValueError(f"malformed check row: {line!r}")
            checks.append(Check(*parts[:4], parts[4] == "PASS"))
        elif line.startswith("INFO "):
            info.append(line[len("INFO "):])
        elif ": " in line:
            key, value = line.split(": ", 1)
            head[key] = value
    return RunReport(
        command=head["command"],
        argv=json.loads(head["argv"]),
        seed=int(head["seed"]),
        digest=head["digest"],
        checks=checks,
        info=info,
        elapsed=float(head.get("elapsed", "0").rstrip("s")),
    )


def read_report(path: str | Path) -> RunReport:
    return parse_report(Path(path).read_text())


# ---------------------------------------------------------------------------
# inputs


def read_cubic_text(source: str) -> str:
    """A polynomial file path, or the name of a packaged example such as ``fdelta.poly`` or ``A2``."""
    path = Path(source)
    if path.is_file():
        return path.read_text()
    name = golden.GOLDEN_FILES.get(source, source)
    try:
        return golden.read_text(name)
    except (FileNotFoundError, OSError):
        raise FileNotFoundError(f"no polynomial file or packaged example named {source!r}") from None


def load_cubic(source: str) -> RationalPoly:
    return loads_poly(read_cubic_text(source), golden.VARS)


def parse_points(text: str | None) -> list[tuple[Fraction, ...]] | None:
    """``grid`` (or nothing) means the built-in grid; otherwise ``a:b:c:d:e;...``."""
    if text is None or text == "grid":
        return None
    return [tuple(Fraction(c) for c in chunk.split(":")) for chunk in text.split(";") if chunk.strip()]


def _point(p) -> str:
    return "(" + ":".join(str(c) for c in p) + ")"


# ---------------------------------------------------------------------------
# sections: each returns (info lines, checks)

Section = tuple[list[str], list[Check]]


def _classical_root_count(name: str) -> int:
    total = 0
    for part in name.split("+"):
        kind, n = part[0], int(part[1:])
        total += {"A": n * (n + 1), "D": 2 * n * (n - 1)}.get(kind) or {6: 72, 7: 126, 8: 240}[n]
    return total


def section_roots(names: Sequence[str]) -> Section:
    info, checks = [], []
    for name in names:
        t0 = time.perf_counter()
        count = lattices.root_count(name)
        info.append(f"roots({name}) = {count} in {time.perf_counter() - t0:.3f}s")
        checks.append(check(f"roots {name}", "closed formula for simply laced root systems",
                            _classical_root_count(name), count))
    return info, checks


def section_borcherds() -> Section:
    led = lattices.borcherds_arithmetic()
    cubic = picard.ledger_cubic()
    info = [f"root counts {dict(led.root_counts)}", f"weight = {led.derivation['form_weight']} = {led.form_weight}"]
    info += [f"order on {k} = {led.derivation[k]} = {v}, ramification {led.ramification[k]}" for k, v in led.vanishing.items()]
    div = lattices.quotient_divisor(led)
    can = lattices.canonical_from_form(led)
    info += [f"div(phi) ~ {div}", f"K' = {can}"]
    checks = [
        check("borcherds weight", "12 plus half the E6 roots", 48, led.form_weight),
        check("alpha order", "half the roots of E6+A2 not in E6", 3, led.vanishing["Sigma'"]),
        check("beta order", "half the roots of E8 not in E6", 84, led.vanishing["H'"]),
        check("div(phi) cubic", "vanishing orders over ramification orders", cubic["L1'"], div),
        check("K' cubic", "ball-quotient Riemann-Hurwitz", cubic["K'"], can),
    ]
    g3 = lattices.genus3_ledger()
    g3_ledger = picard.ledger_genus3()
    checks += [
        check("div(phi) genus 3", "weight-18 form, orders 2 and 10", g3_ledger["L1'"], lattices.quotient_divisor(g3)),
        check("K' genus 3", "ball-quotient Riemann-Hurwitz, d = 6", g3_ledger["K'"], lattices.canonical_from_form(g3)),
    ]
    return info, checks


ALPHA_TABLE = (
    ("L0", "6/11", "19/176", "GIT polarization"),
    ("L1", "17/28", "19/112", "ball-quotient polarization"),
    ("L2", "13/8", "19/2", "Hodge class of the intermediate Jacobian"),
)


def parse_direction(text: str) -> dict[str, Fraction]:
    """``D_A1`` or a weighted sum such as ``D_A1+6*D_A2``."""
    out: dict[str, Fraction] = {}
    for term in text.replace(" ", "").split("+"):
        coeff, _, name = term.rpartition("*")
        out[name] = out.get(name, Fraction(0)) + Fraction(coeff or 1)
    return out


def section_divisors() -> Section:
    led = picard.ledger_cubic()
    info, checks = [], []
    K = led["K"]
    for name, alpha, beta, why in ALPHA_TABLE:
        p = picard.solve_alpha(K, led[name], "D_A1")
        info.append(f"K + {p.alpha} D_A1 = {p.beta} ({led[name]})")
        checks.append(check(f"alpha {name}", f"log-canonical model for the {why}",
                            (Fraction(alpha), Fraction(beta)), (p.alpha, p.beta)))
    Kr = led["K_refined"]
    for name, alpha, beta, why in ALPHA_TABLE[:2]:
        p = picard.solve_alpha_composite(Kr, led[f"{name}_refined"])
        checks.append(check(f"alpha {name} refined", f"{why} along D_A1 + 6 D_A2",
                            (Fraction(alpha), Fraction(beta)), (p.alpha, p.beta)))
    try:
        picard.solve_alpha_composite(Kr, led["L2_refined"])
        l2_verdict = "solvable"
    except picard.NoProportionalityError:
        l2_verdict = "no proportionality"
    checks.append(check("alpha L2 refined", "Hodge class is not proportional on the refined ledger",
                        "no proportionality", l2_verdict))
    checks.append(check("L2 projection", "refined Hodge class modulo exceptional divisors",
                        led["L2"], led["L2_refined"].project("modexc")))
    for name in ("K", "L0", "L1"):
        hat = {"K": "K'", "L0": "L0'", "L1": "L1'"}[name]
        checks.append(check(f"pullback {name}", "Sigma' to D_A1 and H' to H",
                            led[name], picard.pullback_modexc(led[hat])))
        checks.append(check(f"blow-up {name}", "Sigma' to D_A1 + 6 D_A2",
                            led[f"{name}_refined"], picard.blowup_pullback(led[hat])))
    checks.append(check("D_A2 multiplicity", "4 reflection hyperplanes of order 3 over a stabilizer of order 2",
                        Fraction(picard.SIGMA_A2_MULTIPLICITY), picard.reflection_multiplicity_check()))
    checks.append(check("K_git", "-(N+1) over the discriminant degree",
                        led["K_git"]["Sigma"], -pencils.canonical_ratio(3, 3)))
    checks.append(check("L0' H coefficient", "degree of the discriminant of binary duodecics",
                        Fraction(pencils.binary_discriminant_degree(12)), led["L0'"]["H'"]))
    return info, checks


def section_degrees(n: int, d: int) -> Section:
    deg = pencils.discriminant_degree(n, d)
    dim = pencils.parameter_space_dim(n, d)
    info = [
        f"discriminant degree (n+2)(d-1)^(n+1) = {n + 2}*{d - 1}^{n + 1} = {deg}",
        f"N+1 = binom(n+d+1, d) = binom({n + d + 1}, {d}) = {dim}",
        f"ratio (N+1)/deg = {pencils.canonical_ratio(n, d)}",
    ]
    checks = [check(f"degree ratio ({n},{d})", "ratio times degree recovers N+1",
                    Fraction(dim), pencils.canonical_ratio(n, d) * deg)]
    if (n, d) == (3, 3):
        checks += [
            check("discriminant degree (3,3)", "degree of the discriminant of cubic threefolds", 80, deg),
            check("parameter space (3,3)", "cubics in five variables", 35, dim),
            check("canonical ratio (3,3)", "K = -7/16 Sigma on the GIT quotient", Fraction(7, 16),
                  pencils.canonical_ratio(n, d)),
        ]
    return info, checks


def section_solve_l2() -> Section:
    info: list[str] = []
    audit = pencils.lambda_audit(3, 5)
    prym = pencils.prym_audit()
    info += [
        f"Lefschetz pencil of quintics: lambda = {audit.lambda_lefschetz}, delta = {audit.delta_lefschetz}, "
        f"kappa = {audit.kappa_lefschetz}",
        f"after base change: kappa(T) = {audit.kappa_T}, delta(T) = {audit.delta_T}, lambda(T) = {audit.lambda_T}",
        f"lambda(B) = lambda(T)/6 = {audit.lambda_B}",
        f"delta0 = {prym.delta0}, delta0u = {prym.delta0_u}, delta0r = (delta0 - delta0u)/2 = {prym.delta0_r}",
        f"lambda_eta = lambda - delta0r/4 = {prym.lambda_eta}",
    ]
    records = pencils.standard_records()
    for r in records:
        row = ", ".join(f"{k} = {r[k]}" for k in pencils.L2_BASIS)
        info.append(f"{r.name}: {row}; lambda = {r.lam} [{r.provenance.get('lambda', '')}]")
    l2 = pencils.solve_l2(records)
    info.append(f"L2 = {l2}")
    checks = [
        check("lambda(B) A2 pencil", "generalized Lefschetz pencil, n(d-1)(d-2)/2 - 1/6", Fraction(107, 6),
              audit.lambda_B),
        check("delta0r", "half the nodes on the ramified side", Fraction(32), prym.delta0_r),
        check("lambda_eta", "Prym Hodge class lambda - delta0r/4", Fraction(59, 6), prym.lambda_eta),
        check("Bernstein identity", "lambda_eta = lambda_tilde - lambda", prym.lambda_eta,
              prym.lambda_tilde - prym.lambda_B),
        check("hyperelliptic H", "forced by B.L0 = 0", Fraction(-2), records[1]["H"]),
        check("L2", "three test curves", picard.ledger_cubic()["L2_refined"], l2),
        check("L2 modexc", "Lefschetz and hyperelliptic curves only", picard.ledger_cubic()["L2"],
              pencils.solve_l2(records[:2], ("D_A1", "H"))),
    ]
    return info, checks


def section_table() -> Section:
    info: list[str] = []
    try:
        rows = pencils.boundary_table()
    except pencils.TableMismatchError as exc:
        return [str(exc)], [check("boundary table", "dimension bookkeeping", "agreement", "mismatch")]
    for r in rows:
        acc = r.abelian
        parts = f"prym {acc.prym_dim} + toric {acc.toric_rank} + tail {acc.tail_genus}" if acc else "-"
        rel = "<=" if r.limit_is_bound else "="
        info.append(f"{r.singularity}: curve {r.curve_moduli} {r.curve_moduli_dim}, tail {r.tail} {r.tail_dim}, "
                    f"{r.limit_description} {rel} {r.limit_dim_bound}; abelian {parts}")
    checks = [check("boundary dims", "moduli counts of curves and tails",
                    (9, 9, 9, 8, 6, 6, 4), tuple(r.limit_dim_bound for r in rows))]
    checks += [check(f"abelian dim {r.singularity}", "delta-invariant accounting", 5, r.abelian.total)
               for r in rows if r.abelian is not None]
    return info, checks


def _classify_all(f: RationalPoly, candidates=None):
    return [classify_singularity(f, p) for p in find_singular_points(f, candidates)]


def section_classify(f: RationalPoly, label: str, expected: list[str] | None, rng: random.Random,
                     changes: int, candidates=None) -> Section:
    reports = _classify_all(f, candidates)
    info = [f"{label}: {_point(r.point)} corank {r.hessian_corank} milnor {r.milnor_number} {r.label}"
            for r in reports]
    labels = sorted(r.label for r in reports)
    checks = []
    if expected is not None:
        checks.append(check(f"{label} labels", "classification of the singular points", sorted(expected), labels))
    try:
        tau = total_tjurina(f)
    except SingularityError:
        tau = "non-isolated"
    checks.append(check(f"{label} complete", "total Tjurina number equals the sum of Milnor numbers",
                        sum(r.milnor_number for r in reports if isinstance(r.milnor_number, int)), tau))
    stable = True
    for _ in range(changes):
        m = random_unimodular(len(f.variables), rng)
        g = change_coordinates(f, m)
        moved = sorted(classify_singularity(g, pull_back_point(m, r.point)).label for r in reports)
        stable &= moved == labels
    if changes:
        checks.append(check(f"{label} invariance", f"{changes} random unimodular changes", True, stable))
    return info, checks


def section_milnor() -> Section:
    checks = []
    for k in range(1, 6):
        f = loads_poly(f"x^{k + 1} + y^2", ("x", "y"))
        checks.append(check(f"milnor A{k}", "x^(k+1) + y^2 has Milnor number k", k, milnor_number(f)))
    return [], checks


AB_SAMPLES = ((1, 3), (2, 5), (Fraction(-1, 2), 1), (3, -7), (Fraction(5, 3), Fraction(2, 7)))


def section_singularities(rng: random.Random, changes: int = 20) -> Section:
    info, checks = section_classify(golden.f_delta(), "F_delta", ["D4"] * 3, rng, changes)
    for a, b in AB_SAMPLES:
        i, c = section_classify(golden.f_ab(a, b), f"F_({a},{b})", ["A5", "A5"], rng, changes)
        info += i
        checks += c
    i, c = section_milnor()
    return info, checks + c


def section_discriminant(f: RationalPoly, label: str, rng: random.Random, candidates=None,
                         expected_x: list[str] | None = None, perturb: bool = False,
                         trunc: int | None = None) -> Section:
    info, checks = section_classify(f, label, expected_x, rng, 0, candidates)
    x_labels = sorted(classify_singularity(f, p).label for p in find_singular_points(f, candidates))
    try:
        dec = cb.decompose_along_line(f)
        plane_candidates = None
        if candidates:
            plane_candidates = [cb.projected_point(p) for p in candidates if any(p[2:])]
        data = cb.discriminant_pair(dec, plane_candidates)
    except cb.ConicBundleError as exc:
        info.append(f"{label}: no conic bundle ({type(exc).__name__}: {exc})")
        return info, checks
    info += [f"l1 = {dec.l1}", f"l2 = {dec.l2}", f"l3 = {dec.l3}", f"q1 = {dec.q1}", f"q2 = {dec.q2}",
             f"f = {dec.f}", f"D = {data.D}", f"Q = {data.Q}"]
    v = data.nonspecial
    info.append(f"Q smooth: {v.q_smooth}; Q misses Sing(D): {v.q_misses_sing_d}")
    checks.append(check(f"{label} deg D", "determinant of the conic matrix", 5, data.D.degree()))
    if not v.nonspecial:
        info.append(f"{label}: the line is special; D labels and tangency skipped")
        return info, checks
    checks.append(check(f"{label} nonspecial", "Q smooth and missing Sing(D)", True, v.nonspecial))
    reports = cb.discriminant_labels(data)
    info += [f"D: {_point(r.point)} milnor {r.milnor_number} {r.label}" for r in reports]
    checks.append(check(f"{label} D labels", "singularities of D match those of X", x_labels,
                        sorted(r.label for r in reports)))
    checks.append(check(f"{label} D complete", "total Tjurina number of D", True,
                        cb.singular_points_complete(data.D, reports)))
    cert = cb.tangency_certificate(data, rng)
    info.append(f"tangency resultant = {cert.resultant_form}")
    checks.append(check(f"{label} tangency", "D and Q meet with even multiplicity", "perfect-square", cert.verdict))
    if perturb:
        extra = RationalPoly(data.D.variables, {e: rng.choice([-3, -2, -1, 1, 2, 3])
                                                for e in [(5, 0, 0), (1, 2, 2), (0, 1, 4)]})
        bad = dataclasses.replace(data, D=data.D + extra)
        checks.append(check(f"{label} perturbed tangency", "a perturbed quintic is not tangent to Q",
                            "not-tangent", cb.tangency_certificate(bad, rng).verdict))
    for r in reports:
        if r.label != "A2":
            continue
        nf = cb.normal_form_frame(data, r.point, trunc)
        info.append(f"normal form at {_point(r.point)} ({nf.chart}, order {nf.order}): c = {nf.c}")
        checks.append(check(f"{label} frame residuals", "M^t A M = [[0,1/2,0],[1/2,0,0],[0,0,c]]",
                            True, nf.residuals_vanish))
        checks.append(check(f"{label} mu(c)", "c is a local equation of the cusp", 2,
                            milnor_number(nf.c.to_poly())))
    return info, checks


def section_golden(rng: random.Random, trunc: int | None = None) -> Section:
    info, checks = [], []
    for kind, expected in (("smooth", []), ("A1", ["A1"]), ("A2", ["A2"])):
        i, c = section_discriminant(golden.load_golden(kind), f"golden {kind}", rng, None, expected,
                                    perturb=True, trunc=trunc)
        info += i
        checks += c
    return info, checks


# ---------------------------------------------------------------------------
# dispatch


def build_parser() -> argparse.ArgumentParser:
    def flags(suppress: bool) -> argparse.ArgumentParser:
        # subcommand copies must not reset values given before the subcommand
        extra = {"default": argparse.SUPPRESS} if suppress else {}
        p = argparse.ArgumentParser(add_help=False)
        p.add_argument("--seed", type=int, **(extra or {"default": 0}), help="seed for every random choice (default 0)")
        p.add_argument("--report", **extra, help="also write the report to this file")
        p.add_argument("--trunc", type=int, **extra, help="truncation order for local power series")
        return p

    common = flags(True)
    parser = argparse.ArgumentParser(prog="cubicmoduli", parents=[flags(False)],
                                     description="Exact checks on the moduli of cubic threefolds.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("discriminant", parents=[common], help="conic bundle of a cubic through x2=x3=x4=0")
    p.add_argument("--cubic", required=True, help="polynomial file or packaged example")
    p.add_argument("--candidates", help="'grid' or points a:b:c:d:e separated by ';'")

    p = sub.add_parser("classify", parents=[common], help="singular points of a hypersurface")
    p.add_argument("--cubic", required=True)
    p.add_argument("--point", help="classify only this point a:b:c:d:e")
    p.add_argument("--candidates")
    p.add_argument("--changes", type=int, default=0, help="random unimodular changes to test invariance")

    p = sub.add_parser("lattice", parents=[common], help="root lattices and the Borcherds ledger")
    lsub = p.add_subparsers(dest="action", required=True)
    r = lsub.add_parser("roots", parents=[common])
    r.add_argument("name")
    lsub.add_parser("borcherds", parents=[common])

    p = sub.add_parser("divisors", parents=[common], help="the divisor class ledger")
    dsub = p.add_subparsers(dest="action", required=True)
    s = dsub.add_parser("show", parents=[common])
    s.add_argument("name")
    a = dsub.add_parser("alpha", parents=[common])
    a.add_argument("K")
    a.add_argument("L")
    a.add_argument("direction", help="a basis name or a sum such as D_A1+6*D_A2")
    dsub.add_parser("verify-all", parents=[common])

    p = sub.add_parser("pencil", parents=[common], help="test curves and the boundary table")
    psub = p.add_subparsers(dest="action", required=True)
    d = psub.add_parser("degrees", parents=[common])
    d.add_argument("n", type=int)
    d.add_argument("d", type=int)
    psub.add_parser("solve-l2", parents=[common])
    psub.add_parser("table", parents=[common])

    sub.add_parser("verify-all", parents=[common], help="run every identity end to end")
    return parser


def _digest(argv: Sequence[str], seed: int, inputs: Sequence[str]) -> str:
    h = hashlib.sha256()
    h.update(json.dumps(list(argv)).encode())
    h.update(str(seed).encode())
    for text in inputs:
        h.update(text.encode())
    return h.hexdigest()[:16]


def _dispatch(args: argparse.Namespace, rng: random.Random) -> Section:
    cmd = args.command
    if cmd == "discriminant":
        f = load_cubic(args.cubic)
        return section_discriminant(f, args.cubic, rng, parse_points(args.candidates), trunc=args.trunc)
    if cmd == "classify":
        f = load_cubic(args.cubic)
        if args.point:
            rep = classify_singularity(f, parse_points(args.point)[0])
            return [json.dumps(rep.as_record())], []
        return section_classify(f, args.cubic, None, rng, args.changes, parse_points(args.candidates))
    if cmd == "lattice":
        return section_roots([args.name]) if args.action == "roots" else section_borcherds()
    if cmd == "divisors":
        led = picard.ledger_cubic()
        if args.action == "show":
            if args.name not in led.classes:
                raise KeyError(f"unknown class {args.name!r}; known: {', '.join(led.names())}")
            return [f"{args.name} = {led[args.name]} [{led[args.name].ledger}]",
                    f"derivation: {led.provenance[args.name]}"], []
        if args.action == "alpha":
            K, L = led[args.K], led[args.L]
            p = picard.solve_alpha_composite(K, L, parse_direction(args.direction))
            return [f"{args.K} + {p.alpha} ({args.direction}) = {p.beta} {args.L}",
                    f"alpha = {p.alpha}", f"beta = {p.beta}"], []
        info, checks = section_divisors()
        i, c = section_borcherds()
        return info + i, checks + c
    if cmd == "pencil":
        if args.action == "degrees":
            return section_degrees(args.n, args.d)
        return section_solve_l2() if args.action == "solve-l2" else section_table()
    if cmd == "verify-all":
        return verify_all(rng, args.trunc)
    raise ValueError(f"unknown command {cmd}")


def verify_all(rng: random.Random, trunc: int | None = None) -> Section:
    parts: list[Callable[[], Section]] = [
        lambda: section_degrees(3, 3),
        lambda: section_roots(["A1", "A2", "A3", "D4", "D5", "E6", "E7", "E8", "E6+A2"]),
        section_borcherds,
        section_divisors,
        section_solve_l2,
        section_table,
        lambda: section_singularities(rng),
        lambda: section_golden(rng, trunc),
    ]
    info: list[str] = []
    checks: list[Check] = []
    for part in parts:
        i, c = part()
        info += i
        checks += c
    return info, checks


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) and exc.code else 2
    t0 = time.perf_counter()
    rng = random.Random(args.seed)
    inputs = []
    try:
        if getattr(args, "cubic", None):
            inputs.append(read_cubic_text(args.cubic))
        info, checks = _dispatch(args, rng)
    except (FileNotFoundError, PolyParseError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2
    report = RunReport(args.command, argv, args.seed, _digest(argv, args.seed, inputs), checks, info,
                       time.perf_counter() - t0)
    text = report.to_text()
    out.write(text)
    if args.report:
        Path(args.report).write_text(text)
    if not report.ok:
        for c in report.failing():
            print(f"FAILED: {c.name} ({c.citation})", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
