"""Command-line front end.

Problem files look like::

    # Fermat cubic surface and one of its lines
    n = 2
    d = 3
    cycle L {
      coeff = 1
      f = [x0 + x1; x2 + x3]
      g = [x0^2 - x0*x1 + x1^2; x2^2 - x2*x3 + x3^2]
    }

``root_order`` defaults to 2d and ``F`` to the Fermat polynomial.
Exit codes: 0 success, 1 parse error, 2 failed precondition, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .artinian import DEFAULT_MAX_DIM, GradedIdeal, hilbert_function
from .errors import HodgeCyclesError, ParseError, ValidationError
from .exactalg import CycloField
from .fermat import locus_verdict
from .hodge import colon_equality, tangent
from .mpoly import PolyRing, parse_poly
from .periods import (
    CITCycle, HypersurfaceContext, associated_polynomial, cycle_class,
    intersection_report, period, period_constant, validate_cycle,
)

SCHEMA_VERSION = 1


# -- problem files -----------------------------------------------------------

@dataclass
class CycleBlock:
    name: str
    coeff: int
    f: list
    g: list
    line: int = 0

    def __eq__(self, other):
        return (self.name, self.coeff, self.f, self.g) == (other.name, other.coeff, other.f, other.g)


@dataclass
class ProblemFile:
    n: int
    d: int
    root_order: int
    F: str = None
    cycles: dict = field(default_factory=dict)
    queries: list = field(default_factory=list)

    def ring(self):
        return PolyRing(self.n + 2, CycloField(self.root_order))

    def render(self):
        out = [f"n = {self.n}", f"d = {self.d}", f"root_order = {self.root_order}"]
        if self.F is not None:
            out.append(f"F = {self.F}")
        for q in self.queries:
            out.append(f"query = {q}")
        for c in self.cycles.values():
            out.append(f"cycle {c.name} {{")
            out.append(f"  coeff = {c.coeff}")
            out.append("  f = [" + "; ".join(c.f) + "]")
            out.append("  g = [" + "; ".join(c.g) + "]")
            out.append("}")
        return "\n".join(out) + "\n"


_HEADER_KEYS = {"n", "d", "root_order", "F", "query"}
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


def _split_top(text, sep):
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def _parse_list(value, line):
    value = value.strip()
    if not (value.startswith("[") and value.endswith("]")):
        raise ParseError("expected a bracketed list [p; p; ...]", line=line)
    inner = value[1:-1].strip()
    if not inner:
        return []
    items = [p.strip() for p in _split_top(inner, ";")]
    if any(not p for p in items):
        raise ParseError("empty entry in polynomial list", line=line)
    return items


def _int(value, key, line):
    try:
        return int(value.strip())
    except ValueError:
        raise ParseError(f"{key} must be an integer, got {value.strip()!r}", line=line) from None


def parse_problem(data):
    """Parse problem-file bytes (or text) into a ProblemFile."""
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}", offset=exc.start) from None
    else:
        text = data
    lines = [ln.split("#", 1)[0] for ln in text.splitlines()]
    header = {}
    queries = []
    cycles = {}
    i = 0
    seen_cycle = False
    while i < len(lines):
        raw = lines[i].strip()
        lineno = i + 1
        i += 1
        if not raw:
            continue
        if raw.startswith("cycle") and (len(raw) == 5 or raw[5].isspace()):
            seen_cycle = True
            m = re.match(r"cycle\s+(\S+)\s*\{(.*)$", raw)
            if not m:
                raise ParseError("expected 'cycle <name> {'", line=lineno)
            name, rest = m.group(1), m.group(2)
            if not _NAME.match(name):
                raise ParseError(f"bad cycle name {name!r}", line=lineno)
            if name in cycles:
                raise ParseError(f"duplicate cycle name {name!r}", line=lineno)
            body = [rest]
            while "}" not in body[-1]:
                if i >= len(lines):
                    raise ParseError(f"unterminated cycle block {name!r}", line=lineno)
                body.append(lines[i])
                i += 1
            last, trailing = body[-1].split("}", 1)
            if trailing.strip():
                raise ParseError("text after '}'", line=i)
            body[-1] = last
            cycles[name] = _parse_block(name, "\n".join(body), lineno)
            continue
        if "=" not in raw:
            raise ParseError(f"expected 'key = value', got {raw!r}", line=lineno)
        key, value = (s.strip() for s in raw.split("=", 1))
        if key not in _HEADER_KEYS:
            raise ParseError(f"unknown key {key!r}", line=lineno)
        if key == "query":
            queries.append(value)
            continue
        if seen_cycle:
            raise ParseError(f"header key {key!r} after a cycle block", line=lineno)
        if key in header:
            raise ParseError(f"duplicate key {key!r}", line=lineno)
        header[key] = (value, lineno)
    for key in ("n", "d"):
        if key not in header:
            raise ParseError(f"missing header key {key!r}")
    n = _int(header["n"][0], "n", header["n"][1])
    d = _int(header["d"][0], "d", header["d"][1])
    if n < 2 or n % 2:
        raise ParseError(f"n = {n} must be even and at least 2", line=header["n"][1])
    if d < 2:
        raise ParseError(f"d = {d} must be at least 2", line=header["d"][1])
    root = 2 * d
    if "root_order" in header:
        root = _int(header["root_order"][0], "root_order", header["root_order"][1])
        if root < 1:
            raise ParseError("root_order must be positive", line=header["root_order"][1])
    F = header["F"][0] if "F" in header else None
    prob = ProblemFile(n, d, root, F, cycles, queries)
    ring = prob.ring()
    if F is not None:
        _check_poly(F, ring, header["F"][1])
    half = n // 2 + 1
    for c in cycles.values():
        if len(c.f) != half:
            raise ParseError(f"cycle {c.name}: f has {len(c.f)} entries, expected {half}",
                             line=c.line)
        if len(c.g) != len(c.f):
            raise ParseError(f"cycle {c.name}: f and g lists differ in length", line=c.line)
        for p in c.f + c.g:
            _check_poly(p, ring, c.line)
    return prob


def _check_poly(text, ring, line):
    try:
        parse_poly(text, ring)
    except ParseError as exc:
        raise ParseError(f"in {text!r}: {exc}", line=line, offset=exc.offset) from None


def _parse_block(name, body, line):
    fields = {}
    for stmt in _split_top(body.replace("\n", ";"), ";"):
        stmt = stmt.strip()
        if not stmt:
            continue
        if "=" not in stmt:
            raise ParseError(f"cycle {name}: expected 'key = value', got {stmt!r}", line=line)
        key, value = (s.strip() for s in stmt.split("=", 1))
        if key not in ("coeff", "f", "g"):
            raise ParseError(f"cycle {name}: unknown key {key!r}", line=line)
        if key in fields:
            raise ParseError(f"cycle {name}: duplicate key {key!r}", line=line)
        fields[key] = value
    for key in ("f", "g"):
        if key not in fields:
            raise ParseError(f"cycle {name}: missing {key!r}", line=line)
    coeff = _int(fields.get("coeff", "1"), "coeff", line)
    return CycleBlock(name, coeff, _parse_list(fields["f"], line), _parse_list(fields["g"], line), line)


# -- building engine objects -------------------------------------------------

def build_context(prob, max_dim=DEFAULT_MAX_DIM):
    ring = prob.ring()
    if prob.F is None:
        F = ring.zero
        for i in range(ring.num_vars):
            F = F + ring.var(i) ** prob.d
        ctx = HypersurfaceContext(F, check=False, max_dim=max_dim)
    else:
        F = parse_poly(prob.F, ring)
        if F.degree() != prob.d:
            raise ValidationError(f"F has degree {F.degree()}, header says d = {prob.d}")
        ctx = HypersurfaceContext(F, check=True, max_dim=max_dim)
    return ctx


def block_cycle(block, ring):
    fs = [parse_poly(p, ring) for p in block.f]
    gs = [parse_poly(p, ring) for p in block.g]
    return CITCycle.single(fs, gs, block.coeff)


_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+)\s*\*\s*)?([A-Za-z_][A-Za-z0-9_]*)\s*")


def cycle_expr(expr, prob, ring):
    """Parse 'L', '2*L', 'L - 3*M' into a CITCycle."""
    pos = 0
    total = None
    while pos < len(expr):
        m = _TERM.match(expr, pos)
        if not m or m.end() == pos or (total is not None and not m.group(1)):
            raise ParseError(f"bad cycle expression {expr!r}", offset=pos)
        sign = -1 if m.group(1) == "-" else 1
        k = sign * int(m.group(2) or 1)
        name = m.group(3)
        if name not in prob.cycles:
            raise ParseError(f"unknown cycle {name!r}", offset=m.start(3))
        term = k * block_cycle(prob.cycles[name], ring)
        total = term if total is None else total + term
        pos = m.end()
    if total is None:
        raise ParseError("empty cycle expression")
    return total


# -- output ------------------------------------------------------------------

def frac_str(q):
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def frac_text(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def scalar_json(c):
    return [frac_str(x) for x in c.coords]


def period_json(pv):
    return {
        "tpi_power": pv.tpi_power,
        "inv_factorial": pv.inv_factorial,
        "factorial_power": pv.factorial_power,
        "algebraic_coords": scalar_json(pv.algebraic),
        "text": pv.render(),
    }


def _bool(b):
    return "true" if b else "false"


class Report:
    def __init__(self, command):
        self.command = command
        self.items = []

    def add(self, key, text, data=None):
        self.items.append((key, text, text if data is None else data))

    def emit(self, fmt, out):
        if fmt == "json":
            payload = {"schema_version": SCHEMA_VERSION, "command": self.command}
            for key, _, data in self.items:
                payload[key] = data
            out.write(json.dumps(payload, indent=2) + "\n")
        else:
            for key, text, _ in self.items:
                if key is None:
                    out.write(f"{text}\n")
                else:
                    out.write(f"{key} = {text}\n")


# -- commands ----------------------------------------------------------------

def _load(args):
    with open(args.file, "rb") as fh:
        prob = parse_problem(fh.read())
    ctx = build_context(prob, args.max_dim)
    return prob, ctx


def _context_header(rep, ctx):
    rep.add("n", str(ctx.n), ctx.n)
    rep.add("d", str(ctx.d), ctx.d)
    rep.add("root_order", str(ctx.field.root_order), ctx.field.root_order)


def cmd_validate(args):
    prob, ctx = _load(args)
    rep = Report("validate")
    _context_header(rep, ctx)
    names = args.cycle or list(prob.cycles)
    results = {}
    for name in names:
        if name not in prob.cycles:
            raise ParseError(f"unknown cycle {name!r}")
        cyc = block_cycle(prob.cycles[name], ctx.ring)
        report = validate_cycle(ctx, cyc, ci_check=args.ci_check)
        results[name] = {"valid": True, "degree": report.degree,
                         "ci_checked": bool(args.ci_check)}
        rep.add(f"cycle {name}", f"valid degree={report.degree}", results[name])
    return rep


def cmd_class(args):
    prob, ctx = _load(args)
    cyc = cycle_expr(args.cycle, prob, ctx.ring)
    cc = cycle_class(ctx, cyc)
    rep = Report("class")
    _context_header(rep, ctx)
    rep.add("cycle", args.cycle)
    rep.add("deg_delta", str(cyc.degree()), cyc.degree())
    rep.add("theta_coeff", frac_text(cc.theta_coeff), frac_str(cc.theta_coeff))
    rep.add("primitive_scale", frac_text(cc.primitive_scale), frac_str(cc.primitive_scale))
    rep.add("P_delta", cc.primitive_poly.render())
    rep.add("P_delta_mod_J", cc.primitive_nf.render())
    rep.add("theta_multiple", _bool(cc.is_theta_multiple), cc.is_theta_multiple)
    return rep


def cmd_period(args):
    prob, ctx = _load(args)
    cyc = cycle_expr(args.cycle, prob, ctx.ring)
    P = parse_poly(args.poly, ctx.ring)
    c = period_constant(ctx, cyc, P)
    pv = period(ctx, cyc, P)
    rep = Report("period")
    _context_header(rep, ctx)
    rep.add("cycle", args.cycle)
    rep.add("P", P.render())
    rep.add("c", c.render(), scalar_json(c))
    scaled = c * (ctx.d - 1) ** (ctx.n + 2)
    rep.add("c*(d-1)^(n+2)", scaled.render(), scalar_json(scaled))
    rep.add("period", pv.render(), period_json(pv))
    return rep


def cmd_intersect(args):
    prob, ctx = _load(args)
    a = cycle_expr(args.cycle, prob, ctx.ring)
    b = cycle_expr(args.other or args.cycle, prob, ctx.ring)
    r = intersection_report(ctx, a, b)
    rep = Report("intersect")
    _context_header(rep, ctx)
    rep.add("cycle", args.cycle)
    rep.add("with", args.other or args.cycle)
    rep.add("deg_delta", str(r.degree_a), r.degree_a)
    rep.add("deg_mu", str(r.degree_b), r.degree_b)
    rep.add("c", frac_text(r.c), frac_str(r.c))
    rep.add("c*(d-1)^(n+2)", str(r.c_scaled), r.c_scaled)
    rep.add("intersection", str(r.value), r.value)
    return rep


def cmd_tangent(args):
    prob, ctx = _load(args)
    cyc = cycle_expr(args.cycle, prob, ctx.ring)
    P = associated_polynomial(ctx, cyc)
    t = tangent(ctx, P, workers=args.workers)
    rep = Report("tangent")
    _context_header(rep, ctx)
    rep.add("cycle", args.cycle)
    rep.add("ambient_dim", str(t.ambient_dim), t.ambient_dim)
    rep.add("tangent_dim", str(t.tangent_dim), t.tangent_dim)
    rep.add("codim", str(t.codim), t.codim)
    if args.basis:
        polys = [p.render() for p in t.basis.basis_polys(ctx.ring)]
        rep.add("basis", "[" + "; ".join(polys) + "]", polys)
    return rep


def cmd_colon_eq(args):
    prob, ctx = _load(args)
    ring = ctx.ring
    if args.ideal:
        gens = [parse_poly(p.strip(), ring) for p in _split_top(args.ideal, ";")]
        I = GradedIdeal(ring, gens, max_dim=args.max_dim)
    else:
        I = ctx.J
    R1 = parse_poly(args.r1, ring)
    R2 = parse_poly(args.r2, ring)
    res = colon_equality(I, R1, R2, args.degree, workers=args.workers)
    rep = Report("colon-eq")
    rep.add("degree", str(args.degree), args.degree)
    rep.add("holds", _bool(res.holds), res.holds)
    rep.add("lhs_dim", str(res.lhs_dim), res.lhs_dim)
    rep.add("rhs_dim", str(res.rhs_dim), res.rhs_dim)
    w = res.witness.render() if res.witness is not None else None
    rep.add("witness", w if w is not None else "none", w)
    return rep


def cmd_fermat_verdict(args):
    alphas = None
    if args.alphas:
        alphas = [int(a) for a in args.alphas.split(",")]
    v = locus_verdict(args.n, args.d, args.m, alphas, args.a, args.b, workers=args.workers)
    rep = Report("fermat-verdict")
    rep.add(None, f"equal={_bool(v.equal)} expected={_bool(v.expected_equal)} "
                  f"consistent={_bool(v.consistent)} codim={v.codim_formula_value}")
    for key, val in (("n", v.n), ("d", v.d), ("m", v.m), ("a", v.a), ("b", v.b)):
        rep.add(key, str(val), val)
    rep.add("alphas_b", ",".join(map(str, v.alphas_b)), list(v.alphas_b))
    rep.add("ambient_dim", str(v.ambient_dim), v.ambient_dim)
    rep.add("dim_meet", str(v.dim_meet), v.dim_meet)
    rep.add("dim_delta_tangent", str(v.dim_delta_tangent), v.dim_delta_tangent)
    rep.add("codim_meet", str(v.codim_meet), v.codim_meet)
    rep.add("codim_formula", str(v.codim_formula_value), v.codim_formula_value)
    rep.add("codim_matches", _bool(v.codim_matches), v.codim_matches)
    rep.add("equal", _bool(v.equal), v.equal)
    rep.add("expected_equal", _bool(v.expected_equal), v.expected_equal)
    rep.add("consistent", _bool(v.consistent), v.consistent)
    return rep


def cmd_hilbert(args):
    if args.file:
        _, ctx = _load(args)
    else:
        if args.n is None or args.d is None:
            raise ParseError("hilbert needs a problem file or --n and --d")
        ctx = build_context(ProblemFile(args.n, args.d, 2 * args.d), args.max_dim)
    e_max = args.e_max if args.e_max is not None else ctx.socle + 1
    prof = hilbert_function(ctx.J, e_max)
    rep = Report("hilbert")
    rep.add(None, prof.render())
    rep.add("dims", prof.render(), list(prof.dims))
    rep.add("socle", str(ctx.socle), ctx.socle)
    return rep


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM,
                        help="refuse slices with more monomials than this")
    common.add_argument("--workers", type=int, default=1,
                        help="worker processes for block elimination")

    parser = argparse.ArgumentParser(
        prog="hodgecycles",
        description="Exact periods, cycle classes and Hodge loci of complete-intersection cycles.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check cycle decompositions")
    p.add_argument("file")
    p.add_argument("--cycle", action="append")
    p.add_argument("--ci-check", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("class", parents=[common], help="cycle class via theta and P_delta")
    p.add_argument("file")
    p.add_argument("--cycle", required=True)
    p.set_defaults(func=cmd_class)

    p = sub.add_parser("period", parents=[common], help="period of a cycle against P")
    p.add_argument("file")
    p.add_argument("--cycle", required=True)
    p.add_argument("--poly", required=True)
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("intersect", parents=[common], help="intersection number")
    p.add_argument("file")
    p.add_argument("--cycle", required=True)
    p.add_argument("--with", dest="other")
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser("tangent", parents=[common], help="Hodge locus tangent space")
    p.add_argument("file")
    p.add_argument("--cycle", required=True)
    p.add_argument("--basis", action="store_true")
    p.set_defaults(func=cmd_tangent)

    p = sub.add_parser("colon-eq", parents=[common], help="colon-ideal slice equality")
    p.add_argument("file")
    p.add_argument("--r1", required=True)
    p.add_argument("--r2", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--ideal", help="generators separated by ';' (default: Jacobian ideal)")
    p.set_defaults(func=cmd_colon_eq)

    p = sub.add_parser("fermat-verdict", parents=[common], help="two linear cycles on Fermat")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--alphas", help="exponents of the second cycle, comma separated")
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--b", type=int, default=1)
    p.set_defaults(func=cmd_fermat_verdict)

    p = sub.add_parser("hilbert", parents=[common], help="Hilbert function of the Jacobian ring")
    p.add_argument("file", nargs="?")
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--e-max", type=int)
    p.set_defaults(func=cmd_hilbert)
    return parser


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        rep = args.func(args)
    except HodgeCyclesError as exc:
        stderr.write(f"error: {exc}\n")
        residual = getattr(exc, "residual", None)
        if residual is not None:
            stderr.write(f"residual = {residual.render()}\n")
        return exc.exit_code
    except OSError as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    rep.emit(args.format, stdout)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
