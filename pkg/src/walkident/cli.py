"""Command-line interface: ``walkident <subcommand> ...``.

Exit codes: 0 when every check passed (or output was produced), 1 when some
check came out unequal or a proof was refuted, 2 on usage or domain errors.
Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from . import identities, prove, render, walks
from .exact import as_rational, parse_rational
from .reports import UNEQUAL

DEFAULT_INTEGERS = tuple(range(-10, 11))
DEFAULT_RATIONALS = tuple(Fraction(x) for x in ("1/2", "-1/2", "1/3", "7/5", "-3/2", "9/7"))

# options whose values may start with "-" (negative numbers, ranges, p/q)
_VALUE_OPTIONS = {"--m", "--r", "--end", "--barrier", "--avoid", "--steps"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def parse_values(text: str) -> list:
    """``"a..b"`` (integer range), or a comma list of integers / ``p/q``."""
    text = text.strip()
    if ".." in text:
        a, _, b = text.partition("..")
        try:
            lo, hi = int(a), int(b)
        except ValueError:
            raise UsageError(f"bad range {text!r}; expected a..b with integers") from None
        if lo > hi:
            raise UsageError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    try:
        return [as_rational(parse_rational(x)) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _int_values(text: str) -> list:
    vals = parse_values(text)
    if any(v != int(v) for v in vals):
        raise UsageError(f"expected integers, got {text!r}")
    return [int(v) for v in vals]


def _normalize(argv: Sequence[str]) -> list:
    out, i = [], 0
    argv = list(argv)
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="walkident", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="sweep an identity over parameter points")
    v.add_argument("--identity", required=True)
    v.add_argument("--n-max", type=int, required=True)
    v.add_argument("--m", help="values: a..b, or comma list of integers and p/q")
    v.add_argument("--r", help="values: a..b, or comma list of integers and p/q")
    v.add_argument("--rational", action="store_true",
                   help="default m, r to the rational test set instead of -10..10")
    v.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    v.add_argument("--header", action="store_true", help="print the CSV header row")
    v.add_argument("--jobs", type=int, default=1)

    c = sub.add_parser("count", help="exact P, S or T")
    c.add_argument("--kind", choices=("P", "S", "T"), required=True)
    c.add_argument("--steps", type=int, required=True)
    c.add_argument("--end", type=int, required=True)
    c.add_argument("--barrier", type=int)

    e = sub.add_parser("enumerate", help="list walks as L/R strings")
    e.add_argument("--steps", type=int, required=True)
    e.add_argument("--end", type=int, required=True)
    e.add_argument("--avoid", type=int)
    e.add_argument("--limit", type=int, default=100)

    pr = sub.add_parser("prove", help="grid proof for one n")
    pr.add_argument("--identity", required=True)
    pr.add_argument("--n", type=int, required=True)

    ind = sub.add_parser("induct", help="induction on n for I7 / I8")
    ind.add_argument("--identity", required=True)
    ind.add_argument("--n-max", type=int, required=True)

    d = sub.add_parser("decomp", help="check a path decomposition over a grid")
    d.add_argument("--which", required=True,
                   help="decomposition id or 'all': " + ", ".join(walks.DECOMPOSITIONS))
    d.add_argument("--max-steps", type=int, default=14)
    d.add_argument("--steps", help="explicit N values (a..b or list)")
    d.add_argument("--end", help="explicit m values")
    d.add_argument("--r", help="explicit r values")
    d.add_argument("--header", action="store_true")

    s = sub.add_parser("simulate", help="Monte Carlo histogram of end positions")
    s.add_argument("--steps", type=int, required=True)
    s.add_argument("--samples", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)

    r = sub.add_parser("render", help="ASCII picture of a walk")
    r.add_argument("--steps", type=int, required=True)
    r.add_argument("--path", required=True)
    r.add_argument("--barrier", type=int)
    r.add_argument("--reflect", action="store_true")

    t = sub.add_parser("table", help="CSV of both sides for n = 0..n-max")
    t.add_argument("--identity", required=True)
    t.add_argument("--n-max", type=int, required=True)
    t.add_argument("--m", default=None)
    t.add_argument("--r", default=None)
    return p


def _identity(reg: Mapping, name: str):
    try:
        return reg[name.upper()]
    except KeyError:
        raise UsageError(f"unknown identity {name!r}; expected one of {', '.join(reg)}") from None


def _verify_point(args):
    ident, n, m, r = args
    return identities.eval_identity(ident, n, m, r)


def _cmd_verify(a, reg, out):
    ident = _identity(reg, a.identity)
    if a.n_max < 0:
        raise UsageError("--n-max must be >= 0")
    default = list(DEFAULT_RATIONALS if a.rational else DEFAULT_INTEGERS)
    axes = {}
    for sym in ("m", "r"):
        given = getattr(a, sym)
        if sym in ident.free:
            axes[sym] = parse_values(given) if given is not None else default
        elif given is not None:
            raise UsageError(f"{ident.id} has no free symbol {sym}")
        else:
            axes[sym] = [None]
    points = [(ident, n, m, r) for m in axes["m"] for r in axes["r"] for n in range(a.n_max + 1)]
    if a.jobs > 1:
        with ProcessPoolExecutor(a.jobs) as pool:
            reports = list(pool.map(_verify_point, points, chunksize=64))
    else:
        reports = [_verify_point(p) for p in points]
    out.write(render.emit_report(reports, a.format, header=a.header))
    poles = sum(rep.status == "pole" for rep in reports)
    if poles:
        print(f"{poles} pole point(s) reported and skipped", file=sys.stderr)
    return 1 if any(rep.status == UNEQUAL for rep in reports) else 0


def _cmd_count(a, out):
    if a.kind == "P":
        value = walks.count_paths(a.steps, a.end)
    else:
        if a.barrier is None:
            raise UsageError(f"--kind {a.kind} needs --barrier")
        fn = walks.count_touching if a.kind == "S" else walks.count_avoiding
        value = fn(a.steps, a.end, a.barrier)
    out.write(f"{value}\n")
    return 0


def _cmd_enumerate(a, out):
    cons = [walks.end_at(a.end)]
    if a.avoid is not None:
        cons.append(walks.avoids(a.avoid))
    for path in walks.enumerate_paths(a.steps, cons, a.limit):
        out.write(path + "\n")
    return 0


def _cmd_prove(a, reg, out):
    cert = prove.verify_polynomial(_identity(reg, a.identity), a.n)
    out.write(cert.summary() + "\n")
    return 0 if cert.verified else 1


def _cmd_induct(a, reg, out):
    certs = prove.verify_induction(_identity(reg, a.identity), a.n_max)
    for c in certs:
        what = "base" if c.kind == "sum" else "step"
        out.write(f"{c.identity} n={c.n} {what} {c.summary()}\n")
    return 0 if all(c.verified for c in certs) else 1


def _cmd_decomp(a, out):
    which = list(walks.DECOMPOSITIONS) if a.which == "all" else [a.which]
    reports = []
    for w in which:
        if w not in walks.DECOMPOSITIONS:
            raise UsageError(f"unknown decomposition {w!r}")
        d = walks.DECOMPOSITIONS[w]
        if a.steps is None and a.end is None and a.r is None:
            grid = walks.decomposition_grid(w, a.max_steps)
        else:
            Ns = _int_values(a.steps) if a.steps else list(range(a.max_steps + 1))
            axes = {"N": Ns}
            if "m" in d.params:
                axes["m"] = _int_values(a.end) if a.end else None
            if "r" in d.params:
                axes["r"] = _int_values(a.r) if a.r else None
            grid = []
            for N in Ns:
                ms = axes.get("m") or (range(-N, N + 1) if "m" in d.params else [None])
                rs = axes.get("r") or (range(-N - 1, N + 1) if "r" in d.params else [None])
                for m in ms:
                    for r in rs:
                        grid.append({k: v for k, v in (("N", N), ("m", m), ("r", r))
                                     if k in d.params})
        reports.extend(walks.check_decomposition(w, p) for p in grid)
    out.write(render.emit_report(reports, "csv", header=a.header))
    return 1 if any(rep.status == UNEQUAL for rep in reports) else 0


def _cmd_simulate(a, out):
    res = walks.simulate(a.steps, a.samples, a.seed)
    out.write("position,ends,visits\n")
    for x in range(-a.steps, a.steps + 1):
        if x in res.ends or x in res.touches:
            out.write(f"{x},{res.ends.get(x, 0)},{res.touches.get(x, 0)}\n")
    return 0


def _cmd_render(a, out):
    if len(a.path) != a.steps:
        raise UsageError(f"--path has {len(a.path)} steps but --steps is {a.steps}")
    out.write(render.render_walk(render.scene_for(a.path, a.barrier, a.reflect)))
    return 0


def _cmd_table(a, reg, out):
    ident = _identity(reg, a.identity)
    kw = {}
    for sym in ("m", "r"):
        given = getattr(a, sym)
        if sym in ident.free:
            kw[sym] = as_rational(parse_rational(given)) if given is not None else 0
        elif given is not None:
            raise UsageError(f"{ident.id} has no free symbol {sym}")
    reports = [identities.eval_identity(ident, n, **kw) for n in range(a.n_max + 1)]
    out.write(render.emit_report(reports, "csv", header=True))
    return 1 if any(rep.status == UNEQUAL for rep in reports) else 0


def run(argv: Optional[Sequence[str]] = None, registry: Optional[Mapping] = None,
        out=None) -> int:
    """Run one command and return its exit code.

    ``registry`` replaces the identity registry (used by tests to inject
    corrupted definitions).
    """
    out = out if out is not None else sys.stdout
    reg = registry if registry is not None else identities.registry()
    argv = sys.argv[1:] if argv is None else argv
    try:
        a = build_parser().parse_args(_normalize(argv))
        cmd = a.command
        if cmd == "verify":
            return _cmd_verify(a, reg, out)
        if cmd == "count":
            return _cmd_count(a, out)
        if cmd == "enumerate":
            return _cmd_enumerate(a, out)
        if cmd == "prove":
            return _cmd_prove(a, reg, out)
        if cmd == "induct":
            return _cmd_induct(a, reg, out)
        if cmd == "decomp":
            return _cmd_decomp(a, out)
        if cmd == "simulate":
            return _cmd_simulate(a, out)
        if cmd == "render":
            return _cmd_render(a, out)
        return _cmd_table(a, reg, out)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 2
    except (ValueError, KeyError, RuntimeError) as exc:
        print(f"walkident: error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
