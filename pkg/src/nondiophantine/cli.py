"""``nondio`` command line.

Exit codes: 0 ok, 1 selftest failure, 2 bad parameters, 3 I/O error.
Upper-real arguments accept ``0p`` and ``one`` for ``0'`` and ``1'`` of the
active context.
"""

from __future__ import annotations

import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

import click
import numpy as np

from . import arithmetic as ar
from . import cosmology as cosmo
from . import fields
from . import spacetime as st
from .checks import run_selftest
from .errors import NonDiophantineError
from .plotting import write_plot_script

EXIT_OK, EXIT_SELFTEST, EXIT_PARAMS, EXIT_IO = 0, 1, 2, 3


class ExprError(NonDiophantineError, ValueError):
    def __init__(self, msg: str, column: int):
        super().__init__(f"{msg} at column {column}")
        self.column = column


@dataclass
class RunConfig:
    command: str
    bijection: ar.Bijection | None = None
    params: dict = field(default_factory=dict)
    out: Path | None = None


_TOKEN = re.compile(
    r"\s*(?:(?P<op>\([+\-*/]\))|(?P<name>0p|one)(?![\w.])"
    r"|(?P<num>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<lp>\()|(?P<rp>\)))"
)
_OPS = {"(+)": ar.add, "(-)": ar.sub, "(*)": ar.mul, "(/)": ar.div}


def tokenize(expr: str) -> list[tuple[str, str, int]]:
    pos, out = 0, []
    while pos < len(expr):
        if expr[pos:].strip() == "":
            break
        m = _TOKEN.match(expr, pos)
        if not m:
            col = pos + len(expr[pos:]) - len(expr[pos:].lstrip()) + 1
            raise ExprError(f"unexpected character {expr[col - 1]!r}", col)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    return out


def upper_literal(ctx: ar.Bijection, text: str) -> ar.UpperReal:
    if text == "0p":
        return ar.neutral_zero(ctx)
    if text == "one":
        return ar.neutral_one(ctx)
    return ar.UpperReal(float(text), ctx)


def evaluate(ctx: ar.Bijection, expr: str) -> ar.UpperReal:
    """Evaluate an infix expression over ``(+) (-) (*) (/)`` and parentheses.

    ``(*)`` and ``(/)`` bind tighter than ``(+)`` and ``(-)``; all are left-associative.
    """
    toks = tokenize(expr)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None, len(expr) + 1)

    def atom():
        nonlocal pos
        kind, text, col = peek()
        if kind in ("num", "name"):
            pos += 1
            return upper_literal(ctx, text)
        if kind == "lp":
            pos += 1
            v = binary(0)
            if peek()[0] != "rp":
                raise ExprError("expected ')'", peek()[2])
            pos += 1
            return v
        raise ExprError("expected a number, 0p, one or '('", col)

    def binary(level):
        nonlocal pos
        if level == 2:
            return atom()
        ops = ("(+)", "(-)") if level == 0 else ("(*)", "(/)")
        left = binary(level + 1)
        while peek()[0] == "op" and peek()[1] in ops:
            op = peek()[1]
            pos += 1
            left = _OPS[op](ctx, left, binary(level + 1))
        return left

    if not toks:
        raise ExprError("empty expression", 1)
    result = binary(0)
    if pos != len(toks):
        raise ExprError(f"unexpected {toks[pos][1]!r}", toks[pos][2])
    return result


class BijectionParam(click.ParamType):
    name = "bijection"

    def convert(self, value, param, ctx):
        if isinstance(value, ar.Bijection):
            return value
        try:
            return ar.parse_bijection(value)
        except NonDiophantineError as exc:
            self.fail(str(exc), param, ctx)


BIJECTION = BijectionParam()


def _upper_list(ctx: ar.Bijection, text: str) -> list[float]:
    return [upper_literal(ctx, t.strip()).value for t in text.split(",")]


def _bounds(ctx: ar.Bijection, text: str | None, default: tuple[float, float]) -> tuple[float, float]:
    if text is None:
        return default
    parts = [t.strip() for t in text.split(",")]
    if len(parts) != 2:
        raise click.BadParameter(f"expected lo,hi, got {text!r}")
    vals = []
    for p in parts:
        if p == "0p":
            vals.append(float(ar.neutral_zero(ctx).value))
        elif p == "one":
            vals.append(float(ar.neutral_one(ctx).value))
        else:
            vals.append(float(p))
    return vals[0], vals[1]


def _default_bounds(ctx: ar.Bijection) -> tuple[float, float]:
    lo, hi = ctx.closure()
    if np.isfinite(lo) and np.isfinite(hi):
        return lo, hi
    if np.isfinite(lo):
        # half-line: show the region up to a few times 0'
        return lo, lo + 3 * (float(ar.neutral_zero(ctx).value) - lo)
    return -2.0, 2.0


def _emit(table, cfg: RunConfig, kind: str, plot: bool) -> None:
    if cfg.out is None:
        if plot:
            raise click.UsageError("--plot-script needs --out")
        click.echo(table.to_csv(), nl=False)
        return
    table.to_csv(cfg.out)
    click.echo(f"wrote {cfg.out} ({len(table)} rows)", err=True)
    if plot:
        click.echo(f"wrote {write_plot_script(kind, cfg.out)}", err=True)


_out_option = click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None, help="CSV output path (stdout if omitted).")
_plot_option = click.option("--plot-script", is_flag=True, help="Also write a matplotlib script next to the CSV.")


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def cli():
    """Non-Diophantine arithmetic, light cones, apparent velocities and scale factors."""


@cli.command()
@click.option("--f", "bij", type=BIJECTION, default="id", show_default=True, help="Bijection spec, e.g. fechner:mu=10,nu=-20")
@click.argument("expr")
def ops(bij, expr):
    """Evaluate EXPR with (+) (-) (*) (/) in the chosen arithmetic."""
    result = evaluate(bij, expr)
    click.echo(f"{result.value!r}\tf={result.lower!r}")


@cli.command()
@click.option("--f", "bij", type=BIJECTION, default="fechner:mu=10,nu=-20", show_default=True)
@click.option("--apex", default="0p,0p,0p", show_default=True, help="Y0,Y1,Y2[,Y3]; Y3 defaults to 0p.")
@click.option("--x1", "x1", default=None, help="lo,hi for X1 (default: domain closure or a window around 0').")
@click.option("--x2", "x2", default=None, help="lo,hi for X2.")
@click.option("--n", default=41, show_default=True, type=click.IntRange(2))
@click.option("--workers", default=1, show_default=True, type=click.IntRange(1))
@_out_option
@_plot_option
def lightcone(bij, apex, x1, x2, n, workers, out, plot_script):
    """Sample the light cone with the given apex in 1+2 dimensions."""
    comps = _upper_list(bij, apex)
    if len(comps) == 3:
        comps.append(float(ar.neutral_zero(bij).value))
    if len(comps) != 4:
        raise click.BadParameter("apex needs 3 or 4 components", param_hint="--apex")
    default = _default_bounds(bij)
    grid = st.GridSpec(_bounds(bij, x1, default), _bounds(bij, x2, default), n, n)
    cfg = RunConfig("lightcone", bij, {"apex": comps, "grid": grid}, out)
    table = st.lightcone_surface(bij, st.FourVector(bij, tuple(comps)), grid, max_workers=workers)
    _emit(table, cfg, "lightcone", plot_script)


@cli.command()
@click.option("--kind", type=click.Choice(fields.BETA_KINDS), default="tan", show_default=True)
@click.option("--L", "L", default=1.0, show_default=True, type=float)
@click.option("--n", default=101, show_default=True, type=click.IntRange(1))
@click.option("--umax", default=6.0, show_default=True, type=float, help="Upper end of r/0' (fechner).")
@_out_option
@_plot_option
def beta(kind, L, n, umax, out, plot_script):
    """Apparent velocity of a charge at rest, as inferred with ordinary arithmetic."""
    if L <= 0 or umax <= -1:
        raise click.BadParameter("need L > 0 and umax > -1")
    cfg = RunConfig("beta", None, {"kind": kind, "L": L, "n": n, "umax": umax}, out)
    _emit(fields.beta_curve(kind, n, L, umax), cfg, "beta", plot_script)


@cli.command()
@click.option("--f", "bij", type=BIJECTION, default="tan:L=20", show_default=True)
@click.option("--T0", "T0", default="one", show_default=True, help="Reference upper time (0p, one or a number).")
@click.option("--t0", "t0", default=None, type=float, help="Classical reference time (default: match A at T0).")
@click.option("--n", default=200, show_default=True, type=click.IntRange(3))
@click.option("--tmin", default=None, type=float)
@click.option("--tmax", default=None, type=float)
@_out_option
@_plot_option
def friedman(bij, T0, t0, n, tmin, tmax, out, plot_script):
    """Scale factor A(T) against the classical (t/t0)^(2/3); reports T*."""
    T0v = upper_literal(bij, T0).value
    base = cosmo.FriedmanConfig.default(bij, T0v, n, t0)
    times = base.times
    if tmin is not None or tmax is not None:
        times = np.linspace(times[0] if tmin is None else tmin, times[-1] if tmax is None else tmax, n)
    fc = cosmo.FriedmanConfig(bij, T0v, times, t0)
    cfg = RunConfig("friedman", bij, {"T0": T0v, "t0": t0, "n": n}, out)
    table, T_star = cosmo.friedman_comparison(fc)
    _emit(table, cfg, "friedman", plot_script)
    click.echo(f"T*={T_star!r}", err=True)


@cli.command()
@click.option("--seed", default=0, show_default=True, type=click.IntRange(0, 2 ** 64 - 1))
@click.option("--inject-nonmonotone", is_flag=True, help="Also feed a non-monotone custom bijection to the probe.")
def selftest(seed, inject_nonmonotone):
    """Run the invariant suites and print a pass/fail matrix."""
    results = run_selftest(seed, inject_nonmonotone)
    width = max(len(r.name) for r in results)
    for r in results:
        click.echo(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<{width}}  {r.detail}")
    failed = sum(not r.passed for r in results)
    click.echo(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_SELFTEST


def main(argv=None) -> int:
    try:
        rv = cli.main(args=argv, prog_name="nondio", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return EXIT_PARAMS
    except click.Abort:
        return EXIT_PARAMS
    except NonDiophantineError as exc:
        click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        return EXIT_PARAMS
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_PARAMS
    except OSError as exc:
        click.echo(f"I/O error: {exc}", err=True)
        return EXIT_IO
    return rv if isinstance(rv, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
