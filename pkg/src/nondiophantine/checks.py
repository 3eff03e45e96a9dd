"""Invariant checks run by ``nondio selftest``.

Each check returns a :class:`CheckResult`; nothing here raises on failure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import arithmetic as ar
from . import calculus as calc
from . import cosmology as cosmo
from . import fields
from . import spacetime as st
from .errors import MonotonicityError, NonDiophantineError

RTOL = 1e-9
ATOL = 1e-12


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def catalog() -> list[ar.Bijection]:
    return [
        ar.identity(),
        ar.power(3),
        ar.fechner(10, -20),
        ar.tangent(1),
        ar.artanh(1),
    ]


def lower_close(a, b, rtol: float = RTOL, atol: float = ATOL) -> np.ndarray:
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    return np.abs(a - b) <= atol + rtol * np.maximum(np.abs(a), np.abs(b))


def sample_upper(ctx: ar.Bijection, rng: np.random.Generator, n: int, span: float = 2.0) -> ar.UpperReal:
    """``n`` upper reals whose lower images are uniform on ``[-span, span]``."""
    return ar.from_lower(ctx, rng.uniform(-span, span, n))


def field_axioms(ctx: ar.Bijection, rng: np.random.Generator, n: int) -> dict[str, bool]:
    """Field axioms on ``n`` random triples, compared in the lower image."""
    X, Y, Z = (sample_upper(ctx, rng, n) for _ in range(3))
    zero, one = ar.neutral_zero(ctx), ar.neutral_one(ctx)
    # keep 1/x representable (artanh saturates near |x| = 13)
    nonzero = np.abs(X.lower) > 0.1
    Xnz = ar.UpperReal(X.value[nonzero], ctx)
    laws = {
        "add commutative": (X + Y, Y + X),
        "mul commutative": (X * Y, Y * X),
        "add associative": ((X + Y) + Z, X + (Y + Z)),
        "mul associative": ((X * Y) * Z, X * (Y * Z)),
        "distributive": (X * (Y + Z), (X * Y) + (X * Z)),
        "additive identity": (X + zero, X),
        "multiplicative identity": (X * one, X),
        "additive inverse": (X + (-X), ar.UpperReal(np.full(n, zero.value), ctx)),
        "multiplicative inverse": (Xnz * (one / Xnz), ar.UpperReal(np.full(len(Xnz.value), one.value), ctx)),
        "zero annihilates": (zero * X, ar.UpperReal(np.full(n, zero.value), ctx)),
    }
    return {k: bool(np.all(lower_close(l.lower, r.lower))) for k, (l, r) in laws.items()}


def _run(name: str, fn: Callable[[], tuple[bool, str]]) -> CheckResult:
    try:
        ok, detail = fn()
    except NonDiophantineError as exc:
        return CheckResult(name, False, f"{type(exc).__name__}: {exc}")
    return CheckResult(name, bool(ok), detail)


def _axioms(ctx, rng):
    res = field_axioms(ctx, rng, 2000)
    bad = [k for k, ok in res.items() if not ok]
    return not bad, "failed: " + ", ".join(bad) if bad else f"{len(res)} laws"


def _fechner_closed_forms(rng):
    ctx = ar.fechner(10, -20)
    X, Y = ar.from_lower(ctx, rng.uniform(-5, 5, 500)), ar.from_lower(ctx, rng.uniform(-5, 5, 500))
    k = math.exp(ctx.nu / ctx.mu)
    ok = np.allclose((X + Y).value, X.value * Y.value * k, rtol=1e-12, atol=0)
    ok &= np.allclose((-X).value, math.exp(-2 * ctx.nu / ctx.mu) / X.value, rtol=1e-12, atol=0)
    return ok, ""


def _ode(p):
    ctx = ar.power(p)
    xs = np.linspace(-1.5, 1.5, 50)
    d = calc.nd_derivative(calc.conjugate_exp(ctx), xs).value
    err = float(np.max(np.abs(d - np.exp(xs ** p / p))))
    return err < 1e-6, f"max residual {err:.2e}"


def _fundamental():
    cases = [
        (ar.identity(), lambda x: x ** 2, 0.0, 1.0),
        (ar.tangent(1), np.exp, -0.2, 0.2),
        (ar.power(3), np.exp, -1.0, 1.2),
        (ar.fechner(10, -20), np.cos, 6.0, 9.0),
    ]
    worst = max(max(calc.verify_fundamental_theorem(c, a, X, Y)) for c, a, X, Y in cases)
    return worst < 1e-6, f"max residual {worst:.2e}"


def _boosts(ctx, rng, n=200):
    worst = 0.0
    for _ in range(n):
        V = st.FourVector.from_lower(ctx, rng.uniform(-1, 1, 4))
        L = st.BoostParameters.from_rapidity(ctx, rng.uniform(-1.5, 1.5))
        q0 = st.quadratic_form(V).lower
        q1 = st.quadratic_form(st.boost(L, V)).lower
        worst = max(worst, abs(q1 - q0) / (1 + float(np.sum(V.lower ** 2))))
    L = st.BoostParameters.from_rapidity(ctx, 0.8)
    rest = st.boost(L, L.four_velocity()).lower
    ok_rest = np.allclose(rest, [1, 0, 0, 0], rtol=0, atol=1e-9)
    return worst < 1e-9 and ok_rest, f"max scaled drift {worst:.2e}"


def _beta_factorization():
    worst = 0.0
    for y in np.linspace(-0.49, 0.49, 99):
        if abs(y) < 1e-12:
            continue
        z, w = math.pi * y, 2 * y
        for beta, rho in ((fields.apparent_beta_tan(1, y), math.tan(z) / z),
                          (fields.apparent_beta_artanh(1, y), math.atanh(w) / w)):
            worst = max(worst, abs(beta - math.tanh(math.copysign(1, y) * math.log(rho))))
    for u in np.linspace(-0.99, 6, 100):
        if u == 0:
            continue
        rho = abs(math.log1p(u) / u)
        worst = max(worst, abs(fields.apparent_beta_fechner(u) - math.tanh(math.copysign(1, u) * math.log(rho))))
    return worst < 1e-12, f"max deviation {worst:.1e}"


def _friedman():
    ctx = ar.tangent(20)
    cfg = cosmo.FriedmanConfig.default(ctx)
    ok = cosmo.scale_factor(ctx, cfg.T0, cfg.T0).value == ar.neutral_one(ctx).value
    _, T_star = cosmo.friedman_comparison(cfg)
    ident = cosmo.FriedmanConfig.default(ar.identity(), 2.0)
    tab, _ = cosmo.friedman_comparison(ident)
    ok &= all(abs(a - b) <= 1e-12 for _, a, b in tab.rows)
    return ok and T_star is not None, f"T*={T_star}"


def _reject_nonmonotone():
    try:
        ar.custom(lambda x: -x, lambda x: -x, name="reflection")
    except MonotonicityError as exc:
        return True, f"rejected: {exc}"
    return False, "non-monotone bijection was accepted"


def run_selftest(seed: int = 0, inject_nonmonotone: bool = False) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    results = []
    for ctx in catalog():
        results.append(_run(f"field axioms [{ctx}]", lambda: _axioms(ctx, rng)))
    results.append(_run("fechner closed forms", lambda: _fechner_closed_forms(rng)))
    results.append(_run("exp ODE [pow:p=3]", lambda: _ode(3)))
    results.append(_run("exp ODE [pow:p=5]", lambda: _ode(5)))
    results.append(_run("fundamental theorem", _fundamental))
    for ctx in catalog():
        results.append(_run(f"boost invariance [{ctx}]", lambda: _boosts(ctx, rng)))
    results.append(_run("beta factorization", _beta_factorization))
    results.append(_run("friedman identities", _friedman))
    if inject_nonmonotone:
        results.append(_run("custom bijection probe", _reject_nonmonotone))
    return results
