"""Derivatives and integrals with respect to a non-Diophantine arithmetic.

An upper function ``A`` is represented by its lower shadow ``a`` together
with a context, ``A = f^-1 o a o f``.  The conjugation identities

    DA/DX = f^-1(a'(f(X)))
    int_X^Y A DX' = f^-1(int_{f(X)}^{f(Y)} a(x) dx)

never touch derivatives of ``f`` itself, so any bijection works.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import simpson

from .arithmetic import (
    ArrayLike,
    Bijection,
    UpperReal,
    as_upper,
    div,
    from_lower,
    sub,
    add,
)
from .errors import DivisionByZeroPrime, NonFiniteDerivative, QuadratureFailure

DEFAULT_PANELS = 1024
REL_STEP = 1e-6

LowerFunction = Callable[[ArrayLike], ArrayLike]


@dataclass(frozen=True)
class UpperFunction:
    """Upper function ``A = f^-1 o lower o f`` on the context ``ctx``."""

    ctx: Bijection
    lower: LowerFunction

    @classmethod
    def from_upper(cls, ctx: Bijection, A: Callable[[ArrayLike], ArrayLike]) -> "UpperFunction":
        """Wrap a function given directly on raw upper values."""
        return cls(ctx, lambda x: ctx.f(A(ctx.finv(x))))

    def __call__(self, X) -> UpperReal:
        return from_lower(self.ctx, self.lower(as_upper(self.ctx, X).lower))

    # pointwise (+) and (*) of upper functions act on shadows as + and *
    def __add__(self, other: "UpperFunction") -> "UpperFunction":
        a, b = self.lower, other.lower
        return UpperFunction(self.ctx, lambda x: a(x) + b(x))

    def __mul__(self, other: "UpperFunction") -> "UpperFunction":
        a, b = self.lower, other.lower
        return UpperFunction(self.ctx, lambda x: a(x) * b(x))

    def derivative(self) -> "UpperFunction":
        """The upper function ``DA/DX`` (shadow: central-difference ``a'``)."""
        return UpperFunction(self.ctx, lambda x: lower_derivative(self.lower, x))


def lower_derivative(a: LowerFunction, x: ArrayLike) -> ArrayLike:
    """Central difference of ``a`` at ``x`` with relative step 1e-6."""
    x = np.asarray(x, dtype=float) if np.ndim(x) else float(x)
    h = REL_STEP * np.maximum(1.0, np.abs(x))
    with np.errstate(all="ignore"):
        d = (np.asarray(a(x + h)) - np.asarray(a(x - h))) / (2 * h)
    if not np.all(np.isfinite(d)):
        raise NonFiniteDerivative(f"lower difference quotient is not finite at {x}")
    return d if np.ndim(d) else float(d)


def nd_derivative(F: UpperFunction, X) -> UpperReal:
    """``DA/DX`` at ``X`` via conjugation of the lower derivative."""
    x = as_upper(F.ctx, X).lower
    return from_lower(F.ctx, lower_derivative(F.lower, x))


def nd_derivative_limit(F: UpperFunction, X, H) -> UpperReal:
    """One-sided difference quotient ``(A(X (+) H) (-) A(X)) (/) H``.

    Works entirely with upper arithmetic; the caller drives ``H -> 0'``.
    """
    ctx = F.ctx
    X, H = as_upper(ctx, X), as_upper(ctx, H)
    if np.any(np.asarray(H.lower) == 0):
        raise DivisionByZeroPrime("step H equals 0'")
    return div(ctx, sub(ctx, F(add(ctx, X, H)), F(X)), H)


def _simpson(a: LowerFunction, lo: float, hi: float, n: int) -> float:
    if lo == hi:
        return 0.0
    grid = np.linspace(lo, hi, 2 * n + 1)
    with np.errstate(all="ignore"):
        vals = np.asarray(a(grid), dtype=float) * np.ones_like(grid)
    if not np.all(np.isfinite(vals)):
        raise QuadratureFailure(f"integrand not finite on [{lo}, {hi}]")
    return float(simpson(vals, x=grid))


def nd_integral(ctx: Bijection, a: LowerFunction, X, Y, n: int = DEFAULT_PANELS) -> UpperReal:
    """``int_X^Y A(X') DX'`` for ``A = f^-1 o a o f``.

    Composite Simpson with ``n`` panels (``2n`` subintervals) over the lower
    image ``[f(X), f(Y)]``; reversed limits give the negated lower value.
    """
    if n < 1:
        raise ValueError(f"panel count must be >= 1, got {n}")
    lo, hi = as_upper(ctx, X).lower, as_upper(ctx, Y).lower
    return from_lower(ctx, _simpson(a, lo, hi, n))


def verify_fundamental_theorem(ctx: Bijection, a: LowerFunction, X, Y, n: int = DEFAULT_PANELS) -> tuple[float, float]:
    """Lower-image residuals of both halves of the fundamental theorem.

    Returns ``(r1, r2)`` with

    * ``r1 = |f(D/DX int_Y^X A) - f(A(X))|``
    * ``r2 = |f(int_Y^X DA/DX') - f(A(X) (-) A(Y))|``
    """
    F = UpperFunction(ctx, a)
    X, Y = as_upper(ctx, X), as_upper(ctx, Y)
    y = Y.lower

    running = UpperFunction(ctx, lambda z: _simpson(a, y, float(z), n))
    lhs1 = nd_derivative(running, X)
    r1 = abs(lhs1.lower - F(X).lower)

    lhs2 = nd_integral(ctx, F.derivative().lower, Y, X, n)
    rhs2 = sub(ctx, F(X), F(Y))
    r2 = abs(lhs2.lower - rhs2.lower)
    return float(r1), float(r2)


def conjugate_exp(ctx: Bijection) -> UpperFunction:
    """Solution of ``DA/DX = A`` with ``A(0') = 1'``: the conjugated exponential."""
    return UpperFunction(ctx, np.exp)


def convergence_order(steps, errors) -> float:
    """Least-squares slope of ``log(error)`` against ``log(step)``."""
    steps, errors = np.asarray(steps, dtype=float), np.asarray(errors, dtype=float)
    slope, _ = np.polyfit(np.log(steps), np.log(errors), 1)
    return float(slope)
