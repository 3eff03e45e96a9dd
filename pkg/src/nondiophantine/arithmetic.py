"""Bijection-induced (non-Diophantine) arithmetic.

A :class:`Bijection` ``f`` maps an interval of "upper" reals onto the ordinary
"lower" reals.  Every arithmetic operation on upper reals is the ordinary
operation conjugated by ``f``::

    X (+) Y = f^-1(f(X) + f(Y))      X (*) Y = f^-1(f(X) * f(Y))

Values are stored raw (as numbers in the upper domain) and every operation is
routed through ``f`` and ``f^-1`` in double precision.  All functions accept
either :class:`UpperReal` instances or plain numbers / numpy arrays, which are
validated against the context before use.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from .errors import (
    BijectionSpecError,
    ContextMismatch,
    DivisionByZeroPrime,
    DomainError,
    MonotonicityError,
    OverflowToBoundary,
)

ArrayLike = Union[float, np.ndarray]

# tangent/artanh values this close (in units of L) to +-L/2 are rejected
BOUNDARY_MARGIN = 1e-12
MONOTONICITY_SAMPLES = 1024
_FD_STEP = 1e-6


class Bijection:
    """Strictly increasing map from an upper-real interval onto the reals."""

    kind: str = "abstract"

    def f(self, X: ArrayLike) -> ArrayLike:
        raise NotImplementedError

    def finv(self, x: ArrayLike) -> ArrayLike:
        raise NotImplementedError

    def fprime(self, X: ArrayLike) -> ArrayLike:
        """Derivative of ``f``; central differences unless overridden."""
        X = np.asarray(X, dtype=float)
        h = _FD_STEP * np.maximum(1.0, np.abs(X))
        return (self.f(X + h) - self.f(X - h)) / (2 * h)

    @property
    def domain(self) -> tuple[float, float]:
        return (-math.inf, math.inf)

    def inside(self, X: ArrayLike) -> np.ndarray:
        """Elementwise test for strict membership in the usable domain."""
        X = np.asarray(X, dtype=float)
        lo, hi = self.domain
        return np.isfinite(X) & (X > lo) & (X < hi)

    def on_boundary(self, X: ArrayLike) -> np.ndarray:
        """Elementwise test for points on the closure of the domain but not inside.

        These are horizon points: ``f`` diverges (or is about to) there.
        """
        X = np.asarray(X, dtype=float)
        lo, hi = self.closure()
        return ~self.inside(X) & (X >= lo) & (X <= hi)

    def closure(self) -> tuple[float, float]:
        return self.domain

    def check(self, X: ArrayLike) -> None:
        if not np.all(self.inside(X)):
            bad = np.asarray(X, dtype=float)[~self.inside(X)] if np.ndim(X) else X
            raise DomainError(f"{np.ravel(bad)[:3].tolist()} outside domain {self.domain} of {self}")

    def lift(self, x: ArrayLike) -> ArrayLike:
        """Map a lower-real intermediate back into the upper domain."""
        x = np.asarray(x, dtype=float) if np.ndim(x) else float(x)
        if not np.all(np.isfinite(x)):
            raise OverflowToBoundary(f"non-finite lower value under {self}")
        X = self.finv(x)
        if not np.all(self.inside(X)):
            raise OverflowToBoundary(f"lower value {np.max(np.abs(x))} has no interior preimage under {self}")
        return X

    def spec(self) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.spec()


@dataclass(frozen=True)
class Identity(Bijection):
    kind = "identity"

    def f(self, X):
        return X * 1.0

    def finv(self, x):
        return x * 1.0

    def fprime(self, X):
        return np.ones_like(np.asarray(X, dtype=float))

    def spec(self):
        return "id"


@dataclass(frozen=True)
class Power(Bijection):
    p: int = 3
    kind = "power"

    def __post_init__(self):
        if int(self.p) != self.p or self.p < 1 or self.p % 2 == 0:
            raise BijectionSpecError(f"power bijection needs an odd integer p >= 1, got {self.p}")

    def f(self, X):
        return np.power(X, self.p) if np.ndim(X) else float(X) ** self.p

    def finv(self, x):
        if self.p == 3:
            return np.cbrt(x) if np.ndim(x) else float(np.cbrt(x))
        r = np.sign(x) * np.abs(x) ** (1.0 / self.p)
        return r if np.ndim(x) else float(r)

    def fprime(self, X):
        return self.p * np.power(np.asarray(X, dtype=float), self.p - 1)

    def spec(self):
        return f"pow:p={self.p}"


@dataclass(frozen=True)
class Fechner(Bijection):
    """``f(X) = mu ln X + nu`` on the positive half-line."""

    mu: float = 1.0
    nu: float = 0.0
    kind = "fechner"

    def __post_init__(self):
        if not self.mu > 0:
            raise BijectionSpecError(f"fechner needs mu > 0, got {self.mu}")

    @property
    def domain(self):
        return (0.0, math.inf)

    def closure(self):
        return (0.0, math.inf)

    def f(self, X):
        with np.errstate(divide="ignore"):
            r = self.mu * np.log(X) + self.nu
        return r if np.ndim(X) else float(r)

    def finv(self, x):
        with np.errstate(over="ignore"):
            r = np.exp((np.asarray(x, dtype=float) - self.nu) / self.mu)
        return r if np.ndim(x) else float(r)

    def fprime(self, X):
        return self.mu / np.asarray(X, dtype=float)

    def spec(self):
        return f"fechner:mu={_fmt(self.mu)},nu={_fmt(self.nu)}"


@dataclass(frozen=True)
class _Interval(Bijection):
    L: float = 1.0

    def __post_init__(self):
        if not self.L > 0:
            raise BijectionSpecError(f"{self.kind} needs L > 0, got {self.L}")

    @property
    def domain(self):
        half = self.L / 2 - BOUNDARY_MARGIN * self.L
        return (-half, half)

    def closure(self):
        return (-self.L / 2, self.L / 2)


@dataclass(frozen=True)
class Tangent(_Interval):
    """``f(X) = tan(pi X / L)`` on ``(-L/2, L/2)``."""

    kind = "tangent"

    def f(self, X):
        r = np.tan(np.pi * np.asarray(X, dtype=float) / self.L)
        return r if np.ndim(X) else float(r)

    def finv(self, x):
        r = (self.L / np.pi) * np.arctan(x)
        return r if np.ndim(x) else float(r)

    def fprime(self, X):
        c = np.cos(np.pi * np.asarray(X, dtype=float) / self.L)
        return (np.pi / self.L) / (c * c)

    def spec(self):
        return f"tan:L={_fmt(self.L)}"


@dataclass(frozen=True)
class Artanh(_Interval):
    """``f(X) = artanh(2X / L)`` on ``(-L/2, L/2)``."""

    kind = "artanh"

    def f(self, X):
        with np.errstate(divide="ignore"):
            r = np.arctanh(2 * np.asarray(X, dtype=float) / self.L)
        return r if np.ndim(X) else float(r)

    def finv(self, x):
        r = (self.L / 2) * np.tanh(x)
        return r if np.ndim(x) else float(r)

    def fprime(self, X):
        w = 2 * np.asarray(X, dtype=float) / self.L
        return (2 / self.L) / (1 - w * w)

    def spec(self):
        return f"artanh:L={_fmt(self.L)}"


@dataclass(frozen=True)
class Custom(Bijection):
    """User-supplied bijection.

    Construct through :func:`custom`, which runs the monotonicity probe.
    ``derivative`` is optional; without it :meth:`fprime` uses central
    differences.
    """

    forward: Callable = field(repr=False, default=None)
    inverse: Callable = field(repr=False, default=None)
    derivative: Callable | None = field(repr=False, default=None)
    bounds: tuple[float, float] = (-math.inf, math.inf)
    name: str = "custom"
    kind = "custom"

    @property
    def domain(self):
        return self.bounds

    def f(self, X):
        return self.forward(X)

    def finv(self, x):
        return self.inverse(x)

    def fprime(self, X):
        if self.derivative is None:
            return super().fprime(X)
        return self.derivative(X)

    def spec(self):
        return self.name


def identity() -> Identity:
    return Identity()


def power(p: int = 3) -> Power:
    return Power(p)


def fechner(mu: float = 1.0, nu: float = 0.0) -> Fechner:
    return Fechner(float(mu), float(nu))


def tangent(L: float = 1.0) -> Tangent:
    return Tangent(float(L))


def artanh(L: float = 1.0) -> Artanh:
    return Artanh(float(L))


def custom(f, finv, fprime=None, domain=(-math.inf, math.inf), name="custom") -> Custom:
    """Build a custom bijection after probing it for strict monotonicity.

    The probe samples 1024 interior points, checks that ``f`` is strictly
    increasing on them and that ``finv`` undoes ``f``.
    """
    ctx = Custom(f, finv, fprime, tuple(float(b) for b in domain), name)
    lo, hi = ctx.bounds
    if math.isinf(lo) and math.isinf(hi):
        probe = np.linspace(-50.0, 50.0, MONOTONICITY_SAMPLES)
    elif math.isinf(hi):
        probe = lo + np.geomspace(1e-6, 1e6, MONOTONICITY_SAMPLES)
    elif math.isinf(lo):
        probe = hi - np.geomspace(1e6, 1e-6, MONOTONICITY_SAMPLES)
    else:
        probe = np.linspace(lo, hi, MONOTONICITY_SAMPLES + 2)[1:-1]
    try:
        y = np.asarray([float(f(X)) for X in probe])
        back = np.asarray([float(finv(v)) for v in y])
    except Exception as exc:
        raise MonotonicityError(f"{name}: probe evaluation failed: {exc}") from exc
    ok = np.isfinite(y)
    if ok.sum() < 2 or not np.all(np.diff(y[ok]) > 0):
        raise MonotonicityError(f"{name}: f is not strictly increasing on the probe grid")
    if not np.allclose(back[ok], probe[ok], rtol=1e-9, atol=1e-12):
        raise MonotonicityError(f"{name}: finv does not invert f on the probe grid")
    return ctx


_SPEC_RE = re.compile(r"^(?P<kind>[a-z]+)(?::(?P<args>.*))?$")
_SPEC_KEYS = {
    "id": ((), lambda: identity()),
    "pow": (("p",), lambda p: power(_as_int(p))),
    "fechner": (("mu", "nu"), lambda mu, nu: fechner(mu, nu)),
    "tan": (("L",), lambda L: tangent(L)),
    "artanh": (("L",), lambda L: artanh(L)),
}


def _as_int(v: float) -> int:
    if v != int(v):
        raise BijectionSpecError(f"expected an integer, got {v}")
    return int(v)


def parse_bijection(text: str) -> Bijection:
    """Parse a spec string such as ``fechner:mu=10,nu=-20`` or ``tan:L=1``.

    Parsing is case-sensitive; unknown kinds or keys are errors.
    """
    m = _SPEC_RE.match(text.strip())
    if not m or m["kind"] not in _SPEC_KEYS:
        raise BijectionSpecError(f"unknown bijection spec {text!r}")
    keys, build = _SPEC_KEYS[m["kind"]]
    args: dict[str, float] = {}
    if m["args"]:
        for part in m["args"].split(","):
            key, sep, val = part.partition("=")
            key = key.strip()
            if not sep or key not in keys:
                raise BijectionSpecError(f"unknown key {key!r} in {text!r}")
            if key in args:
                raise BijectionSpecError(f"duplicate key {key!r} in {text!r}")
            try:
                args[key] = float(val)
            except ValueError:
                raise BijectionSpecError(f"bad number {val!r} for {key!r}") from None
    missing = [k for k in keys if k not in args]
    if missing:
        raise BijectionSpecError(f"missing {missing} in {text!r}")
    return build(*(args[k] for k in keys))


def _fmt(v: float) -> str:
    return str(int(v)) if float(v).is_integer() else repr(float(v))


@dataclass(frozen=True, eq=False)
class UpperReal:
    """A value in the upper domain of ``ctx``; may wrap a numpy array.

    Python operators map onto the conjugated operations: ``+ - * /`` are
    (+) (-) (*) (/), unary ``-`` is the upper negative.
    """

    value: ArrayLike
    ctx: Bijection

    def __post_init__(self):
        v = np.asarray(self.value, dtype=float) if np.ndim(self.value) else float(self.value)
        object.__setattr__(self, "value", v)
        self.ctx.check(v)

    @property
    def lower(self) -> ArrayLike:
        return self.ctx.f(self.value)

    def __float__(self):
        return float(self.value)

    def __repr__(self):
        return f"UpperReal({self.value!r}, {self.ctx})"

    def __add__(self, other):
        return add(self.ctx, self, other)

    def __radd__(self, other):
        return add(self.ctx, other, self)

    def __sub__(self, other):
        return sub(self.ctx, self, other)

    def __rsub__(self, other):
        return sub(self.ctx, other, self)

    def __mul__(self, other):
        return mul(self.ctx, self, other)

    def __rmul__(self, other):
        return mul(self.ctx, other, self)

    def __truediv__(self, other):
        return div(self.ctx, self, other)

    def __rtruediv__(self, other):
        return div(self.ctx, other, self)

    def __neg__(self):
        return neg(self.ctx, self)

    # the upper order is the order of the lower images; f is increasing so it
    # coincides with the raw order
    def __lt__(self, other):
        return self.lower < as_upper(self.ctx, other).lower

    def __le__(self, other):
        return self.lower <= as_upper(self.ctx, other).lower


def as_upper(ctx: Bijection, X) -> UpperReal:
    """Wrap ``X`` in ``ctx``; refuse upper reals that carry another context."""
    if isinstance(X, UpperReal):
        if X.ctx != ctx:
            raise ContextMismatch(f"value from {X.ctx} used in {ctx}")
        return X
    return UpperReal(X, ctx)


def from_lower(ctx: Bijection, x: ArrayLike) -> UpperReal:
    """The upper real whose lower image is ``x``."""
    return UpperReal(ctx.lift(x), ctx)


def neutral_zero(ctx: Bijection) -> UpperReal:
    return UpperReal(ctx.finv(0.0), ctx)


def neutral_one(ctx: Bijection) -> UpperReal:
    return UpperReal(ctx.finv(1.0), ctx)


def add(ctx: Bijection, X, Y) -> UpperReal:
    return from_lower(ctx, as_upper(ctx, X).lower + as_upper(ctx, Y).lower)


def sub(ctx: Bijection, X, Y) -> UpperReal:
    return from_lower(ctx, as_upper(ctx, X).lower - as_upper(ctx, Y).lower)


def mul(ctx: Bijection, X, Y) -> UpperReal:
    return from_lower(ctx, as_upper(ctx, X).lower * as_upper(ctx, Y).lower)


def div(ctx: Bijection, X, Y) -> UpperReal:
    y = as_upper(ctx, Y).lower
    if np.any(np.asarray(y) == 0):
        raise DivisionByZeroPrime(f"division by 0' in {ctx}")
    return from_lower(ctx, as_upper(ctx, X).lower / y)


def neg(ctx: Bijection, X) -> UpperReal:
    """The upper negative ``0' (-) X = f^-1(-f(X))``."""
    return from_lower(ctx, -as_upper(ctx, X).lower)


def pow_nat(ctx: Bijection, X, N: int) -> UpperReal:
    """``X (*) ... (*) X`` with ``N`` factors, i.e. ``f^-1(f(X)**N)``."""
    if int(N) != N or N < 1:
        raise DomainError(f"pow_nat needs a natural exponent N >= 1, got {N}")
    return from_lower(ctx, as_upper(ctx, X).lower ** int(N))


def weber_increment(ctx: Bijection, x, k: float) -> UpperReal:
    """Perceived increment ``(x + k x) (-) x`` for a Fechner context.

    ``+`` and ``*`` inside are the ordinary operations on raw values.  The
    result does not depend on ``x``: it equals ``(1 + k) 0'``.
    """
    if not isinstance(ctx, Fechner):
        raise DomainError(f"weber_increment requires a fechner context, got {ctx}")
    if k < 0:
        raise DomainError(f"Weber constant must be non-negative, got {k}")
    raw = as_upper(ctx, x).value
    return sub(ctx, UpperReal(raw + k * raw, ctx), UpperReal(raw, ctx))
