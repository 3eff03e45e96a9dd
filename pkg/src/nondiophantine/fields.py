"""Potential of a point charge and the velocity a mismatched observer infers.

Only the configuration with constant four-velocity, observer at the origin
``0'`` and source on the ``X^1`` axis is handled.  The source event ``Y`` is
null and past-pointing, so ``f(Y^0) = -|f(Y^1)|``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arithmetic import (
    Artanh,
    Bijection,
    Fechner,
    Identity,
    Tangent,
    UpperReal,
    as_upper,
    neutral_zero,
)
from .errors import DomainError, SourceAtObserver
from .spacetime import METRIC, BoostParameters, FourVector, boost
from .table import SeriesTable

_NULL_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class ChargeConfig:
    ctx: Bijection
    C: float
    phi: float
    source: FourVector

    def __post_init__(self):
        object.__setattr__(self, "C", float(as_upper(self.ctx, self.C).value))
        object.__setattr__(self, "phi", float(as_upper(self.ctx, self.phi).value))
        y = self.source.lower
        if y[1] == 0:
            raise SourceAtObserver("source coincides with the observer (f(Y^1) = 0)")
        if abs(y[0] + abs(y[1])) > _NULL_RTOL * max(1.0, abs(y[1])) or np.any(y[2:] != 0):
            raise DomainError(f"source {self.source.components} is not null past-pointing on the X^1 axis")

    @classmethod
    def on_axis(cls, ctx: Bijection, C, Y1, phi=None) -> "ChargeConfig":
        """Source at ``(Y^0, Y^1, 0', 0')`` with ``Y^0`` placed on the past cone."""
        y1 = as_upper(ctx, Y1).lower
        if y1 == 0:
            raise SourceAtObserver("Y^1 equals 0'")
        z = neutral_zero(ctx).value
        y0 = ctx.lift(-abs(y1))
        phi = z if phi is None else phi
        return cls(ctx, C, phi, FourVector(ctx, (y0, as_upper(ctx, Y1).value, z, z)))


def potential(cfg: ChargeConfig) -> FourVector:
    """Four-potential at the origin in the boosted frame.

    ``f(A'^a) = f(C) f((LU)^a) / (g_bc f((LU)^b) (f(0') - f((LY)^c)))`` with ``L``
    the boost by ``phi`` and ``U`` the matching four-velocity.
    """
    ctx = cfg.ctx
    L = BoostParameters(ctx, cfg.phi)
    u = boost(L, L.four_velocity()).lower
    y = boost(L, cfg.source).lower
    denom = float(np.dot(METRIC * u, 0.0 - y))
    c = as_upper(ctx, cfg.C).lower
    return FourVector.from_lower(ctx, c * u / denom)


def potential_at_origin(cfg: ChargeConfig) -> UpperReal:
    """Only non-vanishing component ``A'^0(0')``."""
    return potential(cfg)[0]


def coulomb_charge(ctx: Bijection, C) -> float:
    """Effective Coulomb charge ``q`` an ordinary-arithmetic observer sees near the origin."""
    c = as_upper(ctx, C).lower
    if isinstance(ctx, Identity):
        return c
    if isinstance(ctx, Tangent):
        return ctx.L ** 2 * c / math.pi ** 2
    if isinstance(ctx, Artanh):
        return ctx.L ** 2 * c / 4
    if isinstance(ctx, Fechner):
        return c * (math.exp(-ctx.nu / ctx.mu) / ctx.mu) ** 2
    raise NotImplementedError(f"no Coulomb identification for {ctx}")


def coulomb_approximation(cfg: ChargeConfig) -> float:
    """``0' + q/|r|`` with ``r = Y^1 - 0'`` (raw subtraction): the near-origin field."""
    z = neutral_zero(cfg.ctx).value
    r = cfg.source.components[1] - z
    return z + coulomb_charge(cfg.ctx, cfg.C) / abs(r)


def rapidity_from_ratio(rho: float, sign: int) -> tuple[float, float]:
    """Rapidity ``f(phi)`` and velocity from ``exp(sign f(phi)) = rho``."""
    if not rho > 0:
        raise DomainError(f"ratio must be positive, got {rho}")
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign}")
    r = sign * math.log(rho)
    return r, math.tanh(r)


def _interval_arg(L: float, Y1: float) -> float:
    if not L > 0:
        raise DomainError(f"L must be positive, got {L}")
    if Y1 == 0 or not abs(Y1) < L / 2:
        raise DomainError(f"need 0 < |Y1| < L/2, got Y1={Y1}, L={L}")
    return Y1 / L


def apparent_beta_tan(L: float, Y1: float) -> float:
    z = math.pi * _interval_arg(L, Y1)
    return rapidity_from_ratio(math.tan(z) / z, 1 if Y1 > 0 else -1)[1]


def apparent_beta_artanh(L: float, Y1: float) -> float:
    w = 2 * _interval_arg(L, Y1)
    return rapidity_from_ratio(math.atanh(w) / w, 1 if Y1 > 0 else -1)[1]


def apparent_beta_fechner(u: float) -> float:
    """Velocity as a function of ``u = r/0'`` in the Fechner case; always negative."""
    if not u > -1 or u == 0:
        raise DomainError(f"need u > -1 and u != 0, got {u}")
    return rapidity_from_ratio(abs(math.log1p(u) / u), 1 if u > 0 else -1)[1]


BETA_KINDS = ("tan", "artanh", "fechner")


def beta_grid(kind: str, n: int, L: float = 1.0, umax: float = 6.0) -> np.ndarray:
    """``n`` coordinates strictly inside the valid range (open ends)."""
    if kind in ("tan", "artanh"):
        return np.linspace(-L / 2, L / 2, n + 2)[1:-1]
    if kind == "fechner":
        return np.linspace(-1.0, umax, n + 1)[1:]
    raise ValueError(f"unknown kind {kind!r}; expected one of {BETA_KINDS}")


def beta_curve(kind: str, n: int = 101, L: float = 1.0, umax: float = 6.0) -> SeriesTable:
    """Sampled ``beta`` curve; the removable point at coordinate 0 is left missing."""
    xs = beta_grid(kind, n, L, umax)
    if kind == "tan":
        fn, name = (lambda v: apparent_beta_tan(L, v)), "Y1"
    elif kind == "artanh":
        fn, name = (lambda v: apparent_beta_artanh(L, v)), "Y1"
    else:
        fn, name = apparent_beta_fechner, "u"
    rows = [(float(v), None if v == 0 else fn(float(v))) for v in xs]
    return SeriesTable([name, "beta"], rows)
