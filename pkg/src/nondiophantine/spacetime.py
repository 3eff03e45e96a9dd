"""Minkowski structure over upper reals.

A four-vector's lower image ``x^a = f(X^a)`` is an ordinary Minkowski vector,
and every metric operation is the ordinary one conjugated by ``f``.  Causal
predicates (future/past pointing) are decided on the lower image.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .arithmetic import (
    Bijection,
    UpperReal,
    as_upper,
    from_lower,
    neutral_one,
    neutral_zero,
    sub,
    pow_nat,
)
from .errors import ContextMismatch, DomainError, OverflowToBoundary, SingularMetric
from .table import SeriesTable

METRIC = np.array([1.0, -1.0, -1.0, -1.0])


class Variance(enum.Enum):
    CONTRAVARIANT = "contravariant"
    COVARIANT = "covariant"


class Branch(enum.Enum):
    FUTURE = 1
    PAST = -1


@dataclass(frozen=True, eq=False)
class FourVector:
    ctx: Bijection
    components: tuple[float, float, float, float]
    variance: Variance = Variance.CONTRAVARIANT

    def __post_init__(self):
        comps = tuple(float(as_upper(self.ctx, c).value) for c in self.components)
        if len(comps) != 4:
            raise ValueError(f"a four-vector needs 4 components, got {len(comps)}")
        object.__setattr__(self, "components", comps)

    @classmethod
    def from_lower(cls, ctx: Bijection, x, variance=Variance.CONTRAVARIANT) -> "FourVector":
        return cls(ctx, tuple(ctx.lift(np.asarray(x, dtype=float))), variance)

    @property
    def lower(self) -> np.ndarray:
        return np.asarray(self.ctx.f(np.asarray(self.components)), dtype=float)

    def __getitem__(self, i: int) -> UpperReal:
        return UpperReal(self.components[i], self.ctx)

    def __sub__(self, other: "FourVector") -> "FourVector":
        """Componentwise upper difference ``X^a (-) Y^a``."""
        if other.ctx != self.ctx:
            raise ContextMismatch(f"{other.ctx} vs {self.ctx}")
        return FourVector.from_lower(self.ctx, self.lower - other.lower, self.variance)


def metric_upper(ctx: Bijection) -> list[UpperReal]:
    """Diagonal of ``G_ab = f^-1(g_ab)``."""
    return [neutral_one(ctx)] + [from_lower(ctx, -1.0)] * 3


def quadratic_form(V: FourVector) -> UpperReal:
    """``G_ab V^a V^b`` computed as ``f^-1(g_ab f(V^a) f(V^b))``."""
    if V.variance is not Variance.CONTRAVARIANT:
        raise ValueError("quadratic_form expects a contravariant vector")
    x = V.lower
    return from_lower(V.ctx, float(np.dot(METRIC, x * x)))


def quadratic_form_upper(V: FourVector) -> UpperReal:
    """Same form evaluated with upper operations only: ``(X^0)^2' (-) (X^1)^2' (-) ...``."""
    ctx = V.ctx
    acc = pow_nat(ctx, V[0], 2)
    for i in (1, 2, 3):
        acc = sub(ctx, acc, pow_nat(ctx, V[i], 2))
    return acc


def lower_index(V: FourVector) -> FourVector:
    """Swap variance: ``X_a = G_ab X^b``.  Applying it twice is the identity."""
    out = (Variance.COVARIANT if V.variance is Variance.CONTRAVARIANT
           else Variance.CONTRAVARIANT)
    return FourVector.from_lower(V.ctx, METRIC * V.lower, out)


raise_index = lower_index


def usinh(ctx: Bijection, phi) -> UpperReal:
    return from_lower(ctx, np.sinh(as_upper(ctx, phi).lower))


def ucosh(ctx: Bijection, phi) -> UpperReal:
    return from_lower(ctx, np.cosh(as_upper(ctx, phi).lower))


@dataclass(frozen=True, eq=False)
class BoostParameters:
    """Boost along ``x^1`` with upper rapidity ``phi``."""

    ctx: Bijection
    phi: float

    def __post_init__(self):
        object.__setattr__(self, "phi", float(as_upper(self.ctx, self.phi).value))

    @classmethod
    def from_rapidity(cls, ctx: Bijection, lower_phi: float) -> "BoostParameters":
        return cls(ctx, ctx.lift(float(lower_phi)))

    @property
    def rapidity(self) -> float:
        """Lower image ``f(phi)``."""
        return float(self.ctx.f(self.phi))

    def lower_matrix(self) -> np.ndarray:
        """``f`` applied entrywise to the upper boost matrix."""
        r = self.rapidity
        c, s = np.cosh(r), np.sinh(r)
        m = np.eye(4)
        m[0, 0] = m[1, 1] = c
        m[0, 1] = m[1, 0] = -s
        return m

    def matrix(self) -> list[list[UpperReal]]:
        return [[from_lower(self.ctx, v) for v in row] for row in self.lower_matrix()]

    def four_velocity(self) -> FourVector:
        """``(Cosh phi, Sinh phi, 0', 0')``, mapped to ``(1', 0', 0', 0')`` by the boost."""
        ctx = self.ctx
        z = neutral_zero(ctx).value
        return FourVector(ctx, (ucosh(ctx, self.phi).value, usinh(ctx, self.phi).value, z, z))


def boost(L: BoostParameters, V: FourVector) -> FourVector:
    """``X'^a = (+)_b L^a_b (*) X^b``, evaluated in the lower image."""
    if L.ctx != V.ctx:
        raise ContextMismatch(f"boost in {L.ctx} applied to vector in {V.ctx}")
    return FourVector.from_lower(V.ctx, L.lower_matrix() @ V.lower, V.variance)


def hyperbolic_identity(ctx: Bijection, phi) -> UpperReal:
    """``Cosh^2' phi (-) Sinh^2' phi``; equals ``1'`` up to rounding."""
    return sub(ctx, pow_nat(ctx, ucosh(ctx, phi), 2), pow_nat(ctx, usinh(ctx, phi), 2))


def lightcone_time(ctx: Bijection, apex: FourVector, spatial: Sequence[float], branch=Branch.FUTURE) -> UpperReal:
    """Time component ``X^0`` on the light cone with vertex ``apex``.

    Solves ``G_ab (X (-) Y)^a (X (-) Y)^b = 0'`` on the requested branch:
    ``X^0 = f^-1(f(Y^0) +- sqrt(sum_i (f(X^i) - f(Y^i))^2))``.
    """
    if apex.ctx != ctx:
        raise ContextMismatch(f"apex in {apex.ctx}, context {ctx}")
    branch = Branch(branch) if not isinstance(branch, Branch) else branch
    xs = np.array([as_upper(ctx, s).lower for s in spatial], dtype=float)
    if len(xs) != 3:
        raise ValueError("need three spatial components")
    y = apex.lower
    radius = float(np.sqrt(np.sum((xs - y[1:]) ** 2)))
    return from_lower(ctx, y[0] + branch.value * radius)


def null_residual(X: FourVector, Y: FourVector) -> float:
    """Lower image of ``G(X (-) Y, X (-) Y)`` relative to ``max(1, |f(X) - f(Y)|^2)``."""
    d = X - Y
    q = abs(float(quadratic_form(d).lower))
    return q / max(1.0, float(np.sum(d.lower ** 2)))


@dataclass(frozen=True, eq=False)
class EffectiveMetric:
    """Local metric ``g_ab f'(Y^a) f'(Y^b)`` seen with ordinary arithmetic near ``Y``."""

    base: FourVector
    diagonal: np.ndarray

    def interval(self, eps) -> float:
        eps = np.asarray(eps, dtype=float)
        return float(np.dot(self.diagonal, eps * eps))


def effective_metric(ctx: Bijection, Y: FourVector) -> EffectiveMetric:
    if Y.ctx != ctx:
        raise ContextMismatch(f"base point in {Y.ctx}, context {ctx}")
    with np.errstate(all="ignore"):
        d = np.asarray(ctx.fprime(np.asarray(Y.components)), dtype=float)
    if not np.all(np.isfinite(d)) or np.any(d == 0):
        raise SingularMetric(f"f' not finite and non-zero at {Y.components}")
    return EffectiveMetric(Y, METRIC * d * d)


def lorentzian_residual(ctx: Bijection, Y: FourVector, direction: Sequence[float], scale: float) -> float:
    """``|g~_ab eps^a eps^b|`` for a cone point ``X = Y + eps`` (raw addition).

    The spatial part of ``eps`` is ``scale * direction``; its time part is
    fixed by putting ``X`` on the future cone of ``Y``.  Scales like
    ``scale**3`` wherever ``f''`` does not vanish at ``Y``.
    """
    g = effective_metric(ctx, Y)
    y = np.asarray(Y.components)
    eps_s = scale * np.asarray(direction, dtype=float)
    x0 = lightcone_time(ctx, Y, y[1:] + eps_s, Branch.FUTURE).value
    eps = np.concatenate([[x0 - y[0]], eps_s])
    return abs(g.interval(eps))


@dataclass(frozen=True)
class GridSpec:
    """Rectangular grid over ``(X^1, X^2)``; endpoints are included."""

    x1: tuple[float, float]
    x2: tuple[float, float]
    n1: int = 41
    n2: int = 41

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        return np.linspace(*self.x1, self.n1), np.linspace(*self.x2, self.n2)


def _cone_row(ctx: Bijection, apex: FourVector, x1: float, x2s: np.ndarray, x3: float) -> list[tuple]:
    rows = []
    for x2 in x2s:
        cells = []
        if ctx.on_boundary(x1) or ctx.on_boundary(x2):
            cells = [None, None]
        else:
            for branch in (Branch.FUTURE, Branch.PAST):
                try:
                    cells.append(lightcone_time(ctx, apex, (x1, x2, x3), branch).value)
                except OverflowToBoundary:
                    cells.append(None)
        rows.append((float(x1), float(x2), *cells))
    return rows


def lightcone_surface(ctx: Bijection, apex: FourVector, grid: GridSpec, max_workers: int | None = None) -> SeriesTable:
    """Sample both sheets of the cone over a ``(X^1, X^2)`` grid, ``X^3`` frozen at the apex.

    Grid points on the domain boundary and cells whose time component has no
    interior preimage are horizon cells and come out as missing samples.
    Points strictly outside the domain raise :class:`DomainError`.
    """
    a1, a2 = grid.axes()
    for axis in (a1, a2):
        outside = ~(ctx.inside(axis) | ctx.on_boundary(axis))
        if np.any(outside):
            raise DomainError(f"grid values {axis[outside][:3].tolist()} outside {ctx.domain}")
    x3 = apex.components[3]
    if max_workers and max_workers > 1:
        with ThreadPoolExecutor(max_workers) as pool:
            chunks = list(pool.map(lambda x1: _cone_row(ctx, apex, x1, a2, x3), a1))
    else:
        chunks = [_cone_row(ctx, apex, x1, a2, x3) for x1 in a1]
    rows = [r for chunk in chunks for r in chunk]
    return SeriesTable(["X1", "X2", "X0_future", "X0_past"], rows)
