"""Matter-dominated flat FRW scale factor, transplanted to upper reals.

``A(T) = (T (/) T0)^(2' (/) 3') = f^-1((f(T)/f(T0))**(2/3))`` is compared with
the classical ``a(t) = (t/t0)**(2/3)``.  Read with ordinary arithmetic,
``A`` bends upward (apparent acceleration) without any vacuum energy.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .arithmetic import Bijection, UpperReal, as_upper, from_lower, neutral_one
from .errors import DomainError, NegativeRatio
from .table import SeriesTable

# Omega_m = 1, Omega_r = Omega_v = 0 throughout


@dataclass(frozen=True, eq=False)
class FriedmanConfig:
    ctx: Bijection
    T0: float
    times: np.ndarray = field(repr=False)
    t0: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "T0", float(as_upper(self.ctx, self.T0).value))
        if self.ctx.f(self.T0) == 0:
            raise DomainError("T0 must differ from 0'")
        times = np.asarray(self.times, dtype=float)
        self.ctx.check(times)
        object.__setattr__(self, "times", times)

    @classmethod
    def default(cls, ctx: Bijection, T0=None, n: int = 200, t0: float | None = None) -> "FriedmanConfig":
        """Grid over ``(0', horizon)``: ``(0, L/2)`` for interval contexts, ``(0', 8 T0]`` otherwise."""
        T0 = neutral_one(ctx).value if T0 is None else as_upper(ctx, T0).value
        z = float(ctx.finv(0.0))
        if np.isfinite(ctx.domain[1]):
            hi = ctx.closure()[1]
            times = np.linspace(z, hi, n + 2)[1:-1]
        else:
            times = np.linspace(z, z + 8 * (T0 - z), n + 1)[1:]
        return cls(ctx, T0, times, t0)

    def reference_t0(self) -> float:
        """Classical reference time.

        Unless overridden, chosen so the classical curve drawn over raw ``T``
        passes through ``A(T0) = 1'`` at ``T = T0``: ``t0 = T0 / (1')**1.5``.
        """
        if self.t0 is not None:
            return float(self.t0)
        one = neutral_one(self.ctx).value
        if not (one > 0 and self.T0 > 0):
            raise DomainError("default t0 needs 1' > 0 and T0 > 0; pass t0 explicitly")
        return self.T0 / one ** 1.5


def scale_factor(ctx: Bijection, T0, T) -> UpperReal:
    ratio = np.asarray(as_upper(ctx, T).lower / as_upper(ctx, T0).lower)
    if np.any(ratio < 0):
        raise NegativeRatio("f(T)/f(T0) < 0: the 2/3 power is not real")
    return from_lower(ctx, ratio ** (2.0 / 3.0) if ratio.ndim else float(ratio) ** (2.0 / 3.0))


def classical_scale_factor(t, t0):
    ratio = np.asarray(t, dtype=float) / t0
    if np.any(ratio < 0):
        raise NegativeRatio("t/t0 < 0")
    out = ratio ** (2.0 / 3.0)
    return out if out.ndim else float(out)


def second_differences(values) -> np.ndarray:
    v = np.asarray(values, dtype=float)
    return v[2:] - 2 * v[1:-1] + v[:-2]


def acceleration_onset(times, values) -> float | None:
    """First grid time after which every second difference is positive.

    Second differences are attributed to their centre sample.  Returns
    ``None`` when the curve does not end convex.
    """
    d2 = second_differences(values)
    if len(d2) == 0 or d2[-1] <= 0:
        return None
    nonpos = np.flatnonzero(d2 <= 0)
    start = 0 if len(nonpos) == 0 else nonpos[-1] + 1
    return float(np.asarray(times)[1 + start])


def friedman_comparison(cfg: FriedmanConfig) -> tuple[SeriesTable, float | None]:
    """Table ``(T, A, a_classical)`` and the acceleration onset ``T*`` of ``A``."""
    t0 = cfg.reference_t0()
    A = np.asarray(scale_factor(cfg.ctx, cfg.T0, cfg.times).value)
    a = classical_scale_factor(cfg.times, t0)
    T_star = acceleration_onset(cfg.times, A)
    comments = [
        f"ctx={cfg.ctx.spec()}",
        f"T0={cfg.T0!r}",
        f"t0={t0!r}",
        f"L={getattr(cfg.ctx, 'L', '')}",
        f"T_star={'' if T_star is None else repr(T_star)}",
    ]
    rows = [(float(T), float(x), float(y)) for T, x, y in zip(cfg.times, A, a)]
    return SeriesTable(["T", "A", "a_classical"], rows, comments), T_star
