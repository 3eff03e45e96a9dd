"""Convergence orders of the limit-form derivative and of the integral.

The difference quotient (A(X (+) H) (-) A(X)) (/) H should converge at order 1
in the lower step; Simpson quadrature at order 4 in the panel width.
"""

import numpy as np

from nondiophantine import arithmetic as ar
from nondiophantine.calculus import (
    UpperFunction,
    convergence_order,
    nd_derivative,
    nd_derivative_limit,
    nd_integral,
)

CONTEXTS = [ar.power(3), ar.fechner(10, -20), ar.tangent(1), ar.artanh(1)]


def derivative_order(ctx, x=0.3):
    F = UpperFunction(ctx, np.sin)
    X = ctx.finv(x)
    exact = nd_derivative(F, X).lower
    hs = 2.0 ** -np.arange(6, 14)
    errs = [abs(nd_derivative_limit(F, X, ctx.finv(h)).lower - exact) for h in hs]
    return convergence_order(hs, errs)


def integral_order(ctx, a=np.cos, lo=-0.4, hi=0.7):
    exact = np.sin(hi) - np.sin(lo)
    ns = np.array([2, 4, 8, 16, 32])
    errs = [abs(nd_integral(ctx, a, ctx.finv(lo), ctx.finv(hi), n).lower - exact) for n in ns]
    return convergence_order(1.0 / ns, errs)


if __name__ == "__main__":
    print(f"{'context':<24}{'derivative':>12}{'integral':>12}")
    for ctx in CONTEXTS:
        print(f"{str(ctx):<24}{derivative_order(ctx):>12.3f}{integral_order(ctx):>12.3f}")
