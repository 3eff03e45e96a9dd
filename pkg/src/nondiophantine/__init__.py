"""Non-Diophantine arithmetic, calculus and the relativistic examples built on them."""

from .arithmetic import (
    Bijection,
    UpperReal,
    add,
    artanh,
    custom,
    div,
    fechner,
    identity,
    mul,
    neg,
    neutral_one,
    neutral_zero,
    parse_bijection,
    pow_nat,
    power,
    sub,
    tangent,
)

__all__ = [
    "Bijection",
    "UpperReal",
    "add",
    "artanh",
    "custom",
    "div",
    "fechner",
    "identity",
    "mul",
    "neg",
    "neutral_one",
    "neutral_zero",
    "parse_bijection",
    "pow_nat",
    "power",
    "sub",
    "tangent",
]
