"""State-sum oracle for the quantum sl(2) polynomial.

Kept deliberately naive and independent of the complex: every resolution
contributes its crossing coefficients times the web bracket.
"""

from __future__ import annotations

from itertools import product

from .coeff import LaurentQ
from .diagram import LinkDiagram, ResolutionState, resolve

__all__ = ["bracket", "crossing_coefficient", "p2"]

_CIRCLE = LaurentQ({1: 1, -1: 1})


def bracket(r: ResolutionState) -> LaurentQ:
    """Closed-web value: each circle is worth q + q^-1, vertex pairs are free."""
    return _CIRCLE ** r.n_circles


def crossing_coefficient(sign: int, singular: int) -> LaurentQ:
    # positive: q (oriented), -q^2 (singular); negative: q^-1, -q^-2
    e = (2 if singular else 1) * (1 if sign > 0 else -1)
    return LaurentQ({e: -1 if singular else 1})


def p2(d: LinkDiagram) -> LaurentQ:
    total = LaurentQ()
    for choice in product((0, 1), repeat=d.n_crossings):
        term = bracket(resolve(d, choice))
        for cr, b in zip(d.crossings, choice):
            term = term * crossing_coefficient(cr.sign, b)
        total = total + term
    return total
