"""Numerical convolution of two functions over finite time intervals.

The finite element scheme in this package is driven by the bilinear form

    [g, h](t) = integral_0^t g(s) h(t - s) ds

and its restriction to a subinterval [t1, t2],

    [g, h] over [t1, t2] = integral_0^tau g(t1 + s) h(t2 - s) ds,
    tau = t2 - t1.

This module evaluates both by composite quadrature. It exists mainly as an
independent check: every closed-form matrix entry and nodal force elsewhere
in the package can be reproduced here from the defining integrals.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import fsum
from typing import Callable, Iterable

import numpy as np

__all__ = ["QuadratureSpec", "DEFAULT_QUADRATURE", "convolve", "convolve_shifted"]

_RULES = ("gauss", "simpson")


@dataclass(frozen=True)
class QuadratureSpec:
    """Composite quadrature: `panels` equal panels, one base rule per panel.

    rule
        "gauss" (Gauss-Legendre with `points` nodes per panel, exact for
        polynomials up to degree 2*points - 1) or "simpson" (the 3-point
        Simpson rule per panel; `points` is ignored).
    """

    rule: str = "gauss"
    points: int = 5
    panels: int = 8

    def __post_init__(self):
        if self.rule not in _RULES:
            raise ValueError(f"rule must be one of {_RULES}")
        if self.panels < 1:
            raise ValueError("panel count must be at least 1")
        if self.rule == "gauss" and not 2 <= self.points <= 16:
            raise ValueError("gauss points per panel must be in [2, 16]")
        if self.rule == "simpson" and self.panels < 2:
            raise ValueError("composite simpson needs at least 2 panels")


# Exact for every piecewise-polynomial integrand in the scheme and accurate
# to roundoff for sinusoids over element-scale intervals.
DEFAULT_QUADRATURE = QuadratureSpec()


def _unit_rule(spec: QuadratureSpec):
    """Nodes and weights on the unit interval [0, 1]."""
    if spec.rule == "gauss":
        x, w = np.polynomial.legendre.leggauss(spec.points)
        return (x + 1.0) / 2.0, w / 2.0
    return np.array([0.0, 0.5, 1.0]), np.array([1.0, 4.0, 1.0]) / 6.0


def _integrate(
    func: Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec,
    breakpoints: Iterable[float] = (),
) -> float:
    """Composite quadrature of func over [a, b], panel-aligned at breakpoints.

    Gauss panels lose their accuracy across kinks, so callers integrating a
    non-smooth function must list the kink locations; each smooth segment is
    then covered by its own set of panels.
    """
    cuts = [float(p) for p in breakpoints if a < p < b]
    edges = np.array(sorted({a, b, *cuts}), dtype=float)
    nodes, weights = _unit_rule(spec)
    # fsum makes the total independent of summation order and exact to one
    # final rounding
    pieces = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        width = (hi - lo) / spec.panels
        for p in range(spec.panels):
            start = lo + p * width
            pieces.extend(
                width * weights[q] * func(start + nodes[q] * width)
                for q in range(nodes.size)
            )
    return fsum(pieces)


def convolve(
    g: Callable[[float], float],
    h: Callable[[float], float],
    t: float,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
    breakpoints: Iterable[float] = (),
) -> float:
    """Approximate integral_0^t g(s) h(t - s) ds.

    `breakpoints` are kink locations expressed in the integration variable s
    (for a kink of h at x, pass t - x).
    """
    if not t > 0.0:
        raise ValueError("upper limit t must be positive")
    return convolve_shifted(g, h, 0.0, t, quad, breakpoints)


def convolve_shifted(
    g: Callable[[float], float],
    h: Callable[[float], float],
    t1: float,
    t2: float,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
    breakpoints: Iterable[float] = (),
) -> float:
    """Approximate integral_0^tau g(t1 + s) h(t2 - s) ds with tau = t2 - t1.

    Reduces exactly to :func:`convolve` when t1 = 0 (identical quadrature
    nodes). `breakpoints` are offsets into [0, tau].
    """
    if t1 < 0.0:
        raise ValueError("lower endpoint t1 must be nonnegative")
    if not t2 > t1:
        raise ValueError("upper endpoint t2 must exceed t1")

    def integrand(s: float) -> float:
        return g(t1 + s) * h(t2 - s)

    return _integrate(integrand, 0.0, t2 - t1, quad, breakpoints)
