"""Deterministic quadrature and finite-difference kernels.

Every routine here is a pure function with a fixed evaluation and summation
order, so results are bit-identical across runs regardless of how callers
parallelize the surrounding work.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence

from ._gauss import NODES_WEIGHTS
from .errors import NonFiniteValue

ALLOWED_POINTS = (4, 8, 16, 32)
MAX_ADAPTIVE_CELLS = 2**20


@dataclass(frozen=True)
class QuadratureSpec:
    """Composite Gauss-Legendre rule: nodes per cell and cell counts per axis.

    1-D integrals use ``cells[0]``; ``adaptive_tol`` (1-D only) doubles the
    cell count until two successive estimates agree to that tolerance.
    """

    points_per_cell: int = 16
    cells: tuple[int, int] = (8, 8)
    adaptive_tol: float | None = None

    def __post_init__(self):
        if self.points_per_cell not in ALLOWED_POINTS:
            raise ValueError(f"points_per_cell must be one of {ALLOWED_POINTS}")
        if min(self.cells) < 1:
            raise ValueError("cell counts must be >= 1")
        if self.adaptive_tol is not None and self.adaptive_tol <= 0:
            raise ValueError("adaptive_tol must be positive")

    def doubled(self) -> "QuadratureSpec":
        return replace(self, cells=(2 * self.cells[0], 2 * self.cells[1]))


@dataclass(frozen=True)
class DiffSpec:
    """Central-difference step and number of Richardson halving levels (0-2)."""

    step: float = 1e-5
    richardson_levels: int = 1

    def __post_init__(self):
        if self.step <= 0:
            raise ValueError("step must be positive")
        if self.richardson_levels not in (0, 1, 2):
            raise ValueError("richardson_levels must be 0, 1 or 2")


def kahan_sum(values: Sequence[float]) -> float:
    """Compensated sum in the given (fixed) order."""
    total = 0.0
    carry = 0.0
    for v in values:
        y = v - carry
        t = total + y
        carry = (t - total) - y
        total = t
    return total


def _check_finite(v: float, where: str) -> float:
    if not math.isfinite(v):
        raise NonFiniteValue(f"non-finite sample in {where}: {v!r}")
    return v


def _composite_1d(f: Callable[[float], float], a: float, b: float,
                  n_points: int, n_cells: int) -> float:
    nodes, weights = NODES_WEIGHTS[n_points]
    h = (b - a) / n_cells
    terms = []
    for c in range(n_cells):
        lo = a + c * h
        mid = lo + 0.5 * h
        half = 0.5 * h
        for x, w in zip(nodes, weights):
            t = mid + half * x
            terms.append(half * w * _check_finite(f(t), "gauss_legendre_1d"))
    return kahan_sum(terms)


def gauss_legendre_1d(f: Callable[[float], float], a: float, b: float,
                      spec: QuadratureSpec) -> float:
    """Composite Gauss-Legendre integral of ``f`` over [a, b]."""
    if not (a < b):
        if a == b:
            return 0.0
        raise ValueError("require a <= b")
    if spec.adaptive_tol is None:
        return _composite_1d(f, a, b, spec.points_per_cell, spec.cells[0])
    cells = spec.cells[0]
    prev = _composite_1d(f, a, b, spec.points_per_cell, cells)
    while cells <= MAX_ADAPTIVE_CELLS // 2:
        cells *= 2
        cur = _composite_1d(f, a, b, spec.points_per_cell, cells)
        if abs(cur - prev) < spec.adaptive_tol:
            return cur
        prev = cur
    return prev


Rect = tuple[tuple[float, float], tuple[float, float]]


def integrate_2d(f: Callable[[float, float], float], rect: Rect,
                 spec: QuadratureSpec) -> float:
    """Tensor-product composite rule over ``rect = ((a1,b1),(a2,b2))``.

    Samples run in row-major cell/node order with compensated summation.
    """
    (a1, b1), (a2, b2) = rect
    if not (a1 < b1 and a2 < b2):
        if a1 == b1 or a2 == b2:
            return 0.0
        raise ValueError("degenerate rectangle")
    nodes, weights = NODES_WEIGHTS[spec.points_per_cell]
    n1, n2 = spec.cells
    h1 = (b1 - a1) / n1
    h2 = (b2 - a2) / n2
    terms = []
    for c1 in range(n1):
        m1 = a1 + (c1 + 0.5) * h1
        for c2 in range(n2):
            m2 = a2 + (c2 + 0.5) * h2
            for x1, w1 in zip(nodes, weights):
                u1 = m1 + 0.5 * h1 * x1
                for x2, w2 in zip(nodes, weights):
                    u2 = m2 + 0.5 * h2 * x2
                    v = _check_finite(f(u1, u2), "integrate_2d")
                    terms.append(0.25 * h1 * h2 * w1 * w2 * v)
    return kahan_sum(terms)


def _diff_once(f: Callable[[float], float], x: float, h: float, order: int) -> float:
    if order == 1:
        return (_check_finite(f(x + h), "central_diff")
                - _check_finite(f(x - h), "central_diff")) / (2.0 * h)
    return (_check_finite(f(x + h), "central_diff")
            - 2.0 * _check_finite(f(x), "central_diff")
            + _check_finite(f(x - h), "central_diff")) / (h * h)


def central_diff(f: Callable[[float], float], x: float, spec: DiffSpec,
                 order: int = 1) -> float:
    """Central difference of ``f`` at ``x`` (order 1 or 2).

    Richardson extrapolation halves the step per level; the truncation error
    is O(step^(2 + 2*levels)) for smooth integrands.
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    levels = spec.richardson_levels
    table = [_diff_once(f, x, spec.step / 2**i, order) for i in range(levels + 1)]
    for j in range(1, levels + 1):
        fac = 4.0**j
        table = [(fac * table[i + 1] - table[i]) / (fac - 1.0)
                 for i in range(len(table) - 1)]
    return table[0]
