"""Parallel transport along piecewise chart curves.

Integrates the horizontal ODE a'(t) = -omega_{gamma(t)}(gamma'(t)) . a(t)
with classical fixed-step RK4 per segment (deterministic by construction);
chart switches at segment junctions go through the same conversion as
chart_change.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence, Tuple

import numpy as np

from ..errors import PathDiscontinuityError
from ..expr import ExprAST
from .data import LocalConnectionData

JUNCTION_TOLERANCE = 1e-8


@dataclass(frozen=True)
class PathSegment:
    chart: str
    curve: Tuple[ExprAST, ...]  # one expression per chart coordinate, in t
    t0: float = 0.0
    t1: float = 1.0

    def at(self, t, params=None):
        """Curve point and velocity at parameter t."""
        x = np.empty(len(self.curve))
        xdot = np.empty(len(self.curve))
        for i, ast in enumerate(self.curve):
            value, tangents = ast.eval_dual([t], params, [[1.0]])
            x[i] = value
            xdot[i] = tangents[0]
        return x, xdot


def parallel_transport(data: LocalConnectionData,
                       path: Sequence[PathSegment],
                       a0, steps=1000) -> np.ndarray:
    a = np.asarray(a0, dtype=float)
    prev = None  # (chart, end point)
    for segment in path:
        x_start, _ = segment.at(segment.t0, data.params)
        if prev is not None:
            prev_chart, x_prev = prev
            if prev_chart == segment.chart:
                if np.linalg.norm(x_prev - x_start) > JUNCTION_TOLERANCE:
                    raise PathDiscontinuityError(
                        f"segments disagree at junction in chart '{prev_chart}'")
            else:
                overlap = data.atlas.require_overlap(prev_chart, segment.chart)
                y = overlap.map_point(x_prev, data.params)
                if np.linalg.norm(y - x_start) > JUNCTION_TOLERANCE:
                    raise PathDiscontinuityError(
                        f"segments disagree at junction "
                        f"'{prev_chart}'->'{segment.chart}'")
                a = data.reverse_transition(prev_chart, segment.chart) \
                        .value(x_prev) @ a
        a = _integrate_segment(data, segment, a, steps)
        x_end, _ = segment.at(segment.t1, data.params)
        prev = (segment.chart, x_end)
    return a


def _integrate_segment(data, segment, a, steps):
    form = data.forms[segment.chart]

    def rhs(t, mat):
        x, xdot = segment.at(t, data.params)
        return -form(x, xdot) @ mat

    h = (segment.t1 - segment.t0) / steps
    t = segment.t0
    for _ in range(steps):
        k1 = rhs(t, a)
        k2 = rhs(t + 0.5 * h, a + 0.5 * h * k1)
        k3 = rhs(t + 0.5 * h, a + 0.5 * h * k2)
        k4 = rhs(t + h, a + h * k3)
        a = a + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t += h
    return a
