"""Lie-algebra-valued local 1-forms on a chart.

A local form assigns to each chart point x and base direction v an (n, n)
algebra element, linearly in v.  Forms are either backed by one coefficient
expression per coordinate (the i-th coefficient multiplies v_i) or by a
composite evaluator closing over other forms and maps, as produced by gauge
transformation, pushforward and tower projection.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Tuple

import numpy as np

from ..expr import ExprAST
from ..lie import GroupMap, adjoint, inverse, log_diff_left


class LocalForm:
    """Base interface: evaluation omega_x(v) plus chart metadata."""

    chart: str
    dim: int
    n: int

    def __call__(self, x, v):
        raise NotImplementedError

    def coefficient(self, x, i):
        """Coefficient matrix of dx_i at x."""
        e = np.zeros(self.dim)
        e[i] = 1.0
        return self(x, e)


@dataclass(frozen=True)
class ExprForm(LocalForm):
    chart: str
    dim: int
    n: int
    coeffs: Tuple[ExprAST, ...]
    params: Mapping[str, float] = field(default_factory=dict)

    def __call__(self, x, v):
        out = np.zeros((self.n, self.n))
        for vi, ast in zip(v, self.coeffs):
            if vi != 0.0:
                out += vi * ast.eval(x, self.params)
        return out

    def coefficient(self, x, i):
        return np.asarray(self.coeffs[i].eval(x, self.params), dtype=float)


@dataclass(frozen=True)
class CallableForm(LocalForm):
    chart: str
    dim: int
    n: int
    fn: Callable[[np.ndarray, np.ndarray], np.ndarray]

    def __call__(self, x, v):
        return self.fn(np.asarray(x, dtype=float), np.asarray(v, dtype=float))


def zero_form(chart, dim, n) -> LocalForm:
    return CallableForm(chart, dim, n, lambda x, v: np.zeros((n, n)))


def gauge_transform(form: LocalForm, g: GroupMap) -> LocalForm:
    """Gauge law: x, v -> Ad(g(x)^-1) . form_x(v) + (g^-1 dg)_x(v).

    The result is a composite evaluator over the same chart; it is also the
    value of the connection operator on the local section s . g.
    """

    def fn(x, v):
        gx_inv = inverse(g.value(x))
        return adjoint(gx_inv, form(x, v)) + gx_inv @ g.derivative(x, v)

    return CallableForm(form.chart, form.dim, form.n, fn)
