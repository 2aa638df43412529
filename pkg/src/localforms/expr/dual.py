"""Forward-mode dual values.

A Dual carries a primal value (a float or an (n, m) matrix) together with one
tangent per active seed direction.  Scalar tangents are stored as a (k,)
array, matrix tangents as (k, n, m), where k is the number of seeds of the
current evaluation.  All arithmetic propagates tangents by the exact product
and chain rules; the matrix exponential is differentiated through the
augmented block exponential

    exp([[A, E], [0, A]]) = [[exp A, Dexp_A(E)], [0, exp A]],

which is exact to rounding, never by finite differences.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.linalg import expm

from ..errors import DomainError, ShapeError


class Dual:
    __slots__ = ("primal", "tangent")

    def __init__(self, primal, tangent):
        self.primal = primal
        self.tangent = tangent

    @property
    def is_matrix(self):
        return isinstance(self.primal, np.ndarray)

    @property
    def n_seeds(self):
        return self.tangent.shape[0]

    @classmethod
    def constant(cls, value, n_seeds):
        if isinstance(value, np.ndarray):
            return cls(value.astype(float), np.zeros((n_seeds,) + value.shape))
        return cls(float(value), np.zeros(n_seeds))

    @classmethod
    def scalar(cls, value, tangent):
        return cls(float(value), np.asarray(tangent, dtype=float))

    @classmethod
    def matrix(cls, value, tangent):
        value = np.asarray(value, dtype=float)
        tangent = np.asarray(tangent, dtype=float)
        if tangent.shape[1:] != value.shape:
            raise ShapeError("matrix tangent shape does not match primal")
        return cls(value, tangent)

    # ----- arithmetic -------------------------------------------------

    def __add__(self, other):
        _require_same_kind(self, other, "+")
        return Dual(self.primal + other.primal, self.tangent + other.tangent)

    def __sub__(self, other):
        _require_same_kind(self, other, "-")
        return Dual(self.primal - other.primal, self.tangent - other.tangent)

    def __neg__(self):
        return Dual(-self.primal, -self.tangent)

    def __mul__(self, other):
        a, b = self, other
        if not a.is_matrix and not b.is_matrix:
            return Dual(a.primal * b.primal,
                        a.tangent * b.primal + a.primal * b.tangent)
        if not a.is_matrix:
            return Dual(a.primal * b.primal,
                        a.tangent[:, None, None] * b.primal + a.primal * b.tangent)
        if not b.is_matrix:
            return b.__mul__(a)
        if a.primal.shape[1] != b.primal.shape[0]:
            raise ShapeError(
                f"matrix product of {a.primal.shape} by {b.primal.shape}")
        return Dual(a.primal @ b.primal,
                    a.tangent @ b.primal + a.primal @ b.tangent)

    def __truediv__(self, other):
        if other.is_matrix:
            raise ShapeError("division by a matrix is not defined")
        if other.primal == 0.0:
            raise DomainError("division by zero")
        if not self.is_matrix:
            inv = 1.0 / other.primal
            return Dual(self.primal * inv,
                        (self.tangent * other.primal
                         - self.primal * other.tangent) * inv * inv)
        inv = 1.0 / other.primal
        return Dual(self.primal * inv,
                    self.tangent * inv
                    - other.tangent[:, None, None] * self.primal * inv * inv)

    def powi(self, exponent):
        """Integer power of a scalar."""
        if self.is_matrix:
            raise ShapeError("^ applies to scalars only")
        p = self.primal
        if exponent == 0:
            return Dual.constant(1.0, self.n_seeds)
        if p == 0.0 and exponent < 0:
            raise DomainError("zero raised to a negative power")
        if p == 0.0 and exponent == 1:
            return self
        value = p ** exponent
        deriv = exponent * p ** (exponent - 1)
        return Dual(value, deriv * self.tangent)

    # ----- scalar functions -------------------------------------------

    def _map(self, fn, dfn):
        if self.is_matrix:
            raise ShapeError("scalar function applied to a matrix")
        return Dual(fn(self.primal), dfn(self.primal) * self.tangent)

    def sin(self):
        return self._map(math.sin, math.cos)

    def cos(self):
        return self._map(math.cos, lambda p: -math.sin(p))

    def tan(self):
        return self._map(math.tan, lambda p: 1.0 / math.cos(p) ** 2)

    def exp(self):
        return self._map(math.exp, math.exp)

    def log(self):
        if self.is_matrix:
            raise ShapeError("log applied to a matrix")
        if self.primal <= 0.0:
            raise DomainError("log of a non-positive number")
        return Dual(math.log(self.primal), self.tangent / self.primal)

    def sqrt(self):
        if self.is_matrix:
            raise ShapeError("sqrt applied to a matrix")
        if self.primal < 0.0:
            raise DomainError("sqrt of a negative number")
        if self.primal == 0.0:
            raise DomainError("sqrt differentiated at zero")
        root = math.sqrt(self.primal)
        return Dual(root, self.tangent / (2.0 * root))

    @staticmethod
    def atan2(y, x):
        if y.is_matrix or x.is_matrix:
            raise ShapeError("atan2 applied to a matrix")
        denom = y.primal * y.primal + x.primal * x.primal
        if denom == 0.0:
            raise DomainError("atan2 at the origin")
        value = math.atan2(y.primal, x.primal)
        deriv = (x.primal * y.tangent - y.primal * x.tangent) / denom
        return Dual(value, deriv)

    # ----- matrix functions -------------------------------------------

    def transpose(self):
        if not self.is_matrix:
            raise ShapeError("transpose applied to a scalar")
        return Dual(self.primal.T.copy(),
                    np.transpose(self.tangent, (0, 2, 1)).copy())

    def mexp(self):
        if not self.is_matrix or self.primal.shape[0] != self.primal.shape[1]:
            raise ShapeError("mexp requires a square matrix")
        n = self.primal.shape[0]
        value = expm(self.primal)
        tangents = np.empty_like(self.tangent)
        for k in range(self.n_seeds):
            block = np.zeros((2 * n, 2 * n))
            block[:n, :n] = self.primal
            block[n:, n:] = self.primal
            block[:n, n:] = self.tangent[k]
            tangents[k] = expm(block)[:n, n:]
        return Dual(value, tangents)

    def inv(self):
        if not self.is_matrix or self.primal.shape[0] != self.primal.shape[1]:
            raise ShapeError("inv requires a square matrix")
        if abs(np.linalg.det(self.primal)) <= 1e-10:
            raise DomainError("inverse of a (near-)singular matrix")
        b = np.linalg.inv(self.primal)
        return Dual(b, -b @ self.tangent @ b)


def _require_same_kind(a, b, op):
    if a.is_matrix != b.is_matrix:
        raise ShapeError(f"'{op}' mixes a scalar and a matrix")
    if a.is_matrix and a.primal.shape != b.primal.shape:
        raise ShapeError(
            f"'{op}' on matrices of shapes {a.primal.shape} and {b.primal.shape}")
