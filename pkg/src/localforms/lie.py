"""Matrix Lie group operations.

Groups are closed subgroups of GL(n, R); elements are plain (n, n) float
arrays.  The module provides the adjoint action, the exponential, the left
and right logarithmic differentials of group-valued maps, and group
morphisms together with their induced Lie-algebra morphisms (computed by
dual-number differentiation at the identity, never by finite differences).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import expm

from .errors import GroupMismatchError, SingularMatrixError
from .expr import Dual, ExprAST

DET_THRESHOLD = 1e-10


def ensure_invertible(g):
    """Return g unchanged, raising if |det g| falls below the threshold."""
    g = np.asarray(g, dtype=float)
    if abs(np.linalg.det(g)) <= DET_THRESHOLD:
        raise SingularMatrixError(
            f"matrix with |det| = {abs(np.linalg.det(g)):.3e} treated as singular")
    return g


def inverse(g):
    return np.linalg.inv(ensure_invertible(g))


def adjoint(g, X):
    """Ad(g)X = g X g^-1."""
    g = ensure_invertible(g)
    return g @ np.asarray(X, dtype=float) @ np.linalg.inv(g)


def commutator(X, Y):
    return X @ Y - Y @ X


def exp_matrix(X):
    """Matrix exponential (scaling-and-squaring)."""
    return expm(np.asarray(X, dtype=float))


@dataclass(frozen=True)
class GroupSpec:
    """Declaration of a matrix group: name, size, optional generator basis."""

    name: str
    n: int
    generators: Optional[Tuple[np.ndarray, ...]] = None

    def identity(self):
        return np.eye(self.n)

    def sample_algebra(self, rng, scale=1.0):
        if self.generators is not None:
            coeffs = rng.uniform(-scale, scale, len(self.generators))
            return sum(c * g for c, g in zip(coeffs, self.generators))
        return rng.uniform(-scale, scale, (self.n, self.n))

    def sample_group(self, rng, scale=1.0):
        return exp_matrix(self.sample_algebra(rng, scale))


# ----- group-valued maps on a chart -----------------------------------


class GroupMap:
    """A smooth map from chart coordinates into a matrix group.

    Subclasses provide value(x) -> (n, n) array and derivative(x, v) -> the
    raw directional derivative of the matrix entries.
    """

    def value(self, x):
        raise NotImplementedError

    def derivative(self, x, v):
        raise NotImplementedError


@dataclass(frozen=True)
class ExprGroupMap(GroupMap):
    chart: str
    ast: ExprAST
    params: Mapping[str, float] = field(default_factory=dict)

    def value(self, x):
        return self.ast.eval(x, self.params)

    def derivative(self, x, v):
        _, tangents = self.ast.eval_dual(x, self.params, [v])
        return tangents[0]


@dataclass(frozen=True)
class ConstGroupMap(GroupMap):
    matrix: np.ndarray

    def value(self, x):
        return np.asarray(self.matrix, dtype=float)

    def derivative(self, x, v):
        return np.zeros_like(np.asarray(self.matrix, dtype=float))


@dataclass(frozen=True)
class ProductGroupMap(GroupMap):
    left: GroupMap
    right: GroupMap

    def value(self, x):
        return self.left.value(x) @ self.right.value(x)

    def derivative(self, x, v):
        return (self.left.derivative(x, v) @ self.right.value(x)
                + self.left.value(x) @ self.right.derivative(x, v))


@dataclass(frozen=True)
class InverseGroupMap(GroupMap):
    inner: GroupMap

    def value(self, x):
        return inverse(self.inner.value(x))

    def derivative(self, x, v):
        b = self.value(x)
        return -b @ self.inner.derivative(x, v) @ b


def log_diff_left(f: GroupMap, x, v):
    """Left logarithmic differential (f^-1 df)_x(v) = f(x)^-1 . T_x f(v)."""
    return inverse(f.value(x)) @ f.derivative(x, v)


def log_diff_right(f: GroupMap, x, v):
    """Right logarithmic differential (df . f^-1)_x(v) = T_x f(v) . f(x)^-1."""
    return f.derivative(x, v) @ inverse(f.value(x))


# ----- group morphisms ------------------------------------------------


@dataclass(frozen=True)
class GroupMorphismSpec:
    """A smooth homomorphism between matrix groups, given as an expression in
    one matrix-valued parameter, together with the Lie-algebra morphism it
    induces by differentiation at the identity."""

    source_dim: int
    target_dim: int
    phi: ExprAST
    arg_name: str = "g"
    params: Mapping[str, float] = field(default_factory=dict)

    def _bindings(self, dual_arg):
        k = dual_arg.n_seeds
        bindings = {self.arg_name: dual_arg}
        for name in self.phi.params:
            bindings[name] = Dual.constant(float(self.params[name]), k)
        return bindings

    def apply(self, g):
        g = np.asarray(g, dtype=float)
        if g.shape != (self.source_dim, self.source_dim):
            raise GroupMismatchError(
                f"morphism argument has shape {g.shape}, "
                f"expected ({self.source_dim}, {self.source_dim})")
        arg = Dual.constant(g, 0)
        return self.phi.eval_bound(self._bindings(arg), 0).primal

    def differential(self, g, E):
        """Directional derivative of the morphism at g along the matrix E."""
        arg = Dual.matrix(g, [np.asarray(E, dtype=float)])
        return self.phi.eval_bound(self._bindings(arg), 1).tangent[0]

    def induced(self, X):
        """Induced algebra morphism: d/dt phi(exp(tX)) at t = 0."""
        X = np.asarray(X, dtype=float)
        if X.shape != (self.source_dim, self.source_dim):
            raise GroupMismatchError(
                f"algebra element has shape {X.shape}, "
                f"expected ({self.source_dim}, {self.source_dim})")
        return self.differential(np.eye(self.source_dim), X)

    def compose(self, other: "GroupMorphismSpec") -> "GroupMorphismSpec":
        """self after other (self . other)."""
        if other.target_dim != self.source_dim:
            raise GroupMismatchError("morphism composition dimension mismatch")
        return _ComposedMorphism(other.source_dim, self.target_dim,
                                 outer=self, inner=other)


class _ComposedMorphism(GroupMorphismSpec):
    """Composition of two morphism specs; apply/differential chain through."""

    def __init__(self, source_dim, target_dim, outer, inner):
        object.__setattr__(self, "source_dim", source_dim)
        object.__setattr__(self, "target_dim", target_dim)
        object.__setattr__(self, "phi", None)
        object.__setattr__(self, "arg_name", "g")
        object.__setattr__(self, "params", {})
        object.__setattr__(self, "outer", outer)
        object.__setattr__(self, "inner", inner)

    def apply(self, g):
        return self.outer.apply(self.inner.apply(g))

    def differential(self, g, E):
        mid = self.inner.apply(g)
        return self.outer.differential(mid, self.inner.differential(g, E))


def identity_morphism(n) -> GroupMorphismSpec:
    from .expr import parse
    return GroupMorphismSpec(n, n, parse("g", [], matrix_params={"g": (n, n)}))


@dataclass(frozen=True)
class ComposedGroupMap(GroupMap):
    """phi . f for a morphism spec phi and a group-valued map f."""

    morphism: GroupMorphismSpec
    inner: GroupMap

    def value(self, x):
        return self.morphism.apply(self.inner.value(x))

    def derivative(self, x, v):
        return self.morphism.differential(self.inner.value(x),
                                          self.inner.derivative(x, v))
