"""Charts, overlaps and deterministic sample plans for the base manifold.

The base is given purely by coordinate boxes and coordinate-change
expressions; there is no embedding.  All pointwise checks run on a
deterministic sample set: a boundary-avoiding midpoint grid plus seeded
uniform random points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np

from .errors import DomainError, ValidationError
from .expr import ExprAST


@dataclass(frozen=True)
class Chart:
    id: str
    dim: int
    box: Tuple[Tuple[float, float], ...]

    def __post_init__(self):
        if len(self.box) != self.dim:
            raise ValidationError(
                f"chart '{self.id}': box has {len(self.box)} intervals, dim is {self.dim}")
        for lo, hi in self.box:
            if not hi > lo:
                raise ValidationError(
                    f"chart '{self.id}': degenerate interval [{lo}, {hi}]")

    @property
    def coords(self):
        return tuple(f"x{i + 1}" for i in range(self.dim))

    def contains(self, x, slack=1e-9):
        return all(lo - slack <= xi <= hi + slack
                   for xi, (lo, hi) in zip(x, self.box))


@dataclass(frozen=True)
class Overlap:
    """The intersection U_src ∩ U_dst, described as a box in src coordinates
    plus the coordinate change into dst coordinates."""

    src: str
    dst: str
    domain: Tuple[Tuple[float, float], ...]
    coord_change: Tuple[ExprAST, ...]
    mask: Optional[ExprAST] = None

    def map_point(self, x, params=None):
        if not _in_box(x, self.domain):
            raise DomainError(
                f"point {list(x)} outside overlap domain {self.src}->{self.dst}")
        return np.array([ast.eval(x, params) for ast in self.coord_change])

    def push(self, x, v, params=None):
        """Return (psi(x), Dpsi(x) v)."""
        if not _in_box(x, self.domain):
            raise DomainError(
                f"point {list(x)} outside overlap domain {self.src}->{self.dst}")
        y = np.empty(len(self.coord_change))
        w = np.empty(len(self.coord_change))
        for i, ast in enumerate(self.coord_change):
            value, tangents = ast.eval_dual(x, params, [v])
            y[i] = value
            w[i] = tangents[0]
        return y, w


def _in_box(x, box, slack=1e-9):
    return all(lo - slack <= xi <= hi + slack for xi, (lo, hi) in zip(x, box))


@dataclass(frozen=True)
class SamplePlan:
    grid: int = 5
    n_random: int = 10
    seed: int = 0

    def __post_init__(self):
        if self.grid < 1 and self.n_random < 1:
            raise ValidationError("sample plan produces no points")


def sample(plan: SamplePlan, box, mask: Optional[ExprAST] = None,
           params=None) -> np.ndarray:
    """Deterministic sample points of a box: midpoints of a grid^d lattice
    plus `n_random` seeded uniform points.  Points where the mask expression
    is <= 0 are dropped.  Identical inputs yield identical output."""
    box = [(float(lo), float(hi)) for lo, hi in box]
    d = len(box)
    points: List[np.ndarray] = []
    if plan.grid >= 1:
        axes = [lo + (np.arange(plan.grid) + 0.5) * (hi - lo) / plan.grid
                for lo, hi in box]
        mesh = np.meshgrid(*axes, indexing="ij")
        points.append(np.stack([m.ravel() for m in mesh], axis=-1))
    if plan.n_random >= 1:
        rng = np.random.default_rng(plan.seed)
        lows = np.array([lo for lo, _ in box])
        highs = np.array([hi for _, hi in box])
        points.append(rng.uniform(lows, highs, (plan.n_random, d)))
    pts = np.concatenate(points, axis=0)
    if mask is not None:
        keep = np.array([mask.eval(p, params) > 0 for p in pts])
        pts = pts[keep]
    return pts


@dataclass(frozen=True)
class Atlas:
    charts: Mapping[str, Chart]
    overlaps: Tuple[Overlap, ...]

    def chart(self, chart_id) -> Chart:
        try:
            return self.charts[chart_id]
        except KeyError:
            raise ValidationError(f"unknown chart '{chart_id}'") from None

    def overlap(self, src, dst) -> Optional[Overlap]:
        for ov in self.overlaps:
            if ov.src == src and ov.dst == dst:
                return ov
        return None

    def require_overlap(self, src, dst) -> Overlap:
        ov = self.overlap(src, dst)
        if ov is None:
            raise ValidationError(f"no declared overlap {src}->{dst}")
        return ov

    def same_charts(self, other: "Atlas") -> bool:
        if set(self.charts) != set(other.charts):
            return False
        return all(self.charts[c].box == other.charts[c].box
                   for c in self.charts)


def pushforward_vector(overlap: Overlap, x, v, params=None):
    """Coordinate change of a point and a tangent direction through an
    overlap's declared chart transition."""
    return overlap.push(x, v, params)
