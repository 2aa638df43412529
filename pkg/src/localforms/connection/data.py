"""The complete local description of a principal bundle with connection:
atlas, matrix group, transition-function family and local-form family."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Mapping, Tuple

import numpy as np

from ..atlas import Atlas, Overlap, SamplePlan
from ..errors import ValidationError
from ..lie import GroupMap, GroupSpec, InverseGroupMap
from .forms import LocalForm

DEFAULT_TOLERANCE = 1e-8


@dataclass(frozen=True)
class PulledBackGroupMap(GroupMap):
    """A group-valued map declared on the destination chart of an overlap,
    re-expressed in source-chart coordinates through the coordinate change."""

    inner: GroupMap
    overlap: Overlap
    params: Mapping[str, float] = field(default_factory=dict)

    def value(self, x):
        return self.inner.value(self.overlap.map_point(x, self.params))

    def derivative(self, x, v):
        y, w = self.overlap.push(x, v, self.params)
        return self.inner.derivative(y, w)


@dataclass(frozen=True)
class LocalConnectionData:
    atlas: Atlas
    group: GroupSpec
    transitions: Mapping[Tuple[str, str], GroupMap]
    forms: Mapping[str, LocalForm]
    sample_plan: SamplePlan = SamplePlan()
    params: Mapping[str, float] = field(default_factory=dict)

    def validate(self):
        """Check structural invariants; raise ValidationError on the first
        violation."""
        for chart_id in self.atlas.charts:
            if chart_id not in self.forms:
                raise ValidationError(f"chart '{chart_id}' has no local form")
        for chart_id, form in self.forms.items():
            self.atlas.chart(chart_id)
            if form.n != self.group.n:
                raise ValidationError(
                    f"form on '{chart_id}' is {form.n}x{form.n}, "
                    f"group is {self.group.n}x{self.group.n}")
            if form.dim != self.atlas.chart(chart_id).dim:
                raise ValidationError(
                    f"form on '{chart_id}' has {form.dim} coefficients, "
                    f"chart dim is {self.atlas.chart(chart_id).dim}")
        for (a, b) in self.transitions:
            self.atlas.chart(a)
            self.atlas.chart(b)
            if a != b and self.atlas.overlap(a, b) is None:
                raise ValidationError(
                    f"transition ({a},{b}) declared without overlap {a}->{b}")
        for ov in self.atlas.overlaps:
            if (ov.src, ov.dst) not in self.transitions \
                    and (ov.dst, ov.src) not in self.transitions:
                raise ValidationError(
                    f"overlap {ov.src}->{ov.dst} has no transition function")
        return self

    def transition(self, a, b) -> GroupMap:
        try:
            return self.transitions[(a, b)]
        except KeyError:
            raise ValidationError(f"no transition ({a},{b}) declared") from None

    def reverse_transition(self, a, b) -> GroupMap:
        """g_ba expressed in a-coordinates."""
        if (a, b) in self.transitions:
            return InverseGroupMap(self.transitions[(a, b)])
        if (b, a) in self.transitions:
            ov = self.atlas.require_overlap(a, b)
            return PulledBackGroupMap(self.transitions[(b, a)], ov, self.params)
        raise ValidationError(f"no transition between '{a}' and '{b}'")

    def with_forms(self, forms) -> "LocalConnectionData":
        return LocalConnectionData(self.atlas, self.group, self.transitions,
                                   dict(forms), self.sample_plan, self.params)
