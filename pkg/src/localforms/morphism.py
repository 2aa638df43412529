"""Bundle morphisms over a fixed base and related connections.

A morphism between two bundles trivialized over one shared atlas is carried
by a group morphism phi together with a family of group-valued maps h_a on
the charts.  The module checks the relatedness criterion
phibar(omega_a) = Ad(h_a^-1).theta_a + h_a^-1 dh_a, the morphism cocycle
condition on target transitions, and constructs pushforward and associated
connections.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Tuple

import numpy as np

from .atlas import sample
from .connection import (CallableForm, LocalConnectionData, PointRep,
                         check_cocycle)
from .errors import AtlasMismatchError, MorphismCocycleViolation
from .lie import (ComposedGroupMap, ConstGroupMap, GroupMap, GroupMorphismSpec,
                  GroupSpec, adjoint, inverse, log_diff_left, log_diff_right)
from .report import Report


@dataclass(frozen=True)
class MorphismData:
    """phi: G -> H plus the chart family h_a: U_a -> H realizing the bundle
    morphism over the identity of the base."""

    phi: GroupMorphismSpec
    h: Mapping[str, GroupMap]
    target_group: GroupSpec

    def h_map(self, chart) -> GroupMap:
        if chart in self.h:
            return self.h[chart]
        return ConstGroupMap(np.eye(self.target_group.n))


def _require_shared_atlas(a: LocalConnectionData, b: LocalConnectionData):
    if not a.atlas.same_charts(b.atlas):
        raise AtlasMismatchError("bundles do not share an atlas")


def check_related(omega: LocalConnectionData, theta: LocalConnectionData,
                  m: MorphismData, tolerance=1e-8) -> Report:
    """Relatedness criterion per chart:
    phibar(omega_a,x(v)) = Ad(h_a(x)^-1).theta_a,x(v) + (h_a^-1 dh_a)_x(v)."""
    _require_shared_atlas(omega, theta)
    report = Report(tolerance, omega.sample_plan)
    for chart_id in sorted(omega.atlas.charts):
        chart = omega.atlas.chart(chart_id)
        h = m.h_map(chart_id)
        form_o = omega.forms[chart_id]
        form_t = theta.forms[chart_id]
        pts = sample(omega.sample_plan, chart.box, params=omega.params)
        residual = 0.0
        for x in pts:
            h_inv = inverse(h.value(x))
            for i in range(chart.dim):
                e = np.zeros(chart.dim)
                e[i] = 1.0
                lhs = m.phi.induced(form_o(x, e))
                rhs = adjoint(h_inv, form_t(x, e)) + h_inv @ h.derivative(x, e)
                residual = max(residual, float(np.linalg.norm(lhs - rhs)))
        report.add(f"related:{chart_id}", residual, len(pts) * chart.dim)
    return report


def check_morphism_cocycle(m: MorphismData, source: LocalConnectionData,
                           target_transitions: Mapping[Tuple[str, str], GroupMap],
                           tolerance=1e-8) -> Report:
    """Completion condition on the target transition family:
    h_ab(x) = h_a(x) . phi(g_ab(x)) . h_b(psi(x))^-1 on every overlap."""
    report = Report(tolerance, source.sample_plan)
    for ov in source.atlas.overlaps:
        key = (ov.src, ov.dst)
        if key not in source.transitions or key not in target_transitions:
            continue
        g = source.transitions[key]
        h_target = target_transitions[key]
        h_a = m.h_map(ov.src)
        h_b = m.h_map(ov.dst)
        pts = sample(source.sample_plan, ov.domain, ov.mask, source.params)
        residual = 0.0
        for x in pts:
            y = ov.map_point(x, source.params)
            expected = h_a.value(x) @ m.phi.apply(g.value(x)) \
                @ inverse(h_b.value(y))
            residual = max(residual, float(np.linalg.norm(
                h_target.value(x) - expected)))
        report.add(f"morphism-cocycle:{ov.src},{ov.dst}", residual, len(pts))
    return report


def morphism_eval(m: MorphismData, p: PointRep) -> PointRep:
    """Image of a trivialized point: group part h_a(x) . phi(a)."""
    h = m.h_map(p.chart)
    return PointRep(p.chart, p.x, h.value(p.x) @ m.phi.apply(p.a))


def pushforward_connection(omega: LocalConnectionData, m: MorphismData,
                           target_transitions: Mapping[Tuple[str, str], GroupMap],
                           tolerance=1e-8) -> LocalConnectionData:
    """The unique related connection on the target bundle, with local forms
    theta_a = Ad(h_a) . phibar(omega_a) - dh_a . h_a^-1."""
    cocycle = check_morphism_cocycle(m, omega, target_transitions, tolerance)
    if not cocycle.passed:
        raise MorphismCocycleViolation(
            f"target transitions fail the morphism cocycle condition: "
            f"{', '.join(cocycle.failing())}")
    forms = {}
    for chart_id, form in omega.forms.items():
        forms[chart_id] = _pushforward_form(form, m.phi, m.h_map(chart_id),
                                            m.target_group.n)
    return LocalConnectionData(omega.atlas, m.target_group,
                               dict(target_transitions), forms,
                               omega.sample_plan, omega.params)


def _pushforward_form(form, phi, h, n):
    def fn(x, v):
        hx = h.value(x)
        return adjoint(hx, phi.induced(form(x, v))) \
            - h.derivative(x, v) @ inverse(hx)

    return CallableForm(form.chart, form.dim, n, fn)


def associated_connection(omega: LocalConnectionData, phi: GroupMorphismSpec,
                          target_group: GroupSpec = None) -> LocalConnectionData:
    """Connection on the associated bundle for phi: forms phibar(omega_a),
    transitions phi . g_ab; the special case of the pushforward where every
    h_a is constantly the unit."""
    if target_group is None:
        target_group = GroupSpec(f"{omega.group.name}->assoc", phi.target_dim)
    transitions = {key: ComposedGroupMap(phi, g)
                   for key, g in omega.transitions.items()}
    forms = {}
    for chart_id, form in omega.forms.items():
        forms[chart_id] = CallableForm(
            form.chart, form.dim, target_group.n,
            lambda x, v, _f=form: phi.induced(_f(x, v)))
    return LocalConnectionData(omega.atlas, target_group, transitions, forms,
                               omega.sample_plan, omega.params)
