"""Cocycle and overlap-compatibility checks for local connection data.

Compatibility is verified in the source chart's coordinates: the
destination-side form is evaluated at the transported point on the
transported direction, and compared against Ad(g^-1).omega + g^-1 dg
computed at the source point.
"""

from __future__ import annotations

import numpy as np

from ..atlas import sample
from ..lie import adjoint, inverse, log_diff_left
from ..report import Report
from .data import DEFAULT_TOLERANCE, LocalConnectionData


def _norm(m):
    return float(np.linalg.norm(m))


def _overlap_samples(data, overlap):
    return sample(data.sample_plan, overlap.domain, overlap.mask, data.params)


def check_cocycle(data: LocalConnectionData, tolerance=DEFAULT_TOLERANCE) -> Report:
    """Consistency of the transition family: g_aa = I where declared,
    g_ba . g_ab = I on bidirectional overlaps, and the triple condition
    g_ab(x) g_bc(psi x) = g_ac(x) wherever all three are declared."""
    report = Report(tolerance, data.sample_plan)
    identity = np.eye(data.group.n)

    for (a, b), g in sorted(data.transitions.items()):
        if a == b:
            chart = data.atlas.chart(a)
            pts = sample(data.sample_plan, chart.box, params=data.params)
            residual = max(_norm(g.value(x) - identity) for x in pts)
            report.add(f"cocycle:identity:{a}", residual, len(pts))

    seen = set()
    for (a, b) in sorted(data.transitions):
        if a == b or (b, a) not in data.transitions or (b, a) in seen:
            continue
        seen.add((a, b))
        overlap = data.atlas.overlap(a, b)
        if overlap is None:
            continue
        g_ab = data.transitions[(a, b)]
        g_ba = data.transitions[(b, a)]
        pts = _overlap_samples(data, overlap)
        residual = 0.0
        for x in pts:
            y = overlap.map_point(x, data.params)
            residual = max(residual,
                           _norm(g_ba.value(y) @ g_ab.value(x) - identity))
        report.add(f"cocycle:{a},{b}", residual, len(pts))

    charts = sorted(data.atlas.charts)
    for a in charts:
        for b in charts:
            for c in charts:
                if len({a, b, c}) != 3:
                    continue
                if not all(key in data.transitions
                           for key in [(a, b), (b, c), (a, c)]):
                    continue
                ov_ab = data.atlas.overlap(a, b)
                ov_ac = data.atlas.overlap(a, c)
                ov_bc = data.atlas.overlap(b, c)
                if ov_ab is None or ov_ac is None or ov_bc is None:
                    continue
                domain = _intersect_boxes(ov_ab.domain, ov_ac.domain)
                if domain is None:
                    continue
                pts = sample(data.sample_plan, domain, ov_ab.mask, data.params)
                residual = 0.0
                count = 0
                for x in pts:
                    y = ov_ab.map_point(x, data.params)
                    if not all(lo <= yi <= hi
                               for yi, (lo, hi) in zip(y, ov_bc.domain)):
                        continue
                    count += 1
                    lhs = data.transitions[(a, b)].value(x) \
                        @ data.transitions[(b, c)].value(y)
                    residual = max(residual,
                                   _norm(lhs - data.transitions[(a, c)].value(x)))
                if count:
                    report.add(f"cocycle:{a},{b},{c}", residual, count)
    return report


def _intersect_boxes(box1, box2):
    out = []
    for (lo1, hi1), (lo2, hi2) in zip(box1, box2):
        lo, hi = max(lo1, lo2), min(hi1, hi2)
        if not hi > lo:
            return None
        out.append((lo, hi))
    return tuple(out)


def check_overlaps(data: LocalConnectionData, tolerance=1e-9) -> Report:
    """Atlas sanity on samples: round-trip of bidirectional coordinate
    changes, and nonsingularity of their Jacobians (reported as 1.0 when a
    sampled Jacobian determinant falls below the invertibility threshold)."""
    report = Report(tolerance, data.sample_plan)
    for ov in data.atlas.overlaps:
        reverse = data.atlas.overlap(ov.dst, ov.src)
        pts = _overlap_samples(data, ov)
        dim = data.atlas.chart(ov.src).dim
        jac_bad = 0.0
        roundtrip = 0.0
        count = 0
        for x in pts:
            jacobian = np.column_stack(
                [ov.push(x, e, data.params)[1] for e in np.eye(dim)])
            if abs(np.linalg.det(jacobian)) <= 1e-10:
                jac_bad = 1.0
            if reverse is None:
                continue
            y = ov.map_point(x, data.params)
            if not _in_domain(y, reverse.domain):
                continue
            count += 1
            roundtrip = max(roundtrip, float(np.linalg.norm(
                reverse.map_point(y, data.params) - x)))
        report.add(f"overlap-jacobian:{ov.src},{ov.dst}", jac_bad, len(pts))
        if reverse is not None and count:
            report.add(f"overlap-roundtrip:{ov.src},{ov.dst}", roundtrip,
                       count)
    return report


def _in_domain(x, box, slack=1e-9):
    return all(lo - slack <= xi <= hi + slack
               for xi, (lo, hi) in zip(x, box))


def check_compatibility(data: LocalConnectionData,
                        tolerance=DEFAULT_TOLERANCE) -> Report:
    """Overlap relation omega_b = Ad(g_ab^-1).omega_a + g_ab^-1 dg_ab,
    sampled over every declared overlap with a transition."""
    report = Report(tolerance, data.sample_plan)
    for ov in data.atlas.overlaps:
        if (ov.src, ov.dst) not in data.transitions:
            continue
        g = data.transitions[(ov.src, ov.dst)]
        form_a = data.forms[ov.src]
        form_b = data.forms[ov.dst]
        pts = _overlap_samples(data, ov)
        dim = data.atlas.chart(ov.src).dim
        residual = 0.0
        for x in pts:
            g_inv = inverse(g.value(x))
            for i in range(dim):
                e = np.zeros(dim)
                e[i] = 1.0
                y, w = ov.push(x, e, data.params)
                lhs = form_b(y, w)
                rhs = adjoint(g_inv, form_a(x, e)) + g_inv @ g.derivative(x, e)
                residual = max(residual, _norm(lhs - rhs))
        report.add(f"compatibility:{ov.src},{ov.dst}", residual,
                   len(pts) * dim)
    return report
