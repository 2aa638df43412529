import numpy as np
import pytest

from localforms.connection import (PointRep, TangentRep, chart_change,
                                   check_cocycle, check_compatibility,
                                   check_overlaps, fundamental_tangent,
                                   gauge_transform, global_form_eval,
                                   horizontal_lift)
from localforms.errors import DomainError, ValidationError
from localforms.expr import parse
from localforms.lie import (ConstGroupMap, ExprGroupMap, InverseGroupMap,
                            ProductGroupMap, adjoint, exp_matrix, inverse,
                            log_diff_left)

from conftest import load_fixture

J = np.array([[0.0, -1.0], [1.0, 0.0]])

GOOD = ("flat.json", "abelian.json", "monopole_k1.json", "monopole_k2.json",
        "monopole_k3.json", "sphere_frame.json")
MUTATED = ("flat_mutated.json", "abelian_mutated.json",
           "monopole_k1_mutated.json", "sphere_frame_mutated.json")


@pytest.mark.parametrize("name", GOOD)
def test_good_fixtures_pass(name):
    data = load_fixture(name, grid=6, random=10)
    assert check_overlaps(data).passed
    assert check_cocycle(data, 1e-8).passed
    assert check_compatibility(data, 1e-8).passed


@pytest.mark.parametrize("name", MUTATED)
def test_mutated_fixtures_fail(name):
    data = load_fixture(name, grid=6, random=10)
    report = check_cocycle(data, 1e-8)
    report.merge(check_compatibility(data, 1e-8))
    failing = [c for c in report.checks if not c.passed]
    assert failing
    assert max(c.max_residual for c in failing) > 1e-3


def test_cocycle_residual_closed_form(monopole):
    # multiplying one transition by a constant 0.1-rotation breaks the
    # round-trip by exactly ||R(0.1) - I|| = 2 sqrt(1 - cos 0.1)
    broken = dict(monopole.transitions)
    broken[("U_N", "U_S")] = ProductGroupMap(
        broken[("U_N", "U_S")], ConstGroupMap(exp_matrix(0.1 * J)))
    data = monopole.__class__(monopole.atlas, monopole.group, broken,
                              monopole.forms, monopole.sample_plan,
                              monopole.params)
    report = check_cocycle(data, 1e-8)
    check = next(c for c in report.checks if c.name == "cocycle:U_N,U_S")
    want = 2.0 * np.sqrt(1.0 - np.cos(0.1))
    assert check.max_residual == pytest.approx(want, abs=1e-9)


def test_gauge_round_trip(abelian):
    g = ExprGroupMap("U1", parse("mexp((x1^2 - 1) * [[0,-1],[1,0]])",
                                 ["x1"]))
    form = abelian.forms["U1"]
    round_trip = gauge_transform(gauge_transform(form, g), InverseGroupMap(g))
    rng = np.random.default_rng(1)
    for _ in range(30):
        x = rng.uniform(0.1, 1.9, 1)
        v = rng.normal(size=1)
        assert np.linalg.norm(round_trip(x, v) - form(x, v)) < 1e-9


def test_gauge_transform_matches_manual_formula(abelian):
    g = ExprGroupMap("U1", parse("mexp(cos(x1) * [[0,-1],[1,0]])", ["x1"]))
    form = abelian.forms["U1"]
    gauged = gauge_transform(form, g)
    rng = np.random.default_rng(2)
    for _ in range(20):
        x = rng.uniform(0.1, 1.9, 1)
        v = rng.normal(size=1)
        want = adjoint(inverse(g.value(x)), form(x, v)) \
            + log_diff_left(g, x, v)
        assert np.linalg.norm(gauged(x, v) - want) < 1e-14


def test_global_form_reproduces_fundamental_direction(monopole):
    rng = np.random.default_rng(3)
    for _ in range(25):
        a = exp_matrix(rng.uniform(-2.0, 2.0) * J)
        p = PointRep("U_N", rng.uniform([0.1, 0.0], [1.9, 6.0]), a)
        x_alg = rng.uniform(-2.0, 2.0) * J
        u = fundamental_tangent(p, x_alg)
        value = global_form_eval(monopole, p, u)
        assert np.linalg.norm(value - x_alg) < 1e-12


def test_global_form_equivariance(monopole):
    rng = np.random.default_rng(4)
    for _ in range(25):
        a = exp_matrix(rng.uniform(-2.0, 2.0) * J)
        g = exp_matrix(rng.uniform(-2.0, 2.0) * J)
        x = rng.uniform([0.1, 0.0], [1.9, 6.0])
        v = rng.normal(size=2)
        w = rng.normal(size=(2, 2))
        base = global_form_eval(monopole, PointRep("U_N", x, a),
                                TangentRep(v, w))
        moved = global_form_eval(monopole, PointRep("U_N", x, a @ g),
                                 TangentRep(v, w @ g))
        assert np.linalg.norm(moved - adjoint(inverse(g), base)) < 1e-12


@pytest.mark.parametrize("name", GOOD)
def test_global_form_is_chart_independent(name):
    data = load_fixture(name, grid=4, random=6)
    rng = np.random.default_rng(5)
    for ov in data.atlas.overlaps:
        from localforms.atlas import sample
        pts = sample(data.sample_plan, ov.domain, ov.mask, data.params)
        for x in pts[:10]:
            a = exp_matrix(data.group.sample_algebra(rng))
            p = PointRep(ov.src, x, a)
            u = TangentRep(rng.normal(size=len(x)),
                           rng.normal(size=(data.group.n, data.group.n)))
            q, u2 = chart_change(data, p, ov.dst, u)
            before = global_form_eval(data, p, u)
            after = global_form_eval(data, q, u2)
            assert np.linalg.norm(before - after) < 1e-8


def test_chart_change_round_trip(monopole):
    rng = np.random.default_rng(6)
    for _ in range(15):
        x = rng.uniform([1.2, 0.0], [1.9, 6.0])
        a = exp_matrix(rng.uniform(-1.0, 1.0) * J)
        p = PointRep("U_N", x, a)
        u = TangentRep(rng.normal(size=2), rng.normal(size=(2, 2)))
        q, u2 = chart_change(monopole, p, "U_S", u)
        back, u3 = chart_change(monopole, q, "U_N", u2)
        assert np.linalg.norm(back.x - p.x) < 1e-9
        assert np.linalg.norm(back.a - p.a) < 1e-9
        assert np.linalg.norm(u3.v - u.v) < 1e-9
        assert np.linalg.norm(u3.w - u.w) < 1e-9


def test_chart_change_requires_overlap_membership(monopole):
    p = PointRep("U_N", [0.2, 1.0], np.eye(2))  # outside the overlap band
    with pytest.raises(DomainError):
        chart_change(monopole, p, "U_S")
    with pytest.raises(ValidationError):
        chart_change(monopole, PointRep("U_N", [1.5, 1.0], np.eye(2)), "U_X")


def test_horizontal_lift_is_annihilated(monopole):
    rng = np.random.default_rng(7)
    for _ in range(25):
        x = rng.uniform([0.1, 0.0], [1.9, 6.0])
        a = exp_matrix(rng.uniform(-2.0, 2.0) * J)
        v = rng.normal(size=2)
        p = PointRep("U_N", x, a)
        u = horizontal_lift(monopole, p, v)
        assert np.allclose(u.v, v)
        assert np.linalg.norm(global_form_eval(monopole, p, u)) < 1e-12


def test_horizontal_plus_fundamental_decomposition(monopole):
    # any tangent splits as horizontal lift of v plus fundamental part of
    # the connection value; the decomposition must reassemble exactly
    rng = np.random.default_rng(8)
    for _ in range(10):
        x = rng.uniform([0.1, 0.0], [1.9, 6.0])
        a = exp_matrix(rng.uniform(-2.0, 2.0) * J)
        p = PointRep("U_N", x, a)
        u = TangentRep(rng.normal(size=2), rng.normal(size=(2, 2)))
        value = global_form_eval(monopole, p, u)
        lift = horizontal_lift(monopole, p, u.v)
        vert = fundamental_tangent(p, value)
        assert np.linalg.norm(lift.w + vert.w - u.w) < 1e-12


def test_compatibility_failing_check_is_named():
    data = load_fixture("monopole_k1_mutated.json", grid=5, random=5)
    report = check_compatibility(data, 1e-8)
    assert "compatibility:U_N,U_S" in report.failing()
