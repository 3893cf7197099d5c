import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zpaction.fpalgebra import PrimeModulus
from zpaction.enumeration import ActionParams, enumerate_actions, key_from_named
from zpaction.classify import act
from zpaction.geometry import (
    ConjectureProbe,
    CurveModel,
    FiberProductModel,
    MarkedPoints,
    conjecture_probe,
    fiber_product_model,
    hyperplanes,
    jacobian_decomposition,
    line,
    lines_of_plane,
    pgonal_model,
    points_preset,
    quotient_genus,
    render_model,
    total_genus,
)
from zpaction.hgroup import Permutation


def test_total_genus_values():
    assert total_genus(2, 5, 2) == 3
    assert total_genus(5, 5, 2) == 36
    for p in (3, 5, 7, 11):
        assert total_genus(p, 3, 2) == (p - 1) ** 2
        assert total_genus(p, 5, 2) == (p - 1) * (2 * p - 1)
    # m = n is the homology cover itself
    assert total_genus(3, 3, 3) == 10
    for k in (2, 3, 4, 5):  # composite k supported here
        if (3 - 1) * (k - 1) > 2:
            assert total_genus(k, 3, 3) == 1 + k**2 * (2 * (k - 1) - 2) // 2


def test_total_genus_rejects_bad_params():
    with pytest.raises(ValueError, match="non-hyperbolic"):
        total_genus(2, 3, 2)
    with pytest.raises(ValueError):
        total_genus(1, 5, 2)
    with pytest.raises(ValueError):
        total_genus(3, 3, 4)
    with pytest.raises(ValueError, match="non-integral"):
        total_genus(2, 4, 1)


def test_marked_points_validation():
    with pytest.raises(ValueError):
        MarkedPoints(3, ("inf", "0", "1"))
    with pytest.raises(ValueError):
        MarkedPoints(3, ("inf", "0", "1", "1"))
    assert points_preset("standard", 4).labels == ("inf", "0", "1", "q4", "q5")
    assert points_preset("d3", 5).labels[3:] == ("λ", "1/(1-λ)", "(λ-1)/λ")
    assert points_preset("k4", 5).labels[3:] == ("λ", "-1", "-λ")


def test_curve_model_exponent_sum():
    m = PrimeModulus(5)
    pts = MarkedPoints.with_lambda()
    CurveModel(m, pts, (0, 1, 4, 0))
    with pytest.raises(ValueError, match="sum to 0"):
        CurveModel(m, pts, (0, 1, 1, 0))


def test_example_family_model():
    params = ActionParams(5, 3, 2)
    pts = MarkedPoints.with_lambda()
    fm = fiber_product_model(key_from_named(params, "K(0,4)"), pts)
    assert fm.first.exponents == (0, 1, 4, 0)
    assert fm.second.exponents == (1, 0, 0, 4)
    assert render_model(fm) == "y1^5 = x*(x - 1)^4 ; y2^5 = (x - λ)^4"


def test_p5_table_models():
    params = ActionParams(5, 3, 2)
    pts = MarkedPoints.with_lambda()
    expected = {
        "K(0,1)": "y1^5 = x*(x - 1)*(x - λ)^3 ; y2^5 = (x - λ)^4",
        "K(0,2)": "y1^5 = x*(x - 1)^2*(x - λ)^2 ; y2^5 = (x - λ)^4",
        "K(0,4)": "y1^5 = x*(x - 1)^4 ; y2^5 = (x - λ)^4",
        "K(1,2)": "y1^5 = x*(x - 1)^2*(x - λ)^2 ; y2^5 = (x - 1)*(x - λ)^3",
    }
    for name, text in expected.items():
        fm = fiber_product_model(key_from_named(params, name), pts)
        assert render_model(fm) == text


def test_threefold_p2_model():
    key = key_from_named(ActionParams(2, 5, 2), "K(0,1)", family="d3")
    fm = fiber_product_model(key, MarkedPoints.threefold())
    assert render_model(fm) == (
        "y1^2 = x*(x - 1)*(x - λ)*(x - 1/(1-λ)) ; "
        "y2^2 = (x - 1)*(x - 1/(1-λ))*(x - (λ-1)/λ)"
    )


def test_type2_model_has_l_exponents():
    params = ActionParams(5, 3, 2)
    fm = fiber_product_model(key_from_named(params, "K(2)"), MarkedPoints.with_lambda())
    # K(l): y1 = (x - q_3) (x - q_4)^{p-1}, y2 = x^l (x - q_4)^{-(1+l)}
    assert fm.first.exponents == (0, 0, 1, 4)
    assert fm.second.exponents == (1, 2, 0, 2)


def test_quotient_genus_hand_values():
    params = ActionParams(3, 3, 2)
    m3 = params.modulus
    key = key_from_named(params, "K(0,2)")
    assert quotient_genus(key, line(m3, (1, 0))) == 0
    assert quotient_genus(key, line(m3, (1, 1))) == 2


def test_quotient_genus_two_point_line():
    # a line containing all but two images gives a two-point cyclic cover: genus 0
    params = ActionParams(5, 3, 2)
    key = key_from_named(params, "K(0,4)")
    assert quotient_genus(key, line(params.modulus, (0, 1))) == 0


def test_quotient_genus_rejects_improper():
    from zpaction.fpalgebra import FpMatrix

    params = ActionParams(3, 3, 2)
    key = key_from_named(params, "K(1)")
    with pytest.raises(ValueError, match="proper"):
        quotient_genus(key, FpMatrix(params.modulus, ((1, 0), (0, 1))))


def test_jacobian_k02_p3():
    report = jacobian_decomposition(key_from_named(ActionParams(3, 3, 2), "K(0,2)"))
    assert sorted(report.genera) == [0, 0, 2, 2]
    assert report.genus_sum == 4 and report.total == 4
    assert report.fixed_sum == 12


def test_jacobian_sums_f532():
    for key in enumerate_actions(ActionParams(5, 3, 2)):
        report = jacobian_decomposition(key)
        assert report.genus_sum == 16
        assert report.fixed_sum == 20


def test_pgonal_normalization():
    params = ActionParams(5, 3, 2)
    pts = MarkedPoints.with_lambda()
    key = key_from_named(params, "K(0,4)")
    model = pgonal_model(key, line(params.modulus, (1, 0)), pts)
    assert model.exponents == (0, 1, 4, 0)
    assert render_model(model) == "y^5 = x*(x - 1)^4"
    model2 = pgonal_model(key_from_named(params, "K(0,1)"), line(params.modulus, (1, 0)), pts)
    assert model2.exponents == (0, 1, 1, 3)
    # leading finite exponent is 1 and the sum vanishes, whatever the line
    for key in enumerate_actions(params):
        for ln in lines_of_plane(params.modulus):
            exps = pgonal_model(key, ln).exponents
            assert sum(exps) % 5 == 0
            assert next(e for e in exps[1:] if e) == 1


def test_line_genus_multiset_is_action_invariant():
    params = ActionParams(5, 3, 2)
    keys = enumerate_actions(params)
    sigma = Permutation((2, 3, 4, 1))
    for key in keys[::5]:
        before = sorted(jacobian_decomposition(key).genera)
        after = sorted(jacobian_decomposition(act(sigma, key)).genera)
        assert before == after


def test_conjecture_probe_m2_is_theorem():
    for key in enumerate_actions(ActionParams(3, 3, 2)):
        assert conjecture_probe(key).equal


def test_conjecture_probe_trivial_subgroup():
    (key,) = enumerate_actions(ActionParams(3, 3, 3))
    probe = conjecture_probe(key)
    assert probe.genus_sum == 10 and probe.total == 10 and probe.equal
    (key2,) = enumerate_actions(ActionParams(2, 5, 5))
    assert conjecture_probe(key2).equal
    (key5,) = enumerate_actions(ActionParams(5, 3, 3))
    assert conjecture_probe(key5).equal


def test_conjecture_probe_reports_m3():
    keys = enumerate_actions(ActionParams(2, 5, 3))
    probe = conjecture_probe(keys[0])
    assert probe.total == 5
    assert isinstance(probe, ConjectureProbe)


def test_hyperplane_count():
    for p, m in [(3, 2), (3, 3), (2, 4)]:
        assert len(hyperplanes(PrimeModulus(p), m)) == (p**m - 1) // (p - 1)


def test_render_json_round_trip():
    params = ActionParams(5, 3, 2)
    fm = fiber_product_model(key_from_named(params, "K(1,2)"), MarkedPoints.with_lambda())
    doc = json.loads(render_model(fm, format="json"))
    assert doc["p"] == 5 and doc["y1"] == [0, 1, 2, 2] and doc["y2"] == [1, 0, 1, 3]
    single = render_model(fm.first, format="json")
    assert json.loads(single)["exponents"] == [0, 1, 2, 2]
    with pytest.raises(ValueError):
        render_model(fm, format="yaml")


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from(enumerate_actions(ActionParams(3, 4, 2))),
    st.integers(0, 2),
    st.integers(0, 2),
)
def test_quotient_genus_integral_nonnegative(key, a, b):
    if (a, b) == (0, 0):
        return
    sub = line(key.params.modulus, (a, b))
    assert quotient_genus(key, sub) >= 0


@pytest.mark.parametrize("p,n,m", [(3, 3, 2), (5, 3, 2), (2, 5, 2), (3, 5, 2)])
def test_quotient_genus_nonnegative_exhaustive(p, n, m):
    params = ActionParams(p, n, m)
    lines = lines_of_plane(params.modulus)
    for key in enumerate_actions(params):
        for ln in lines:
            assert quotient_genus(key, ln) >= 0  # raises on non-integrality
