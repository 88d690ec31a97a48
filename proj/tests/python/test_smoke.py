"""Smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import fairdpp


def figure_matrix():
    return np.array([[2.0, 0.0], [2.0, 3.0], [0.0, 2.0], [3.0, 2.0]])


def test_singular_values_match_known_spectrum():
    sv = fairdpp.singular_values(figure_matrix())
    assert sv[0] == pytest.approx(5.385, abs=0.01)
    assert sv[1] == pytest.approx(2.236, abs=0.01)


def test_balance_report():
    rep = fairdpp.balance_report(figure_matrix(), [1, 1, 2, 2])
    assert rep["minimalBeta"] == pytest.approx(1.4201, abs=1e-3)
    assert rep["minimalBeta"] <= 2.0
    assert len(rep["partSpectra"]) == 2


def test_determinant_routes_agree():
    rng = np.random.default_rng(5)
    rows = rng.standard_normal((4, 6))
    s1, l1 = fairdpp.log_volume_det(rows)
    s2, l2 = fairdpp.gram_log_det(rows)
    assert s1 == s2 == 1
    assert l1 == pytest.approx(l2, rel=1e-8)
    sign, _ = fairdpp.log_volume_det(np.vstack([rows, rows[:1]]))
    assert sign == 0


def test_sample_and_project_is_deterministic_and_fair():
    rng = np.random.default_rng(7)
    features = rng.standard_normal((12, 6))
    labels = [1] * 6 + [2] * 6
    a = fairdpp.sample_and_project(features, labels, [2, 1], seed=42)
    b = fairdpp.sample_and_project(features, labels, [2, 1], seed=42)
    assert a == b
    assert sum(1 for i in a if labels[i] == 1) == 2
    assert sum(1 for i in a if labels[i] == 2) == 1


def test_exact_distribution_normalizes():
    table = fairdpp.exact_pdpp_distribution(figure_matrix(), [1, 1, 2, 2], [1, 1])
    assert sum(table.values()) == pytest.approx(1.0, abs=1e-9)
    assert table[(1, 3)] == pytest.approx(25.0 / 73.0, abs=1e-9)


def test_unfairness_anchor():
    features = np.eye(4)
    labels = [1, 1, 2, 2]
    d = fairdpp.unfairness([0.683, 0.317], [0, 2], features, labels)
    assert d == pytest.approx(0.0686, abs=1e-3)


def test_leverage_scores_sum_to_rank():
    rng = np.random.default_rng(11)
    scores = fairdpp.leverage_scores(rng.standard_normal((50, 10)))
    assert sum(scores) == pytest.approx(10.0, abs=1e-8)


def test_elementary_symmetric():
    sign, log_e = fairdpp.elementary_symmetric([4.0, 9.0], 2)
    assert sign == 1
    assert log_e == pytest.approx(math.log(36.0))


def test_price_of_fairness_runs():
    rep = fairdpp.price_of_fairness_exact(figure_matrix(), [1, 1, 2, 2], [1, 1])
    assert rep["exactKL"] == pytest.approx(math.log(145.0 / 73.0), abs=1e-9)


def test_quotas_for():
    rng = np.random.default_rng(3)
    features = rng.standard_normal((10, 50))
    labels = [1] * 7 + [2] * 3
    assert fairdpp.quotas_for("proportional", features, labels, 10) == [7, 3]
    assert fairdpp.quotas_for("equal", features, labels, 4) == [2, 2]


def test_degenerate_instance_raises():
    features = np.array([[1.0, 0.0], [2.0, 0.0], [3.0, 0.0]])
    with pytest.raises(fairdpp.DegenerateInstanceError):
        fairdpp.sample_kdpp(features, 2, seed=1)
