"""Smoke tests of the python bindings: a few frozen values per operation."""

import json
import math

import pytest

import qgs


def test_coupling_conversions():
    c = qgs.CouplingA(alpha=0.0, beta=2.0, gamma=0.0)
    b = qgs.a_to_b(c)
    assert b.a == pytest.approx(0.5, abs=1e-14)
    assert b.d == pytest.approx(0.5, abs=1e-14)
    assert b.c == pytest.approx(-0.5, abs=1e-14)

    back = qgs.b_to_a(b)
    assert back.alpha == pytest.approx(0.0, abs=1e-13)
    assert back.beta == pytest.approx(2.0, abs=1e-13)

    with pytest.raises(qgs.QgsError):
        qgs.a_to_b(qgs.CouplingA(alpha=1.0))  # delta has no B-form

    assert qgs.classify(qgs.CouplingA(alpha=3.0)) == qgs.CouplingClass.Delta
    assert (
        qgs.classify(qgs.CouplingA(gamma=2.0)) == qgs.CouplingClass.Separating
    )

    u = qgs.a_to_unitary(qgs.CouplingA(alpha=2.0))
    assert abs(u.u1) ** 2 + abs(u.u2) ** 2 == pytest.approx(1.0, abs=1e-12)
    assert u.xi == pytest.approx(math.pi / 4, abs=1e-12)


def test_jump_matrix():
    j = qgs.jump_matrix(qgs.CouplingA(gamma=2.0 / 3.0))
    assert j[0][0] == pytest.approx(0.5, abs=1e-14)
    assert j[1][1] == pytest.approx(2.0, abs=1e-14)


def test_reduction():
    red = qgs.reduce_vertex_coupling(0.0, 0.0, 0.0, 4)
    assert red.gamma == pytest.approx(-2.0 / 3.0, abs=1e-14)
    kind, factor = qgs.reduce_vertex_coupling(0.0, 2.0, 6.0, 4)
    assert kind == "special_beta"
    assert factor == 1.0


def test_mfunction():
    # free halfline at z = -kappa^2: m = -kappa
    m = qgs.mfunction_plus([], complex(-4.0, 0.0))
    assert m == pytest.approx(-2.0, abs=1e-13)
    # series route agrees with the transfer route
    pts = [(1.0, 0.0, 1.0, complex(1.0, 0.0))]
    a = qgs.mfunction_series(pts, complex(-4.0, 0.0))
    b = qgs.mfunction_plus(pts, complex(-4.0, 0.0))
    assert a == pytest.approx(b, abs=1e-10)


def test_tree_pipeline():
    tree_json = qgs.example_two_generation_tree()
    tree = json.loads(tree_json)
    assert tree["generations"][0]["b"] == 3

    report = json.loads(qgs.validate_tree(tree_json))
    assert report["valid"]

    decomposition = json.loads(qgs.decompose(tree_json))
    assert len(decomposition["problems"]) == 4
    assert decomposition["problems"][-1]["multiplicity"] == 3

    direct = qgs.tree_eigenvalues_direct(tree_json, 4.0, 1e-6, 30.0)
    decomposed = qgs.decomposed_eigenvalues(tree_json, 4.0, 1e-6, 30.0)
    assert len(direct) == len(decomposed)
    assert max(abs(a - b) for a, b in zip(direct, decomposed)) < 1e-8


def test_indicators():
    assert qgs.reflectionless_defect([], 4.0, 1e-6) < 1e-5
    delta = [(1.0, 1.0, 0.0, complex(0.0, 0.0))]
    assert qgs.reflectionless_defect(delta, 1.0, 1e-6) > 0.1

    verdict = json.loads(
        qgs.check_main_theorem(qgs.example_sparse_free_tree(8), K=30.0)
    )
    assert verdict["verdict"] == "HypothesesFail"
