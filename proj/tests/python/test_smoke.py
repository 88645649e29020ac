"""Smoke tests of the python module: algebra, canonicalization, a tiny
learner run, and the sampler."""

import math

import numpy as np
import pytest

import paulitomo as pt


def test_symplectic_product():
    assert pt.symplectic_product("XI", "ZI") == 1
    assert pt.symplectic_product("XI", "IZ") == 0
    assert pt.symplectic_product("YY", "YY") == 0


def test_span_and_complement():
    assert pt.span_dim(2, ["XI", "XI", "ZI"]) == 2
    comp = pt.symplectic_complement(1, ["Z"])
    assert comp == ["+Z"]


def test_weyl_and_expand():
    h = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
    coeffs = pt.pauli_expand(h)
    assert set(coeffs) == {"+X", "+Z"}
    assert abs(coeffs["+X"] - 1 / math.sqrt(2)) < 1e-12
    y = pt.weyl_matrix("+Y")
    assert np.allclose(y, np.array([[0, -1j], [1j, 0]]))


def test_projection_matches_twirl():
    rng = np.random.default_rng(7)
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    u, _ = np.linalg.qr(g)
    s = ["ZI", "IX"]
    proj = pt.pauli_project(u, 2, s)
    twirl = pt.pauli_twirl(u, 2, s)
    assert np.linalg.norm(proj - twirl) < 1e-10


def test_canonicalization_and_conjugation():
    out = pt.canonicalize_support(2, ["ZI", "IX"])
    assert (out["a"], out["b"]) == (0, 2)
    image = pt.clifford_conjugate(2, out["gates"], "+ZI")
    assert image.lstrip("+-") in ("IZ", "ZI", "ZZ")
    # the subgroup image is exactly the canonical one
    images = {pt.clifford_conjugate(2, out["gates"], "+" + p)[1:] for p in ("ZI", "IX")}
    assert images == {"IZ", "ZI"} or len(images) == 2


def test_distances():
    z = np.diag([1.0, -1.0]).astype(complex)
    eye = np.eye(2, dtype=complex)
    assert abs(pt.dist_phaseop(eye, z) - math.sqrt(2)) < 1e-6
    assert pt.dist_phaseop(eye, 1j * eye) < 1e-8
    assert abs(pt.diamond_upper(eye, z) - 2 * math.sqrt(2)) < 1e-5


def test_bell_sampler_support():
    u, witness = pt.gen_kdim(3, 1, 0, seed=5)
    samples = pt.bell_sample(u, 200, seed=9)
    support = set(witness["support"])
    spanned = pt.span_dim(3, list(support) + [s.lstrip("+-i") for s in samples])
    assert spanned == pt.span_dim(3, list(support))


def test_blockdiag_learner_runs():
    u, witness = pt.gen_kdim(3, 1, 1, seed=11, canonical=True)
    result = pt.learn_blockdiag(u, witness["a"], witness["b"], eps=0.1, delta=0.2, seed=3)
    assert result["dist_phaseop"] <= 0.8
    assert result["queries"]["forward"] > 0
    assert result["queries"]["inverse"] == 0


def test_junta_learner_finds_the_qubits():
    u, witness = pt.gen_junta(5, 1, seed=13)
    result = pt.learn_junta(u, 1, eps=0.2, delta=0.2, seed=3)
    assert result["junta_qubits"] == witness["junta_qubits"]
    assert result["dist_phaseop"] <= 0.2


def test_nullity_of_clifford():
    c = pt.random_clifford_dense(2, seed=17)
    assert pt.clifford_nullity(c)["t"] == 0


def test_verify_suite_hook():
    checks = pt.run_verify_suite("metrics", seed=5)
    assert checks and all(checks.values())
