import json

import numpy as np
import pytest

import amenlab


def test_algebra_basics():
    m2 = amenlab.matrix_algebra(2)
    assert m2.dim == 4
    assert not m2.is_commutative
    e12 = np.array([0, 1, 0, 0], dtype=complex)
    e21 = np.array([0, 0, 1, 0], dtype=complex)
    assert np.allclose(m2.multiply(e12, e21), [1, 0, 0, 0])
    assert m2.norm(e12) == pytest.approx(1.0)
    assert amenlab.truncated_poly_algebra().is_commutative


def test_exact_diagonal_and_norms():
    m2 = amenlab.matrix_algebra(2)
    d = amenlab.exact_diagonal(m2)
    assert np.allclose(amenlab.product_map(d), m2.unit)
    for i in range(4):
        basis = np.eye(4, dtype=complex)[i]
        assert np.abs(amenlab.commutator(basis, d).coefficient_tensor()).max() <= 1e-12
    assert amenlab.norm_upper(d) <= 2 + 1e-12
    assert amenlab.exact_diagonal(amenlab.truncated_poly_algebra()) is None


def test_lp_and_grothendieck_bound():
    l3 = amenlab.sup_algebra(3, field="real")
    rng = np.random.default_rng(0)
    for _ in range(20):
        terms = [(rng.standard_normal(3), rng.standard_normal(3)) for _ in range(4)]
        u = amenlab.Tensor(l3, l3, terms)
        lp = amenlab.norm_exact_lp(u)
        assert lp <= amenlab.grothendieck_bound(u) + 1e-9
        assert lp <= amenlab.norm_upper(u) + 1e-9
    identity = amenlab.Tensor(l3, l3, [(np.eye(3)[i], np.eye(3)[i]) for i in range(3)])
    assert amenlab.norm_exact_lp(identity) == pytest.approx(1.0)


def test_lift_and_pushforward():
    m2 = amenlab.matrix_algebra(2)
    x = amenlab.grid_space(4, 0.3)
    cxa = amenlab.vector_valued(x, m2)
    rng = np.random.default_rng(1)
    a = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    constant = np.tile(a, 4)
    U, cert = amenlab.lift_case2(amenlab.exact_diagonal(m2), x, [constant], 1e-2)
    assert cert["pass"]
    assert cert["norm_bound"] <= 2 * 0.7025 * 2 + 1e-12
    assert amenlab.verify_diagonal(U, [constant], 1e-2)["pass"]
    pushed = amenlab.pushforward_diagonal(U, 0)
    assert pushed.left_algebra.dim == 4
    assert amenlab.verify_diagonal(pushed, [a], 1e-2)["pass"]
    assert cxa.dim == 16


def test_derivations():
    assert amenlab.derivation_dim(amenlab.sup_algebra(3)) == 0
    assert amenlab.derivation_dim(amenlab.truncated_poly_algebra()) == 1
    assert not amenlab.weakly_amenable(amenlab.truncated_poly_algebra())
    report = amenlab.transfer_check(amenlab.grid_space(2, 1.0), amenlab.truncated_poly_algebra())
    assert report["base_dim"] == 1 and report["lifted_dim"] >= 1 and report["consistent"]
    with pytest.raises(amenlab.AmenlabError):
        amenlab.weakly_amenable(amenlab.matrix_algebra(2))


def test_errors_are_typed():
    with pytest.raises(amenlab.AmenlabError):
        amenlab.sup_algebra(0)
    with pytest.raises(amenlab.UnsupportedInstance):
        amenlab.norm_exact_lp(amenlab.exact_diagonal(amenlab.matrix_algebra(2)))
    assert issubclass(amenlab.PreconditionViolation, amenlab.AmenlabError)


def test_run_matches_cli_contract(tmp_path):
    spec = {
        "command": "build-diagonal",
        "algebra": {"kind": "matrix", "n": 2},
        "space": {"kind": "grid", "n": 5, "spacing": 0.25},
        "test_functions": {"kind": "lipschitz-random", "seed": 7, "count": 5},
    }
    result = amenlab.run(spec, out=tmp_path, seed=7)
    assert result.exit_code == amenlab.EXIT_PASS
    assert result.artifact["metadata"]["seed"] == 7
    stored = json.loads((tmp_path / "certificate.json").read_text())
    assert stored["pass"]

    groth = amenlab.run({"command": "grothendieck-check", "instances": 10})
    assert groth.exit_code == amenlab.EXIT_PASS
    assert len(groth.artifact["rows"]) == 10

    bad = amenlab.run({"command": "build-diagonal", "algebra": {"kind": "truncpoly"},
                       "space": {"kind": "grid", "n": 2, "spacing": 1}, "test_functions": {"kind": "constant"}})
    assert bad.exit_code == amenlab.EXIT_PRECONDITION
    with pytest.raises(amenlab.SpecError):
        amenlab.run({"command": "nope"})
