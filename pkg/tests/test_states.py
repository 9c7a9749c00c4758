import json
import math

import numpy as np
import pytest

from entbounds import linalg
from entbounds.errors import (
    DegenerateSuperposition,
    DimensionMismatch,
    DimensionTooLarge,
    DuplicateIndex,
    IndexOutOfRange,
    InvalidEpsilon,
    InvalidState,
)
from entbounds.measures import concurrence
from entbounds.states import (
    PureState,
    SuperpositionSpec,
    a_side_orthogonal,
    bell,
    coefficient_matrix,
    epsilon_family,
    epsilon_family_spectrum,
    fidelity,
    is_biorthogonal,
    load_state,
    maximally_entangled,
    reduced_density_a,
    save_state,
    schmidt,
    state_from_dict,
    superpose,
)

from conftest import partial_trace_b, random_state

R = 1 / math.sqrt(2)


def test_state_is_normalized_and_immutable():
    s = PureState(2, 2, [1, 1, 1, 1])
    assert np.linalg.norm(s.amplitudes) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        s.amplitudes[0] = 0
    with pytest.raises(InvalidState):
        PureState(2, 2, [0, 0, 0, 0])
    with pytest.raises(InvalidState):
        PureState(2, 2, [1, 0, 0])
    with pytest.raises(InvalidState):
        PureState(2, 2, [1, np.nan, 0, 0])


def test_coefficient_matrix_examples():
    np.testing.assert_array_equal(coefficient_matrix(PureState.basis(2, 2, 0, 0)), [[1, 0], [0, 0]])
    np.testing.assert_allclose(coefficient_matrix(bell()), np.diag([R, R]))
    s = PureState(2, 2, [0, math.sqrt(0.8), math.sqrt(0.2), 0])
    np.testing.assert_allclose(coefficient_matrix(s), [[0, math.sqrt(0.8)], [math.sqrt(0.2), 0]])
    # row-major: amplitude i*n + j sits at (i, j) for non-square dims too
    s = PureState(2, 3, np.arange(1, 7))
    c = coefficient_matrix(s) * np.linalg.norm(np.arange(1, 7))
    assert c[1, 2] == pytest.approx(6.0)


def test_reduced_density_examples():
    np.testing.assert_allclose(reduced_density_a(PureState.basis(2, 2, 0, 0)), np.diag([1, 0]))
    np.testing.assert_allclose(reduced_density_a(bell()), np.diag([0.5, 0.5]), atol=1e-15)
    amps = np.array([math.sqrt(0.8), 0, 0, math.sqrt(0.2)])
    s = PureState(2, 2, amps)
    expected = partial_trace_b(amps, 2, 2)
    np.testing.assert_allclose(expected, np.diag([0.8, 0.2]), atol=1e-15)
    np.testing.assert_allclose(reduced_density_a(s), expected, atol=1e-15)


def test_reduced_density_matches_partial_trace_oracle(nprng):
    for m, n in [(2, 3), (3, 2), (4, 4)]:
        s = random_state(nprng, m, n)
        np.testing.assert_allclose(reduced_density_a(s), partial_trace_b(s.amplitudes, m, n), atol=1e-14)


def test_schmidt_examples():
    sd = schmidt(PureState.basis(2, 2, 0, 0))
    np.testing.assert_allclose(sd.coefficients, [1, 0], atol=1e-15)
    assert sd.rank == 1
    sd = schmidt(bell())
    np.testing.assert_allclose(sd.coefficients, [R, R])
    assert sd.rank == 2
    spec = SuperpositionSpec(R, R)
    _, gamma = superpose(spec, bell(4, 4, 0), bell(4, 4, 2))
    sd = schmidt(gamma)
    np.testing.assert_allclose(sd.coefficients, [0.5] * 4, atol=1e-14)
    assert sd.rank == 4


def test_fidelity_examples():
    s = bell(3, 3)
    assert fidelity(s, s) == pytest.approx(1.0)
    phi, psi = epsilon_family(0.3, 5)
    assert fidelity(phi, psi) == pytest.approx(0.7, abs=1e-12)
    assert fidelity(bell(4, 4, 0), bell(4, 4, 2)) == 0.0
    with pytest.raises(DimensionMismatch):
        fidelity(bell(2, 2), bell(2, 3))


def test_superpose_examples():
    phi, psi = bell(4, 4, 0), bell(4, 4, 2)
    norm_sq, gamma = superpose(SuperpositionSpec(1, 0), phi, psi)
    assert norm_sq == pytest.approx(1.0)
    np.testing.assert_allclose(gamma.amplitudes, phi.amplitudes)
    norm_sq, _ = superpose(SuperpositionSpec(R, R), phi, psi)
    assert norm_sq == pytest.approx(1.0)
    norm_sq, _ = superpose(SuperpositionSpec(R, R), bell(), bell())
    assert norm_sq == pytest.approx(2.0)  # ||(a + b) Phi||^2 = (2/sqrt2)^2
    with pytest.raises(DegenerateSuperposition):
        superpose(SuperpositionSpec(R, -R), bell(), bell())
    with pytest.raises(DimensionMismatch):
        superpose(SuperpositionSpec(R, R), bell(2, 2), bell(2, 3))
    with pytest.raises(ValueError):
        SuperpositionSpec(1, 1)


def test_alpha_multiplies_first_argument():
    a, b = 0.6, 0.8
    _, g = superpose(SuperpositionSpec(a, b), PureState.basis(2, 2, 0, 0), PureState.basis(2, 2, 1, 1))
    np.testing.assert_allclose(g.amplitudes, [a, 0, 0, b])


def test_biorthogonality_examples():
    assert is_biorthogonal(bell(4, 4, 0), bell(4, 4, 2), 1e-10)
    assert not is_biorthogonal(bell(3, 3), bell(3, 3), 1e-10)
    # |00> vs |11>: Phi Psi^+ = [[1,0],[0,0]] @ [[0,0],[0,1]] = 0
    assert is_biorthogonal(PureState.basis(2, 2, 0, 0), PureState.basis(2, 2, 1, 1), 1e-10)
    # disjoint B supports give Phi Psi^+ = 0; the A-side product is a separate condition
    p, q = PureState.basis(2, 2, 0, 0), PureState.basis(2, 2, 0, 1)
    assert is_biorthogonal(p, q)
    assert not a_side_orthogonal(p, q)
    p, q = PureState.basis(2, 2, 0, 0), PureState.basis(2, 2, 1, 0)
    assert not is_biorthogonal(p, q)
    assert a_side_orthogonal(p, q)


def test_epsilon_family():
    phi, psi = epsilon_family(0.0, 3)
    np.testing.assert_allclose(psi.amplitudes, phi.amplitudes)
    assert concurrence(psi) == 0.0
    phi, psi = epsilon_family(0.1, 4)
    np.testing.assert_allclose(
        linalg.hermitian_eigenvalues(reduced_density_a(psi)).values,
        [0.025] * 4 + [0.9],
        atol=1e-15,
    )
    assert concurrence(psi) ** 2 == pytest.approx(2 * (2 * 0.1 - 0.01 - 0.01 / 4), abs=1e-12)
    assert concurrence(psi) ** 2 == pytest.approx(0.375, abs=1e-12)
    with pytest.raises(InvalidEpsilon):
        epsilon_family(1.5, 2)
    with pytest.raises(InvalidEpsilon):
        epsilon_family(0.1, 0)
    with pytest.raises(DimensionTooLarge):
        epsilon_family(0.1, 2**13)


def test_epsilon_family_spectrum():
    np.testing.assert_allclose(epsilon_family_spectrum(0.5, 1).expanded(), [0.5, 0.5])
    dense = linalg.hermitian_eigenvalues(reduced_density_a(epsilon_family(0.1, 4)[1])).values
    np.testing.assert_allclose(epsilon_family_spectrum(0.1, 4).expanded(), dense, atol=1e-12)
    big = epsilon_family_spectrum(0.001, 10**9)
    assert len(big) == 10**9 + 1
    assert big.total() == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(InvalidEpsilon):
        epsilon_family_spectrum(-0.1, 3)


def test_maximally_entangled():
    np.testing.assert_allclose(maximally_entangled(2, 2, [0, 1], [0, 1]).amplitudes, bell().amplitudes)
    np.testing.assert_allclose(
        maximally_entangled(3, 3, [2], [1]).amplitudes, PureState.basis(3, 3, 2, 1).amplitudes
    )
    s = maximally_entangled(6, 6, [0, 2, 4], [5, 3, 1])
    np.testing.assert_allclose(schmidt(s).coefficients[:3], [3**-0.5] * 3)
    with pytest.raises(IndexOutOfRange):
        maximally_entangled(2, 2, [0, 2], [0, 1])
    with pytest.raises(DuplicateIndex):
        maximally_entangled(3, 3, [0, 0], [0, 1])


def test_haar_corpus_normalization(nprng):
    for _ in range(500):
        m, n = nprng.integers(2, 6, size=2)
        s = random_state(nprng, m, n)
        assert abs(np.sum(schmidt(s).coefficients ** 2) - 1) <= 1e-9
        assert abs(np.trace(reduced_density_a(s)).real - 1) <= 1e-9


def test_reduced_eigenvalues_match_squared_schmidt(nprng):
    for _ in range(200):
        m, n = nprng.integers(2, 6, size=2)
        s = random_state(nprng, m, n)
        eig = linalg.hermitian_eigenvalues(reduced_density_a(s)).values[::-1]
        coeffs = schmidt(s).coefficients
        k = min(m, n)
        np.testing.assert_allclose(eig[:k], coeffs**2, atol=1e-9)
        np.testing.assert_allclose(eig[k:], 0.0, atol=1e-9)


def _biorthogonal_pair(rng, m, n):
    phi = np.zeros((m, n), complex)
    psi = np.zeros((m, n), complex)
    phi[:2, :2] = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    psi[2:, 2:] = rng.normal(size=(m - 2, n - 2)) + 1j * rng.normal(size=(m - 2, n - 2))
    return PureState.from_matrix(phi), PureState.from_matrix(psi)


def test_biorthogonal_superposition_identities(nprng):
    for _ in range(200):
        phi, psi = _biorthogonal_pair(nprng, 4, 5)
        assert is_biorthogonal(phi, psi)
        theta, ph = nprng.uniform(0.05, 1.5), nprng.uniform(0, 2 * np.pi)
        spec = SuperpositionSpec(np.cos(theta), np.sin(theta) * np.exp(1j * ph))
        norm_sq, gamma = superpose(spec, phi, psi)
        assert abs(norm_sq - 1) <= 1e-9
        lhs = reduced_density_a(gamma) * norm_sq
        rhs = abs(spec.alpha) ** 2 * reduced_density_a(phi) + abs(spec.beta) ** 2 * reduced_density_a(psi)
        assert np.max(np.abs(lhs - rhs)) <= 1e-10


def test_state_file_roundtrip(tmp_path):
    s = PureState(2, 3, np.arange(6) + 1j)
    path = tmp_path / "s.json"
    save_state(s, path)
    doc = json.loads(path.read_text())
    assert set(doc) == {"dim_a", "dim_b", "amplitudes"}
    assert len(doc["amplitudes"]) == 6 and len(doc["amplitudes"][0]) == 2
    np.testing.assert_allclose(load_state(path).amplitudes, s.amplitudes)


def test_state_file_norm_check():
    doc = {"dim_a": 2, "dim_b": 2, "amplitudes": [[1, 0], [0, 0], [0, 0], [1, 0]]}
    with pytest.raises(InvalidState):
        state_from_dict(doc)
    s = state_from_dict(doc, renormalize=True)
    np.testing.assert_allclose(s.amplitudes, bell().amplitudes)
    near = {"dim_a": 1, "dim_b": 2, "amplitudes": [[1 + 5e-7, 0], [0, 0]]}
    assert state_from_dict(near).amplitudes[0] == 1.0
    with pytest.raises(InvalidState):
        state_from_dict({"dim_a": 2, "dim_b": 2, "amplitudes": [[1, 0]]})
    with pytest.raises(InvalidState):
        state_from_dict({"dim_a": 2, "amplitudes": []})
