import numpy as np
import pytest

from qjsd import states
from qjsd.errors import (
    DimensionMismatch,
    IncompleteChannel,
    IncompletePOVM,
    InvalidDistribution,
    NotHermitian,
    NotNormalized,
    NotPositive,
    TraceNotOne,
)


def test_make_density_accepts_valid():
    rho = states.make_density(np.diag([0.25, 0.75]))
    assert rho.dim == 2
    np.testing.assert_array_equal(rho.spectrum, [0.25, 0.75])


@pytest.mark.parametrize("m,err", [
    ([[0.5, 0.1], [0.0, 0.5]], NotHermitian),
    ([[1.2, 0.0], [0.0, -0.2]], NotPositive),
    ([[0.6, 0.0], [0.0, 0.6]], TraceNotOne),
])
def test_make_density_rejects(m, err):
    with pytest.raises(err) as info:
        states.make_density(np.array(m))
    assert info.value.residual is not None


def test_density_is_read_only():
    rho = states.maximally_mixed(2)
    with pytest.raises(ValueError):
        rho.matrix[0, 0] = 1.0


def test_roundoff_negative_eigenvalue_clamped():
    m = np.diag([1.0 + 5e-11, -5e-11])
    rho = states.make_density(m)
    assert rho.spectrum[0] == 0.0


def test_make_pure_rejects_unnormalized():
    with pytest.raises(NotNormalized):
        states.make_pure([1.0, 1.0])


def test_povm_validation():
    with pytest.raises(IncompletePOVM):
        states.make_povm([np.diag([1.0, 0.0])])
    with pytest.raises(NotPositive):
        states.make_povm([np.diag([1.5, 0.5]), np.diag([-0.5, 0.5])])
    states.make_povm([np.diag([1.0, 0.0]), np.diag([0.0, 1.0])])


def test_channel_validation():
    with pytest.raises(IncompleteChannel):
        states.make_channel([np.eye(2) * 0.5])
    with pytest.raises(DimensionMismatch):
        states.make_channel([np.eye(2), np.eye(3)])


def test_ensemble_validation():
    with pytest.raises(InvalidDistribution):
        states.make_ensemble([states.maximally_mixed(2)] * 2, [0.5, 0.6])
    with pytest.raises(DimensionMismatch):
        states.make_ensemble([states.maximally_mixed(2), states.maximally_mixed(3)], [0.5, 0.5])


def test_bell_states_orthonormal():
    b = np.array(states.BELL_BASIS)
    np.testing.assert_allclose(b.conj() @ b.T, np.eye(4), atol=1e-15)


def test_singlet_reduced_states_maximally_mixed():
    s = states.singlet()
    for keep in ("A", "B"):
        np.testing.assert_allclose(states.reduced_state(s, 2, 2, keep).matrix, np.eye(2) / 2, atol=1e-15)


def test_werner_spectrum():
    w = states.werner_state(0.7)
    np.testing.assert_allclose(np.sort(w.spectrum), [0.1, 0.1, 0.1, 0.7], atol=1e-14)
    # singlet is the F eigenvector
    psi = states.PSI_MINUS
    assert np.real(psi.conj() @ w.matrix @ psi) == pytest.approx(0.7, abs=1e-14)
    np.testing.assert_allclose(states.werner_state(0.25).matrix, np.eye(4) / 4, atol=1e-15)


def test_werner_rejects_out_of_range():
    with pytest.raises(ValueError):
        states.werner_state(1.5)


@pytest.mark.parametrize("dim", [1, 2, 3, 5])
def test_random_generators_valid(dim, rng):
    rho = states.random_density(dim, rng)
    assert np.real(np.trace(rho.matrix)) == pytest.approx(1.0, abs=1e-12)
    u = states.random_unitary(dim, rng)
    np.testing.assert_allclose(u.conj().T @ u, np.eye(dim), atol=1e-12)
    ch = states.random_kraus_channel(dim, 3, rng)
    assert len(ch.operators) == 3
    povm = states.random_povm(dim, 4, rng)
    np.testing.assert_allclose(sum(povm.elements), np.eye(dim), atol=1e-12)
    psi = states.random_pure(dim, rng)
    assert np.linalg.norm(psi.amplitudes) == pytest.approx(1.0, abs=1e-12)


def test_random_unitary_haar_moment():
    # E|U_00|^2 = 1/d for Haar measure
    rng = np.random.default_rng(5)
    vals = [abs(states.random_unitary(3, rng)[0, 0]) ** 2 for _ in range(4000)]
    assert np.mean(vals) == pytest.approx(1 / 3, abs=0.02)


def test_random_density_seeded():
    a = states.random_density(3, 42).matrix
    b = states.random_density(3, 42).matrix
    np.testing.assert_array_equal(a, b)


def test_apply_channel_unitary(rng):
    rho = states.random_density(3, rng)
    u = states.random_unitary(3, rng)
    out = states.apply_channel(states.unitary_channel(u), rho)
    np.testing.assert_allclose(out.matrix, u @ rho.matrix @ u.conj().T, atol=1e-14)


def test_projective_channel_dephases(rng):
    rho = states.random_density(3, rng)
    out = states.apply_channel(states.projective_channel(states.computational_povm(3)), rho)
    np.testing.assert_allclose(out.matrix, np.diag(np.diag(rho.matrix)), atol=1e-15)


def test_measure_povm_born_rule(rng):
    rho = states.random_density(3, rng)
    p = states.measure_povm(rho, states.computational_povm(3))
    np.testing.assert_allclose(p.weights, np.real(np.diag(rho.matrix)), atol=1e-15)


def test_tensor_and_mix(rng):
    a, b = states.random_density(2, rng), states.random_density(3, rng)
    np.testing.assert_allclose(states.tensor(a, b).matrix, np.kron(a.matrix, b.matrix), atol=1e-15)
    m = states.mix([a, states.maximally_mixed(2)], [0.3, 0.7])
    np.testing.assert_allclose(m.matrix, 0.3 * a.matrix + 0.35 * np.eye(2), atol=1e-15)


def test_channel_dimension_mismatch(rng):
    with pytest.raises(DimensionMismatch):
        states.apply_channel(states.random_kraus_channel(2, 2, rng), states.random_density(3, rng))
