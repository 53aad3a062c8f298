"""Entropies and distinguishability measures between density operators.

Logarithms are base two. Every entropic quantity goes through an
eigendecomposition; eigenvalues below the zero threshold count as exact
zeros and ``0 log 0 = 0``.
"""
import math

import numpy as np

from . import _kernels, linalg
from .classical import classical_jsd
from .errors import DimensionMismatch, NoConvergence, ReferenceNotFullRank, SupportViolation
from .states import (
    POVM,
    DensityOperator,
    PureState,
    StateEnsemble,
    as_density,
    as_rng,
    make_pure,
    measure_povm,
    random_hermitian,
)

# kernel mass of rho above which supp(rho) is not inside supp(sigma)
SUPPORT_LEAK_TOL = 1e-9


def _pair(rho, sigma):
    rho, sigma = as_density(rho), as_density(sigma)
    if rho.dim != sigma.dim:
        raise DimensionMismatch(f"states have dims {rho.dim} and {sigma.dim}")
    return rho, sigma


def _entropy_of_matrix(m) -> float:
    w, _, sweeps = _kernels.jacobi_eigh(m, False)
    if sweeps < 0:
        raise NoConvergence("Jacobi did not converge")
    return _kernels.entropy_bits(linalg.snap_spectrum(w))


def von_neumann_entropy(rho) -> float:
    return _kernels.entropy_bits(as_density(rho).spectrum)


def relative_entropy(rho, sigma) -> float:
    """Tr rho (log rho - log sigma), or ``math.inf`` when the support of rho
    is not contained in the support of sigma."""
    rho, sigma = _pair(rho, sigma)
    w = sigma.spectrum
    v = sigma.eigensystem.eigenvectors
    # diagonal of rho in sigma's eigenbasis
    overlap = np.real(np.einsum("ik,ij,jk->k", v.conj(), rho.matrix, v))
    kernel = w <= 0.0
    if np.sum(overlap[kernel]) > SUPPORT_LEAK_TOL:
        return math.inf
    cross = float(np.sum(overlap[~kernel] * np.log2(w[~kernel])))
    return -von_neumann_entropy(rho) - cross


def qjsd(rho, sigma) -> float:
    """Quantum Jensen-Shannon divergence H((rho+sigma)/2) - H(rho)/2 - H(sigma)/2."""
    rho, sigma = _pair(rho, sigma)
    if np.array_equal(rho.matrix, sigma.matrix):
        return 0.0
    m = 0.5 * (rho.matrix + sigma.matrix)
    return _entropy_of_matrix(m) - 0.5 * (von_neumann_entropy(rho) + von_neumann_entropy(sigma))


def qjsd_spectral(rho, sigma) -> float:
    """QJSD from the overlap double sums between the eigenbases of rho,
    sigma and rho + sigma.

    Written independently of :func:`qjsd`; the two agree to round-off.
    """
    rho, sigma = _pair(rho, sigma)
    t = linalg.eigh(rho.matrix + sigma.matrix)
    lam = linalg.snap_spectrum(t.eigenvalues)

    def half(state: DensityOperator) -> float:
        r = state.spectrum
        ov = np.abs(t.eigenvectors.conj().T @ state.eigensystem.eigenvectors) ** 2  # [k, i]
        total = 0.0
        for i in np.nonzero(r > 0)[0]:
            for k in np.nonzero(lam > 0)[0]:
                if ov[k, i] > 0.0:
                    total += ov[k, i] * r[i] * math.log2(2.0 * r[i] / lam[k])
        return total

    return 0.5 * (half(rho) + half(sigma))


def generalized_qjsd(ensemble: StateEnsemble) -> float:
    """Holevo quantity H(sum p_i rho_i) - sum p_i H(rho_i)."""
    p = ensemble.probabilities.weights
    avg = _entropy_of_matrix(ensemble.average())
    return avg - float(sum(w * von_neumann_entropy(s) for w, s in zip(p, ensemble.states)))


holevo_chi = generalized_qjsd


def joint_distribution(ensemble: StateEnsemble, povm: POVM) -> np.ndarray:
    if povm.dim != ensemble.dim:
        raise DimensionMismatch(f"POVM dim {povm.dim} does not match ensemble dim {ensemble.dim}")
    p = ensemble.probabilities.weights
    return np.array([p[x] * measure_povm(s, povm).weights for x, s in enumerate(ensemble.states)])


def mutual_information(ensemble: StateEnsemble, povm: POVM) -> float:
    """I(X:Y) between the ensemble label and the POVM outcome, in bits."""
    pxy = joint_distribution(ensemble, povm)
    px = pxy.sum(axis=1, keepdims=True)
    py = pxy.sum(axis=0, keepdims=True)
    on = pxy > 0
    ratio = pxy[on] / (px @ py)[on]
    return float(np.sum(pxy[on] * np.log2(ratio)))


def povm_induced_jsd(rho, sigma, povm: POVM) -> float:
    rho, sigma = _pair(rho, sigma)
    return classical_jsd(measure_povm(rho, povm), measure_povm(sigma, povm))


def jsd_via_reference(rho, sigma, tau) -> float:
    """QJSD as [S(rho||tau) + S(sigma||tau) - 2 S(m||tau)] / 2 for a
    full-rank reference state ``tau``."""
    rho, sigma = _pair(rho, sigma)
    tau = as_density(tau)
    if tau.dim != rho.dim:
        raise DimensionMismatch(f"reference has dim {tau.dim}, states have dim {rho.dim}")
    if np.any(tau.spectrum <= 0.0):
        raise ReferenceNotFullRank(
            f"reference state is rank deficient (min eigenvalue {tau.eigensystem.eigenvalues[0]:.3e})"
        )
    m = as_density(0.5 * (rho.matrix + sigma.matrix))
    return 0.5 * (relative_entropy(rho, tau) + relative_entropy(sigma, tau)) - relative_entropy(m, tau)


def hellinger_quantum(rho, sigma) -> float:
    rho, sigma = _pair(rho, sigma)
    d = linalg.sqrtm_psd(rho.matrix, rho.eigensystem) - linalg.sqrtm_psd(sigma.matrix, sigma.eigensystem)
    return float(np.real(np.trace(d @ d)))


def trace_distance(rho, sigma) -> float:
    rho, sigma = _pair(rho, sigma)
    w = linalg.eigvalsh(rho.matrix - sigma.matrix)
    return 0.5 * float(np.sum(np.abs(w)))


def fidelity(rho, sigma) -> float:
    """(Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2."""
    rho, sigma = _pair(rho, sigma)
    s = linalg.sqrtm_psd(rho.matrix, rho.eigensystem)
    w = linalg.snap_spectrum(linalg.eigvalsh(s @ sigma.matrix @ s))
    return float(np.sum(np.sqrt(np.clip(w, 0.0, None)))) ** 2


def bures_distance(rho, sigma) -> float:
    f = fidelity(rho, sigma)
    return math.sqrt(max(2.0 * (1.0 - math.sqrt(f)), 0.0))


def js_fidelity(rho, sigma) -> float:
    return (1.0 - qjsd(rho, sigma)) ** 2


def wootters_distance(psi, phi) -> float:
    """arccos |<psi|phi>| for pure states."""
    psi = psi if isinstance(psi, PureState) else make_pure(psi)
    phi = phi if isinstance(phi, PureState) else make_pure(phi)
    if psi.dim != phi.dim:
        raise DimensionMismatch(f"states have dims {psi.dim} and {phi.dim}")
    return math.acos(min(1.0, abs(np.vdot(psi.amplitudes, phi.amplitudes))))


def donald_residual(ensemble: StateEnsemble, sigma) -> float:
    """|sum p_i S(rho_i||sigma) - sum p_i S(rho_i||avg) - S(avg||sigma)|."""
    sigma = as_density(sigma)
    if sigma.dim != ensemble.dim:
        raise DimensionMismatch(f"sigma has dim {sigma.dim}, ensemble has dim {ensemble.dim}")
    p = ensemble.probabilities.weights
    avg = as_density(ensemble.average())
    lhs = 0.0
    mid = 0.0
    for w, s in zip(p, ensemble.states):
        if w == 0:
            continue
        d = relative_entropy(s, sigma)
        if math.isinf(d):
            raise SupportViolation("an ensemble state is not supported inside sigma")
        lhs += w * d
        mid += w * relative_entropy(s, avg)
    return abs(lhs - mid - relative_entropy(avg, sigma))


# ---------------------------------------------------------------------------
# Werner reference curves
# ---------------------------------------------------------------------------

def _xlog2x(x: float) -> float:
    return x * math.log2(x) if x > 0 else 0.0


def werner_qjsd_closed_form(F: float) -> float:
    """QJSD between the Werner state and the singlet from its spectrum:
    [F log F - (1+F) log((1+F)/2) + (1-F)] / 2."""
    return 0.5 * (_xlog2x(F) - _xlog2x(1.0 + F) + (1.0 + F) + (1.0 - F))


def werner_qjsd_short_form(F: float) -> float:
    """The shorter closed form [F log F - (1+F) log((1+F)/2)] / 2 that is
    often quoted for this curve.

    Differs from :func:`werner_qjsd_closed_form` by (1 - F)/2, so it only
    agrees with the spectral value at F = 1.
    """
    return 0.5 * (_xlog2x(F) - _xlog2x(1.0 + F) + (1.0 + F))


# ---------------------------------------------------------------------------
# neighbouring states
# ---------------------------------------------------------------------------

def neighborhood_ratio(rho, omega, eps: float) -> float:
    """2 * qjsd(rho, rho + eps*omega) / B^2(rho, rho + eps*omega)."""
    rho = as_density(rho)
    near = as_density(rho.matrix + eps * np.asarray(omega))
    return 2.0 * qjsd(rho, near) / bures_distance(rho, near) ** 2


def neighborhood_limit(rho, omega) -> float:
    """Small-eps limit of :func:`neighborhood_ratio`.

    The JS divergence is quadratic in the Kubo-Mori metric and the squared
    Bures distance in the symmetric logarithmic derivative metric; with
    base-2 logs the ratio of their leading terms is
    g_KM(omega, omega) / (ln 2 * g_SLD(omega, omega)).
    """
    rho = as_density(rho)
    p = rho.eigensystem.eigenvalues
    v = rho.eigensystem.eigenvectors
    w = np.abs(v.conj().T @ np.asarray(omega) @ v) ** 2
    pj, pk = np.meshgrid(p, p, indexing="ij")
    with np.errstate(divide="ignore", invalid="ignore"):
        km = np.where(np.isclose(pj, pk, rtol=1e-12, atol=0.0), 1.0 / pj,
                      (np.log(pj) - np.log(pk)) / (pj - pk))
    g_km = float(np.sum(w * km))
    g_sld = float(np.sum(w * 2.0 / (pj + pk)))
    return g_km / (math.log(2.0) * g_sld)


def random_traceless_hermitian(dim: int, rng) -> np.ndarray:
    """Traceless Hermitian direction with unit Frobenius norm."""
    h = random_hermitian(dim, as_rng(rng))
    h = h - np.trace(h) / dim * np.eye(dim)
    return h / np.linalg.norm(h)
