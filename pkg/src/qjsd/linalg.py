"""Dense Hermitian linear algebra for small dimensions."""
from typing import Callable, NamedTuple

import numpy as np

from . import _kernels
from ._kernels import ZERO_TOL
from .errors import DimensionMismatch, DomainError, NoConvergence, NotHermitian

HERMITIAN_TOL = 1e-10
# eigenvalues in [-NEG_ROUNDOFF, 0) are clamped to 0 before log/sqrt
NEG_ROUNDOFF = 1e-10


class EigenSystem(NamedTuple):
    """Ascending eigenvalues and the matching column eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_square(a) -> np.ndarray:
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DimensionMismatch(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DomainError("matrix has non-finite entries")
    return a


def hermiticity_residual(a) -> float:
    a = np.asarray(a)
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def _checked(a) -> np.ndarray:
    a = as_square(a)
    res = hermiticity_residual(a)
    if res > HERMITIAN_TOL:
        raise NotHermitian(f"matrix is not Hermitian: max|A - A^H| = {res:.3e}", res)
    return a


def eigh(a) -> EigenSystem:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations."""
    a = _checked(a)
    w, v, sweeps = _kernels.jacobi_eigh(a, True)
    if sweeps < 0:
        raise NoConvergence(f"Jacobi did not converge in {_kernels.MAX_SWEEPS} sweeps")
    return EigenSystem(w, v)


def eigvalsh(a) -> np.ndarray:
    a = _checked(a)
    w, _, sweeps = _kernels.jacobi_eigh(a, False)
    if sweeps < 0:
        raise NoConvergence(f"Jacobi did not converge in {_kernels.MAX_SWEEPS} sweeps")
    return w


def snap_spectrum(w) -> np.ndarray:
    """Apply the zero-threshold and round-off clamping rules to a spectrum.

    Values with ``|x| <= ZERO_TOL * max|w|`` become exact zeros and values in
    ``[-NEG_ROUNDOFF, 0)`` are clamped to zero. Anything more negative is left
    alone so callers can reject it.
    """
    w = np.array(w, dtype=float)
    if w.size == 0:
        return w
    scale = np.max(np.abs(w))
    w[np.abs(w) <= ZERO_TOL * scale] = 0.0
    w[(w < 0) & (w >= -NEG_ROUNDOFF)] = 0.0
    return w


def matrix_function(a, f: Callable[[np.ndarray], np.ndarray], *, es: EigenSystem = None) -> np.ndarray:
    """Apply ``f`` to the spectrum of the Hermitian matrix ``a``: V f(L) V^H.

    The spectrum is snapped with :func:`snap_spectrum` first, so ``f`` sees
    exact zeros where the threshold rule says so. A :class:`DomainError` is
    raised if ``f`` returns a non-finite value on the snapped spectrum.
    """
    if es is None:
        es = eigh(a)
    w = snap_spectrum(es.eigenvalues)
    with np.errstate(all="ignore"):
        fw = np.asarray(f(w), dtype=np.complex128)
    if not np.all(np.isfinite(fw)):
        bad = w[~np.isfinite(fw)]
        raise DomainError(f"function undefined on eigenvalue(s) {bad.tolist()}")
    v = es.eigenvectors
    out = (v * fw) @ v.conj().T
    return 0.5 * (out + out.conj().T)


def sqrtm_psd(a, es: EigenSystem = None) -> np.ndarray:
    return matrix_function(a, np.sqrt, es=es)


def tensor_product(a, b) -> np.ndarray:
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))


def _check_bipartite(m, dim_a: int, dim_b: int) -> np.ndarray:
    m = as_square(m)
    if dim_a < 1 or dim_b < 1 or m.shape[0] != dim_a * dim_b:
        raise DimensionMismatch(
            f"matrix of dim {m.shape[0]} does not factor as {dim_a} x {dim_b}"
        )
    return m


def partial_trace(m, dim_a: int, dim_b: int, keep: str = "A") -> np.ndarray:
    """Trace out one factor of an operator on C^dim_a (x) C^dim_b.

    ``keep`` is ``"A"`` or ``"B"``.
    """
    m = _check_bipartite(m, dim_a, dim_b).reshape(dim_a, dim_b, dim_a, dim_b)
    if keep == "A":
        return np.einsum("ibjb->ij", m)
    if keep == "B":
        return np.einsum("aiaj->ij", m)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def partial_transpose(m, dim_a: int, dim_b: int) -> np.ndarray:
    """Transpose the B-factor indices of an operator on A (x) B."""
    m = _check_bipartite(m, dim_a, dim_b).reshape(dim_a, dim_b, dim_a, dim_b)
    return m.transpose(0, 3, 2, 1).reshape(dim_a * dim_b, dim_a * dim_b)
