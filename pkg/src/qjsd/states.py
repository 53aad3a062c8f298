"""Validated quantum objects, named states and seeded random generators."""
from dataclasses import dataclass, field
from typing import Sequence, Tuple, Union

import numpy as np

from . import linalg
from .classical import ProbDist, make_probdist
from .errors import (
    DimensionMismatch,
    IncompleteChannel,
    IncompletePOVM,
    InvalidDistribution,
    NotHermitian,
    NotNormalized,
    NotPositive,
    TraceNotOne,
)
from .linalg import HERMITIAN_TOL, NEG_ROUNDOFF, EigenSystem

TRACE_TOL = 1e-10
NORM_TOL = 1e-10
COMPLETENESS_TOL = 1e-9


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.complex128)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """A validated density matrix. Build with :func:`make_density`."""

    matrix: np.ndarray
    eigensystem: EigenSystem = field(repr=False)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def spectrum(self) -> np.ndarray:
        """Eigenvalues after the zero-threshold and round-off clamping rules."""
        return linalg.snap_spectrum(self.eigensystem.eigenvalues)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


@dataclass(frozen=True, eq=False)
class PureState:
    amplitudes: np.ndarray

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]


@dataclass(frozen=True, eq=False)
class POVM:
    elements: Tuple[np.ndarray, ...]

    @property
    def dim(self) -> int:
        return self.elements[0].shape[0]

    def __len__(self):
        return len(self.elements)


@dataclass(frozen=True, eq=False)
class KrausChannel:
    operators: Tuple[np.ndarray, ...]

    @property
    def dim(self) -> int:
        return self.operators[0].shape[1]


@dataclass(frozen=True, eq=False)
class StateEnsemble:
    states: Tuple[DensityOperator, ...]
    probabilities: ProbDist

    @property
    def dim(self) -> int:
        return self.states[0].dim

    def average(self) -> np.ndarray:
        return sum(p * s.matrix for p, s in zip(self.probabilities.weights, self.states))


# ---------------------------------------------------------------------------
# validation gates
# ---------------------------------------------------------------------------

def make_density(matrix) -> DensityOperator:
    """Validate ``matrix`` as a density operator.

    Raises NotHermitian, NotPositive or TraceNotOne with the measured
    residual. Nothing is repaired except that the stored matrix is the exact
    Hermitian part of the input.
    """
    m = linalg.as_square(matrix)
    res = linalg.hermiticity_residual(m)
    if res > HERMITIAN_TOL:
        raise NotHermitian(f"density matrix is not Hermitian: max|M - M^H| = {res:.3e}", res)
    m = 0.5 * (m + m.conj().T)
    es = linalg.eigh(m)
    lo = float(es.eigenvalues[0])
    if lo < -NEG_ROUNDOFF:
        raise NotPositive(f"density matrix is not positive: min eigenvalue = {lo:.3e}", lo)
    tr = float(np.real(np.trace(m)))
    if abs(tr - 1.0) > TRACE_TOL:
        raise TraceNotOne(f"density matrix trace is {tr:.12g}, |Tr - 1| = {abs(tr - 1):.3e}", tr - 1.0)
    return DensityOperator(_readonly(m), es)


def make_pure(amplitudes) -> PureState:
    psi = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
    if psi.size < 1 or not np.all(np.isfinite(psi)):
        raise NotNormalized("state vector is empty or has non-finite entries")
    nrm = float(np.linalg.norm(psi))
    if abs(nrm - 1.0) > NORM_TOL:
        raise NotNormalized(f"state vector norm is {nrm:.12g}", nrm - 1.0)
    return PureState(_readonly(psi))


def make_povm(elements: Sequence) -> POVM:
    elems = [linalg.as_square(e) for e in elements]
    if not elems:
        raise IncompletePOVM("POVM has no elements")
    d = elems[0].shape[0]
    if any(e.shape != (d, d) for e in elems):
        raise DimensionMismatch("POVM elements have different dimensions")
    for i, e in enumerate(elems):
        res = linalg.hermiticity_residual(e)
        if res > HERMITIAN_TOL:
            raise NotHermitian(f"POVM element {i} is not Hermitian: residual {res:.3e}", res)
        lo = float(linalg.eigvalsh(e)[0])
        if lo < -NEG_ROUNDOFF:
            raise NotPositive(f"POVM element {i} has eigenvalue {lo:.3e}", lo)
    res = float(np.max(np.abs(sum(elems) - np.eye(d))))
    if res > COMPLETENESS_TOL:
        raise IncompletePOVM(f"POVM elements do not sum to identity: residual {res:.3e}", res)
    return POVM(tuple(_readonly(0.5 * (e + e.conj().T)) for e in elems))


def make_channel(operators: Sequence) -> KrausChannel:
    ops = [np.asarray(v, dtype=np.complex128) for v in operators]
    if not ops:
        raise IncompleteChannel("channel has no Kraus operators")
    d = ops[0].shape[1]
    if any(v.ndim != 2 or v.shape != (d, d) for v in ops):
        raise DimensionMismatch("Kraus operators must all be square with a common dimension")
    res = float(np.max(np.abs(sum(v.conj().T @ v for v in ops) - np.eye(d))))
    if res > COMPLETENESS_TOL:
        raise IncompleteChannel(f"Kraus operators are not complete: residual {res:.3e}", res)
    return KrausChannel(tuple(_readonly(v) for v in ops))


def make_ensemble(states: Sequence, probabilities) -> StateEnsemble:
    states = tuple(as_density(s) for s in states)
    probs = make_probdist(probabilities)
    if not states:
        raise InvalidDistribution("ensemble is empty")
    if len(states) != len(probs):
        raise DimensionMismatch(f"{len(states)} states but {len(probs)} probabilities")
    if any(s.dim != states[0].dim for s in states):
        raise DimensionMismatch("ensemble states have different dimensions")
    return StateEnsemble(states, probs)


State = Union[DensityOperator, PureState, np.ndarray]


def as_density(x) -> DensityOperator:
    """Coerce a DensityOperator, PureState, vector or matrix to a DensityOperator."""
    if isinstance(x, DensityOperator):
        return x
    if isinstance(x, PureState):
        return pure_to_density(x)
    a = np.asarray(x)
    if a.ndim == 1:
        return pure_to_density(make_pure(a))
    return make_density(a)


def pure_to_density(psi) -> DensityOperator:
    if not isinstance(psi, PureState):
        psi = make_pure(psi)
    v = psi.amplitudes
    return make_density(np.outer(v, v.conj()))


# ---------------------------------------------------------------------------
# named states
# ---------------------------------------------------------------------------

_S = 1.0 / np.sqrt(2.0)
# computational order |uu>, |ud>, |du>, |dd>
PSI_MINUS = np.array([0, _S, -_S, 0], dtype=np.complex128)
PSI_PLUS = np.array([0, _S, _S, 0], dtype=np.complex128)
PHI_PLUS = np.array([_S, 0, 0, _S], dtype=np.complex128)
PHI_MINUS = np.array([_S, 0, 0, -_S], dtype=np.complex128)
BELL_BASIS = (PSI_MINUS, PSI_PLUS, PHI_PLUS, PHI_MINUS)


def bell_state(name: str) -> DensityOperator:
    vecs = {"psi-": PSI_MINUS, "psi+": PSI_PLUS, "phi+": PHI_PLUS, "phi-": PHI_MINUS}
    return pure_to_density(vecs[name])


def singlet() -> DensityOperator:
    return bell_state("psi-")


def werner_state(F: float) -> DensityOperator:
    """Singlet weight ``F``, the other three Bell projectors share ``1 - F``."""
    F = float(F)
    if not 0.0 <= F <= 1.0:
        raise ValueError(f"Werner parameter F must lie in [0, 1], got {F}")
    weights = (F,) + ((1.0 - F) / 3.0,) * 3
    m = sum(w * np.outer(v, v.conj()) for w, v in zip(weights, BELL_BASIS))
    return make_density(m)


def maximally_mixed(dim: int) -> DensityOperator:
    return make_density(np.eye(dim, dtype=np.complex128) / dim)


def diagonal_state(p) -> DensityOperator:
    return make_density(np.diag(np.asarray(p, dtype=float)))


# ---------------------------------------------------------------------------
# random objects
# ---------------------------------------------------------------------------

def as_rng(rng) -> np.random.Generator:
    """Accept a Generator, an integer seed, or a sequence of integers."""
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def _ginibre(rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2.0)


def random_density(dim: int, rng=None) -> DensityOperator:
    """Hilbert-Schmidt random state G G^H / Tr(G G^H)."""
    rng = as_rng(rng)
    g = _ginibre(dim, dim, rng)
    m = g @ g.conj().T
    return make_density(m / np.real(np.trace(m)))


def random_pure(dim: int, rng=None) -> PureState:
    rng = as_rng(rng)
    v = _ginibre(dim, 1, rng)[:, 0]
    return make_pure(v / np.linalg.norm(v))


def random_unitary(dim: int, rng=None) -> np.ndarray:
    """Haar unitary: QR of a Ginibre matrix with the phases of R's diagonal
    moved into Q."""
    rng = as_rng(rng)
    q, r = np.linalg.qr(_ginibre(dim, dim, rng))
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_hermitian(dim: int, rng=None) -> np.ndarray:
    rng = as_rng(rng)
    g = _ginibre(dim, dim, rng)
    return 0.5 * (g + g.conj().T)


def random_kraus_channel(dim: int, n_ops: int, rng=None) -> KrausChannel:
    """Stinespring construction: the first ``dim`` columns of a random
    unitary on ``dim * n_ops`` dimensions, cut into ``n_ops`` blocks."""
    if n_ops < 1:
        raise ValueError("n_ops must be at least 1")
    u = random_unitary(dim * n_ops, rng)[:, :dim]
    return make_channel([u[i * dim:(i + 1) * dim] for i in range(n_ops)])


def random_povm(dim: int, n_outcomes: int, rng=None) -> POVM:
    ch = random_kraus_channel(dim, n_outcomes, rng)
    return make_povm([v.conj().T @ v for v in ch.operators])


def projective_povm(vectors) -> POVM:
    """POVM of rank-one projectors onto the columns of ``vectors``."""
    v = np.asarray(vectors, dtype=np.complex128)
    return make_povm([np.outer(v[:, i], v[:, i].conj()) for i in range(v.shape[1])])


def computational_povm(dim: int) -> POVM:
    return projective_povm(np.eye(dim))


def random_ensemble(dim: int, n_states: int, rng=None) -> StateEnsemble:
    rng = as_rng(rng)
    states = [random_density(dim, rng) for _ in range(n_states)]
    p = rng.dirichlet(np.ones(n_states))
    return make_ensemble(states, p)


# ---------------------------------------------------------------------------
# channels and measurements
# ---------------------------------------------------------------------------

def apply_channel(channel: KrausChannel, rho) -> DensityOperator:
    rho = as_density(rho)
    if channel.dim != rho.dim:
        raise DimensionMismatch(f"channel acts on dim {channel.dim}, state has dim {rho.dim}")
    out = sum(v @ rho.matrix @ v.conj().T for v in channel.operators)
    return make_density(0.5 * (out + out.conj().T))


def unitary_channel(u) -> KrausChannel:
    return make_channel([u])


def projective_channel(povm: POVM) -> KrausChannel:
    """The dephasing map rho -> sum_i P_i rho P_i for a projective POVM."""
    return make_channel(list(povm.elements))


def conjugate(rho, u) -> DensityOperator:
    rho = as_density(rho)
    u = np.asarray(u, dtype=np.complex128)
    return make_density(u @ rho.matrix @ u.conj().T)


def measure_povm(rho, povm: POVM) -> ProbDist:
    rho = as_density(rho)
    if povm.dim != rho.dim:
        raise DimensionMismatch(f"POVM acts on dim {povm.dim}, state has dim {rho.dim}")
    p = np.array([np.real(np.trace(rho.matrix @ e)) for e in povm.elements])
    # round-off only; genuinely negative outcomes cannot occur for valid inputs
    p[(p < 0) & (p > -1e-12)] = 0.0
    return make_probdist(p)


def mix(states, weights) -> DensityOperator:
    mats = [as_density(s).matrix for s in states]
    return make_density(sum(w * m for w, m in zip(weights, mats)))


def tensor(*states) -> DensityOperator:
    out = np.ones((1, 1), dtype=np.complex128)
    for s in states:
        out = linalg.tensor_product(out, as_density(s).matrix)
    return make_density(out)


def reduced_state(rho, dim_a: int, dim_b: int, keep: str = "A") -> DensityOperator:
    return make_density(linalg.partial_trace(as_density(rho).matrix, dim_a, dim_b, keep))
