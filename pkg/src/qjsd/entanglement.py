"""JS entanglement measure: minimum QJSD to the separable set.

The separable candidate is a mixture of K product pure states whose
parameters are searched with restarted Nelder-Mead. For 2x2 and 2x3
systems positivity of the partial transpose decides separability exactly,
which gives the optimizer an independent ground truth.
"""
import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from . import _kernels, linalg
from .divergences import qjsd, von_neumann_entropy
from .errors import DimensionMismatch
from .states import DensityOperator, as_density, as_rng, make_density

PPT_TOL = 1e-10
SEPARABLE = "separable-compatible"
ENTANGLED = "entangled"


def ppt_min_eigenvalue(rho, dim_a: int, dim_b: int) -> float:
    rho = as_density(rho)
    return float(linalg.eigvalsh(linalg.partial_transpose(rho.matrix, dim_a, dim_b))[0])


def ppt_verdict(rho, dim_a: int, dim_b: int) -> str:
    return ENTANGLED if ppt_min_eigenvalue(rho, dim_a, dim_b) < -PPT_TOL else SEPARABLE


# ---------------------------------------------------------------------------
# ansatz
# ---------------------------------------------------------------------------

def _params_per_term(dim_a: int, dim_b: int) -> int:
    return 1 + 2 * (dim_a - 1) + 2 * (dim_b - 1)


@dataclass(frozen=True)
class SeparableAnsatz:
    """Flat parameter vector for sum_k w_k |a_k><a_k| (x) |b_k><b_k|.

    Layout: ``n_terms`` raw weights (w_k is proportional to the square),
    then ``n_terms`` blocks of 2(dim_a - 1) angles/phases for the A factors,
    then the same for B.
    """

    n_terms: int
    dim_a: int
    dim_b: int
    params: np.ndarray

    def __post_init__(self):
        want = self.n_terms * _params_per_term(self.dim_a, self.dim_b)
        if self.params.shape != (want,):
            raise ValueError(f"ansatz needs {want} parameters, got shape {self.params.shape}")

    @property
    def weights(self) -> np.ndarray:
        raw = self.params[: self.n_terms] ** 2
        return raw / raw.sum() if raw.sum() > 0 else np.full(self.n_terms, 1.0 / self.n_terms)

    @classmethod
    def random(cls, n_terms: int, dim_a: int, dim_b: int, rng=None) -> "SeparableAnsatz":
        rng = as_rng(rng)
        size = n_terms * _params_per_term(dim_a, dim_b)
        p = np.empty(size)
        p[:n_terms] = rng.standard_normal(n_terms)
        p[n_terms:] = rng.uniform(0.0, 2.0 * np.pi, size - n_terms)
        return cls(n_terms, dim_a, dim_b, p)

    @classmethod
    def from_terms(cls, weights, a_states, b_states, n_terms: Optional[int] = None) -> "SeparableAnsatz":
        """Encode explicit product terms; unused slots get zero weight."""
        a_states = [np.asarray(a, dtype=complex) for a in a_states]
        b_states = [np.asarray(b, dtype=complex) for b in b_states]
        dim_a, dim_b = a_states[0].size, b_states[0].size
        n_terms = len(a_states) if n_terms is None else n_terms
        if n_terms < len(a_states):
            raise ValueError("more product terms than ansatz slots")
        na, nb = 2 * (dim_a - 1), 2 * (dim_b - 1)
        p = np.zeros(n_terms * _params_per_term(dim_a, dim_b))
        p[: len(weights)] = np.sqrt(np.asarray(weights, dtype=float))
        for k, (a, b) in enumerate(zip(a_states, b_states)):
            p[n_terms + k * na: n_terms + (k + 1) * na] = _encode_local(a)
            off = n_terms + n_terms * na
            p[off + k * nb: off + (k + 1) * nb] = _encode_local(b)
        return cls(n_terms, dim_a, dim_b, p)


def _encode_local(u) -> np.ndarray:
    """Inverse of the hyperspherical pure-state parameterization."""
    u = np.asarray(u, dtype=complex)
    u = u / np.linalg.norm(u)
    d = u.size
    if abs(u[0]) > 0:
        u = u * np.exp(-1j * np.angle(u[0]))
    angles = np.empty(d - 1)
    phases = np.angle(u[1:]) if d > 1 else np.empty(0)
    for j in range(d - 1):
        angles[j] = math.atan2(float(np.linalg.norm(u[j + 1:])), abs(u[j]))
    return np.concatenate([angles, phases])


def assemble(ansatz: SeparableAnsatz) -> DensityOperator:
    sigma = _kernels.ansatz_sigma(ansatz.params, ansatz.n_terms, ansatz.dim_a, ansatz.dim_b)
    return make_density(sigma)


def random_separable(dim_a: int, dim_b: int, rng=None, n_terms: Optional[int] = None) -> DensityOperator:
    n_terms = (dim_a * dim_b) ** 2 if n_terms is None else n_terms
    return assemble(SeparableAnsatz.random(n_terms, dim_a, dim_b, rng))


# ---------------------------------------------------------------------------
# optimizer
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 5
    max_iterations: int = 8000
    tol: float = 1e-7
    seed: int = 0
    n_terms: Optional[int] = None  # defaults to (dim_a * dim_b) ** 2
    rebuild_every: int = 500
    step: float = 1.0

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be at least 1")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if not self.tol > 0:
            raise ValueError("tol must be positive")


@dataclass
class EntanglementEstimate:
    value: float
    best_sigma: DensityOperator
    iterations_used: int
    ppt_verdict: str
    ppt_min_eigenvalue: float
    converged: bool
    restart_values: List[float] = field(default_factory=list)
    traces: List[np.ndarray] = field(default_factory=list, repr=False)


def _marginal_start(rho: DensityOperator, dim_a: int, dim_b: int, n_terms: int) -> np.ndarray:
    """Ansatz encoding rho_A (x) rho_B, which is exact for product inputs."""
    ea = linalg.eigh(linalg.partial_trace(rho.matrix, dim_a, dim_b, "A"))
    eb = linalg.eigh(linalg.partial_trace(rho.matrix, dim_a, dim_b, "B"))
    wa = np.clip(ea.eigenvalues, 0, None)
    wb = np.clip(eb.eigenvalues, 0, None)
    weights, a_states, b_states = [], [], []
    for i in range(dim_a):
        for j in range(dim_b):
            weights.append(wa[i] * wb[j])
            a_states.append(ea.eigenvectors[:, i])
            b_states.append(eb.eigenvectors[:, j])
    weights = np.asarray(weights) / np.sum(weights)
    return SeparableAnsatz.from_terms(weights, a_states, b_states, n_terms).params


def restart_rng(seed: int, restart: int) -> np.random.Generator:
    return np.random.default_rng([int(seed), int(restart)])


def estimate_e_js(rho, dim_a: int, dim_b: int, cfg: OptimizerConfig = OptimizerConfig()) -> EntanglementEstimate:
    """Upper estimate of min over separable sigma of qjsd(rho, sigma).

    Restart 0 starts from the product of the marginals; the others start from
    random ansatz parameters drawn from ``restart_rng(cfg.seed, r)``. Once a
    restart gets within ``cfg.tol`` of zero the remaining restarts are
    skipped, since the divergence cannot go lower.
    """
    rho = as_density(rho)
    if dim_a < 1 or dim_b < 1 or rho.dim != dim_a * dim_b:
        raise DimensionMismatch(f"state of dim {rho.dim} does not factor as {dim_a} x {dim_b}")
    n_terms = cfg.n_terms or (dim_a * dim_b) ** 2
    n_params = n_terms * _params_per_term(dim_a, dim_b)
    h_rho = von_neumann_entropy(rho)
    step = np.full(n_params, cfg.step)

    best = None
    total_iters = 0
    values, traces = [], []
    for r in range(cfg.restarts):
        if r == 0:
            x0 = _marginal_start(rho, dim_a, dim_b, n_terms)
        else:
            x0 = SeparableAnsatz.random(n_terms, dim_a, dim_b, restart_rng(cfg.seed, r)).params
        x, f, iters, conv, trace, _ = _kernels.nelder_mead(
            x0, step, rho.matrix, n_terms, dim_a, dim_b, h_rho,
            cfg.max_iterations, cfg.tol, cfg.rebuild_every, 0.0,
        )
        total_iters += int(iters)
        values.append(float(f))
        traces.append(trace)
        if best is None or f < best[1]:
            best = (x, float(f), bool(conv))
        if best[1] <= cfg.tol:
            break

    sigma = assemble(SeparableAnsatz(n_terms, dim_a, dim_b, best[0]))
    value = max(qjsd(rho, sigma), 0.0)
    return EntanglementEstimate(
        value=value,
        best_sigma=sigma,
        iterations_used=total_iters,
        ppt_verdict=ppt_verdict(rho, dim_a, dim_b),
        ppt_min_eigenvalue=ppt_min_eigenvalue(rho, dim_a, dim_b),
        converged=best[2],
        restart_values=values,
        traces=traces,
    )
