"""Randomized property suite.

Every property is a function of a seeded generator returning a residual.
Asserted properties pass when the residual is at most their tolerance
(``exists`` properties pass when at least one trial exceeds it); exploratory
ones are only counted. Trial ``i`` of a run with master seed ``s`` draws
from ``default_rng([s + i, crc32(property name)])``.
"""
import math
import zlib
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, List, Optional

import numpy as np

from . import divergences as qd
from . import linalg, states
from .classical import (
    classical_jsd,
    generalized_jsd,
    kl_divergence,
    shannon_entropy,
)
from .entanglement import (
    OptimizerConfig,
    SeparableAnsatz,
    assemble,
    estimate_e_js,
    ppt_min_eigenvalue,
)

SUITES = ("classical", "relative-entropy", "qjsd", "channels", "bipartite",
          "neighborhood", "holevo", "entanglement")
# entanglement properties run trials // ENT_SCALE times (at least once)
ENT_SCALE = 20


@dataclass(frozen=True)
class Property:
    name: str
    suite: str
    check: Callable[[np.random.Generator], float]
    tol: float
    mode: str = "le"  # "le", "exists" or "record"
    trial_scale: int = 1
    max_trials: Optional[int] = None
    description: str = ""

    @property
    def asserted(self) -> bool:
        return self.mode != "record"

    def n_trials(self, trials: int) -> int:
        n = max(1, trials // self.trial_scale)
        return min(n, self.max_trials) if self.max_trials else n


@dataclass
class PropertyResult:
    prop: Property
    trials: int
    passed: int
    max_residual: float
    first_failure: Optional[int] = None  # per-trial seed of the first failing trial

    @property
    def ok(self) -> bool:
        if self.prop.mode == "exists":
            return self.max_residual > self.prop.tol
        return self.passed == self.trials

    @property
    def status(self) -> str:
        if not self.prop.asserted:
            return "recorded"
        return "pass" if self.ok else "FAIL"


def trial_rng(name: str, seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng([seed + trial, zlib.crc32(name.encode())])


def run_property(prop: Property, trials: int, seed: int) -> PropertyResult:
    n = prop.n_trials(trials)
    passed = 0
    worst = -math.inf
    first = None
    for i in range(n):
        r = float(prop.check(trial_rng(prop.name, seed, i)))
        ok = r > prop.tol if prop.mode == "exists" else r <= prop.tol
        passed += ok
        if not ok and first is None and prop.mode != "exists":
            first = seed + i
        if r > worst or math.isnan(r):
            worst = r
    return PropertyResult(prop, n, passed, worst, first)


# ---------------------------------------------------------------------------
# random inputs
# ---------------------------------------------------------------------------

def _dim(rng, lo=2, hi=6) -> int:
    return int(rng.integers(lo, hi + 1))


def _dist(rng, n) -> np.ndarray:
    return rng.dirichlet(np.ones(n))


def _pair(rng, lo=2, hi=6):
    d = _dim(rng, lo, hi)
    return states.random_density(d, rng), states.random_density(d, rng)


def _orthogonal_pure_pair(rng, d):
    u = states.random_unitary(d, rng)
    return states.pure_to_density(u[:, 0]), states.pure_to_density(u[:, 1])


def _full_rank(rng, d, floor=0.2):
    """Hilbert-Schmidt state mixed with I/d so every eigenvalue is >= floor/d."""
    r = states.random_density(d, rng)
    return states.make_density((1 - floor) * r.matrix + floor * np.eye(d) / d)


def _finite(x):
    return x if math.isfinite(x) else math.nan


# ---------------------------------------------------------------------------
# classical
# ---------------------------------------------------------------------------

def _c_triangle(rng):
    n = _dim(rng, 2, 8)
    p, q, r = (_dist(rng, n) for _ in range(3))
    s = math.sqrt
    return s(classical_jsd(p, r)) - s(classical_jsd(p, q)) - s(classical_jsd(q, r))


def _c_bounds(rng):
    n = _dim(rng, 2, 8)
    v = classical_jsd(_dist(rng, n), _dist(rng, n))
    return max(-v, v - 1.0)


def _c_symmetry(rng):
    n = _dim(rng, 2, 8)
    p, q = _dist(rng, n), _dist(rng, n)
    return abs(classical_jsd(p, q) - classical_jsd(q, p))


def _c_kl_bound(rng):
    n = _dim(rng, 2, 8)
    p, q = _dist(rng, n), _dist(rng, n)
    return classical_jsd(p, q) - 0.5 * (kl_divergence(p, q) + kl_divergence(q, p))


def _c_generalized_two(rng):
    n = _dim(rng, 2, 8)
    p, q = _dist(rng, n), _dist(rng, n)
    return abs(generalized_jsd([p, q], [0.5, 0.5]) - classical_jsd(p, q))


def _c_generalized_bound(rng):
    n, k = _dim(rng, 2, 8), _dim(rng, 2, 5)
    w = _dist(rng, k)
    v = generalized_jsd([_dist(rng, n) for _ in range(k)], w)
    return max(-v, v - shannon_entropy(w))


# ---------------------------------------------------------------------------
# relative entropy
# ---------------------------------------------------------------------------

def _re_nonneg(rng):
    rho, sigma = _pair(rng)
    return -qd.relative_entropy(rho, sigma)


def _re_unitary(rng):
    rho, sigma = _pair(rng)
    u = states.random_unitary(rho.dim, rng)
    a = qd.relative_entropy(states.conjugate(rho, u), states.conjugate(sigma, u))
    return _finite(abs(a - qd.relative_entropy(rho, sigma)))


def _re_cp(rng):
    rho, sigma = _pair(rng)
    ch = states.random_kraus_channel(rho.dim, int(rng.integers(1, 5)), rng)
    a = qd.relative_entropy(states.apply_channel(ch, rho), states.apply_channel(ch, sigma))
    return _finite(a - qd.relative_entropy(rho, sigma))


def _re_projective(rng):
    rho, sigma = _pair(rng)
    ch = states.projective_channel(states.projective_povm(states.random_unitary(rho.dim, rng)))
    a = qd.relative_entropy(states.apply_channel(ch, rho), states.apply_channel(ch, sigma))
    return _finite(a - qd.relative_entropy(rho, sigma))


def _mixture_inputs(rng):
    d, k = _dim(rng), _dim(rng, 2, 4)
    lam = _dist(rng, k)
    rhos = [states.random_density(d, rng) for _ in range(k)]
    sigmas = [states.random_density(d, rng) for _ in range(k)]
    return lam, rhos, sigmas


def _re_joint_convexity(rng):
    lam, rhos, sigmas = _mixture_inputs(rng)
    lhs = qd.relative_entropy(states.mix(rhos, lam), states.mix(sigmas, lam))
    rhs = sum(w * qd.relative_entropy(r, s) for w, r, s in zip(lam, rhos, sigmas))
    return _finite(lhs - rhs)


def _re_donald(rng):
    d = _dim(rng)
    ens = states.random_ensemble(d, 3, rng)
    sigma = states.maximally_mixed(d) if rng.random() < 0.5 else states.random_density(d, rng)
    return qd.donald_residual(ens, sigma)


def _re_commuting(rng):
    d = _dim(rng)
    p, q = _dist(rng, d), _dist(rng, d)
    u = states.random_unitary(d, rng)
    rho = states.make_density(u @ np.diag(p) @ u.conj().T)
    sigma = states.make_density(u @ np.diag(q) @ u.conj().T)
    return abs(qd.relative_entropy(rho, sigma) - kl_divergence(p, q))


def _re_support(rng):
    d = _dim(rng)
    rho = states.random_density(d, rng)
    sigma = states.pure_to_density(states.random_pure(d, rng))
    return 0.0 if math.isinf(qd.relative_entropy(rho, sigma)) else 1.0


# ---------------------------------------------------------------------------
# qjsd and friends
# ---------------------------------------------------------------------------

def _q_bounds(rng):
    rho, sigma = _pair(rng)
    v = qd.qjsd(rho, sigma)
    return max(-v, v - 1.0)


def _q_symmetry(rng):
    rho, sigma = _pair(rng)
    return abs(qd.qjsd(rho, sigma) - qd.qjsd(sigma, rho))


def _q_spectral(rng):
    rho, sigma = _pair(rng)
    return abs(qd.qjsd(rho, sigma) - qd.qjsd_spectral(rho, sigma))


def _q_commuting(rng):
    d = _dim(rng)
    p, q = _dist(rng, d), _dist(rng, d)
    u = states.random_unitary(d, rng)
    rho = states.make_density(u @ np.diag(p) @ u.conj().T)
    sigma = states.make_density(u @ np.diag(q) @ u.conj().T)
    return abs(qd.qjsd(rho, sigma) - classical_jsd(p, q))


UNITARY_MEASURES = {
    "qjsd": qd.qjsd,
    "trace": qd.trace_distance,
    "fidelity": qd.fidelity,
    "hellinger": qd.hellinger_quantum,
    "bures": qd.bures_distance,
}


def _q_unitary(rng):
    rho, sigma = _pair(rng)
    u = states.random_unitary(rho.dim, rng)
    r2, s2 = states.conjugate(rho, u), states.conjugate(sigma, u)
    return max(abs(f(r2, s2) - f(rho, sigma)) for f in UNITARY_MEASURES.values())


def _q_orthogonal(rng):
    a, b = _orthogonal_pure_pair(rng, _dim(rng))
    return abs(qd.qjsd(a, b) - 1.0)


def _q_mixing(rng):
    d, k = _dim(rng), _dim(rng, 2, 4)
    ens = states.random_ensemble(d, k, rng)
    return qd.generalized_qjsd(ens) - shannon_entropy(ens.probabilities)


def _q_mixing_orthogonal(rng):
    # k blocks of a random orthonormal frame, one mixed state per block
    k = _dim(rng, 2, 3)
    block = _dim(rng, 1, 2)
    d = k * block
    u = states.random_unitary(d, rng)
    members = []
    for i in range(k):
        frame = u[:, i * block:(i + 1) * block]
        r = states.random_density(block, rng).matrix
        members.append(frame @ r @ frame.conj().T)
    ens = states.make_ensemble(members, _dist(rng, k))
    return abs(qd.generalized_qjsd(ens) - shannon_entropy(ens.probabilities))


def _q_reference(rng):
    rho, sigma = _pair(rng)
    tau = states.maximally_mixed(rho.dim) if rng.random() < 0.5 else states.random_density(rho.dim, rng)
    return abs(qd.jsd_via_reference(rho, sigma, tau) - qd.qjsd(rho, sigma))


def _q_joint_convexity(rng):
    lam, rhos, sigmas = _mixture_inputs(rng)
    lhs = qd.qjsd(states.mix(rhos, lam), states.mix(sigmas, lam))
    return lhs - sum(w * qd.qjsd(r, s) for w, r, s in zip(lam, rhos, sigmas))


def _q_pure_fidelity(rng):
    d = _dim(rng)
    rho = states.random_density(d, rng)
    psi = states.random_pure(d, rng).amplitudes
    amp = float(np.real(np.vdot(psi, rho.matrix @ psi)))
    return abs(qd.fidelity(rho, states.pure_to_density(psi)) - amp)


def _q_fidelity_symmetry(rng):
    rho, sigma = _pair(rng)
    return abs(qd.fidelity(rho, sigma) - qd.fidelity(sigma, rho))


def _q_triangle(rng):
    d = _dim(rng)
    a, b, c = (states.random_density(d, rng) for _ in range(3))
    s = lambda x, y: math.sqrt(max(qd.qjsd(x, y), 0.0))  # noqa: E731
    return s(a, c) - s(a, b) - s(b, c)


# ---------------------------------------------------------------------------
# channels
# ---------------------------------------------------------------------------

def _ch_qjsd_cp(rng):
    rho, sigma = _pair(rng)
    ch = states.random_kraus_channel(rho.dim, int(rng.integers(1, 5)), rng)
    return qd.qjsd(states.apply_channel(ch, rho), states.apply_channel(ch, sigma)) - qd.qjsd(rho, sigma)


def _ch_qjsd_projective(rng):
    rho, sigma = _pair(rng)
    ch = states.projective_channel(states.projective_povm(states.random_unitary(rho.dim, rng)))
    return qd.qjsd(states.apply_channel(ch, rho), states.apply_channel(ch, sigma)) - qd.qjsd(rho, sigma)


def _ch_povm(rng):
    rho, sigma = _pair(rng)
    povm = states.random_povm(rho.dim, int(rng.integers(1, 6)), rng)
    return qd.povm_induced_jsd(rho, sigma, povm) - qd.qjsd(rho, sigma)


def _ch_trace(rng):
    rho = states.random_density(_dim(rng), rng)
    ch = states.random_kraus_channel(rho.dim, int(rng.integers(1, 5)), rng)
    out = sum(v @ rho.matrix @ v.conj().T for v in ch.operators)
    lo = float(linalg.eigvalsh(0.5 * (out + out.conj().T))[0])
    return max(abs(float(np.real(np.trace(out))) - 1.0), -lo)


# ---------------------------------------------------------------------------
# bipartite
# ---------------------------------------------------------------------------

def _bip_dims(rng):
    return (2, 2) if rng.random() < 0.5 else (2, 3)


def _bip_partial(measure):
    def check(rng):
        da, db = _bip_dims(rng)
        rho, sigma = states.random_density(da * db, rng), states.random_density(da * db, rng)
        full = measure(rho, sigma)
        worst = -math.inf
        for keep in ("A", "B"):
            part = measure(states.reduced_state(rho, da, db, keep), states.reduced_state(sigma, da, db, keep))
            worst = max(worst, part - full)
        return _finite(worst)
    return check


def _bip_re_additivity(rng):
    d1, d2 = _dim(rng, 2, 3), _dim(rng, 2, 3)
    r1, s1 = states.random_density(d1, rng), states.random_density(d1, rng)
    r2, s2 = states.random_density(d2, rng), states.random_density(d2, rng)
    lhs = qd.relative_entropy(states.tensor(r1, r2), states.tensor(s1, s2))
    return abs(lhs - qd.relative_entropy(r1, s1) - qd.relative_entropy(r2, s2))


def _bip_restricted(rng):
    d1, d2 = _dim(rng, 2, 3), _dim(rng, 2, 3)
    r1, s1 = states.random_density(d1, rng), states.random_density(d1, rng)
    r2 = states.random_density(d2, rng)
    return abs(qd.qjsd(states.tensor(r1, r2), states.tensor(s1, r2)) - qd.qjsd(r1, s1))


def _bip_additivity_gap(rng):
    d1, d2 = _dim(rng, 2, 3), _dim(rng, 2, 3)
    r1, s1 = states.random_density(d1, rng), states.random_density(d1, rng)
    r2, s2 = states.random_density(d2, rng), states.random_density(d2, rng)
    return abs(qd.qjsd(states.tensor(r1, r2), states.tensor(s1, s2)) - qd.qjsd(r1, s1) - qd.qjsd(r2, s2))


# ---------------------------------------------------------------------------
# neighbouring states
# ---------------------------------------------------------------------------

def _nb_inputs(rng):
    d = _dim(rng, 2, 4)
    return _full_rank(rng, d), qd.random_traceless_hermitian(d, rng)


def _nb_limit(rng):
    """Relative distance of the eps=1e-3 ratio from its small-eps limit."""
    rho, omega = _nb_inputs(rng)
    lim = qd.neighborhood_limit(rho, omega)
    return abs(qd.neighborhood_ratio(rho, omega, 1e-3) - lim) / lim


def _nb_convergence(rng):
    rho, omega = _nb_inputs(rng)
    lim = qd.neighborhood_limit(rho, omega)
    fine = abs(qd.neighborhood_ratio(rho, omega, 1e-3) - lim)
    coarse = abs(qd.neighborhood_ratio(rho, omega, 1e-2) - lim)
    return fine - coarse


def _nb_ratio_one(rng):
    """The unit-ratio reading: |r(1e-3) - 1| <= 0.05 and r(1e-3) closer to 1 than r(1e-2)."""
    rho, omega = _nb_inputs(rng)
    fine = abs(qd.neighborhood_ratio(rho, omega, 1e-3) - 1.0)
    coarse = abs(qd.neighborhood_ratio(rho, omega, 1e-2) - 1.0)
    return fine if fine < coarse else max(fine, 1.0)


def _binary_entropy(x):
    return -sum(t * math.log2(t) for t in (x, 1.0 - x) if t > 0)


def _nb_pure_exact(rng):
    d = _dim(rng, 2, 4)
    psi = states.random_pure(d, rng)
    phi = states.random_pure(d, rng)
    c = abs(np.vdot(psi.amplitudes, phi.amplitudes))
    exact = _binary_entropy(0.5 * (1.0 + c))
    return abs(qd.qjsd(states.pure_to_density(psi), states.pure_to_density(phi)) - exact)


def _close_pure_pair(rng, w_max=0.1):
    d = _dim(rng, 2, 4)
    u = states.random_unitary(d, rng)
    w = float(rng.uniform(1e-3, w_max))
    phi = math.cos(w) * u[:, 0] + math.sin(w) * u[:, 1]
    return u[:, 0], phi, w


def _nb_wootters(rng):
    """The sqrt(2 JS) approximation of the pure-state angle, |W - sqrt(2 JS)| / W^2."""
    psi, phi, w = _close_pure_pair(rng)
    js = qd.qjsd(states.pure_to_density(psi), states.pure_to_density(phi))
    return abs(qd.wootters_distance(psi, phi) - math.sqrt(2.0 * js)) / w ** 2


# ---------------------------------------------------------------------------
# holevo
# ---------------------------------------------------------------------------

def _h_bound(rng):
    d, k = _dim(rng, 2, 5), _dim(rng, 2, 4)
    ens = states.random_ensemble(d, k, rng)
    povm = states.random_povm(d, int(rng.integers(1, 7)), rng)
    return qd.mutual_information(ens, povm) - qd.generalized_qjsd(ens)


def _h_chi_bound(rng):
    d, k = _dim(rng, 2, 5), _dim(rng, 2, 4)
    ens = states.random_ensemble(d, k, rng)
    chi = qd.generalized_qjsd(ens)
    return max(-chi, chi - shannon_entropy(ens.probabilities))


def _h_two_state(rng):
    rho, sigma = _pair(rng)
    ens = states.make_ensemble([rho, sigma], [0.5, 0.5])
    return abs(qd.generalized_qjsd(ens) - qd.qjsd(rho, sigma))


def _h_orthogonal(rng):
    d = _dim(rng)
    u = states.random_unitary(d, rng)
    ens = states.make_ensemble([u[:, 0], u[:, 1]], [0.5, 0.5])
    rest = u[:, 2:]
    elems = [np.outer(u[:, 0], u[:, 0].conj()), np.outer(u[:, 1], u[:, 1].conj()) + rest @ rest.conj().T]
    povm = states.make_povm(elems)
    return max(abs(qd.mutual_information(ens, povm) - 1.0), abs(qd.generalized_qjsd(ens) - 1.0))


# ---------------------------------------------------------------------------
# entanglement
# ---------------------------------------------------------------------------

OPT = OptimizerConfig()


def _e(rho, seed=0):
    return estimate_e_js(rho, 2, 2, replace(OPT, seed=seed)).value


def _random_local_unitary(rng):
    return np.kron(states.random_unitary(2, rng), states.random_unitary(2, rng))


def _ent_ppt_assembled(rng):
    an = SeparableAnsatz.random(int(rng.integers(1, 17)), 2, 2, rng)
    return -ppt_min_eigenvalue(assemble(an), 2, 2)


def _ent_separable(rng):
    return _e(assemble(SeparableAnsatz.random(16, 2, 2, rng)))


def _ent_upper(rng):
    rho = states.random_density(4, rng)
    return _e(rho) - qd.qjsd(rho, states.maximally_mixed(4))


def _ent_local_unitary(rng):
    rho = states.random_density(4, rng)
    rotated = states.conjugate(rho, _random_local_unitary(rng))
    return abs(_e(rho) - _e(rotated))


def _ent_convexity(rng):
    r1, r2 = states.random_density(4, rng), states.random_density(4, rng)
    lam = float(rng.uniform())
    mixed = states.mix([r1, r2], [lam, 1 - lam])
    return _e(mixed) - lam * _e(r1) - (1 - lam) * _e(r2)


WERNER_F = (0.6, 0.75, 0.9, 1.0)


def _ent_werner_monotone(rng):
    vals = [_e(states.werner_state(f)) for f in WERNER_F]
    return max(a - b for a, b in zip(vals[:-1], vals[1:]))


def _ent_werner_entangled(rng):
    return _e(states.werner_state(0.9))


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

def _p(name, suite, check, tol, mode="le", **kw):
    return Property(name, suite, check, tol, mode, description=(check.__doc__ or "").strip(), **kw)


PROPERTIES: List[Property] = [
    _p("classical.sqrt-triangle", "classical", _c_triangle, 1e-12),
    _p("classical.bounds", "classical", _c_bounds, 0.0),
    _p("classical.symmetry", "classical", _c_symmetry, 1e-15),
    _p("classical.kl-bound", "classical", _c_kl_bound, 1e-12),
    _p("classical.generalized-two", "classical", _c_generalized_two, 1e-12),
    _p("classical.generalized-bound", "classical", _c_generalized_bound, 1e-12),

    _p("relent.nonnegative", "relative-entropy", _re_nonneg, 1e-12),
    _p("relent.unitary-invariance", "relative-entropy", _re_unitary, 1e-9),
    _p("relent.cp-monotonicity", "relative-entropy", _re_cp, 1e-9),
    _p("relent.projective-monotonicity", "relative-entropy", _re_projective, 1e-9),
    _p("relent.joint-convexity", "relative-entropy", _re_joint_convexity, 1e-9),
    _p("relent.donald-identity", "relative-entropy", _re_donald, 1e-9),
    _p("relent.commuting-kl", "relative-entropy", _re_commuting, 1e-10),
    _p("relent.pure-reference-infinite", "relative-entropy", _re_support, 0.0),

    _p("qjsd.bounds", "qjsd", _q_bounds, 0.0),
    _p("qjsd.symmetry", "qjsd", _q_symmetry, 1e-12),
    _p("qjsd.spectral-oracle", "qjsd", _q_spectral, 1e-9),
    _p("qjsd.commuting-reduction", "qjsd", _q_commuting, 1e-10),
    _p("qjsd.unitary-invariance", "qjsd", _q_unitary, 1e-9),
    _p("qjsd.orthogonal-pure", "qjsd", _q_orthogonal, 1e-12),
    _p("qjsd.mixing-inequality", "qjsd", _q_mixing, 1e-9),
    _p("qjsd.mixing-orthogonal-equality", "qjsd", _q_mixing_orthogonal, 1e-9),
    _p("qjsd.reference-representation", "qjsd", _q_reference, 1e-9),
    _p("qjsd.joint-convexity", "qjsd", _q_joint_convexity, 1e-9),
    _p("fidelity.pure-amplitude", "qjsd", _q_pure_fidelity, 1e-9),
    _p("fidelity.symmetry", "qjsd", _q_fidelity_symmetry, 1e-9),
    _p("qjsd.sqrt-triangle", "qjsd", _q_triangle, 1e-12, "record"),

    _p("qjsd.cp-monotonicity", "channels", _ch_qjsd_cp, 1e-9),
    _p("qjsd.projective-monotonicity", "channels", _ch_qjsd_projective, 1e-9),
    _p("qjsd.povm-bound", "channels", _ch_povm, 1e-9),
    _p("channel.trace-positivity", "channels", _ch_trace, 1e-10),

    _p("relent.partial-trace", "bipartite", _bip_partial(qd.relative_entropy), 1e-9),
    _p("qjsd.partial-trace", "bipartite", _bip_partial(qd.qjsd), 1e-9),
    _p("relent.additivity", "bipartite", _bip_re_additivity, 1e-9),
    _p("qjsd.restricted-additivity", "bipartite", _bip_restricted, 1e-9),
    _p("qjsd.additivity-counterexample", "bipartite", _bip_additivity_gap, 1e-3, "exists"),

    _p("neighborhood.kubo-mori-limit", "neighborhood", _nb_limit, 0.05),
    _p("neighborhood.convergence", "neighborhood", _nb_convergence, 0.0),
    _p("neighborhood.pure-closed-form", "neighborhood", _nb_pure_exact, 1e-9),
    _p("neighborhood.unit-ratio", "neighborhood", _nb_ratio_one, 0.05, "record"),
    _p("neighborhood.wootters-sqrt2js", "neighborhood", _nb_wootters, 0.01, "record"),

    _p("holevo.bound", "holevo", _h_bound, 1e-9),
    _p("holevo.chi-range", "holevo", _h_chi_bound, 1e-9),
    _p("holevo.two-state-reduction", "holevo", _h_two_state, 1e-12),
    _p("holevo.orthogonal-saturation", "holevo", _h_orthogonal, 1e-10),

    _p("entangle.assembled-ppt", "entanglement", _ent_ppt_assembled, 1e-9),
    _p("entangle.separable-zero", "entanglement", _ent_separable, 1e-3, trial_scale=ENT_SCALE),
    _p("entangle.upper-bound", "entanglement", _ent_upper, 1e-9, trial_scale=ENT_SCALE),
    _p("entangle.local-unitary", "entanglement", _ent_local_unitary, 5e-3, trial_scale=ENT_SCALE),
    _p("entangle.convexity", "entanglement", _ent_convexity, 1e-2, trial_scale=ENT_SCALE),
    _p("entangle.werner-monotone", "entanglement", _ent_werner_monotone, 5e-3, max_trials=1),
    _p("entangle.werner-entangled", "entanglement", lambda rng: 1e-2 - _ent_werner_entangled(rng), 0.0,
       max_trials=1),
]

BY_NAME: Dict[str, Property] = {p.name: p for p in PROPERTIES}


def select(suite: str) -> List[Property]:
    if suite == "all":
        return list(PROPERTIES)
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES + ('all',))}")
    return [p for p in PROPERTIES if p.suite == suite]


@dataclass
class SuiteReport:
    seed: int
    trials: int
    results: List[PropertyResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results if r.prop.asserted)

    def failures(self) -> List[PropertyResult]:
        return [r for r in self.results if r.prop.asserted and not r.ok]

    HEADER = ("suite", "property", "mode", "trials", "passed", "max_residual", "tolerance", "status",
              "first_failing_seed")

    def rows(self):
        ordered = [r for r in self.results if r.prop.asserted] + [r for r in self.results if not r.prop.asserted]
        for r in ordered:
            yield (r.prop.suite, r.prop.name, r.prop.mode, r.trials, r.passed, r.max_residual, r.prop.tol,
                   r.status, "" if r.first_failure is None else r.first_failure)


def run_suite(suite: str, trials: int, seed: int, tol_overrides: Optional[Dict[str, float]] = None) -> SuiteReport:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    tol_overrides = tol_overrides or {}
    unknown = set(tol_overrides) - set(BY_NAME)
    if unknown:
        raise ValueError(f"unknown property in tolerance override: {', '.join(sorted(unknown))}")
    report = SuiteReport(seed, trials)
    for prop in select(suite):
        if prop.name in tol_overrides:
            prop = replace(prop, tol=tol_overrides[prop.name])
        report.results.append(run_property(prop, trials, seed))
    return report


__all__ = ["PROPERTIES", "SUITES", "Property", "PropertyResult", "SuiteReport", "run_property", "run_suite",
           "select", "trial_rng"]
