"""Hot numeric kernels.

Each kernel exists twice: an explicit-loop version compiled by numba and a
vectorized numpy version. ``backend.USE_NUMBA`` decides which one the public
wrappers at the bottom of this module dispatch to. Both versions run the same
algorithm, so results agree to round-off.
"""
import math
import types

import numpy as np

from . import _backend
from ._backend import njit

# eigenvalues with |lambda| <= ZERO_TOL * max|lambda| count as exact zeros
ZERO_TOL = 1e-12
# off-diagonal Frobenius norm / total Frobenius norm at which Jacobi stops
OFF_TOL = 1e-12
MAX_SWEEPS = 100


# ---------------------------------------------------------------------------
# cyclic complex Jacobi
# ---------------------------------------------------------------------------

@njit
def _rotation(app, aqq, apq):
    """Return (c, s, conj_phase) of the unitary that zeroes ``apq``.

    The rotation is G = [[c, s], [-s * conj_phase, c * conj_phase]] acting
    on (p, q); then G^H A G has a zero in position (p, q).
    """
    r = abs(apq)
    phase = apq / r
    theta = (aqq - app) / (2.0 * r)
    if abs(theta) > 1e150:
        t = 0.5 / theta
    else:
        t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
        if theta < 0.0:
            t = -t
    c = 1.0 / math.sqrt(t * t + 1.0)
    s = t * c
    return c, s, np.conj(phase)


@njit
def jacobi_eigh_loop(a_in, want_vectors, off_tol=OFF_TOL, max_sweeps=MAX_SWEEPS):
    """Cyclic Jacobi on a complex Hermitian matrix.

    Returns ``(w, v, sweeps)`` with ascending eigenvalues ``w`` and
    eigenvectors as the columns of ``v``. ``sweeps`` is -1 when the budget
    ran out before the off-diagonal mass fell below ``off_tol``.
    """
    n = a_in.shape[0]
    a = a_in.astype(np.complex128).copy()
    v = np.eye(n, dtype=np.complex128)
    fro2 = 0.0
    for i in range(n):
        for j in range(n):
            fro2 += a[i, j].real ** 2 + a[i, j].imag ** 2
    limit2 = (off_tol * off_tol) * fro2
    sweeps = -1
    for sweep in range(max_sweeps + 1):
        off2 = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                off2 += 2.0 * (a[i, j].real ** 2 + a[i, j].imag ** 2)
        if off2 <= limit2:
            sweeps = sweep
            break
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq.real == 0.0 and apq.imag == 0.0:
                    continue
                c, s, cph = _rotation(a[p, p].real, a[q, q].real, apq)
                gpp = c + 0j
                gpq = s + 0j
                gqp = -s * cph
                gqq = c * cph
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = akp * gpp + akq * gqp
                    a[k, q] = akp * gpq + akq * gqq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = np.conj(gpp) * apk + np.conj(gqp) * aqk
                    a[q, k] = np.conj(gpq) * apk + np.conj(gqq) * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                if want_vectors:
                    for k in range(n):
                        vkp = v[k, p]
                        vkq = v[k, q]
                        v[k, p] = vkp * gpp + vkq * gqp
                        v[k, q] = vkp * gpq + vkq * gqq
    w = np.empty(n)
    for i in range(n):
        w[i] = a[i, i].real
    order = np.argsort(w)
    return w[order], v[:, order], sweeps


def jacobi_eigh_numpy(a_in, want_vectors, off_tol=OFF_TOL, max_sweeps=MAX_SWEEPS):
    """Same algorithm as :func:`jacobi_eigh_loop`, with vectorized row and
    column updates."""
    a = np.array(a_in, dtype=np.complex128)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    limit2 = off_tol * off_tol * float(np.sum(np.abs(a) ** 2))
    iu = np.triu_indices(n, 1)
    sweeps = -1
    for sweep in range(max_sweeps + 1):
        if 2.0 * float(np.sum(np.abs(a[iu]) ** 2)) <= limit2:
            sweeps = sweep
            break
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0:
                    continue
                r = abs(apq)
                theta = (a[q, q].real - a[p, p].real) / (2.0 * r)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                cph = np.conj(apq / r)
                g = np.array([[c, s], [-s * cph, c * cph]])
                cols = [p, q]
                a[:, cols] = a[:, cols] @ g
                a[cols, :] = g.conj().T @ a[cols, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                if want_vectors:
                    v[:, cols] = v[:, cols] @ g
    w = np.real(np.diag(a)).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order], sweeps


# ---------------------------------------------------------------------------
# entropies
# ---------------------------------------------------------------------------

@njit
def entropy_bits_loop(w):
    """Shannon entropy (bits) of a spectrum under the zero-threshold rule."""
    m = 0.0
    for x in w:
        if abs(x) > m:
            m = abs(x)
    thr = ZERO_TOL * m
    h = 0.0
    for x in w:
        if x > thr:
            h -= x * math.log2(x)
    return h


def entropy_bits_numpy(w):
    w = np.asarray(w, dtype=float)
    if w.size == 0:
        return 0.0
    thr = ZERO_TOL * np.max(np.abs(w))
    x = w[w > thr]
    return float(-np.sum(x * np.log2(x)))


# ---------------------------------------------------------------------------
# separable ansatz
# ---------------------------------------------------------------------------
# Parameter layout: K raw weights, then K blocks of 2(dA-1) values for the A
# factor, then K blocks of 2(dB-1) values for the B factor. Within a block the
# first d-1 entries are polar angles and the last d-1 are phases.

@njit
def _local_state_loop(angles, phases, out):
    d = out.shape[0]
    amp = 1.0
    for j in range(d - 1):
        out[j] = amp * math.cos(angles[j])
        if j > 0:
            out[j] *= complex(math.cos(phases[j - 1]), math.sin(phases[j - 1]))
        amp *= math.sin(angles[j])
    out[d - 1] = amp
    if d > 1:
        out[d - 1] *= complex(math.cos(phases[d - 2]), math.sin(phases[d - 2]))


@njit
def ansatz_sigma_loop(params, n_terms, dim_a, dim_b):
    d = dim_a * dim_b
    na = 2 * (dim_a - 1)
    nb = 2 * (dim_b - 1)
    off_a = n_terms
    off_b = n_terms + n_terms * na
    total = 0.0
    for k in range(n_terms):
        total += params[k] * params[k]
    sigma = np.zeros((d, d), dtype=np.complex128)
    a = np.empty(dim_a, dtype=np.complex128)
    b = np.empty(dim_b, dtype=np.complex128)
    vec = np.empty(d, dtype=np.complex128)
    for k in range(n_terms):
        if total > 0.0:
            wk = params[k] * params[k] / total
        else:
            wk = 1.0 / n_terms
        if wk == 0.0:
            continue
        pa = params[off_a + k * na: off_a + (k + 1) * na]
        pb = params[off_b + k * nb: off_b + (k + 1) * nb]
        _local_state_loop(pa[: dim_a - 1], pa[dim_a - 1:], a)
        _local_state_loop(pb[: dim_b - 1], pb[dim_b - 1:], b)
        for i in range(dim_a):
            for j in range(dim_b):
                vec[i * dim_b + j] = a[i] * b[j]
        for i in range(d):
            for j in range(d):
                sigma[i, j] += wk * vec[i] * np.conj(vec[j])
    return sigma


def _local_states_numpy(angles, phases):
    """Vectorized local pure states; ``angles``/``phases`` have shape (K, d-1)."""
    n_terms, dm1 = angles.shape
    d = dm1 + 1
    sines = np.concatenate([np.ones((n_terms, 1)), np.cumprod(np.sin(angles), axis=1)], axis=1)
    cosines = np.concatenate([np.cos(angles), np.ones((n_terms, 1))], axis=1)
    amps = (sines * cosines).astype(np.complex128)
    if d > 1:
        amps[:, 1:] *= np.exp(1j * phases)
    return amps


def ansatz_sigma_numpy(params, n_terms, dim_a, dim_b):
    params = np.asarray(params, dtype=float)
    na = 2 * (dim_a - 1)
    nb = 2 * (dim_b - 1)
    raw = params[:n_terms] ** 2
    total = raw.sum()
    w = raw / total if total > 0 else np.full(n_terms, 1.0 / n_terms)
    pa = params[n_terms: n_terms + n_terms * na].reshape(n_terms, na)
    pb = params[n_terms + n_terms * na: n_terms + n_terms * (na + nb)].reshape(n_terms, nb)
    a = _local_states_numpy(pa[:, : dim_a - 1], pa[:, dim_a - 1:])
    b = _local_states_numpy(pb[:, : dim_b - 1], pb[:, dim_b - 1:])
    vecs = (a[:, :, None] * b[:, None, :]).reshape(n_terms, dim_a * dim_b)
    return np.einsum("k,ki,kj->ij", w, vecs, vecs.conj())


@njit
def ansatz_objective_loop(params, rho, n_terms, dim_a, dim_b, h_rho):
    sigma = ansatz_sigma_loop(params, n_terms, dim_a, dim_b)
    w_s, _, _ = jacobi_eigh_loop(sigma, False)
    w_m, _, _ = jacobi_eigh_loop(0.5 * (rho + sigma), False)
    return entropy_bits_loop(w_m) - 0.5 * h_rho - 0.5 * entropy_bits_loop(w_s)


def ansatz_objective_numpy(params, rho, n_terms, dim_a, dim_b, h_rho):
    sigma = ansatz_sigma_numpy(params, n_terms, dim_a, dim_b)
    w_s, _, _ = jacobi_eigh_numpy(sigma, False)
    w_m, _, _ = jacobi_eigh_numpy(0.5 * (rho + sigma), False)
    return entropy_bits_numpy(w_m) - 0.5 * h_rho - 0.5 * entropy_bits_numpy(w_s)


# ---------------------------------------------------------------------------
# Nelder-Mead
# ---------------------------------------------------------------------------

_objective = ansatz_objective_loop


@njit
def nelder_mead_loop(x0, step, rho, n_terms, dim_a, dim_b, h_rho,
                     max_iter, tol, rebuild_every, lower_bound):
    """Simplex descent on the ansatz objective starting from ``x0``.

    Uses the dimension-adaptive coefficients (reflection 1, expansion
    1 + 2/n, contraction 0.75 - 1/(2n), shrink 1 - 1/n). Every
    ``rebuild_every`` iterations the simplex is rebuilt around its best
    vertex with per-coordinate steps equal to its current extent, which
    keeps it from collapsing onto a subspace in high dimension. Stops when
    the spread of objective values is at most ``tol``, when the best value is within ``tol`` of
    ``lower_bound``, or after ``max_iter`` iterations.

    Returns ``(x_best, f_best, iterations, converged, trace, n_eval)``;
    ``trace[i]`` is the best value at the start of iteration i and is
    non-increasing.
    """
    n = x0.shape[0]
    alpha = 1.0
    beta = 1.0 + 2.0 / n
    gamma = 0.75 - 0.5 / n
    delta = 1.0 - 1.0 / n
    simplex = np.empty((n + 1, n))
    fvals = np.empty(n + 1)
    cur = np.empty(n)
    for i in range(n + 1):
        simplex[i] = x0
        if i > 0:
            simplex[i, i - 1] += step[i - 1]
        fvals[i] = _objective(simplex[i], rho, n_terms, dim_a, dim_b, h_rho)
    n_eval = n + 1
    total = simplex.sum(axis=0)
    trace = np.empty(max_iter + 1)
    converged = False
    it = 0
    while True:
        best = 0
        worst = 0
        for i in range(1, n + 1):
            if fvals[i] < fvals[best]:
                best = i
            if fvals[i] > fvals[worst]:
                worst = i
        second = best
        for i in range(n + 1):
            if i != worst and fvals[i] > fvals[second]:
                second = i
        trace[it] = fvals[best]
        if fvals[worst] - fvals[best] <= tol or fvals[best] - lower_bound <= tol:
            converged = True
            break
        if it >= max_iter:
            break
        it += 1
        if rebuild_every > 0 and it % rebuild_every == 0:
            xb = simplex[best].copy()
            fb = fvals[best]
            for j in range(n):
                lo = simplex[0, j]
                hi = simplex[0, j]
                for i in range(1, n + 1):
                    lo = min(lo, simplex[i, j])
                    hi = max(hi, simplex[i, j])
                cur[j] = max(hi - lo, 1e-3 * step[j])
            simplex[0] = xb
            fvals[0] = fb
            for i in range(1, n + 1):
                simplex[i] = xb
                simplex[i, i - 1] += cur[i - 1]
                fvals[i] = _objective(simplex[i], rho, n_terms, dim_a, dim_b, h_rho)
            n_eval += n
            total = simplex.sum(axis=0)
            continue
        xw = simplex[worst].copy()
        centroid = (total - xw) / n
        xr = centroid + alpha * (centroid - xw)
        fr = _objective(xr, rho, n_terms, dim_a, dim_b, h_rho)
        n_eval += 1
        accept = True
        if fr < fvals[best]:
            xe = centroid + beta * (xr - centroid)
            fe = _objective(xe, rho, n_terms, dim_a, dim_b, h_rho)
            n_eval += 1
            if fe < fr:
                xnew, fnew = xe, fe
            else:
                xnew, fnew = xr, fr
        elif fr < fvals[second]:
            xnew, fnew = xr, fr
        else:
            if fr < fvals[worst]:
                xc = centroid + gamma * (xr - centroid)
                fc = _objective(xc, rho, n_terms, dim_a, dim_b, h_rho)
                n_eval += 1
                accept = fc <= fr
            else:
                xc = centroid + gamma * (xw - centroid)
                fc = _objective(xc, rho, n_terms, dim_a, dim_b, h_rho)
                n_eval += 1
                accept = fc < fvals[worst]
            xnew, fnew = xc, fc
        if accept:
            simplex[worst] = xnew
            fvals[worst] = fnew
            total += xnew - xw
            if it % 64 == 0:
                total = simplex.sum(axis=0)
        else:
            xb = simplex[best].copy()
            for i in range(n + 1):
                if i != best:
                    simplex[i] = xb + delta * (simplex[i] - xb)
                    fvals[i] = _objective(simplex[i], rho, n_terms, dim_a, dim_b, h_rho)
            n_eval += n
            total = simplex.sum(axis=0)
    best = 0
    for i in range(1, n + 1):
        if fvals[i] < fvals[best]:
            best = i
    return simplex[best].copy(), fvals[best], it, converged, trace[: it + 1].copy(), n_eval


# Same code object, with the objective global bound to the numpy version.
_nelder_mead_py = types.FunctionType(
    getattr(nelder_mead_loop, "py_func", nelder_mead_loop).__code__,
    {**globals(), "_objective": ansatz_objective_numpy},
    "nelder_mead_numpy",
)


def nelder_mead_numpy(x0, step, rho, n_terms, dim_a, dim_b, h_rho, max_iter, tol, rebuild_every, lower_bound):
    """Uncompiled run of :func:`nelder_mead_loop` on the numpy kernels."""
    return _nelder_mead_py(x0, step, rho, n_terms, dim_a, dim_b, h_rho, max_iter, tol, rebuild_every, lower_bound)


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def jacobi_eigh(a, want_vectors=True):
    a = np.ascontiguousarray(a, dtype=np.complex128)
    if _backend.USE_NUMBA:
        return jacobi_eigh_loop(a, want_vectors)
    return jacobi_eigh_numpy(a, want_vectors)


def entropy_bits(w):
    if _backend.USE_NUMBA:
        return float(entropy_bits_loop(np.ascontiguousarray(w, dtype=float)))
    return entropy_bits_numpy(w)


def ansatz_sigma(params, n_terms, dim_a, dim_b):
    params = np.ascontiguousarray(params, dtype=float)
    if _backend.USE_NUMBA:
        return ansatz_sigma_loop(params, n_terms, dim_a, dim_b)
    return ansatz_sigma_numpy(params, n_terms, dim_a, dim_b)


def nelder_mead(x0, step, rho, n_terms, dim_a, dim_b, h_rho, max_iter, tol,
                rebuild_every=500, lower_bound=0.0):
    """Minimize the separable-ansatz JS objective for target ``rho``."""
    args = (
        np.ascontiguousarray(x0, dtype=float),
        np.ascontiguousarray(step, dtype=float),
        np.ascontiguousarray(rho, dtype=np.complex128),
        int(n_terms), int(dim_a), int(dim_b), float(h_rho),
        int(max_iter), float(tol), int(rebuild_every), float(lower_bound),
    )
    if _backend.USE_NUMBA:
        return nelder_mead_loop(*args)
    return nelder_mead_numpy(*args)
