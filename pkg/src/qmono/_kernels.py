"""Hot numeric kernels, each in a numba-compiled loop form and a numpy form.

The module-level names without a suffix (``jacobi_hermitian``,
``conditional_entropy_grid``) are bound to whichever backend
``qmono._backend`` selected at import time. Both variants stay importable
so they can be compared directly.
"""
import numpy as np

from ._backend import USE_NUMBA, njit

LN2 = np.log(2.0)


# --- cyclic Jacobi for complex Hermitian matrices --------------------------

def _jacobi_loops(a, tol, max_sweeps):
    n = a.shape[0]
    a = a.copy()
    v = np.eye(n, dtype=np.complex128)
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i, j].real ** 2 + a[i, j].imag ** 2
        if np.sqrt(off) < tol:
            w = np.empty(n)
            for i in range(n):
                w[i] = a[i, i].real
            return w, v, sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                g = abs(apq)
                if g == 0.0:
                    continue
                ph = np.conj(apq / g)
                zeta = (a[q, q].real - a[p, p].real) / (2.0 * g)
                if zeta >= 0.0:
                    t = 1.0 / (zeta + np.sqrt(1.0 + zeta * zeta))
                else:
                    t = -1.0 / (-zeta + np.sqrt(1.0 + zeta * zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # U = diag(1, e^{-i arg a_pq}) @ [[c, s], [-s, c]]
                u00 = c + 0j
                u01 = s + 0j
                u10 = -s * ph
                u11 = c * ph
                for k in range(n):
                    x = a[k, p]
                    y = a[k, q]
                    a[k, p] = x * u00 + y * u10
                    a[k, q] = x * u01 + y * u11
                for k in range(n):
                    x = a[p, k]
                    y = a[q, k]
                    a[p, k] = np.conj(u00) * x + np.conj(u10) * y
                    a[q, k] = np.conj(u01) * x + np.conj(u11) * y
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                for k in range(n):
                    x = v[k, p]
                    y = v[k, q]
                    v[k, p] = x * u00 + y * u10
                    v[k, q] = x * u01 + y * u11
    w = np.empty(n)
    for i in range(n):
        w[i] = a[i, i].real
    return w, v, -1


def jacobi_hermitian_numpy(a, tol, max_sweeps):
    """Vectorized-update variant of the same cyclic Jacobi sweep.

    Returns ``(eigenvalues, eigenvectors, sweeps)`` unsorted; ``sweeps`` is
    -1 when the off-diagonal norm never dropped below ``tol``.
    """
    n = a.shape[0]
    a = np.array(a, dtype=np.complex128)
    v = np.eye(n, dtype=np.complex128)
    for sweep in range(max_sweeps + 1):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off < tol:
            return np.diag(a).real.copy(), v, sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                g = abs(apq)
                if g == 0.0:
                    continue
                ph = np.conj(apq / g)
                zeta = (a[q, q].real - a[p, p].real) / (2.0 * g)
                t = np.copysign(1.0, zeta) / (abs(zeta) + np.sqrt(1.0 + zeta * zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                u = np.array([[c, s], [-s * ph, c * ph]])
                cols = a[:, [p, q]] @ u
                a[:, p] = cols[:, 0]
                a[:, q] = cols[:, 1]
                rows = u.conj().T @ a[[p, q], :]
                a[p, :] = rows[0]
                a[q, :] = rows[1]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                vc = v[:, [p, q]] @ u
                v[:, p] = vc[:, 0]
                v[:, q] = vc[:, 1]
    return np.diag(a).real.copy(), v, -1


jacobi_hermitian_numba = njit(_jacobi_loops)


# --- measured conditional entropy over a (theta, phi) grid ------------------

def _h2_py(lam):
    # entropy (bits) of a qubit state with eigenvalues lam, 1 - lam
    if lam <= 0.0 or lam >= 1.0:
        return 0.0
    return -(lam * np.log(lam) + (1.0 - lam) * np.log(1.0 - lam)) / LN2


_h2 = njit(_h2_py)


def _cond_entropy_loops(rho, thetas, phis, pmin):
    out = np.zeros((thetas.shape[0], phis.shape[0]))
    b = np.empty((2, 2), dtype=np.complex128)
    for it in range(thetas.shape[0]):
        ct = np.cos(0.5 * thetas[it])
        st = np.sin(0.5 * thetas[it])
        for ip in range(phis.shape[0]):
            e = np.cos(phis[ip]) + 1j * np.sin(phis[ip])
            b[0, 0] = ct
            b[0, 1] = e * st
            b[1, 0] = -np.conj(e) * st
            b[1, 1] = ct
            total = 0.0
            for j in range(2):
                # sigma[x, y] = sum_kl conj(b_k) rho[2x+k, 2y+l] b_l
                s00 = 0j
                s01 = 0j
                s11 = 0j
                for k in range(2):
                    bk = np.conj(b[j, k])
                    for l in range(2):
                        bl = b[j, l]
                        s00 += bk * rho[k, l] * bl
                        s01 += bk * rho[k, 2 + l] * bl
                        s11 += bk * rho[2 + k, 2 + l] * bl
                pj = s00.real + s11.real
                if pj < pmin:
                    continue
                d = (s00.real - s11.real) / pj
                od = abs(s01) / pj
                r = np.sqrt(d * d + 4.0 * od * od)
                if r > 1.0:
                    r = 1.0
                total += pj * _h2(0.5 * (1.0 + r))
            out[it, ip] = total
    return out


def conditional_entropy_grid_numpy(rho, thetas, phis, pmin):
    """Measured conditional entropy S(A|{E_j^B}) on the outer grid of angles.

    ``rho`` is a 4x4 two-qubit density matrix with the measured qubit second.
    Outcomes with probability below ``pmin`` contribute nothing.
    """
    th, ph = np.meshgrid(np.asarray(thetas, float), np.asarray(phis, float), indexing="ij")
    ct, st = np.cos(0.5 * th), np.sin(0.5 * th)
    e = np.exp(1j * ph)
    basis = np.stack(
        [np.stack([ct + 0j, e * st], -1), np.stack([-np.conj(e) * st, ct + 0j], -1)],
        axis=-2,
    )  # (..., outcome, component)
    r = np.asarray(rho).reshape(2, 2, 2, 2)
    sigma = np.einsum("...jk,xkyl,...jl->...jxy", basis.conj(), r, basis)
    pj = sigma[..., 0, 0].real + sigma[..., 1, 1].real
    safe = np.where(pj < pmin, 1.0, pj)
    d = (sigma[..., 0, 0].real - sigma[..., 1, 1].real) / safe
    od = np.abs(sigma[..., 0, 1]) / safe
    lam = 0.5 * (1.0 + np.minimum(np.sqrt(d * d + 4.0 * od * od), 1.0))
    with np.errstate(divide="ignore", invalid="ignore"):
        h = -(lam * np.log2(lam) + (1.0 - lam) * np.log2(1.0 - lam))
    h = np.where((lam <= 0.0) | (lam >= 1.0), 0.0, h)
    return np.sum(np.where(pj < pmin, 0.0, pj * h), axis=-1)


conditional_entropy_grid_numba = njit(_cond_entropy_loops)


if USE_NUMBA:
    jacobi_hermitian = jacobi_hermitian_numba
    conditional_entropy_grid = conditional_entropy_grid_numba
else:
    jacobi_hermitian = jacobi_hermitian_numpy
    conditional_entropy_grid = conditional_entropy_grid_numpy
