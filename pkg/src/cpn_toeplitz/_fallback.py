"""Pure numpy versions of the compiled kernels in ``_kernels.pyx``.

Both modules expose the same two functions with the same semantics; the
backend is picked in ``_backend``.
"""
import math

import numpy as np


def monomials(z, exps):
    """z^p for every row p of ``exps``; shape ``(len(z), len(exps))``."""
    z = np.asarray(z, dtype=complex)
    exps = np.asarray(exps, dtype=np.intc)
    npts, n = z.shape
    maxdeg = int(exps.max()) if exps.size else 0
    powers = np.ones((n, maxdeg + 1, npts), dtype=complex)
    for d in range(1, maxdeg + 1):
        powers[:, d] = powers[:, d - 1] * z.T
    out = np.ones((npts, len(exps)), dtype=complex)
    for j in range(n):
        out *= powers[j, exps[:, j]].T
    return out


def accumulate_moments(z, wa, exps, out):
    """out[p, q] += sum_g wa[g] * conj(z_g^p) * z_g^q, in place."""
    basis = monomials(z, exps)
    out += (basis.conj() * np.asarray(wa)[:, None]).T @ basis


def jacobi_hermitian(a, tol, max_sweeps):
    """Cyclic Jacobi on a Hermitian matrix.

    Returns ``(diagonal, V, sweeps)`` with ``a = V diag V^H``; ``sweeps`` is -1
    when the off-diagonal part did not fall below ``tol * ||a||_F``.
    """
    a = np.array(a, dtype=complex)
    size = a.shape[0]
    v = np.eye(size, dtype=complex)
    scale = math.sqrt(float(np.sum(a.real**2 + a.imag**2)))
    if scale == 0.0:
        return np.zeros(size), v, 0
    threshold = tol * scale
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(size - 1):
            for q in range(p + 1, size):
                off = max(off, abs(a[p, q]))
        if off <= threshold:
            return a.diagonal().real.copy(), v, sweep
        if sweep == max_sweeps:
            break
        for p in range(size - 1):
            for q in range(p + 1, size):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                e = apq / mag
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ec = e.conjugate()
                col_p = a[:, p].copy()
                col_q = a[:, q]
                a[:, p] = c * col_p - s * ec * col_q
                a[:, q] = s * col_p + c * ec * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :]
                a[p, :] = c * row_p - s * e * row_q
                a[q, :] = s * row_p + c * e * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = app - t * mag
                a[q, q] = aqq + t * mag
                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - s * ec * vq
                v[:, q] = s * vp + c * ec * vq
    return a.diagonal().real.copy(), v, -1
