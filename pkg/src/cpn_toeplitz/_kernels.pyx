# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: moment accumulation over quadrature grids and cyclic
Jacobi sweeps for Hermitian matrices. Semantics match ``_fallback``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs, hypot

cnp.import_array()


cdef inline double cabs2(double complex x) nogil:
    return hypot(x.real, x.imag)


def accumulate_moments(double complex[:, ::1] z, double complex[::1] wa,
                       int[:, ::1] exps, double complex[:, ::1] out):
    """out[p, q] += sum_g wa[g] * conj(z_g^p) * z_g^q, in place, point by point.

    The weight is split into real and imaginary parts; each part contributes
    a Hermitian matrix, so only the upper triangles are accumulated.
    """
    cdef Py_ssize_t npts = z.shape[0], n = z.shape[1], size = exps.shape[0]
    cdef Py_ssize_t g, j, d, p, q, idx
    cdef int maxdeg = 0
    cdef bint has_imag = False
    for p in range(size):
        for j in range(n):
            if exps[p, j] > maxdeg:
                maxdeg = exps[p, j]
    for g in range(npts):
        if wa[g].imag != 0.0:
            has_imag = True
            break
    cdef double[:, ::1] pre = np.ones((n, maxdeg + 1))
    cdef double[:, ::1] pim = np.zeros((n, maxdeg + 1))
    cdef double[::1] mr = np.empty(size)
    cdef double[::1] mi = np.empty(size)
    # accumulators: rows [0, 1] real-weight part (re, im), rows [2, 3] imaginary-weight part
    # two-level summation: ``blk`` collects BLOCK points and is then flushed
    # into ``acc``, which keeps rounding growth near sqrt(npts) instead of npts
    cdef double[:, :, ::1] acc = np.zeros((4, size, size))
    cdef double[:, :, ::1] blk = np.zeros((4, size, size))
    cdef Py_ssize_t BLOCK = 256, h
    cdef double zr, zi, tr, ti, ar, ai, wr, wi, cr, ci, mrp, mip
    with nogil:
        for g in range(npts):
            for j in range(n):
                zr = z[g, j].real
                zi = z[g, j].imag
                for d in range(1, maxdeg + 1):
                    tr = pre[j, d - 1]
                    ti = pim[j, d - 1]
                    pre[j, d] = tr * zr - ti * zi
                    pim[j, d] = tr * zi + ti * zr
            for p in range(size):
                ar = 1.0
                ai = 0.0
                for j in range(n):
                    idx = exps[p, j]
                    tr = pre[j, idx]
                    ti = pim[j, idx]
                    cr = ar * tr - ai * ti
                    ai = ar * ti + ai * tr
                    ar = cr
                mr[p] = ar
                mi[p] = ai
            wr = wa[g].real
            wi = wa[g].imag
            for p in range(size):
                mrp = mr[p]
                mip = mi[p]
                for q in range(p, size):
                    cr = mrp * mr[q] + mip * mi[q]
                    ci = mrp * mi[q] - mip * mr[q]
                    blk[0, p, q] += wr * cr
                    blk[1, p, q] += wr * ci
                    if has_imag:
                        blk[2, p, q] += wi * cr
                        blk[3, p, q] += wi * ci
            if (g + 1) % BLOCK == 0 or g == npts - 1:
                for h in range(4):
                    for p in range(size):
                        for q in range(p, size):
                            acc[h, p, q] += blk[h, p, q]
                            blk[h, p, q] = 0.0
        for p in range(size):
            for q in range(size):
                if q >= p:
                    out[p, q] = out[p, q] + (acc[0, p, q] - acc[3, p, q]) + 1j * (acc[1, p, q] + acc[2, p, q])
                else:
                    out[p, q] = out[p, q] + (acc[0, q, p] + acc[3, q, p]) + 1j * (acc[2, q, p] - acc[1, q, p])


def jacobi_hermitian(a_in, double tol, int max_sweeps):
    """Cyclic Jacobi on a Hermitian matrix; see ``_fallback.jacobi_hermitian``."""
    cdef double complex[:, ::1] a = np.array(a_in, dtype=complex, order="C")
    cdef Py_ssize_t size = a.shape[0]
    v_arr = np.eye(size, dtype=complex)
    cdef double complex[:, ::1] v = v_arr
    cdef Py_ssize_t p, q, k
    cdef int sweep
    cdef double scale = 0.0, threshold, off, mag, app, aqq, theta, t, c, s
    cdef double complex apq, e, ec, xp, xq
    for p in range(size):
        for q in range(size):
            scale += a[p, q].real * a[p, q].real + a[p, q].imag * a[p, q].imag
    scale = sqrt(scale)
    if scale == 0.0:
        return np.zeros(size), v_arr, 0
    threshold = tol * scale
    with nogil:
        for sweep in range(max_sweeps + 1):
            off = 0.0
            for p in range(size - 1):
                for q in range(p + 1, size):
                    mag = cabs2(a[p, q])
                    if mag > off:
                        off = mag
            if off <= threshold:
                break
            if sweep == max_sweeps:
                sweep = -1
                break
            for p in range(size - 1):
                for q in range(p + 1, size):
                    apq = a[p, q]
                    mag = cabs2(apq)
                    if mag == 0.0:
                        continue
                    e = apq / mag
                    ec = e.conjugate()
                    app = a[p, p].real
                    aqq = a[q, q].real
                    theta = (aqq - app) / (2.0 * mag)
                    t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                    c = 1.0 / sqrt(t * t + 1.0)
                    s = t * c
                    for k in range(size):
                        xp = a[k, p]
                        xq = a[k, q]
                        a[k, p] = c * xp - s * ec * xq
                        a[k, q] = s * xp + c * ec * xq
                    for k in range(size):
                        xp = a[p, k]
                        xq = a[q, k]
                        a[p, k] = c * xp - s * e * xq
                        a[q, k] = s * xp + c * e * xq
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    a[p, p] = app - t * mag
                    a[q, q] = aqq + t * mag
                    for k in range(size):
                        xp = v[k, p]
                        xq = v[k, q]
                        v[k, p] = c * xp - s * ec * xq
                        v[k, q] = s * xp + c * ec * xq
    diag = np.array([a[k, k].real for k in range(size)])
    return diag, v_arr, sweep
