"""Hot-loop kernels: GF(2^t) Gaussian elimination and the cyclic Jacobi
eigensolver.

Both have a pure-numpy fallback so the library works without a JIT, but
the numba versions are what make the experiment harness usable at the
intended scales (hundreds of pivots per decode, n=512 eigenproblems).
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except Exception:  # pragma: no cover - exercised only without numba
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f

        if args and callable(args[0]):
            return args[0]
        return wrap


# ---------------------------------------------------------------------------
# GF(2^t) elimination.  Elements are uint16 (t <= 16); logt has logt[0]
# undefined and expt is doubled so sums of two logs never need a modulo.
# ---------------------------------------------------------------------------


@njit(cache=True)
def _gf_kernel_vector_jit(A, logt, expt, qm1):  # pragma: no cover - jitted
    rows, cols = A.shape
    piv_row_of_col = np.full(cols, -1, np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pr = -1
        for i in range(r, rows):
            if A[i, c] != 0:
                pr = i
                break
        if pr == -1:
            continue
        if pr != r:
            for j in range(c, cols):
                tmp = A[r, j]
                A[r, j] = A[pr, j]
                A[pr, j] = tmp
        lf = qm1 - logt[A[r, c]]
        if lf != qm1:
            for j in range(c, cols):
                v = A[r, j]
                if v:
                    A[r, j] = expt[lf + logt[v]]
        for i in range(r + 1, rows):
            f = A[i, c]
            if f:
                lg = logt[f]
                A[i, c] = 0
                for j in range(c + 1, cols):
                    v = A[r, j]
                    if v:
                        A[i, j] ^= expt[lg + logt[v]]
        piv_row_of_col[c] = r
        r += 1
    fc = -1
    for c in range(cols):
        if piv_row_of_col[c] == -1:
            fc = c
            break
    x = np.zeros(cols, np.uint16)
    if fc == -1:
        return x  # no kernel: caller treats all-zero as failure
    x[fc] = 1
    for c in range(fc - 1, -1, -1):
        pr = piv_row_of_col[c]
        if pr == -1:
            continue
        s = 0
        for j in range(c + 1, cols):
            v = A[pr, j]
            xv = x[j]
            if v and xv:
                s ^= expt[logt[v] + logt[xv]]
        x[c] = s
    return x


def _gf_kernel_vector_numpy(A, logt, expt, qm1):
    rows, cols = A.shape
    piv_row_of_col = np.full(cols, -1, np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            A[[r, pr], c:] = A[[pr, r], c:]
        lf = qm1 - int(logt[A[r, c]])
        if lf != qm1:
            row = A[r, c:]
            mask = row != 0
            row[mask] = expt[lf + logt[row[mask]]]
        below = A[r + 1:, c]
        hit = np.nonzero(below)[0]
        if hit.size:
            lg = logt[below[hit]]
            seg = A[r + 1 + hit, c:]
            prow = A[r, c:]
            pm = prow != 0
            upd = np.zeros_like(seg)
            upd[:, pm] = expt[lg[:, None] + logt[prow[pm]][None, :]]
            A[r + 1 + hit, c:] = seg ^ upd
        piv_row_of_col[c] = r
        r += 1
    free = np.nonzero(piv_row_of_col == -1)[0]
    x = np.zeros(cols, np.uint16)
    if free.size == 0:
        return x
    fc = int(free[0])
    x[fc] = 1
    for c in range(fc - 1, -1, -1):
        pr = piv_row_of_col[c]
        if pr == -1:
            continue
        row = A[pr, c + 1:]
        xs = x[c + 1:]
        m = (row != 0) & (xs != 0)
        if m.any():
            terms = expt[logt[row[m]] + logt[xs[m]]]
            x[c] = np.bitwise_xor.reduce(terms)
    return x


def gf_kernel_vector(A: np.ndarray, field) -> np.ndarray:
    """A nonzero vector x with A @ x = 0 over the field (A must be wide).

    A is consumed (eliminated in place).  Raises if the system has no
    nonzero kernel, which the callers' dimension checks rule out.
    """
    if field.exp is None:
        raise NotImplementedError("kernel solve requires exp/log tables (t <= 16)")
    A = np.ascontiguousarray(A, dtype=np.uint16)
    if NUMBA_AVAILABLE:
        x = _gf_kernel_vector_jit(A, field.log, field.exp, field.q - 1)
    else:
        x = _gf_kernel_vector_numpy(A, field.log, field.exp, field.q - 1)
    if not x.any():
        raise ValueError("linear system has full column rank, no kernel vector")
    return x


# ---------------------------------------------------------------------------
# Cyclic Jacobi eigensolver for real symmetric matrices.
# ---------------------------------------------------------------------------


@njit(cache=True, fastmath=True)
def _jacobi_jit(A, V, tol, max_sweeps):  # pragma: no cover - jitted
    n = A.shape[0]
    normf = 0.0
    for i in range(n):
        for j in range(n):
            normf += A[i, j] * A[i, j]
    normf = np.sqrt(normf)
    if normf == 0.0:
        return 0
    thresh = tol * normf
    rp = np.empty(n)
    rq = np.empty(n)
    sweeps = 0
    while sweeps < max_sweeps:
        off2 = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                off2 += 2.0 * A[i, j] * A[i, j]
        if np.sqrt(off2) <= thresh:
            return sweeps
        # rotations below `skip` can leave at most ~1% of the target mass
        skip = 0.1 * thresh / n
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if -skip < apq < skip:
                    continue
                app = A[p, p]
                aqq = A[q, q]
                tau = (aqq - app) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                for i in range(n):
                    aip = A[p, i]
                    aiq = A[q, i]
                    rp[i] = aip * c - aiq * s
                    rq[i] = aiq * c + aip * s
                rp[p] = app - t * apq
                rq[q] = aqq + t * apq
                rp[q] = 0.0
                rq[p] = 0.0
                for i in range(n):
                    A[p, i] = rp[i]
                    A[q, i] = rq[i]
                    A[i, p] = rp[i]
                    A[i, q] = rq[i]
                for i in range(n):
                    vip = V[i, p]
                    viq = V[i, q]
                    V[i, p] = vip * c - viq * s
                    V[i, q] = viq * c + vip * s
        sweeps += 1
    return sweeps


def _jacobi_numpy(A, V, tol, max_sweeps):
    n = A.shape[0]
    normf = np.sqrt((A * A).sum())
    if normf == 0.0:
        return 0
    thresh = tol * normf
    sweeps = 0
    while sweeps < max_sweeps:
        off = np.sqrt(2.0 * (np.triu(A, 1) ** 2).sum())
        if off <= thresh:
            return sweeps
        skip = 0.1 * thresh / n
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if -skip < apq < skip:
                    continue
                app, aqq = A[p, p], A[q, q]
                tau = (aqq - app) / (2.0 * apq)
                t = 1.0 / (tau + np.hypot(1.0, tau)) if tau >= 0 else -1.0 / (
                    -tau + np.hypot(1.0, tau)
                )
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                rp = A[p, :] * c - A[q, :] * s
                rq = A[q, :] * c + A[p, :] * s
                rp[p] = app - t * apq
                rq[q] = aqq + t * apq
                rp[q] = rq[p] = 0.0
                A[p, :] = rp
                A[q, :] = rq
                A[:, p] = rp
                A[:, q] = rq
                vp = V[:, p] * c - V[:, q] * s
                V[:, q] = V[:, q] * c + V[:, p] * s
                V[:, p] = vp
        sweeps += 1
    return sweeps


def jacobi_eigh(M: np.ndarray, tol: float = 1e-10, max_sweeps: int = 60):
    """Full spectrum of a symmetric matrix by cyclic Jacobi sweeps.

    Sweeps run until the off-diagonal Frobenius mass drops below
    tol * ||M||_F.  Returns (eigenvalues ascending, eigenvectors as
    columns, sweeps used).
    """
    A = np.array(M, dtype=np.float64, order="C", copy=True)
    n = A.shape[0]
    V = np.eye(n)
    if NUMBA_AVAILABLE:
        sweeps = _jacobi_jit(A, V, tol, max_sweeps)
    else:
        sweeps = _jacobi_numpy(A, V, tol, max_sweeps)
    w = np.diag(A).copy()
    order = np.argsort(w)
    return w[order], V[:, order], sweeps
