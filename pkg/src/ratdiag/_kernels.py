"""Hot numeric kernels for homotopy path tracking.

All functions here operate on flat arrays (see systems.CompiledHomotopy) and
are written in a loop style that numba compiles to tight machine code; with
ACSV_PURE_NUMPY set they run unmodified as plain numpy/Python, slower but
bit-for-bit the same algorithm.

Status codes: 0 = success, 1 = diverged, 2 = truncated.
"""

from __future__ import annotations

import numpy as np

from .backend import jit

STATUS_SUCCESS = 0
STATUS_DIVERGED = 1
STATUS_TRUNCATED = 2

# opts vector layout
OPT_DIVERGE = 0  # coordinate magnitude divergence threshold
OPT_MIN_STEP = 1  # step underflow => truncated
OPT_TOL = 2  # Newton corrector tolerance (relative)
OPT_MAX_STEPS = 3  # step budget per path
OPT_INIT_DS = 4  # initial step size
N_OPTS = 5


@jit
def _spow(s: float, p: int) -> float:
    out = 1.0
    for _ in range(p):
        out *= s
    return out


@jit
def _fill_powers(x, maxdeg, pw):
    n = x.shape[0]
    for i in range(n):
        pw[i, 0] = 1.0 + 0.0j
        for k in range(1, maxdeg + 1):
            pw[i, k] = pw[i, k - 1] * x[i]


@jit
def _eval_block(coef, expo, sp, omp, off, s, pw, out):
    """out[i] = sum of terms in entry i at (x, s); pw holds x powers."""
    m = off.shape[0] - 1
    n = expo.shape[1]
    for i in range(m):
        acc = 0.0 + 0.0j
        for t in range(off[i], off[i + 1]):
            v = coef[t] * _spow(s, sp[t]) * _spow(1.0 - s, omp[t])
            for j in range(n):
                e = expo[t, j]
                if e:
                    v *= pw[j, e]
            acc += v
        out[i] = acc


@jit
def _eval_block_ds(coef, expo, sp, omp, off, s, pw, out):
    """Same entries differentiated w.r.t. s."""
    m = off.shape[0] - 1
    n = expo.shape[1]
    for i in range(m):
        acc = 0.0 + 0.0j
        for t in range(off[i], off[i + 1]):
            p = sp[t]
            q = omp[t]
            dfac = 0.0
            if p:
                dfac += p * _spow(s, p - 1) * _spow(1.0 - s, q)
            if q:
                dfac -= q * _spow(s, p) * _spow(1.0 - s, q - 1)
            if dfac == 0.0:
                continue
            v = coef[t] * dfac
            for j in range(n):
                e = expo[t, j]
                if e:
                    v *= pw[j, e]
            acc += v
        out[i] = acc


@jit
def _solve_inplace(A, b):
    """Gaussian elimination with partial pivoting; solution left in b.

    Returns False when the pivot underflows (numerically singular matrix).
    """
    n = A.shape[0]
    for col in range(n):
        piv = col
        best = abs(A[col, col])
        for r in range(col + 1, n):
            m = abs(A[r, col])
            if m > best:
                best = m
                piv = r
        if best < 1e-300:
            return False
        if piv != col:
            for c in range(col, n):
                tmp = A[col, c]
                A[col, c] = A[piv, c]
                A[piv, c] = tmp
            tmp = b[col]
            b[col] = b[piv]
            b[piv] = tmp
        inv = 1.0 / A[col, col]
        for r in range(col + 1, n):
            f = A[r, col] * inv
            if f != 0:
                for c in range(col + 1, n):
                    A[r, c] -= f * A[col, c]
                b[r] -= f * b[col]
    for col in range(n - 1, -1, -1):
        acc = b[col]
        for c in range(col + 1, n):
            acc -= A[col, c] * b[c]
        b[col] = acc / A[col, col]
    return True


@jit
def _maxabs(x):
    best = 0.0
    for i in range(x.shape[0]):
        m = abs(x[i])
        if m > best:
            best = m
    return best


@jit
def _newton(
    hcoef, hexpo, hsp, homp, hoff,
    jcoef, jexpo, jsp, jomp, joff,
    x, s, maxdeg, tol, max_iters,
    pw, hval, jmat, rhs,
):
    """Newton-correct x in place at parameter s.  Returns iterations used,
    or -1 when not converged / singular."""
    n = x.shape[0]
    for it in range(max_iters):
        _fill_powers(x, maxdeg, pw)
        _eval_block(hcoef, hexpo, hsp, homp, hoff, s, pw, hval)
        _eval_block(jcoef, jexpo, jsp, jomp, joff, s, pw, rhs_jflat(jmat, n))
        for i in range(n):
            rhs[i] = -hval[i]
        if not _solve_inplace(jmat, rhs):
            return -1
        step = 0.0
        for i in range(n):
            x[i] += rhs[i]
            m = abs(rhs[i])
            if m > step:
                step = m
        if step <= tol * (1.0 + _maxabs(x)):
            return it + 1
    return -1


@jit
def rhs_jflat(jmat, n):
    # view the n x n Jacobian matrix as the flat output of _eval_block
    return jmat.reshape(n * n)


@jit
def _davidenko(
    hcoef, hexpo, hsp, homp, hoff,
    jcoef, jexpo, jsp, jomp, joff,
    x, s, maxdeg, pw, dsval, jmat, out,
):
    """out = dx/ds = -J(x,s)^{-1} h_s(x,s).  Returns False on singular J."""
    n = x.shape[0]
    _fill_powers(x, maxdeg, pw)
    _eval_block_ds(hcoef, hexpo, hsp, homp, hoff, s, pw, dsval)
    _eval_block(jcoef, jexpo, jsp, jomp, joff, s, pw, rhs_jflat(jmat, n))
    for i in range(n):
        out[i] = -dsval[i]
    return _solve_inplace(jmat, out)


@jit
def polish_block(
    hcoef, hexpo, hsp, homp, hoff,
    jcoef, jexpo, jsp, jomp, joff,
    points, tol, lo, hi, status,
):
    """Newton-polish rows lo..hi-1 of points on the target system (s = 1).

    Used to salvage endpoints of truncated paths: a truncated path that had
    nearly reached its solution converges here, junk stays junk and is
    rejected downstream by the residual filter and certification.
    """
    n = points.shape[1]
    maxdeg = 0
    for t in range(hexpo.shape[0]):
        for j in range(n):
            if hexpo[t, j] > maxdeg:
                maxdeg = hexpo[t, j]
    for t in range(jexpo.shape[0]):
        for j in range(n):
            if jexpo[t, j] > maxdeg:
                maxdeg = jexpo[t, j]
    pw = np.zeros((n, maxdeg + 1), dtype=np.complex128)
    hval = np.zeros(n, dtype=np.complex128)
    jmat = np.zeros((n, n), dtype=np.complex128)
    rhs = np.zeros(n, dtype=np.complex128)
    xs = np.zeros(n, dtype=np.complex128)
    for p in range(lo, hi):
        for i in range(n):
            xs[i] = points[p, i]
        it = _newton(
            hcoef, hexpo, hsp, homp, hoff,
            jcoef, jexpo, jsp, jomp, joff,
            xs, 1.0, maxdeg, tol, 25,
            pw, hval, jmat, rhs,
        )
        if it >= 0:
            status[p] = STATUS_SUCCESS
            for i in range(n):
                points[p, i] = xs[i]
        else:
            status[p] = STATUS_TRUNCATED
    return 0


@jit
def track_block(
    hcoef, hexpo, hsp, homp, hoff,
    jcoef, jexpo, jsp, jomp, joff,
    starts, opts, lo, hi,
    endpoints, status, steps,
):
    """Track homotopy paths lo..hi-1 from s=0 to s=1.

    Predictor: explicit 4th-order Runge-Kutta on the Davidenko ODE.
    Corrector: Newton iteration at the advanced parameter value.
    """
    n = starts.shape[1]
    maxdeg = 0
    for t in range(hexpo.shape[0]):
        for j in range(n):
            if hexpo[t, j] > maxdeg:
                maxdeg = hexpo[t, j]
    for t in range(jexpo.shape[0]):
        for j in range(n):
            if jexpo[t, j] > maxdeg:
                maxdeg = jexpo[t, j]

    pw = np.zeros((n, maxdeg + 1), dtype=np.complex128)
    hval = np.zeros(n, dtype=np.complex128)
    dsval = np.zeros(n, dtype=np.complex128)
    jmat = np.zeros((n, n), dtype=np.complex128)
    rhs = np.zeros(n, dtype=np.complex128)
    k1 = np.zeros(n, dtype=np.complex128)
    k2 = np.zeros(n, dtype=np.complex128)
    k3 = np.zeros(n, dtype=np.complex128)
    k4 = np.zeros(n, dtype=np.complex128)
    xs = np.zeros(n, dtype=np.complex128)
    xc = np.zeros(n, dtype=np.complex128)

    diverge = opts[OPT_DIVERGE]
    min_step = opts[OPT_MIN_STEP]
    tol = opts[OPT_TOL]
    max_steps = int(opts[OPT_MAX_STEPS])
    init_ds = opts[OPT_INIT_DS]

    for p in range(lo, hi):
        for i in range(n):
            xs[i] = starts[p, i]
        s = 0.0
        ds = init_ds
        nsteps = 0
        stat = STATUS_TRUNCATED
        while True:
            if _maxabs(xs) > diverge:
                stat = STATUS_DIVERGED
                break
            if s >= 1.0:
                # endpoint polish on the target system (s = 1)
                it = _newton(
                    hcoef, hexpo, hsp, homp, hoff,
                    jcoef, jexpo, jsp, jomp, joff,
                    xs, 1.0, maxdeg, tol * 1e-2, 20,
                    pw, hval, jmat, rhs,
                )
                stat = STATUS_SUCCESS if it >= 0 else STATUS_TRUNCATED
                break
            if nsteps >= max_steps:
                stat = STATUS_TRUNCATED
                break
            dcur = ds
            if s + dcur > 1.0:
                dcur = 1.0 - s
            # RK4 predictor
            ok = _davidenko(
                hcoef, hexpo, hsp, homp, hoff,
                jcoef, jexpo, jsp, jomp, joff,
                xs, s, maxdeg, pw, dsval, jmat, k1,
            )
            if ok:
                for i in range(n):
                    xc[i] = xs[i] + 0.5 * dcur * k1[i]
                ok = _davidenko(
                    hcoef, hexpo, hsp, homp, hoff,
                    jcoef, jexpo, jsp, jomp, joff,
                    xc, s + 0.5 * dcur, maxdeg, pw, dsval, jmat, k2,
                )
            if ok:
                for i in range(n):
                    xc[i] = xs[i] + 0.5 * dcur * k2[i]
                ok = _davidenko(
                    hcoef, hexpo, hsp, homp, hoff,
                    jcoef, jexpo, jsp, jomp, joff,
                    xc, s + 0.5 * dcur, maxdeg, pw, dsval, jmat, k3,
                )
            if ok:
                for i in range(n):
                    xc[i] = xs[i] + dcur * k3[i]
                ok = _davidenko(
                    hcoef, hexpo, hsp, homp, hoff,
                    jcoef, jexpo, jsp, jomp, joff,
                    xc, s + dcur, maxdeg, pw, dsval, jmat, k4,
                )
            if ok:
                for i in range(n):
                    xc[i] = xs[i] + dcur / 6.0 * (
                        k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]
                    )
            else:
                for i in range(n):
                    xc[i] = xs[i]
            iters = _newton(
                hcoef, hexpo, hsp, homp, hoff,
                jcoef, jexpo, jsp, jomp, joff,
                xc, s + dcur, maxdeg, tol, 4,
                pw, hval, jmat, rhs,
            )
            nsteps += 1
            if iters >= 0 and _maxabs(xc) <= diverge:
                for i in range(n):
                    xs[i] = xc[i]
                s += dcur
                if iters <= 2:
                    ds = ds * 2.0
                    if ds > 0.1:
                        ds = 0.1
            else:
                ds *= 0.25
                if ds < min_step:
                    stat = STATUS_TRUNCATED
                    break
        for i in range(n):
            endpoints[p, i] = xs[i]
        status[p] = stat
        steps[p] = nsteps
    return 0
