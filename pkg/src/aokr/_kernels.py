"""Hot numeric kernels with a numba path and a pure-numpy fallback.

The numba implementations are used when numba imports cleanly and the
environment variable ``AOKR_DISABLE_NUMBA`` is unset (or ``0``).  Both
implementations are always importable as ``numba_impl`` / ``numpy_impl``
so tests and benchmarks can compare them directly.
"""
import math
import os
import types

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

NUMBA_OPTS = {"cache": True, "nogil": True}
# below this |x| only J_0 and J_1 are representable; the recurrence would overflow
TINY = 1e-100


def _flag_disabled():
    return os.environ.get("AOKR_DISABLE_NUMBA", "0").strip().lower() not in ("", "0", "false", "no")


def miller_start(nmax, x):
    """Even starting order for downward recurrence, safe for |x| <= 100."""
    m = max(nmax, int(abs(x))) + 20 + int(10.0 * math.sqrt(max(nmax, abs(x)) + 1.0))
    return m + (m % 2)


# -- numpy fallback -------------------------------------------------------

def _mul_inplace_np(a, b):
    a *= b
    return a


def _abs2_np(a):
    return a.real * a.real + a.imag * a.imag


def _power_sum_np(prob, p, q):
    return float(np.dot(prob, p**q))


def _window_sums_np(prob, p, offset, jmin, nwin):
    # window j covers [2j + offset - 1, 2j + offset + 1)
    j = np.floor((p - offset + 1.0) / 2.0).astype(np.int64) - jmin
    ok = (j >= 0) & (j < nwin)
    return np.bincount(j[ok], weights=prob[ok], minlength=nwin)


def _bessel_table_np(nmax, xs):
    """J_0..J_nmax at every x in ``xs``; recurrence vectorized over x."""
    xs = np.asarray(xs, dtype=np.float64)
    out = np.zeros((xs.size, nmax + 1))
    ax = np.abs(xs)
    zero = ax < TINY
    out[zero, 0] = 1.0
    if nmax >= 1:
        out[zero, 1] = 0.5 * xs[zero]
    if np.all(zero):
        return out
    xv = ax[~zero]
    start = miller_start(nmax, float(xv.max()))
    jp1 = np.zeros_like(xv)
    jk = np.full_like(xv, 1e-300)
    acc = np.zeros_like(xv)
    vals = np.zeros((xv.size, nmax + 1))
    for k in range(start, 0, -1):
        jm1 = (2.0 * k / xv) * jk - jp1
        if k <= nmax:
            vals[:, k] = jk
        if k % 2 == 0:
            acc += 2.0 * jk
        jp1, jk = jk, jm1
        big = np.abs(jk) > 1e150
        if np.any(big):
            scale = np.where(big, 1e-150, 1.0)
            jk *= scale
            jp1 *= scale
            acc *= scale
            vals *= scale[:, None]
    vals[:, 0] = jk
    acc += jk
    vals /= acc[:, None]
    neg = xs[~zero] < 0
    if np.any(neg):
        sign = np.where(np.arange(nmax + 1) % 2 == 1, -1.0, 1.0)
        vals[neg] *= sign
    out[~zero] = vals
    return out


numpy_impl = types.SimpleNamespace(
    mul_inplace=_mul_inplace_np,
    abs2=_abs2_np,
    power_sum=_power_sum_np,
    window_sums=_window_sums_np,
    bessel_table=_bessel_table_np,
    name="numpy",
)


# -- numba path -----------------------------------------------------------

def _mul_inplace_loop(a, b):
    for i in range(a.shape[0]):
        a[i] = a[i] * b[i]
    return a


def _abs2_loop(a):
    out = np.empty(a.shape[0])
    for i in range(a.shape[0]):
        z = a[i]
        out[i] = z.real * z.real + z.imag * z.imag
    return out


def _power_sum_loop(prob, p, q):
    # four independent partial sums keep the adds from serializing
    n = prob.shape[0]
    s0 = s1 = s2 = s3 = 0.0
    for i in range(0, n - 3, 4):
        x0, x1, x2, x3 = prob[i], prob[i + 1], prob[i + 2], prob[i + 3]
        for _ in range(q):
            x0 *= p[i]
            x1 *= p[i + 1]
            x2 *= p[i + 2]
            x3 *= p[i + 3]
        s0 += x0
        s1 += x1
        s2 += x2
        s3 += x3
    for i in range(n - n % 4, n):
        x0 = prob[i]
        for _ in range(q):
            x0 *= p[i]
        s0 += x0
    return (s0 + s1) + (s2 + s3)


def _window_sums_loop(prob, p, offset, jmin, nwin):
    out = np.zeros(nwin)
    for i in range(prob.shape[0]):
        j = int(math.floor((p[i] - offset + 1.0) / 2.0)) - jmin
        if 0 <= j < nwin:
            out[j] += prob[i]
    return out


def _bessel_row_loop(nmax, x, start):
    vals = np.zeros(nmax + 1)
    ax = abs(x)
    if ax < 1e-100:
        vals[0] = 1.0
        if nmax >= 1:
            vals[1] = 0.5 * x
        return vals
    jp1 = 0.0
    jk = 1e-300
    acc = 0.0
    for k in range(start, 0, -1):
        jm1 = (2.0 * k / ax) * jk - jp1
        if k <= nmax:
            vals[k] = jk
        if k % 2 == 0:
            acc += 2.0 * jk
        jp1 = jk
        jk = jm1
        if abs(jk) > 1e150:
            jk *= 1e-150
            jp1 *= 1e-150
            acc *= 1e-150
            for i in range(nmax + 1):
                vals[i] *= 1e-150
    vals[0] = jk
    acc += jk
    for i in range(nmax + 1):
        vals[i] /= acc
        if x < 0 and i % 2 == 1:
            vals[i] = -vals[i]
    return vals


def _bessel_table_loop(nmax, xs, start):
    out = np.empty((xs.shape[0], nmax + 1))
    for r in range(xs.shape[0]):
        out[r, :] = _bessel_row_loop(nmax, xs[r], start)
    return out


if numba is not None:
    _njit = numba.njit(**NUMBA_OPTS)
    _bessel_row_nb = _njit(_bessel_row_loop)

    @numba.njit(**NUMBA_OPTS)
    def _bessel_table_nb_core(nmax, xs, start):
        out = np.empty((xs.shape[0], nmax + 1))
        for r in range(xs.shape[0]):
            out[r, :] = _bessel_row_nb(nmax, xs[r], start)
        return out

    def _bessel_table_nb(nmax, xs):
        xs = np.ascontiguousarray(xs, dtype=np.float64).ravel()
        xmax = float(np.abs(xs).max()) if xs.size else 0.0
        return _bessel_table_nb_core(int(nmax), xs, miller_start(nmax, xmax))

    numba_impl = types.SimpleNamespace(
        mul_inplace=_njit(_mul_inplace_loop),
        abs2=_njit(_abs2_loop),
        power_sum=_njit(_power_sum_loop),
        window_sums=_njit(_window_sums_loop),
        bessel_table=_bessel_table_nb,
        name="numba",
    )
else:  # pragma: no cover
    numba_impl = None

USING_NUMBA = numba_impl is not None and not _flag_disabled()
active = numba_impl if USING_NUMBA else numpy_impl


def mul_inplace(a, b):
    """``a *= b`` for contiguous 1-D complex arrays; returns ``a``."""
    return active.mul_inplace(a, b)


def abs2(a):
    return active.abs2(a)


def power_sum(prob, p, q):
    """Sum of ``prob * p**q``."""
    return active.power_sum(prob, p, int(q))


def window_sums(prob, p, offset, jmin, nwin):
    """Probability mass in windows ``[2j+offset-1, 2j+offset+1)``, j = jmin.."""
    return active.window_sums(prob, p, float(offset), int(jmin), int(nwin))


def bessel_table(nmax, xs):
    """Rows of J_0(x)..J_nmax(x), one row per x, by Miller's algorithm."""
    return active.bessel_table(int(nmax), np.atleast_1d(np.asarray(xs, dtype=np.float64)))
