"""numba @njit Airy evaluator: same three-regime scheme as ``_airy_numpy``.

Scalar kernels plus a nogil array loop.  The anchor tables are built once by
the numpy module and passed in explicitly so the compiled code carries no
global state (keeps @njit caching safe).
"""

import numpy as np
from numba import njit

from ._airy_numpy import (
    AI_ZERO,
    AIP_ZERO,
    ANCHOR_STEP,
    MACLAURIN_EDGE,
    NEG_ANCHOR_VALS,
    NEG_ANCHOR_X,
    NEG_ASYM_EDGE,
    POS_ANCHOR_VALS,
    POS_ANCHOR_X,
    POS_ASYM_EDGE,
    SQRT_PI,
    U_COEF,
    V_COEF,
)

_TABLES = (
    POS_ANCHOR_X[0],
    POS_ANCHOR_VALS,
    NEG_ANCHOR_X[0],
    NEG_ANCHOR_VALS,
    U_COEF,
    V_COEF,
)


@njit(cache=True)
def _maclaurin_scalar(x):
    x3 = x * x * x
    tf = 1.0
    tg = x
    tfp = 0.5 * x * x
    tgp = 1.0
    sf, sg, sfp, sgp = tf, tg, tfp, tgp
    for k in range(36):
        tf *= x3 / ((3 * k + 2) * (3 * k + 3))
        tg *= x3 / ((3 * k + 3) * (3 * k + 4))
        tfp *= x3 / ((3 * k + 3) * (3 * k + 5))
        tgp *= x3 / ((3 * k + 1) * (3 * k + 3))
        sf += tf
        sg += tg
        sfp += tfp
        sgp += tgp
    return AI_ZERO * sf + AIP_ZERO * sg, AI_ZERO * sfp + AIP_ZERO * sgp


@njit(cache=True)
def _asym_pos_scalar(x, u_coef, v_coef):
    xi = (2.0 / 3.0) * x * np.sqrt(x)
    inv = 1.0 / xi
    s = 1.0
    t = 1.0
    powk = inv
    sign = -1.0
    for k in range(1, 28):
        s += sign * u_coef[k] * powk
        t += sign * v_coef[k] * powk
        powk *= inv
        sign = -sign
    x4 = np.sqrt(np.sqrt(x))
    damp = np.exp(-xi)
    return damp * s / (2.0 * SQRT_PI * x4), -damp * t * x4 / (2.0 * SQRT_PI)


@njit(cache=True)
def _asym_neg_scalar(x, u_coef, v_coef):
    z = -x
    zeta = (2.0 / 3.0) * z * np.sqrt(z)
    inv2 = 1.0 / (zeta * zeta)
    p = 1.0
    q = u_coef[1] / zeta
    r = 1.0
    ss = v_coef[1] / zeta
    pow_even = inv2
    sign = -1.0
    for k in range(1, 10):
        p += sign * u_coef[2 * k] * pow_even
        r += sign * v_coef[2 * k] * pow_even
        pow_odd = pow_even / zeta
        q += sign * u_coef[2 * k + 1] * pow_odd
        ss += sign * v_coef[2 * k + 1] * pow_odd
        pow_even *= inv2
        sign = -sign
    arg = zeta - 0.25 * np.pi
    c = np.cos(arg)
    s = np.sin(arg)
    z4 = np.sqrt(np.sqrt(z))
    return (c * p + s * q) / (SQRT_PI * z4), (s * r - c * ss) * z4 / SQRT_PI


@njit(cache=True)
def _taylor_scalar(a, y0, y1, h):
    ckm1 = 0.0
    ck = y0
    ckp1 = y1
    ai = ck + ckp1 * h
    aip = ckp1
    hk = h
    for k in range(26):
        ckp2 = (a * ck + ckm1) / ((k + 1) * (k + 2))
        ai += ckp2 * hk * h
        aip += (k + 2) * ckp2 * hk
        hk *= h
        ckm1, ck, ckp1 = ck, ckp1, ckp2
    return ai, aip


@njit(cache=True)
def _ai_scalar(x, pos_x0, pos_vals, neg_x0, neg_vals, u_coef, v_coef):
    if x >= POS_ASYM_EDGE:
        return _asym_pos_scalar(x, u_coef, v_coef)
    if x >= MACLAURIN_EDGE:
        i = int(np.rint((x - pos_x0) / ANCHOR_STEP))
        if i < 0:
            i = 0
        elif i >= pos_vals.shape[0]:
            i = pos_vals.shape[0] - 1
        a = pos_x0 + ANCHOR_STEP * i
        return _taylor_scalar(a, pos_vals[i, 0], pos_vals[i, 1], x - a)
    if x > -MACLAURIN_EDGE:
        return _maclaurin_scalar(x)
    if x > NEG_ASYM_EDGE:
        i = int(np.rint((x - neg_x0) / ANCHOR_STEP))
        if i < 0:
            i = 0
        elif i >= neg_vals.shape[0]:
            i = neg_vals.shape[0] - 1
        a = neg_x0 + ANCHOR_STEP * i
        return _taylor_scalar(a, neg_vals[i, 0], neg_vals[i, 1], x - a)
    return _asym_neg_scalar(x, u_coef, v_coef)


@njit(cache=True, nogil=True)
def _ai_arrays_impl(x, pos_x0, pos_vals, neg_x0, neg_vals, u_coef, v_coef):
    n = x.shape[0]
    ai = np.empty(n)
    aip = np.empty(n)
    for i in range(n):
        ai[i], aip[i] = _ai_scalar(x[i], pos_x0, pos_vals, neg_x0, neg_vals, u_coef, v_coef)
    return ai, aip


def ai_scalar(x):
    """(Ai(x), Ai'(x)) for a python float."""
    return _ai_scalar(float(x), *_TABLES)


def ai_arrays(x):
    """Return (Ai(x), Ai'(x)) for a float64 array of any shape."""
    arr = np.asarray(x, dtype=float)
    flat = np.ascontiguousarray(arr.ravel())
    ai, aip = _ai_arrays_impl(flat, *_TABLES)
    return ai.reshape(arr.shape), aip.reshape(arr.shape)


def warmup():
    """Force JIT compilation of the scalar and array paths."""
    ai_arrays(np.array([-20.0, -5.0, 0.0, 5.0, 20.0]))
