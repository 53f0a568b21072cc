"""Adaptive Dormand-Prince 5(4) integration along complex paths.

The independent variable moves along a curve ``x(s)`` in the complex plane,
parametrized by a real ``s``; every right-hand side is pulled back to
``dy/ds = f(x(s), y) * x'(s)``. Steps are clipped so the integrator lands
exactly on every requested output parameter, which is how dense output is
delivered.
"""

from __future__ import annotations

import logging

import numpy as np

from .errors import StepFailure

log = logging.getLogger(__name__)

# Dormand & Prince (1980), FSAL tableau.
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_B4 = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40])
_E = _B5 - _B4

DEFAULT_RTOL = 1e-10
DEFAULT_ATOL = 1e-12


def rk_path(f, x_of_s, dx_of_s, y0, s_out, rtol=DEFAULT_RTOL, atol=DEFAULT_ATOL,
            h0=None, hmin_rel=1e-12, max_steps=200_000, guard=None):
    """Integrate dy/dx = f(x, y) along x = x_of_s(s), s running through ``s_out``.

    ``s_out`` is an increasing sequence starting at the initial parameter.
    Returns an array of states, one row per entry of ``s_out``.

    ``guard(x, y)`` is called after every accepted step and may raise.
    A step smaller than ``hmin_rel * max(1, |x|)`` in path length raises
    StepFailure carrying the last accepted point.
    """
    s_out = np.asarray(s_out, dtype=float)
    y = np.array(y0, dtype=complex)
    out = np.empty((len(s_out), y.size), dtype=complex)
    out[0] = y
    if len(s_out) == 1:
        return out

    def g(s, yy):
        return f(x_of_s(s), yy) * dx_of_s(s)

    # overflow near a movable pole is caught through the finiteness check
    with np.errstate(over="ignore", invalid="ignore"):
        return _run(g, x_of_s, dx_of_s, y, s_out, out, rtol, atol, h0, hmin_rel, max_steps, guard)


def _run(g, x_of_s, dx_of_s, y, s_out, out, rtol, atol, h0, hmin_rel, max_steps, guard):
    s = s_out[0]
    h = (s_out[-1] - s) / 100 if h0 is None else h0
    k1 = g(s, y)
    steps = 0
    for idx in range(1, len(s_out)):
        target = s_out[idx]
        while s < target:
            steps += 1
            if steps > max_steps:
                raise StepFailure(f"exceeded {max_steps} steps", x_of_s(s), y.copy())
            clipped = h >= target - s
            hs = target - s if clipped else h
            k = [k1]
            for i in range(1, 7):
                yi = y + hs * sum(a * kj for a, kj in zip(_A[i], k))
                k.append(g(s + _C[i] * hs, yi))
            y_new = y + hs * sum(b * kj for b, kj in zip(_B5, k) if b)
            err = hs * sum(e * kj for e, kj in zip(_E, k) if e)
            scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
            ratio = float(np.max(np.abs(err) / scale))
            if not np.isfinite(ratio) or not np.all(np.isfinite(y_new)):
                ratio = np.inf
            factor = 5.0 if ratio == 0 else min(5.0, max(0.2, 0.9 * ratio ** -0.2))
            if ratio <= 1.0:
                s = target if clipped else s + hs
                y = y_new
                k1 = k[6]
                if guard is not None:
                    guard(x_of_s(s), y)
                h = max(h, hs * factor) if clipped else hs * factor
            else:
                h = hs * factor
                if h * abs(dx_of_s(s)) < hmin_rel * max(1.0, abs(x_of_s(s))):
                    raise StepFailure(
                        f"step size underflow near x = {complex(x_of_s(s)):.6g} (movable pole?)",
                        x_of_s(s), y.copy())
        out[idx] = y
    log.debug("rk_path: %d steps", steps)
    return out


def integrate_polyline(f, path, y0, samples_per_segment=1, **kw):
    """Run rk_path over a polyline; returns (x_samples, y_samples).

    Segments are integrated one at a time so the derivative of the
    parametrization is continuous within each call.
    """
    pts = np.asarray(path, dtype=complex)
    if len(pts) < 2:
        return np.array([pts[0]]), np.array([np.asarray(y0, dtype=complex)])
    n = max(1, int(samples_per_segment))
    xs = [pts[0]]
    ys = [np.asarray(y0, dtype=complex)]
    y = ys[0]
    for k in range(len(pts) - 1):
        a, b = pts[k], pts[k + 1]
        if a == b:
            xs.extend([a] * n)
            ys.extend([y] * n)
            continue
        seg = rk_path(f, lambda s, a=a, b=b: a + s * (b - a), lambda s, a=a, b=b: b - a, y,
                      np.linspace(0.0, 1.0, n + 1), **kw)
        xs.extend(a + (j / n) * (b - a) for j in range(1, n + 1))
        ys.extend(seg[1:])
        y = seg[-1]
    return np.array(xs), np.array(ys)
