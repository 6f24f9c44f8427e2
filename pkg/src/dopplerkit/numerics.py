"""Numerical primitives shared across modules.

Adaptive Simpson quadrature, bracketed root solving and damped fixed-point
iteration. All routines are pure functions; failures raise NumericError
rather than returning sentinels.
"""

from __future__ import annotations

import math
from typing import Callable

from scipy.optimize import brentq

from .errors import NumericError

# brentq cannot go tighter than ~4 machine epsilons in relative terms
_BRENT_RTOL = 8.9e-16


def _simpson_step(
    f: Callable[[float], float], a: float, fa: float, b: float, fb: float
) -> tuple[float, float, float]:
    m = 0.5 * (a + b)
    fm = f(m)
    return m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def _adapt(f, a, fa, m, fm, b, fb, whole, eps, depth):
    lm, flm, left = _simpson_step(f, a, fa, m, fm)
    rm, frm, right = _simpson_step(f, m, fm, b, fb)
    delta = left + right - whole
    # Richardson: the composite estimate is good to delta/15
    if abs(delta) <= 15.0 * eps:
        return left + right + delta / 15.0
    if depth <= 0:
        raise NumericError(
            "adaptive Simpson failed to converge on [%g, %g]" % (a, b)
        )
    return _adapt(f, a, fa, lm, flm, m, fm, left, 0.5 * eps, depth - 1) + _adapt(
        f, m, fm, rm, frm, b, fb, right, 0.5 * eps, depth - 1
    )


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    rel_tol: float = 1e-9,
    abs_tol: float = 0.0,
    max_depth: int = 60,
) -> float:
    """Integrate f over [a, b] with adaptive Simpson refinement.

    The tolerance is rel_tol times the first whole-interval estimate, with
    abs_tol as a floor for integrals that are themselves near zero.
    """
    if a == b:
        return 0.0
    fa = f(a)
    fb = f(b)
    m, fm, whole = _simpson_step(f, a, fa, b, fb)
    eps = max(abs(whole) * rel_tol, abs_tol)
    if eps == 0.0:
        eps = 5e-324  # refine a genuinely zero estimate until stable
    return _adapt(f, a, fa, m, fm, b, fb, whole, eps, max_depth)


def solve_bracketed(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    xtol: float,
    rtol: float = _BRENT_RTOL,
) -> float:
    """Root of f on [lo, hi] with a guaranteed sign change at the ends."""
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0.0) == (fhi > 0.0):
        raise NumericError(
            "no sign change on bracket [%g, %g]: f=%g, %g" % (lo, hi, flo, fhi)
        )
    return float(brentq(f, lo, hi, xtol=xtol, rtol=max(rtol, _BRENT_RTOL)))


def expand_bracket(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    grow: float = 2.0,
    max_expand: int = 60,
) -> tuple[float, float]:
    """Grow [lo, hi] geometrically about lo until f changes sign."""
    flo = f(lo)
    width = hi - lo
    for _ in range(max_expand):
        fhi = f(lo + width)
        if (flo > 0.0) != (fhi > 0.0) or fhi == 0.0:
            return lo, lo + width
        width *= grow
    raise NumericError("could not bracket a root starting from [%g, %g]" % (lo, hi))


def fixed_point_damped(
    g: Callable[[float], float],
    x0: float,
    abs_tol: float = 1e-12,
    max_iter: int = 100,
) -> tuple[float, int]:
    """Damped fixed-point iteration for x = g(x).

    Starts undamped and halves the step factor whenever the update grows,
    which keeps mild non-contractions convergent. Every third step applies
    Aitken delta-squared extrapolation so slow contractions (ratio near 1)
    still land within the iteration budget. Returns (x, iterations).
    """
    x = x0
    lam = 1.0
    prev = math.inf
    history: list[float] = [x0]
    for k in range(1, max_iter + 1):
        gx = g(x)
        step = gx - x
        if abs(step) <= abs_tol:
            return gx, k
        if abs(step) > prev and lam > 2.0 ** -8:
            lam *= 0.5
        x += lam * step
        prev = abs(step)
        history.append(x)
        if lam == 1.0 and len(history) >= 3:
            x2, x1, x0_ = history[-1], history[-2], history[-3]
            denom = (x2 - x1) - (x1 - x0_)
            if denom != 0.0:
                accel = x2 - (x2 - x1) ** 2 / denom
                if math.isfinite(accel):
                    x = accel
                    history = [x]
                    prev = math.inf
    raise NumericError(
        "fixed point did not reach %g after %d iterations" % (abs_tol, max_iter)
    )


def central_difference(f: Callable[[float], float], x: float, h: float) -> float:
    """Second-order centered derivative estimate."""
    return (f(x + h) - f(x - h)) / (2.0 * h)
