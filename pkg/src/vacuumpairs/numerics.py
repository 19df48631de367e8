"""Deterministic numerical kernels: adaptive quadrature and bracketing
root finding.

Both routines are pure functions of their arguments, so they are safe for
unrestricted concurrent use.  The integrands handled here are smooth
rational/exponential functions, which adaptive Simpson subdivision with a
Richardson error estimate resolves cheaply and to tight tolerances.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Callable


class MaxDepthExceededError(RuntimeError):
    """Requested tolerance unreachable within the subdivision depth limit."""


class NonFiniteIntegrandError(ValueError):
    """Integrand returned NaN or infinity inside the integration interval."""


class NoSignChangeError(ValueError):
    """Root bracket endpoints do not straddle a sign change."""


class MaxIterExceededError(RuntimeError):
    """Root refinement did not converge within max_iter iterations."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and depth limit for ``integrate``."""

    rel_tol: float = 1e-10
    abs_tol: float = 0.0
    max_depth: int = 48

    def __post_init__(self) -> None:
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be > 0")
        if self.abs_tol < 0:
            raise ValueError("abs_tol must be >= 0")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")


@dataclass(frozen=True)
class RootSpec:
    """Bracket and stopping rule for ``find_root``."""

    bracket_lo: float
    bracket_hi: float
    x_tol: float = 1e-12
    max_iter: int = 200

    def __post_init__(self) -> None:
        if not self.bracket_lo < self.bracket_hi:
            raise ValueError("bracket_lo must be < bracket_hi")
        if not self.x_tol > 0:
            raise ValueError("x_tol must be > 0")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")


DEFAULT_QUADRATURE = QuadratureSpec()


def _eval(f: Callable[[float], float], x: float) -> float:
    value = f(x)
    if not math.isfinite(value):
        raise NonFiniteIntegrandError(f"integrand is {value!r} at x={x!r}")
    return float(value)


def _adapt(f, a, b, fa, fm, fb, whole, eps, depth):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = _eval(f, lm)
    frm = _eval(f, rm)
    left = (m - a) * (fa + 4.0 * flm + fm) / 6.0
    right = (b - m) * (fm + 4.0 * frm + fb) / 6.0
    delta = left + right - whole
    # Factor 15 from the Richardson estimate for Simpson's rule.
    if abs(delta) <= 15.0 * eps:
        return left + right + delta / 15.0
    if depth <= 0:
        raise MaxDepthExceededError(
            f"tolerance not reached on [{a!r}, {b!r}] (residual {delta!r})"
        )
    half = 0.5 * eps
    return _adapt(f, a, m, fa, flm, fm, left, half, depth - 1) + _adapt(
        f, m, b, fm, frm, fb, right, half, depth - 1
    )


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """Integrate ``f`` over [a, b] by adaptive Simpson subdivision.

    Returns I with |I - integral| <= max(abs_tol, rel_tol*|I|) for smooth
    integrands.

    Raises:
        ValueError: if a > b.
        NonFiniteIntegrandError: f returned NaN/inf at an evaluation point.
        MaxDepthExceededError: tolerance unreachable within max_depth.
    """
    if a > b:
        raise ValueError(f"integration bounds reversed: a={a!r} > b={b!r}")
    if a == b:
        return 0.0
    # Subdivision starts from a 64-panel composite grid rather than a single
    # Simpson panel: a lone coarse estimate can miss features entirely (and
    # vanish for integrands that are ~0 at the endpoints and midpoint),
    # which would both misprice the relative error budget and allow a false
    # early acceptance.
    n_panels = 64
    xs = [a + (b - a) * k / (2 * n_panels) for k in range(2 * n_panels + 1)]
    xs[-1] = b
    fs = [_eval(f, x) for x in xs]
    panels = [
        (xs[2 * i + 2] - xs[2 * i])
        * (fs[2 * i] + 4.0 * fs[2 * i + 1] + fs[2 * i + 2])
        / 6.0
        for i in range(n_panels)
    ]
    eps = max(spec.abs_tol, spec.rel_tol * abs(math.fsum(panels)))
    return math.fsum(
        _adapt(
            f,
            xs[2 * i],
            xs[2 * i + 2],
            fs[2 * i],
            fs[2 * i + 1],
            fs[2 * i + 2],
            panels[i],
            eps / n_panels,
            spec.max_depth,
        )
        for i in range(n_panels)
    )


def integrate_half_line(
    f: Callable[[float], float],
    a: float,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """Integrate ``f`` over [a, inf) via the substitution x = a + t/(1-t).

    The image integrand is f(x)/(1-t)^2 on [0, 1); the t=1 endpoint is
    defined as 0, which is the correct limit whenever f decays faster than
    1/x^2 (the exponential tails handled here do).
    """

    def mapped(t: float) -> float:
        if t >= 1.0:
            return 0.0
        s = 1.0 / (1.0 - t)
        return f(a + t * s) * s * s

    return integrate(mapped, 0.0, 1.0, spec)


def find_root(g: Callable[[float], float], spec: RootSpec) -> float:
    """Find a root of ``g`` inside the bracket using Brent's method.

    Combines bisection, secant and inverse quadratic interpolation, so
    convergence is guaranteed for a valid bracket.  Deterministic for
    identical inputs.

    Returns the abscissa once the bracket has shrunk below x_tol.

    Raises:
        NoSignChangeError: g(bracket_lo) and g(bracket_hi) have equal signs.
        MaxIterExceededError: not converged within max_iter iterations.
    """
    a, b = spec.bracket_lo, spec.bracket_hi
    fa, fb = g(a), g(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0.0) == (fb > 0.0):
        raise NoSignChangeError(
            f"g({a!r})={fa!r} and g({b!r})={fb!r} have the same sign"
        )

    c, fc = a, fa
    d = e = b - a
    for _ in range(spec.max_iter):
        if (fb > 0.0) == (fc > 0.0):
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol = 2.0 * sys.float_info.epsilon * abs(b) + 0.5 * spec.x_tol
        m = 0.5 * (c - b)
        if abs(m) <= tol or fb == 0.0:
            return b
        if abs(e) >= tol and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                # Secant step.
                p = 2.0 * m * s
                q = 1.0 - s
            else:
                # Inverse quadratic interpolation.
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0.0:
                q = -q
            else:
                p = -p
            if 2.0 * p < min(3.0 * m * q - abs(tol * q), abs(e * q)):
                e = d
                d = p / q
            else:
                d = m
                e = m
        else:
            d = m
            e = m
        a, fa = b, fb
        if abs(d) > tol:
            b += d
        elif m > 0.0:
            b += tol
        else:
            b -= tol
        fb = g(b)
    raise MaxIterExceededError(f"no convergence after {spec.max_iter} iterations")
