"""Reusable numerical kernels.

Adaptive Gauss-Kronrod quadrature on finite and semi-infinite intervals,
a vector-valued variant for multi-component integrands, compensated
summation, geometric tail truncation, central differences, Richardson
extrapolation and log-log slope fitting.  Everything here is pure; integrand
callbacks must be reentrant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DegenerateInput, NoConvergence

__all__ = [
    "QuadratureResult",
    "CompensatedSum",
    "integrate_finite",
    "integrate_finite_vector",
    "integrate_semi_infinite",
    "central_diff",
    "geometric_tail_n",
    "loglog_slope",
    "richardson",
    "gauss_legendre_panels",
]

# 15-point Kronrod extension of the 7-point Gauss rule (positive abscissae).
_XGK = np.array([
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0,
])
_WGK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
])
_WG = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469,
])

# Full symmetric node set on [-1, 1] and matching weight vectors.
_NODES15 = np.concatenate([-_XGK[:7], _XGK[7:][::-1], _XGK[6::-1]])
_KW15 = np.concatenate([_WGK[:7], _WGK[7:][::-1], _WGK[6::-1]])
_GW15 = np.zeros(15)
_GW15[1:14:2] = np.concatenate([_WG[:3], _WG[3:][::-1], _WG[2::-1]])


@dataclass(frozen=True)
class QuadratureResult:
    """Value, error estimate and cost of one numerical integration.

    converged means the estimate met the absolute-plus-relative target
    err <= tol * (1 + |value|).
    """

    value: float
    abs_error_estimate: float
    evaluations: int
    converged: bool


class CompensatedSum:
    """Neumaier compensated accumulator.

    Keeps a running correction term so that long series (10^4+ terms) retain
    near-exact sums instead of the O(n*eps) drift of naive accumulation.
    """

    __slots__ = ("_s", "_c")

    def __init__(self, value: float = 0.0):
        self._s = float(value)
        self._c = 0.0

    def add(self, x: float) -> None:
        t = self._s + x
        if abs(self._s) >= abs(x):
            self._c += (self._s - t) + x
        else:
            self._c += (x - t) + self._s
        self._s = t

    @property
    def total(self) -> float:
        return self._s + self._c


def _gk15_segment_vector(f_vec, lo: float, hi: float):
    """One Gauss-Kronrod pass over [lo, hi] for an array-aware integrand.

    f_vec receives an array of abscissae and must return shape (n,) or (n, m).
    Returns (kronrod (m,), per-component |K-G| error (m,), evaluations).
    """
    c = 0.5 * (lo + hi)
    hw = 0.5 * (hi - lo)
    x = c + hw * _NODES15
    vals = np.asarray(f_vec(x), dtype=float)
    if vals.ndim == 1:
        vals = vals[:, None]
    k = hw * (_KW15 @ vals)
    g = hw * (_GW15 @ vals)
    return k, np.abs(k - g), x.size


def integrate_finite_vector(
    f_vec,
    lo: float,
    hi: float,
    tol: float,
    max_segments: int = 2048,
    strict: bool = True,
):
    """Adaptive Gauss-Kronrod bisection for a vector-valued integrand.

    Args:
      f_vec: callable taking an ndarray of abscissae, returning (n,) or (n, m).
      lo, hi: integration limits, lo < hi.
      tol: absolute-plus-relative target applied to every component.
      max_segments: subdivision budget.
      strict: raise NoConvergence on budget exhaustion instead of returning
        a non-converged result.

    Returns:
      (values (m,), error estimates (m,), evaluations, converged)
    """
    if not (lo < hi):
        raise DegenerateInput(f"empty interval [{lo}, {hi}]")
    if tol <= 0:
        raise DegenerateInput("tol must be positive")
    val, err, n = _gk15_segment_vector(f_vec, lo, hi)
    segments = [(float(np.max(err)), lo, hi, val, err)]
    evals = n
    while len(segments) < max_segments:
        total_val = np.sum([s[3] for s in segments], axis=0)
        total_err = np.sum([s[4] for s in segments], axis=0)
        target = tol * (1.0 + np.abs(total_val))
        if np.all(total_err <= target):
            return total_val, total_err, evals, True
        segments.sort(key=lambda s: s[0])
        _, a, b, _, _ = segments.pop()
        mid = 0.5 * (a + b)
        for aa, bb in ((a, mid), (mid, b)):
            v, e, n = _gk15_segment_vector(f_vec, aa, bb)
            segments.append((float(np.max(e)), aa, bb, v, e))
            evals += n
    total_val = np.sum([s[3] for s in segments], axis=0)
    total_err = np.sum([s[4] for s in segments], axis=0)
    if np.all(total_err <= tol * (1.0 + np.abs(total_val))):
        return total_val, total_err, evals, True
    if strict:
        raise NoConvergence(
            f"segment budget {max_segments} exhausted; err={np.max(total_err):.3e}"
        )
    return total_val, total_err, evals, False


def integrate_finite(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float,
    max_segments: int = 2048,
    strict: bool = True,
) -> QuadratureResult:
    """Adaptive estimate of the integral of a scalar callable over [lo, hi].

    Nested-rule (Gauss-Kronrod 15/7) bisection with absolute-plus-relative
    tolerance; raises NoConvergence when the subdivision budget runs out
    (or flags converged=False when strict is off).
    """

    def f_vec(x):
        return np.array([f(float(xi)) for xi in x])

    val, err, evals, ok = integrate_finite_vector(
        f_vec, lo, hi, tol, max_segments=max_segments, strict=strict
    )
    return QuadratureResult(float(val[0]), float(err[0]), evals, ok)


def integrate_semi_infinite(
    f: Callable[[float], float],
    tol: float,
    decay_hint: float,
    max_segments: int = 2048,
    strict: bool = True,
) -> QuadratureResult:
    """Integral of f over [0, inf) via the map y = decay_hint * u / (1 - u).

    The substitution sends (0, 1) -> (0, inf) and works uniformly for
    power-law and exponential tails; decay_hint sets the scale at which
    half the transformed interval is spent.
    """
    if decay_hint <= 0:
        raise DegenerateInput("decay_hint must be positive")

    def g(u: float) -> float:
        one_minus = 1.0 - u
        y = decay_hint * u / one_minus
        return f(y) * decay_hint / (one_minus * one_minus)

    return integrate_finite(g, 0.0, 1.0, tol, max_segments=max_segments, strict=strict)


_EPS = float(np.finfo(float).eps)


def central_diff(f: Callable[[float], float], x0: float, order: int, h: float | None = None) -> float:
    """Second-order central difference of the 1st or 2nd derivative at x0.

    When h is omitted it defaults to the standard truncation/round-off
    balance: eps^(1/3)*max(1,|x0|) for order 1, eps^(1/4)*max(1,|x0|) for
    order 2.
    """
    if order not in (1, 2):
        raise DegenerateInput("order must be 1 or 2")
    if h is None:
        h = (_EPS ** (1.0 / 3.0) if order == 1 else _EPS ** 0.25) * max(1.0, abs(x0))
    if h <= 0:
        raise DegenerateInput("h must be positive")
    if order == 1:
        return (f(x0 + h) - f(x0 - h)) / (2.0 * h)
    return (f(x0 + h) - 2.0 * f(x0) + f(x0 - h)) / (h * h)


def geometric_tail_n(ratio_exponent: float, eps: float) -> int:
    """Smallest N with exp(-q*N)/(1-exp(-q)) <= eps for q = ratio_exponent.

    This bounds the tail of a geometric series with term ratio exp(-q); it is
    the truncation rule for exponentially damped mode sums.
    """
    if ratio_exponent <= 0:
        raise DegenerateInput("ratio_exponent must be positive")
    if eps <= 0:
        raise DegenerateInput("eps must be positive")
    denom = -math.expm1(-ratio_exponent)

    def bound(n: int) -> float:
        return math.exp(-ratio_exponent * n) / denom

    target = -math.log(eps * denom) / ratio_exponent
    n = max(0, math.ceil(target) - 2)
    while bound(n) > eps:
        n += 1
    while n > 0 and bound(n - 1) <= eps:
        n -= 1
    return n


def loglog_slope(points: Sequence[tuple[float, float]]) -> float:
    """Least-squares slope of log y against log x.

    Requires at least two points with positive coordinates and at least two
    distinct x values; used to measure power-law scaling exponents.
    """
    if len(points) < 2:
        raise DegenerateInput("need at least two points")
    xs = np.array([p[0] for p in points], dtype=float)
    ys = np.array([p[1] for p in points], dtype=float)
    if np.any(xs <= 0) or np.any(ys <= 0):
        raise DegenerateInput("all coordinates must be positive")
    lx = np.log(xs)
    if np.ptp(lx) == 0.0:
        raise DegenerateInput("x values are all equal")
    ly = np.log(ys)
    lx = lx - lx.mean()
    return float(np.dot(lx, ly - ly.mean()) / np.dot(lx, lx))


def richardson(values: Sequence[tuple[float, float]], order: int) -> float:
    """Extrapolate samples (h, f(h)) to h -> 0 given leading error order h^order.

    Neville polynomial extrapolation in the variable x = h^order, which
    cancels the h^order, h^(2*order), ... error terms of an even series.
    """
    if len(values) < 2:
        raise DegenerateInput("need at least two samples")
    if order < 1:
        raise DegenerateInput("order must be >= 1")
    hs = [float(h) for h, _ in values]
    if len(set(hs)) != len(hs):
        raise DegenerateInput("step sizes must be distinct")
    if any(h <= 0 for h in hs):
        raise DegenerateInput("step sizes must be positive")
    x = [h ** order for h in hs]
    t = [float(v) for _, v in values]
    n = len(t)
    for m in range(1, n):
        for i in range(n - m):
            t[i] = t[i + 1] + (t[i + 1] - t[i]) * x[i + m] / (x[i] - x[i + m])
    return t[0]


def gauss_legendre_panels(n_nodes: int, edges: np.ndarray):
    """Nodes and weights of a composite Gauss-Legendre rule over given panel edges.

    Returns flat (nodes, weights) arrays covering every panel; n_nodes is the
    per-panel order.  The rule is open (no edge evaluations).
    """
    base_x, base_w = np.polynomial.legendre.leggauss(n_nodes)
    edges = np.asarray(edges, dtype=float)
    lo = edges[:-1]
    hw = 0.5 * np.diff(edges)
    mid = lo + hw
    nodes = (mid[:, None] + hw[:, None] * base_x[None, :]).ravel()
    weights = (hw[:, None] * base_w[None, :]).ravel()
    return nodes, weights
