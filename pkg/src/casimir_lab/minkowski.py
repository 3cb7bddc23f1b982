"""(2+1)-dimensional Minkowski algebra on (t, x, y) in the mostly-plus convention.

The signature is (-,+,+) on the subspace and (-,+,+,+) once the plate normal
z is appended.  Vectors are stored contravariant; covariant components are
obtained by applying the metric, never stored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadDirection,
    NegativeSigma,
    NegativeTimeComponent,
    NonTimelike,
    SigmaTooLarge,
)

METRIC3 = np.diag([-1.0, 1.0, 1.0])
METRIC4 = np.diag([-1.0, 1.0, 1.0, 1.0])

_UNIT_TOL = 1e-12


@dataclass(frozen=True)
class MinkVec3:
    """Contravariant (t, x, y) vector, all components in length units."""

    t: float
    x: float
    y: float

    def __post_init__(self):
        for c in (self.t, self.x, self.y):
            if not math.isfinite(c):
                raise ValueError("MinkVec3 components must be finite")

    def as_array(self) -> np.ndarray:
        return np.array([self.t, self.x, self.y])

    def spatial_norm(self) -> float:
        return math.hypot(self.x, self.y)


def inner(u: MinkVec3, v: MinkVec3) -> float:
    """Mostly-plus inner product -u.t*v.t + u.x*v.x + u.y*v.y."""
    return -u.t * v.t + u.x * v.x + u.y * v.y


def sigma_bar(sigma: MinkVec3) -> float:
    """Invariant magnitude sqrt(-sigma.sigma) of a timelike vector."""
    s2 = -inner(sigma, sigma)
    if s2 <= 0.0:
        raise NonTimelike(f"vector {sigma} is not timelike (sigma_bar^2 = {s2:g})")
    return math.sqrt(s2)


def boost(v: MinkVec3, rapidity: float, direction=(1.0, 0.0)) -> MinkVec3:
    """Boost v by the given rapidity along a unit 2-vector in the (x, y) plane."""
    dx, dy = float(direction[0]), float(direction[1])
    if abs(math.hypot(dx, dy) - 1.0) > _UNIT_TOL:
        raise BadDirection(f"direction {direction!r} is not a unit vector")
    ch, sh = math.cosh(rapidity), math.sinh(rapidity)
    par = dx * v.x + dy * v.y
    t = ch * v.t + sh * par
    par_new = sh * v.t + ch * par
    return MinkVec3(t, v.x + (par_new - par) * dx, v.y + (par_new - par) * dy)


def boost_matrix3(rapidity: float, direction=(1.0, 0.0)) -> np.ndarray:
    """3x3 matrix of the same boost acting on contravariant (t, x, y) components."""
    dx, dy = float(direction[0]), float(direction[1])
    if abs(math.hypot(dx, dy) - 1.0) > _UNIT_TOL:
        raise BadDirection(f"direction {direction!r} is not a unit vector")
    ch, sh = math.cosh(rapidity), math.sinh(rapidity)
    d = np.array([dx, dy])
    m = np.eye(3)
    m[0, 0] = ch
    m[0, 1:] = sh * d
    m[1:, 0] = sh * d
    m[1:, 1:] = np.eye(2) + (ch - 1.0) * np.outer(d, d)
    return m


def boost_matrix4(rapidity: float, direction=(1.0, 0.0)) -> np.ndarray:
    """4x4 boost acting on (t, x, y, z); the plate normal z is untouched."""
    m = np.eye(4)
    m[:3, :3] = boost_matrix3(rapidity, direction)
    return m


def transform_tensor(comps: np.ndarray, rapidity: float, direction=(1.0, 0.0)) -> np.ndarray:
    """Apply the 4D boost to a rank-2 contravariant tensor: L T L^T."""
    lam = boost_matrix4(rapidity, direction)
    return lam @ np.asarray(comps) @ lam.T


@dataclass(frozen=True)
class CutoffConfig:
    """Validated regularization state: vector cutoff, scalar cutoff, derived invariant.

    Construct through validate_cutoff (or the rest_cutoff/boosted_cutoff
    helpers) so the existence conditions are enforced.
    """

    sigma: MinkVec3
    Sigma: float
    sigma_bar: float

    @property
    def ratio(self) -> float:
        return self.Sigma / self.sigma_bar


def validate_cutoff(sigma: MinkVec3, Sigma: float) -> CutoffConfig:
    """Check timelike/future-pointing sigma and 0 <= Sigma < sigma_bar; return the config.

    Raises NonTimelike, NegativeTimeComponent, NegativeSigma or SigmaTooLarge.
    """
    sb = sigma_bar(sigma)
    if sigma.t <= 0.0:
        raise NegativeTimeComponent(f"time component {sigma.t:g} must be positive")
    if Sigma < 0.0:
        raise NegativeSigma(f"scalar cutoff {Sigma:g} must be >= 0")
    if Sigma >= sb:
        raise SigmaTooLarge(f"scalar cutoff {Sigma:g} >= sigma_bar {sb:g}")
    return CutoffConfig(sigma=sigma, Sigma=float(Sigma), sigma_bar=sb)


def rest_cutoff(sigma_bar_value: float, Sigma: float = 0.0) -> CutoffConfig:
    """Cutoff with sigma purely timelike: sigma = (sigma_bar, 0, 0)."""
    return validate_cutoff(MinkVec3(float(sigma_bar_value), 0.0, 0.0), Sigma)


def boosted_cutoff(
    sigma_bar_value: float,
    Sigma: float = 0.0,
    rapidity: float = 0.0,
    direction=(1.0, 0.0),
) -> CutoffConfig:
    """Rest-frame cutoff boosted to the given rapidity; sigma_bar is invariant."""
    vec = boost(MinkVec3(float(sigma_bar_value), 0.0, 0.0), rapidity, direction)
    return validate_cutoff(vec, Sigma)
