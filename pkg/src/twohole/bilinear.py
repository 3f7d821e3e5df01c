"""
One-parameter Moebius map between the annulus plane and the two-circle plane.

    w = f(zeta) = (zeta - lam) / (lam * zeta - 1),   lam > 1

f is an involution. It sends |zeta| = 1 onto |w| = 1 and the inner circle
|zeta| = rho1 onto |w - e| = r1, while zeta = 1/lam (inside the annulus) goes
to infinity, so the image is the exterior of two disjoint discs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InternalConsistencyError, OverlappingCircles, PoleInput

#: |lam * zeta - 1| below POLE_TOL * lam counts as hitting the pole
POLE_TOL = 1e-14

#: relative tolerance of the substitution self-check in solve_bilinear_params
SELF_CHECK_TOL = 1e-9


@dataclass(frozen=True)
class BilinearParams:
    lam: float
    rho1: float

    def __post_init__(self):
        if not self.lam > 1.0:
            raise ValueError(f"lambda must exceed 1, got {self.lam!r}")
        if not 0.0 < self.rho1 < 1.0 / self.lam:
            raise ValueError(
                f"need 0 < rho1 < 1/lambda, got rho1={self.rho1!r}, 1/lambda={1.0 / self.lam!r}"
            )

    @property
    def pole(self) -> float:
        return 1.0 / self.lam


@dataclass(frozen=True)
class CirclePairGeometry:
    """Second w-plane circle |w - e| = r1 next to the unit circle."""

    e: float
    r1: float

    def __post_init__(self):
        if not self.r1 > 0.0:
            raise ValueError(f"r1 must be positive, got {self.r1!r}")
        if not self.e - 1.0 - self.r1 > 0.0:
            raise OverlappingCircles(
                f"circles overlap or touch: e={self.e!r} <= 1 + r1={1.0 + self.r1!r}"
            )

    @property
    def s(self) -> float:
        """Minimal spacing between the two circles."""
        return self.e - 1.0 - self.r1

    @property
    def epsilon(self) -> float:
        return self.r1 / self.e


def _as_complex(z):
    arr = np.asarray(z, dtype=complex)
    return arr, arr.ndim == 0


def _moebius(lam, z, what):
    z, scalar = _as_complex(z)
    den = lam * z - 1.0
    if np.any(np.abs(den) < POLE_TOL * lam):
        raise PoleInput(f"{what} evaluated at the pole 1/lambda = {1.0 / lam!r}")
    out = (z - lam) / den
    return complex(out) if scalar else out


def eval_bilinear(p: BilinearParams, zeta):
    """w = (zeta - lam) / (lam zeta - 1). Accepts scalars or arrays."""
    return _moebius(p.lam, zeta, "bilinear map")


def bilinear_inverse(p: BilinearParams, w):
    """Inverse of :func:`eval_bilinear`; the map is its own inverse."""
    return _moebius(p.lam, w, "inverse bilinear map")


def bilinear_derivative(p: BilinearParams, zeta):
    zeta, scalar = _as_complex(zeta)
    den = p.lam * zeta - 1.0
    if np.any(np.abs(den) < POLE_TOL * p.lam):
        raise PoleInput(f"derivative evaluated at the pole 1/lambda = {p.pole!r}")
    out = (p.lam**2 - 1.0) / den**2
    return complex(out) if scalar else out


def solve_bilinear_params(e: float, r1: float) -> tuple[BilinearParams, CirclePairGeometry]:
    """
    Find (lambda, rho1) so that f maps |zeta| = rho1 onto |w - e| = r1.

    The radicand is evaluated in factored form, which keeps it accurate when
    the circles nearly touch (e - 1 - r1 -> 0) or when r1 is large.

    Raises
    ------
    OverlappingCircles
        if e <= 1 + r1.
    InternalConsistencyError
        if the images of +rho1 and -rho1 miss e + r1 and e - r1.
    """
    e = float(e)
    r1 = float(r1)
    geom = CirclePairGeometry(e, r1)

    radicand = (e - 1.0 - r1) * (e + 1.0 + r1) * (e - 1.0 + r1) * (e + 1.0 - r1)
    if not radicand > 0.0:
        raise OverlappingCircles(f"non-positive discriminant {radicand!r} for e={e!r}, r1={r1!r}")
    lam = ((e - r1) * (e + r1) + 1.0 + math.sqrt(radicand)) / (2.0 * e)
    rho1 = (r1 + e - lam) / (lam * (r1 + e) - 1.0)

    try:
        params = BilinearParams(lam, rho1)
    except ValueError as exc:
        raise InternalConsistencyError(str(exc)) from exc

    scale = max(1.0, e + r1)
    for z, target in ((rho1, e + r1), (-rho1, e - r1)):
        err = abs(eval_bilinear(params, z) - target)
        if err > SELF_CHECK_TOL * scale:
            raise InternalConsistencyError(
                f"f({z!r}) misses {target!r} by {err:.3e}; lambda={lam!r}, rho1={rho1!r}"
            )
    return params, geom


def geometry_from_params(p: BilinearParams) -> CirclePairGeometry:
    """Circle |w - e| = r1 traced by f on |zeta| = rho1 (inverse of the solve)."""
    right = eval_bilinear(p, p.rho1).real
    left = eval_bilinear(p, -p.rho1).real
    return CirclePairGeometry(0.5 * (right + left), 0.5 * (right - left))
