"""
Exterior Laurent maps F(w) = C (w + sum_n c_n w**-n) of |w| > 1.

Two closed-form families are provided besides user coefficient lists:

* hypotrochoids, F(w) = C (w + m / w**n), which trace rounded (n+1)-gons
  and have locally straight edges at m = 1/n**2;
* truncated Schwarz-Christoffel series for the exterior of a regular
  polygon, F'(w) = C (1 -+ w**-n)**(2/n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .errors import BadShape, DomainViolation

#: |w| below 1 - DOMAIN_TOL is outside the exterior domain
DOMAIN_TOL = 1e-12

#: critical points of F may sit on the unit circle (cusps), not outside it
_CRITICAL_TOL = 1e-6


@dataclass(frozen=True)
class HypotrochoidSpec:
    n: int
    m: float
    C: float = 1.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise BadShape(f"n must be a positive integer, got {self.n!r}")
        if not self.C > 0:
            raise BadShape(f"scale C must be positive, got {self.C!r}")
        if abs(self.m) > 1.0 / self.n * (1 + 1e-15):
            raise BadShape(f"|m| = {abs(self.m)!r} exceeds 1/n = {1.0 / self.n!r}")


@dataclass(frozen=True)
class PolygonSpec:
    n_sides: int
    terms: int = 5
    C: float = 1.0
    rotated: bool = False

    def __post_init__(self):
        if int(self.n_sides) != self.n_sides or self.n_sides < 3:
            raise BadShape(f"a polygon needs at least 3 sides, got {self.n_sides!r}")
        if int(self.terms) != self.terms or self.terms < 1:
            raise BadShape(f"terms must be a positive integer, got {self.terms!r}")
        if not self.C > 0:
            raise BadShape(f"scale C must be positive, got {self.C!r}")


Family = Union[None, HypotrochoidSpec, PolygonSpec]


@dataclass(frozen=True)
class LaurentMap:
    """
    F(w) = scale * (w + sum_{n>=1} coeffs[n-1] * w**-n).

    ``family`` records which constructor produced the map (None for a
    user-supplied coefficient list). Construction fails if F' has a zero in
    |w| > 1, since the map would then not be conformal there.
    """

    scale: float
    coeffs: tuple = ()
    family: Family = field(default=None, compare=False)

    def __post_init__(self):
        if any(np.iscomplexobj(c) for c in self.coeffs):
            raise BadShape("coefficients must be real")
        coeffs = tuple(float(c) for c in self.coeffs)
        # drop trailing zeros so N is the true order
        while coeffs and coeffs[-1] == 0.0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "scale", float(self.scale))
        if not (self.scale > 0 and math.isfinite(self.scale)):
            raise BadShape(f"scale C must be positive and finite, got {self.scale!r}")
        crit = self.critical_points()
        if crit.size and np.max(np.abs(crit)) > 1.0 + _CRITICAL_TOL:
            bad = crit[np.argmax(np.abs(crit))]
            raise BadShape(f"F'(w) vanishes at w = {bad:.6g} outside the unit disc")

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def critical_points(self) -> np.ndarray:
        """Zeros of F', i.e. roots of w**(N+1) - sum n c_n w**(N-n)."""
        N = self.order
        if N == 0:
            return np.empty(0, dtype=complex)
        poly = np.zeros(N + 2)
        poly[0] = 1.0
        for n, c in enumerate(self.coeffs, start=1):
            poly[n + 1] = -n * c
        return np.roots(poly)

    def __call__(self, w):
        return eval_laurent(self, w)

    def with_scale(self, scale: float) -> "LaurentMap":
        fam = self.family
        if isinstance(fam, (HypotrochoidSpec, PolygonSpec)):
            fam = type(fam)(**{**fam.__dict__, "C": float(scale)})
        return LaurentMap(scale, self.coeffs, fam)


def _check_domain(w):
    if np.any(np.abs(w) < 1.0 - DOMAIN_TOL):
        raise DomainViolation("Laurent map evaluated inside the unit disc")


def _compensated_series(w, lead, coeffs):
    """
    Neumaier-compensated lead*w + sum_k coeffs[k] * w**-(k+1) in ascending
    powers of 1/w; real and imaginary parts are compensated separately.
    """
    total = lead * w
    comp = np.zeros_like(total)
    inv = 1.0 / w
    power = np.ones_like(w)
    for c in coeffs:
        power = power * inv
        if c == 0.0:
            continue
        term = c * power
        t = total + term
        for part in ("real", "imag"):
            a = getattr(total, part)
            b = getattr(term, part)
            s = getattr(t, part)
            corr = np.where(np.abs(a) >= np.abs(b), (a - s) + b, (b - s) + a)
            if part == "real":
                comp = comp + corr
            else:
                comp = comp + 1j * corr
        total = t
    return total + comp


def eval_laurent(lmap: LaurentMap, w):
    """F(w) for scalar or array ``w`` with |w| >= 1."""
    arr = np.asarray(w, dtype=complex)
    _check_domain(arr)
    out = lmap.scale * _compensated_series(arr, 1.0, lmap.coeffs)
    return complex(out) if arr.ndim == 0 else out


def laurent_derivative(lmap: LaurentMap, w):
    """F'(w) = C (1 - sum n c_n w**-(n+1))."""
    arr = np.asarray(w, dtype=complex)
    _check_domain(arr)
    # 1 - sum n c_n w^-(n+1) == (w - sum n c_n w^-n) / w
    dcoeffs = [-n * c for n, c in enumerate(lmap.coeffs, start=1)]
    out = lmap.scale * _compensated_series(arr, 1.0, dcoeffs) / arr
    return complex(out) if arr.ndim == 0 else out


def laurent_second_derivative(lmap: LaurentMap, w):
    arr = np.asarray(w, dtype=complex)
    _check_domain(arr)
    out = np.zeros_like(arr)
    for n, c in enumerate(lmap.coeffs, start=1):
        if c:
            out = out + n * (n + 1) * c * arr ** (-(n + 2))
    out = lmap.scale * out
    return complex(out) if arr.ndim == 0 else out


# -- hypotrochoids ------------------------------------------------------------


def hypotrochoid_map(spec: HypotrochoidSpec) -> LaurentMap:
    """C (w + m / w**n)."""
    coeffs = [0.0] * spec.n
    coeffs[-1] = spec.m
    return LaurentMap(spec.C, coeffs, spec)


def hypotrochoid_bounds(spec: HypotrochoidSpec) -> tuple[float, float]:
    """(r_in, r_out) = (C(1 - |m|), C(1 + |m|)) bracketing |F(e^{i theta})|."""
    return spec.C * (1.0 - abs(spec.m)), spec.C * (1.0 + abs(spec.m))


def curvature_extremes(spec: HypotrochoidSpec) -> tuple[float, float]:
    """
    Radii of curvature at the lobe tip and at the middle of a side.

    For m > 0 these sit at theta = 0 and theta = pi/(n+1). A negative m gives
    the same curve rotated by pi/(n+1), so |m| is used. The side radius is
    returned as a magnitude; it is ``inf`` on the straight-edge case m n^2 = 1.
    """
    n, C = spec.n, spec.C
    m = abs(spec.m)
    r_min = C * (m * n - 1.0) ** 2 / (m * n**2 + 1.0)
    den = m * n**2 - 1.0
    if abs(den) < 1e-14:
        return r_min, math.inf
    return r_min, C * (m * n + 1.0) ** 2 / abs(den)


def straight_edge_m(n: int) -> float:
    if n < 1:
        raise BadShape(f"n must be >= 1, got {n!r}")
    return 1.0 / n**2


# -- regular polygons -----------------------------------------------------------


def generalized_binomial(alpha: float, k: int) -> float:
    """alpha (alpha-1) ... (alpha-k+1) / k!, accumulated one factor at a time."""
    if k < 0:
        raise ValueError("k must be non-negative")
    out = 1.0
    for j in range(k):
        out *= (alpha - j) / (j + 1)
    return out


def schwarz_christoffel_map(spec: PolygonSpec) -> LaurentMap:
    """
    Truncated series for the exterior of a regular ``n_sides``-gon.

    Keeps the powers w**(1 - n k), k = 0..terms-1. The unrotated form puts a
    vertex on the positive real axis; ``rotated`` flips the sign pattern,
    which turns the polygon by pi/n and puts a side midpoint there instead.
    """
    n = spec.n_sides
    sign = 1.0 if spec.rotated else -1.0
    alpha = 2.0 / n
    coeffs = [0.0] * (n * (spec.terms - 1) - 1) if spec.terms > 1 else []
    for k in range(1, spec.terms):
        coeffs[n * k - 2] = sign**k * generalized_binomial(alpha, k) / (1.0 - n * k)
    return LaurentMap(spec.C, coeffs, spec)


def sample_boundary(lmap: LaurentMap, samples: int) -> np.ndarray:
    """F(e^{i theta_j}) for theta_j = 2 pi j / samples."""
    if samples < 3:
        raise ValueError("need at least 3 samples")
    theta = 2.0 * np.pi * np.arange(samples) / samples
    return eval_laurent(lmap, np.exp(1j * theta))


def max_modulus(lmap: LaurentMap, samples: int = 4096) -> float:
    """Largest |F| on the unit circle (dense sampling plus the real-axis points)."""
    pts = sample_boundary(lmap, samples)
    return float(max(np.abs(pts).max(), abs(lmap(1.0)), abs(lmap(-1.0))))


def normalized(lmap: LaurentMap, *, a: Optional[float] = None, r_out: Optional[float] = None) -> LaurentMap:
    """
    Rescale so that F(1) = a, or so that max |F| on the unit circle is r_out.
    """
    if (a is None) == (r_out is None):
        raise ValueError("give exactly one of a, r_out")
    unit = lmap.with_scale(1.0)
    if a is not None:
        ref = unit(1.0).real
        if not ref > 0:
            raise BadShape(f"F(1) = {ref!r} is not on the positive axis; cannot normalize by a")
        return lmap.with_scale(a / ref)
    fam = lmap.family
    if isinstance(fam, HypotrochoidSpec):
        ref = 1.0 + abs(fam.m)
    else:
        ref = max_modulus(unit)
    return lmap.with_scale(r_out / ref)


def coefficient_table(lmap: LaurentMap) -> list[tuple[int, float]]:
    """Nonzero (n, c_n) pairs."""
    return [(n, c) for n, c in enumerate(lmap.coeffs, start=1) if c != 0.0]


def as_laurent(obj: Union[LaurentMap, HypotrochoidSpec, PolygonSpec]) -> LaurentMap:
    if isinstance(obj, LaurentMap):
        return obj
    if isinstance(obj, HypotrochoidSpec):
        return hypotrochoid_map(obj)
    if isinstance(obj, PolygonSpec):
        return schwarz_christoffel_map(obj)
    raise TypeError(f"cannot build a Laurent map from {type(obj).__name__}")
