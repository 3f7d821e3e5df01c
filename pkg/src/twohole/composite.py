"""
Composite map z = F(f(zeta)) of the annulus rho1 <= |zeta| <= 1.

The unit circle goes to the curve L traced by the outer map F, the inner
circle goes to a nearly circular hole |z - h| ~ R. Given a target (h, R) the
w-plane circle (e, r1) is found by solving Re F(e) = h with a direct
iteration, then r1 = R / F'(e), and finally the bilinear parameters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import optimize

from .bilinear import (
    POLE_TOL,
    BilinearParams,
    CirclePairGeometry,
    eval_bilinear,
    geometry_from_params,
    solve_bilinear_params,
)
from .errors import (
    DegenerateDerivative,
    DomainViolation,
    MappingError,
    NonConvergence,
    NoRoot,
    OverlappingCircles,
)
from .outer import LaurentMap, eval_laurent

#: annulus membership slack for eval_composite
ANNULUS_TOL = 1e-9

STEP_TOL = 1e-13
RESIDUAL_TOL = 1e-12
MAX_ITER = 200


@dataclass(frozen=True)
class HoleTarget:
    """
    Where the circular hole should go: centre h on the positive real axis
    and radius R.

    Instead of h a gap d can be given; the centre is then placed at
    ``datum + d + R``. ``datum`` is the x-coordinate the gap is measured from
    and defaults to Re F(1), the point where L crosses the positive real axis.
    """

    R: float
    h: Optional[float] = None
    d: Optional[float] = None
    datum: Optional[float] = None

    def __post_init__(self):
        if (self.h is None) == (self.d is None):
            raise ValueError("give exactly one of h, d")
        for name in ("R", "h", "d", "datum"):
            val = getattr(self, name)
            if isinstance(val, complex) or np.iscomplexobj(val):
                raise ValueError(
                    f"{name} must be real: a hole off the symmetry axis has no solution"
                )
        if not self.R > 0:
            raise ValueError(f"R must be positive, got {self.R!r}")
        if self.d is not None and self.d < 0:
            raise ValueError(f"gap d must be non-negative, got {self.d!r}")
        if self.h is not None and not self.h > 0:
            raise ValueError(f"h must be positive, got {self.h!r}")

    def center(self, outer: LaurentMap) -> float:
        if self.h is not None:
            return float(self.h)
        datum = eval_laurent(outer, 1.0).real if self.datum is None else self.datum
        return float(datum + self.d + self.R)


@dataclass(frozen=True)
class HoleImage:
    h: float
    R: float
    epsilon: float


@dataclass(frozen=True)
class CompositeMap:
    outer: LaurentMap
    bilinear: BilinearParams
    geometry: CirclePairGeometry
    hole: HoleImage

    @property
    def e(self) -> float:
        return self.geometry.e

    @property
    def r1(self) -> float:
        return self.geometry.r1

    @property
    def h(self) -> float:
        return self.hole.h

    @property
    def R(self) -> float:
        return self.hole.R

    @property
    def epsilon(self) -> float:
        return self.hole.epsilon

    @property
    def s(self) -> float:
        return self.geometry.s

    def __call__(self, zeta):
        return eval_composite(self, zeta)


# -- hole geometry ------------------------------------------------------------


def hole_center(outer: LaurentMap, e: float) -> float:
    """h = C (e + sum c_n / e**n)."""
    terms = [e] + [c / e**n for n, c in enumerate(outer.coeffs, start=1)]
    return outer.scale * math.fsum(terms)


def hole_radius(outer: LaurentMap, e: float, r1: float) -> float:
    """R = C (1 - sum n c_n / e**(n+1)) r1."""
    return _radius_factor(outer, e) * r1


def _radius_factor(outer, e):
    terms = [1.0] + [-n * c / e ** (n + 1) for n, c in enumerate(outer.coeffs, start=1)]
    return outer.scale * math.fsum(terms)


def solve_e(
    outer: LaurentMap,
    h: float,
    tol: float = RESIDUAL_TOL,
    max_iter: int = MAX_ITER,
) -> float:
    """
    Solve e + sum c_n / e**n = h / C for the real root e > 1.

    Direct iteration e_k = h/C - sum c_n / e_{k-1}**n starting from h/C. If
    it has not settled within ``max_iter`` steps, bisection on
    [max(1, h/C - sum|c_n|), h/C + sum|c_n|] takes over; for e >= 1 the
    residual is <= 0 at the left end and >= 0 at the right end.
    """
    target = h / outer.scale
    coeffs = outer.coeffs

    def residual(e):
        return math.fsum([e, -target] + [c / e**n for n, c in enumerate(coeffs, start=1)])

    def correction(e):
        return math.fsum([target] + [-c / e**n for n, c in enumerate(coeffs, start=1)])

    if not coeffs:
        return float(target)

    e = target
    for _ in range(max_iter):
        if not (math.isfinite(e) and e > 0):
            break
        e_new = correction(e)
        if abs(e_new - e) < STEP_TOL * max(1.0, abs(e_new)) and abs(residual(e_new)) < tol:
            return e_new
        e = e_new

    spread = math.fsum(abs(c) for c in coeffs)
    lo, hi = max(1.0, target - spread), target + spread
    if not lo < hi:
        raise NoRoot(f"empty bracket [{lo!r}, {hi!r}] for h/C = {target!r}")
    g_lo, g_hi = residual(lo), residual(hi)
    if g_lo == 0.0:
        return lo
    if g_lo * g_hi > 0:
        raise NoRoot(f"no sign change of the centre equation on [{lo!r}, {hi!r}]")
    try:
        root, info = optimize.bisect(
            residual, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=400, full_output=True
        )
    except RuntimeError as exc:
        raise NonConvergence(str(exc)) from exc
    if not info.converged or abs(residual(root)) > max(tol, 1e-12 * root):
        raise NonConvergence(f"bisection stopped at e={root!r}, residual {residual(root):.3e}")
    return float(root)


def solve_r1(outer: LaurentMap, e: float, R: float) -> float:
    """r1 = R / (C (1 - sum n c_n / e**(n+1)))."""
    factor = _radius_factor(outer, e)
    if abs(factor) < 1e-12:
        raise DegenerateDerivative(f"F'(e) = {factor!r} at e = {e!r}")
    return R / factor


# -- construction -------------------------------------------------------------


def _assemble(outer, params, geom):
    return CompositeMap(
        outer=outer,
        bilinear=params,
        geometry=geom,
        hole=HoleImage(
            h=hole_center(outer, geom.e),
            R=hole_radius(outer, geom.e, geom.r1),
            epsilon=geom.epsilon,
        ),
    )


def build_composite(outer: LaurentMap, target: HoleTarget) -> CompositeMap:
    """Chain solve_e, solve_r1 and solve_bilinear_params for ``target``."""
    h = target.center(outer)
    e = solve_e(outer, h)
    r1 = solve_r1(outer, e, target.R)
    if not r1 > 0:
        raise DegenerateDerivative(f"F'(e) <= 0 gives r1 = {r1!r}")
    if not e > 1.0 + r1:
        raise OverlappingCircles(
            f"hole (h={h!r}, R={target.R!r}) needs e={e!r}, r1={r1!r}: it reaches curve L"
        )
    params, geom = solve_bilinear_params(e, r1)
    cm = _assemble(outer, params, geom)
    check_composite(cm, h=h, R=target.R)
    return cm


def composite_from_geometry(outer: LaurentMap, e: float, r1: float) -> CompositeMap:
    """Composite map for a prescribed w-plane circle |w - e| = r1."""
    params, geom = solve_bilinear_params(e, r1)
    return _assemble(outer, params, geom)


def composite_from_bilinear(outer: LaurentMap, params: BilinearParams) -> CompositeMap:
    return _assemble(outer, params, geometry_from_params(params))


# -- evaluation ----------------------------------------------------------------


def eval_composite(cm: CompositeMap, zeta):
    """z = F(f(zeta)) on the closed annulus."""
    arr = np.asarray(zeta, dtype=complex)
    mod = np.abs(arr)
    if np.any(mod > 1.0 + ANNULUS_TOL) or np.any(mod < cm.bilinear.rho1 - ANNULUS_TOL):
        raise DomainViolation(
            f"zeta outside the annulus {cm.bilinear.rho1!r} <= |zeta| <= 1"
        )
    w = eval_bilinear(cm.bilinear, arr)
    return eval_laurent(cm.outer, w)


def inner_hole_image(cm: CompositeMap, theta):
    """F(e + r1 e^{i theta}), the exact image of the inner w-circle."""
    w = cm.e + cm.r1 * np.exp(1j * np.asarray(theta, dtype=float))
    return eval_laurent(cm.outer, w)


@dataclass(frozen=True)
class AnnulusGrid:
    """
    Image of a polar grid. ``points[j, k]`` is the image of
    rho_j exp(i theta_k); cells at the pole hold ``inf`` and are flagged in
    ``at_infinity``.
    """

    radii: np.ndarray
    angles: np.ndarray
    points: np.ndarray
    at_infinity: np.ndarray


def annulus_grid(cm: CompositeMap, rings: int, rays: int) -> AnnulusGrid:
    """Map rings log-spaced in [rho1, 1] and uniformly spaced rays."""
    if rings < 2 or rays < 3:
        raise ValueError("need rings >= 2 and rays >= 3")
    rho1 = cm.bilinear.rho1
    radii = rho1 ** (1.0 - np.arange(rings) / (rings - 1))
    radii[0], radii[-1] = rho1, 1.0
    angles = 2.0 * np.pi * np.arange(rays) / rays
    zeta = radii[:, None] * np.exp(1j * angles)[None, :]
    lam = cm.bilinear.lam
    pole = np.abs(lam * zeta - 1.0) < POLE_TOL * lam
    points = np.full(zeta.shape, complex(np.inf, 0.0))
    if np.any(~pole):
        points[~pole] = eval_composite(cm, zeta[~pole])
    return AnnulusGrid(radii, angles, points, pole)


def check_composite(cm: CompositeMap, tol: float = 1e-10, h=None, R=None) -> None:
    """
    Raise if the hole data disagree with the w-plane geometry, or with an
    explicitly requested (h, R).
    """
    if h is None:
        h = hole_center(cm.outer, cm.e)
    if R is None:
        R = hole_radius(cm.outer, cm.e, cm.r1)
    scale = max(1.0, abs(cm.h))
    if abs(h - cm.h) > tol * scale or abs(R - cm.R) > tol * max(1.0, cm.R):
        raise MappingError(f"stored hole (h={cm.h!r}, R={cm.R!r}) != recomputed ({h!r}, {R!r})")
    if not 0.0 < cm.epsilon < 1.0:
        raise MappingError(f"epsilon = {cm.epsilon!r} outside (0, 1)")

