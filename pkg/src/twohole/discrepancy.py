"""
How far the mapped inner circle is from a true circle.

    Delta(theta) = F(e + r1 e^{i theta}) - (h + R e^{i theta})

For the straight-edged hypotrochoid m = 1/n**2 this has a closed form

    Delta = C / (n**2 e**n) * [n eps x - 1 + (1 + eps x)**-n],  x = e^{i theta}

whose second-order expansion and touching-circle limit are also provided.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import optimize

from .composite import CompositeMap, HoleTarget, build_composite, inner_hole_image
from .errors import WrongFamily
from .outer import HypotrochoidSpec, LaurentMap, hypotrochoid_map, straight_edge_m

COARSE_SAMPLES = 720
THETA_RESOLUTION = 1e-10

TABLE1_R = (0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 128.0)
TABLE1_D = (1e-5, 0.1, 1.0)


@dataclass(frozen=True)
class DiscrepancyReport:
    theta_star: float
    delta_max: float
    thetas: np.ndarray
    deltas: np.ndarray
    asymptotic_amplitude: Optional[float] = None
    touching_estimate: Optional[float] = None

    @property
    def samples(self):
        return list(zip(self.thetas.tolist(), self.deltas.tolist()))


def discrepancy_at(cm: CompositeMap, theta):
    """Delta(theta) from direct evaluation of the outer map."""
    theta = np.asarray(theta, dtype=float)
    out = inner_hole_image(cm, theta) - (cm.h + cm.R * np.exp(1j * theta))
    return complex(out) if np.ndim(out) == 0 else out


def _check_straight_edge(n, m):
    if m is not None and not math.isclose(m, straight_edge_m(n), rel_tol=1e-12, abs_tol=1e-15):
        raise WrongFamily(f"closed form needs m = 1/n^2 = {straight_edge_m(n)!r}, got m = {m!r}")


def discrepancy_closed_form(n: int, C: float, e: float, eps: float, theta, m: Optional[float] = None):
    """
    Closed-form Delta for F(w) = C (w + w**-n / n**2).

    Pass ``m`` to have the family checked; anything other than 1/n**2 raises
    WrongFamily.
    """
    _check_straight_edge(n, m)
    x = np.exp(1j * np.asarray(theta, dtype=float))
    ex = eps * x
    # log1p keeps the bracket accurate when eps is small
    bracket = n * ex - 1.0 + np.exp(-n * np.log1p(ex))
    out = C / (n**2 * e**n) * bracket
    return complex(out) if np.ndim(out) == 0 else out


def closed_form_for(cm: CompositeMap, theta):
    """Closed-form Delta for a composite map; the outer map must be m = 1/n^2."""
    fam = cm.outer.family
    if not isinstance(fam, HypotrochoidSpec):
        raise WrongFamily("closed form only covers hypotrochoid outer maps")
    return discrepancy_closed_form(fam.n, fam.C, cm.e, cm.epsilon, theta, m=fam.m)


def _modulus(cm):
    return lambda t: abs(discrepancy_at(cm, t))


def max_discrepancy(cm: CompositeMap, coarse_samples: int = COARSE_SAMPLES) -> DiscrepancyReport:
    """
    max |Delta| over the circle: uniform scan, then golden-section refinement
    around the best sample. theta = pi is always checked.
    """
    if coarse_samples < 64:
        raise ValueError("coarse_samples must be at least 64")
    thetas = 2.0 * np.pi * np.arange(coarse_samples) / coarse_samples
    deltas = discrepancy_at(cm, thetas)
    mods = np.abs(deltas)
    k = int(np.argmax(mods))
    step = thetas[1]
    best_theta, best = float(thetas[k]), float(mods[k])

    f = _modulus(cm)
    left, mid, right = best_theta - step, best_theta, best_theta + step
    if f(left) < f(mid) > f(right):
        t, neg = optimize.golden(
            lambda t: -f(t), brack=(left, mid, right), tol=THETA_RESOLUTION / max(1.0, abs(mid)), full_output=True
        )[:2]
        if -neg > best:
            best_theta, best = float(t), float(-neg)

    at_pi = f(math.pi)
    if at_pi >= best:
        best_theta, best = math.pi, at_pi

    best_theta = math.remainder(best_theta, 2.0 * math.pi)

    amplitude = touching = None
    fam = cm.outer.family
    if isinstance(fam, HypotrochoidSpec) and fam.m and math.isclose(fam.m, straight_edge_m(fam.n)):
        amplitude = asymptotic_amplitude(fam.n, fam.C, cm.e, cm.epsilon)
        touching = touching_max_discrepancy(fam.n, fam.C, cm.r1)
    return DiscrepancyReport(best_theta, best, thetas, deltas, amplitude, touching)


def asymptotic_amplitude(n: int, C: float, e: float, eps: float, as_printed: bool = False) -> float:
    """
    Leading small-eps amplitude of |Delta|: C (n+1) eps**2 / (2 n e**n).

    ``as_printed=True`` returns the variant C/(n^2 e^n) (eps^2/2)(1 + 1/n),
    which is smaller by a factor n**2 and kept only for comparison.
    """
    if as_printed:
        return C / (n**2 * e**n) * eps**2 / 2.0 * (1.0 + 1.0 / n)
    return C * (n + 1) * eps**2 / (2.0 * n * e**n)


def touching_max_discrepancy(n: int, C: float, r1: float, as_printed: bool = False) -> float:
    """
    Delta at theta = pi when the w-circles touch (e = 1 + r1):

        C/n^2 [1 - ((n+1) r1 + 1) / (1 + r1)**(n+1)]

    ``as_printed=True`` uses the exponent n in the denominator instead; that
    variant goes negative for small r1.
    """
    power = n if as_printed else n + 1
    return C / n**2 * (1.0 - ((n + 1) * r1 + 1.0) / (1.0 + r1) ** power)


def touching_limit(n: int, C: float) -> float:
    """Upper envelope C/n^2 of Delta_max as r1 grows without bound."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return C / n**2


def table1_outer() -> LaurentMap:
    """F(w) = 0.8 (w + w**-2 / 4): m = 1/n^2 with n = 2, scaled to r_out = 1."""
    n = 2
    m = straight_edge_m(n)
    return hypotrochoid_map(HypotrochoidSpec(n, m, 1.0 / (1.0 + m)))


@dataclass(frozen=True)
class Table1Row:
    R: float
    d: float
    epsilon: float
    delta_max: float


def reproduce_table1(
    radii=TABLE1_R, gaps=TABLE1_D, coarse_samples: int = COARSE_SAMPLES
) -> list[Table1Row]:
    """epsilon and Delta_max over the R x d grid, ordered by R then d."""
    outer = table1_outer()
    rows = []
    for R in radii:
        for d in gaps:
            cm = build_composite(outer, HoleTarget(R=R, d=d))
            rep = max_discrepancy(cm, coarse_samples)
            rows.append(Table1Row(R, d, cm.epsilon, rep.delta_max))
    return rows
