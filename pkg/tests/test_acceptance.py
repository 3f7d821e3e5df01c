"""
Acceptance gate. Each test checks one criterion at its fixed tolerance and
records a PASS/FAIL line that is printed in the pytest terminal summary.

Run on its own with ``pytest tests/test_acceptance.py -v``.
"""

import time

import numpy as np
import pytest

from twohole.bilinear import bilinear_inverse, eval_bilinear, solve_bilinear_params
from twohole.composite import HoleTarget, build_composite, composite_from_geometry
from twohole.discrepancy import (
    asymptotic_amplitude,
    closed_form_for,
    discrepancy_at,
    max_discrepancy,
    reproduce_table1,
    table1_outer,
    touching_limit,
)
from twohole.errors import OverlappingCircles
from twohole.outer import (
    HypotrochoidSpec,
    LaurentMap,
    PolygonSpec,
    eval_laurent,
    hypotrochoid_bounds,
    hypotrochoid_map,
    sample_boundary,
    schwarz_christoffel_map,
)

# published grid: (R, d) -> (epsilon, delta_max)
TABLE1 = {
    (0.25, 1e-5): (0.2600, 0.0294), (0.25, 0.1): (0.2248, 0.0170), (0.25, 1.0): (0.1151, 0.0012),
    (0.5, 1e-5): (0.3804, 0.0522), (0.5, 0.1): (0.3474, 0.0350), (0.5, 1.0): (0.2051, 0.0036),
    (1.0, 1e-5): (0.5261, 0.0794), (1.0, 0.1): (0.4974, 0.0587), (1.0, 1.0): (0.3382, 0.0087),
    (2.0, 1e-5): (0.6764, 0.1033), (2.0, 0.1): (0.6537, 0.0810), (2.0, 1.0): (0.5030, 0.0164),
    (4.0, 1e-5): (0.8025, 0.1181), (4.0, 0.1): (0.7866, 0.0956), (4.0, 1.0): (0.6679, 0.0240),
    (8.0, 1e-5): (0.8894, 0.1247), (8.0, 0.1): (0.8796, 0.1023), (8.0, 1.0): (0.8003, 0.0288),
    (128.0, 1e-5): (0.9922, 0.1280), (128.0, 0.1): (0.9915, 0.1058), (128.0, 1.0): (0.9846, 0.0320),
}

EPS_TOL = 1e-4
DELTA_TOL = 2e-3
FIG6_REL_TOL = 0.10
FIG6 = {3: 0.02524, 4: 0.0089, 5: 0.0034}


@pytest.fixture(scope="module")
def table():
    start = time.perf_counter()
    rows = reproduce_table1()
    return rows, time.perf_counter() - start


def test_c1_table1_epsilon(table, criterion):
    rows, elapsed = table
    worst = max(abs(r.epsilon - TABLE1[(r.R, r.d)][0]) for r in rows)
    ok = len(rows) == 21 and worst <= EPS_TOL and elapsed < 1.0
    criterion("C1 Table 1 epsilon", ok, f"21 cells, max |err| {worst:.2e} <= {EPS_TOL:g}, {elapsed:.3f}s < 1s")
    assert ok


def test_c2_table1_delta_max(table, criterion):
    rows, _ = table
    worst = max(abs(r.delta_max - TABLE1[(r.R, r.d)][1]) for r in rows)
    ok = len(rows) == 21 and worst <= DELTA_TOL
    criterion("C2 Table 1 delta_max", ok, f"max |err| {worst:.2e} <= {DELTA_TOL:g}")
    assert ok


def test_c3_figure3_and_figure4_captions(criterion):
    outer = table1_outer()
    fig3 = [max_discrepancy(build_composite(outer, HoleTarget(R=R, d=0.1))).delta_max for R in (0.25, 1.0, 2.0)]
    fig4 = [max_discrepancy(build_composite(outer, HoleTarget(R=1.0, d=d))).delta_max for d in (1e-5, 0.1, 1.0)]
    errs = [abs(a - b) for a, b in zip(fig3 + fig4, [0.0170, 0.0587, 0.0810, 0.0794, 0.0587, 0.0087])]
    ok = max(errs) <= DELTA_TOL
    criterion("C3 Figure 3/4 captions", ok, f"max |err| {max(errs):.2e} <= {DELTA_TOL:g}")
    assert ok


def _figure6(datum_from_scale):
    out = {}
    for n in FIG6:
        outer = schwarz_christoffel_map(PolygonSpec(n, terms=5, C=1.0))
        datum = outer.scale if datum_from_scale else None
        cm = build_composite(outer, HoleTarget(R=1.0, d=1.0, datum=datum))
        out[n] = max_discrepancy(cm).delta_max
    return out


def test_c4_figure6_schwarz_christoffel(criterion):
    # gap measured from the stated length C = 1 (see README, "Gap convention")
    got = _figure6(datum_from_scale=True)
    rel = {n: abs(got[n] - FIG6[n]) / FIG6[n] for n in FIG6}
    ok = max(rel.values()) <= FIG6_REL_TOL
    detail = ", ".join(f"n={n}: {got[n]:.5f} vs {FIG6[n]}" for n in FIG6)
    criterion("C4 Figure 6 (gap from C)", ok, f"{detail}; max rel err {max(rel.values()):.1%}")
    assert ok


@pytest.mark.xfail(strict=True, reason="gap measured from Re F(1) (polygon vertex) does not reproduce Figure 6")
def test_c4_figure6_with_gap_from_vertex(criterion):
    got = _figure6(datum_from_scale=False)
    rel = {n: abs(got[n] - FIG6[n]) / FIG6[n] for n in FIG6}
    detail = ", ".join(f"n={n}: {got[n]:.5f}" for n in FIG6)
    criterion(
        "C4 Figure 6 (gap from Re F(1)), reported miss",
        max(rel.values()) <= FIG6_REL_TOL,
        f"{detail}; max rel err {max(rel.values()):.1%}",
        fail_word="MISS",
    )
    assert max(rel.values()) <= FIG6_REL_TOL


# -- C5 property suite --------------------------------------------------------------


def _annulus_sample(p, count, rng):
    r = np.sqrt(rng.uniform(p.rho1**2, 1.0, 3 * count))
    z = r * np.exp(2j * np.pi * rng.uniform(size=3 * count))
    return z[np.abs(z - p.pole) > 1e-3 * p.pole][:count]


def test_c5a_bilinear_properties(criterion):
    rng = np.random.default_rng(11)
    theta = 2 * np.pi * np.arange(360) / 360
    inv = circ = inner = 0.0
    for e, r1 in ((2.0, 0.5), (2.78016, 0.31993), (161.25, 160.0), (1.5 + 1e-4, 0.5)):
        p, geom = solve_bilinear_params(e, r1)
        z = _annulus_sample(p, 1000, rng)
        w = eval_bilinear(p, z)
        inv = max(inv, np.abs(eval_bilinear(p, w) - z).max(), np.abs(bilinear_inverse(p, w) - z).max())
        circ = max(circ, np.abs(np.abs(eval_bilinear(p, np.exp(1j * theta))) - 1).max())
        img = eval_bilinear(p, p.rho1 * np.exp(1j * theta))
        inner = max(inner, (np.abs(np.abs(img - geom.e) - geom.r1) / max(1.0, geom.r1)).max())
    ok = inv < 1e-12 and circ < 1e-12 and inner < 1e-10
    criterion("C5a bilinear involution/circles", ok, f"involution {inv:.1e}, unit {circ:.1e}, inner {inner:.1e}")
    assert ok


def test_c5b_two_path_discrepancy(criterion):
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 6))
        lmap = hypotrochoid_map(HypotrochoidSpec(n, 1.0 / n**2, rng.uniform(0.2, 3.0)))
        r1 = rng.uniform(0.01, 10.0)
        cm = composite_from_geometry(lmap, 1.0 + r1 + rng.uniform(1e-4, 5.0), r1)
        theta = rng.uniform(-np.pi, np.pi)
        worst = max(worst, abs(closed_form_for(cm, theta) - discrepancy_at(cm, theta)))
    ok = worst < 1e-12
    criterion("C5b closed form == numeric", ok, f"max diff {worst:.1e} on 100 inputs")
    assert ok


def test_c5c_conformality(criterion):
    cm = build_composite(table1_outer(), HoleTarget(R=1.0, d=0.1))
    rng = np.random.default_rng(3)
    rho1, pole = cm.bilinear.rho1, cm.bilinear.pole
    worst, count = 0.0, 0
    while count < 1000:
        r = rho1 + (1 - rho1) * rng.uniform(0.001, 0.999)
        z = r * np.exp(2j * np.pi * rng.uniform())
        if abs(z - pole) < 1e-2:
            continue
        h = 1e-6 * max(1.0, abs(z))
        fx = (cm(z + h) - cm(z - h)) / (2 * h)
        fy = (cm(z + 1j * h) - cm(z - 1j * h)) / (2 * h)
        worst = max(worst, abs(fy - 1j * fx) / abs(fx))
        count += 1
    ok = worst < 1e-5
    criterion("C5c Cauchy-Riemann residual", ok, f"max {worst:.1e} at 1000 points")
    assert ok


def test_c5d_envelope(table, criterion):
    rows, _ = table
    top = max(r.delta_max for r in rows)
    ok = top < touching_limit(2, 0.8)
    criterion("C5d delta_max < C/n^2 = 0.2", ok, f"largest {top:.4f}")
    assert ok


def test_c5e_asymptotic_ratio(criterion):
    ratios = []
    for n in (1, 2, 3, 4):
        lmap = hypotrochoid_map(HypotrochoidSpec(n, 1.0 / n**2, 1.0))
        for e in (2.0, 3.0, 10.0):
            eps = 0.0125
            cm = composite_from_geometry(lmap, e, eps * e)
            ratios.append(max_discrepancy(cm).delta_max / asymptotic_amplitude(n, 1.0, e, eps))
    ok = all(0.95 <= r <= 1.05 for r in ratios)
    criterion("C5e asymptotic ratio at eps=0.0125", ok, f"range [{min(ratios):.4f}, {max(ratios):.4f}]")
    assert ok


def test_c5f_sc_symmetry(criterion):
    rng = np.random.default_rng(9)
    worst = 0.0
    for n in (3, 4, 5, 6, 8):
        for rotated in (False, True):
            lmap = schwarz_christoffel_map(PolygonSpec(n, 5, 1.0, rotated))
            w = (1 + 4 * rng.uniform(size=300)) * np.exp(2j * np.pi * rng.uniform(size=300))
            rot = np.exp(2j * np.pi / n)
            worst = max(worst, np.abs(eval_laurent(lmap, rot * w) - rot * eval_laurent(lmap, w)).max())
    ok = worst < 1e-12
    criterion("C5f SC n-fold symmetry", ok, f"max {worst:.1e}")
    assert ok


# -- C6 degenerate cases ----------------------------------------------------------


def test_c6_degenerate_oracles(criterion):
    cm = build_composite(LaurentMap(1.7), HoleTarget(R=0.6, h=4.0))
    theta = np.linspace(0, 2 * np.pi, 721)
    ident = np.abs(discrepancy_at(cm, theta)).max()

    try:
        solve_bilinear_params(1.5, 0.5)
        rejected = False
    except OverlappingCircles:
        rejected = True

    spec = HypotrochoidSpec(3, 0.0, 2.0)
    r_in, r_out = hypotrochoid_bounds(spec)
    mod = np.abs(sample_boundary(hypotrochoid_map(spec), 360))
    circle = r_in == r_out == 2.0 and np.abs(mod - 2.0).max() < 1e-14

    ok = ident < 1e-14 and rejected and circle
    criterion(
        "C6 degenerate oracles",
        ok,
        f"identity delta {ident:.1e}, e=1+r1 rejected={rejected}, m=0 circle={circle}",
    )
    assert ok
