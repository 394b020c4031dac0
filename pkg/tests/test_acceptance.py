"""Acceptance criteria.

Each test exercises one acceptance criterion at its stated tolerance and
runtime budget and prints one pass/fail line (visible with ``pytest -s``).
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from pu21 import core, ford, limit, moduli, spheres
from pu21.moduli import ALPHA2_LIM, Params

# warm the caches that are shared across criteria (imports, first numpy call)
_ = moduli.build_group(Params(0.1, 0.1))


def _report(n, ok, elapsed, budget, desc):
    verdict = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {n:2d} {verdict}  [{elapsed:8.4f}s < {budget:g}s]  {desc}")
    assert ok, f"criterion {n} failed: {desc}"
    assert elapsed < budget, f"criterion {n} exceeded budget: {elapsed}s >= {budget}s"


def test_criterion_01_exact_values():
    t0 = time.perf_counter()
    vals = (
        moduli.poly_D(Fraction(4), Fraction(4)),
        moduli.poly_D(Fraction(4), Fraction(3, 2)),
        moduli.poly_D(Fraction(3), Fraction(4)),
        moduli.poly_G(Fraction(4), Fraction(3, 2)),
    )
    elapsed = time.perf_counter() - t0
    ok = vals == (1225, 0, 0, 0)
    _report(1, ok, elapsed, 1e-3, "exact rational D(4,4)=1225, D(4,3/2)=D(3,4)=G(4,3/2)=0")


def test_criterion_02_generator_identities():
    rng = np.random.default_rng(101)
    pts = [Params(rng.uniform(-math.pi / 2 + 1e-6, math.pi / 2 - 1e-6),
                  rng.uniform(-math.pi / 2 + 1e-6, math.pi / 2 - 1e-6))
           for _ in range(100)]
    t0 = time.perf_counter()
    worst_tr = worst_proj = 0.0
    for p in pts:
        gd = moduli.build_group(p)
        worst_tr = max(worst_tr, abs(gd.A.trace - 3), abs((gd.A @ gd.B).trace - 3),
                       abs(gd.S.trace), abs(gd.T.trace))
        st, ts = (gd.S @ gd.T).m, (gd.T @ gd.S).m
        for got, want in ((st, gd.A.m), (ts, gd.B.m)):
            i = np.unravel_index(np.argmax(np.abs(want)), (3, 3))
            worst_proj = max(worst_proj,
                             float(np.abs(got - (got[i] / want[i]) * want).max()))
        cube = gd.S.power(3).m
        worst_proj = max(worst_proj,
                         float(np.abs(cube - cube[0, 0] * np.eye(3)).max()))
        sti = (gd.S @ gd.T.inverse()).trace
        worst_tr = max(worst_tr,
                       abs(sti - p.x1sq * p.x24 * np.exp(1j * p.alpha1 / 3)))
    elapsed = time.perf_counter() - t0
    ok = worst_tr <= 1e-12 and worst_proj <= 1e-10
    _report(2, ok, elapsed, 1.0,
            f"generator identities at 100 params (tr err {worst_tr:.2e}, "
            f"proj err {worst_proj:.2e})")


def test_criterion_03_quartic_factorisations():
    t0 = time.perf_counter()
    c0 = moduli.quartic_L(Params(0.0, 0.0))
    cl = moduli.quartic_L(Params(0.0, ALPHA2_LIM))
    coeff_err = max(
        float(np.abs(c0 - np.array([25.0, 0, -70, 0, 49])).max()),
        float(np.abs(cl - np.array([25.0, 0, -30, 0, 9])).max()),
    )
    r0 = moduli.real_roots_quartic(list(c0))
    rl = moduli.real_roots_quartic(list(cl))
    elapsed = time.perf_counter() - t0
    ok = (
        coeff_err <= 1e-12
        and [m for _, m in r0] == [2, 2]
        and [m for _, m in rl] == [2, 2]
        and abs(r0[1][0] - math.sqrt(7 / 5)) < 1e-10
        and abs(r0[0][0] + math.sqrt(7 / 5)) < 1e-10
        and abs(rl[1][0] - math.sqrt(3 / 5)) < 1e-10
        and abs(rl[0][0] + math.sqrt(3 / 5)) < 1e-10
    )
    _report(3, ok, elapsed, 1e-2,
            f"L(0,0)=(5T^2-7)^2, L(0,lim)=(5T^2-3)^2, double roots (coeff err {coeff_err:.2e})")


def test_criterion_04_discriminant_identity():
    rng = np.random.default_rng(102)
    t_lim = Fraction(int(round(math.tan(math.pi / 12) * 10**6)) - 1, 10**6)
    t0 = time.perf_counter()
    checked = 0
    for _ in range(1000):
        # random rational point of R via exact tangent half-angle parameters
        th = Fraction(int(rng.integers(-t_lim.numerator, t_lim.numerator + 1)), 10**6)
        y = Fraction(int(rng.integers(1_500_000, 4_000_001)), 10**6)
        c1 = (1 - th**2) / (1 + th**2)
        s1 = 2 * th / (1 + th**2)
        x1s = 2 * c1
        closed = moduli.discriminant_closed_xy(x1s, y)
        alg = moduli.quartic_resultant_discriminant(
            moduli.quartic_coeffs_xsy(x1s, s1, y)
        )
        assert closed == alg  # exact, hence within relative 1e-9
        checked += 1
    elapsed = time.perf_counter() - t0
    _report(4, checked == 1000, elapsed, 1.0,
            "closed-form resultant == degree-4 discriminant expansion "
            "(exact on 1000 rational points of R)")


def test_criterion_05_region_oracle_equivalence():
    n = 200
    a1 = np.linspace(-math.pi / 6, math.pi / 6, n)
    a2 = np.linspace(-ALPHA2_LIM, ALPHA2_LIM, n)
    A1, A2 = np.meshgrid(a1, a2, indexing="ij")
    t0 = time.perf_counter()
    d = moduli.poly_D((2 * np.cos(A1)) ** 2, (2 * np.cos(A2)) ** 2)
    keep = np.abs(d) > 1e-4  # margin around the boundary of Z
    qmin = spheres.quartic_min_grid(A1[keep], A2[keep])
    smin = spheres.meridian_scan_grid(A1[keep], A2[keep], resolution=1e-3, chunk=256)
    agree = (qmin <= 0) == (smin <= 0)
    elapsed = time.perf_counter() - t0
    ok = bool(agree.all())
    _report(5, ok, elapsed, 60.0,
            f"triple-intersection verdicts agree at {int(agree.sum())}/{agree.size} "
            "grid points of R (quartic vs meridian scan)")


def test_criterion_06_limit_tangency_and_triple_points():
    p = Params(0.0, ALPHA2_LIM)
    gd = moduli.build_group(p)
    p_st_inv = np.array(
        [-0.25 + 1j * math.sqrt(15) / 4, math.sqrt(3) / 4 + 1j * math.sqrt(5) / 4, 1]
    )
    p_s_inv_t = np.array(
        [-0.25 - 1j * math.sqrt(15) / 4, -math.sqrt(3) / 4 + 1j * math.sqrt(5) / 4, 1]
    )
    t0 = time.perf_counter()
    mod = abs(core.hermitian_product(p_st_inv, gd.pBA))
    tri = spheres.triple_intersection(p)
    lifts = sorted((spheres.geo_lift(c) for c in tri.points),
                   key=lambda v: v[0].imag)
    elapsed = time.perf_counter() - t0
    ok = (
        abs(mod - 1.0) <= 1e-12
        and len(tri.points) == 2
        and np.abs(lifts[0] - p_s_inv_t).max() <= 1e-12
        and np.abs(lifts[1] - p_st_inv).max() <= 1e-12
        and all(abs(abs(c.alpha) - math.acos(0.25)) < 1e-12 for c in tri.points)
        and all(abs(c.beta - math.pi / 2) < 1e-12 for c in tri.points)
        and all(abs(c.w - 1 / math.sqrt(2)) < 1e-12 for c in tri.points)
    )
    _report(6, ok, elapsed, 1e-2,
            f"limit tangency modulus 1 ({abs(mod-1):.1e}) and the two triple "
            "points g(+-arccos(1/4), pi/2, 1/sqrt2)")


def test_criterion_07_cygan_closed_forms():
    rng = np.random.default_rng(103)
    pts = [Params(rng.uniform(-math.pi / 2 + 1e-4, math.pi / 2 - 1e-4),
                  rng.uniform(-math.pi / 2 + 1e-4, math.pi / 2 - 1e-4))
           for _ in range(100)]
    pB = core.HeisPoint(0j, 0.0)
    t0 = time.perf_counter()
    worst = 0.0
    for p in pts:
        fam = spheres.SphereFamily(p)
        for k in range(-5, 6):
            d4p = core.cygan_distance(fam.plus(k).center, pB) ** 4
            d4m = core.cygan_distance(fam.minus(k).center, pB) ** 4
            cfp = spheres.closed_form_d4_plus(p.x14, p.x24, k)
            cfm = spheres.closed_form_d4_minus(p.x14, p.x24, k)
            worst = max(worst, abs(d4p - cfp) / max(1.0, cfp),
                        abs(d4m - cfm) / max(1.0, cfm))
    exact = spheres.closed_form_d4_minus(Fraction(4), Fraction(3, 2), 1) == 16
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-12 and exact
    _report(7, ok, elapsed, 1.0,
            f"distance closed forms vs metric, k in [-5,5], 100 params "
            f"(err {worst:.2e}); d^4 = 16 exactly at (4, 3/2)")


def test_criterion_08_fan_ridge_solutions():
    t0 = time.perf_counter()
    fr = limit.fan_ridge_intersection()
    scan = limit.fan_ridge_residual_scan(extent=3.0, resolution=1e-3)
    elapsed = time.perf_counter() - t0
    res = max(fr["residuals"].values())
    ok = (
        fr["points"]["p_ST-1"] == (0.0, limit.SQRT15 / 4)
        and fr["points"]["q_0"] == (0.0, -limit.SQRT15 / 4)
        and res <= 1e-12
        and scan["both_solutions_found"]
        and scan["zero_clusters_touch_solutions"]
    )
    _report(8, ok, elapsed, 10.0,
            f"fan-ridge system solves to (0, +-sqrt15/4) (res {res:.1e}); "
            "1e-3 residual scan finds no other zeros")


def test_criterion_09_cell_complex_census():
    t0 = time.perf_counter()
    cx, rep = limit.boundary_cell_complex()
    oc = limit.octahedron()
    pairing_res = oc.post_merge.certify_pairings(1e-10)
    elapsed = time.perf_counter() - t0
    ok = (
        (rep["n_vertices"], rep["n_edges"], rep["n_faces"]) == (5, 11, 8)
        and rep["euler_characteristic"] == 2
        and len(oc.post_merge.pairings) == 4
    )
    _report(9, ok, elapsed, 10.0,
            f"boundary complex 5/11/8 with chi=2; octahedron has 4 post-merge "
            f"pairings certified on vertex lifts (res {pairing_res:.1e})")


def test_criterion_10_word_theory():
    t0 = time.perf_counter()
    relator = ford.rel_word([("s", 1), ("t", 1)], [("t", 1), ("s", 1), ("t", 1)])
    rep0 = ford.freeness_probe(Params(0.0, 0.0), 8)
    repl = ford.freeness_probe(Params(0.0, ALPHA2_LIM), 8)
    elapsed = time.perf_counter() - t0
    min_dist = min(rep0["min_distance_st_words"], repl["min_distance_st_words"])
    ok = (
        relator == ()
        and not rep0["counterexamples"]
        and not repl["counterexamples"]
        and min_dist >= 1e-6
    )
    _report(10, ok, elapsed, 30.0,
            f"rel(st,tst) reduces to 1; all reduced words of length <= 8 stay "
            f">= 1e-6 from the identity (min {min_dist:.3g})")


def test_criterion_11_figure_topology():
    from collections import deque

    n = 200
    g = math.pi / 2 - 1e-6
    a = np.linspace(-g, g, n)
    t0 = time.perf_counter()
    A1, A2 = np.meshgrid(a, a, indexing="ij")
    tags, _, _ = moduli.region_grid(A1, A2)
    z = (tags == "Z_interior") | (tags == "Z_boundary")
    # 4-connectivity components of the Z cells
    lab = np.full(z.shape, -1)
    comps = 0
    for i0 in range(n):
        for j0 in range(n):
            if z[i0, j0] and lab[i0, j0] < 0:
                dq = deque([(i0, j0)])
                lab[i0, j0] = comps
                while dq:
                    i, j = dq.popleft()
                    for di, dj in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                        ii, jj = i + di, j + dj
                        if 0 <= ii < n and 0 <= jj < n and z[ii, jj] and lab[ii, jj] < 0:
                            lab[ii, jj] = comps
                            dq.append((ii, jj))
                comps += 1
    symmetric = bool((tags == tags[::-1, :]).all() and (tags == tags[:, ::-1]).all())
    cell = a[1] - a[0]
    i_mid = int(np.argmin(np.abs(a)))
    ext1 = a[np.nonzero(z[:, i_mid])[0]]
    ext2 = a[np.nonzero(z[i_mid, :])[0]]
    extents_ok = (
        abs(ext1.max() - math.pi / 6) <= cell
        and abs(ext1.min() + math.pi / 6) <= cell
        and abs(ext2.max() - ALPHA2_LIM) <= cell
        and abs(ext2.min() + ALPHA2_LIM) <= cell
    )
    cg = limit.cycle_graph()
    elapsed = time.perf_counter() - t0
    ok = comps == 1 and symmetric and extents_ok and cg.quad_tag == "unipotent"
    _report(11, ok, elapsed, 60.0,
            f"200x200 scan: Z connected ({comps} component), symmetric under "
            "both flips, axis extents within one cell; quadrilateral cycles "
            "unipotent at the limit")
