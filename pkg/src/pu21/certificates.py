r"""Numerical certificate batteries behind ``pu21 verify``.

Each suite runs a battery of checks and returns one record per check:

    {"check": ..., "params": ..., "resolution": ..., "verdict": "pass"/"fail",
     "residual": ..., "witnesses": [...]}

Residuals are the largest deviation observed; witnesses carry the offending
data when a check fails.  All randomness is seeded, so reports are
deterministic and byte-stable.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from . import core, ford, limit, moduli, spheres

__all__ = ["SUITES", "run_suite", "available_suites"]


def _record(check, verdict, residual=None, params=None, resolution=None, witnesses=()):
    return {
        "check": check,
        "params": params,
        "resolution": resolution,
        "verdict": "pass" if verdict else "fail",
        "residual": None if residual is None else float(residual),
        "witnesses": list(witnesses),
    }


def _random_params(rng, n, rect=False, region_z=False):
    out = []
    while len(out) < n:
        if rect:
            a1 = rng.uniform(-math.pi / 6, math.pi / 6)
            a2 = rng.uniform(-moduli.ALPHA2_LIM, moduli.ALPHA2_LIM)
        else:
            a1 = rng.uniform(-math.pi / 2 + 1e-4, math.pi / 2 - 1e-4)
            a2 = rng.uniform(-math.pi / 2 + 1e-4, math.pi / 2 - 1e-4)
        p = moduli.Params(a1, a2)
        if region_z and moduli.poly_D(p.x14, p.x24) <= 1e-3:
            continue
        out.append(p)
    return out


# ---------------------------------------------------------------------------
# core
# ---------------------------------------------------------------------------


def suite_core(eps: float) -> list[dict]:
    rng = np.random.default_rng(20230)
    checks = []

    worst = 0.0
    for p in _random_params(rng, 20):
        gd = moduli.build_group(p)
        for g in (gd.A, gd.B, gd.S, gd.T, gd.A @ gd.S):
            x = rng.standard_normal(3) + 1j * rng.standard_normal(3)
            y = rng.standard_normal(3) + 1j * rng.standard_normal(3)
            lhs = core.hermitian_product(g.m @ x, g.m @ y)
            rhs = core.hermitian_product(x, y)
            worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    checks.append(_record("form_preservation", worst <= 1e-10, worst,
                          resolution="20 params x 5 elements"))

    worst = 0.0
    for _ in range(1000):
        z, w = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        t, s = rng.standard_normal(2)
        ph, qh = core.HeisPoint(z, t), core.HeisPoint(w, s)
        d2 = core.cygan_distance(ph, qh) ** 2
        hp = abs(core.hermitian_product(ph.lift(), qh.lift()))
        worst = max(worst, abs(d2 - hp))
    checks.append(_record("cygan_equals_hermitian_modulus", worst <= 1e-12, worst,
                          resolution="1000 random boundary pairs"))

    worst = 0.0
    for _ in range(1000):
        pts = [core.HeisPoint(complex(rng.standard_normal(), rng.standard_normal()),
                              float(rng.standard_normal())) for _ in range(3)]
        a = core.heisenberg_translate(pts[0], core.heisenberg_translate(pts[1], pts[2]))
        ab = core.heisenberg_translate(pts[0], pts[1])
        b = core.heisenberg_translate(ab, pts[2])
        worst = max(worst, abs(a.z - b.z), abs(a.t - b.t))
    checks.append(_record("heisenberg_associativity", worst <= 1e-12, worst,
                          resolution="1000 random triples"))

    ok = True
    witnesses = []
    for p in _random_params(rng, 10):
        gd = moduli.build_group(p)
        h = gd.S @ gd.A  # a generic conjugator
        for g in (gd.A, gd.S, gd.A @ gd.B):
            t1 = core.classify(g).tag
            t2 = core.classify(h @ g @ h.inverse()).tag
            if t1 is not t2:
                ok = False
                witnesses.append((p.alpha1, p.alpha2, t1.value, t2.value))
    checks.append(_record("classify_conjugation_invariant", ok, witnesses=witnesses))

    worst = 0.0
    for p in _random_params(rng, 20):
        gd = moduli.build_group(p)
        a = core.cartan_invariant(gd.pA, gd.pAB, gd.pB)
        g = gd.S @ gd.T @ gd.S
        moved = core.cartan_invariant(g.m @ gd.pA, g.m @ gd.pAB, g.m @ gd.pB)
        worst = max(worst, abs(a - moved))
        flipped = core.cartan_invariant(
            core.H @ np.conj(gd.pA), core.H @ np.conj(gd.pAB), core.H @ np.conj(gd.pB)
        )
        worst = max(worst, abs(a + flipped))
    checks.append(_record("cartan_isometry_invariance_and_negation", worst <= 1e-10,
                          worst, resolution="20 params"))

    worst = 0.0
    for _ in range(50):
        z1 = core.lift_of_heis(complex(*rng.standard_normal(2)), rng.standard_normal())
        z2 = core.lift_of_heis(complex(*rng.standard_normal(2)), rng.standard_normal())
        v = core.polar_vector(z1, z2)
        worst = max(worst, abs(core.hermitian_product(z1, v)),
                    abs(core.hermitian_product(z2, v)))
    checks.append(_record("polar_vector_orthogonality", worst <= 1e-9, worst,
                          resolution="50 random null pairs"))

    f0 = core.goldman_trace_poly(0.0)
    f3 = core.goldman_trace_poly(3.0)
    f4 = core.goldman_trace_poly(4.0)
    checks.append(_record("goldman_spot_values",
                          f0 == -27.0 and abs(f3) < 1e-12 and f4 == 5.0,
                          max(abs(f0 + 27), abs(f3), abs(f4 - 5))))
    return checks


# ---------------------------------------------------------------------------
# moduli
# ---------------------------------------------------------------------------


def suite_moduli(eps: float) -> list[dict]:
    rng = np.random.default_rng(20231)
    checks = []

    exact = (
        moduli.poly_D(Fraction(4), Fraction(4)) == 1225,
        moduli.poly_D(Fraction(4), Fraction(3, 2)) == 0,
        moduli.poly_D(Fraction(3), Fraction(4)) == 0,
        moduli.poly_G(Fraction(4), Fraction(3, 2)) == 0,
    )
    checks.append(_record("exact_polynomial_values", all(exact),
                          witnesses=[] if all(exact) else [exact]))

    worst = 0.0
    worst_proj = 0.0
    for p in _random_params(rng, 40):
        gd = moduli.build_group(p)
        worst = max(worst, abs(gd.A.trace - 3), abs((gd.A @ gd.B).trace - 3),
                    abs(gd.S.trace), abs(gd.T.trace))
        st = (gd.S @ gd.T).m
        ts = (gd.T @ gd.S).m
        worst_proj = max(worst_proj,
                         float(np.abs(st - gd.A.m).max()),
                         float(np.abs(ts - gd.B.m).max()))
        cube = gd.S.power(3).m
        worst_proj = max(worst_proj, float(np.abs(cube - cube[0, 0] * np.eye(3)).max()))
        sti = (gd.S @ gd.T.inverse()).trace
        expect = p.x1sq * p.x24 * np.exp(1j * p.alpha1 / 3)
        worst = max(worst, abs(sti - expect))
    checks.append(_record("generator_identities", worst <= 1e-12 and worst_proj <= 1e-10,
                          max(worst, worst_proj), resolution="40 random params"))

    worst = 0.0
    for p in _random_params(rng, 40):
        gd = moduli.build_group(p)
        a1 = core.cartan_invariant(gd.pA, gd.pAB, gd.pB)
        a2 = core.cartan_invariant(gd.pA, gd.pAB, gd.pBA)
        worst = max(worst, abs(a1 - p.alpha1), abs(a2 - p.alpha2))
    checks.append(_record("cartan_roundtrip", worst <= 1e-10, worst,
                          resolution="40 random params"))

    worst = 0.0
    for p in _random_params(rng, 20):
        gd = moduli.build_group(p)
        comm = (gd.A @ gd.B @ gd.A.inverse() @ gd.B.inverse()).m
        cube = (gd.S @ gd.T.inverse()).power(3).m
        i = np.unravel_index(int(np.argmax(np.abs(cube))), cube.shape)
        worst = max(worst, float(np.abs(comm - (comm[i] / cube[i]) * cube).max()))
    checks.append(_record("commutator_is_STinv_cubed", worst <= 1e-10, worst,
                          resolution="20 random params"))

    xs = np.linspace(3.0, 4.0, 100)
    ys = np.linspace(1.5, 4.0, 100)
    g = moduli.poly_G(xs[:, None], ys[None, :])
    gmin = float(g.min())
    checks.append(_record("rectangle_in_L_union_P", gmin >= -1e-9, -min(gmin, 0.0),
                          resolution="100x100 grid of R"))

    worst_rel = 0.0
    for _ in range(200):
        a1 = rng.uniform(-math.pi / 6, math.pi / 6)
        a2 = rng.uniform(-moduli.ALPHA2_LIM, moduli.ALPHA2_LIM)
        x1s, s1, y = moduli.rationalize_params(a1, a2)
        closed = moduli.discriminant_closed_xy(x1s, y)
        alg = moduli.quartic_resultant_discriminant(moduli.quartic_coeffs_xsy(x1s, s1, y))
        if closed != alg:
            scale = max(abs(closed), abs(alg), Fraction(1))
            worst_rel = max(worst_rel, float(abs(closed - alg) / scale))
    checks.append(_record("discriminant_identity_exact", worst_rel <= 1e-9, worst_rel,
                          resolution="200 rationalised points of R"))

    bad = []
    for _ in range(300):
        a1 = rng.uniform(-math.pi / 6, math.pi / 6)
        a2 = rng.uniform(-moduli.ALPHA2_LIM, moduli.ALPHA2_LIM)
        p = moduli.Params(a1, a2)
        d = moduli.poly_D(p.x14, p.x24)
        if abs(d) <= 1e-4:
            continue
        found = moduli.has_root_in_unit_interval(list(moduli.quartic_L(p))).found
        if found != (d < 0):
            bad.append((a1, a2, d, found))
    checks.append(_record("root_criterion_matches_D_sign", not bad,
                          resolution="300 random points of R", witnesses=bad[:5]))

    c0 = moduli.quartic_L(moduli.Params(0.0, 0.0))
    cl = moduli.quartic_L(limit.limit_params())
    res = max(
        float(np.abs(c0 - np.array([25.0, 0, -70, 0, 49])).max()),
        float(np.abs(cl - np.array([25.0, 0, -30, 0, 9])).max()),
    )
    r0 = moduli.real_roots_quartic(list(c0))
    rl = moduli.real_roots_quartic(list(cl))
    ok = (
        res <= 1e-12
        and [m for _, m in r0] == [2, 2]
        and [m for _, m in rl] == [2, 2]
        and abs(r0[1][0] - math.sqrt(7 / 5)) <= 1e-10
        and abs(rl[1][0] - math.sqrt(3 / 5)) <= 1e-10
    )
    checks.append(_record("quartic_factorisations", ok, res))

    worst = 0.0
    for p in _random_params(rng, 15):
        pm = moduli.Params(-p.alpha1, p.alpha2)
        t1 = (moduli.build_group(pm).S @ moduli.build_group(pm).T.inverse()).trace
        t2 = (moduli.build_group(p).S @ moduli.build_group(p).T.inverse()).trace
        worst = max(worst, abs(t1 - np.conj(t2)))
        ph = moduli.Params(p.alpha1, -p.alpha2)
        t3 = (moduli.build_group(ph).S @ moduli.build_group(ph).T.inverse()).trace
        worst = max(worst, abs(t3 - t2))
    checks.append(_record("axis_flip_trace_ledger", worst <= 1e-10, worst,
                          resolution="15 random params"))

    tr = moduli.trace_boundary("Z", 50)
    worst = 0.0
    for branch in tr.branches:
        for a1, a2 in branch:
            x = 4 * math.cos(a1) ** 2
            y = 4 * math.cos(a2) ** 2
            worst = max(worst, abs(moduli.poly_D(x, y)))
    end_ok = (
        abs(tr.branches[0][0][0] - math.pi / 6) < 1e-9
        and abs(tr.branches[0][-1][1] - moduli.ALPHA2_LIM) < 1e-9
    )
    checks.append(_record("boundary_trace_Z", worst <= 1e-9 and not tr.failures and end_ok,
                          worst, resolution="50 samples"))

    checks.append(_record("quartic_leading_coeff_positive_on_R",
                          moduli.leading_coeff_positive_on_R()))
    return checks


# ---------------------------------------------------------------------------
# spheres
# ---------------------------------------------------------------------------


def _boundary_grid(n_alpha: int, n_beta: int):
    """(alpha, beta~) grid on the ideal boundary of a unit Cygan sphere.

    beta~ in [0, 2pi) folds the w sign into the meridian angle.
    """
    alphas = np.linspace(-math.pi / 2, math.pi / 2, n_alpha)
    betas = np.linspace(0.0, 2 * math.pi, n_beta, endpoint=False)
    return alphas, betas


def _component_labels(mask: np.ndarray, glue_poles: bool = True):
    """8-neighbour component labels of an (alpha, beta~) mask; beta wraps.

    Pole rows (alpha = +-pi/2) each represent a single point of the boundary
    sphere, so all their cells are mutually connected.
    """
    from collections import deque

    n_a, n_b = mask.shape
    labels = np.full(mask.shape, -1, dtype=int)
    comps = 0
    for i0 in range(n_a):
        for j0 in range(n_b):
            if not mask[i0, j0] or labels[i0, j0] >= 0:
                continue
            dq = deque([(i0, j0)])
            labels[i0, j0] = comps
            while dq:
                i, j = dq.popleft()
                for di in (-1, 0, 1):
                    ii = i + di
                    if not 0 <= ii < n_a:
                        continue
                    for dj in (-1, 0, 1):
                        jj = (j + dj) % n_b
                        if mask[ii, jj] and labels[ii, jj] < 0:
                            labels[ii, jj] = comps
                            dq.append((ii, jj))
                if glue_poles and (i == 0 or i == n_a - 1):
                    for jj in range(n_b):
                        if mask[i, jj] and labels[i, jj] < 0:
                            labels[i, jj] = comps
                            dq.append((i, jj))
            comps += 1
    return labels, comps


def _component_count(mask: np.ndarray, glue_poles: bool = True) -> int:
    return _component_labels(mask, glue_poles)[1]


def _f0_fm1_boundary(p: moduli.Params, alphas, betas):
    """f0, fm1 on the ideal boundary grid of I_0^+ (vectorised)."""
    _, _, pAB, pBA = moduli.fixed_point_lifts(p)
    A, B = np.meshgrid(alphas, betas, indexing="ij")
    w = np.sqrt(2.0 * np.cos(A))
    q1 = -np.exp(-1j * A)
    q2 = w * np.exp(1j * (-A / 2 + B))
    f0 = np.abs(pAB[0].conjugate() + pAB[1].conjugate() * q2 + q1) ** 2 - 1.0
    fm1 = np.abs(pBA[0].conjugate() + pBA[1].conjugate() * q2 + q1) ** 2 - 1.0
    return f0, fm1


def _sign_band(f: np.ndarray) -> np.ndarray:
    """Cells of an (alpha, beta~) sample where f changes sign (beta wraps)."""
    a = f
    b = np.roll(f, -1, axis=1)
    c = np.roll(f, -1, axis=0)
    d = np.roll(np.roll(f, -1, axis=0), -1, axis=1)
    stack = np.stack([a, b, c, d])
    band = (stack.min(axis=0) <= 0.0) & (stack.max(axis=0) >= 0.0)
    band[-1, :] = False  # no alpha wrap
    return band


def suite_spheres(eps: float) -> list[dict]:
    rng = np.random.default_rng(20232)
    checks = []

    worst = 0.0
    for p in _random_params(rng, 15):
        gd = moduli.build_group(p)
        fam = spheres.SphereFamily(p)
        s = spheres.isometric_sphere(gd.S)
        worst = max(worst, abs(s.center.z), abs(s.center.t), abs(s.radius - 1))
        for k in (-2, -1, 1, 2):
            Ak = gd.A.power(k)
            g = Ak @ gd.S @ Ak.inverse()
            got = spheres.isometric_sphere(g)
            want = fam.plus(k)
            worst = max(worst, abs(got.center.z - want.center.z),
                        abs(got.center.t - want.center.t), abs(got.radius - 1))
            g = Ak @ gd.S.inverse() @ Ak.inverse()
            got = spheres.isometric_sphere(g)
            want = fam.minus(k)
            worst = max(worst, abs(got.center.z - want.center.z),
                        abs(got.center.t - want.center.t), abs(got.radius - 1))
    checks.append(_record("isometric_sphere_centres", worst <= 1e-9, worst,
                          resolution="15 params, |k| <= 2"))

    worst = 0.0
    fam = spheres.SphereFamily(moduli.Params(0.37, -0.21))
    for _ in range(200):
        alpha = rng.uniform(-math.pi / 2, math.pi / 2)
        wmax = math.sqrt(2 * math.cos(alpha))
        c = spheres.GeoCoord(alpha, rng.uniform(0, math.pi), rng.uniform(-wmax, wmax))
        for sph in (fam.plus(0), fam.minus(1)):
            v = spheres.geo_to_point(sph, c)
            d = core.cygan_distance(core.heis_of_lift(v), sph.center)
            worst = max(worst, abs(d - 1.0))
    checks.append(_record("geo_points_on_sphere", worst <= 1e-12, worst,
                          resolution="200 random coords x 2 spheres"))

    ok = True
    worst = 0.0
    p = moduli.Params(0.2, 0.31)
    fam = spheres.SphereFamily(p)
    for _ in range(1000):
        alpha = rng.uniform(-math.pi / 2, math.pi / 2)
        wmax = math.sqrt(2 * math.cos(alpha))
        c = spheres.GeoCoord(alpha, rng.uniform(0, math.pi), rng.uniform(-wmax, wmax))
        f0, fm1 = spheres.f_functions(p, c)
        q = spheres.geo_lift(c)
        m0 = spheres.membership(fam.minus(0), q)
        if abs(f0) > 1e-7:
            want = spheres.Membership.EXTERIOR if f0 > 0 else spheres.Membership.INTERIOR
            ok = ok and m0 is want
        diff = f0 - fm1
        th = (c.alpha - p.alpha1) / 2
        expect = (-8 * c.w * p.x1 * math.cos(th)
                  * math.cos(c.beta + p.alpha1 / 2) * math.cos(p.alpha2))
        worst = max(worst, abs(diff - expect))
    checks.append(_record("f_sign_matches_membership_and_difference_identity",
                          ok and worst <= 1e-10, worst, resolution="1000 random coords"))

    bad = []
    pts = _random_params(rng, 60, rect=True)
    a1s = np.array([p.alpha1 for p in pts])
    a2s = np.array([p.alpha2 for p in pts])
    d = moduli.poly_D((2 * np.cos(a1s)) ** 2, (2 * np.cos(a2s)) ** 2)
    keep = np.abs(d) > 1e-4
    qmin = spheres.quartic_min_grid(a1s[keep], a2s[keep])
    smin = spheres.meridian_scan_grid(a1s[keep], a2s[keep], resolution=1e-3)
    for i in range(int(keep.sum())):
        if (qmin[i] <= 0) != (smin[i] <= 0):
            bad.append((float(a1s[keep][i]), float(a2s[keep][i])))
    checks.append(_record("triple_intersection_oracle_agreement", not bad,
                          resolution="60 points of R, scan 1e-3", witnesses=bad))

    worst = 0.0
    p = moduli.Params(0.15, 0.4)
    sym = moduli.symmetry_maps(p)
    fam = spheres.SphereFamily(p)
    for k in (-1, 0, 1):
        for _ in range(40):
            alpha = rng.uniform(-math.pi / 2, math.pi / 2)
            wmax = math.sqrt(2 * math.cos(alpha))
            c = spheres.GeoCoord(alpha, rng.uniform(0, math.pi), rng.uniform(-wmax, wmax))
            v = spheres.geo_to_point(fam.plus(k), c)
            img = sym.phi(v)
            dist = core.cygan_distance(core.heis_of_lift(img), fam.minus(k).center)
            worst = max(worst, abs(dist - 1.0))
            v = spheres.geo_to_point(fam.minus(k), c)
            img = sym.phi(v)
            dist = core.cygan_distance(core.heis_of_lift(img), fam.plus(k + 1).center)
            worst = max(worst, abs(dist - 1.0))
    checks.append(_record("phi_equivariance_of_family", worst <= 1e-10, worst,
                          resolution="3 k-values x 40 points"))

    bad = []
    for p in _random_params(rng, 100, rect=True, region_z=True):
        i0p = spheres.SphereFamily(p).plus(0)
        pts = spheres.pair_intersection_points(p, "-", 0, "-", -1)
        if not pts:
            bad.append((p.alpha1, p.alpha2, "no intersection points sampled"))
            continue
        for q in pts:
            if spheres.membership(i0p, q) is not spheres.Membership.INTERIOR:
                bad.append((p.alpha1, p.alpha2, "boundary point escaped"))
                break
    checks.append(_record("Im1_minus_cap_I0_minus_inside_I0_plus", not bad,
                          resolution="100 Z-params, 24x13 fibre grid",
                          witnesses=bad[:5]))

    alphas, betas = _boundary_grid(192, 384)
    f0, _ = _f0_fm1_boundary(moduli.Params(0.1, 0.2), alphas, betas)
    n_comp = _component_count(_sign_band(f0))
    checks.append(_record("pairwise_intersection_connected", n_comp == 1,
                          resolution="192x384 boundary grid", witnesses=[n_comp]))

    worst = 0.0
    exact_case = abs(
        spheres.closed_form_d4_minus(Fraction(4), Fraction(3, 2), 1) - 16
    )
    for p in _random_params(rng, 25):
        fam = spheres.SphereFamily(p)
        pB = core.HeisPoint(0j, 0.0)
        for k in range(-5, 6):
            direct_p = core.cygan_distance(fam.plus(k).center, pB) ** 4
            direct_m = core.cygan_distance(fam.minus(k).center, pB) ** 4
            cf_p = spheres.closed_form_d4_plus(p.x14, p.x24, k)
            cf_m = spheres.closed_form_d4_minus(p.x14, p.x24, k)
            worst = max(
                worst,
                abs(direct_p - cf_p) / max(1.0, cf_p),
                abs(direct_m - cf_m) / max(1.0, cf_m),
            )
    checks.append(_record("cygan_closed_forms", worst <= 1e-12 and exact_case == 0,
                          worst, resolution="25 params, k in [-5,5], relative"))

    cert = spheres.pairwise_disjointness_certificate(moduli.Params(0.05, 0.1))
    checks.append(_record("pairwise_disjointness", cert["matches_allowed_neighbours"]
                          and cert["tail_dominated"], witnesses=cert["overlapping"]))
    return checks


# ---------------------------------------------------------------------------
# ford
# ---------------------------------------------------------------------------


def suite_ford(eps: float) -> list[dict]:
    rng = np.random.default_rng(20233)
    checks = []
    p = moduli.Params(0.12, 0.3)
    gd = moduli.build_group(p)

    qinf = core.Q_INFINITY
    lhs = gd.S.apply(gd.A.inverse().apply(gd.S.apply(qinf)))
    rhs = (gd.A @ gd.S.inverse()).apply(qinf)
    r1 = float(np.abs(np.cross(lhs, rhs)).max())
    prod = (ford.side_pairing(gd, "+", 0) @ ford.side_pairing(gd, "-", 0)).m
    r2 = float(np.abs(prod - prod[0, 0] * np.eye(3)).max())
    compat = ford.side_pairing(gd, "+", 3).m
    conj = (gd.A.power(3) @ ford.side_pairing(gd, "+", 0) @ gd.A.power(-3)).m
    r3 = float(np.abs(compat - conj).max())
    checks.append(_record("side_pairing_relations", max(r1, r2, r3) <= 1e-9,
                          max(r1, r2, r3)))

    ok = True
    for tag in (ford.RidgeTag("+", 0), ford.RidgeTag("-", 0), ford.RidgeTag("-", 1)):
        rho, order = ford.ridge_cycle(gd, tag)
        ok = ok and order == 3
    t_inv = gd.T.inverse().m
    rho0 = ford.ridge_cycle(gd, ford.RidgeTag("-", 0))[0].m
    i = np.unravel_index(int(np.argmax(np.abs(t_inv))), t_inv.shape)
    resid = float(np.abs(rho0 - (rho0[i] / t_inv[i]) * t_inv).max())
    checks.append(_record("ridge_cycles_order_three", ok and resid <= 1e-9, resid))

    dom = ford.FordDomain(p)
    m1 = dom.membership(core.HeisPoint(0j, 0.0))
    m2 = dom.membership(core.HeisPoint(10j, 0.0))
    ok = (m1.location is ford.DomainLocation.OUTSIDE and ("+", 0) in m1.witnesses
          and m2.location is ford.DomainLocation.INSIDE)
    lim_dom = ford.FordDomain(limit.limit_params())
    sym = moduli.symmetry_maps(limit.limit_params())
    out_ok = all(
        lim_dom.membership(sym.delta_phi(x)).location is ford.DomainLocation.OUTSIDE
        for x in np.linspace(-3.0, 3.0, 101)
    )
    checks.append(_record("membership_examples", ok and out_ok))

    try:
        ford.presentation(p)
        inside_ok = True
    except ValueError:
        inside_ok = False
    try:
        ford.presentation(moduli.Params(1.2, 1.2))
        outside_ok = False
    except ValueError:
        outside_ok = True
    checks.append(_record("presentation_gate", inside_ok and outside_ok))

    w_ok = (
        ford.reduce_word([("s", 1)] * 3) == ()
        and ford.rel_word([("s", 1), ("t", 1)], [("t", 1), ("s", 1), ("t", 1)]) == ()
        and ford.reduce_word([("s", 1), ("t", 3), ("s", 1)]) == (("s", 2),)
    )
    worst = 0.0
    for _ in range(100):
        raw = [("st"[rng.integers(2)], int(rng.integers(-5, 6))) for _ in range(8)]
        red = ford.reduce_word(raw)
        worst = max(worst, 0.0 if ford.reduce_word(red) == red else 1.0)
        m_raw = ford.evaluate_word(raw, gd.S, gd.T).m
        m_red = ford.evaluate_word(red, gd.S, gd.T).m
        i = np.unravel_index(int(np.argmax(np.abs(m_raw))), m_raw.shape)
        worst = max(worst, float(np.abs(m_red - (m_red[i] / m_raw[i]) * m_raw).max()))
    checks.append(_record("word_reduction", w_ok and worst <= 1e-8, worst,
                          resolution="100 random words"))

    probe = ford.freeness_probe(p, 6)
    checks.append(_record("freeness_probe_len6", not probe["counterexamples"],
                          residual=probe["min_distance_st_words"],
                          witnesses=probe["counterexamples"][:5]))

    # side-pairing homeomorphism proxy on r_0^+ and ridge-to-ridge action
    worst = 0.0
    _, _, pAB, pBA = moduli.fixed_point_lifts(p)
    fam = spheres.SphereFamily(p)
    n_found = 0
    for alpha in np.linspace(-1.2, 1.2, 30):
        wmax = math.sqrt(2 * math.cos(alpha))
        for branch in (1, -1):
            f = lambda b: abs(core.hermitian_product(
                spheres.geo_lift(spheres.GeoCoord(alpha, b, branch * wmax)), pAB)) - 1.0
            grid = np.linspace(0, math.pi, 40, endpoint=False)
            vals = [f(b) for b in grid]
            for i in range(39):
                if vals[i] * vals[i + 1] < 0:
                    lo, hi, flo = grid[i], grid[i + 1], vals[i]
                    for _ in range(60):
                        mid = 0.5 * (lo + hi)
                        if (f(mid) > 0) == (flo > 0):
                            lo = mid
                        else:
                            hi = mid
                    q = spheres.geo_lift(spheres.GeoCoord(alpha, 0.5 * (lo + hi), branch * wmax))
                    img = gd.S.apply(q)
                    h = core.heis_of_lift(img)
                    worst = max(
                        worst,
                        abs(core.cygan_distance(h, fam.plus(0).center) - 1),
                        abs(core.cygan_distance(h, fam.minus(0).center) - 1),
                    )
                    n_found += 1
    checks.append(_record("S_preserves_r0_plus", worst <= 1e-9 and n_found > 10, worst,
                          resolution=f"{n_found} sampled ridge points"))

    worst = 0.0
    n_found = 0
    for alpha in np.linspace(-1.2, 1.2, 30):
        wmax = math.sqrt(2 * math.cos(alpha))
        for branch in (1, -1):
            f = lambda b: abs(core.hermitian_product(
                spheres.geo_lift(spheres.GeoCoord(alpha, b, branch * wmax)), pBA)) - 1.0
            grid = np.linspace(0, math.pi, 40, endpoint=False)
            vals = [f(b) for b in grid]
            for i in range(39):
                if vals[i] * vals[i + 1] < 0:
                    lo, hi, flo = grid[i], grid[i + 1], vals[i]
                    for _ in range(60):
                        mid = 0.5 * (lo + hi)
                        if (f(mid) > 0) == (flo > 0):
                            lo = mid
                        else:
                            hi = mid
                    q = spheres.geo_lift(spheres.GeoCoord(alpha, 0.5 * (lo + hi), branch * wmax))
                    img = gd.S.apply(q)  # r_0^- = I_0^+ n I_-1^-  ->  r_1^-
                    h = core.heis_of_lift(img)
                    worst = max(
                        worst,
                        abs(core.cygan_distance(h, fam.plus(1).center) - 1),
                        abs(core.cygan_distance(h, fam.minus(0).center) - 1),
                    )
                    n_found += 1
    checks.append(_record("S_maps_r0_minus_to_r1_minus", worst <= 1e-9 and n_found > 10,
                          worst, resolution=f"{n_found} sampled ridge points"))

    # local tessellation in a Cygan ball of radius 1e-2 around a generic
    # point of (s_0^+)o; shell width 1e-4, 1000 sample points
    base = spheres.GeoCoord(0.35, 2.6, 0.4)
    q0 = spheres.geo_lift(base)
    h0 = core.heis_of_lift(q0)
    dom = ford.FordDomain(p)
    assert dom.membership(q0, eps=1e-7).location is ford.DomainLocation.ON_SIDE
    S = gd.S
    overlap, gap = 0, 0
    shell = 1e-4
    radius = 1e-2
    n_drawn = 0
    while n_drawn < 1000:
        dz = (rng.standard_normal() + 1j * rng.standard_normal()) * radius / 2
        dt = rng.standard_normal() * radius**2
        du = abs(rng.standard_normal()) * radius**2
        h = core.HeisPoint(h0.z + dz, h0.t + dt, max(0.0, h0.u + du))
        if core.cygan_distance(h, h0) > radius:
            continue
        n_drawn += 1
        v = h.lift()
        flags = []
        on_shell = False
        for mat in (np.eye(3), S.inverse().m, S.m):
            loc = dom.membership(mat @ v, eps=shell).location
            flags.append(loc is ford.DomainLocation.INSIDE)
            on_shell = on_shell or loc is ford.DomainLocation.ON_SIDE
        if sum(flags) > 1:
            overlap += 1
        if sum(flags) == 0 and not on_shell:
            gap += 1
    checks.append(_record("local_tessellation_spot_check", overlap == 0 and gap == 0,
                          resolution="1000 samples, Cygan ball 1e-2, shell 1e-4",
                          witnesses=[overlap, gap]))
    return checks


# ---------------------------------------------------------------------------
# limit
# ---------------------------------------------------------------------------


def suite_limit(eps: float) -> list[dict]:
    checks = []
    ld = limit.limit_group()
    checks.append(_record("limit_group_data", max(ld.residuals.values()) <= 1e-12,
                          max(ld.residuals.values())))

    tc = limit.tangency_check()
    worst = max(
        abs(tc["mod_p_ST-1_vs_I-1-"] - 1),
        abs(tc["mod_p_ST-1_vs_I1+"] - 1),
        abs(tc["mod_p_S-1T_vs_I0-"] - 1),
        abs(tc["mod_p_S-1T_vs_I-1+"] - 1),
        abs(tc["proj_center_distance_I1+_I-1-"] - 2),
        abs(tc["proj_center_distance_I-1+_I0-"] - 2),
    )
    checks.append(_record("tangencies", worst <= 1e-12 and tc["triple_point_count"] == 2
                          and tc["triple_point_residual"] <= 1e-12, worst))

    cg = limit.cycle_graph()
    checks.append(_record("cycle_graph", cg.quad_tag == "unipotent",
                          max(cg.triangle_residual, cg.quad_fix_residual,
                              *(e.residual for e in cg.edges))))

    ft = limit.fan_sphere_table()
    slab_ok = ft["slab"]["p_S-1T_interior"] and all(
        v is True for k, v in ft["slab"].items() if k.endswith("outside")
    ) and ft["slab"]["A^-1 p_ST-1 on F-1"] <= 1e-12
    checks.append(_record("fan_sphere_table", slab_ok,
                          max(ft["witness_residuals"].values())))

    fr = limit.fan_ridge_intersection()
    checks.append(_record("fan_ridge_solutions", max(fr["residuals"].values()) <= 1e-10,
                          max(fr["residuals"].values()), witnesses=[fr["ridge_order"]]))

    cx, rep = limit.boundary_cell_complex()
    ok = (rep["n_vertices"], rep["n_edges"], rep["n_faces"]) == (5, 11, 8) and \
        rep["euler_characteristic"] == 2
    checks.append(_record("boundary_cell_complex", ok,
                          max(rep["vertex_residuals"].values())))

    oc = limit.octahedron()
    worst = max(oc.pre_merge.certify_pairings(), oc.post_merge.certify_pairings())
    ok = (
        len(oc.post_merge.faces) == 8
        and len(oc.post_merge.pairings) == 4
        and len(oc.pre_merge.pairings) == 5
        and oc.post_merge.euler_characteristic() == 2
        and oc.relator_reduced == ()
        and len(oc.vertex_orbits) == 2
    )
    checks.append(_record("octahedron", ok, worst))

    sym = moduli.symmetry_maps(limit.limit_params())
    lim = math.sqrt(3.0 / 8.0)
    worst = 0.0
    pB = core.HeisPoint(0j, 0.0)
    for x in np.linspace(-lim, lim, 1000):
        d4 = core.cygan_distance(pB, sym.delta_phi(float(x))) ** 4
        worst = max(worst, d4)
    checks.append(_record("delta_phi_exclusion_bound", worst <= 529.0 / 1024.0 + 1e-12,
                          worst, resolution="1000 samples of the segment"))

    alphas, betas = _boundary_grid(256, 512)
    f0, fm1 = _f0_fm1_boundary(limit.limit_params(), alphas, betas)
    # strict interior margin: the two components of the common exterior touch
    # at the two tangency points, so the open sets only separate off a shell
    margin = 1e-3
    labels, n_comp = _component_labels((f0 > margin) & (fm1 > margin))
    marked = {
        "p_ST-1": (math.acos(0.25), math.pi / 2),
        "p_S-1T": (-math.acos(0.25), math.pi / 2),
        "p_STS": (0.0, math.acos(math.sqrt(27 / 32))),
        "p_TST": (0.0, math.pi - math.acos(math.sqrt(27 / 32))),
    }
    incidences_ok = n_comp == 2
    if n_comp == 2:
        near = {}
        for label, (a, b) in marked.items():
            i = int(np.argmin(np.abs(alphas - a)))
            j = int(np.argmin(np.abs(betas - b)))
            close = set()
            for comp in (0, 1):
                ii, jj = np.nonzero(labels == comp)
                dist = np.hypot(ii - i, np.minimum(np.abs(jj - j),
                                                   len(betas) - np.abs(jj - j)))
                if dist.min() <= 8:
                    close.add(comp)
            near[label] = close
        quad = {c for c in (0, 1) if all(c in near[m] for m in marked)}
        bigon = {0, 1} - quad
        incidences_ok = len(quad) == 1 and all(
            near[m] == {next(iter(quad))} or m in ("p_ST-1", "p_S-1T")
            for m in marked
        )
    # iota1 [z,t] -> [-conj z, -t] swaps the two ridge curves on samples
    worst_swap = 0.0
    p = limit.limit_params()
    _, _, pAB, pBA = moduli.fixed_point_lifts(p)
    band0 = _sign_band(f0)
    idx = np.argwhere(band0)[::37]
    for i, j in idx:
        a, b = alphas[i], betas[j]
        w = math.sqrt(2 * math.cos(a))
        v = spheres.geo_lift(spheres.GeoCoord(a, b, w))
        h = core.heis_of_lift(v)
        flip = core.HeisPoint(-h.z.conjugate(), -h.t)
        worst_swap = max(
            worst_swap,
            abs(abs(core.hermitian_product(flip.lift(), pBA)) - 1.0)
            - abs(abs(core.hermitian_product(v, pAB)) - 1.0),
        )
    checks.append(_record("quadrilateral_bigon_split",
                          n_comp == 2 and incidences_ok and worst_swap <= 1e-6,
                          worst_swap,
                          resolution="256x512 boundary grid, margin 1e-3",
                          witnesses=[n_comp]))
    return checks


SUITES = {
    "core": suite_core,
    "moduli": suite_moduli,
    "spheres": suite_spheres,
    "ford": suite_ford,
    "limit": suite_limit,
}


def available_suites() -> list[str]:
    return [*SUITES, "all"]


def run_suite(name: str, eps: float | None = None) -> tuple[bool, list[dict]]:
    """Run one certificate battery (or all); returns (all passed, records)."""
    eps = core.default_eps() if eps is None else eps
    if name == "all":
        results = []
        for key in SUITES:
            _, recs = run_suite(key, eps)
            for r in recs:
                r["check"] = f"{key}.{r['check']}"
            results.extend(recs)
        return all(r["verdict"] == "pass" for r in results), results
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; available: {available_suites()}")
    records = SUITES[name](eps)
    return all(r["verdict"] == "pass" for r in records), records
