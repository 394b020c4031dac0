"""Parameter square: generators, region polynomials, quartic, discriminant."""

import math
from fractions import Fraction

import numpy as np
import pytest

from pu21 import core, moduli
from pu21.core import IsometryTag
from pu21.moduli import ALPHA2_LIM, Params


def rand_params(rng, n=20, rect=False):
    lim = (math.pi / 6, ALPHA2_LIM) if rect else (math.pi / 2 - 1e-4,) * 2
    return [Params(rng.uniform(-lim[0], lim[0]), rng.uniform(-lim[1], lim[1]))
            for _ in range(n)]


def test_params_guard():
    with pytest.raises(ValueError):
        Params(math.pi / 2, 0.0)
    with pytest.raises(ValueError):
        Params(0.0, -math.pi / 2 + 1e-9)
    p = Params(0.1, 0.2)
    assert p.x1 == pytest.approx(math.sqrt(2 * math.cos(0.1)))
    assert p.ell_a == pytest.approx(p.x1 * p.x2**2 / math.sqrt(2), abs=1e-14)
    assert p.t_a == pytest.approx(p.x1**2 * p.x2**2 * math.sin(0.2), abs=1e-14)


def test_translation_parts_match_matrix():
    # A equals the Heisenberg translation by [ell_A, t_A]
    rng = np.random.default_rng(10)
    for p in rand_params(rng, 20):
        gd = moduli.build_group(p)
        assert gd.A.m[1, 2] == pytest.approx(p.ell_a * math.sqrt(2), abs=1e-14)
        assert gd.A.m[0, 2].imag == pytest.approx(p.t_a, abs=1e-14)
        tr = core.heisenberg_matrix(core.HeisPoint(p.ell_a + 0j, p.t_a))
        assert np.abs(tr.m - gd.A.m).max() < 1e-13


def test_build_group_at_origin():
    gd = moduli.build_group(Params(0.0, 0.0))
    r2 = math.sqrt(2)
    expected = np.array([[1, -2 * r2, -4], [0, 1, 2 * r2], [0, 0, 1]], dtype=complex)
    assert np.abs(gd.A.m - expected).max() < 1e-14


def test_build_group_at_limit_matches_explicit_matrix():
    gd = moduli.build_group(Params(0.0, ALPHA2_LIM))
    assert gd.A.m[0, 1] == pytest.approx(-math.sqrt(3), abs=1e-14)
    assert gd.A.m[0, 2] == pytest.approx(-1.5 + 1j * math.sqrt(15) / 2, abs=1e-14)
    assert gd.A.m[1, 2] == pytest.approx(math.sqrt(3), abs=1e-14)


def test_group_data_invariants():
    rng = np.random.default_rng(11)
    for p in rand_params(rng, 15):
        gd = moduli.build_group(p)
        for g in (gd.A, gd.B, gd.A @ gd.B):
            assert core.classify(g).tag is IsometryTag.UNIPOTENT
        assert np.abs((gd.S @ gd.T).m - gd.A.m).max() < 1e-12
        assert np.abs((gd.T @ gd.S).m - gd.B.m).max() < 1e-12
        for g in (gd.S, gd.T):
            cube = g.power(3).m
            lam = cube[0, 0]
            assert np.abs(cube - lam * np.eye(3)).max() < 1e-10
            assert abs(lam**3 - 1) < 1e-10
        # fixed-point actions
        def fixes(g, v, w):
            img = g.apply(v)
            return np.abs(np.cross(img, w)).max() < 1e-10

        assert fixes(gd.A, gd.pBA, gd.pAB)
        assert fixes(gd.B, gd.pAB, gd.pBA)
        assert fixes(gd.S, gd.pA, gd.pAB) and fixes(gd.S, gd.pAB, gd.pB) and fixes(gd.S, gd.pB, gd.pA)
        assert fixes(gd.T, gd.pA, gd.pB) and fixes(gd.T, gd.pB, gd.pBA) and fixes(gd.T, gd.pBA, gd.pA)


def test_trace_of_STinv():
    rng = np.random.default_rng(12)
    for p in rand_params(rng, 30):
        gd = moduli.build_group(p)
        got = (gd.S @ gd.T.inverse()).trace
        want = p.x1sq * p.x24 * np.exp(1j * p.alpha1 / 3)
        assert abs(got - want) < 1e-12


def test_cartan_roundtrip():
    rng = np.random.default_rng(13)
    for p in rand_params(rng, 30):
        gd = moduli.build_group(p)
        assert core.cartan_invariant(gd.pA, gd.pAB, gd.pB) == pytest.approx(
            p.alpha1, abs=1e-10
        )
        assert core.cartan_invariant(gd.pA, gd.pAB, gd.pBA) == pytest.approx(
            p.alpha2, abs=1e-10
        )


def test_fixed_point_pairings_have_unit_modulus():
    # <p_AB, p_B> and <p_BA, p_B> evaluate to -e^{i alpha1}: unit modulus
    # (the centre of I_0^- passes through p_B); only the modulus is pinned,
    # the sign depends on the lift choice
    rng = np.random.default_rng(23)
    for p in rand_params(rng, 10):
        _, pB, pAB, pBA = moduli.fixed_point_lifts(p)
        v1 = core.hermitian_product(pAB, pB)
        v2 = core.hermitian_product(pBA, pB)
        assert abs(v1) == pytest.approx(1.0, abs=1e-14)
        assert abs(v2) == pytest.approx(1.0, abs=1e-14)
        assert v1 == pytest.approx(-np.exp(1j * p.alpha1), abs=1e-14)


def test_exact_polynomial_values():
    assert moduli.poly_D(Fraction(4), Fraction(4)) == 1225
    assert moduli.poly_D(Fraction(4), Fraction(3, 2)) == 0
    assert moduli.poly_D(Fraction(3), Fraction(4)) == 0
    assert moduli.poly_G(Fraction(4), Fraction(3, 2)) == 0
    assert moduli.poly_G(Fraction(4), Fraction(4)) == 1125


def test_special_value_factorisations():
    # boundary restrictions of D and G used for the sign table
    x = Fraction(7, 2)
    assert moduli.poly_D(x, Fraction(3, 2)) == Fraction(27, 8) * (x - 4) * (x**2 - 2 * x + 2)
    assert moduli.poly_D(x, 4) == (x - 3) * (3 + 8 * x) ** 2
    y = Fraction(9, 4)
    assert moduli.poly_D(Fraction(3), y) == 27 * (y - 4) * (y - 1) ** 2
    assert moduli.poly_D(Fraction(4), y) == (16 * y - 15) * (2 * y - 3) ** 2
    assert moduli.poly_G(x, 4) == 9 * (32 * x - 3)
    assert moduli.poly_G(x, Fraction(3, 2)) == Fraction(27, 16) * (4 - x) * (5 * x - 4)


def test_region_classification():
    assert moduli.region_classify(Params(0, 0)).tag is moduli.RegionTag.Z_INTERIOR
    assert moduli.region_classify(Params(0, 0)).d_value == 1225.0
    lim = moduli.region_classify(Params(0.0, ALPHA2_LIM))
    assert lim.tag is moduli.RegionTag.Z_BOUNDARY
    assert abs(lim.g_value) < 1e-9  # the point also lies on P
    for s1, s2 in ((1, 1), (-1, 1)):
        r = moduli.region_classify(Params(s1 * math.pi / 6, 0.0))
        assert r.tag is moduli.RegionTag.Z_BOUNDARY
    assert moduli.region_classify(Params(0, 1.4)).tag is moduli.RegionTag.E_ELLIPTIC
    # corner of R: D < 0 there but G > 0, so L outside Z
    r = moduli.region_classify(Params(math.pi / 6 - 0.01, ALPHA2_LIM - 0.01))
    assert r.tag is moduli.RegionTag.L_OUTSIDE_Z


def test_spurious_positive_D_outside_rectangle_is_not_Z():
    # near (alpha1, alpha2) = (0, pi/3): D(4,1) = 1 > 0 but the commutator is
    # elliptic; the Z tag is reserved for the rectangle R
    p = Params(0.0, math.pi / 3)
    assert moduli.poly_D(p.x14, p.x24) > 0
    r = moduli.region_classify(p)
    assert r.tag is moduli.RegionTag.E_ELLIPTIC


def test_region_grid_matches_pointwise():
    rng = np.random.default_rng(14)
    a1 = rng.uniform(-1.5, 1.5, 200)
    a2 = rng.uniform(-1.5, 1.5, 200)
    tags, d, g = moduli.region_grid(a1, a2)
    for i in range(200):
        want = moduli.region_classify_xy(
            (2 * math.cos(a1[i])) ** 2, (2 * math.cos(a2[i])) ** 2
        )
        assert tags[i] == want.tag.value


def test_commutator_class():
    assert moduli.commutator_class(Params(0, 0)).tag == "loxodromic"
    assert moduli.commutator_class(Params(0, 0)).g_value == pytest.approx(1125.0)
    lim = moduli.commutator_class(Params(0.0, ALPHA2_LIM))
    assert lim.tag == "parabolic" and lim.marginal
    assert moduli.commutator_class(Params(0, 1.4)).tag == "elliptic"


def test_commutator_equals_STinv_cubed():
    rng = np.random.default_rng(15)
    for p in rand_params(rng, 10):
        gd = moduli.build_group(p)
        comm = (gd.A @ gd.B @ gd.A.inverse() @ gd.B.inverse()).m
        cube = (gd.S @ gd.T.inverse()).power(3).m
        i = np.unravel_index(np.argmax(np.abs(cube)), cube.shape)
        assert np.abs(comm - (comm[i] / cube[i]) * cube).max() < 1e-10


def test_symmetry_maps_generic():
    rng = np.random.default_rng(16)
    for p in rand_params(rng, 10):
        gd = moduli.build_group(p)
        sym = moduli.symmetry_maps(p)
        # iota^2 = id
        v = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        assert np.abs(sym.iota.raw(sym.iota.raw(v)) - v).max() < 1e-12
        # iota swaps the fixed points
        assert np.abs(np.cross(sym.iota(gd.pA), gd.pB)).max() < 1e-12
        assert np.abs(np.cross(sym.iota.raw(gd.pAB), gd.pBA)).max() < 1e-10
        # iota S iota = T and iota A iota = B projectively
        for g, h in ((gd.S, gd.T), (gd.A, gd.B)):
            m = sym.iota.m @ np.conj(g.m) @ np.conj(sym.iota.m)
            i = np.unravel_index(np.argmax(np.abs(h.m)), (3, 3))
            assert np.abs(m - (m[i] / h.m[i]) * h.m).max() < 1e-12
        # phi^2 = A projectively
        p2 = sym.phi.m @ np.conj(sym.phi.m)
        i = np.unravel_index(np.argmax(np.abs(gd.A.m)), (3, 3))
        assert np.abs(p2 - (p2[i] / gd.A.m[i]) * gd.A.m).max() < 1e-12
        # phi shifts the invariant line by ell_A / 2
        x = rng.uniform(-2, 2)
        img = sym.phi.on_heis(sym.delta_phi(x))
        tgt = sym.delta_phi(x + p.ell_a / 2)
        assert abs(img.z - tgt.z) < 1e-12 and abs(img.t - tgt.t) < 1e-11
        assert sym.involutions is None


def test_symmetry_maps_on_axes():
    # alpha1 = 0: S = I2 I1, T = I1 I3 with involutions
    p = Params(0.0, 0.47)
    gd = moduli.build_group(p)
    sym = moduli.symmetry_maps(p)
    I1, I2, I3 = sym.involutions
    for I in (I1, I2, I3):
        sq = (I @ I).m
        assert np.abs(sq - sq[0, 0] * np.eye(3)).max() < 1e-12
    assert np.abs((I2 @ I1).m - gd.S.m).max() < 1e-12
    assert np.abs((I1 @ I3).m - gd.T.m).max() < 1e-12
    # alpha2 = 0: A = I2' I1', B = I1' I3'
    p = Params(-0.52, 0.0)
    gd = moduli.build_group(p)
    I1, I2, I3 = moduli.symmetry_maps(p).involutions
    for I in (I1, I2, I3):
        sq = (I @ I).m
        assert np.abs(sq - sq[0, 0] * np.eye(3)).max() < 1e-12
    assert np.abs((I2 @ I1).m - gd.A.m).max() < 1e-12
    assert np.abs((I1 @ I3).m - gd.B.m).max() < 1e-12


def test_limit_phi_heisenberg_formula():
    # at the limit parameters phi acts as [z,t] -> [conj z + sqrt(3/8) + i sqrt(5/8), ...]
    p = Params(0.0, ALPHA2_LIM)
    sym = moduli.symmetry_maps(p)
    rng = np.random.default_rng(17)
    for _ in range(20):
        z = complex(*rng.standard_normal(2))
        t = rng.standard_normal()
        img = sym.phi.on_heis(core.HeisPoint(z, t))
        ez = z.conjugate() + math.sqrt(3 / 8) + 1j * math.sqrt(5 / 8)
        et = -t + z.real * math.sqrt(5 / 2) + z.imag * math.sqrt(3 / 2)
        assert abs(img.z - ez) < 1e-12
        assert abs(img.t - et) < 1e-12


def test_axis_flip_trace_ledger():
    # (alpha1, alpha2) -> (-alpha1, alpha2) sends (S,T) to (S^-1, T^-1):
    # the trace of S T^-1 gets conjugated; the horizontal flip preserves it
    rng = np.random.default_rng(18)
    for p in rand_params(rng, 10):
        t0 = (moduli.build_group(p).S @ moduli.build_group(p).T.inverse()).trace
        pv = Params(-p.alpha1, p.alpha2)
        tv = (moduli.build_group(pv).S @ moduli.build_group(pv).T.inverse()).trace
        assert tv == pytest.approx(np.conj(t0), abs=1e-10)
        ph = Params(p.alpha1, -p.alpha2)
        th = (moduli.build_group(ph).S @ moduli.build_group(ph).T.inverse()).trace
        assert th == pytest.approx(t0, abs=1e-10)


def test_quartic_factorisations():
    c0 = moduli.quartic_L(Params(0.0, 0.0))
    assert np.abs(c0 - np.array([25.0, 0, -70, 0, 49])).max() < 1e-12
    cl = moduli.quartic_L(Params(0.0, ALPHA2_LIM))
    assert np.abs(cl - np.array([25.0, 0, -30, 0, 9])).max() < 1e-12
    r0 = moduli.real_roots_quartic(list(c0))
    assert [m for _, m in r0] == [2, 2]
    assert r0[1][0] == pytest.approx(math.sqrt(7 / 5), abs=1e-10)
    rl = moduli.real_roots_quartic(list(cl))
    assert [m for _, m in rl] == [2, 2]
    assert rl[1][0] == pytest.approx(math.sqrt(3 / 5), abs=1e-10)
    assert not moduli.has_root_in_unit_interval(list(c0)).found
    rep = moduli.has_root_in_unit_interval(list(cl))
    assert rep.found and rep.multiplicities == (2, 2)


def test_quartic_on_alpha2_axis_is_perfect_square():
    # L = M^2 with M(T) = T^2 (3 x1^2 - 1) - 4 T sin(a1) - (3 x1^2 + 1)
    rng = np.random.default_rng(19)
    for _ in range(20):
        a1 = rng.uniform(-math.pi / 6, math.pi / 6)
        p = Params(a1, 0.0)
        c = moduli.quartic_L(p)
        m = np.array([3 * p.x1sq - 1, -4 * math.sin(a1), -(3 * p.x1sq + 1)])
        sq = np.convolve(m, m)
        assert np.abs(c - sq).max() < 1e-12
        # double roots lie outside [-1, 1]
        roots = moduli.real_roots_quartic(list(c))
        assert all(abs(r) > 1 for r, _ in roots)
        assert not moduli.has_root_in_unit_interval(list(c)).found


def test_has_root_constructed_factorisation():
    # (T^2 - 1/4)(T^2 + 1) has roots +-1/2 in the unit interval
    coeffs = [1.0, 0.0, 0.75, 0.0, -0.25]
    rep = moduli.has_root_in_unit_interval(coeffs)
    assert rep.found
    assert rep.roots == pytest.approx((-0.5, 0.5), abs=1e-12)


def test_degenerate_leading_coefficient_warns():
    with pytest.warns(RuntimeWarning):
        moduli.real_roots_quartic([0.0, 0.0, 1.0, 0.0, -1.0])


def test_discriminant_identity_exact():
    rng = np.random.default_rng(20)
    for _ in range(100):
        a1 = rng.uniform(-math.pi / 6, math.pi / 6)
        a2 = rng.uniform(-ALPHA2_LIM, ALPHA2_LIM)
        x1s, s1, y = moduli.rationalize_params(a1, a2)
        closed = moduli.discriminant_closed_xy(x1s, y)
        alg = moduli.quartic_resultant_discriminant(
            moduli.quartic_coeffs_xsy(x1s, s1, y)
        )
        assert closed == alg  # exact rational identity


def test_discriminant_sign_and_axis():
    rng = np.random.default_rng(21)
    # sign(Delta) = sign(D) on R away from alpha2 = 0
    for _ in range(100):
        p = Params(rng.uniform(-math.pi / 6, math.pi / 6),
                   rng.uniform(0.05, ALPHA2_LIM))
        d = moduli.poly_D(p.x14, p.x24)
        if abs(d) > 1e-6:
            assert np.sign(moduli.discriminant(p)) == np.sign(d)
    # Delta vanishes on the alpha2 = 0 axis (factor (4 - x2^4)^2)
    assert moduli.discriminant(Params(0.3, 0.0)) == 0.0
    assert moduli.discriminant(Params(0.0, math.pi / 4)) > 0


def test_root_criterion_matches_D_sign():
    rng = np.random.default_rng(22)
    for _ in range(150):
        p = Params(rng.uniform(-math.pi / 6, math.pi / 6),
                   rng.uniform(-ALPHA2_LIM, ALPHA2_LIM))
        d = moduli.poly_D(p.x14, p.x24)
        if abs(d) <= 1e-4:
            continue
        found = moduli.has_root_in_unit_interval(list(moduli.quartic_L(p))).found
        assert found == (d < 0)


def test_leading_coeff_positive_on_R():
    assert moduli.leading_coeff_positive_on_R()


def test_trace_boundary_Z():
    tr = moduli.trace_boundary("Z", 40)
    assert not tr.failures
    assert len(tr.branches) == 4
    for branch in tr.branches:
        for a1, a2 in branch:
            d = moduli.poly_D(4 * math.cos(a1) ** 2, 4 * math.cos(a2) ** 2)
            assert abs(d) < 1e-9
    # endpoints: (x,y) = (3,4) <-> (pi/6, 0) and (4, 3/2) <-> (0, alpha2_lim)
    first, last = tr.branches[0][0], tr.branches[0][-1]
    assert first == pytest.approx((math.pi / 6, 0.0), abs=1e-9)
    assert last == pytest.approx((0.0, ALPHA2_LIM), abs=1e-9)


def test_trace_boundary_P():
    tr = moduli.trace_boundary("P", 40)
    assert not tr.failures
    for branch in tr.branches:
        for a1, a2 in branch:
            g = moduli.poly_G(4 * math.cos(a1) ** 2, 4 * math.cos(a2) ** 2)
            assert abs(g) < 1e-8
    # the curve meets the alpha1 axis at x = 3/32, i.e. arccos(sqrt(3/128))
    first = tr.branches[0][0]
    assert first[0] == pytest.approx(math.acos(math.sqrt(3 / 128)), abs=1e-9)
    assert first[1] == pytest.approx(0.0, abs=1e-9)
    # the cusp (0, alpha2_lim) is a triple root of G(4, .), so bisection can
    # only localise it to the cube root of the evaluation noise
    assert tr.branches[0][-1] == pytest.approx((0.0, ALPHA2_LIM), abs=1e-4)
