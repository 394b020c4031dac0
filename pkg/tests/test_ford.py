"""Ford polyhedron combinatorics and words in Z3 * Z3."""

import math

import numpy as np
import pytest

from pu21 import core, ford, moduli
from pu21.ford import DomainLocation, FordDomain, RidgeTag
from pu21.moduli import ALPHA2_LIM, Params

S1 = ("s", 1)
T1 = ("t", 1)


def test_reduce_word_basics():
    assert ford.reduce_word([S1, S1, S1]) == ()
    assert ford.reduce_word([S1, ("t", 3), S1]) == (("s", 2),)
    assert ford.reduce_word([S1, ("s", 1)]) == (("s", 2),)
    assert ford.reduce_word([("s", -1)]) == (("s", 2),)
    assert ford.reduce_word([S1, ("t", 2), ("t", 1), ("s", 2)]) == ()
    with pytest.raises(ValueError):
        ford.reduce_word([("x", 1)])


def test_reduce_word_idempotent_and_alternating():
    rng = np.random.default_rng(50)
    for _ in range(300):
        raw = [("st"[rng.integers(2)], int(rng.integers(-6, 7))) for _ in range(10)]
        red = ford.reduce_word(raw)
        assert ford.reduce_word(red) == red
        for (l1, e1), (l2, e2) in zip(red, red[1:]):
            assert l1 != l2
        assert all(e in (1, 2) for _, e in red)


def test_reduce_is_monoid_homomorphism():
    rng = np.random.default_rng(53)
    for _ in range(200):
        a = [("st"[rng.integers(2)], int(rng.integers(-4, 5))) for _ in range(6)]
        b = [("st"[rng.integers(2)], int(rng.integers(-4, 5))) for _ in range(6)]
        lhs = ford.reduce_word(list(a) + list(b))
        rhs = ford.reduce_word(list(ford.reduce_word(a)) + list(ford.reduce_word(b)))
        assert lhs == rhs


def test_word_algebra():
    u = (S1, T1)
    assert ford.word_mul(u, ford.word_inverse(u)) == ()
    assert ford.word_power(u, 0) == ()
    assert ford.word_power([S1], 5) == (("s", 2),)
    assert ford.word_str(()) == "1"
    assert ford.word_str((("s", 1), ("t", 2))) == "s.t2"


def test_whitehead_relator_collapses():
    # rel(u,v) with u = st, v = tst dies in Z3 * Z3
    u = (S1, T1)
    v = (T1, S1, T1)
    assert ford.rel_word(u, v) == ()
    # ... and is equivalent to the displayed commutator [st, s^-1 t^-3 s^-2]
    w = ford.commutator_word(u, [("s", -1), ("t", -3), ("s", -2)])
    assert w == ()


def test_enumerate_counts():
    words = list(ford.enumerate_reduced_words(3))
    assert len(words) == 4 + 8 + 16
    assert len(set(words)) == len(words)
    words8 = list(ford.enumerate_reduced_words(8))
    assert len(words8) == 4 * (2**8 - 1)


def test_evaluation_factors_through_reduction():
    gd = moduli.build_group(Params(0.17, -0.41))
    rng = np.random.default_rng(51)
    for _ in range(50):
        raw = [("st"[rng.integers(2)], int(rng.integers(-5, 6))) for _ in range(8)]
        m1 = ford.evaluate_word(raw, gd.S, gd.T).m
        m2 = ford.evaluate_word(ford.reduce_word(raw), gd.S, gd.T).m
        i = np.unravel_index(np.argmax(np.abs(m1)), m1.shape)
        assert np.abs(m2 - (m2[i] / m1[i]) * m1).max() < 1e-10


def test_side_pairing():
    p = Params(0.2, 0.3)
    gd = moduli.build_group(p)
    # sigma(s_0^+) = S sends the centre of I_-1^- to the centre of I_1^+
    lhs = gd.S.apply((gd.A.inverse() @ gd.S).apply(core.Q_INFINITY))
    rhs = (gd.A @ gd.S.inverse()).apply(core.Q_INFINITY)
    assert np.abs(np.cross(lhs, rhs)).max() < 1e-12
    # inverse pairing composes to the identity
    prod = (ford.side_pairing(gd, "+", 0) @ ford.side_pairing(gd, "-", 0)).m
    assert np.abs(prod - prod[0, 0] * np.eye(3)).max() < 1e-12
    # compatibility sigma(A^k s) = A^k sigma(s) A^-k
    for k in (-2, 1, 3):
        lhs = ford.side_pairing(gd, "-", k).m
        rhs = (gd.A.power(k) @ ford.side_pairing(gd, "-", 0) @ gd.A.power(-k)).m
        assert np.abs(lhs - rhs).max() < 1e-10


def test_ridge_cycles():
    gd = moduli.build_group(Params(0.05, -0.25))
    rho, order = ford.ridge_cycle(gd, RidgeTag("+", 0))
    assert order == 3
    assert np.abs(rho.m - gd.S.m).max() < 1e-14
    rho, _ = ford.ridge_cycle(gd, RidgeTag("-", 0))
    # rho(r_0^-) = A^-1 S = T^-1 projectively
    t_inv = gd.T.inverse().m
    i = np.unravel_index(np.argmax(np.abs(t_inv)), t_inv.shape)
    assert np.abs(rho.m - (rho.m[i] / t_inv[i]) * t_inv).max() < 1e-12
    # rho(r_1^-) is the A-conjugate of rho(r_0^-)
    rho1, _ = ford.ridge_cycle(gd, RidgeTag("-", 1))
    conj = (gd.A @ rho @ gd.A.inverse()).m
    assert np.abs(rho1.m - conj).max() < 1e-10


def test_membership():
    p = Params(0.0, 0.0)
    dom = FordDomain(p)
    m = dom.membership(core.HeisPoint(0j, 0.0))  # the centre of I_0^+
    assert m.location is DomainLocation.OUTSIDE and m.witnesses == (("+", 0),)
    far = dom.membership(core.HeisPoint(10j, 0.0))
    assert far.location is DomainLocation.INSIDE
    assert dom.membership(core.Q_INFINITY).location is DomainLocation.INSIDE
    # a point on I_0^+ itself
    on = dom.membership(core.HeisPoint(0j, 1.0), eps=1e-9)
    assert on.location is DomainLocation.ON_SIDE and ("+", 0) in on.witnesses


def test_membership_is_A_equivariant():
    p = Params(0.3, 0.2)
    dom = FordDomain(p)
    gd = moduli.build_group(p)
    rng = np.random.default_rng(52)
    for _ in range(30):
        h = core.HeisPoint(complex(*rng.standard_normal(2)) * 2, rng.standard_normal())
        base = dom.membership(h).location
        moved = dom.membership(gd.A.power(7).m @ h.lift()).location
        assert base is moved


def test_delta_phi_outside_at_limit():
    p = Params(0.0, ALPHA2_LIM)
    dom = FordDomain(p)
    sym = moduli.symmetry_maps(p)
    for x in np.linspace(-4.0, 4.0, 201):
        assert dom.membership(sym.delta_phi(float(x))).location is DomainLocation.OUTSIDE


def test_presentation_gate():
    rels = ford.presentation(Params(0.0, 0.0))
    assert rels["relations_SA"] == ["S^3", "(A^-1 S)^3"]
    assert rels["relations_ST"] == ["S^3", "T^3"]
    # available on the boundary of Z as well (limit group)
    ford.presentation(Params(0.0, ALPHA2_LIM))
    with pytest.raises(ValueError):
        ford.presentation(Params(0.8, 1.2))


def test_projective_identity_distance():
    gd = moduli.build_group(Params(0.23, 0.11))
    w = np.exp(2j * np.pi / 3)
    assert ford.projective_identity_distance(w * np.eye(3)) < 1e-15
    assert ford.projective_identity_distance(gd.S.power(3)) < 1e-12
    assert ford.projective_identity_distance(gd.S) > 1.0


def test_freeness_probe():
    rep = ford.freeness_probe(Params(0.0, 0.0), 5)
    assert not rep["counterexamples"]
    assert rep["min_distance_st_words"] > 1e-6
    assert rep["min_distance_ab_words"] > 1e-6
    # st and ts are distinct elements
    gd = moduli.build_group(Params(0.0, 0.0))
    st = ford.evaluate_word([S1, T1], gd.S, gd.T).m
    ts = ford.evaluate_word([T1, S1], gd.S, gd.T).m
    i = np.unravel_index(np.argmax(np.abs(st)), st.shape)
    assert np.abs(ts - (ts[i] / st[i]) * st).max() > 1e-6
