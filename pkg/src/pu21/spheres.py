r"""Cygan spheres, isometric spheres and their intersections.

The isometric sphere of an element g not fixing q_inf is the Cygan sphere of
radius 1/|g31|^(1/2) centred at g^-1(q_inf).  For the groups of this package
the relevant family is ``I_k^+ = I(A^k S A^-k)`` and
``I_k^- = I(A^k S^-1 A^-k)``: all have radius 1, with centres
``[k ell_A, k t_A]`` and ``[k ell_A + sqrt(cos a1) e^{i a2}, -sin a1]``.

Points of the unit sphere at the origin carry geographical coordinates
(alpha, beta, w) with lift (-e^{-i alpha}, w e^{i(-alpha/2+beta)}, 1); slices
(alpha constant) are complex lines and meridians (beta constant) Lagrangian
planes.  Membership of a point of I_0^+ in I_0^- and I_-1^- is measured by
the functions f0 = |<q, p_AB>|^2 - 1 and fm1 = |<q, p_BA>|^2 - 1, and the
triple intersection I_0^+ n I_0^- n I_-1^- lives on the meridian
beta = (pi - alpha1)/2, where its boundary trace reduces to the quartic of
:mod:`pu21.moduli` under T = tan(alpha/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import (
    GroupElement,
    HeisPoint,
    cygan_distance,
    default_eps,
    heis_of_lift,
    heisenberg_matrix,
    hermitian_product,
    is_infinity,
)
from .moduli import (
    Params,
    fixed_point_lifts,
    has_root_in_unit_interval,
    quartic_L,
)

__all__ = [
    "CyganSphere",
    "GeoCoord",
    "Membership",
    "SphereFamily",
    "isometric_sphere",
    "geo_lift",
    "geo_to_point",
    "membership",
    "f_functions",
    "meridian_beta",
    "exterior_meridian_value",
    "TripleIntersection",
    "triple_intersection",
    "meridian_scan",
    "meridian_scan_grid",
    "quartic_min_grid",
    "closed_form_d4_plus",
    "closed_form_d4_minus",
    "pairwise_disjointness_certificate",
    "pair_intersection_points",
    "vertical_projection",
    "projection_disc_records",
]


@dataclass(frozen=True)
class CyganSphere:
    """A Cygan sphere: Heisenberg centre and radius."""

    center: HeisPoint
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("radius must be positive")

    def translate_matrix(self) -> GroupElement:
        return heisenberg_matrix(HeisPoint(self.center.z, self.center.t))


class Membership(Enum):
    INTERIOR = "interior"
    ON = "on"
    EXTERIOR = "exterior"


def membership(sphere: CyganSphere, q, eps: float | None = None) -> Membership:
    """Position of a point (lift or HeisPoint) relative to the sphere."""
    eps = default_eps() if eps is None else eps
    if isinstance(q, HeisPoint):
        h = q
    else:
        if is_infinity(q):
            return Membership.EXTERIOR
        h = heis_of_lift(q)
    d = cygan_distance(h, sphere.center)
    if abs(d - sphere.radius) <= eps:
        return Membership.ON
    return Membership.INTERIOR if d < sphere.radius else Membership.EXTERIOR


def isometric_sphere(g: GroupElement, eps: float | None = None) -> CyganSphere:
    """Isometric sphere of g: centre g^-1(q_inf), radius 1/|g31|^(1/2)."""
    eps = default_eps() if eps is None else eps
    g31 = g.m[2, 0]
    if abs(g31) <= eps * max(1.0, float(np.abs(g.m).max())):
        raise ValueError("element fixes q_inf; no isometric sphere")
    gg, hh, jj = g.m[2, 0], g.m[2, 1], g.m[2, 2]
    center = HeisPoint(
        complex(hh.conjugate() / (gg.conjugate() * math.sqrt(2))),
        float((jj.conjugate() / gg.conjugate()).imag),
    )
    return CyganSphere(center, 1.0 / math.sqrt(abs(g31)))


@dataclass(frozen=True)
class GeoCoord:
    """Geographical coordinates on a radius-1 Cygan sphere.

    alpha in [-pi/2, pi/2], beta in [0, pi), w^2 <= 2 cos(alpha); boundary
    points have w = +-sqrt(2 cos alpha) and w = 0 is the spine.
    """

    alpha: float
    beta: float
    w: float

    def __post_init__(self):
        if abs(self.alpha) > math.pi / 2 + 1e-12:
            raise ValueError("alpha outside [-pi/2, pi/2]")
        if self.w**2 > 2.0 * math.cos(self.alpha) + 1e-9:
            raise ValueError("w^2 exceeds 2 cos(alpha)")


def geo_lift(c: GeoCoord) -> np.ndarray:
    """Lift of g(alpha, beta, w) on the unit sphere centred at the origin."""
    return np.array(
        [
            -np.exp(-1j * c.alpha),
            c.w * np.exp(1j * (-c.alpha / 2 + c.beta)),
            1.0,
        ],
        dtype=complex,
    )


def geo_to_point(sphere: CyganSphere, c: GeoCoord) -> np.ndarray:
    """Lift of the geographical point of a radius-1 sphere (centre-translated)."""
    if abs(sphere.radius - 1.0) > 1e-12:
        raise ValueError("geographical coordinates are set up for radius-1 spheres")
    return sphere.translate_matrix().m @ geo_lift(c)


@dataclass(frozen=True)
class SphereFamily:
    """The A-translates I_k^+ = A^k I(S), I_k^- = A^k I(S^-1)."""

    params: Params

    def plus(self, k: int) -> CyganSphere:
        p = self.params
        return CyganSphere(HeisPoint(k * p.ell_a + 0j, k * p.t_a), 1.0)

    def minus(self, k: int) -> CyganSphere:
        p = self.params
        zc = k * p.ell_a + math.sqrt(math.cos(p.alpha1)) * np.exp(1j * p.alpha2)
        return CyganSphere(HeisPoint(complex(zc), -math.sin(p.alpha1)), 1.0)

    def sphere(self, kind: str, k: int) -> CyganSphere:
        if kind == "+":
            return self.plus(k)
        if kind == "-":
            return self.minus(k)
        raise ValueError("kind must be '+' or '-'")


def meridian_beta(p: Params) -> float:
    """The meridian of I_0^+ containing the triple intersection."""
    return (math.pi - p.alpha1) / 2.0


def f_functions(p: Params, c: GeoCoord) -> tuple[float, float]:
    """(f0, fm1) at a point of I_0^+: signed membership in I_0^- and I_-1^-.

    f0 = |<q, p_AB>|^2 - 1 and fm1 = |<q, p_BA>|^2 - 1.  Both are computed
    from the closed trigonometric forms and cross-checked against the direct
    Hermitian products; a disagreement beyond 1e-10 raises.
    """
    a1, a2 = p.alpha1, p.alpha2
    x1 = p.x1
    th = (c.alpha - a1) / 2.0
    common = 2.0 * math.cos(th) ** 2 + math.cos(c.alpha - a1) + c.w**2 * x1**2
    f0 = common - 4.0 * c.w * x1 * math.cos(th) * math.cos(c.beta + a1 / 2 - a2)
    fm1 = common + 4.0 * c.w * x1 * math.cos(th) * math.cos(c.beta + a1 / 2 + a2)
    _, _, pAB, pBA = fixed_point_lifts(p)
    q = geo_lift(c)
    f0_h = abs(hermitian_product(q, pAB)) ** 2 - 1.0
    fm1_h = abs(hermitian_product(q, pBA)) ** 2 - 1.0
    if abs(f0 - f0_h) > 1e-10 or abs(fm1 - fm1_h) > 1e-10:
        raise ArithmeticError(
            f"trigonometric and Hermitian evaluations disagree: "
            f"{f0} vs {f0_h}, {fm1} vs {fm1_h}"
        )
    return f0, fm1


def exterior_meridian_value(p: Params, alpha) -> np.ndarray | float:
    """Worst-case f0 + fm1 over the two boundary points of the meridian.

    Vanishing of this function of alpha characterises boundary triple
    intersection points; it is positive everywhere iff the triple
    intersection is empty.
    """
    a1 = p.alpha1
    ca = np.cos(alpha)
    cth = np.cos((np.asarray(alpha) - a1) / 2.0)
    return (
        4.0 * cth**2
        + 2.0 * np.cos(np.asarray(alpha) - a1)
        + 8.0 * ca * math.cos(a1)
        - 16.0 * np.sqrt(np.maximum(ca, 0.0) * math.cos(a1)) * cth * abs(math.sin(p.alpha2))
    )


@dataclass(frozen=True)
class TripleIntersection:
    """Verdict on I_0^+ n I_0^- n I_-1^-; points lie on the meridian."""

    empty: bool
    points: tuple[GeoCoord, ...] = ()
    roots: tuple[float, ...] = ()
    marginal: bool = False


def triple_intersection(p: Params, eps: float | None = None) -> TripleIntersection:
    """Locate the triple intersection through the quartic substitution.

    The intersection is confined to the meridian beta = (pi - alpha1)/2 and,
    if non-empty, reaches the boundary at infinity, where T = tan(alpha/2)
    must be a root of the quartic L in [-1, 1].  Roots are isolated by
    bisection; double roots (tangency, on the boundary of Z) are picked up
    as near-zero critical values.  The w sign realising contact is the one
    with w sin(alpha2) >= 0.

    Raises ArithmeticError if direct evaluation of the meridian function at
    the reported roots contradicts the quartic verdict.
    """
    eps = default_eps() if eps is None else eps
    if not p.in_rectangle:
        raise ValueError("triple_intersection requires parameters in the rectangle R")
    coeffs = quartic_L(p)
    report = has_root_in_unit_interval(coeffs)
    beta = meridian_beta(p)
    if not report.found:
        alphas = np.linspace(-math.pi / 2, math.pi / 2, 201)
        if float(np.min(exterior_meridian_value(p, alphas))) < -1e-6:
            raise ArithmeticError("quartic says empty but meridian sampling finds contact")
        return TripleIntersection(True)
    pts = []
    marginal = any(m >= 2 for m in report.multiplicities)
    for t in report.roots:
        alpha = 2.0 * math.atan(t)
        if abs(float(exterior_meridian_value(p, alpha))) > 1e-6:
            raise ArithmeticError("quartic root does not satisfy the meridian equation")
        w = math.sqrt(2.0 * math.cos(alpha))
        if math.sin(p.alpha2) < 0:
            w = -w
        pts.append(GeoCoord(alpha, beta, w))
    return TripleIntersection(False, tuple(pts), report.roots, marginal)


def meridian_scan(p: Params, resolution: float = 1e-3) -> tuple[float, float, int]:
    """Brute-force oracle: min of max(f0, fm1) over the boundary meridian.

    Scans alpha in [-pi/2, pi/2] at the given resolution and both signs of
    w = +-sqrt(2 cos alpha), evaluating the memberships by direct Hermitian
    products.  Returns (min value, argmin alpha, w sign).  The triple
    intersection is non-empty iff the minimum is <= 0.
    """
    n = int(math.ceil(math.pi / resolution)) + 1
    alphas = np.linspace(-math.pi / 2, math.pi / 2, n)
    beta = meridian_beta(p)
    _, _, pAB, pBA = fixed_point_lifts(p)
    best = (math.inf, 0.0, 1)
    for sign in (1, -1):
        w = sign * np.sqrt(2.0 * np.cos(alphas))
        q1 = -np.exp(-1j * alphas)
        q2 = w * np.exp(1j * (-alphas / 2 + beta))
        # <q, c> for standard-lift centre c = (c1, c2, 1): conj(c1) + conj(c2) q2 + q1
        f0 = (
            np.abs(pAB[0].conjugate() + pAB[1].conjugate() * q2 + q1) ** 2 - 1.0
        )
        fm1 = (
            np.abs(pBA[0].conjugate() + pBA[1].conjugate() * q2 + q1) ** 2 - 1.0
        )
        vals = np.maximum(f0, fm1)
        i = int(np.argmin(vals))
        if vals[i] < best[0]:
            best = (float(vals[i]), float(alphas[i]), sign)
    return best


def meridian_scan_grid(
    a1_grid: np.ndarray,
    a2_grid: np.ndarray,
    resolution: float = 1e-3,
    chunk: int = 128,
) -> np.ndarray:
    """Vectorised meridian scan over flat parameter arrays.

    Returns, for each parameter point, the minimum of max(f0, fm1) over the
    (alpha, w-sign) grid, using direct Hermitian products only.
    """
    a1_grid = np.asarray(a1_grid, dtype=float).ravel()
    a2_grid = np.asarray(a2_grid, dtype=float).ravel()
    n = int(math.ceil(math.pi / resolution)) + 1
    alphas = np.linspace(-math.pi / 2, math.pi / 2, n)[None, :]
    out = np.empty(a1_grid.shape, dtype=float)
    for start in range(0, a1_grid.size, chunk):
        a1 = a1_grid[start : start + chunk][:, None]
        a2 = a2_grid[start : start + chunk][:, None]
        x1 = np.sqrt(2.0 * np.cos(a1))
        beta = (math.pi - a1) / 2.0
        q1 = -np.exp(-1j * alphas)
        phase = np.exp(1j * (-alphas / 2 + beta))
        wmag = np.sqrt(2.0 * np.cos(alphas))
        cAB1 = -np.exp(-1j * a1)  # conj of -e^{i a1}
        cAB2 = x1 * np.exp(-1j * a2)
        cBA2 = -x1 * np.exp(1j * a2)
        best = None
        for sign in (1.0, -1.0):
            q2 = sign * wmag * phase
            f0 = np.abs(cAB1 + cAB2 * q2 + q1) ** 2 - 1.0
            fm1 = np.abs(cAB1 + cBA2 * q2 + q1) ** 2 - 1.0
            m = np.maximum(f0, fm1).min(axis=1)
            best = m if best is None else np.minimum(best, m)
        out[start : start + chunk] = best
    return out


def _cubic_real_roots_vec(c3, c2, c1, c0):
    """Real roots of cubics with c3 != 0, vectorised; NaN pads complex pairs."""
    c3, c2, c1, c0 = (np.asarray(a, dtype=float) for a in (c3, c2, c1, c0))
    shift = c2 / (3.0 * c3)
    p = (3.0 * c3 * c1 - c2**2) / (3.0 * c3**2)
    q = (2.0 * c2**3 - 9.0 * c3 * c2 * c1 + 27.0 * c3**2 * c0) / (27.0 * c3**3)
    disc = -4.0 * p**3 - 27.0 * q**2
    roots = np.full(c3.shape + (3,), np.nan)
    three = disc >= 0
    # three real roots: trigonometric form (p < 0 there unless all roots equal)
    pm = np.where(three & (p < 0), p, -1.0)
    r = 2.0 * np.sqrt(-pm / 3.0)
    arg = np.clip(3.0 * q / (pm * r), -1.0, 1.0)
    theta = np.arccos(arg)
    for k in range(3):
        roots[..., k] = np.where(
            three, r * np.cos(theta / 3.0 - 2.0 * np.pi * k / 3.0) - shift, np.nan
        )
    # one real root: Cardano
    s = np.sqrt(np.where(~three, q**2 / 4.0 + p**3 / 27.0, 0.0))
    u = np.cbrt(-q / 2.0 + s)
    v = np.cbrt(-q / 2.0 - s)
    roots[..., 0] = np.where(~three, u + v - shift, roots[..., 0])
    # triple-root degenerate case (p ~ 0 ~ q)
    degen = three & (p >= 0)
    roots[..., 0] = np.where(degen, -shift, roots[..., 0])
    return roots


def quartic_min_grid(a1_grid: np.ndarray, a2_grid: np.ndarray) -> np.ndarray:
    """Minimum of the quartic L over [-1, 1], vectorised over parameters.

    The minimum is negative or zero exactly when the triple intersection is
    non-empty (tangency included), so this is the quartic-route verdict for
    whole-grid scans.  Candidates are the endpoints and the real critical
    points, obtained from the closed-form cubic solution (no eigensolver).
    """
    a1 = np.asarray(a1_grid, dtype=float).ravel()
    a2 = np.asarray(a2_grid, dtype=float).ravel()
    x1s = 2.0 * np.cos(a1)
    x14 = x1s**2
    y = (2.0 * np.cos(a2)) ** 2
    s1 = np.sin(a1)
    a4 = 2 * x14 * y - 4 * x1s * y + x14 + 10 * x1s + 1
    a3 = -8 * s1 * (x1s * y - x1s - 1)
    a2c = -2 * (2 * x14 * y + 3 * x14 - 9)
    a1c = 8 * s1 * (x1s * y - x1s + 1)
    a0 = 2 * x14 * y + 4 * x1s * y + x14 - 10 * x1s + 1

    def L(t):
        return (((a4 * t + a3) * t + a2c) * t + a1c) * t + a0

    best = np.minimum(L(np.full_like(a4, -1.0)), L(np.full_like(a4, 1.0)))
    crit = _cubic_real_roots_vec(4 * a4, 3 * a3, 2 * a2c, a1c)
    for k in range(3):
        t = crit[..., k]
        inside = np.isfinite(t) & (np.abs(t) <= 1.0)
        vals = np.where(inside, L(np.where(inside, t, 0.0)), np.inf)
        best = np.minimum(best, vals)
    return best


# ---------------------------------------------------------------------------
# Pairwise disjointness
# ---------------------------------------------------------------------------


def closed_form_d4_plus(x14, x24, k: int):
    """d_Cyg(A^k p_B, p_B)^4 = (k^4 x1^4 x2^8 + k^2 x1^4 x2^4 (4 - x2^4)) / 4."""
    return (k**4 * x14 * x24**2 + k**2 * x14 * x24 * (4 - x24)) / 4


def closed_form_d4_minus(x14, x24, k: int):
    """d_Cyg(A^k p_AB, p_B)^4 = 1 + (k^2(k+1)^2 x1^4 x2^8 + 2k(k+1) x1^4 x2^4)/4."""
    kk = k * (k + 1)
    return 1 + (kk**2 * x14 * x24**2 + 2 * kk * x14 * x24) / 4


#: The four isometric spheres meeting I_0^+ inside Z.
ALLOWED_NEIGHBOURS = (("+", 1), ("+", -1), ("-", 0), ("-", -1))


def pairwise_disjointness_certificate(p: Params, window: int = 5, eps: float | None = None) -> dict:
    """Certify which I_k^+/- meet I_0^+ within the window.

    For every k in the window the closed-form fourth powers of the Cygan
    distances from the centre of I_0^+ are evaluated and compared with 16
    (= (sum of radii)^4): at least 16 certifies disjointness.  The sphere
    pairs below the threshold must be exactly the four allowed neighbours.
    Beyond the window the k^4 term dominates; the certificate reports the
    window-edge values as the monotone tail bound.
    """
    eps = default_eps() if eps is None else eps
    x14, x24 = p.x14, p.x24
    overlaps = []
    marginal = []
    rows = []
    for k in range(-window, window + 1):
        for kind, d4 in (("+", closed_form_d4_plus(x14, x24, k)),
                         ("-", closed_form_d4_minus(x14, x24, k))):
            if kind == "+" and k == 0:
                continue  # the sphere itself
            rows.append({"kind": kind, "k": k, "d4": float(d4)})
            if d4 < 16.0 - eps:
                overlaps.append((kind, k))
            elif abs(d4 - 16.0) <= eps:
                marginal.append((kind, k))
    edge = {
        "+": float(closed_form_d4_plus(x14, x24, window)),
        "-": float(closed_form_d4_minus(x14, x24, window)),
    }
    tail_ok = (
        closed_form_d4_plus(x14, x24, window) > 16
        and closed_form_d4_minus(x14, x24, window) > 16
        and closed_form_d4_plus(x14, x24, -window) > 16
        and closed_form_d4_minus(x14, x24, -window) > 16
    )
    expected = set(ALLOWED_NEIGHBOURS)
    return {
        "window": window,
        "distances": rows,
        "overlapping": overlaps,
        "marginal": marginal,
        "window_edge_d4": edge,
        "tail_dominated": bool(tail_ok),
        "matches_allowed_neighbours": set(overlaps) <= expected,
    }


def pair_intersection_points(
    p: Params,
    kind1: str,
    k1: int,
    kind2: str,
    k2: int,
    n_alpha: int = 24,
    n_w: int = 13,
) -> list[np.ndarray]:
    """Sampled lifts of the intersection of two radius-1 family spheres.

    Works in the geographical coordinates of the first sphere: on a fixed
    (alpha, w) fibre the membership condition for the second sphere reads
    |K + M e^{i beta}| = 1, so the beta solutions are closed-form; the
    sampling can only miss the intersection by skipping fibres, never in
    the beta direction.
    """
    from .core import standard_lift

    fam = SphereFamily(p)
    t = fam.sphere(kind1, k1).translate_matrix()
    c = standard_lift(np.linalg.inv(t.m) @ fam.sphere(kind2, k2).center.lift())
    pts = []
    for alpha in np.linspace(-math.pi / 2 * 0.999, math.pi / 2 * 0.999, n_alpha):
        wmax = math.sqrt(2.0 * math.cos(alpha))
        K = np.conj(c[0]) - np.exp(-1j * alpha)
        for w in np.linspace(-wmax, wmax, n_w):
            M = w * np.conj(c[1]) * np.exp(-1j * alpha / 2)
            if abs(K) < 1e-14 or abs(M) < 1e-14:
                continue
            rhs = (1.0 - abs(K) ** 2 - abs(M) ** 2) / (2.0 * abs(K) * abs(M))
            if abs(rhs) > 1.0:
                continue
            phase = np.angle(M) - np.angle(K)
            for sgn in (1.0, -1.0):
                beta = -phase + sgn * math.acos(rhs)
                pts.append(t.m @ geo_lift(GeoCoord(alpha, beta, w)))
    return pts


def vertical_projection(sphere: CyganSphere) -> tuple[complex, float]:
    """Projection of the sphere's ideal boundary to C: a closed disc."""
    return complex(sphere.center.z), float(sphere.radius)


def projection_disc_records(p: Params, k_range: int) -> list[dict]:
    """JSON-ready projection discs of I_k^+/- for |k| <= k_range."""
    fam = SphereFamily(p)
    records = []
    for k in range(-k_range, k_range + 1):
        for kind in ("+", "-"):
            c, r = vertical_projection(fam.sphere(kind, k))
            records.append(
                {
                    "label": f"{k}{kind}",
                    "center_re": c.real,
                    "center_im": c.imag,
                    "radius": r,
                }
            )
    return records
