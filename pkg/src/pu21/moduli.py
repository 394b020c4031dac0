r"""The (alpha1, alpha2) parameter square of unipotent two-generator groups.

Each point of the open square (-pi/2, pi/2)^2 determines, up to conjugacy, a
pair (A, B) of unipotent isometries with unipotent product.  This module
builds the normalised generator matrices, the order-three decomposition
A = S T, B = T S, the fixed-point lifts, the antiholomorphic symmetries, and
the polynomial machinery that classifies the commutator and cuts out the
discreteness region:

* ``poly_G(x,y) = x^2 y^4 - 4 x^2 y^3 + 18 x y^2 - 27`` evaluated at
  (x1^4, x2^4) has the sign of the commutator's isometry type,
* ``poly_D(x,y) = x^3 y^3 - 9 x^2 y^2 - 27 x y^2 + 81 x y - 27 x - 27``
  is positive exactly on the region Z of the reference rectangle R where the
  three key isometric spheres have empty triple intersection,
* the quartic ``quartic_L`` in T = tan(alpha/2) whose roots in [-1,1] locate
  that triple intersection, and its resultant-normalised discriminant.

Both polynomials are evaluated with whatever number type they are handed, so
``fractions.Fraction`` inputs give exact values.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from .core import (
    GroupElement,
    IsometryTag,
    Q_INFINITY,
    classify,
    default_eps,
    HeisPoint,
    standard_lift,
)

__all__ = [
    "ALPHA2_LIM",
    "Params",
    "GroupData",
    "RegionTag",
    "RegionClass",
    "CommutatorClass",
    "AntiholomorphicMap",
    "SymmetryMaps",
    "RootReport",
    "poly_D",
    "poly_G",
    "in_rectangle_xy",
    "build_group",
    "region_classify",
    "region_classify_xy",
    "region_grid",
    "commutator_class",
    "symmetry_maps",
    "quartic_L",
    "quartic_coeffs_xsy",
    "discriminant",
    "discriminant_closed_xy",
    "quartic_resultant_discriminant",
    "polyval",
    "real_roots_quartic",
    "has_root_in_unit_interval",
    "leading_coeff_positive_on_R",
    "trace_boundary",
    "rationalize_params",
]

#: alpha2 value of the two cusps of the parabolicity curve on the vertical axis.
ALPHA2_LIM = math.acos(math.sqrt(3.0 / 8.0))

_SQRT2 = math.sqrt(2.0)


def poly_D(x, y):
    """Discreteness-region polynomial; positive on Z (exact for exact inputs)."""
    return x**3 * y**3 - 9 * x**2 * y**2 - 27 * x * y**2 + 81 * x * y - 27 * x - 27


def poly_G(x, y):
    """Commutator-type polynomial: F(tr S T^-1) written in (x1^4, x2^4)."""
    return x**2 * y**4 - 4 * x**2 * y**3 + 18 * x * y**2 - 27


def in_rectangle_xy(x, y, slack: float = 1e-12) -> bool:
    """Membership of (x1^4, x2^4) in the rectangle R = [3,4] x [3/2,4].

    The slack absorbs the float rounding of x = 4cos^2(alpha) at the edges
    (e.g. x2^4 lands a few ulp below 3/2 at alpha2 = arccos(sqrt(3/8))).
    """
    return 3 - slack <= x <= 4 + slack and Fraction(3, 2) - slack <= y <= 4 + slack


@dataclass(frozen=True)
class Params:
    """A point (alpha1, alpha2) of the open square, with derived quantities.

    Values within ``guard`` of the boundary are rejected: the generators
    degenerate to the identity at |alpha_i| = pi/2.
    """

    alpha1: float
    alpha2: float
    guard: float = 1e-6

    def __post_init__(self):
        half = math.pi / 2
        if not (abs(self.alpha1) < half - self.guard and abs(self.alpha2) < half - self.guard):
            raise ValueError(
                f"({self.alpha1}, {self.alpha2}) outside the open square minus guard {self.guard}"
            )

    @property
    def x1(self) -> float:
        return math.sqrt(2.0 * math.cos(self.alpha1))

    @property
    def x2(self) -> float:
        return math.sqrt(2.0 * math.cos(self.alpha2))

    @property
    def x1sq(self) -> float:
        return 2.0 * math.cos(self.alpha1)

    @property
    def x2sq(self) -> float:
        return 2.0 * math.cos(self.alpha2)

    @property
    def x14(self) -> float:
        return self.x1sq**2

    @property
    def x24(self) -> float:
        return self.x2sq**2

    @property
    def ell_a(self) -> float:
        """Heisenberg translation length of A: ell_A = x1 x2^2 / sqrt(2)."""
        return self.x1 * self.x2sq / _SQRT2

    @property
    def t_a(self) -> float:
        """Vertical part of A's translation: t_A = x1^2 x2^2 sin(alpha2)."""
        return self.x1sq * self.x2sq * math.sin(self.alpha2)

    @property
    def in_rectangle(self) -> bool:
        """|alpha1| <= pi/6 and |alpha2| <= alpha2_lim (the rectangle R)."""
        return abs(self.alpha1) <= math.pi / 6 + 1e-15 and abs(self.alpha2) <= ALPHA2_LIM + 1e-15


@dataclass(frozen=True)
class GroupData:
    """Generators and fixed-point lifts attached to a parameter point."""

    params: Params
    A: GroupElement
    B: GroupElement
    S: GroupElement
    T: GroupElement
    pA: np.ndarray
    pB: np.ndarray
    pAB: np.ndarray
    pBA: np.ndarray


def generator_matrices(p: Params):
    """The normalised matrices A, B, S, T of the parameter point."""
    a1, a2 = p.alpha1, p.alpha2
    x1 = p.x1
    x1x22 = x1 * p.x2sq
    x12x22 = p.x1sq * p.x2sq
    A = np.array(
        [
            [1, -x1x22, -x12x22 * np.exp(-1j * a2)],
            [0, 1, x1x22],
            [0, 0, 1],
        ],
        dtype=complex,
    )
    B = np.array(
        [
            [1, 0, 0],
            [x1x22 * np.exp(-1j * a1), 1, 0],
            [-x12x22 * np.exp(1j * a2), -x1x22 * np.exp(1j * a1), 1],
        ],
        dtype=complex,
    )
    S = np.exp(-1j * a1 / 3) * np.array(
        [
            [np.exp(1j * a1), x1 * np.exp(1j * (a1 - a2)), -1],
            [-x1 * np.exp(1j * a2), -np.exp(1j * a1), 0],
            [-1, 0, 0],
        ],
        dtype=complex,
    )
    T = np.exp(1j * a1 / 3) * np.array(
        [
            [0, 0, -1],
            [0, -np.exp(-1j * a1), -x1 * np.exp(-1j * (a1 + a2))],
            [-1, x1 * np.exp(1j * a2), np.exp(-1j * a1)],
        ],
        dtype=complex,
    )
    return A, B, S, T


def fixed_point_lifts(p: Params):
    """Standard lifts of the parabolic fixed points p_A, p_B, p_AB, p_BA."""
    a1, a2 = p.alpha1, p.alpha2
    x1 = p.x1
    pA = Q_INFINITY.copy()
    pB = np.array([0, 0, 1], dtype=complex)
    pAB = np.array([-np.exp(1j * a1), x1 * np.exp(1j * a2), 1], dtype=complex)
    pBA = np.array([-np.exp(1j * a1), -x1 * np.exp(-1j * a2), 1], dtype=complex)
    return pA, pB, pAB, pBA


def build_group(p: Params, eps: float | None = None) -> GroupData:
    """Construct the group data and check the unipotency of A, B and AB."""
    eps = default_eps() if eps is None else eps
    A, B, S, T = (GroupElement.su21(m, 1e-8) for m in generator_matrices(p))
    for name, g in (("A", A), ("B", B), ("AB", A @ B)):
        tag = classify(g, eps).tag
        if tag is not IsometryTag.UNIPOTENT:
            raise ValueError(f"{name} classified as {tag.value}, expected unipotent")
    pA, pB, pAB, pBA = fixed_point_lifts(p)
    return GroupData(p, A, B, S, T, pA, pB, pAB, pBA)


# ---------------------------------------------------------------------------
# Region classification
# ---------------------------------------------------------------------------


class RegionTag(Enum):
    Z_INTERIOR = "Z_interior"
    Z_BOUNDARY = "Z_boundary"
    L_OUTSIDE_Z = "L_outside_Z"
    P_CURVE = "P_curve"
    E_ELLIPTIC = "E_elliptic"


@dataclass(frozen=True)
class RegionClass:
    tag: RegionTag
    d_value: float
    g_value: float
    delta: float
    marginal: bool = False


def region_classify_xy(x, y, eps: float | None = None, delta: float = float("nan")) -> RegionClass:
    """Classify by the signs of D and G at (x1^4, x2^4).

    The Z tags apply only inside the rectangle R: the polynomial D is also
    positive on a small zone near (x,y) = (4,1) (alpha2 near +-pi/3) where
    the commutator is elliptic, which does not belong to Z.
    """
    eps = default_eps() if eps is None else eps
    d = poly_D(x, y)
    g = poly_G(x, y)
    if in_rectangle_xy(x, y):
        if d > eps:
            return RegionClass(RegionTag.Z_INTERIOR, d, g, delta, False)
        if d >= -eps:
            return RegionClass(RegionTag.Z_BOUNDARY, d, g, delta, True)
    if g < -eps:
        return RegionClass(RegionTag.E_ELLIPTIC, d, g, delta, False)
    if g <= eps:
        return RegionClass(RegionTag.P_CURVE, d, g, delta, True)
    return RegionClass(RegionTag.L_OUTSIDE_Z, d, g, delta, False)


def region_classify(p: Params, eps: float | None = None) -> RegionClass:
    return region_classify_xy(p.x14, p.x24, eps, delta=discriminant(p))


def region_grid(a1s: np.ndarray, a2s: np.ndarray, eps: float | None = None):
    """Vectorised region tags over parameter arrays.

    Returns (tags, D, G) with tags an object array of RegionTag values,
    consistent with :func:`region_classify_xy` pointwise.
    """
    eps = default_eps() if eps is None else eps
    a1s = np.asarray(a1s, dtype=float)
    a2s = np.asarray(a2s, dtype=float)
    x = (2.0 * np.cos(a1s)) ** 2
    y = (2.0 * np.cos(a2s)) ** 2
    d = poly_D(x, y)
    g = poly_G(x, y)
    slack = 1e-12
    in_rect = (x >= 3 - slack) & (x <= 4 + slack) & (y >= 1.5 - slack) & (y <= 4 + slack)
    tags = np.full(a1s.shape, RegionTag.L_OUTSIDE_Z.value, dtype=object)
    tags[g < -eps] = RegionTag.E_ELLIPTIC.value
    tags[np.abs(g) <= eps] = RegionTag.P_CURVE.value
    tags[in_rect & (np.abs(d) <= eps)] = RegionTag.Z_BOUNDARY.value
    tags[in_rect & (d > eps)] = RegionTag.Z_INTERIOR.value
    return tags, d, g


@dataclass(frozen=True)
class CommutatorClass:
    tag: str  # "loxodromic" | "parabolic" | "elliptic"
    g_value: float
    marginal: bool


def commutator_class(p: Params, eps: float | None = None) -> CommutatorClass:
    """Isometry type of [A,B] from the sign of G, cross-checked on the matrix.

    [A,B] = (S T^-1)^3, so its type matches the sign of
    G(x1^4, x2^4) = F(tr S T^-1).  The matrix route must agree whenever the
    sign is robust; disagreement means numerical degradation and raises.
    """
    eps = default_eps() if eps is None else eps
    g = poly_G(p.x14, p.x24)
    if g > eps:
        tag, marginal = "loxodromic", False
    elif g < -eps:
        tag, marginal = "elliptic", False
    else:
        tag, marginal = "parabolic", True
    gd = build_group(p)
    comm = gd.A @ gd.B @ gd.A.inverse() @ gd.B.inverse()
    mtag = classify(comm, max(eps, 1e-7)).tag
    expected = {
        "loxodromic": {IsometryTag.LOXODROMIC},
        "elliptic": {IsometryTag.REGULAR_ELLIPTIC},
        "parabolic": {
            IsometryTag.UNIPOTENT,
            IsometryTag.PARABOLIC_OR_SPECIAL_ELLIPTIC,
            IsometryTag.LOXODROMIC,
            IsometryTag.REGULAR_ELLIPTIC,
        },
    }[tag]
    if mtag not in expected and not marginal:
        raise ArithmeticError(
            f"commutator classified as {mtag.value} but G = {g} predicts {tag}"
        )
    return CommutatorClass(tag, g, marginal)


# ---------------------------------------------------------------------------
# Symmetries
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class AntiholomorphicMap:
    """v -> m conj(v); composes with complex conjugation first."""

    m: np.ndarray

    def __call__(self, v) -> np.ndarray:
        return standard_lift(self.m @ np.conj(np.asarray(v, dtype=complex)))

    def raw(self, v) -> np.ndarray:
        return self.m @ np.conj(np.asarray(v, dtype=complex))

    def on_heis(self, h: HeisPoint) -> HeisPoint:
        from .core import heis_of_lift

        return heis_of_lift(self(h.lift()))


@dataclass(frozen=True)
class SymmetryMaps:
    """The antiholomorphic symmetries of a parameter point.

    iota swaps p_A with p_B and conjugates S to T; phi = S o iota satisfies
    phi^2 = A projectively and screws along the invariant line delta_phi.
    The holomorphic involutions I1, I2, I3 exist only on the axes: on
    alpha1 = 0 they decompose S = I2 I1, T = I1 I3; on alpha2 = 0 they
    decompose A = I2' I1', B = I1' I3'.
    """

    params: Params
    iota: AntiholomorphicMap
    phi: AntiholomorphicMap
    involutions: tuple[GroupElement, GroupElement, GroupElement] | None

    def delta_phi(self, x: float) -> HeisPoint:
        """Point of the phi-invariant line with parameter x."""
        p = self.params
        c = math.sqrt(math.cos(p.alpha1)) * math.sin(p.alpha2)
        return HeisPoint(x + 0.5j * c, x * c - 0.5 * math.sin(p.alpha1))


def symmetry_maps(p: Params, eps: float | None = None) -> SymmetryMaps:
    eps = default_eps() if eps is None else eps
    _, _, S, T = generator_matrices(p)
    J = np.array(
        [[0, 0, 1], [0, np.exp(-1j * p.alpha1), 0], [1, 0, 0]], dtype=complex
    )
    iota = AntiholomorphicMap(J)
    phi = AntiholomorphicMap(S @ J)
    involutions = None
    if abs(p.alpha1) <= eps:
        # iota1: (z1,z2,z3) -> (conj z1, -conj z2, conj z3); I1 = iota1 o iota
        K = np.diag([1.0, -1.0, 1.0]).astype(complex)
        I1 = K @ np.conj(J)
        involutions = tuple(
            GroupElement.su21(m, 1e-8) for m in (I1, S @ I1, I1 @ T)
        )
    elif abs(p.alpha2) <= eps:
        A, B, _, _ = generator_matrices(p)
        # I1': (z1,z2,z3) -> (z1,-z2,z3); the sign gives the det-1 lift
        I1 = np.diag([-1.0, 1.0, -1.0]).astype(complex)
        involutions = tuple(
            GroupElement.su21(m, 1e-8) for m in (I1, A @ I1, I1 @ B)
        )
    return SymmetryMaps(p, iota, phi, involutions)


# ---------------------------------------------------------------------------
# The quartic L, its discriminant and real-root machinery
# ---------------------------------------------------------------------------


def quartic_coeffs_xsy(x1s, s1, y):
    """Coefficients (descending) of L in terms of x1^2, sin(alpha1), x2^4.

    Works with any number type; Fraction inputs give exact coefficients.
    """
    x14 = x1s * x1s
    return [
        2 * x14 * y - 4 * x1s * y + x14 + 10 * x1s + 1,
        -8 * s1 * (x1s * y - x1s - 1),
        -2 * (2 * x14 * y + 3 * x14 - 9),
        8 * s1 * (x1s * y - x1s + 1),
        2 * x14 * y + 4 * x1s * y + x14 - 10 * x1s + 1,
    ]


def quartic_L(p: Params) -> np.ndarray:
    """The quartic in T = tan(alpha/2) controlling the triple intersection."""
    return np.array(
        quartic_coeffs_xsy(p.x1sq, math.sin(p.alpha1), p.x24), dtype=float
    )


def discriminant_closed_xy(x1s, y):
    """Closed form of the resultant Res(L, L') in terms of x1^2 and x2^4."""
    x14 = x1s * x1s
    return (
        2**16
        * x14
        * (x14 + 1) ** 2
        * (2 * x1s * (2 - x1s) * (4 - y) + (3 * x1s - 1) ** 2)
        * (4 - y) ** 2
        * poly_D(x14, y)
    )


def discriminant(p: Params) -> float:
    """Delta = Res(L, L'), the closed-form discriminant of the quartic."""
    return float(discriminant_closed_xy(p.x1sq, p.x24))


def quartic_resultant_discriminant(coeffs):
    """Res(L, L') computed from the standard degree-4 discriminant expansion.

    The standard discriminant satisfies Disc = Res(L, L') / a4, so the
    expansion is multiplied back by the leading coefficient to match the
    closed form above.
    """
    a, b, c, d, e = coeffs
    disc = (
        256 * a**3 * e**3
        - 192 * a**2 * b * d * e**2
        - 128 * a**2 * c**2 * e**2
        + 144 * a**2 * c * d**2 * e
        - 27 * a**2 * d**4
        + 144 * a * b**2 * c * e**2
        - 6 * a * b**2 * d**2 * e
        - 80 * a * b * c**2 * d * e
        + 18 * a * b * c * d**3
        + 16 * a * c**4 * e
        - 4 * a * c**3 * d**2
        - 27 * b**4 * e**2
        + 18 * b**3 * c * d * e
        - 4 * b**3 * d**3
        - 4 * b**2 * c**3 * e
        + b**2 * c**2 * d**2
    )
    return a * disc


def rationalize_params(alpha1: float, alpha2: float):
    """Exactly consistent rational surrogates (x1^2, sin a1, x2^4) for a point.

    Uses the tangent half-angle substitution so that the Pythagorean relation
    sin^2 + cos^2 = 1 holds exactly over Q; the surrogate point differs from
    (alpha1, alpha2) by at most one float rounding.  Needed because the
    discriminant identity is an exact polynomial identity modulo that
    relation: with independently rounded float inputs the two sides drift
    apart by the rounding error amplified to ~1e-3 absolute.
    """
    th = Fraction(math.tan(alpha1 / 2))
    c1 = (1 - th**2) / (1 + th**2)
    s1 = 2 * th / (1 + th**2)
    y = Fraction(4.0 * math.cos(alpha2) ** 2)
    return 2 * c1, s1, y


def polyval(coeffs, x):
    """Horner evaluation preserving the input number type."""
    acc = coeffs[0]
    for c in coeffs[1:]:
        acc = acc * x + c
    return acc


def _poly_deriv(coeffs):
    n = len(coeffs) - 1
    return [c * (n - i) for i, c in enumerate(coeffs[:-1])]


def _bisect(coeffs, lo, hi, flo, max_iter: int = 80, width: float = 1e-13):
    """Sign-change bisection; flo is the sign of the polynomial at lo."""
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo < width:
            break
        fm = polyval(coeffs, mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _real_roots_rec(coeffs, lo: float, hi: float) -> list[float]:
    """Simple real roots of a polynomial on [lo, hi] via derivative chains."""
    deg = len(coeffs) - 1
    if deg <= 0:
        return []
    if deg == 1:
        a, b = coeffs
        if a == 0:
            return []
        r = -b / a
        return [r] if lo <= r <= hi else []
    breaks = sorted({lo, hi, *(_real_roots_rec(_poly_deriv(coeffs), lo, hi))})
    roots = []
    for a, b in zip(breaks, breaks[1:]):
        fa, fb = polyval(coeffs, a), polyval(coeffs, b)
        if fa == 0.0:
            roots.append(a)
        elif fa * fb < 0:
            roots.append(_bisect(coeffs, a, b, fa))
    fb = polyval(coeffs, breaks[-1])
    if fb == 0.0:
        roots.append(breaks[-1])
    return sorted(set(roots))


def _cauchy_bound(coeffs) -> float:
    a = abs(coeffs[0])
    return 1.0 + max(abs(c) for c in coeffs[1:]) / a


#: Roots closer than this merge into one root with accumulated multiplicity.
_CLUSTER_TOL = 1e-6


def real_roots_quartic(
    coeffs,
    lo: float | None = None,
    hi: float | None = None,
    tangent_tol: float | None = None,
) -> list[tuple[float, int]]:
    """Real roots with multiplicities of a degree-4 polynomial on [lo, hi].

    Sign-change roots are isolated by bisection on monotone pieces cut out by
    the derivative chain.  Even-multiplicity roots never change sign, so they
    are recovered as critical points where |L| falls below ``tangent_tol``
    (scaled by the coefficient size); the multiplicity is the number of
    successive derivatives vanishing there.

    A non-positive leading coefficient falls back to dense sampling with a
    warning; the leading coefficient of L is positive on the rectangle R.
    """
    coeffs = [float(c) for c in coeffs]
    scale = max(abs(c) for c in coeffs)
    tangent_tol = 1e-9 * max(scale, 1.0) if tangent_tol is None else tangent_tol
    if abs(coeffs[0]) <= 1e-12 * scale:
        warnings.warn(
            "quartic leading coefficient is degenerate; dense-sampling fallback",
            RuntimeWarning,
        )
        lo = -10.0 if lo is None else lo
        hi = 10.0 if hi is None else hi
        grid = np.linspace(lo, hi, 20001)
        vals = np.polyval(coeffs, grid)
        out = []
        for i in range(len(grid) - 1):
            if vals[i] == 0.0 or vals[i] * vals[i + 1] < 0:
                out.append((_bisect(coeffs, grid[i], grid[i + 1], vals[i]), 1))
        return out
    bound = _cauchy_bound(coeffs)
    lo = -bound if lo is None else lo
    hi = bound if hi is None else hi
    simple = _real_roots_rec(coeffs, lo, hi)
    derivs = [coeffs]
    while len(derivs[-1]) > 1:
        derivs.append(_poly_deriv(derivs[-1]))
    tangent = []
    for r in _real_roots_rec(derivs[1], lo, hi):
        if abs(polyval(coeffs, r)) <= tangent_tol:
            mult = 2
            for k in range(2, 4):
                dscale = max(abs(c) for c in derivs[k]) or 1.0
                if abs(polyval(derivs[k], r)) <= math.sqrt(tangent_tol) * dscale:
                    mult += 1
                else:
                    break
            tangent.append((r, mult))
    # Cluster candidates: a double root perturbed by coefficient rounding
    # splits into a pair of noise-level sign changes straddling a critical
    # point; the critical point carries the accurate position.
    cands = sorted([(r, 1, False) for r in simple] + [(r, m, True) for r, m in tangent])
    clusters: list[list[tuple[float, int, bool]]] = []
    for cand in cands:
        if clusters and cand[0] - clusters[-1][-1][0] <= _CLUSTER_TOL:
            clusters[-1].append(cand)
        else:
            clusters.append([cand])
    roots = []
    for cl in clusters:
        n_simple = sum(1 for _, _, tg in cl if not tg)
        mult = max([m for _, m, tg in cl if tg] + [n_simple] + [1])
        tangent_pos = [r for r, _, tg in cl if tg]
        pos = tangent_pos[0] if tangent_pos else sum(r for r, _, _ in cl) / len(cl)
        roots.append((pos, mult))
    return sorted(roots)


@dataclass(frozen=True)
class RootReport:
    found: bool
    roots: tuple[float, ...] = ()
    multiplicities: tuple[int, ...] = ()


def has_root_in_unit_interval(coeffs, tangent_tol: float | None = None) -> RootReport:
    """All real roots of the quartic in [-1, 1], sorted; No if there are none."""
    rts = real_roots_quartic(coeffs, lo=-1.0, hi=1.0, tangent_tol=tangent_tol)
    if not rts:
        return RootReport(False)
    return RootReport(True, tuple(r for r, _ in rts), tuple(m for _, m in rts))


def leading_coeff_positive_on_R(n: int = 64) -> bool:
    """Spot-check that the leading coefficient of L is positive on R."""
    x1s = np.linspace(math.sqrt(3.0), 2.0, n)[:, None]
    y = np.linspace(1.5, 4.0, n)[None, :]
    lead = 2 * x1s**2 * y - 4 * x1s * y + x1s**2 + 10 * x1s + 1
    return bool(lead.min() > 0)


# ---------------------------------------------------------------------------
# Boundary tracing
# ---------------------------------------------------------------------------


def _bisect_func(f, lo, hi, iters: int = 200, width: float = 1e-14):
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        return None
    for _ in range(iters):
        if hi - lo < width:
            break
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass
class BoundaryTrace:
    """Quadrant-symmetric polylines of a null curve, plus per-sample failures."""

    which: str
    branches: list[list[tuple[float, float]]]
    failures: list[float] = field(default_factory=list)


def trace_boundary(which: str, samples: int) -> BoundaryTrace:
    """Trace the null locus of D (boundary of Z) or of G (the curve P).

    For each sampled x = x1^4 the unique root in x2^4 of the corresponding
    polynomial is bisected, then mapped back to (alpha1, alpha2) in the four
    quadrant-symmetric copies.  Branch order: (+,+), (-,+), (+,-), (-,-).
    """
    if samples < 2:
        raise ValueError("need at least 2 samples")
    if which == "Z":
        xs = np.linspace(3.0, 4.0, samples)
        y_lo, y_hi = 1.5, 4.0
        f_of = lambda x: (lambda y: poly_D(x, y))
    elif which == "P":
        xs = np.linspace(3.0 / 32.0, 4.0, samples)
        y_lo, y_hi = 1e-12, 4.0
        f_of = lambda x: (lambda y: poly_G(x, y))
    else:
        raise ValueError("which must be 'Z' or 'P'")
    base = []
    failures = []
    for x in xs:
        y = _bisect_func(f_of(float(x)), y_lo, y_hi)
        if y is None:
            failures.append(float(x))
            continue
        a1 = math.acos(min(1.0, math.sqrt(x) / 2.0))
        a2 = math.acos(min(1.0, math.sqrt(y) / 2.0))
        base.append((a1, a2))
    branches = [
        [(s1 * a1, s2 * a2) for a1, a2 in base]
        for s1, s2 in ((1, 1), (-1, 1), (1, -1), (-1, -1))
    ]
    return BoundaryTrace(which, branches, failures)
