r"""Arithmetic of the Siegel model of the complex hyperbolic plane.

Everything here is expressed through the Hermitian form of signature (2,1)
given by the antidiagonal matrix H, with ``<x,y> = y* H x``.  Points of the
closure of the complex hyperbolic plane are represented by *standard lifts*:
column vectors in C^3 that are either (1,0,0) (the point at infinity) or have
third coordinate 1.  A finite boundary or horospherical point with
coordinates (z,t,u) lifts to (-|z|^2 - u + it, z*sqrt(2), 1).

The module provides the Cygan metric, the Heisenberg group law on the
boundary, Goldman's trace classification of isometries, Cartan's angular
invariant of boundary triples and Hermitian cross products (polar vectors).

All values are immutable and all functions are pure; everything is safe to
share between threads.
"""

from __future__ import annotations

import cmath
import enum
import math
import os
from dataclasses import dataclass

import numpy as np

__all__ = [
    "H",
    "Q_INFINITY",
    "default_eps",
    "HeisPoint",
    "GroupElement",
    "IsometryTag",
    "IsometryClass",
    "hermitian_product",
    "squared_norm",
    "is_infinity",
    "standard_lift",
    "lift_of_heis",
    "heis_of_lift",
    "cygan_distance",
    "heisenberg_translate",
    "heisenberg_matrix",
    "goldman_trace_poly",
    "classify",
    "cartan_invariant",
    "polar_vector",
]

#: The Hermitian form of signature (2,1) used throughout.
H = np.array([[0, 0, 1], [0, 1, 0], [1, 0, 0]], dtype=complex)
H.setflags(write=False)

#: Standard lift of the point at infinity q_inf.
Q_INFINITY = np.array([1, 0, 0], dtype=complex)
Q_INFINITY.setflags(write=False)

_CUBE_ROOTS = np.exp(2j * np.pi * np.arange(3) / 3)
_CUBE_ROOTS.setflags(write=False)


def default_eps() -> float:
    """Default zero / unit-modulus tolerance, overridable via RILEY_EPS."""
    return float(os.environ.get("RILEY_EPS", "1e-9"))


def _vec(x) -> np.ndarray:
    v = np.asarray(x, dtype=complex)
    if v.shape != (3,):
        raise ValueError(f"expected a lift in C^3, got shape {v.shape}")
    if not np.abs(v).max() > 0:
        raise ValueError("zero vector is not a lift")
    return v


def hermitian_product(x, y) -> complex:
    """<x,y> = y* H x.  Sesquilinear: <x,y> = conj(<y,x>)."""
    x = _vec(x)
    y = _vec(y)
    return complex(y.conj() @ (H @ x))


def squared_norm(x) -> float:
    """<x,x>, which is real; negative inside, zero on the boundary."""
    return hermitian_product(x, x).real


def is_infinity(v, eps: float | None = None) -> bool:
    """True if the lift represents q_inf (third coordinate ~ 0)."""
    v = _vec(v)
    eps = default_eps() if eps is None else eps
    return abs(v[2]) < eps * np.abs(v).max()


def standard_lift(v, eps: float | None = None) -> np.ndarray:
    """Rescale a lift to standard form: (1,0,0) for q_inf, else v3 = 1."""
    v = _vec(v)
    if is_infinity(v, eps):
        return Q_INFINITY.copy()
    return v / v[2]


@dataclass(frozen=True)
class HeisPoint:
    """Horospherical coordinates (z,t,u); boundary points have u = 0.

    The boundary minus q_inf is the Heisenberg group with the law
    ``[w,s].[z,t] = [w+z, s+t-2 Im(z conj(w))]``.
    """

    z: complex
    t: float
    u: float = 0.0

    def __post_init__(self):
        if self.u < 0:
            raise ValueError("horospherical height u must be >= 0")

    @property
    def on_boundary(self) -> bool:
        return self.u == 0.0

    def lift(self) -> np.ndarray:
        """Standard lift (-|z|^2 - u + it, z sqrt 2, 1)."""
        z = complex(self.z)
        return np.array(
            [-abs(z) ** 2 - self.u + 1j * self.t, z * math.sqrt(2), 1.0],
            dtype=complex,
        )


def lift_of_heis(z: complex, t: float, u: float = 0.0) -> np.ndarray:
    return HeisPoint(z, t, u).lift()


def heis_of_lift(v, eps: float | None = None) -> HeisPoint:
    """Horospherical coordinates of a lift; rejects q_inf."""
    v = _vec(v)
    if is_infinity(v, eps):
        raise ValueError("q_inf has no horospherical coordinates")
    v = v / v[2]
    z = v[1] / math.sqrt(2)
    t = v[0].imag
    u = -(v[0].real + abs(z) ** 2)
    if u < 0:  # clip numerical noise for genuine boundary points
        if u < -1e-8 * max(1.0, abs(z) ** 2):
            raise ValueError(f"lift lies outside the closed ball (u = {u})")
        u = 0.0
    return HeisPoint(complex(z), float(t), float(u))


def cygan_distance(p: HeisPoint, q: HeisPoint) -> float:
    """Cygan distance between horospherical points.

    d(p,q) = | |z-w|^2 + |u-v| + i(t-s + 2 Im(z conj(w))) |^(1/2).
    When at least one point is on the boundary this equals
    |<p,q>|^(1/2) on standard lifts.
    """
    dz = p.z - q.z
    inner = (
        abs(dz) ** 2
        + abs(p.u - q.u)
        + 1j * (p.t - q.t + 2.0 * (p.z * q.z.conjugate()).imag)
    )
    return abs(inner) ** 0.5


def heisenberg_translate(ws: HeisPoint, zt: HeisPoint) -> HeisPoint:
    """Left Heisenberg translation [w,s].[z,t]; preserves the height u."""
    if not ws.on_boundary:
        raise ValueError("a Heisenberg translation is indexed by a boundary point")
    z2 = ws.z + zt.z
    t2 = ws.t + zt.t - 2.0 * (zt.z * ws.z.conjugate()).imag
    return HeisPoint(z2, t2, zt.u)


def heisenberg_matrix(ws: HeisPoint) -> "GroupElement":
    """The unique unipotent element T_[w,s] taking [0,0] to [w,s]."""
    if not ws.on_boundary:
        raise ValueError("Heisenberg translations are indexed by boundary points")
    w, s = ws.z, ws.t
    m = np.array(
        [
            [1, -w.conjugate() * math.sqrt(2), -abs(w) ** 2 + 1j * s],
            [0, 1, w * math.sqrt(2)],
            [0, 0, 1],
        ],
        dtype=complex,
    )
    return GroupElement(m)


@dataclass(frozen=True, eq=False)
class GroupElement:
    """An SU(2,1) matrix acting projectively on the complex hyperbolic plane.

    Use :meth:`su21` to validate and normalise an arbitrary matrix; the plain
    constructor trusts its input (compositions of validated elements stay in
    SU(2,1) to machine precision).
    """

    m: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.m, dtype=complex)
        if m.shape != (3, 3):
            raise ValueError("a group element is a 3x3 complex matrix")
        object.__setattr__(self, "m", m)

    @classmethod
    def su21(cls, m, eps: float | None = None) -> "GroupElement":
        """Validate m* H m = H and rescale det to 1.

        Matrices are accepted when the determinant is within tolerance of a
        cube root of unity (the three SU(2,1) lifts of a PU(2,1) element)
        and then divided by a cube root of the determinant.
        """
        eps = default_eps() if eps is None else eps
        m = np.asarray(m, dtype=complex)
        if m.shape != (3, 3):
            raise ValueError("a group element is a 3x3 complex matrix")
        scale = max(1.0, float(np.abs(m).max()) ** 2)
        if np.abs(m.conj().T @ H @ m - H).max() > eps * scale:
            raise ValueError("matrix does not preserve the Hermitian form")
        d = complex(np.linalg.det(m))
        if min(abs(d - w) for w in _CUBE_ROOTS) > eps:
            raise ValueError(f"determinant {d} is not a cube root of unity")
        return cls(m / d ** (1.0 / 3.0))

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.m))

    def inverse(self) -> "GroupElement":
        return GroupElement(np.linalg.inv(self.m))

    def power(self, k: int) -> "GroupElement":
        return GroupElement(np.linalg.matrix_power(self.m, k))

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.m @ other.m)

    def apply(self, v) -> np.ndarray:
        """Image of a lift, renormalised to standard form."""
        return standard_lift(self.m @ _vec(v))

    def apply_heis(self, p: HeisPoint) -> HeisPoint:
        return heis_of_lift(self.m @ p.lift())

    def is_scalar(self, eps: float | None = None) -> bool:
        eps = default_eps() if eps is None else eps
        off = self.m - np.diag(np.diag(self.m))
        diag = np.diag(self.m)
        return (
            np.abs(off).max() <= eps * max(1.0, np.abs(self.m).max())
            and np.abs(diag - diag[0]).max() <= eps * max(1.0, np.abs(diag).max())
        )


class IsometryTag(enum.Enum):
    LOXODROMIC = "loxodromic"
    REGULAR_ELLIPTIC = "regular_elliptic"
    UNIPOTENT = "unipotent"
    PARABOLIC_OR_SPECIAL_ELLIPTIC = "parabolic_or_special_elliptic"
    IDENTITY = "identity"


@dataclass(frozen=True)
class IsometryClass:
    """Classification verdict together with the value of Goldman's polynomial.

    ``marginal`` is set when |F(tr)| falls inside the eps-margin, i.e. the
    nominal tag is a boundary call rather than a robust sign.
    """

    tag: IsometryTag
    f_value: float
    marginal: bool = False


def goldman_trace_poly(z: complex) -> float:
    """F(z) = |z|^4 - 8 Re(z^3) + 18|z|^2 - 27 (Goldman's trace polynomial)."""
    z = complex(z)
    return abs(z) ** 4 - 8.0 * (z**3).real + 18.0 * abs(z) ** 2 - 27.0


def classify(g: GroupElement, eps: float | None = None) -> IsometryClass:
    """Isometry type of g from the sign of F(tr g).

    Positive means loxodromic, negative regular elliptic.  On the null locus
    the element is parabolic or special elliptic; it is reported as unipotent
    when the trace is within tolerance of 3 times a cube root of unity and
    the matrix is not scalar.  Scalar matrices are the projective identity.
    """
    eps = default_eps() if eps is None else eps
    tr = g.trace
    f = goldman_trace_poly(tr)
    marginal = abs(f) <= eps
    if g.is_scalar(eps):
        return IsometryClass(IsometryTag.IDENTITY, f, marginal)
    if f > eps:
        return IsometryClass(IsometryTag.LOXODROMIC, f, False)
    if f < -eps:
        return IsometryClass(IsometryTag.REGULAR_ELLIPTIC, f, False)
    if min(abs(tr - 3.0 * w) for w in _CUBE_ROOTS) <= math.sqrt(max(eps, 1e-15)):
        return IsometryClass(IsometryTag.UNIPOTENT, f, marginal)
    return IsometryClass(IsometryTag.PARABOLIC_OR_SPECIAL_ELLIPTIC, f, marginal)


def _projectively_equal(p, q, eps: float) -> bool:
    c = np.cross(p, q)
    return np.abs(c).max() <= eps * np.abs(p).max() * np.abs(q).max()


def cartan_invariant(p1, p2, p3, eps: float | None = None) -> float:
    """Cartan's angular invariant of a triple of distinct boundary points.

    A(p1,p2,p3) = arg(-<p1,p2><p2,p3><p3,p1>) with the argument in (-pi,pi];
    the value lies in [-pi/2,pi/2], is 0 exactly for triples on a Lagrangian
    plane and +-pi/2 exactly for triples on a complex line.  It does not
    depend on the choice of lifts.
    """
    eps = default_eps() if eps is None else eps
    p1, p2, p3 = _vec(p1), _vec(p2), _vec(p3)
    for a, b in ((p1, p2), (p2, p3), (p3, p1)):
        if _projectively_equal(a, b, eps):
            raise ValueError("Cartan invariant needs pairwise distinct points")
    for p in (p1, p2, p3):
        if abs(squared_norm(p)) > 1e-6 * float(np.abs(p).max()) ** 2:
            raise ValueError("Cartan invariant is defined for null lifts")
    prod = (
        hermitian_product(p1, p2)
        * hermitian_product(p2, p3)
        * hermitian_product(p3, p1)
    )
    return cmath.phase(-prod)


def polar_vector(p, q, eps: float | None = None) -> np.ndarray:
    """Hermitian cross product p boxtimes q = H conj(p ^ q).

    The result is orthogonal to both p and q, i.e. polar to the complex line
    they span.  Rejects projectively equal inputs.
    """
    eps = default_eps() if eps is None else eps
    p, q = _vec(p), _vec(q)
    if _projectively_equal(p, q, eps):
        raise ValueError("polar vector needs projectively distinct points")
    return H @ np.conj(np.cross(p, q))
