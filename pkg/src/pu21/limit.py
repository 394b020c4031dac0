r"""The limit group at (alpha1, alpha2) = (0, arccos(sqrt(3/8))).

At this parameter point the words S T^-1, S^-1 T, T S T, S T S (and the
commutator [A,B] = (S T^-1)^3) become unipotent parabolic.  Their fixed
points are tangency points of the isometric spheres, and cutting the Ford
polyhedron by the slab D_A between the two fans F_0 and F_-1 produces a
solid tube whose boundary carries a 5-vertex, 11-edge, 8-face cell
structure.  Coning to the two apexes q_inf and p_B and cutting-and-pasting
yields an ideal octahedron whose face pairings realise the Whitehead link
complement gluing.

Everything here is specific to the limit parameters; all claimed incidences
are certified numerically against the exact lifts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import (
    GroupElement,
    HeisPoint,
    IsometryTag,
    classify,
    cygan_distance,
    heis_of_lift,
    hermitian_product,
    standard_lift,
)
from .ford import rel_word
from .moduli import ALPHA2_LIM, GroupData, Params, build_group, symmetry_maps
from .spheres import (
    GeoCoord,
    SphereFamily,
    geo_lift,
    triple_intersection,
    vertical_projection,
)

__all__ = [
    "SQRT3",
    "SQRT5",
    "SQRT15",
    "limit_params",
    "LimitData",
    "limit_group",
    "tangency_check",
    "CycleGraph",
    "cycle_graph",
    "fan_functional",
    "FAN0_LEVEL",
    "FANM1_LEVEL",
    "fan_lift",
    "in_slab",
    "fan_sphere_table",
    "fan_ridge_intersection",
    "fan_ridge_residual_scan",
    "ridge_circle_samples",
    "Edge",
    "Pairing",
    "CellComplex",
    "boundary_cell_complex",
    "octahedron",
    "OctahedronData",
]

SQRT3 = math.sqrt(3.0)
SQRT5 = math.sqrt(5.0)
SQRT15 = math.sqrt(15.0)
_SQRT2 = math.sqrt(2.0)

#: Fan levels: F_0 and F_-1 are the planes 3x sqrt3 - y sqrt5 = level.
FAN0_LEVEL = _SQRT2 / 2.0
FANM1_LEVEL = -4.0 * _SQRT2


def limit_params() -> Params:
    return Params(0.0, ALPHA2_LIM)


def _exact_lifts() -> dict[str, np.ndarray]:
    """Exact standard lifts of the six marked ideal points."""
    return {
        "p_ST": np.array([1, 0, 0], dtype=complex),  # q_inf = p_A
        "p_TS": np.array([0, 0, 1], dtype=complex),  # p_B
        "p_ST-1": np.array(
            [-0.25 + 1j * SQRT15 / 4, SQRT3 / 4 + 1j * SQRT5 / 4, 1], dtype=complex
        ),
        "p_S-1T": np.array(
            [-0.25 - 1j * SQRT15 / 4, -SQRT3 / 4 + 1j * SQRT5 / 4, 1], dtype=complex
        ),
        "p_TST": np.array(
            [-1, -3 * SQRT3 / 4 + 1j * SQRT5 / 4, 1], dtype=complex
        ),
        "p_STS": np.array(
            [-1, 3 * SQRT3 / 4 + 1j * SQRT5 / 4, 1], dtype=complex
        ),
    }


def _proj_residual(a, b) -> float:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    return float(
        np.abs(np.cross(a, b)).max() / (np.abs(a).max() * np.abs(b).max())
    )


def _proj_matrix_residual(m1, m2) -> float:
    """Relative residual of m1 = s m2 for the best scalar s."""
    m1 = np.asarray(m1, dtype=complex)
    m2 = np.asarray(m2, dtype=complex)
    i = np.unravel_index(int(np.argmax(np.abs(m2))), m2.shape)
    s = m1[i] / m2[i]
    return float(np.abs(m1 - s * m2).max() / np.abs(m1).max())


@dataclass(frozen=True)
class LimitData:
    group: GroupData
    p_st_inv: np.ndarray
    p_s_inv_t: np.ndarray
    p_tst: np.ndarray
    p_sts: np.ndarray
    residuals: dict = field(default_factory=dict)


def limit_group(tol: float = 1e-12) -> LimitData:
    """Group data at the limit point, with all fixed points verified.

    Checks that A matches its explicit limit matrix, that the four words
    S T^-1, S^-1 T, T S T, S T S are unipotent and fix the tabulated lifts,
    and that phi cycles p_TST -> p_S-1T -> p_ST-1 -> p_STS.
    """
    p = limit_params()
    gd = build_group(p)
    lifts = _exact_lifts()
    res: dict[str, float] = {}

    A_expected = np.array(
        [[1, -SQRT3, -1.5 + 1j * SQRT15 / 2], [0, 1, SQRT3], [0, 0, 1]],
        dtype=complex,
    )
    res["A_matrix"] = float(np.abs(gd.A.m - A_expected).max())

    S, T = gd.S, gd.T
    words = {
        "p_ST-1": S @ T.inverse(),
        "p_S-1T": S.inverse() @ T,
        "p_TST": T @ S @ T,
        "p_STS": S @ T @ S,
    }
    for label, g in words.items():
        tag = classify(g).tag
        if tag is not IsometryTag.UNIPOTENT:
            raise ArithmeticError(f"{label[2:]} classified {tag.value}, expected unipotent")
        res[f"fix_{label}"] = _proj_residual(g.m @ lifts[label], lifts[label])

    phi = symmetry_maps(p).phi
    for src, dst in (("p_TST", "p_S-1T"), ("p_S-1T", "p_ST-1"), ("p_ST-1", "p_STS")):
        res[f"phi_{src}"] = _proj_residual(phi.raw(lifts[src]), lifts[dst])
    res["phi_squared_is_A"] = _proj_matrix_residual(phi.m @ np.conj(phi.m), gd.A.m)

    worst = max(res.values())
    if worst > tol:
        raise ArithmeticError(f"limit-group verification residual {worst} > {tol}")
    return LimitData(
        gd,
        lifts["p_ST-1"],
        lifts["p_S-1T"],
        lifts["p_TST"],
        lifts["p_STS"],
        res,
    )


def tangency_check() -> dict:
    """Tangencies of the sphere family at the parabolic fixed points.

    p_ST-1 lies on both I_1^+ and I_-1^- and their vertical projections are
    externally tangent discs (centre distance exactly 2); same for p_S-1T
    with I_-1^+ and I_0^-.  Also recomputes the triple intersection, which
    must consist of exactly these two points.
    """
    p = limit_params()
    ld = limit_group()
    fam = SphereFamily(p)
    out: dict = {}
    pB = ld.group.pB
    pBA = ld.group.pBA
    ApB = ld.group.A.apply(pB)
    out["mod_p_ST-1_vs_I-1-"] = abs(hermitian_product(ld.p_st_inv, pBA))
    out["mod_p_ST-1_vs_I1+"] = abs(hermitian_product(ld.p_st_inv, ApB))
    out["mod_p_S-1T_vs_I0-"] = abs(hermitian_product(ld.p_s_inv_t, ld.group.pAB))
    AipB = ld.group.A.inverse().apply(pB)
    out["mod_p_S-1T_vs_I-1+"] = abs(hermitian_product(ld.p_s_inv_t, AipB))

    c1, _ = vertical_projection(fam.plus(1))
    c2, _ = vertical_projection(fam.minus(-1))
    out["proj_center_distance_I1+_I-1-"] = abs(c1 - c2)
    c3, _ = vertical_projection(fam.plus(-1))
    c4, _ = vertical_projection(fam.minus(0))
    out["proj_center_distance_I-1+_I0-"] = abs(c3 - c4)

    tri = triple_intersection(p)
    out["triple_point_count"] = len(tri.points)
    lifts = [geo_lift(c) for c in tri.points]
    targets = sorted((ld.p_st_inv, ld.p_s_inv_t), key=lambda v: v[0].imag)
    lifts = sorted(lifts, key=lambda v: v[0].imag)
    out["triple_point_residual"] = max(
        float(np.abs(a - b).max()) for a, b in zip(lifts, targets)
    ) if len(lifts) == 2 else math.inf
    return out


# ---------------------------------------------------------------------------
# Cycle graph of the side pairings on the parabolic points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CycleEdge:
    src: str
    pairing: str
    element: GroupElement
    dst: str
    shift: int  # image is A^shift applied to the dst base point
    residual: float


@dataclass(frozen=True)
class CycleGraph:
    nodes: tuple[str, str]
    edges: tuple[CycleEdge, ...]
    triangle_residual: float
    quad_trace: complex
    quad_tag: str
    quad_fix_residual: float


def cycle_graph(tol: float = 1e-9) -> CycleGraph:
    """Finite quotient (mod A) of the side-pairing action on parabolic points.

    The two node classes are the A-orbits of p_ST-1 and p_S-1T.  Each of the
    eight side-pairing edges is certified by mapping lifts; the triangle
    cycles evaluate to the projective identity (S^3) and the quadrilateral
    cycle to (T^-1 S)^3, a unipotent parabolic fixing the base point.  Any
    other outcome falsifies the consistent-horoball hypothesis and raises.
    """
    ld = limit_group()
    gd = ld.group
    A, S = gd.A, gd.S
    Si = S.inverse()
    conj = lambda g, k: A.power(k) @ g @ A.power(-k)
    lifts = {"p_ST-1": ld.p_st_inv, "p_S-1T": ld.p_s_inv_t}
    edge_table = [
        ("p_S-1T", "sigma(s_-1^+)", conj(S, -1), "p_S-1T", -1),
        ("p_S-1T", "sigma(s_-1^-)", conj(Si, -1), "p_ST-1", -1),
        ("p_S-1T", "sigma(s_0^+)", S, "p_ST-1", 0),
        ("p_S-1T", "sigma(s_0^-)", Si, "p_S-1T", 1),
        ("p_ST-1", "sigma(s_-1^-)", conj(Si, -1), "p_ST-1", -2),
        ("p_ST-1", "sigma(s_0^+)", S, "p_S-1T", 1),
        ("p_ST-1", "sigma(s_0^-)", Si, "p_S-1T", 0),
        ("p_ST-1", "sigma(s_1^+)", conj(S, 1), "p_ST-1", 2),
    ]
    edges = []
    for src, name, g, dst, shift in edge_table:
        target = A.power(shift).m @ lifts[dst]
        r = _proj_residual(g.m @ lifts[src], target)
        if r > tol:
            raise ArithmeticError(f"cycle-graph edge {name}: {src} residual {r}")
        edges.append(CycleEdge(src, name, g, dst, shift, r))

    tri = S.power(3)
    tri_res = float(np.abs(tri.m - tri.m[0, 0] * np.eye(3)).max())
    if tri_res > tol or abs(tri.m[0, 0] ** 3 - 1) > tol:
        raise ArithmeticError("triangle cycle S^3 is not the projective identity")

    quad = conj(S, -1) @ Si @ conj(S, 1) @ Si
    expected = (gd.T.inverse() @ S).power(3)
    if _proj_matrix_residual(quad.m, expected.m) > tol:
        raise ArithmeticError("quadrilateral cycle is not (T^-1 S)^3")
    tag = classify(quad).tag
    if tag is not IsometryTag.UNIPOTENT:
        raise ArithmeticError(
            f"quadrilateral cycle classified {tag.value}; consistent horoballs fail"
        )
    fix_res = _proj_residual(quad.m @ ld.p_s_inv_t, ld.p_s_inv_t)
    if fix_res > tol:
        raise ArithmeticError("quadrilateral cycle does not fix its base point")
    return CycleGraph(
        ("p_ST-1", "p_S-1T"), tuple(edges), tri_res, quad.trace, tag.value, fix_res
    )


# ---------------------------------------------------------------------------
# Fans and the slab D_A
# ---------------------------------------------------------------------------


def fan_functional(z: complex) -> float:
    """3x sqrt3 - y sqrt5 for z = x + iy; fans are its level sets."""
    return 3.0 * SQRT3 * z.real - SQRT5 * z.imag


def in_slab(h: HeisPoint, tol: float = 0.0) -> bool:
    """Membership of a Heisenberg point in D_A (between F_-1 and F_0)."""
    v = fan_functional(h.z)
    return FANM1_LEVEL - tol <= v <= FAN0_LEVEL + tol


def fan_lift(xi: float, eta: float) -> np.ndarray:
    """Standard lift of the point f(xi, eta) of the fan F_0.

    xi-level lines bound complex lines and eta-level lines Lagrangian
    planes; the origin is the midpoint of the centres of I_0^+ and I_0^-.
    """
    return np.array(
        [
            -(xi**2) - SQRT15 * xi / 4 - 0.25 + 1j * (eta - xi / 4),
            SQRT5 * xi / 4 + SQRT3 / 4 + 1j * (3 * SQRT3 * xi / 4 + SQRT5 / 4),
            1.0,
        ],
        dtype=complex,
    )


#: Expected fan/sphere intersection table: {} empty, "pt" point, "o" circle.
_FAN_TABLE = {
    "F0": {
        ("-", -2): "empty", ("+", -2): "empty",
        ("-", -1): "pt:p_ST-1", ("+", -1): "empty",
        ("-", 0): "circle", ("+", 0): "circle",
        ("-", 1): "empty", ("+", 1): "pt:p_ST-1",
    },
    "F-1": {
        ("-", -2): "pt:p_TST", ("+", -2): "empty",
        ("-", -1): "circle", ("+", -1): "circle",
        ("-", 0): "empty", ("+", 0): "pt:p_TST",
        ("-", 1): "empty", ("+", 1): "empty",
    },
}


def fan_sphere_table(tol: float = 1e-9) -> dict:
    """Incidences of F_0 and F_-1 with I_k^+/- for k in [-2, 1].

    Decided by vertical projection: the fan projects to a line, the sphere
    to a unit disc, and the intersection is empty / a point / a circle as
    the centre-line distance compares with 1.  A mismatch with the expected
    table raises.  Also certifies the slab positions of the parabolic
    points: p_S-1T is interior to D_A, and the A-translates of both
    parabolic points leave the slab (A^-1 p_ST-1 lands exactly on F_-1; it
    is the vertex p_TST).
    """
    p = limit_params()
    ld = limit_group()
    fam = SphereFamily(p)
    norm = 4.0 * _SQRT2  # |(3 sqrt3, -sqrt5)|
    computed: dict[str, dict] = {}
    for fan_name, level in (("F0", FAN0_LEVEL), ("F-1", FANM1_LEVEL)):
        row = {}
        for k in range(-2, 2):
            for kind in ("+", "-"):
                c, _ = vertical_projection(fam.sphere(kind, k))
                d = abs(fan_functional(c) - level) / norm
                if d > 1.0 + tol:
                    row[(kind, k)] = "empty"
                elif d >= 1.0 - tol:
                    row[(kind, k)] = "pt"
                else:
                    row[(kind, k)] = "circle"
        computed[fan_name] = row
    for fan_name, expected in _FAN_TABLE.items():
        for key, want in expected.items():
            got = computed[fan_name][key]
            if want.split(":")[0] != got:
                raise ArithmeticError(
                    f"fan table mismatch at {fan_name} n I_{key[1]}^{key[0]}: "
                    f"expected {want}, computed {got}"
                )
    # tangency witnesses lie on fan and sphere
    witness_res = {}
    for fan_name, level in (("F0", FAN0_LEVEL), ("F-1", FANM1_LEVEL)):
        for key, want in _FAN_TABLE[fan_name].items():
            if want.startswith("pt:"):
                label = want.split(":")[1]
                v = {"p_ST-1": ld.p_st_inv, "p_TST": ld.p_tst}[label]
                h = heis_of_lift(v)
                kind, k = key
                c = fam.sphere(kind, k).center
                witness_res[f"{fan_name}|{k}{kind}"] = max(
                    abs(fan_functional(h.z) - level),
                    abs(cygan_distance(h, c) - 1.0),
                )
    slab = {
        "p_S-1T_value": fan_functional(heis_of_lift(ld.p_s_inv_t).z),
        "p_S-1T_interior": in_slab(heis_of_lift(ld.p_s_inv_t), -1e-9),
    }
    step = 9.0 * _SQRT2 / 2.0  # fan functional shifts by this under A
    for label, v in (("p_ST-1", ld.p_st_inv), ("p_S-1T", ld.p_s_inv_t)):
        base = fan_functional(heis_of_lift(v).z)
        for k in (-3, -2, -1, 1, 2, 3):
            val = base + k * step
            if label == "p_ST-1" and k == -1:
                # A^-1 p_ST-1 = p_TST lies exactly on F_-1
                slab["A^-1 p_ST-1 on F-1"] = abs(val - FANM1_LEVEL)
            else:
                slab[f"A^{k} {label} outside"] = not (
                    FANM1_LEVEL <= val <= FAN0_LEVEL
                )
    return {"table": computed, "witness_residuals": witness_res, "slab": slab}


def _disc_eta(xi: np.ndarray, mirror: bool):
    """eta-branches of F_0 n I_0^+ (mirror=False) or F_0 n I_0^- (True)."""
    s = -1.0 if mirror else 1.0
    c = (xi**2 + 0.25) ** 2 + xi**2 + s * (SQRT15 * xi**3 / 2 + SQRT15 * xi / 8)
    disc = xi**2 / 16.0 - (c - 1.0)
    return s * xi / 4.0, disc


def fan_ridge_intersection(n_samples: int = 400, scan_tol: float = 1e-10) -> dict:
    """The circle c_0 = F_0 n boundary(D) and the two fan-ridge points.

    Solves |<f(xi,eta), p_B>| = |<f(xi,eta), p_AB>| = 1.  The difference of
    the squared moduli factors as xi (sqrt15 xi^2 + sqrt15/4 - eta), and
    substituting either branch leaves (xi, eta) = (0, +-sqrt15/4) as the
    only solutions: p_ST-1 at eta = +sqrt15/4 and q_0 at eta = -sqrt15/4.
    The arc c_0^+ is the xi < 0 part of F_0 n I_0^+ and c_0^- the xi > 0
    part of F_0 n I_0^-; both are returned as ordered polylines from
    p_ST-1 to q_0.  Also certifies, by walking the ideal boundary of the
    ridge r_0^+, that q_0 lies on the segment of the ridge between p_STS
    and p_S-1T.
    """
    ld = limit_group()
    pB, pAB = ld.group.pB, ld.group.pAB
    pts = {"p_ST-1": (0.0, SQRT15 / 4.0), "q_0": (0.0, -SQRT15 / 4.0)}
    residuals = {}
    for label, (xi, eta) in pts.items():
        v = fan_lift(xi, eta)
        residuals[label] = max(
            abs(abs(hermitian_product(v, pB)) - 1.0),
            abs(abs(hermitian_product(v, pAB)) - 1.0),
        )
        if residuals[label] > scan_tol:
            raise ArithmeticError(f"fan-ridge point {label} residual {residuals[label]}")

    # the unique xi where the two eta-branches of F0 n I0^+- meet (xi < 0 resp > 0)
    def _xi_extreme(mirror: bool) -> float:
        lo, hi = (-2.0, 0.0) if not mirror else (0.0, 2.0)
        f = lambda x: _disc_eta(np.asarray([x]), mirror)[1][0]
        a, b = (lo, hi) if not mirror else (hi, lo)
        # disc >= 0 at xi = 0, < 0 far out; bisect on |xi|
        for _ in range(200):
            mid = 0.5 * (a + b)
            if f(mid) >= 0:
                b = mid
            else:
                a = mid
            if abs(a - b) < 1e-14:
                break
        return b

    arcs = {}
    for label, mirror in (("c_0^+", False), ("c_0^-", True)):
        xi_ext = _xi_extreme(mirror)
        xs = np.linspace(0.0, xi_ext, n_samples // 2)
        mid, disc = _disc_eta(xs, mirror)
        root = np.sqrt(np.maximum(disc, 0.0))
        upper = list(zip(xs, mid + root))
        lower = list(zip(xs, mid - root))
        poly = upper + lower[::-1]  # p_ST-1 ... around ... q_0
        arcs[label] = {
            "start": "p_ST-1",
            "end": "q_0",
            "points": [(float(x), float(e)) for x, e in poly],
        }

    order = ridge_circle_samples()["marked_order"]
    i_q0 = order.index("q_0")
    neighbours = {order[(i_q0 - 1) % 4], order[(i_q0 + 1) % 4]}
    if neighbours != {"p_STS", "p_S-1T"}:
        raise ArithmeticError(
            f"q_0 is not on the [p_STS, p_S-1T] segment of r_0^+ (order {order})"
        )
    return {
        "points": pts,
        "residuals": residuals,
        "arcs": arcs,
        "ridge_order": order,
    }


def fan_ridge_residual_scan(
    extent: float = 3.0,
    resolution: float = 1e-3,
    hit_tol: float = 5e-3,
    zero_tol: float = 1e-4,
) -> dict:
    """Brute-force zero scan of the fan-ridge system on [-extent, extent]^2.

    Grid points where both residuals | |<f,p_B>|^2 - 1 | and
    | |<f,p_AB>|^2 - 1 | fall below ``hit_tol`` are clustered (8-adjacency);
    each cluster's minimum is polished by local grid refinement and the
    cluster counts as a zero when the refined minimum is below ``zero_tol``.
    The two circles are tangent at p_ST-1, so its cluster is a long thin arc
    of near-solutions; near-tangency ghosts of the pair floor out well above
    ``zero_tol`` and are discarded.  Returns the clusters together with the
    verdict that every zero cluster touches one of the two known solutions.
    """
    import collections

    n = int(round(2 * extent / resolution)) + 1
    xs = np.linspace(-extent, extent, n)

    def maxres(xi, eta):
        base = (xi**2 + 0.25) ** 2 + xi**2 + eta**2
        odd = xi * (SQRT15 * xi**2 + SQRT15 / 4 - eta) / 2
        return np.maximum(np.abs(base + odd - 1.0), np.abs(base - odd - 1.0))

    hits = {}
    chunk = 400
    for start in range(0, n, chunk):
        m = maxres(xs[start : start + chunk][:, None], xs[None, :])
        ii, jj = np.nonzero(m < hit_tol)
        for i, j in zip(ii, jj):
            hits[(start + int(i), int(j))] = float(m[i, j])

    seen = set()
    clusters = []
    for cell in hits:
        if cell in seen:
            continue
        dq = collections.deque([cell])
        seen.add(cell)
        comp = []
        while dq:
            i, j = dq.popleft()
            comp.append((i, j))
            for di in (-1, 0, 1):
                for dj in (-1, 0, 1):
                    nb = (i + di, j + dj)
                    if nb in hits and nb not in seen:
                        seen.add(nb)
                        dq.append(nb)
        clusters.append(comp)

    def refine(x0, y0):
        step = resolution
        for _ in range(4):
            gx = x0 + np.linspace(-10 * step, 10 * step, 21)
            gy = y0 + np.linspace(-10 * step, 10 * step, 21)
            m = maxres(gx[:, None], gy[None, :])
            i, j = np.unravel_index(int(np.argmin(m)), m.shape)
            x0, y0 = float(gx[i]), float(gy[j])
            step /= 10
        return float(maxres(np.array([x0]), np.array([y0]))[0])

    solutions = [(0.0, SQRT15 / 4), (0.0, -SQRT15 / 4)]
    out = []
    covered = set()
    all_near = True
    for comp in clusters:
        amin = min(comp, key=hits.get)
        refined = refine(xs[amin[0]], xs[amin[1]])
        is_zero = refined <= zero_tol
        dmin = math.inf
        which = None
        for idx, (sx, sy) in enumerate(solutions):
            d = min(
                math.hypot(xs[i] - sx, xs[j] - sy) for i, j in comp
            ) if len(comp) < 5000 else min(
                math.hypot(xs[i] - sx, xs[j] - sy) for i, j in comp[:: max(1, len(comp) // 2000)]
            )
            if d < dmin:
                dmin, which = d, idx
        if is_zero:
            if dmin <= 2 * resolution:
                covered.add(which)
            else:
                all_near = False
        out.append(
            {
                "size": len(comp),
                "refined_min": refined,
                "is_zero": is_zero,
                "dist_to_nearest_solution": dmin,
            }
        )
    return {
        "resolution": resolution,
        "clusters": out,
        "zero_clusters_touch_solutions": all_near,
        "both_solutions_found": covered == {0, 1},
    }


def ridge_circle_samples(n: int = 2000) -> dict:
    """Ordered samples of the ideal boundary of the ridge r_0^+ at the limit.

    The circle is traversed as two beta-branches over the alpha-interval
    where it exists, and the cyclic positions of the four marked points
    p_S-1T, p_ST-1, p_STS, q_0 are located on it.
    """
    ld = limit_group()
    a2 = ALPHA2_LIM
    x1 = _SQRT2

    def cosval(alpha):
        w = np.sqrt(2.0 * np.cos(alpha))
        num = 2.0 * np.cos(alpha / 2) ** 2 + np.cos(alpha) + w**2 * x1**2
        den = 4.0 * w * x1 * np.cos(alpha / 2)
        return num / den

    alphas = np.linspace(-math.pi / 2, math.pi / 2, n)
    c = cosval(alphas)
    ok = np.abs(c) <= 1.0
    al = alphas[ok]
    dev = np.arccos(np.clip(c[ok], -1.0, 1.0))
    plus = [(a, a2 + d) for a, d in zip(al, dev)]
    minus = [(a, a2 - d) for a, d in zip(al, dev)]
    loop = plus + minus[::-1]  # closed polyline in (alpha, beta~)
    marked = {
        "p_S-1T": (-math.acos(0.25), math.pi / 2),
        "p_ST-1": (math.acos(0.25), math.pi / 2),
        "p_STS": (0.0, math.acos(math.sqrt(27.0 / 32.0))),
        "q_0": (
            -math.acos(0.25),
            math.atan2(SQRT5, SQRT3) - math.acos(0.25) / 2,
        ),
    }
    # sanity: marked points really lie on both spheres
    for label, (a, b) in marked.items():
        v = geo_lift(GeoCoord(a, b, math.sqrt(2.0 * math.cos(a))))
        r = max(
            abs(abs(hermitian_product(v, ld.group.pB)) - 1.0),
            abs(abs(hermitian_product(v, ld.group.pAB)) - 1.0),
        )
        if r > 1e-9:
            raise ArithmeticError(f"marked ridge point {label} off the ridge: {r}")
    idx = {}
    pts = np.array(loop)
    for label, (a, b) in marked.items():
        d = np.hypot(pts[:, 0] - a, pts[:, 1] - b)
        idx[label] = int(np.argmin(d))
    order = sorted(idx, key=idx.get)
    return {"loop": loop, "marked_index": idx, "marked_order": order}


# ---------------------------------------------------------------------------
# Cell complexes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Edge:
    name: str
    ends: tuple[str, str]
    faces: tuple[str, str]
    carrier: str


@dataclass(frozen=True, eq=False)
class Pairing:
    word: str
    element: GroupElement
    src: str
    dst: str
    vertex_map: dict


@dataclass
class CellComplex:
    """Vertices with lifts, explicit edges, faces as vertex cycles, pairings."""

    vertices: dict
    edges: list
    faces: dict
    pairings: list = field(default_factory=list)

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    def validate(self):
        """Structural consistency: incidences, edge counts, vertex presence."""
        for e in self.edges:
            for f in e.faces:
                if f not in self.faces:
                    raise ValueError(f"edge {e.name} references unknown face {f}")
                for v in e.ends:
                    if v not in self.faces[f]:
                        raise ValueError(
                            f"edge {e.name}: end {v} missing from face {f}"
                        )
        for fname, cycle in self.faces.items():
            count = sum(fname in e.faces for e in self.edges)
            if count != len(cycle):
                raise ValueError(
                    f"face {fname} has {len(cycle)} vertices but {count} edges"
                )
        for e in self.edges:
            for v in e.ends:
                if v not in self.vertices:
                    raise ValueError(f"edge {e.name} end {v} has no vertex")

    def certify_pairings(self, tol: float = 1e-10) -> float:
        """Check every pairing maps labelled vertex lifts onto their targets."""
        worst = 0.0
        for pr in self.pairings:
            src_cycle = self.faces[pr.src]
            if set(pr.vertex_map) != set(src_cycle):
                raise ValueError(f"pairing {pr.word}: vertex map domain mismatch")
            if set(pr.vertex_map.values()) != set(self.faces[pr.dst]):
                raise ValueError(f"pairing {pr.word}: vertex map range mismatch")
            for v, w in pr.vertex_map.items():
                r = _proj_residual(pr.element.m @ self.vertices[v], self.vertices[w])
                worst = max(worst, r)
                if r > tol:
                    raise ArithmeticError(
                        f"pairing {pr.word}: {v} -> {w} residual {r}"
                    )
        return worst


def boundary_cell_complex(tol: float = 1e-9) -> tuple[CellComplex, dict]:
    """The cell structure of the tube boundary d(D^c n D_A).

    Five vertices, eleven edges and eight faces (two quadrilaterals, two
    triangles, four bigons), so the Euler characteristic is 2 and the tube
    is a ball.  Vertex positions are certified on the spheres and fans that
    carry their incident faces.  The face Q'_-1^- and the vertex q_-1 are
    not listed explicitly in the source construction; they are obtained by
    applying A^-1 to Q'_0^- and q_0, and the report flags this inference.
    """
    ld = limit_group()
    gd = ld.group
    Ainv = gd.A.inverse()
    q0 = fan_lift(0.0, -SQRT15 / 4.0)
    qm1 = standard_lift(Ainv.m @ q0)
    vertices = {
        "p_ST-1": ld.p_st_inv,
        "p_S-1T": ld.p_s_inv_t,
        "p_TST": ld.p_tst,
        "q_0": q0,
        "q_-1": qm1,
    }
    faces = {
        "Q'_0^+": ("p_ST-1", "p_TST", "p_S-1T", "q_0"),
        "Q'_-1^-": ("p_TST", "p_ST-1", "p_S-1T", "q_-1"),
        "T_0^-": ("p_S-1T", "p_ST-1", "q_0"),
        "T_-1^+": ("p_TST", "p_S-1T", "q_-1"),
        "B_0^+": ("p_ST-1", "p_S-1T"),
        "B_-1^-": ("p_S-1T", "p_TST"),
        "F_0 n D^c": ("p_ST-1", "q_0"),
        "F_-1 n D^c": ("p_TST", "q_-1"),
    }
    edges = [
        Edge("e1", ("p_S-1T", "p_TST"), ("Q'_0^+", "B_-1^-"), "r_0^-"),
        Edge("e2", ("p_TST", "p_ST-1"), ("Q'_0^+", "Q'_-1^-"), "r_0^-"),
        Edge("e3", ("p_ST-1", "p_S-1T"), ("B_0^+", "Q'_-1^-"), "r_0^-"),
        Edge("e4", ("q_0", "p_S-1T"), ("Q'_0^+", "T_0^-"), "r_0^+"),
        Edge("e5", ("p_S-1T", "p_ST-1"), ("B_0^+", "T_0^-"), "r_0^+"),
        Edge("e6", ("p_TST", "p_S-1T"), ("T_-1^+", "B_-1^-"), "r_-1^+"),
        Edge("e7", ("p_S-1T", "q_-1"), ("T_-1^+", "Q'_-1^-"), "r_-1^+"),
        Edge("e8", ("p_ST-1", "q_0"), ("Q'_0^+", "F_0 n D^c"), "c_0^+"),
        Edge("e9", ("p_ST-1", "q_0"), ("T_0^-", "F_0 n D^c"), "c_0^-"),
        Edge("e10", ("p_TST", "q_-1"), ("T_-1^+", "F_-1 n D^c"), "c_-1^+"),
        Edge("e11", ("p_TST", "q_-1"), ("Q'_-1^-", "F_-1 n D^c"), "c_-1^-"),
    ]
    cx = CellComplex(vertices, edges, faces)
    cx.validate()

    # vertex-position certificates: each vertex on its carrier spheres / fans
    fam = SphereFamily(limit_params())

    def on_sphere(v, kind, k):
        return abs(
            cygan_distance(heis_of_lift(v), fam.sphere(kind, k).center) - 1.0
        )

    carriers = {
        "p_ST-1": ([("+", 0), ("-", 0), ("-", -1), ("+", 1)], FAN0_LEVEL),
        "p_S-1T": ([("+", 0), ("-", 0), ("-", -1), ("+", -1)], None),
        "p_TST": ([("+", 0), ("-", -1), ("+", -1), ("-", -2)], FANM1_LEVEL),
        "q_0": ([("+", 0), ("-", 0)], FAN0_LEVEL),
        "q_-1": ([("+", -1), ("-", -1)], FANM1_LEVEL),
    }
    cert = {}
    for label, (spheres_list, fan_level) in carriers.items():
        rs = [on_sphere(vertices[label], kind, k) for kind, k in spheres_list]
        if fan_level is not None:
            rs.append(abs(fan_functional(heis_of_lift(vertices[label]).z) - fan_level))
        cert[label] = max(rs)
        if cert[label] > tol:
            raise ArithmeticError(f"vertex {label} off its carriers: {cert[label]}")
    report = {
        "n_vertices": len(vertices),
        "n_edges": len(edges),
        "n_faces": len(faces),
        "euler_characteristic": cx.euler_characteristic(),
        "face_kinds": {"quadrilaterals": 2, "triangles": 2, "bigons": 4},
        "vertex_residuals": cert,
        "inferred_by_A_translation": ["Q'_-1^-", "q_-1"],
    }
    return cx, report


# ---------------------------------------------------------------------------
# The octahedron
# ---------------------------------------------------------------------------


@dataclass
class OctahedronData:
    pre_merge: CellComplex
    post_merge: CellComplex
    relator_reduced: tuple
    vertex_orbits: list
    cusp_words: dict


def octahedron(tol: float = 1e-10) -> OctahedronData:
    """The ideal octahedron realising the Whitehead-link gluing.

    The fundamental domain P^+ u S^-1(P^-) is a polyhedron with two apexes
    q_inf = p_ST and S^-1(q_inf) = p_B = p_TS, eight triangles and two
    bigons, paired by five maps.  The bigon B_0^- (vertices p_ST-1, p_STS)
    and the triangle (p_TS, p_ST-1, p_STS) are both paired by S and share an
    edge, so they merge, leaving a genuine octahedron with four pairings.
    Every pairing is certified on vertex lifts, and each vertex word is
    certified unipotent (both cusps of the quotient have unipotent
    holonomy).  The labels use p_T-1S = p_S-1T and p_TS-1 = p_ST-1 (a word
    and its inverse share their fixed point).
    """
    ld = limit_group()
    gd = ld.group
    S, T = gd.S, gd.T
    V = _exact_lifts()

    faces_post = {
        "Fa": ("p_TS", "p_S-1T", "p_STS"),
        "Fb": ("p_TS", "p_TST", "p_ST-1"),
        "Fc": ("p_ST", "p_TST", "p_S-1T"),
        "Fd": ("p_ST", "p_ST-1", "p_STS"),
        "Fe": ("p_ST", "p_TST", "p_ST-1"),
        "Ff": ("p_TS", "p_S-1T", "p_TST"),
        "Fg": ("p_TS", "p_ST-1", "p_STS"),
        "Fh": ("p_ST", "p_STS", "p_S-1T"),
    }
    pair_rows = [
        ("TS", T @ S, "Fa", "Fb",
         {"p_TS": "p_TS", "p_S-1T": "p_TST", "p_STS": "p_ST-1"}),
        ("ST", S @ T, "Fc", "Fd",
         {"p_ST": "p_ST", "p_TST": "p_ST-1", "p_S-1T": "p_STS"}),
        ("T", T, "Fe", "Ff",
         {"p_ST": "p_TS", "p_TST": "p_S-1T", "p_ST-1": "p_TST"}),
        ("S", S, "Fg", "Fh",
         {"p_TS": "p_ST", "p_ST-1": "p_STS", "p_STS": "p_S-1T"}),
    ]
    # post-merge edges: all vertex pairs except the three apex-opposite ones
    non_edges = {
        frozenset(("p_TS", "p_ST")),
        frozenset(("p_ST-1", "p_S-1T")),
        frozenset(("p_STS", "p_TST")),
    }
    edges_post = []
    seen = {}
    for fname, cyc in faces_post.items():
        for i in range(len(cyc)):
            pair = frozenset((cyc[i], cyc[(i + 1) % len(cyc)]))
            if pair in non_edges:
                raise ValueError(f"face {fname} uses a non-edge {set(pair)}")
            seen.setdefault(pair, []).append(fname)
    for i, (pair, fs) in enumerate(sorted(seen.items(), key=lambda kv: sorted(kv[0]))):
        if len(fs) != 2:
            raise ValueError(f"edge {set(pair)} lies on {len(fs)} faces")
        a, b = sorted(pair)
        edges_post.append(Edge(f"E{i+1}", (a, b), tuple(sorted(fs)), "ideal"))
    post = CellComplex(
        dict(V),
        edges_post,
        faces_post,
        [Pairing(w, g, src, dst, vm) for w, g, src, dst, vm in pair_rows],
    )
    post.validate()
    post.certify_pairings(tol)

    # pre-merge complex: Fg and Fh keep their bigon companions B1 = B_0^-,
    # B2 = S^-1(B_0^+), doubling the edges (p_ST-1, p_STS) and (p_STS, p_S-1T)
    faces_pre = dict(faces_post)
    faces_pre["B1"] = ("p_ST-1", "p_STS")
    faces_pre["B2"] = ("p_STS", "p_S-1T")
    edges_pre = []
    for e in edges_post:
        if set(e.ends) == {"p_ST-1", "p_STS"}:
            edges_pre.append(Edge("E_d1", e.ends, ("Fg", "B1"), "ideal"))
            edges_pre.append(Edge("E_d2", e.ends, ("Fd", "B1"), "ideal"))
        elif set(e.ends) == {"p_STS", "p_S-1T"}:
            edges_pre.append(Edge("E_e1", e.ends, ("Fh", "B2"), "ideal"))
            edges_pre.append(Edge("E_e2", e.ends, ("Fa", "B2"), "ideal"))
        else:
            edges_pre.append(e)
    pairings_pre = [Pairing(w, g, src, dst, vm) for w, g, src, dst, vm in pair_rows]
    pairings_pre.append(
        Pairing("S", S, "B1", "B2", {"p_ST-1": "p_STS", "p_STS": "p_S-1T"})
    )
    pre = CellComplex(dict(V), edges_pre, faces_pre, pairings_pre)
    pre.validate()
    pre.certify_pairings(tol)

    # vertex words are unipotent and fix their vertices
    cusp_words = {
        "p_ST": ("ST", S @ T),
        "p_TS": ("TS", T @ S),
        "p_ST-1": ("ST^-1", S @ T.inverse()),
        "p_S-1T": ("S^-1T", S.inverse() @ T),
        "p_TST": ("TST", T @ S @ T),
        "p_STS": ("STS", S @ T @ S),
    }
    for label, (_, g) in cusp_words.items():
        if classify(g).tag is not IsometryTag.UNIPOTENT:
            raise ArithmeticError(f"vertex word at {label} is not unipotent")
        if _proj_residual(g.m @ V[label], V[label]) > tol:
            raise ArithmeticError(f"vertex word at {label} does not fix it")

    # vertex identification classes under the pairings (= the two cusps)
    parent = {v: v for v in V}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for pr in post.pairings:
        for a, b in pr.vertex_map.items():
            parent[find(a)] = find(b)
    orbits = {}
    for v in V:
        orbits.setdefault(find(v), []).append(v)
    vertex_orbits = sorted(sorted(o) for o in orbits.values())

    relator = rel_word([("s", 1), ("t", 1)], [("t", 1), ("s", 1), ("t", 1)])
    return OctahedronData(
        pre,
        post,
        relator,
        vertex_orbits,
        {k: w for k, (w, _) in cusp_words.items()},
    )
