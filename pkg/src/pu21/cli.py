r"""Command-line interface.

Subcommands:

* ``classify`` -- region / commutator / quartic data of one parameter point
* ``scan`` -- grid scan of the square: CSV, JSON or SVG colour map
* ``spheres`` -- SVG of the projection discs of the isometric spheres
* ``verify`` -- run a certificate battery, JSON report, exit 1 on failure
* ``octahedron`` -- export the limit octahedron with its face pairings

Data goes to stdout when no ``--out`` is given; diagnostics go to stderr.
``--figure`` additionally renders a matplotlib image of the scan or sphere
report next to the delimited output.  The environment variable RILEY_EPS
overrides the default tolerance 1e-9, and ``--epsilon`` overrides both.

Exit codes: 0 success, 1 failed verification, 2 usage or out-of-domain
parameters, 3 unwritable output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import certificates, figures, limit, moduli, spheres, svgplot
from .core import default_eps
from .ford import word_str
from .moduli import ALPHA2_LIM, Params

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

_GUARD = 1e-6


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise _OutputError(f"cannot write {out}: {exc}") from exc


class _OutputError(RuntimeError):
    pass


def _json_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _complex_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _matrix_entries(m: np.ndarray) -> list[list[list[float]]]:
    return [[_complex_pair(m[i, j]) for j in range(3)] for i in range(3)]


def _params_or_exit(alpha1: float, alpha2: float) -> Params:
    # a ValueError propagates to main(), which reports it and returns 2
    return Params(alpha1, alpha2, guard=_GUARD)


# ---------------------------------------------------------------------------
# classify
# ---------------------------------------------------------------------------


def cmd_classify(args) -> int:
    p = _params_or_exit(args.alpha1, args.alpha2)
    eps = args.epsilon
    region = moduli.region_classify(p, eps)
    comm = moduli.commutator_class(p, eps)
    gd = moduli.build_group(p)
    roots = moduli.has_root_in_unit_interval(list(moduli.quartic_L(p)))
    report = {
        "alpha1": p.alpha1,
        "alpha2": p.alpha2,
        "D": float(region.d_value),
        "G": float(region.g_value),
        "Delta": float(region.delta),
        "region": region.tag.value,
        "region_marginal": region.marginal,
        "commutator_type": comm.tag,
        "quartic_roots_in_unit_interval": [float(r) for r in roots.roots],
        "quartic_root_multiplicities": [int(m) for m in roots.multiplicities],
        "traces": {
            "tr_A": _complex_pair(gd.A.trace),
            "tr_B": _complex_pair(gd.B.trace),
            "tr_AB": _complex_pair((gd.A @ gd.B).trace),
            "tr_S": _complex_pair(gd.S.trace),
            "tr_T": _complex_pair(gd.T.trace),
            "tr_ST_inv": _complex_pair((gd.S @ gd.T.inverse()).trace),
        },
    }
    _emit(_json_dumps(report), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# scan
# ---------------------------------------------------------------------------


def _parse_bounds(spec: str | None):
    half = math.pi / 2 - _GUARD
    if spec is None:
        return (-half, half, -half, half)
    try:
        vals = tuple(float(v) for v in spec.split(","))
        a1min, a1max, a2min, a2max = vals
    except ValueError:
        raise argparse.ArgumentTypeError(
            "bounds must be 'a1min,a1max,a2min,a2max'"
        ) from None
    if not (-half <= a1min < a1max <= half and -half <= a2min < a2max <= half):
        raise argparse.ArgumentTypeError(
            "bounds must lie inside the open square minus the guard"
        )
    return (a1min, a1max, a2min, a2max)


def scan_rows(grid_n: int, bounds, eps: float):
    """Row-major (alpha1 slowest) scan rows: (a1, a2, D, G, region tag)."""
    a1min, a1max, a2min, a2max = bounds
    a1s = np.linspace(a1min, a1max, grid_n)
    a2s = np.linspace(a2min, a2max, grid_n)
    A1, A2 = np.meshgrid(a1s, a2s, indexing="ij")
    tags, d, g = moduli.region_grid(A1, A2, eps)
    rows = []
    for i in range(grid_n):
        for j in range(grid_n):
            rows.append(
                (float(A1[i, j]), float(A2[i, j]), float(d[i, j]), float(g[i, j]),
                 str(tags[i, j]))
            )
    return rows


def _scan_csv(rows) -> str:
    f = svgplot.fmt
    lines = ["alpha1,alpha2,D,G,region"]
    for a1, a2, d, g, region in rows:
        lines.append(f"{f(a1)},{f(a2)},{f(d)},{f(g)},{region}")
    return "\n".join(lines) + "\n"


def cmd_scan(args) -> int:
    if args.grid < 2:
        sys.stderr.write("error: --grid must be at least 2\n")
        return EXIT_USAGE
    bounds = args.bounds
    eps = args.epsilon
    rows = scan_rows(args.grid, bounds, eps)
    traces = {
        "Z": moduli.trace_boundary("Z", 200).branches,
        "P": moduli.trace_boundary("P", 200).branches,
    }
    if args.format == "csv":
        _emit(_scan_csv(rows), args.out)
    elif args.format == "json":
        payload = {
            "grid_n": args.grid,
            "bounds": list(bounds),
            "epsilon": eps,
            "columns": ["alpha1", "alpha2", "D", "G", "region"],
            "rows": [list(r) for r in rows],
        }
        _emit(_json_dumps(payload), args.out)
    elif args.format == "svg":
        _emit(
            svgplot.svg_region_scan(rows, args.grid, args.grid, bounds, traces),
            args.out,
        )
    if args.figure:
        figures.render_scan(rows, args.grid, args.grid, bounds, traces, args.figure)
        sys.stderr.write(f"figure written to {args.figure}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# spheres
# ---------------------------------------------------------------------------


def _tangency_markers(p: Params, k_range: int):
    """At the limit parameters, the tangency points of the disc family."""
    if abs(p.alpha1) > 1e-9 or abs(abs(p.alpha2) - ALPHA2_LIM) > 1e-9:
        return []
    ld = limit.limit_group()
    from .core import heis_of_lift

    base = {
        "p_ST-1": heis_of_lift(ld.p_st_inv).z,
        "p_S-1T": heis_of_lift(ld.p_s_inv_t).z,
    }
    if p.alpha2 < 0:
        base = {k: v.conjugate() for k, v in base.items()}
    marks = []
    for label, z in base.items():
        for k in range(-k_range, k_range + 1):
            zz = z + k * p.ell_a
            marks.append((zz, label if k == 0 else f"A^{k} {label}"))
    return marks


def cmd_spheres(args) -> int:
    p = _params_or_exit(args.alpha1, args.alpha2)
    discs = spheres.projection_disc_records(p, args.k_range)
    marks = _tangency_markers(p, args.k_range)
    if args.format == "json":
        payload = {
            "alpha1": p.alpha1,
            "alpha2": p.alpha2,
            "k_range": args.k_range,
            "discs": discs,
            "tangency_points": [
                {"re": z.real, "im": z.imag, "label": lbl} for z, lbl in marks
            ],
        }
        _emit(_json_dumps(payload), args.out)
    else:
        _emit(svgplot.svg_sphere_projection(discs, marks), args.out)
    if args.figure:
        figures.render_spheres(discs, marks, args.figure)
        sys.stderr.write(f"figure written to {args.figure}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    ok, records = certificates.run_suite(args.suite, args.epsilon)
    payload = {
        "suite": args.suite,
        "epsilon": args.epsilon,
        "all_passed": ok,
        "checks": records,
    }
    _emit(_json_dumps(payload), args.out)
    n_fail = sum(r["verdict"] != "pass" for r in records)
    sys.stderr.write(
        f"suite {args.suite}: {len(records) - n_fail}/{len(records)} checks passed\n"
    )
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


# ---------------------------------------------------------------------------
# octahedron
# ---------------------------------------------------------------------------


def _complex_of_lift(v: np.ndarray) -> list[list[float]]:
    return [_complex_pair(z) for z in v]


def cmd_octahedron(args) -> int:
    oc = limit.octahedron()
    from .core import heis_of_lift, is_infinity

    def vertex_entry(label, v):
        entry = {"label": label, "lift": _complex_of_lift(v)}
        if is_infinity(v):
            entry["heisenberg"] = None
        else:
            h = heis_of_lift(v)
            entry["heisenberg"] = {"z_re": h.z.real, "z_im": h.z.imag, "t": h.t}
        return entry

    def complex_entry(cx):
        return {
            "vertices": [vertex_entry(l, v) for l, v in sorted(cx.vertices.items())],
            "faces": {name: list(cyc) for name, cyc in sorted(cx.faces.items())},
            "edges": [
                {"name": e.name, "ends": list(e.ends), "faces": list(e.faces)}
                for e in cx.edges
            ],
            "pairings": [
                {
                    "word": pr.word,
                    "matrix": _matrix_entries(pr.element.m),
                    "source_face": pr.src,
                    "target_face": pr.dst,
                    "vertex_map": dict(sorted(pr.vertex_map.items())),
                }
                for pr in cx.pairings
            ],
            "euler_characteristic": cx.euler_characteristic(),
        }

    payload = {
        "alpha1": 0.0,
        "alpha2": ALPHA2_LIM,
        "pre_merge": complex_entry(oc.pre_merge),
        "post_merge": complex_entry(oc.post_merge),
        "relator_word": "rel(st, tst)",
        "relator_reduced": word_str(oc.relator_reduced),
        "relator_reduces_to_identity": oc.relator_reduced == (),
        "vertex_orbits": oc.vertex_orbits,
        "cusp_words": oc.cusp_words,
    }
    _emit(_json_dumps(payload), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pu21",
        description="Two-generator unipotent subgroups of PU(2,1): "
        "discreteness regions, isometric spheres, Ford-domain combinatorics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_eps(sp):
        sp.add_argument(
            "--epsilon",
            type=float,
            default=default_eps(),
            help="zero/unit tolerance (default 1e-9; env RILEY_EPS overrides)",
        )

    sp = sub.add_parser("classify", help="classify one parameter point")
    sp.add_argument("--alpha1", type=float, required=True)
    sp.add_argument("--alpha2", type=float, required=True)
    sp.add_argument("--out", default=None)
    add_eps(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("scan", help="grid scan of the parameter square")
    sp.add_argument("--grid", type=int, default=200, help="points per axis")
    sp.add_argument("--bounds", type=_parse_bounds, default=None,
                    help="a1min,a1max,a2min,a2max (default: full square)")
    sp.add_argument("--format", choices=("csv", "json", "svg"), default="csv")
    sp.add_argument("--out", default=None)
    sp.add_argument("--figure", default=None,
                    help="also render a matplotlib figure to this path")
    add_eps(sp)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("spheres", help="projection discs of the isometric spheres")
    sp.add_argument("--alpha1", type=float, required=True)
    sp.add_argument("--alpha2", type=float, required=True)
    sp.add_argument("--k-range", type=int, default=2, dest="k_range")
    sp.add_argument("--format", choices=("svg", "json"), default="svg")
    sp.add_argument("--out", default=None)
    sp.add_argument("--figure", default=None,
                    help="also render a matplotlib figure to this path")
    add_eps(sp)
    sp.set_defaults(func=cmd_spheres)

    sp = sub.add_parser("verify", help="run a certificate battery")
    sp.add_argument("--suite", choices=certificates.available_suites(), default="all")
    sp.add_argument("--out", default=None)
    add_eps(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("octahedron", help="export the limit octahedron")
    sp.add_argument("--out", default=None)
    add_eps(sp)
    sp.set_defaults(func=cmd_octahedron)

    return parser


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "scan" and args.bounds is None:
        args.bounds = _parse_bounds(None)
    try:
        return args.func(args)
    except _OutputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_IO
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
