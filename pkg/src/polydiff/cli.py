"""Batch command-line front end.

Set files are single JSON documents::

    {"kind": "vrep", "vertices": [[0, 0], [1, 0]]}
    {"kind": "hrep", "A": [[1, 0]], "b": [1]}
    {"kind": "box", "lower": [0, 0], "upper": [1, 1]}
    {"kind": "ball", "center": [0, 0], "radius": 1}
    {"kind": "orthant", "dim": 3}

Each may carry an optional ``"name"``.  Reports go to stdout or ``--out``.

Exit codes: 0 success, 2 parse error, 3 unsupported pairing, 4 empty
operand, 5 numerical failure (the report is still written, with
``"certified": false``).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np

from .errors import DimensionMismatch, EmptySetError, InvalidSet, NumericalFailure
from .minkdiff import (
    ball_minus_point,
    box_minus_point,
    hrep_minus_hrep_lifted,
    hrep_minus_point,
    hrep_minus_vrep,
    orthant_minus_point,
    reduce_vrep,
    vrep_minus_vrep,
)
from .separability import (
    classify_origin,
    locate_difference,
    nearest_points,
    project_difference,
    project_origin,
    separate,
)
from .sets import BallSet, BoxSet, HPolyhedron, Tolerances, VPolytope, orthant
from .variational import solve_vi_omega, solve_vi_strong, solve_vi_weak

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_UNSUPPORTED = 3
EXIT_EMPTY = 4
EXIT_NUMERICAL = 5

KINDS = ("vrep", "hrep", "box", "ball", "orthant")
_KEYS = {
    "vrep": ("vertices",),
    "hrep": ("A", "b"),
    "box": ("lower", "upper"),
    "ball": ("center", "radius"),
    "orthant": ("dim",),
}


class ParseError(Exception):
    pass


class Unsupported(Exception):
    pass


@dataclass(frozen=True)
class SetDescriptor:
    """A parsed set file: its kind, the library object and an optional label."""

    kind: str
    value: Any
    name: Optional[str] = None

    @property
    def dim(self) -> int:
        return self.value.dim


# -- canonical JSON --------------------------------------------------------------

def _num(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x) + 0.0  # folds -0 into 0
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".17g")


def _scalar(v) -> bool:
    return v is None or isinstance(v, (str, bool, int, float, np.integer, np.floating, np.bool_))


def _flat(v) -> bool:
    return isinstance(v, (list, tuple)) and all(_scalar(e) for e in v)


def dumps(obj, indent: int = 0) -> str:
    """Canonical JSON: keys in insertion order, numbers as ``%.17g``, one matrix row per line."""
    pad = "  " * indent
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if _scalar(obj):
        return _num(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}  {json.dumps(str(k))}: {dumps(v, indent + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        obj = [e.tolist() if isinstance(e, np.ndarray) else e for e in obj]
        if _flat(obj):
            return "[" + ", ".join(dumps(e) for e in obj) + "]"
        items = [pad + "  " + dumps(e, indent + 1) for e in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _parse_float(s: str) -> float:
    return float(s)


def _loads(text: str):
    def const(name):
        raise ValueError(f"non-standard constant {name}")

    return json.loads(text, parse_float=_parse_float, parse_constant=const)


# -- set files -----------------------------------------------------------------------

def _array(doc, key, ndim):
    try:
        a = np.array(doc[key], dtype=float)
    except KeyError:
        raise ParseError(f"missing field {key!r}") from None
    except (TypeError, ValueError) as exc:
        raise ParseError(f"field {key!r} is not numeric: {exc}") from None
    if a.ndim != ndim:
        raise ParseError(f"field {key!r} must be {ndim}-dimensional")
    return a


def parse_set(doc) -> SetDescriptor:
    """Build a :class:`SetDescriptor` from a decoded JSON document."""
    if not isinstance(doc, dict):
        raise ParseError("set document must be a JSON object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}")
    extra = set(doc) - {"kind", "name", *_KEYS[kind]}
    if extra:
        raise ParseError(f"unexpected fields {sorted(extra)}")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise ParseError("name must be a string")
    try:
        if kind == "vrep":
            value = VPolytope(_array(doc, "vertices", 2))
        elif kind == "hrep":
            value = HPolyhedron(_array(doc, "A", 2), _array(doc, "b", 1))
        elif kind == "box":
            value = BoxSet(_array(doc, "lower", 1), _array(doc, "upper", 1))
        elif kind == "ball":
            value = BallSet(_array(doc, "center", 1), float(_array(doc, "radius", 0)))
        else:
            n = doc.get("dim")
            if not isinstance(n, int) or isinstance(n, bool):
                raise ParseError("orthant dim must be an integer")
            value = orthant(n)
    except (InvalidSet, DimensionMismatch) as exc:
        raise ParseError(str(exc)) from None
    return SetDescriptor(kind, value, name)


def set_document(desc: SetDescriptor) -> dict:
    """Inverse of :func:`parse_set`: the canonical field layout for a descriptor."""
    doc: dict = {"kind": desc.kind}
    if desc.name is not None:
        doc["name"] = desc.name
    v = desc.value
    if desc.kind == "vrep":
        doc["vertices"] = v.vertices
    elif desc.kind == "hrep":
        doc["A"] = v.A
        doc["b"] = v.b
    elif desc.kind == "box":
        doc["lower"] = v.lower
        doc["upper"] = v.upper
    elif desc.kind == "ball":
        doc["center"] = v.center
        doc["radius"] = v.radius
    else:
        doc["dim"] = v.dim
    return doc


def read_set_file(path: str) -> SetDescriptor:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = _loads(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    except ValueError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from None
    return parse_set(doc)


def write_set(desc: SetDescriptor) -> str:
    return dumps(set_document(desc)) + "\n"


def _operand(desc: SetDescriptor):
    """Library operand for the analysis commands; balls are only usable in singleton diffs."""
    if desc.kind == "ball":
        raise Unsupported("ball operands are only supported in diff with a single-point vrep")
    return desc.value


# -- 2-D plot data ---------------------------------------------------------------------

def _hull_2d(P: np.ndarray) -> np.ndarray:
    """Counter-clockwise hull by the monotone chain; collinear points dropped."""
    pts = sorted(set(map(tuple, np.round(P, 12))))
    if len(pts) <= 2:
        return np.array(pts)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return np.array(lower[:-1] + upper[:-1])


def _hrep_vertices_2d(P: HPolyhedron, tol: Tolerances) -> Optional[np.ndarray]:
    """Vertices of a bounded 2-D H-polyhedron, or None if it is unbounded or empty."""
    from .solvers import support_inf

    for c in ((1, 0), (-1, 0), (0, 1), (0, -1)):
        if support_inf(P, np.array(c, dtype=float), tol) == -math.inf:
            return None
    pts = []
    A, b = P.A, P.b
    for i in range(P.n_rows):
        for j in range(i + 1, P.n_rows):
            M = A[[i, j]]
            if abs(np.linalg.det(M)) < 1e-12:
                continue
            x = np.linalg.solve(M, b[[i, j]])
            if np.all(A @ x <= b + 1e-9 * max(1.0, float(np.max(np.abs(b))))):
                pts.append(x)
    return np.array(pts) if pts else None


def _polygon(S, tol: Tolerances) -> Optional[dict]:
    if isinstance(S, BoxSet):
        S = S.to_vrep()
    if isinstance(S, VPolytope):
        V = S.vertices
    elif isinstance(S, HPolyhedron):
        V = _hrep_vertices_2d(S, tol)
        if V is None:
            return None
    else:
        return None
    H = _hull_2d(V)
    k = len(H)
    edges = [[i, (i + 1) % k] for i in range(k)] if k > 1 else []
    if k == 2:
        edges = [[0, 1]]
    return {"vertices": H, "edges": edges}


def _write_plot(path: str, layers: dict, tol: Tolerances):
    doc = {}
    for key, S in layers.items():
        if isinstance(S, np.ndarray):
            doc[key] = {"vertices": S, "edges": [[0, 1]] if len(S) == 2 else []}
            continue
        poly = _polygon(S, tol)
        doc[key] = poly if poly is not None else {"bounded": False}
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc) + "\n")


# -- commands ----------------------------------------------------------------------------

def _tolerances(args) -> dict:
    return {"feas_tol": args.tol.feas_tol, "opt_tol": args.tol.opt_tol, "max_iter": args.tol.max_iter}


def _vec(v):
    return None if v is None else np.asarray(v, dtype=float)


def _is_h(desc: SetDescriptor) -> bool:
    return desc.kind in ("hrep", "box", "orthant")


def cmd_diff(args) -> dict:
    a, b = args.sets
    tol = args.tol
    if a.dim != b.dim:
        raise ParseError(f"operands have dimensions {a.dim} and {b.dim}")
    single = b.kind == "vrep" and len(b.value) == 1
    p = b.value.vertices[0] if single else None
    if a.kind == "ball":
        if not single:
            raise Unsupported("ball minus anything but a single point is not polyhedral")
        out = SetDescriptor("ball", ball_minus_point(a.value, p))
    elif b.kind == "ball":
        raise Unsupported("ball as the subtrahend is not supported")
    elif a.kind == "vrep" and b.kind == "vrep":
        S = vrep_minus_vrep(a.value, b.value)
        if args.reduce:
            S = reduce_vrep(S, tol)
        out = SetDescriptor("vrep", S)
    elif a.kind == "vrep":
        raise Unsupported("vrep minus an H-described set has no direct constructor")
    elif single and a.kind == "box":
        out = SetDescriptor("box", box_minus_point(a.value, p))
    elif single and a.kind == "orthant":
        out = SetDescriptor("hrep", orthant_minus_point(a.dim, p))
    elif b.kind == "vrep":
        P = a.value.to_hrep() if a.kind == "box" else a.value
        if single:
            out = SetDescriptor("hrep", hrep_minus_point(P, p, tol))
        else:
            out = SetDescriptor("hrep", hrep_minus_vrep(P, b.value, raw=args.raw, tol=tol))
    else:
        P = a.value.to_hrep() if a.kind == "box" else a.value
        Q = b.value.to_hrep() if b.kind == "box" else b.value
        L = hrep_minus_hrep_lifted(P, Q, tol)
        doc = {"kind": "hrep", "A": L.D, "b": L.rhs,
               "blocks": {"diff": [0, L.n], "aux": [L.n, L.system.dim], "first_rows": L.n_first}}
        if args.plot_2d and a.dim == 2:
            _write_plot(args.plot_2d, {"a": a.value, "b": b.value}, tol)
        return doc
    if args.plot_2d and a.dim == 2:
        layers = {"a": a.value, "b": b.value}
        if out.kind != "ball":
            layers["result"] = out.value
        _write_plot(args.plot_2d, layers, tol)
    return set_document(out)


def _operands(args):
    return [_operand(d) for d in args.sets]


def cmd_distance(args) -> dict:
    A, B = _operands(args)
    proj = project_difference(A, B, args.tol)
    report = {"command": "distance", "distance": proj.distance, "difference_projection": proj.point}
    try:
        x_bar, y_bar = nearest_points(A, B, args.tol)
        report["nearest_points"] = {"a": x_bar, "b": y_bar}
        certified = bool(proj.certified)
    except NumericalFailure as exc:
        report["nearest_points"] = None
        report["error"] = str(exc)
        certified = False
    report["certified"] = certified
    if args.plot_2d and A.dim == 2:
        layers = {"a": A, "b": B}
        if report["nearest_points"] is not None:
            layers["segment"] = np.array([x_bar, y_bar])
        _write_plot(args.plot_2d, layers, args.tol)
    return report


def cmd_separate(args) -> dict:
    A, B = _operands(args)
    rep = separate(A, B, args.tol, seed=args.seed)
    loc = rep.origin_result
    certified = loc.projection.certified if loc.projection is not None else True
    return {
        "command": "separate",
        "verdict": rep.verdict.value,
        "category": loc.category.value,
        "direction": _vec(rep.direction),
        "margin": loc.margin,
        "margin_exactness": loc.exactness.value,
        "gamma": rep.offset,
        "thickness": rep.thickness,
        "distance": None if loc.projection is None else loc.projection.distance,
        "certified": bool(certified),
    }


def _location_report(loc) -> dict:
    proj = loc.projection
    return {
        "category": loc.category.value,
        "margin": loc.margin,
        "margin_exactness": loc.exactness.value,
        "direction": _vec(loc.direction),
        "band": loc.band,
        "distance": None if proj is None else proj.distance,
        "projection": None if proj is None else proj.point,
        "certified": True if proj is None else bool(proj.certified),
    }


def cmd_classify(args) -> dict:
    ops = _operands(args)
    if len(ops) == 1:
        S = ops[0].to_hrep() if isinstance(ops[0], BoxSet) else ops[0]
        loc = classify_origin(S, args.tol, seed=args.seed)
    else:
        loc = locate_difference(ops[0], ops[1], args.tol, seed=args.seed)
    return {"command": "classify", **_location_report(loc)}


def cmd_project(args) -> dict:
    ops = _operands(args)
    if len(ops) == 1:
        S = ops[0].to_hrep() if isinstance(ops[0], BoxSet) else ops[0]
        proj = project_origin(S, args.tol)
    else:
        proj = project_difference(ops[0], ops[1], args.tol)
    return {
        "command": "project",
        "point": proj.point,
        "distance": proj.distance,
        "iterations": proj.iterations,
        "certified": bool(proj.certified),
    }


def _vi_report(out) -> dict:
    return {
        "solvable": out.solvable,
        "witness": _vec(out.witness),
        "certificate": out.certificate,
        "residual": out.residual,
        "certified": out.certified,
    }


def cmd_vi(args) -> dict:
    A, B = _operands(args)
    kinds = ("strong", "omega", "weak") if args.kind == "all" else (args.kind,)
    report: dict = {"command": "vi", "delta": args.delta}
    for k in kinds:
        if k == "strong":
            out = solve_vi_strong(A, B, args.delta, args.tol)
        elif k == "omega":
            out = solve_vi_omega(A, B, args.tol)
        else:
            out = solve_vi_weak(A, B, args.tol, seed=args.seed)
        report[k] = _vi_report(out)
    report["certified"] = all(report[k]["certified"] for k in kinds)
    return report


COMMANDS = {
    "diff": cmd_diff,
    "distance": cmd_distance,
    "separate": cmd_separate,
    "classify": cmd_classify,
    "project": cmd_project,
    "vi": cmd_vi,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="polydiff", description="Minkowski differences and separability of convex polyhedra.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, nsets):
        p.add_argument("inputs", nargs=nsets, metavar="SET", help="JSON set file")
        p.add_argument("--out", help="write the result here instead of stdout")
        p.add_argument("--feas-tol", type=float, default=1e-9)
        p.add_argument("--opt-tol", type=float, default=1e-10)
        p.add_argument("--max-iter", type=int, default=200_000)
        p.add_argument("--plot-2d", metavar="PATH", help="write 2-D vertex/edge coordinates to PATH")
        return p

    d = common(sub.add_parser("diff", help="Minkowski difference A - B"), 2)
    d.add_argument("--reduce", action="store_true", help="drop redundant generators (vrep - vrep)")
    d.add_argument("--raw", action="store_true", help="keep one row copy per generator (hrep - vrep)")
    common(sub.add_parser("distance", help="distance and nearest points"), 2)
    common(sub.add_parser("separate", help="separating hyperplane"), 2)
    common(sub.add_parser("classify", help="origin location in S or A - B"), "+")
    common(sub.add_parser("project", help="projection of the origin onto S or A - B"), "+")
    v = common(sub.add_parser("vi", help="variational inequalities on A - B"), 2)
    v.add_argument("--kind", choices=("strong", "omega", "weak", "all"), default="all")
    v.add_argument("--delta", type=float, default=1.0, help="right-hand side of the strong problem")
    return parser


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _seed() -> int:
    raw = os.environ.get("POLYDIFF_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"POLYDIFF_SEED must be an integer, got {raw!r}") from None


def main(argv=None) -> int:
    """Run the CLI and return the exit code."""
    out = None
    try:
        args = build_parser().parse_args(argv)
        out = args.out
        if args.command in ("classify", "project") and len(args.inputs) > 2:
            raise ParseError(f"{args.command} takes one or two set files")
        try:
            args.tol = Tolerances(args.feas_tol, args.opt_tol, args.max_iter)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        args.seed = _seed()
        args.sets = [read_set_file(p) for p in args.inputs]
        if len({d.dim for d in args.sets}) > 1:
            raise ParseError("set files differ in dimension")
    except ParseError as exc:
        print(f"polydiff: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE

    try:
        report = COMMANDS[args.command](args)
        if args.command != "diff":
            report["tolerances"] = _tolerances(args)
            report["seed"] = args.seed
        code = EXIT_OK
    except ParseError as exc:
        print(f"polydiff: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except Unsupported as exc:
        print(f"polydiff: unsupported pairing: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except EmptySetError as exc:
        print(f"polydiff: empty operand: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    except NumericalFailure as exc:
        print(f"polydiff: numerical failure: {exc}", file=sys.stderr)
        report = {"command": args.command, "certified": False, "error": str(exc),
                  "tolerances": _tolerances(args), "seed": args.seed}
        code = EXIT_NUMERICAL
    _emit(dumps(report) + "\n", out)
    return code


def main_exit():  # pragma: no cover
    """Console-script entry point."""
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_exit()
