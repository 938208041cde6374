"""CLI scenarios over the fixture corpus, shared by the CLI tests and the acceptance suite."""

import json
import math
from pathlib import Path

import numpy as np

from polydiff.cli import main

FIXTURES = Path(__file__).parent / "fixtures"
CANONICAL = sorted(
    p.name for p in FIXTURES.glob("*.json") if p.name not in {"malformed.json", "bad_kind.json", "ragged.json"}
)


def f(name):
    return str(FIXTURES / name)


def _close(a, b, tol=1e-9):
    return math.isclose(a, b, rel_tol=0, abs_tol=tol)


def _diff_squares(r):
    return r["kind"] == "vrep" and len(r["vertices"]) == 16


def _diff_squares_reduced(r):
    return sorted(map(tuple, r["vertices"])) == [(-1, -1), (-1, 1), (1, -1), (1, 1)]


def _hv(r):
    return r["kind"] == "hrep" and r["A"] == [[1]] and r["b"] == [0.5]


def _hv_raw(r):
    return r["A"] == [[1], [1]] and r["b"] == [1, 0.5]


def _hh(r):
    return r["blocks"] == {"diff": [0, 2], "aux": [2, 4], "first_rows": 4} and len(r["A"]) == 8


def _orthant(r):
    return r["A"] == [[-1, 0], [0, -1]] and r["b"] == [1, 1]


def _ball(r):
    return r["kind"] == "ball" and r["center"] == [1, 1] and r["radius"] == 3


def _box_point(r):
    return r["kind"] == "box" and r["lower"] == [-1, -1] and r["upper"] == [0, 0]


def _distance(r):
    a, b = r["nearest_points"]["a"], r["nearest_points"]["b"]
    return _close(r["distance"], 1.0) and r["certified"] and _close(a[0], 1.0, 1e-8) and _close(b[0], 2.0, 1e-8)


def _separate_equal(r):
    return r["verdict"] == "Inseparable"


def _separate_disjoint(r):
    return r["verdict"] == "StronglySeparable" and _close(r["gamma"], 1.5, 1e-8) and _close(r["thickness"], 1.0, 1e-8)


def _separate_touch(r):
    return r["verdict"] == "NonStronglySeparable"


def _classify(r):
    return r["category"] == "Exterior" and _close(r["margin"], 1.0) and r["direction"] == [1]


def _classify_pair(r):
    return r["category"] == "Boundary" and r["margin"] == 0


def _project(r):
    return np.allclose(r["point"], [-1, 0], atol=1e-8) and _close(r["distance"], 1.0, 1e-8)


def _project_single(r):
    return np.allclose(r["point"], [4, 4], atol=1e-9) and r["iterations"] >= 0


def _vi_all(r):
    return (r["strong"]["solvable"] and r["omega"]["solvable"] and r["weak"]["solvable"]
            and min(r["strong"]["residual"], r["omega"]["residual"], r["weak"]["residual"]) >= -1e-8)


def _vi_strong(r):
    return np.allclose(r["strong"]["witness"], [-2, 0], atol=1e-8) and r["delta"] == 2 and "omega" not in r


def _vi_unbounded(r):
    return r["omega"]["certified"] is False and r["certified"] is False


def _vi_equal(r):
    return not any(r[k]["solvable"] for k in ("strong", "omega", "weak"))


def _failure(r):
    return r["certified"] is False and "error" in r


# (label, argv, expected exit code, report check or None)
CASES = [
    ("diff vrep squares", ["diff", f("square_vrep.json"), f("square_vrep.json")], 0, _diff_squares),
    ("diff --reduce", ["diff", f("square_vrep.json"), f("square_vrep.json"), "--reduce"], 0, _diff_squares_reduced),
    ("diff hrep-vrep", ["diff", f("halfline_le1.json"), f("segment_0_half.json")], 0, _hv),
    ("diff --raw", ["diff", f("halfline_le1.json"), f("segment_0_half.json"), "--raw"], 0, _hv_raw),
    ("diff hrep-hrep lifted", ["diff", f("hrep_square.json"), f("box_01.json")], 0, _hh),
    ("diff orthant-point", ["diff", f("orthant2.json"), f("point_11.json")], 0, _orthant),
    ("diff ball-point", ["diff", f("ball.json"), f("point_11.json")], 0, _ball),
    ("diff box-point", ["diff", f("box_01.json"), f("point_11.json")], 0, _box_point),
    ("distance boxes", ["distance", f("box_01.json"), f("box_right.json")], 0, _distance),
    ("separate equal", ["separate", f("box_01.json"), f("square_vrep.json")], 0, _separate_equal),
    ("separate disjoint", ["separate", f("box_right.json"), f("box_01.json")], 0, _separate_disjoint),
    ("separate touching", ["separate", f("interval_12.json"), f("interval_01.json")], 0, _separate_touch),
    ("classify single", ["classify", f("halfline_ge1.json")], 0, _classify),
    ("classify pair", ["classify", f("interval_12.json"), f("interval_01.json")], 0, _classify_pair),
    ("project pair", ["project", f("box_01.json"), f("box_right.json")], 0, _project),
    ("project single", ["project", f("triangle_far.json")], 0, _project_single),
    ("vi all", ["vi", f("box_right.json"), f("box_01.json")], 0, _vi_all),
    ("vi strong delta", ["vi", f("box_01.json"), f("box_right.json"), "--kind", "strong", "--delta", "2"], 0, _vi_strong),
    ("vi unbounded pair", ["vi", f("halfline_ge1.json"), f("halfline_le1.json")], 0, _vi_unbounded),
    ("vi equal sets", ["vi", f("square_vrep.json"), f("box_01.json")], 0, _vi_equal),
    ("parse: malformed json", ["distance", f("malformed.json"), f("box_01.json")], 2, None),
    ("parse: unknown kind", ["classify", f("bad_kind.json")], 2, None),
    ("parse: ragged vertices", ["classify", f("ragged.json")], 2, None),
    ("parse: missing file", ["classify", f("does_not_exist.json")], 2, None),
    ("parse: dimension mismatch", ["distance", f("box_01.json"), f("interval_01.json")], 2, None),
    ("parse: bad flag", ["distance", f("box_01.json"), f("box_01.json"), "--feas-tol", "abc"], 2, None),
    ("parse: bad tolerance", ["distance", f("box_01.json"), f("box_01.json"), "--feas-tol", "-1"], 2, None),
    ("unsupported: vrep-ball", ["diff", f("ball.json"), f("ball.json")], 3, None),
    ("unsupported: ball minus segment", ["diff", f("ball.json"), f("square_vrep.json")], 3, None),
    ("unsupported: vrep minus ball", ["diff", f("square_vrep.json"), f("ball.json")], 3, None),
    ("unsupported: ball distance", ["distance", f("ball.json"), f("box_01.json")], 3, None),
    ("empty: diff", ["diff", f("empty_interval.json"), f("segment_0_half.json")], 4, None),
    ("empty: classify", ["classify", f("empty_interval.json")], 4, None),
    ("empty: distance", ["distance", f("empty_interval.json"), f("interval_01.json")], 4, None),
    ("numerical: iteration cap", ["distance", f("triangle_far.json"), f("box_01.json"), "--max-iter", "1"], 5, _failure),
]


def run_case(argv, out_path):
    """Run the CLI writing to ``out_path``; returns ``(code, report or None)``."""
    code = main(list(argv) + ["--out", str(out_path)])
    report = None
    if Path(out_path).exists():
        report = json.loads(Path(out_path).read_text())
    return code, report
