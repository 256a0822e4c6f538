"""Verification reports and their JSON / CSV serialisation."""

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

SHARPNESS_TOL = 1e-6
CSV_COLUMNS = ("theorem_id", "map", "lhs", "rhs", "margin", "holds", "sharp",
               "inputs", "constants", "resolution")


@dataclass
class VerificationReport:
    """Outcome of one inequality check ``lhs <= rhs``.

    ``holds`` is ``margin >= -tolerance`` with ``margin = rhs - lhs``;
    ``sharp`` marks ``|margin| < SHARPNESS_TOL``.  ``constants`` records the
    empirical constants that witness the inequality.
    """

    theorem_id: str
    lhs: float
    rhs: float
    margin: float
    holds: bool
    sharp: bool
    tolerance: float
    inputs: dict = field(default_factory=dict)
    constants: dict = field(default_factory=dict)
    resolution: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "theorem_id": self.theorem_id,
            "lhs": _jsonable(self.lhs),
            "rhs": _jsonable(self.rhs),
            "margin": _jsonable(self.margin),
            "holds": bool(self.holds),
            "sharp": bool(self.sharp),
            "tolerance": self.tolerance,
            "inputs": _jsonable(self.inputs),
            "constants": _jsonable(self.constants),
            "resolution": _jsonable(self.resolution),
        }


def make_report(theorem_id, lhs, rhs, tolerance, inputs=None, constants=None,
                resolution=None, sharp_tol=SHARPNESS_TOL):
    lhs, rhs = float(lhs), float(rhs)
    margin = rhs - lhs
    return VerificationReport(theorem_id, lhs, rhs, margin, bool(margin >= -tolerance),
                              bool(abs(margin) < sharp_tol), float(tolerance),
                              dict(inputs or {}), dict(constants or {}), dict(resolution or {}))


def worst_point_report(theorem_id, points, lhs, rhs, tolerance, inputs=None, **kw):
    """Report the sampled point with the smallest ``rhs - lhs``."""
    lhs = np.asarray(lhs, dtype=float).ravel()
    rhs = np.asarray(rhs, dtype=float).ravel()
    i = int(np.argmin(rhs - lhs))
    inputs = dict(inputs or {})
    inputs["worst_point"] = np.ravel(points)[i]
    inputs["n_points"] = int(lhs.size)
    return make_report(theorem_id, lhs[i], rhs[i], tolerance, inputs, **kw)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return [_jsonable(v) for v in x.tolist()]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (complex, np.complexfloating)):
        return [_jsonable(x.real), _jsonable(x.imag)]
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    return x


def reports_to_json(reports, map_labels=None):
    rows = []
    for i, r in enumerate(reports):
        d = r.to_dict()
        if map_labels is not None:
            d = {"map": map_labels[i], **d}
        rows.append(d)
    return json.dumps(rows, indent=2, sort_keys=False) + "\n"


def reports_to_csv(reports, map_labels=None):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for i, r in enumerate(reports):
        d = r.to_dict()
        w.writerow([d["theorem_id"], "" if map_labels is None else map_labels[i],
                    repr(r.lhs), repr(r.rhs), repr(r.margin), d["holds"], d["sharp"],
                    json.dumps(d["inputs"], sort_keys=True),
                    json.dumps(d["constants"], sort_keys=True),
                    json.dumps(d["resolution"], sort_keys=True)])
    return buf.getvalue()
