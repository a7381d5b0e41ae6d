"""Machine-readable verification records and their JSON/CSV serialisation."""

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

__all__ = ["VerificationReport", "make_report", "failed_report", "reports_to_json", "reports_to_csv",
           "all_passed"]

METRICS = ("abs", "rel", "scaled", "atleast")


def _plain(x):
    """JSON-friendly scalar: complex becomes [re, im], numpy scalars become Python."""
    if isinstance(x, (complex, np.complexfloating)):
        x = complex(x)
        return [x.real, x.imag] if x.imag else x.real
    if isinstance(x, (np.floating, np.integer, np.bool_)):
        return x.item()
    return x


def _as_complex(x):
    if isinstance(x, (list, tuple)):
        return complex(x[0], x[1])
    return complex(x)


@dataclass(frozen=True)
class VerificationReport:
    """One verification check.

    ``passed`` is recomputable: with ``d = |lhs - rhs|`` and ``scale`` equal to
    1 (``abs``), ``|rhs|`` (``rel``) or ``max(1, |rhs|)`` (``scaled``), the
    check passes when ``d / scale <= tolerance``.  The ``atleast`` metric is for
    lower bounds: its error is ``max(0, rhs - lhs)``.  ``lhs`` and ``rhs`` are
    stored as floats, or as [re, im] pairs when complex.  A check that raised
    keeps ``lhs`` and ``rhs`` as None, fails and records the error code.
    """

    check_id: str
    suite: str
    params: dict
    lhs: object
    rhs: object
    metric: str
    tolerance: float
    error: float
    passed: bool
    error_code: str = ""
    note: str = ""
    wall_time: float = field(default=None, compare=False)

    def recompute(self):
        if self.lhs is None or self.rhs is None:
            return False
        a, b = _as_complex(self.lhs), _as_complex(self.rhs)
        return _error(a, b, self.metric) <= self.tolerance

    def to_dict(self, timing=False):
        d = asdict(self)
        if not timing:
            d.pop("wall_time")
        return d


def _error(lhs, rhs, metric):
    if metric == "atleast":
        return max(0.0, rhs.real - lhs.real)
    d = abs(lhs - rhs)
    if metric == "abs":
        return d
    if metric == "rel":
        return d / abs(rhs) if rhs != 0 else (0.0 if d == 0 else math.inf)
    return d / max(1.0, abs(rhs))


def make_report(check_id, suite, params, lhs, rhs, tolerance, metric="rel", note="",
                wall_time=None):
    if metric not in METRICS:
        raise ValueError(f"metric must be one of {METRICS}")
    lhs, rhs = complex(lhs), complex(rhs)
    err = _error(lhs, rhs, metric)
    return VerificationReport(check_id, suite, {k: _plain(v) for k, v in params.items()},
                              _plain(lhs), _plain(rhs), metric, float(tolerance), float(err),
                              bool(err <= tolerance), "", note, wall_time)


def failed_report(check_id, suite, params, exc, tolerance=0.0, wall_time=None):
    code = getattr(exc, "code", type(exc).__name__)
    return VerificationReport(check_id, suite, {k: _plain(v) for k, v in params.items()},
                              None, None, "abs", float(tolerance), math.inf, False, code,
                              str(exc), wall_time)


def all_passed(reports):
    return all(r.passed for r in reports)


def reports_to_json(reports, timing=False):
    """JSON text; floats use the shortest round-trip representation."""
    return json.dumps([r.to_dict(timing) for r in reports], indent=2, sort_keys=True,
                      allow_nan=True) + "\n"


CSV_FIELDS = ("check_id", "suite", "params", "lhs", "rhs", "metric", "tolerance", "error",
              "passed", "error_code", "note")


def reports_to_csv(reports, timing=False):
    fields_ = CSV_FIELDS + (("wall_time",) if timing else ())
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(fields_)
    for r in reports:
        d = r.to_dict(timing)
        row = []
        for k in fields_:
            v = d[k]
            if isinstance(v, (dict, list)):
                v = json.dumps(v, sort_keys=True)
            elif isinstance(v, float):
                v = repr(v)
            row.append(v)
        w.writerow(row)
    return buf.getvalue()
