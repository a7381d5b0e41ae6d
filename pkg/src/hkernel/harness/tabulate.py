"""Tables of density, spherical-function and Psi values on a product grid."""

import csv
import io
import itertools
import json
import math

import numpy as np

from ..errors import ConfigError, HKError
from ..heisenberg import GroupPoint, cc_norm, spherical_phi_array
from ..kernel import density_closed_array, density_hypergeometric_array, psi_r_alpha
from ..operators import OperatorParams

__all__ = ["TABLES", "parse_range", "parse_params", "tabulate", "render"]

TABLES = {
    "density": (("x", "y", "t"),
                ("x", "y", "t", "cc_norm", "density_closed", "density_hypergeometric", "rel_diff")),
    "spherical": (("x", "y", "t"), ("x", "y", "t", "phi_re", "phi_im")),
    "psi": (("theta",), ("theta", "psi_re", "psi_im", "series_re", "series_im")),
}

DEFAULT_PARAMS = {
    "density": {"n": 1, "alpha": 0.0},
    "spherical": {"n": 1, "lam": 1.0, "k": 0},
    "psi": {"n": 1, "alpha": 0.0, "r": 0.9},
}


def parse_range(text, axes):
    """``"x=0:2:5,y=0,t=0"`` -> {axis: values}.

    ``a:b:m`` is m equally spaced values from a to b inclusive (m may be 0);
    a single number is a one-point axis.  Missing axes default to 0.
    """
    out = {ax: np.zeros(1) for ax in axes}
    for part in filter(None, (p.strip() for p in (text or "").split(","))):
        if "=" not in part:
            raise ConfigError(f"range entry {part!r} is not 'axis=spec'")
        ax, spec = (s.strip() for s in part.split("=", 1))
        if ax not in axes:
            raise ConfigError(f"unknown axis {ax!r}; expected one of {axes}")
        bits = spec.split(":")
        try:
            if len(bits) == 1:
                out[ax] = np.array([float(bits[0])])
            elif len(bits) == 3:
                count = int(bits[2])
                if count < 0:
                    raise ValueError(spec)
                out[ax] = np.linspace(float(bits[0]), float(bits[1]), count)
            else:
                raise ValueError(spec)
        except ValueError as exc:
            raise ConfigError(f"bad range {spec!r} for axis {ax!r}") from exc
    return out


def parse_params(text, what):
    """``"n=2,alpha=0.5"`` merged over the table defaults."""
    params = dict(DEFAULT_PARAMS[what])
    for part in filter(None, (p.strip() for p in (text or "").split(","))):
        if "=" not in part:
            raise ConfigError(f"parameter {part!r} is not 'key=value'")
        key, raw = (s.strip() for s in part.split("=", 1))
        if key not in params:
            raise ConfigError(f"unknown parameter {key!r} for {what}; expected {sorted(params)}")
        try:
            params[key] = type(params[key])(raw)
        except ValueError as exc:
            raise ConfigError(f"bad value {raw!r} for {key!r}") from exc
    return params


def _safe(fn):
    try:
        return fn()
    except HKError:
        return math.nan


def _density_rows(params, grid):
    p = OperatorParams(params["n"], params["alpha"])
    for x, y, t in itertools.product(grid["x"], grid["y"], grid["t"]):
        z2 = x * x + y * y
        z = np.zeros(p.n, dtype=complex)
        z[0] = complex(x, y)
        closed = _safe(lambda: float(density_closed_array(p, z2, t)))
        hyp = _safe(lambda: float(density_hypergeometric_array(p, z2, t)))
        rel = abs(closed - hyp) / abs(hyp) if hyp else math.nan
        yield (x, y, t, cc_norm(GroupPoint(z, t)), closed, hyp, rel)


def _spherical_rows(params, grid):
    for x, y, t in itertools.product(grid["x"], grid["y"], grid["t"]):
        v = complex(spherical_phi_array(params["lam"], params["k"], params["n"], x * x + y * y, t))
        yield (x, y, t, v.real, v.imag)


def _psi_rows(params, grid):
    p = OperatorParams(params["n"], params["alpha"])
    for th in grid["theta"]:
        closed, raw = psi_r_alpha(p, params["r"], th, return_both=True)
        yield (th, closed.real, closed.imag, raw.real, raw.imag)


ROWS = {"density": _density_rows, "spherical": _spherical_rows, "psi": _psi_rows}


def tabulate(what, grid, params=None):
    """Header and rows (lists of floats) for ``what`` over the product ``grid``."""
    if what not in TABLES:
        raise ConfigError(f"unknown table {what!r}; choose from {sorted(TABLES)}")
    axes, header = TABLES[what]
    if isinstance(grid, str):
        grid = parse_range(grid, axes)
    params = dict(DEFAULT_PARAMS[what], **(params or {}))
    rows = [tuple(float(v) for v in row) for row in ROWS[what](params, grid)]
    return header, rows


def _cell(v):
    return "nan" if math.isnan(v) else repr(v)


def render(header, rows, fmt="csv"):
    """CSV with shortest round-trip floats, or a JSON array of objects (NaN as null)."""
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_cell(v) for v in row])
        return buf.getvalue()
    if fmt == "json":
        recs = [{k: (None if math.isnan(v) else v) for k, v in zip(header, row)} for row in rows]
        return json.dumps(recs, indent=1) + "\n"
    raise ConfigError(f"unknown format {fmt!r}")
