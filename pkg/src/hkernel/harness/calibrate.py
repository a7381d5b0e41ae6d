"""Least-squares estimate of the global scale c in L_alpha(f * Phi_alpha) = c f.

The convolution u = f * Phi_alpha is expensive, so it is sampled only where a
stencil needs it.  Around each centre column (x0, y0) a cross of stencil
points is filled along every spatial axis for t within the stencil of each
target t0.  When alpha != 0 the central column also covers the whole periodic
t line, which is what the FFT realisation of |T| needs.  Everything else is
NaN, and L_alpha is then applied with the ordinary grid operators.

u decays only like |t|^{-n} along the t axis, so the periodic |T| sees the
truncation of the window.  Before the FFT the central line is continued by an
asymptotic fit ``sum_j a_j |t|^{-j}`` on each end to a window ``tail_factor``
times longer.
"""

import time
import warnings
from dataclasses import dataclass, field

import numpy as np

from ..config import DEFAULT_QUADRATURE, DEFAULT_TOLERANCES
from ..errors import DomainError, IllConditionedError, TailNotDecayedWarning
from ..heisenberg import GroupPoint
from ..kernel.convolution import convolve
from ..operators import (STENCILS, Grid, OperatorParams, SampledField, apply_absT, apply_L,
                         apply_L_alpha)

__all__ = ["CalibrationResult", "calibrate", "stencil_layout", "extend_tail", "DEFAULT_COLUMNS",
           "DEFAULT_T0"]

DEFAULT_COLUMNS = ((0.0, 0.0), (0.5, 0.0), (1.0, 0.0))
DEFAULT_T0 = (-0.5, 0.0, 0.5)


@dataclass(frozen=True)
class CalibrationResult:
    """Fitted scale and residual of one calibration run."""

    c: float
    c_imag: float
    residual: float
    samples: int
    evaluations: int
    alpha: float
    function: str
    warnings: tuple = ()
    info: dict = field(default_factory=dict, compare=False)


def stencil_layout(n, column, t0s, h, t_half, t_count, order, full_line):
    """Local grid around one column and the boolean mask of points to fill.

    Returns ``(grid, mask, targets)`` where ``targets`` are the index tuples
    of the centre points (one per t0, snapped to the t lattice).
    """
    m = order // 2
    ht = 2.0 * t_half / t_count
    centre = np.zeros(2 * n)
    centre[0], centre[n] = column
    origin = tuple(centre - m * h) + (-t_half,)
    grid = Grid(n, origin, (h,) * (2 * n) + (ht,), (2 * m + 1,) * (2 * n) + (t_count,))
    mask = np.zeros(grid.count, dtype=bool)
    mid = (m,) * (2 * n)
    targets = []
    for t0 in t0s:
        k = int(round((t0 + t_half) / ht))
        if not m <= k < t_count - m:
            raise DomainError(f"t0={t0} is too close to the end of the t window")
        targets.append(mid + (k,))
        ts = slice(k - m, k + m + 1)
        for ax in range(2 * n):
            idx = list(mid) + [ts]
            idx[ax] = slice(None)
            mask[tuple(idx)] = True
    if full_line:
        mask[mid + (slice(None),)] = True
    return grid, mask, targets


def extend_tail(values, t_half, factor, terms=3, fit=16):
    """Continue a line sampled on [-t_half, t_half) to [-factor t_half, factor t_half).

    Each end is fitted by least squares to ``sum_{j=1}^{terms} a_j |t|^{-j}``
    over its last ``fit`` samples; the samples themselves are kept.
    """
    values = np.asarray(values)
    count = values.shape[-1]
    if factor <= 1:
        return values
    ht = 2.0 * t_half / count
    big = count * int(factor)
    t = -factor * t_half + ht * np.arange(big)
    out = np.empty(big, dtype=complex)
    lo = (big - count) // 2
    out[lo:lo + count] = values
    inner = -t_half + ht * np.arange(count)
    for side in (slice(0, fit), slice(count - fit, count)):
        a = np.abs(inner[side])[:, None] ** -np.arange(1, terms + 1)
        coef, *_ = np.linalg.lstsq(a, values[side], rcond=None)
        part = slice(0, lo) if side.start == 0 else slice(lo + count, big)
        out[part] = (np.abs(t[part])[:, None] ** -np.arange(1, terms + 1)) @ coef
    return out


def _apply(p, u, grid, order, tol, tail_factor):
    if p.alpha == 0 or tail_factor <= 1:
        return apply_L_alpha(p, SampledField(u, grid), order=order, tol=tol).values
    n = grid.n
    out = apply_L(SampledField(u, grid), order=order).values
    mid = tuple(c // 2 for c in grid.count[:-1])
    line = extend_tail(u[mid], -grid.origin[-1], tail_factor)
    lgrid = Grid(n, grid.origin[:-1] + (grid.origin[-1] * tail_factor,), grid.spacing,
                 (1,) * (2 * n) + (line.size,))
    lo = (line.size - grid.count[-1]) // 2
    absT = apply_absT(SampledField(line.reshape(lgrid.count), lgrid), tol).values.ravel()
    out[mid] = out[mid] + p.alpha * absT[lo:lo + grid.count[-1]]
    return out


def _points(grid, mask):
    n = grid.n
    idx = np.argwhere(mask)
    coords = np.array(grid.origin) + idx * np.array(grid.spacing)
    z = coords[:, :n] + 1j * coords[:, n:2 * n]
    return [GroupPoint(zz, float(tt)) for zz, tt in zip(z, coords[:, -1])]


def calibrate(f, alpha=0.0, quad=DEFAULT_QUADRATURE, tol=None, columns=DEFAULT_COLUMNS,
              t0s=DEFAULT_T0, convolver=None, order=None, h=None, t_half=None, t_count=None,
              tail_factor=64):
    """Fit c minimising sum |L_alpha u - c f|^2 over the sample points.

    Parameters
    ----------
    f : callable
        Test function with attribute ``n`` (a gallery function, say).
    convolver : callable, optional
        ``convolver(points) -> values`` replacing ``f * Phi_alpha``; used for
        self-consistency runs with a manufactured kernel.
    order, h, t_half, t_count : optional
        Stencil order and sampling lattice; defaults come from ``quad``.
    tail_factor : int
        Length factor of the asymptotic continuation used for |T|; 1 disables it.

    Returns
    -------
    CalibrationResult
        ``c`` is the real part of the complex least-squares fit and
        ``residual`` is ``max |L_alpha u - c f| / max |f|`` over the samples.
    """
    tol = DEFAULT_TOLERANCES if tol is None else tol
    n = f.n
    p = OperatorParams(n, alpha)
    order = quad.stencil_order if order is None else order
    if order not in STENCILS:
        raise DomainError(f"no stencil of order {order}")
    h = quad.grid_h if h is None else h
    t_half = quad.grid_t_half if t_half is None else t_half
    t_count = quad.grid_t_count if t_count is None else t_count
    if convolver is None:
        def convolver(points):
            return convolve(f, p, quad, points, tol=tol)

    start = time.perf_counter()
    layouts = [stencil_layout(n, col, t0s, h, t_half, t_count, order, alpha != 0)
               for col in columns]
    pts = [q for grid, mask, _ in layouts for q in _points(grid, mask)]
    vals = np.asarray(convolver(pts), dtype=complex)

    lu, fv, caught, pos = [], [], [], 0
    for grid, mask, targets in layouts:
        k = int(mask.sum())
        u = np.full(grid.count, np.nan, dtype=complex)
        u[mask] = vals[pos:pos + k]
        pos += k
        with warnings.catch_warnings(record=True) as rec:
            warnings.simplefilter("always", TailNotDecayedWarning)
            out = _apply(p, u, grid, order, tol, tail_factor)
        caught.extend(str(w.message) for w in rec if issubclass(w.category, TailNotDecayedWarning))
        for tgt in targets:
            coords = np.array(grid.origin) + np.array(tgt) * np.array(grid.spacing)
            z = coords[:n] + 1j * coords[n:2 * n]
            lu.append(out[tgt])
            fv.append(complex(np.asarray(f(z[None, :], np.array([coords[-1]])))[0]))
    lu, fv = np.array(lu), np.array(fv)
    if not np.all(np.isfinite(lu)):
        raise DomainError("the sampling layout left a target without a full stencil")
    norm2 = float(np.sum(np.abs(fv) ** 2))
    if norm2 < 1e-24 or np.max(np.abs(fv)) < 1e-12 * max(1.0, np.max(np.abs(lu))):
        raise IllConditionedError("f is numerically zero on the sample points")
    c = complex(np.sum(np.conj(fv) * lu) / norm2)
    resid = float(np.max(np.abs(lu - c.real * fv)) / np.max(np.abs(fv)))
    info = {"elapsed": time.perf_counter() - start, "order": order, "h": h,
            "t_half": t_half, "t_count": t_count, "tail_factor": tail_factor}
    return CalibrationResult(c.real, c.imag, resid, len(fv), len(pts), float(alpha),
                             getattr(f, "name", "custom"), tuple(dict.fromkeys(caught)), info)
