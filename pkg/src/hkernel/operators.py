"""Finite-difference and Fourier realisations of X_j, Y_j, T, L, |T| and
L_alpha = L + alpha |T| on sampled fields over H_n.

Axis order of every sampled array is ``(x_1, ..., x_n, y_1, ..., y_n, t)``.
Points where an operator cannot be evaluated (the stencil boundary layer,
or anything downstream of it) hold NaN; ``SampledField.valid`` is the mask of
finite entries.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_QUADRATURE, DEFAULT_TOLERANCES
from .errors import DomainError, GridTooSmallError, TailNotDecayedWarning
from .specfun import check_alpha

__all__ = [
    "Grid",
    "SampledField",
    "OperatorParams",
    "sample",
    "apply_vector_field",
    "apply_L",
    "apply_absT",
    "apply_L_alpha",
    "STENCILS",
]

# central difference weights, offsets -m..m
STENCILS = {
    2: (np.array([-0.5, 0.0, 0.5]), np.array([1.0, -2.0, 1.0])),
    4: (np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0,
        np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0),
    6: (np.array([-1 / 60, 3 / 20, -3 / 4, 0.0, 3 / 4, -3 / 20, 1 / 60]),
        np.array([1 / 90, -3 / 20, 3 / 2, -49 / 18, 3 / 2, -3 / 20, 1 / 90])),
}


@dataclass(frozen=True)
class Grid:
    """Uniform rectangular grid over (x_1..x_n, y_1..y_n, t)."""

    n: int
    origin: tuple
    spacing: tuple
    count: tuple

    def __post_init__(self):
        d = 2 * self.n + 1
        for name in ("origin", "spacing", "count"):
            val = tuple(getattr(self, name))
            if len(val) != d:
                raise DomainError(f"{name} needs {d} entries, got {len(val)}")
            object.__setattr__(self, name, val)
        if any(h <= 0 for h in self.spacing):
            raise DomainError("grid spacing must be positive")
        if self.count[-1] % 2:
            raise DomainError("the t axis needs an even number of points")

    @classmethod
    def symmetric(cls, n=1, xy_half=6.0, h=0.125, t_half=8.0, t_count=128):
        """x_j, y_j in [-xy_half, xy_half] with spacing h; t in [-t_half, t_half)."""
        m = int(round(2 * xy_half / h)) + 1
        ht = 2.0 * t_half / t_count
        return cls(n, (-xy_half,) * (2 * n) + (-t_half,), (h,) * (2 * n) + (ht,),
                   (m,) * (2 * n) + (t_count,))

    @classmethod
    def default(cls, n=1, quad=DEFAULT_QUADRATURE):
        return cls.symmetric(n, 6.0, quad.grid_h, quad.grid_t_half, quad.grid_t_count)

    @property
    def shape(self):
        return self.count

    def axis(self, i):
        return self.origin[i] + self.spacing[i] * np.arange(self.count[i])

    def coords(self):
        """Sparse (broadcastable) coordinate arrays x_1..x_n, y_1..y_n, t."""
        d = 2 * self.n + 1
        out = []
        for i in range(d):
            shape = [1] * d
            shape[i] = self.count[i]
            out.append(self.axis(i).reshape(shape))
        return out


@dataclass(frozen=True, eq=False)
class SampledField:
    values: np.ndarray
    grid: Grid

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.shape != tuple(self.grid.count):
            raise DomainError(f"values shape {v.shape} does not match grid {self.grid.count}")
        object.__setattr__(self, "values", v)

    @property
    def valid(self):
        return np.isfinite(self.values)

    def interior_max(self, other=None):
        """Max |values - other| over points valid in both."""
        diff = self.values if other is None else self.values - np.asarray(other)
        mask = np.isfinite(diff)
        return float(np.max(np.abs(diff[mask]), initial=0.0))


@dataclass(frozen=True)
class OperatorParams:
    n: int
    alpha: float = 0.0

    def __post_init__(self):
        check_alpha(self.n, self.alpha)


def sample(f, grid):
    """Evaluate ``f(z, t)`` (``z`` of shape (..., n)) on every grid point."""
    c = grid.coords()
    n = grid.n
    shape = tuple(grid.count)
    z = np.empty(shape + (n,), dtype=complex)
    for j in range(n):
        z[..., j] = np.broadcast_to(c[j] + 1j * c[n + j], shape)
    t = np.broadcast_to(c[-1], shape)
    return SampledField(np.asarray(f(z, t)), grid)


def _diff(u, axis, h, deriv, order):
    w = STENCILS[order][deriv - 1]
    m = len(w) // 2
    size = u.shape[axis]
    if size < 2 * m + 1:
        raise GridTooSmallError(f"axis {axis} has {size} points; stencil needs {2 * m + 1}")
    out = np.full(u.shape, np.nan, dtype=np.result_type(u, float))
    core = [slice(None)] * u.ndim
    core[axis] = slice(m, size - m)
    acc = None
    for i, c in enumerate(w):
        if c == 0.0:
            continue
        sl = [slice(None)] * u.ndim
        sl[axis] = slice(i, size - 2 * m + i)
        term = c * u[tuple(sl)]
        acc = term if acc is None else acc + term
    out[tuple(core)] = acc / h ** deriv
    return out


def _check_order(order):
    if order not in STENCILS:
        raise DomainError(f"stencil order must be one of {sorted(STENCILS)}")


def apply_vector_field(which, f, order=2):
    """Apply X_j, Y_j (``"X1"``, ``"Y2"``, ...) or T to a sampled field.

    X_j = d/dx_j - (y_j/2) d/dt and Y_j = d/dy_j + (x_j/2) d/dt.
    """
    _check_order(order)
    g = f.grid
    n = g.n
    c = g.coords()
    u = f.values
    if which == "T":
        return SampledField(_diff(u, 2 * n, g.spacing[-1], 1, order), g)
    kind, idx = which[:1], which[1:]
    if kind not in ("X", "Y") or not idx.isdigit() or not 1 <= int(idx) <= n:
        raise DomainError(f"unknown vector field {which!r} for n={n}")
    j = int(idx) - 1
    ut = _diff(u, 2 * n, g.spacing[-1], 1, order)
    if kind == "X":
        out = _diff(u, j, g.spacing[j], 1, order) - 0.5 * c[n + j] * ut
    else:
        out = _diff(u, n + j, g.spacing[n + j], 1, order) + 0.5 * c[j] * ut
    return SampledField(out, g)


def apply_L(f, order=2):
    """Sublaplacian L = Laplacian + |z|^2 T^2 / 4 + T R with R = sum x_j d/dy_j - y_j d/dx_j."""
    _check_order(order)
    g = f.grid
    n = g.n
    c = g.coords()
    u = f.values
    ht = g.spacing[-1]
    out = _diff(u, 2 * n, ht, 2, order) * (0.25 * sum(c[j] ** 2 + c[n + j] ** 2 for j in range(n)))
    ut = _diff(u, 2 * n, ht, 1, order)
    for j in range(n):
        out = out + _diff(u, j, g.spacing[j], 2, order) + _diff(u, n + j, g.spacing[n + j], 2, order)
        out = out + c[j] * _diff(ut, n + j, g.spacing[n + j], 1, order)
        out = out - c[n + j] * _diff(ut, j, g.spacing[j], 1, order)
    return SampledField(out, g)


def _tail_check(u, tol):
    # the FFT treats t as periodic: warn when the field neither decays nor wraps smoothly
    peak = np.max(np.abs(u), initial=0.0)
    if peak == 0.0:
        return
    ends = max(np.max(np.abs(u[..., 0])), np.max(np.abs(u[..., -1])))
    if ends <= tol.tail * peak:
        return
    wrap = np.max(np.abs(u[..., 0] - u[..., -1]))
    step = np.max(np.abs(np.diff(u, axis=-1)))
    if wrap > 2.0 * step:
        warnings.warn("field does not decay at the t boundary; |T| sees a periodic jump",
                      TailNotDecayedWarning, stacklevel=3)


def apply_absT(f, tol=DEFAULT_TOLERANCES):
    """|T| as the Fourier multiplier |lambda| in the central variable.

    Only t-lines that are valid end to end are transformed; the rest are NaN.
    The t axis is treated as periodic, which is exact for frequencies on the
    lattice 2 pi m / (t-extent) and otherwise needs decay at the ends.
    """
    g = f.grid
    u = f.values
    lines = np.all(np.isfinite(u), axis=-1)
    out = np.full(u.shape, np.nan, dtype=complex)
    if np.any(lines):
        good = u[lines]
        _tail_check(good, tol)
        lam = np.abs(2.0 * math.pi * np.fft.fftfreq(g.count[-1], d=g.spacing[-1]))
        out[lines] = np.fft.ifft(np.fft.fft(good, axis=-1) * lam, axis=-1)
    if not np.iscomplexobj(u):
        out = out.real
    return SampledField(out, g)


def apply_L_alpha(p, f, order=2, tol=DEFAULT_TOLERANCES):
    """L_alpha = L + alpha |T|."""
    if p.n != f.grid.n:
        raise DomainError("operator and field dimensions differ")
    lf = apply_L(f, order)
    if p.alpha == 0:
        return lf
    return SampledField(lf.values + p.alpha * apply_absT(f, tol).values, f.grid)
