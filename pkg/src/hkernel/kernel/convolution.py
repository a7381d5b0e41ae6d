"""Group convolution u = f * Phi_alpha, u(g) = int f(g h^{-1}) Phi_alpha(h) dh.

The kernel is split with a smooth cut-off eta(rho) (1 for rho < r1, 0 for
rho > r2, C-infinity in between):

* near part: h runs over polar nodes (rho, theta, xi) around the identity, where
  the rho^{-n} singularity is absorbed by the Jacobian; f is evaluated at g h^{-1}.
* far part: after substituting k = g h^{-1}, a tensor Gauss-Legendre rule over
  the support box of f against the smooth kernel (1 - eta) Phi(k^{-1} g).

The far part is a plain loop over nodes and is compiled with numba.
"""

import math

import numpy as np
from numba import njit
from scipy.interpolate import RegularGridInterpolator

from ..config import DEFAULT_QUADRATURE, DEFAULT_TOLERANCES
from ..errors import QuadratureFailError
from ..heisenberg import GroupPoint, sphere_rule
from ..operators import SampledField
from ..specfun import check_alpha
from .constants import KernelConstants
from .pairing import _radii, _theta_rule, gl_panels
from .profile import kernel_profile

__all__ = ["convolve", "cutoff", "field_from_samples"]


def _bump(x):
    with np.errstate(divide="ignore", over="ignore"):
        return np.where(x > 0, np.exp(-1.0 / np.where(x > 0, x, 1.0)), 0.0)


def cutoff(rho, r1, r2):
    """Smooth eta(rho): 1 on [0, r1], 0 on [r2, inf)."""
    s = np.clip((np.asarray(rho, dtype=float) - r1) / (r2 - r1), 0.0, 1.0)
    a, b = _bump(s), _bump(1.0 - s)
    return 1.0 - a / (a + b)


@njit(cache=True)
def _far_sum(gx, gy, gt, kx, ky, kt, wre, wim, n, edges, coeffs, r1, r2, pref):
    acc_re = 0.0
    acc_im = 0.0
    npan = coeffs.shape[0]
    deg = coeffs.shape[1]
    top = edges[-1]
    for i in range(kt.shape[0]):
        z2 = 0.0
        tw = 0.0
        for j in range(n):
            dx = gx[j] - kx[i, j]
            dy = gy[j] - ky[i, j]
            z2 += dx * dx + dy * dy
            tw += kx[i, j] * gy[j] - ky[i, j] * gx[j]
        qt = gt - kt[i] - 0.5 * tw
        rho = math.sqrt(z2 * z2 + 16.0 * qt * qt)
        if rho <= r1:
            continue
        w = 1.0
        if rho < r2:
            s = (rho - r1) / (r2 - r1)
            a = math.exp(-1.0 / s)
            b = math.exp(-1.0 / (1.0 - s)) if s < 1.0 else 0.0
            w = a / (a + b)
        th = abs(math.atan2(4.0 * qt, z2))
        if th > top:
            th = top
        p = np.searchsorted(edges, th, side="right") - 1
        if p < 0:
            p = 0
        if p > npan - 1:
            p = npan - 1
        lo = edges[p]
        hi = edges[p + 1]
        x = (2.0 * th - (lo + hi)) / (hi - lo)
        b1 = 0.0
        b2 = 0.0
        for j in range(deg - 1, 0, -1):
            tmp = 2.0 * x * b1 - b2 + coeffs[p, j]
            b2 = b1
            b1 = tmp
        psi = x * b1 - b2 + coeffs[p, 0]
        val = pref * psi * w / rho ** n
        acc_re += wre[i] * val
        acc_im += wim[i] * val
    return acc_re, acc_im


def field_from_samples(field):
    """Wrap a SampledField as a callable by cubic interpolation (zero outside the grid)."""
    g = field.grid
    n = g.n
    axes = [g.axis(i) for i in range(2 * n + 1)]
    vals = np.nan_to_num(field.values)
    ip_re = RegularGridInterpolator(axes, vals.real, method="cubic", bounds_error=False, fill_value=0.0)
    ip_im = None
    if np.iscomplexobj(vals):
        ip_im = RegularGridInterpolator(axes, vals.imag, method="cubic", bounds_error=False,
                                        fill_value=0.0)

    def f(z, t):
        z = np.asarray(z)
        t = np.broadcast_to(t, z.shape[:-1])
        pts = np.concatenate([z.real, z.imag, t[..., None]], axis=-1)
        out = ip_re(pts.reshape(-1, 2 * n + 1)).reshape(t.shape)
        if ip_im is not None:
            out = out + 1j * ip_im(pts.reshape(-1, 2 * n + 1)).reshape(t.shape)
        return out

    f.n = n
    f.z_radius = max(abs(g.origin[0]), abs(g.origin[0] + g.spacing[0] * (g.count[0] - 1)))
    f.t_radius = max(abs(g.origin[-1]), abs(g.origin[-1] + g.spacing[-1] * (g.count[-1] - 1)))
    return f


def _near_rule(n, quad, prof, r1, r2, beta_hat):
    rho, wr = gl_panels(0.0, r2, quad.conv_rho_nodes, quad.conv_rho_panels)
    th, wt = _theta_rule(quad.conv_theta_nodes, quad.conv_theta_panels)
    sub = quad.with_updates(sphere_points=quad.conv_sphere_points)
    xi, wx = sphere_rule(n, sub)
    R, TH = np.meshgrid(rho, th, indexing="ij")
    c = np.cos(TH)
    w2 = (wr[:, None] * wt[None, :]) * cutoff(R, r1, r2) * (-beta_hat) * prof(TH) * c ** (n - 1)
    mag = np.sqrt(R * c).ravel()
    hz = mag[:, None, None] * xi[None, :, :]
    ht = np.repeat((R * np.sin(TH) / 4.0).ravel(), len(wx))
    w = (w2.ravel()[:, None] * wx[None, :]).ravel()
    keep = w != 0
    return hz.reshape(-1, n)[keep], ht[keep], w[keep]


def _far_rule(f, n, quad):
    zr, tr = _radii(f)
    pz = max(1, math.ceil(quad.conv_box_panels * zr / 6.0))
    pt = max(1, math.ceil(quad.conv_t_panels * tr / 6.0))
    xs, wxs = gl_panels(-zr, zr, quad.conv_box_nodes, pz)
    ts, wts = gl_panels(-tr, tr, quad.conv_box_nodes, pt)
    axes = [xs] * (2 * n) + [ts]
    weights = [wxs] * (2 * n) + [wts]
    mesh = np.meshgrid(*axes, indexing="ij")
    wmesh = np.ones_like(mesh[0])
    for i, w in enumerate(weights):
        shape = [1] * (2 * n + 1)
        shape[i] = len(w)
        wmesh = wmesh * w.reshape(shape)
    kx = np.stack([m.ravel() for m in mesh[:n]], axis=-1)
    ky = np.stack([m.ravel() for m in mesh[n:2 * n]], axis=-1)
    kt = mesh[-1].ravel()
    fv = np.asarray(f(kx + 1j * ky, kt), dtype=complex) * wmesh.ravel()
    keep = np.abs(fv) > 1e-17 * np.max(np.abs(fv))
    return (np.ascontiguousarray(kx[keep]), np.ascontiguousarray(ky[keep]), kt[keep].copy(),
            fv[keep].real.copy(), fv[keep].imag.copy())


def convolve(f, p, quad=DEFAULT_QUADRATURE, out_points=(), global_scale=1.0, tol=None):
    """Values of (f * Phi_alpha)(g) at each GroupPoint in ``out_points``.

    ``f`` is a callable field (see :mod:`hkernel.kernel.pairing`) or a
    SampledField, which is interpolated.  For U(n)-invariant callables the
    result depends on (|z|, t) only and repeated radii are evaluated once; a
    declared t-parity further folds t onto t >= 0.
    """
    tol = DEFAULT_TOLERANCES if tol is None else tol
    n, alpha = p.n, p.alpha
    check_alpha(n, alpha, tol.pole_guard)
    if isinstance(f, SampledField):
        f = field_from_samples(f)
    pts = list(out_points)
    if not pts:
        return np.zeros(0)
    for g in pts:
        if not isinstance(g, GroupPoint) or g.n != n:
            raise QuadratureFailError("output points must be GroupPoints of dimension n")
    prof = kernel_profile(n, float(alpha))
    const = KernelConstants(n)
    r1, r2 = quad.conv_r1, quad.conv_r2
    hz, ht, wn = _near_rule(n, quad, prof, r1, r2, const.beta_hat)
    kx, ky, kt, wre, wim = _far_rule(f, n, quad)
    pref = -(4.0 ** n) * math.factorial(n - 1)

    invariant = getattr(f, "u_invariant", False)
    # for invariant f of definite t-parity, u(z, -t) = +-u(z, t)
    parity = getattr(f, "t_parity", "none") if invariant else "none"
    cache = {}
    out = np.empty(len(pts), dtype=complex)
    for i, g in enumerate(pts):
        if invariant:
            z = np.zeros(n, dtype=complex)
            z[0] = np.linalg.norm(g.z)
            gt, sign = g.t, 1.0
            if parity in ("even", "odd") and gt < 0:
                gt = -gt
                sign = 1.0 if parity == "even" else -1.0
            key = (float(z[0].real), gt)
        else:
            z = np.asarray(g.z)
            key = None
        if key is not None and key in cache:
            out[i] = sign * cache[key]
            continue
        # g h^{-1} = (z - w, t - s - Im(conj(z) . w) / 2)
        qz = z[None, :] - hz
        tq = gt if key is not None else g.t
        qt = tq - ht - 0.5 * np.sum(np.imag(np.conj(z)[None, :] * hz), axis=-1)
        near = np.sum(wn * f(qz, qt))
        fr, fi = _far_sum(z.real.copy(), z.imag.copy(), tq, kx, ky, kt, wre, wim, n,
                          prof.edges, prof.coeffs, r1, r2, pref)
        val = global_scale * (near + complex(fr, fi))
        if not np.isfinite(val):
            raise QuadratureFailError("convolution produced a non-finite value")
        if key is not None:
            cache[key] = val
            val = sign * val
        out[i] = val
    if np.all(out.imag == 0):
        return out.real
    return out
