"""Pointwise density of the fundamental solution Phi_alpha."""

import math

import numpy as np

from ..config import DEFAULT_TOLERANCES
from ..errors import DomainError, OriginError
from ..heisenberg import GroupPoint
from ..specfun import check_alpha
from .profile import re_psi

__all__ = [
    "polar",
    "density_closed",
    "density_hypergeometric",
    "density_closed_array",
    "density_hypergeometric_array",
    "folland_density",
]

HALF_PI = math.pi / 2


def polar(z2, t):
    """(rho, theta) with tau + 4it = rho e^{i theta}, tau = |z|^2."""
    z2 = np.asarray(z2, dtype=float)
    t = np.asarray(t, dtype=float)
    return np.hypot(z2, 4.0 * t), np.arctan2(4.0 * t, z2)


def _prefactor(n):
    return -(4.0 ** n) * math.factorial(n - 1)


def _coords(g):
    if isinstance(g, GroupPoint):
        return g.n, float(np.sum(np.abs(g.z) ** 2)), g.t
    raise TypeError("expected a GroupPoint")


def _evaluate(p, z2, t, method, global_scale, tol):
    n, alpha = p.n, p.alpha
    check_alpha(n, alpha, tol.pole_guard)
    rho, theta = polar(z2, t)
    if np.any(rho == 0):
        raise OriginError("the kernel is singular at the identity")
    flat = np.ravel(theta)
    # evaluate the angular profile once per distinct angle
    uniq, inv = np.unique(flat, return_inverse=True)
    prof = np.array([re_psi(n, alpha, float(th), method, tol) for th in uniq])
    vals = prof[inv].reshape(np.shape(theta))
    out = global_scale * _prefactor(n) * rho ** (-n) * vals
    return out if np.ndim(out) else float(out)


def density_closed_array(p, z2, t, global_scale=1.0, tol=None):
    """Closed-form density from |z|^2 and t (alpha < n).

    On the t axis (z = 0) the angle is +-pi/2 and the improper value of
    m_alpha is used; that limit exists for n = 1 or alpha = 0 only, and
    DomainError is raised otherwise.
    """
    tol = DEFAULT_TOLERANCES if tol is None else tol
    if not p.alpha < p.n:
        raise DomainError("the closed form needs alpha < n")
    return _evaluate(p, z2, t, "closed", global_scale, tol)


def density_hypergeometric_array(p, z2, t, global_scale=1.0, tol=None):
    """Hypergeometric-form density from |z|^2 and t; z = 0 raises DomainError."""
    tol = DEFAULT_TOLERANCES if tol is None else tol
    if np.any(np.asarray(z2) == 0) and np.any(np.asarray(t) != 0):
        raise DomainError("the 2F1 boundary value is singular on the t axis (z = 0)")
    return _evaluate(p, z2, t, "hypergeometric", global_scale, tol)


def density_closed(p, g, global_scale=1.0, tol=None):
    """Density of Phi_alpha at g from the closed form (alpha < n).

    ``-4^n (n-1)! rho^{-n} [B_{1/2}((n-a)/2, (n+a)/2) cos(a theta) / 2 + 2^{-n} m_a(theta)]``
    with rho = (|z|^4 + 16 t^2)^{1/2} and theta = arg(|z|^2 + 4it).
    """
    n, z2, t = _coords(g)
    if n != p.n:
        raise DomainError("point and operator dimensions differ")
    return density_closed_array(p, z2, t, global_scale, tol)


def density_hypergeometric(p, g, global_scale=1.0, tol=None):
    """Density of Phi_alpha at g from the 2F1 form.

    ``-4^n (n-1)!/(n-a) Re((|z|^2+4it)^n / rho^{2n} F_a(-(|z|^2+4it)^2 / rho^2))``.
    """
    n, z2, t = _coords(g)
    if n != p.n:
        raise DomainError("point and operator dimensions differ")
    return density_hypergeometric_array(p, z2, t, global_scale, tol)


def folland_density(n, z2, t):
    """The alpha = 0 kernel -4^{n-1} Gamma(n/2)^2 (|z|^4 + 16 t^2)^{-n/2}."""
    rho, _ = polar(z2, t)
    return -(4.0 ** (n - 1)) * math.gamma(n / 2.0) ** 2 * rho ** (-float(n))
