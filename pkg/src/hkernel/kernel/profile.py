"""The angular profile Re Psi_alpha(theta) of the kernel and a tabulated
version for fast bulk evaluation.

Writing tau + 4it = rho e^{i theta} with tau = |z|^2, the density of Phi_alpha
is ``-4^n (n-1)! rho^{-n} Re Psi_alpha(theta)`` where

    Re Psi_alpha(theta) = Re(e^{i n theta} F_alpha(-e^{2i theta})) / (n - alpha)

and, for alpha < n,

    Re Psi_alpha(theta) = B_{1/2}((n-alpha)/2, (n+alpha)/2) cos(alpha theta) / 2
                          + 2^{-n} m_alpha(theta).
"""

import math
from dataclasses import dataclass, field
from bisect import bisect_right
from functools import cached_property, lru_cache

import numpy as np

from ..config import DEFAULT_TOLERANCES
from ..errors import DomainError, ProfileInvalidError
from ..specfun import check_alpha, gauss_2f1_boundary, incomplete_beta, m_alpha

__all__ = ["re_psi", "KernelProfile", "kernel_profile", "AngularProfile"]

HALF_PI = math.pi / 2


def _re_psi_closed(n, alpha, theta, tol):
    a, b = (n - alpha) / 2.0, (n + alpha) / 2.0
    head = 0.5 * incomplete_beta(0.5, a, b) * math.cos(alpha * theta)
    return head + 2.0 ** -n * m_alpha(n, alpha, theta, allow_endpoint=True, tol=tol)


def _re_psi_hyp(n, alpha, theta, tol, hyp_method="auto"):
    f = gauss_2f1_boundary(n, alpha, theta, method=hyp_method, tol=tol)
    return (np.exp(1j * n * theta) * f).real / (n - alpha)


def re_psi(n, alpha, theta, method="auto", tol=None, hyp_method="auto"):
    """Re Psi_alpha(theta) for |theta| <= pi/2.

    ``method`` is ``"closed"`` (needs alpha < n), ``"hypergeometric"`` or
    ``"auto"`` (closed when alpha < n).  On the axis |theta| = pi/2 only the
    closed path is defined, and only where m_alpha has a finite limit.
    ``hyp_method`` is passed to :func:`gauss_2f1_boundary`.
    """
    tol = DEFAULT_TOLERANCES if tol is None else tol
    check_alpha(n, alpha, tol.pole_guard)
    if np.ndim(theta):
        return np.array([re_psi(n, alpha, float(th), method, tol, hyp_method) for th in np.ravel(theta)]
                        ).reshape(np.shape(theta))
    if abs(theta) > HALF_PI:
        raise DomainError(f"|theta| must be <= pi/2, got {theta!r}")
    if method == "auto":
        method = "closed" if alpha < n else "hypergeometric"
    if method == "closed":
        if not alpha < n:
            raise DomainError("the closed form needs alpha < n")
        return _re_psi_closed(n, alpha, theta, tol)
    if method == "hypergeometric":
        return _re_psi_hyp(n, alpha, theta, tol, hyp_method)
    raise ValueError(f"unknown method {method!r}")


def _cheb_nodes(deg):
    return np.cos(math.pi * (np.arange(deg + 1) + 0.5) / (deg + 1))


@dataclass(eq=False)
class KernelProfile:
    """Piecewise Chebyshev table of Re Psi_alpha on [0, pi/2].

    Panels are uniform on [0, pi/4] and geometric in u = pi/2 - theta below,
    which resolves the u log u (n = 1) or log u (n >= 2) behaviour at the
    axis.  Below ``u_min`` the value at ``u_min`` is held; the region has
    negligible measure.  The profile is even, so |theta| is used.
    """

    n: int
    alpha: float
    edges: np.ndarray
    coeffs: np.ndarray
    error: float
    axis_value: float = field(default=float("nan"))

    def __call__(self, theta):
        th = np.abs(np.asarray(theta, dtype=float))
        th = np.minimum(th, self.edges[-1])
        idx = np.clip(np.searchsorted(self.edges, th, side="right") - 1, 0, len(self.coeffs) - 1)
        a, b = self.edges[idx], self.edges[idx + 1]
        x = (2.0 * th - (a + b)) / (b - a)
        c = self.coeffs[idx]
        # Clenshaw
        b1 = np.zeros_like(x)
        b2 = np.zeros_like(x)
        for j in range(c.shape[-1] - 1, 0, -1):
            b1, b2 = 2.0 * x * b1 - b2 + c[..., j], b1
        out = x * b1 - b2 + c[..., 0]
        return out if out.ndim else float(out)

    def scalar(self, theta):
        """Scalar evaluation without numpy overhead, for adaptive quadrature callbacks."""
        edges, coeffs = self._lists
        th = min(abs(theta), edges[-1])
        i = min(max(bisect_right(edges, th) - 1, 0), len(coeffs) - 1)
        a, b = edges[i], edges[i + 1]
        x = (2.0 * th - (a + b)) / (b - a)
        c = coeffs[i]
        b1 = b2 = 0.0
        for j in range(len(c) - 1, 0, -1):
            b1, b2 = 2.0 * x * b1 - b2 + c[j], b1
        return x * b1 - b2 + c[0]

    @cached_property
    def _lists(self):
        return self.edges.tolist(), self.coeffs.tolist()


def _build_profile(n, alpha, deg=16, uniform=4, u_min=None, tol=None):
    tol = DEFAULT_TOLERANCES if tol is None else tol
    if u_min is None:
        # past this the n >= 2 profile is too singular to tabulate usefully
        u_min = 1e-11 if n == 1 else 1e-9
    edges = list(np.linspace(0.0, math.pi / 4, uniform + 1))
    u = math.pi / 4
    while u > u_min:
        u /= 2.0
        edges.append(HALF_PI - u)
    edges = np.array(edges)
    nodes = _cheb_nodes(deg)
    coeffs = []
    for a, b in zip(edges[:-1], edges[1:]):
        th = 0.5 * (a + b) + 0.5 * (b - a) * nodes
        vals = re_psi(n, alpha, th, tol=tol, hyp_method="regularized")
        coeffs.append(np.polynomial.chebyshev.chebfit(nodes, vals, deg))
    prof = KernelProfile(n, alpha, edges, np.array(coeffs), 0.0)
    # a posteriori check at panel midpoints between Chebyshev nodes
    probe = 0.5 * (edges[:-1] + edges[1:]) + 0.37 * np.diff(edges) / (deg + 1)
    direct = re_psi(n, alpha, probe, tol=tol, hyp_method="regularized")
    err = float(np.max(np.abs(prof(probe) - direct)) / max(1.0, np.max(np.abs(direct))))
    axis = float("nan")
    if n == 1 or alpha == 0:
        axis = re_psi(n, alpha, HALF_PI, method="closed", tol=tol) if alpha < n else float("nan")
    return KernelProfile(n, alpha, edges, np.array(coeffs), err, axis)


@lru_cache(maxsize=16)
def kernel_profile(n, alpha):
    """Cached :class:`KernelProfile` for (n, alpha)."""
    check_alpha(n, alpha)
    return _build_profile(n, float(alpha))


@dataclass(frozen=True, eq=False)
class AngularProfile:
    """A test profile g(theta) on [-pi/2, pi/2] for the angular pairing.

    Admissible profiles have their first n-2 derivatives vanishing at
    +-pi/2; :meth:`check` tests the equivalent decay |g| = O(delta^{n-1}) at
    distance delta from the endpoints.
    """

    func: object
    n: int

    def __call__(self, theta):
        return self.func(theta)

    def check(self, rel=1e-10):
        probe = np.linspace(-HALF_PI, HALF_PI, 257)
        vals = np.asarray(self.func(probe), dtype=float)
        if not np.all(np.isfinite(vals)):
            raise ProfileInvalidError("profile is not finite on [-pi/2, pi/2]")
        scale = max(float(np.max(np.abs(vals))), 1e-300)
        if self.n < 2:
            return True
        deltas = 0.1 * 2.0 ** -np.arange(6)
        for sgn in (-1.0, 1.0):
            end = float(self.func(np.array([sgn * HALF_PI]))[0])
            if abs(end) > rel * scale:
                raise ProfileInvalidError(f"profile does not vanish at {sgn:+.0f}pi/2")
            g = np.abs(np.asarray(self.func(sgn * (HALF_PI - deltas)), dtype=float))
            bound = 4.0 * g[0] * (deltas / deltas[0]) ** (self.n - 1) + rel * scale
            if np.any(g > bound):
                raise ProfileInvalidError(
                    f"profile decays slower than delta^{self.n - 1} at {sgn:+.0f}pi/2")
        return True
