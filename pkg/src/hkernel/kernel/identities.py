"""Intermediate identities behind the kernel formula, each evaluated two ways."""

import math
import warnings
from collections import namedtuple

import numpy as np
from scipy import integrate

from ..config import DEFAULT_TOLERANCES
from ..errors import (ContourMismatchError, DomainError, QuadratureFailError,
                      SeriesMismatchError)
from ..specfun import check_alpha, gauss_2f1_interior, incomplete_beta, laguerre
from .constants import KernelConstants

__all__ = [
    "ContourResult",
    "contour_I",
    "laguerre_transform",
    "closed_rhs",
    "psi_r_alpha",
    "psi_series",
]

ContourResult = namedtuple("ContourResult", ["I", "I1", "I2", "rhs", "residual"])


def _cquad(func, a, b, **kw):
    re, e1 = integrate.quad(lambda s: func(s).real, a, b, **kw)
    im, e2 = integrate.quad(lambda s: func(s).imag, a, b, **kw)
    return complex(re, im), e1 + e2


def contour_I(n, alpha, theta, tol=None, check=True):
    """Both sides of the contour splitting of the Euler integral.

    ``I = 2 int_0^1 u^{n-alpha-1} (1 + e^{2i theta} u^2)^{-n} du`` is compared with
    ``2 e^{-i theta (n-alpha)} (I1 + I2)`` where
    ``I1 = B_{1/2}((n-alpha)/2, (n+alpha)/2) / 2`` and
    ``I2 = i 2^{-n} int_0^theta e^{-i alpha s} sec^n(s) ds``.
    """
    tol = DEFAULT_TOLERANCES if tol is None else tol
    check_alpha(n, alpha, tol.pole_guard)
    if not alpha < n:
        raise DomainError("the contour identity needs alpha < n")
    if not abs(theta) < math.pi / 2:
        raise DomainError("|theta| must be < pi/2")
    rot = np.exp(2j * theta)
    kw = dict(epsabs=1e-14, epsrel=1e-13, limit=tol.quad_limit)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        lhs, _ = _cquad(lambda u: 2.0 * (1.0 + rot * u * u) ** (-n), 0.0, 1.0,
                        weight="alg", wvar=(n - alpha - 1.0, 0.0), **kw)
        i1 = 0.5 * incomplete_beta(0.5, (n - alpha) / 2.0, (n + alpha) / 2.0)
        if theta == 0:
            i2 = 0j
        else:
            j, _ = _cquad(lambda s: np.exp(-1j * alpha * s) / math.cos(s) ** n, 0.0, theta, **kw)
            i2 = 1j * j / 2.0 ** n
    rhs = 2.0 * np.exp(-1j * theta * (n - alpha)) * (i1 + i2)
    res = abs(lhs - rhs)
    if check and res > tol.contour * max(1.0, abs(lhs)):
        raise ContourMismatchError(f"contour identity residual {res:.3e}")
    return ContourResult(lhs, i1, i2, rhs, res)


def laguerre_transform(n, k, znorm, t, eps, tol=None):
    """Left side of the Laguerre generating identity, by quadrature in lambda.

    ``int_R e^{-eps|l|} e^{i l t} L_k^{n-1}(|l||z|^2/2) e^{-|l||z|^2/4} |l|^{n-1} dl``
    with the classical (unnormalised) Laguerre polynomial
    ``L_k^{n-1} = binom(k+n-1, k) l_k^{n-1}``.  The integrand is even in l
    apart from the phase, so the integral is twice a cosine transform.
    """
    tol = DEFAULT_TOLERANCES if tol is None else tol
    if not eps > 0:
        raise DomainError("eps must be positive")
    dk = math.comb(k + n - 1, k)
    a = znorm * znorm

    def f(lam):
        return dk * math.exp(-eps * lam - lam * a / 4.0) * laguerre(k, n - 1, lam * a / 2.0) * lam ** (n - 1)

    # the integrand is a polynomial of degree k+n-1 times e^{-s l}; cut where that is negligible
    s = eps + a / 4.0
    deg = k + n - 1
    top = (40.0 + deg * max(1.0, math.log(deg + 1.0) + math.log1p(a / (2.0 * s)))) / s
    top = max(top, 60.0 / s)
    kw = dict(epsabs=0.0, epsrel=1e-13, limit=2000)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        if t == 0:
            val, err = integrate.quad(f, 0.0, top, **kw)
        else:
            val, err = integrate.quad(f, 0.0, top, weight="cos", wvar=abs(t), **kw)
    if not np.isfinite(val) or err > 1e-8 * (1.0 + abs(val)):
        raise QuadratureFailError(f"lambda quadrature error estimate {err:.3e}")
    return 2.0 * val


def closed_rhs(n, k, znorm, t, eps):
    """Right side: ``2 beta_n alpha_k Re((|z|^2 + 4it - 4eps)^k / (|z|^2 - 4it + 4eps)^{n+k})``."""
    c = KernelConstants(n)
    a = znorm * znorm
    w = (a + 4j * t - 4.0 * eps) ** k / (a - 4j * t + 4.0 * eps) ** (n + k)
    return 2.0 * c.beta_n * c.alpha_k(k) * w.real


def psi_series(n, alpha, r, theta, rel=1e-17):
    """Raw series sum_k alpha_k r^{2k+n-alpha} e^{i(2k+n) theta} / (2k+n-alpha)."""
    check_alpha(n, alpha)
    if not 0 < r < 1:
        raise DomainError("r must lie in (0, 1)")
    # terms behave like k^{n-1} r^{2k}; stop well past the point they drop below rel
    kmax = 16
    while (kmax + 1) ** (n - 1) * r ** (2 * kmax) > rel:
        kmax *= 2
    k = np.arange(kmax + 1)
    coef = np.array([(-1) ** int(j) * math.comb(int(j) + n - 1, n - 1) for j in k], dtype=float)
    terms = coef * np.exp((2 * k + n - alpha) * math.log(r)) * np.exp(1j * (2 * k + n) * theta)
    return complex(np.sum(terms / (2 * k + n - alpha)))


def psi_r_alpha(p, r, theta, tol=None, return_both=False):
    """Psi_{r,alpha}(theta) = r^{n-alpha} e^{i n theta} F_alpha(-r^2 e^{2i theta}) / (n - alpha).

    The raw series is summed as well and SeriesMismatchError is raised when
    the two disagree by more than ``tol.psi_series`` (relative to max(1, |value|)).
    """
    tol = DEFAULT_TOLERANCES if tol is None else tol
    n, alpha = p.n, p.alpha
    check_alpha(n, alpha, tol.pole_guard)
    if not 0 < r < 1:
        raise DomainError("r must lie in (0, 1)")
    b = (n - alpha) / 2.0
    f = gauss_2f1_interior((float(n), b, b + 1.0), -r * r * np.exp(2j * theta)).value
    closed = r ** (n - alpha) * np.exp(1j * n * theta) * f / (n - alpha)
    raw = psi_series(n, alpha, r, theta)
    if abs(raw - closed) > tol.psi_series * max(1.0, abs(closed)):
        raise SeriesMismatchError(f"series and 2F1 forms differ by {abs(raw - closed):.3e}")
    return (closed, raw) if return_both else closed
