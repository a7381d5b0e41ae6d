"""Scalar special functions: Laguerre, Pochhammer, Gauss 2F1, incomplete Beta
and the forced-oscillation kernel m_alpha.

Only the two 2F1 regimes needed by the kernel are supported: the open unit
disk (plain power series) and the unit circle for the parameter family
``(n, b, b + 1)`` with ``b = (n - alpha) / 2``.
"""

import math
import warnings
from collections import namedtuple
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from .config import DEFAULT_TOLERANCES
from .errors import DomainError, NonConvergedError, PoleParameterError

__all__ = [
    "HypergeometricParams",
    "MAlphaParams",
    "Hyp2F1Result",
    "laguerre",
    "iter_laguerre",
    "pochhammer",
    "log_gamma_sign",
    "beta",
    "gauss_2f1_interior",
    "gauss_2f1_boundary",
    "abel_radius",
    "incomplete_beta",
    "m_alpha",
    "check_alpha",
]

Hyp2F1Result = namedtuple("Hyp2F1Result", ["value", "error", "terms"])


def _is_nonpositive_int(c):
    c = complex(c)
    return c.imag == 0 and c.real <= 0 and c.real == math.floor(c.real)


def check_alpha(n, alpha, guard=None):
    """Raise PoleParameterError when alpha sits on the excluded set {2k + n}."""
    guard = DEFAULT_TOLERANCES.pole_guard if guard is None else guard
    if n < 1 or int(n) != n:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    k = (alpha - n) / 2.0
    if k > -guard and abs(k - round(k)) * 2.0 <= guard:
        raise PoleParameterError(f"alpha={alpha!r} equals 2k+n for k={round(k)}")


@dataclass(frozen=True)
class HypergeometricParams:
    a: complex
    b: complex
    c: complex

    def __post_init__(self):
        if _is_nonpositive_int(self.c):
            raise DomainError(f"c={self.c!r} is a nonpositive integer")

    @classmethod
    def for_alpha(cls, n, alpha):
        """Parameters (n, (n-alpha)/2, (n-alpha)/2 + 1) of the kernel's 2F1."""
        check_alpha(n, alpha)
        b = (n - alpha) / 2.0
        return cls(float(n), b, b + 1.0)

    def __iter__(self):
        return iter((self.a, self.b, self.c))


@dataclass(frozen=True)
class MAlphaParams:
    n: int
    alpha: float
    theta: float

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("n must be >= 1")
        if not abs(self.theta) < math.pi / 2:
            raise DomainError(f"|theta| must be < pi/2, got {self.theta!r}")


# ---------------------------------------------------------------------------
# Laguerre polynomials, normalised so that L_k^a(0) = 1


def laguerre(k, order, x):
    """Generalised Laguerre polynomial of degree ``k`` scaled to value 1 at 0.

    Uses the three-term recurrence rewritten for the normalised polynomial
    ``l_k = L_k^a / binom(k + a, k)``::

        (k + 1 + a) l_{k+1} = (2k + 1 + a - x) l_k - k l_{k-1}

    which avoids the cancellation of the explicit factorial sum.
    """
    if k < 0 or int(k) != k:
        raise DomainError("degree must be a nonnegative integer")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if k == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 - x / (order + 1.0)
    for j in range(1, int(k)):
        prev, cur = cur, ((2 * j + 1 + order - x) * cur - j * prev) / (j + 1 + order)
    return cur if cur.ndim else float(cur)


def iter_laguerre(order, x, damp=True):
    """Yield ``l_k(x) * exp(-x/2)`` (or bare ``l_k`` if ``damp`` is false) for k = 0, 1, ...

    The damping factor is folded into the seeds, so the recurrence never sees
    the large intermediate values of the undamped polynomial.
    """
    x = np.asarray(x, dtype=float)
    seed = np.exp(-x / 2.0) if damp else np.ones_like(x)
    prev = seed
    yield prev
    cur = seed * (1.0 - x / (order + 1.0))
    yield cur
    j = 1
    while True:
        prev, cur = cur, ((2 * j + 1 + order - x) * cur - j * prev) / (j + 1 + order)
        yield cur
        j += 1


# ---------------------------------------------------------------------------
# Gamma-type helpers


def pochhammer(a, k):
    """Rising factorial (a)_k = a (a+1) ... (a+k-1); (a)_0 = 1."""
    if k < 0 or int(k) != k:
        raise DomainError("k must be a nonnegative integer")
    if k == 0:
        return 1.0
    return float(np.prod(a + np.arange(int(k), dtype=float)))


def log_gamma_sign(x):
    """Return ``(log|Gamma(x)|, sign(Gamma(x)))`` for real x off the poles."""
    if _is_nonpositive_int(x):
        raise DomainError(f"Gamma has a pole at {x!r}")
    return float(special.gammaln(x)), float(special.gammasgn(x))


def beta(a, b):
    """Complete Beta function via log-Gamma with sign tracking."""
    la, sa = log_gamma_sign(a)
    lb, sb = log_gamma_sign(b)
    lab, sab = log_gamma_sign(a + b)
    return sa * sb * sab * math.exp(la + lb - lab)


# ---------------------------------------------------------------------------
# Gauss hypergeometric function


def gauss_2f1_interior(params, omega, tol=None, max_terms=None, margin=None):
    """Sum the defining power series of 2F1(a, b, c; omega) for |omega| < 1.

    Terms are generated in vectorised blocks from the term ratio; summation
    stops once the geometric bound on the remainder drops below ``tol`` times
    the running sum.  Returns :class:`Hyp2F1Result` with the value, the error
    estimate (remainder bound plus accumulated rounding) and the term count.
    """
    t = DEFAULT_TOLERANCES
    tol = t.series_term if tol is None else tol
    max_terms = t.series_max_terms if max_terms is None else max_terms
    margin = t.disk_margin if margin is None else margin
    a, b, c = (complex(v) for v in params)
    if _is_nonpositive_int(c):
        raise DomainError(f"c={c!r} is a nonpositive integer")
    omega = complex(omega)
    if abs(omega) > 1.0 - margin:
        raise DomainError(f"|omega|={abs(omega)!r} outside the disk of radius 1-{margin}")
    if omega == 0:
        return Hyp2F1Result(1.0 + 0.0j, 0.0, 1)

    total = 0.0 + 0.0j
    abs_total = 0.0
    term = 1.0 + 0.0j
    k0 = 0
    chunk = 256
    while k0 < max_terms:
        k = np.arange(k0, k0 + chunk, dtype=float)
        ratio = (a + k) * (b + k) / ((c + k) * (k + 1.0)) * omega
        terms = term * np.concatenate(([1.0], np.cumprod(ratio[:-1])))
        partial = np.cumsum(terms) + total
        mag = np.abs(ratio)
        # remainder after term j is bounded by |t_j| r/(1-r) once ratios are below 1
        with np.errstate(divide="ignore", invalid="ignore"):
            bound = np.abs(terms) * mag / (1.0 - mag)
        ok = (mag < 1.0) & (bound <= tol * np.abs(partial))
        # ratios approach |omega| monotonically from the point where they first dip below 1
        hit = np.flatnonzero(ok)
        if hit.size:
            j = hit[0]
            total = partial[j]
            abs_total += float(np.sum(np.abs(terms[: j + 1])))
            err = float(bound[j]) + 4.0 * np.finfo(float).eps * abs_total
            return Hyp2F1Result(total, err, k0 + j + 1)
        total = partial[-1]
        abs_total += float(np.sum(np.abs(terms)))
        term = terms[-1] * ratio[-1]
        k0 += chunk
        chunk = min(chunk * 2, 1 << 16)
        if not np.isfinite(total):
            break
    raise NonConvergedError(f"2F1 series did not converge in {max_terms} terms at omega={omega}")


def abel_radius(theta):
    """Distance in h = 1 - r from r = 1 to the nearest singularity of r -> F(-r^2 e^{2i theta})."""
    return 2.0 * math.sin((math.pi / 2 - abs(theta)) / 2.0)


def _neville_at_zero(h, v):
    """Polynomial extrapolation to h = 0; returns the final value and the previous diagonal."""
    p = list(v)
    m = len(p)
    diag = [p[-1]]
    for level in range(1, m):
        for i in range(m - level):
            p[i] = (h[i + level] * p[i] - h[i] * p[i + 1]) / (h[i + level] - h[i])
        diag.append(p[m - level - 1])
    return diag[-1], diag[-2]


def _abel_boundary(params, theta, tol):
    lo, hi = tol.abel_levels
    count = hi - lo + 1
    radius = abel_radius(theta)
    # keep every sample well inside the disk of analyticity in h
    j0 = max(lo, int(math.ceil(math.log2(4.0 / radius))))
    j1 = j0 + count - 1
    if j1 > 20:
        raise NonConvergedError(
            f"Abel extrapolation needs radii closer than 2^-20 to 1 at theta={theta!r}"
        )
    hs = 2.0 ** -np.arange(j0, j1 + 1, dtype=float)
    rot = -np.exp(2j * theta)
    vals = []
    err = 0.0
    for h in hs:
        res = gauss_2f1_interior(params, (1.0 - h) ** 2 * rot)
        vals.append(res.value)
        err = max(err, res.error)
    # order from coarse to fine; extrapolate in h
    best, prev = _neville_at_zero(list(hs), vals)
    gap = abs(best - prev)
    if gap > tol.abel_consistency * max(1.0, abs(best)):
        raise NonConvergedError(
            f"Abel extrapolation inconsistent at theta={theta!r}: |delta|={gap:.3e}"
        )
    return best, gap + err


def _series_tail_over_power(a, w, m, tol):
    """(1 - w)^{-a} minus its first m Taylor terms, divided by w^m (for small |w|)."""
    term = pochhammer(a, m) / math.factorial(m) + 0.0j
    total = term
    k = m
    while abs(term) > tol * abs(total):
        term *= (a + k) / (k + 1.0) * w
        total += term
        k += 1
        if k > m + 2000:
            break
    return total


def _quiet(fn):
    """Run quadpack with its convergence warnings muted; callers report their own errors."""

    def wrapper(*args, **kw):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            return fn(*args, **kw)

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@_quiet
def _hyp_integral(n, b, theta, tol):
    """F(n, b, b+1; -e^{2i theta}) from the (regularised) Euler integral.

    For b > 0 this is b * int_0^1 s^{b-1} (1 + e^{2i theta} s)^{-n} ds.  For
    b <= 0 the first m Taylor terms of the integrand are subtracted, with
    m the smallest integer making b + m > 0, and added back analytically.
    """
    omega = -np.exp(2j * theta)
    m = 0 if b > 0 else int(math.floor(-b)) + 1
    head = 0.0 + 0.0j
    for k in range(m):
        head += pochhammer(n, k) * omega ** k / (math.factorial(k) * (b + k))
    a = float(n)

    def g(s):
        w = omega * s
        if m == 0:
            return (1.0 - w) ** (-a)
        if abs(w) < 0.5:
            return _series_tail_over_power(a, w, m, 1e-17) * omega ** m
        poly = sum(pochhammer(a, k) * w ** k / math.factorial(k) for k in range(m))
        return ((1.0 - w) ** (-a) - poly) / s ** m

    expo = b + m - 1.0
    # the integrand peaks near s = 1 with width ~ |1 + e^{2i theta}|^2 as theta -> +-pi/2
    gap = abs(1.0 + np.exp(2j * theta)) ** 2
    split = 0.5
    kw = dict(epsabs=tol.quad_abs * 1e-2, epsrel=tol.quad_rel, limit=tol.quad_limit)
    re, e1 = integrate.quad(lambda s: g(s).real, 0.0, split, weight="alg", wvar=(expo, 0.0), **kw)
    im, e2 = integrate.quad(lambda s: g(s).imag, 0.0, split, weight="alg", wvar=(expo, 0.0), **kw)
    pts = [p for p in 1.0 - gap * 4.0 ** np.arange(0, 30) if split < p < 1.0]
    for part, sink in ((np.real, 0), (np.imag, 1)):
        v, e = integrate.quad(lambda s: part(g(s)) * s ** expo, split, 1.0, points=pts or None, **kw)
        if sink:
            im, e2 = im + v, e2 + e
        else:
            re, e1 = re + v, e1 + e
    value = b * (head + complex(re, im))
    return value, abs(b) * (e1 + e2)


def gauss_2f1_boundary(n, alpha, theta, method="auto", tol=None, return_error=False):
    """F_alpha(-e^{2i theta}) = 2F1(n, (n-alpha)/2, (n-alpha)/2 + 1; -e^{2i theta}).

    Methods
    -------
    ``"integral"``
        Euler integral representation; requires alpha < n.
    ``"abel"``
        Abel summation: interior series at radii r_j = 1 - 2^-j followed by
        polynomial (Richardson) extrapolation in 1 - r.
    ``"regularized"``
        Euler integral with the first Taylor terms subtracted; valid for all
        admissible alpha.
    ``"auto"``
        ``integral`` when alpha < n, otherwise ``abel`` unless theta is so close
        to +-pi/2 that the Abel radii would need r closer than 2^-20 to 1, in
        which case ``regularized`` is used.
    """
    tol = DEFAULT_TOLERANCES if tol is None else tol
    check_alpha(n, alpha, tol.pole_guard)
    if not abs(theta) < math.pi / 2:
        raise DomainError(f"|theta| must be < pi/2, got {theta!r}")
    b = (n - alpha) / 2.0
    params = HypergeometricParams(float(n), b, b + 1.0)
    if method == "auto":
        if alpha < n:
            method = "integral"
        else:
            j0 = math.ceil(math.log2(4.0 / abel_radius(theta)))
            span = tol.abel_levels[1] - tol.abel_levels[0]
            method = "abel" if max(j0, tol.abel_levels[0]) + span <= 20 else "regularized"
    if method == "integral":
        if not alpha < n:
            raise DomainError("the Euler integral needs alpha < n")
        value, err = _hyp_integral(n, b, theta, tol)
    elif method == "regularized":
        value, err = _hyp_integral(n, b, theta, tol)
    elif method == "abel":
        value, err = _abel_boundary(params, theta, tol)
    else:
        raise ValueError(f"unknown method {method!r}")
    return (value, err) if return_error else value


# ---------------------------------------------------------------------------
# Incomplete Beta


def _betacf(a, b, x, eps=1e-16, max_iter=20000):
    """Continued fraction for the incomplete Beta function (modified Lentz)."""
    tiny = 1e-300
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    d = tiny if abs(d) < tiny else d
    d = 1.0 / d
    h = d
    for m in range(1, max_iter + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        d = tiny if abs(d) < tiny else d
        c = 1.0 + aa / c
        c = tiny if abs(c) < tiny else c
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = tiny if abs(d) < tiny else d
        c = 1.0 + aa / c
        c = tiny if abs(c) < tiny else c
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            return h
    raise NonConvergedError("incomplete Beta continued fraction did not converge")


def _beta_series(x, a, b):
    # x^a sum_k (1-b)_k x^k / (k! (a+k)); converges for 0 <= x < 1 and any b
    total = 1.0 / a
    term = 1.0
    k = 0
    while True:
        term *= (k + 1.0 - b) / (k + 1.0) * x
        k += 1
        add = term / (a + k)
        total += add
        if abs(add) <= 1e-17 * abs(total) or k > 100_000:
            break
    return x ** a * total


def incomplete_beta(x, a, b):
    """B_x(a, b) = int_0^x v^{a-1} (1-v)^{b-1} dv.

    For b <= 0 the integral is still finite when x < 1 and is evaluated by its
    power series; the complete integral (x = 1) then raises DomainError.
    """
    if not a > 0:
        raise DomainError(f"incomplete_beta needs a > 0, got {a!r}")
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x must lie in [0, 1], got {x!r}")
    if x == 0.0:
        return 0.0
    if b <= 0:
        if x == 1.0:
            raise DomainError(f"B(a, b) diverges for b={b!r} <= 0")
        return _beta_series(x, a, b)
    if x == 1.0:
        return beta(a, b)
    front = math.exp(a * math.log(x) + b * math.log1p(-x))
    if x <= (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return beta(a, b) - front * _betacf(b, a, 1.0 - x) / b


# ---------------------------------------------------------------------------
# Forced-oscillation kernel


@_quiet
def m_alpha(n, alpha, theta, allow_endpoint=False, tol=None):
    """m_alpha(theta) = int_0^theta sin(alpha (s - theta)) / cos(s)^n ds.

    The particular solution of y'' + alpha^2 y + alpha sec^n(theta) = 0 with
    y(0) = y'(0) = 0.  With ``allow_endpoint`` the improper value at
    theta = +-pi/2 is returned when it exists (n = 1, or alpha = 0).
    """
    tol = DEFAULT_TOLERANCES if tol is None else tol
    if np.ndim(theta):
        return np.array([m_alpha(n, alpha, float(th), allow_endpoint, tol)
                         for th in np.ravel(theta)]).reshape(np.shape(theta))
    half = math.pi / 2
    if abs(theta) > half or (abs(theta) == half and not allow_endpoint):
        raise DomainError(f"|theta| must be < pi/2, got {theta!r}")
    if alpha == 0 or theta == 0:
        return 0.0
    if abs(theta) == half and n > 1:
        raise DomainError(f"m_alpha diverges at theta=+-pi/2 for n={n}")
    th = abs(theta)
    gap = half - th

    # m is even in theta; integrate over v = theta - s so the sensitive end sits at v = 0
    def f(v):
        c = math.sin(gap + v)
        return -math.sin(alpha * v) / c ** n if c > 0 else -alpha

    # the integrand peaks at v ~ gap when theta is close to pi/2
    pts = [p for p in gap * 4.0 ** np.arange(0, 40) if 0.0 < p < th]
    val, _ = integrate.quad(f, 0.0, th, epsabs=tol.quad_abs * 1e-3, epsrel=tol.quad_rel,
                            limit=tol.quad_limit, points=pts or None)
    return val
