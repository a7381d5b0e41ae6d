"""The pairing <Phi_alpha, f> by three independent routes, and the regional
integrability report.

Test functions are callables ``f(z, t)`` taking ``z`` of shape (..., n) and
broadcastable ``t``.  Optional attributes used when present:

``n``            dimension (otherwise taken from the operator parameters),
``u_invariant``  f depends on |z| only, so sphere averages are skipped,
``z_radius``     |z| beyond which f is negligible (default 8),
``t_radius``     |t| beyond which f is negligible (default 8).

All routes return ``<Phi_alpha, f>`` (the kernel
density integrated against f), scaled by ``global_scale``.
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from ..config import DEFAULT_QUADRATURE, DEFAULT_TOLERANCES
from ..errors import QuadratureFailError, TruncationDominantError
from ..heisenberg import average_A, sphere_area
from ..specfun import check_alpha
from .constants import KernelConstants
from .profile import AngularProfile, kernel_profile, re_psi

__all__ = [
    "PairingResult",
    "sphere_average",
    "pair_spatial",
    "pair_angular",
    "pair_spectral",
    "integrability_check",
    "gl_panels",
]

HALF_PI = math.pi / 2


@dataclass(frozen=True)
class PairingResult:
    value: float
    error: float
    info: dict = field(default_factory=dict)

    def __float__(self):
        return float(self.value)


def gl_panels(a, b, nodes, panels):
    """Composite Gauss-Legendre nodes and weights on [a, b]."""
    x, w = np.polynomial.legendre.leggauss(nodes)
    e = np.linspace(a, b, panels + 1)
    half = np.diff(e)[:, None] / 2.0
    mid = (e[:-1] + e[1:])[:, None] / 2.0
    return (mid + half * x).ravel(), (half * w).ravel()


def _theta_rule(nodes, panels):
    # theta = (pi/2) sin(pi v / 2) clusters nodes at both ends of [-pi/2, pi/2]
    v, wv = gl_panels(-1.0, 1.0, nodes, panels)
    th = HALF_PI * np.sin(HALF_PI * v)
    w = wv * HALF_PI * HALF_PI * np.cos(HALF_PI * v)
    return th, w


def _radii(f):
    return float(getattr(f, "z_radius", 8.0)), float(getattr(f, "t_radius", 8.0))


def sphere_average(f, n, radius, t, quad=DEFAULT_QUADRATURE):
    """Af(R, t); bypasses the sphere rule for U(n)-invariant fields."""
    radius = np.asarray(radius, dtype=float)
    t = np.asarray(t, dtype=float)
    if getattr(f, "u_invariant", False):
        shape = np.broadcast(radius, t).shape
        z = np.zeros(shape + (n,), dtype=complex)
        z[..., 0] = np.broadcast_to(radius, shape)
        return f(z, np.broadcast_to(t, shape))
    return average_A(f, radius, t, quad, n=n)


def _real_if(x):
    x = complex(x)
    return x.real if x.imag == 0 else x


# ---------------------------------------------------------------------------
# angular route


def angular_weight(f, n, theta, quad=DEFAULT_QUADRATURE, rho_nodes=16, rho_panels=24):
    """K_f(theta) = cos^{n-1}(theta) int_0^inf Af((rho cos theta)^{1/2}, rho sin(theta)/4) d rho."""
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    zr, tr = _radii(f)
    c, s = np.cos(theta), np.abs(np.sin(theta))
    with np.errstate(divide="ignore"):
        rmax = np.minimum(np.where(c > 0, zr * zr / c, np.inf), np.where(s > 0, 4.0 * tr / s, np.inf))
    x, w = gl_panels(0.0, 1.0, rho_nodes, rho_panels)
    rho = rmax[:, None] * x[None, :]
    wr = rmax[:, None] * w[None, :]
    cc = np.clip(c, 0.0, None)[:, None]
    vals = sphere_average(f, n, np.sqrt(rho * cc), rho * np.sin(theta)[:, None] / 4.0, quad)
    return np.clip(c, 0.0, None) ** (n - 1) * np.sum(wr * vals, axis=1)


def pair_angular(p, f, quad=DEFAULT_QUADRATURE, tol=None, global_scale=1.0, check_profile=True):
    """<Phi_alpha, f> = -beta_hat int Re Psi_alpha(theta) K_f(theta) d theta.

    Re Psi_alpha comes from the boundary 2F1 (integral form for alpha < n,
    Abel summation otherwise).  The error estimate compares with a rule of
    about half the angular resolution.
    """
    tol = DEFAULT_TOLERANCES if tol is None else tol
    n, alpha = p.n, p.alpha
    check_alpha(n, alpha, tol.pole_guard)
    if check_profile:
        AngularProfile(lambda th: np.real(angular_weight(f, n, th, quad)), n).check()
    const = KernelConstants(n, global_scale)

    def run(nodes):
        th, w = _theta_rule(nodes, quad.theta_panels)
        psi = re_psi(n, alpha, th, method="hypergeometric", tol=tol)
        kf = angular_weight(f, n, th, quad)
        return -const.beta_hat * global_scale * np.sum(w * psi * kf)

    fine = run(quad.theta_nodes)
    coarse = run(max(4, quad.theta_nodes // 2))
    return PairingResult(_real_if(fine), float(abs(fine - coarse)),
                         {"route": "angular", "n": n, "alpha": alpha})


# ---------------------------------------------------------------------------
# spatial route


def _annulus(f, n, prof, lo, hi, quad, nodes=10, panels=2):
    r, wr = gl_panels(lo, hi, nodes, panels)
    th, wt = _theta_rule(quad.theta_nodes, quad.theta_panels)
    R, TH = np.meshgrid(r, th, indexing="ij")
    c = np.cos(TH)
    af = sphere_average(f, n, np.sqrt(R * c), R * np.sin(TH) / 4.0, quad)
    integrand = prof(TH) * c ** (n - 1) * af
    return np.sum(wr[:, None] * wt[None, :] * integrand)


def pair_spatial(p, f, quad=DEFAULT_QUADRATURE, tol=None, global_scale=1.0):
    """<Phi_alpha, f> as a Cartesian integral over the (tau, t) half plane.

    With tau = |z|^2 the pairing is ``|S^{2n-1}|/2 int Phi(tau, t) Af(tau^{1/2}, t)
    tau^{n-1} d tau dt``.  The cc-ball rho < 2 eps0 is cut out of the adaptive
    Cartesian integral; annuli [eps0/4, eps0/2], [eps0/2, eps0], [eps0, 2 eps0]
    are done in polar coordinates, and the excluded core is removed by
    two rounds of Richardson extrapolation.  The error estimate is the size of
    the last correction plus the adaptive-quadrature error.
    """
    tol = DEFAULT_TOLERANCES if tol is None else tol
    n, alpha = p.n, p.alpha
    check_alpha(n, alpha, tol.pole_guard)
    prof = kernel_profile(n, float(alpha))
    pref = -(4.0 ** n) * math.factorial(n - 1)
    area = sphere_area(n)
    zr, tr = _radii(f)
    eps = quad.eps0
    r_out = 2.0 * eps

    invariant = getattr(f, "u_invariant", False)
    zbuf = np.zeros((1, n), dtype=complex)
    tbuf = np.zeros(1)

    def af_at(tau, t):
        if invariant:
            zbuf[0, 0] = math.sqrt(tau)
            tbuf[0] = t
            return complex(f(zbuf, tbuf)[0])
        return complex(sphere_average(f, n, math.sqrt(tau), t, quad))

    def g(t, tau):
        rho = math.hypot(tau, 4.0 * t)
        return pref * rho ** (-n) * prof.scalar(math.atan2(4.0 * t, tau)) * af_at(tau, t).real * tau ** (n - 1)

    def g_im(t, tau):
        rho = math.hypot(tau, 4.0 * t)
        return pref * rho ** (-n) * prof.scalar(math.atan2(4.0 * t, tau)) * af_at(tau, t).imag * tau ** (n - 1)

    def tb(tau):
        return math.sqrt(max(r_out * r_out - tau * tau, 0.0)) / 4.0

    kw = dict(epsabs=1e-11, epsrel=quad.spatial_rel)
    parts = []
    errs = []
    is_complex = np.iscomplexobj(sphere_average(f, n, np.array([0.5]), np.array([0.1]), quad))
    integrands = (g, g_im) if is_complex else (g,)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        for fn in integrands:
            a1, e1 = integrate.dblquad(fn, 0.0, r_out, lambda s: tb(s), lambda s: tr, **kw)
            a2, e2 = integrate.dblquad(fn, 0.0, r_out, lambda s: -tr, lambda s: -tb(s), **kw)
            a3, e3 = integrate.dblquad(fn, r_out, zr * zr, lambda s: -tr, lambda s: tr, **kw)
            parts.append(a1 + a2 + a3)
            errs.append(e1 + e2 + e3)
    outer = parts[0] + (1j * parts[1] if is_complex else 0.0)
    outer *= area / 2.0
    # polar annuli: tau d tau dt = ... -> -beta_hat Re Psi cos^{n-1} Af d rho d theta
    beta_hat = KernelConstants(n).beta_hat
    rings = [-beta_hat * _annulus(f, n, prof, eps / 2 ** (j + 1), eps / 2 ** j, quad)
             for j in range(-1, 2)]
    p0 = outer + rings[0]
    p1 = p0 + rings[1]
    p2 = p1 + rings[2]
    # the excluded core contributes c1 eps + c2 eps^2 + ...; eliminate both terms
    r1 = 2.0 * p1 - p0
    r2 = 2.0 * p2 - p1
    best = (4.0 * r2 - r1) / 3.0
    err = abs(best - r2) + sum(errs) * area / 2.0
    if not np.isfinite(best):
        raise QuadratureFailError("spatial pairing produced a non-finite value")
    return PairingResult(_real_if(global_scale * best), float(abs(global_scale) * err),
                         {"route": "spatial", "n": n, "alpha": alpha, "eps0": eps,
                          "profile_error": prof.error})


# ---------------------------------------------------------------------------
# spectral route


def _spectral_transform(f, n, quad):
    """Nodes in tau and the t-Fourier transform of Af on them (weights folded in)."""
    zr, tr = _radii(f)
    tau, wt = gl_panels(0.0, zr * zr, quad.tau_nodes, quad.tau_panels)
    m = int(math.ceil(tr / quad.t_step))
    ts = quad.t_step * np.arange(-m, m + 1)
    af = sphere_average(f, n, np.sqrt(tau)[:, None], ts[None, :], quad)
    area = sphere_area(n)
    weight = 0.5 * area * wt * tau ** (n - 1)
    return tau, ts, af, weight


def pair_spectral(p, f, quad=DEFAULT_QUADRATURE, tol=None, global_scale=1.0):
    """<Phi_alpha, f> from the spherical expansion of the inverse of L_alpha.

    Computes ``S = sum_k int d_k <phi_{l,k}, f> |l|^{n-1} / (2k + n - alpha) dl``
    (d_k = binom(k+n-1, k) the multiplicity of the k-th Laguerre space) and
    returns ``-S / 2``, the normalisation under which this route agrees with
    the kernel density.  The k-sum at each l runs to
    ``K(l) = clip(k_scale / |l|, k_cutoff, k_max)``; the truncation tail is
    estimated as twice the contribution of the last octave of k plus the last
    l panel, and TruncationDominantError is raised when it exceeds
    ``spectral_tol`` relative to the result.
    """
    tol = DEFAULT_TOLERANCES if tol is None else tol
    n, alpha = p.n, p.alpha
    check_alpha(n, alpha, tol.pole_guard)
    tau, ts, af, weight = _spectral_transform(f, n, quad)
    # log-spaced lambda nodes on [lambda_min, lambda_cutoff]
    u, wu = gl_panels(math.log(quad.lambda_min), math.log(quad.lambda_cutoff),
                      quad.lambda_nodes, quad.lambda_panels)
    lam = np.exp(u)
    wl = wu * lam
    # F(tau, +-l) = sum_t e^{+-i l t} Af(tau, t) dt
    phase = np.exp(1j * np.outer(lam, ts)) * quad.t_step
    fplus = phase @ af.T
    fminus = np.conj(phase) @ af.T
    g = (fplus + fminus) * weight[None, :]
    kcap = np.clip(np.ceil(quad.k_scale / lam), quad.k_cutoff, quad.k_max).astype(int)
    x = lam[:, None] * tau[None, :] / 2.0
    total = np.zeros(len(lam), dtype=complex)
    tail = np.zeros(len(lam), dtype=complex)
    order = n - 1
    # damped normalised Laguerre functions l_k(x) e^{-x/2}, advanced by the three-term recurrence
    active = np.arange(len(lam))
    xa = x
    ga = g
    lk_prev = None
    lk = np.exp(-x / 2.0)
    k = 0
    while active.size:
        ck = math.comb(k + n - 1, k) * np.sum(lk * ga, axis=1) / (2 * k + n - alpha)
        total[active] += ck
        late = kcap[active] // 2 <= k
        tail[active[late]] += ck[late]
        if k == 0:
            nxt = lk * (1.0 - xa / n)
        else:
            nxt = ((2 * k + 1 + order - xa) * lk - k * lk_prev) / (k + 1 + order)
        lk_prev, lk = lk, nxt
        k += 1
        keep = kcap[active] > k
        if not np.all(keep):
            active, xa, ga = active[keep], xa[keep], ga[keep]
            lk_prev, lk = lk_prev[keep], lk[keep]
    integrand = total * lam ** (n - 1)
    main = np.sum(wl * integrand)
    # [0, lambda_min]: fit A log l + B through the two smallest nodes
    l0, l1 = lam[0], lam[1]
    a = (integrand[1] - integrand[0]) / (math.log(l1) - math.log(l0))
    b = integrand[0] - a * math.log(l0)
    lm = quad.lambda_min
    head = lm * (a * (math.log(lm) - 1.0) + b)
    s = main + head
    k_tail = 2.0 * abs(np.sum(wl * tail * lam ** (n - 1)))
    per = len(lam) // quad.lambda_panels
    l_tail = abs(np.sum(wl[-per:] * integrand[-per:]))
    tail_est = k_tail + l_tail
    value = -0.5 * s * global_scale
    err = 0.5 * tail_est * abs(global_scale)
    if err > quad.spectral_tol * max(abs(value), 1e-300):
        raise TruncationDominantError(
            f"spectral truncation tail {err:.3e} exceeds {quad.spectral_tol} x |value|")
    return PairingResult(_real_if(value), float(err),
                         {"route": "spectral", "n": n, "alpha": alpha,
                          "k_max_used": int(kcap.max()), "lambda_cutoff": quad.lambda_cutoff,
                          "head": complex(head)})


# ---------------------------------------------------------------------------
# integrability report


def integrability_check(n, quad=DEFAULT_QUADRATURE, f=None, ball=1.0):
    """Integrals of |g(tau, t)| = (tau^2+16t^2)^{-n/2} |Af(tau^{1/2}, t)| tau^{n-1}
    over the regions B = {tau^2 + 16 t^2 < ball^2}, S = {|t| < 1/8, tau > 1/2}
    minus B, and the rest of the half plane.

    With ``f`` omitted the B integral is done for f = 1, whose exact value is
    ``ball/4 int cos^{n-1}``.  Returns a dict of region values and flags.
    """
    report = {"n": n, "ball": ball}
    th, wt = _theta_rule(quad.theta_nodes, quad.theta_panels)
    r, wr = gl_panels(0.0, ball, 12, 4)
    R, TH = np.meshgrid(r, th, indexing="ij")
    c = np.cos(TH)
    if f is None:
        af = np.ones_like(R)
    else:
        af = np.abs(sphere_average(f, n, np.sqrt(R * c), R * np.sin(TH) / 4.0, quad))
    # in polar form d tau dt = rho/4 d rho d theta and tau^{n-1} rho^{-n} = cos^{n-1} / rho
    report["B"] = float(np.sum(wr[:, None] * wt[None, :] * 0.25 * c ** (n - 1) * af))
    if f is None:
        exact = ball / 4.0 * integrate.quad(lambda s: math.cos(s) ** (n - 1), -HALF_PI, HALF_PI)[0]
        report["B_exact"] = exact
        report["finite"] = bool(np.isfinite(report["B"]))
        return report
    zr, tr = _radii(f)

    def absg(t, tau):
        rho = math.hypot(tau, 4.0 * t)
        return rho ** (-n) * abs(complex(sphere_average(f, n, math.sqrt(tau), t, quad))) * tau ** (n - 1)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)

        def in_b(t, tau):
            return tau * tau + 16 * t * t < ball * ball

        def s_part(t, tau):
            return 0.0 if in_b(t, tau) else absg(t, tau)

        s_val, _ = integrate.dblquad(s_part, 0.5, zr * zr, -0.125, 0.125, epsrel=1e-8)

        def rest(t, tau):
            if in_b(t, tau) or (abs(t) < 0.125 and tau > 0.5):
                return 0.0
            return absg(t, tau)

        rest_val, _ = integrate.dblquad(rest, 0.0, zr * zr, -tr, tr, epsrel=1e-6, epsabs=1e-9)
    report["S"] = float(s_val)
    report["complement"] = float(rest_val)
    report["finite"] = bool(all(np.isfinite([report["B"], s_val, rest_val])))
    return report
