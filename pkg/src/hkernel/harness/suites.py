"""Verification suites: named collections of deterministic checks.

Every check returns one or more :class:`VerificationReport`.  Checks are
independent, run on a thread pool of ``jobs`` workers, and the merged list is
sorted by check id so the output does not depend on scheduling.
"""

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gamma

from ..config import DEFAULT_QUADRATURE, DEFAULT_TOLERANCES, QuadratureSpec, Tolerances
from ..errors import ConfigError, HKError, UnknownSuiteError
from ..heisenberg import (GroupPoint, average_A, cc_norm, dilation, group_inv, group_mul,
                          mul_arrays, spherical_phi_array)
from ..kernel import (contour_I, density_closed_array, density_hypergeometric_array,
                      folland_density, integrability_check, laguerre_transform, closed_rhs,
                      pair_angular, pair_spatial, pair_spectral, psi_r_alpha)
from ..operators import (Grid, OperatorParams, SampledField, apply_absT, apply_L,
                         apply_vector_field, sample)
from ..specfun import (gauss_2f1_boundary, gauss_2f1_interior, incomplete_beta, laguerre,
                       m_alpha, pochhammer)
from .calibrate import calibrate
from .gallery import gallery, gaussian_L_alpha
from .report import failed_report, make_report

__all__ = ["RunConfig", "SUITES", "run_suite", "list_checks", "eigen_errors"]


@dataclass(frozen=True)
class RunConfig:
    """Run-level settings.

    ``n`` and ``alpha`` restrict parameter sweeps when set; ``seed`` fixes
    every random sample.
    """

    quad: QuadratureSpec = DEFAULT_QUADRATURE
    tol: Tolerances = DEFAULT_TOLERANCES
    n: int = None
    alpha: float = None
    seed: int = 12345
    jobs: int = 1
    timing: bool = field(default=False, compare=False)

    def ns(self, default=(1, 2, 3)):
        return (self.n,) if self.n is not None else default

    def rng(self, salt):
        return np.random.default_rng([self.seed, salt])


def _alphas(cfg, n, default):
    """Sweep values of alpha for dimension n (the configured one if set)."""
    if cfg.alpha is not None:
        return (cfg.alpha,)
    return tuple(a for a in default if a < n) if default is not None else ()


# ---------------------------------------------------------------------------
# specfun


def _beta_half(cfg):
    out = []
    for n in range(1, 11):
        exact = gamma(n / 2.0) ** 2 / (2.0 * gamma(float(n)))
        out.append(make_report(f"specfun.beta_half.n{n:02d}", "specfun", {"n": n},
                               incomplete_beta(0.5, n / 2.0, n / 2.0), exact, 1e-12))
    return out


def _laguerre_explicit(k, a, x):
    s = sum(math.comb(k + a, k - j) * (-x) ** j / math.factorial(j) for j in range(k + 1))
    return s / math.comb(k + a, k)


def _laguerre(cfg):
    out = []
    for a in (0, 1, 2):
        for k in (0, 1, 3, 6):
            for x in (0.0, 0.7, 3.5):
                out.append(make_report(f"specfun.laguerre.a{a}.k{k}.x{x}", "specfun",
                                       {"order": a, "k": k, "x": x}, laguerre(k, a, x),
                                       _laguerre_explicit(k, a, x), 1e-12, "scaled"))
    return out


def _hyp_interior(cfg):
    out = []
    x = 0.5
    r = gauss_2f1_interior((1.0, 1.0, 2.0), -x).value
    out.append(make_report("specfun.2f1.log", "specfun", {"x": x}, x * r, math.log1p(x), 1e-13))
    w = 0.3 + 0.4j
    r = gauss_2f1_interior((1.5, 0.7, 0.7), w).value
    out.append(make_report("specfun.2f1.binomial", "specfun", {"omega": w}, r,
                           (1 - w) ** -1.5, 1e-13))
    return out


def _hyp_boundary(cfg):
    out = [make_report("specfun.2f1.boundary.arctan", "specfun", {"n": 1, "alpha": 0.0, "theta": 0.0},
                       gauss_2f1_boundary(1, 0.0, 0.0), math.pi / 4, 1e-12)]
    for n in cfg.ns():
        for a in _alphas(cfg, n, (-1.0, 0.0, 0.5, n - 0.5)):
            for th in (0.3, 1.0):
                lhs = gauss_2f1_boundary(n, a, th, method="integral")
                rhs = gauss_2f1_boundary(n, a, th, method="abel")
                out.append(make_report(f"specfun.2f1.boundary.n{n}.a{a}.th{th}", "specfun",
                                       {"n": n, "alpha": a, "theta": th}, lhs, rhs, 1e-9))
    return out


def _pochhammer(cfg):
    out = []
    for a, k in ((0.5, 4), (2.25, 7), (-1.5, 3)):
        exact = math.gamma(a + k) / math.gamma(a)
        out.append(make_report(f"specfun.pochhammer.a{a}.k{k}", "specfun", {"a": a, "k": k},
                               pochhammer(a, k), exact, 1e-13))
    return out


def m_alpha_residual(n, alpha, thetas, delta=1e-3, tol=None):
    """Max over ``thetas`` of |m'' + alpha^2 m + alpha sec^n| / scale.

    m'' is the fourth-order five-point difference of the quadrature values.
    The scale is the largest of the three terms at each point.
    """
    worst = 0.0
    for th in thetas:
        v = [m_alpha(n, alpha, th + j * delta, tol=tol) for j in (-2, -1, 0, 1, 2)]
        d2 = (-v[0] + 16 * v[1] - 30 * v[2] + 16 * v[3] - v[4]) / (12 * delta * delta)
        force = alpha / math.cos(th) ** n
        scale = max(abs(d2), alpha * alpha * abs(v[2]), abs(force), 1e-300)
        worst = max(worst, abs(d2 + alpha * alpha * v[2] + force) / scale)
    return worst


def _m_alpha(cfg):
    out = []
    thetas = np.linspace(-1.3, 1.3, 14)
    for n in cfg.ns():
        for a in (-1.5, 0.5, 1.0, 2.5) if cfg.alpha is None else (cfg.alpha,):
            if a == 0:
                continue
            res = m_alpha_residual(n, a, thetas)
            out.append(make_report(f"specfun.m_alpha.ode.n{n}.a{a}", "specfun",
                                   {"n": n, "alpha": a, "delta": 1e-3}, res, 0.0, 1e-6, "abs"))
        zero = float(np.max(np.abs(m_alpha(n, 0.0, thetas))))
        out.append(make_report(f"specfun.m_alpha.zero.n{n}", "specfun", {"n": n, "alpha": 0.0},
                               zero, 0.0, 1e-14, "abs"))
    return out


# ---------------------------------------------------------------------------
# group


def _random_points(rng, n, count):
    z = rng.normal(size=(count, n)) + 1j * rng.normal(size=(count, n))
    return z, rng.normal(size=count)


def _assoc(cfg):
    out = []
    for n in cfg.ns():
        rng = cfg.rng(100 + n)
        (a, s), (b, u), (c, v) = (_random_points(rng, n, 100) for _ in range(3))
        l1 = mul_arrays(*mul_arrays(a, s, b, u), c, v)
        l2 = mul_arrays(a, s, *mul_arrays(b, u, c, v))
        err = max(float(np.max(np.abs(l1[0] - l2[0]))), float(np.max(np.abs(l1[1] - l2[1]))))
        out.append(make_report(f"group.assoc.n{n}", "group", {"n": n, "samples": 100}, err, 0.0,
                               1e-12, "abs"))
        g = GroupPoint(a[0], float(s[0]))
        e = group_mul(g, group_inv(g))
        out.append(make_report(f"group.inverse.n{n}", "group", {"n": n},
                               float(np.max(np.abs(e.z))) + abs(e.t), 0.0, 1e-15, "abs"))
    return out


def _dilation(cfg):
    out = []
    for n in cfg.ns():
        rng = cfg.rng(200 + n)
        (a, s), (b, u) = (_random_points(rng, n, 2) for _ in range(2))
        g, h, r = GroupPoint(a[0], float(s[0])), GroupPoint(b[0], float(u[0])), 1.7
        lhs = dilation(group_mul(g, h), r)
        rhs = group_mul(dilation(g, r), dilation(h, r))
        out.append(make_report(f"group.dilation.automorphism.n{n}", "group", {"n": n, "r": r},
                               float(np.max(np.abs(lhs.z - rhs.z))) + abs(lhs.t - rhs.t), 0.0,
                               1e-12, "abs"))
        out.append(make_report(f"group.dilation.cc_norm.n{n}", "group", {"n": n, "r": r},
                               cc_norm(dilation(g, r)), r * r * cc_norm(g), 1e-13))
    return out


def _phi_origin(cfg):
    out = []
    for n in cfg.ns():
        for lam, k in ((1.0, 0), (-2.0, 3)):
            val = complex(spherical_phi_array(lam, k, n, 0.0, 0.0))
            out.append(make_report(f"group.phi_origin.n{n}.lam{lam}.k{k}", "group",
                                   {"n": n, "lam": lam, "k": k}, val, 1.0, 1e-15, "abs"))
    return out


def _sphere_average(cfg):
    out = []
    for n in cfg.ns():
        R = 1.3
        val = complex(average_A(lambda z, t: np.abs(z[..., 0]) ** 2 + 0 * t, R, 0.0,
                                cfg.quad, n=n, tol=cfg.tol))
        out.append(make_report(f"group.sphere_average.n{n}", "group", {"n": n, "R": R}, val,
                               R * R / n, 1e-12))
    return out


# ---------------------------------------------------------------------------
# operators


def eigen_grid(n, h, xy_half=2.5):
    """Grid with t in [-2 pi, 2 pi): lambda in {1/2, 1, 2} are lattice frequencies."""
    t_count = 2 * int(round(2.0 * math.pi / h))
    return Grid.symmetric(n, xy_half, h, 2.0 * math.pi, t_count)


def eigen_errors(lam, k, n=1, h=0.125, order=6, alphas=(0.0, 0.5), xy_half=2.5):
    """Max interior errors of L and L_alpha on phi_{lam,k} against their eigenvalues.

    Returns a dict alpha -> error (alpha = 0 is L itself).
    """
    grid = eigen_grid(n, h, xy_half)
    z2 = sum(c ** 2 for c in grid.coords()[:2 * n])
    phi = spherical_phi_array(lam, k, n, z2, grid.coords()[-1])
    f = SampledField(phi, grid)
    lf = apply_L(f, order).values
    tf = apply_absT(f).values
    out = {}
    for a in alphas:
        exact = -abs(lam) * (2 * k + n - a) * phi
        err = np.abs(lf + a * tf - exact)
        out[a] = float(np.nanmax(err))
    return out


def _eigen(cfg):
    out = []
    alphas = (0.0, 0.5) if cfg.alpha is None else (0.0, cfg.alpha)
    h = cfg.quad.grid_h
    for lam in (0.5, 1.0, 2.0):
        for k in range(4):
            e1 = eigen_errors(lam, k, 1, h, cfg.quad.stencil_order, alphas)
            e2 = eigen_errors(lam, k, 1, h / 2, cfg.quad.stencil_order, alphas)
            for a in alphas:
                tag = f"lam{lam}.k{k}.a{a}"
                params = {"n": 1, "lam": lam, "k": k, "alpha": a, "h": h,
                          "order": cfg.quad.stencil_order}
                out.append(make_report(f"operators.eigen.error.{tag}", "operators", params,
                                       e1[a], 0.0, 1e-3, "abs"))
                out.append(make_report(f"operators.eigen.ratio.{tag}", "operators", params,
                                       e1[a] / e2[a], 3.5, 0.0, "atleast"))
    return out


def _order2(cfg):
    e1 = eigen_errors(1.0, 0, 1, 0.125, 2, (0.0,))[0.0]
    e2 = eigen_errors(1.0, 0, 1, 0.0625, 2, (0.0,))[0.0]
    return [make_report("operators.order2.ratio", "operators", {"lam": 1.0, "k": 0, "order": 2},
                        e1 / e2, 3.5, 0.0, "atleast")]


def _absT(cfg):
    out = []
    grid = Grid.symmetric(1, 2.0, 0.125, 8.0, 128)
    c = grid.coords()
    period = 16.0
    for m in (1, 3, 8):
        lam0 = 2 * math.pi * m / period
        vals = np.exp(-(c[0] ** 2 + c[1] ** 2)) * np.exp(1j * lam0 * c[2])
        got = apply_absT(SampledField(vals, grid)).values
        out.append(make_report(f"operators.absT.lattice.m{m}", "operators", {"lam0": lam0},
                               float(np.max(np.abs(got - abs(lam0) * vals))), 0.0, 1e-9, "abs"))
        twice = apply_absT(SampledField(got, grid)).values
        out.append(make_report(f"operators.absT.squared.m{m}", "operators", {"lam0": lam0},
                               float(np.max(np.abs(twice - lam0 ** 2 * vals))), 0.0, 1e-9, "abs"))
    return out


def _composition(cfg):
    out = []
    grid = Grid.symmetric(1, 2.0, 0.0625, 2.0 * math.pi, 200)
    f = sample(gallery("G3", 1), grid)
    lf = apply_L(f, 6).values
    x = apply_vector_field("X1", apply_vector_field("X1", f, 6), 6).values
    y = apply_vector_field("Y1", apply_vector_field("Y1", f, 6), 6).values
    both = np.isfinite(x + y)
    err = float(np.max(np.abs((x + y - lf)[both])))
    out.append(make_report("operators.sum_of_squares", "operators", {"h": 0.0625, "order": 6}, err,
                           0.0, 1e-6, "abs"))
    xy = apply_vector_field("X1", apply_vector_field("Y1", f, 6), 6).values
    yx = apply_vector_field("Y1", apply_vector_field("X1", f, 6), 6).values
    tf = apply_vector_field("T", f, 6).values
    ok = np.isfinite(xy - yx)
    err = float(np.max(np.abs((xy - yx - tf)[ok])))
    out.append(make_report("operators.commutator", "operators", {"h": 0.0625, "order": 6}, err,
                           0.0, 1e-6, "abs"))
    return out


# ---------------------------------------------------------------------------
# identities


def _sample_points(rng, count, lo=0.1, hi=10.0):
    """(|z|^2, t) with cc_norm log-uniform in [lo, hi] and uniform angle."""
    rho = np.exp(rng.uniform(math.log(lo), math.log(hi), count))
    th = rng.uniform(-0.49 * math.pi, 0.49 * math.pi, count)
    return rho * np.cos(th), rho * np.sin(th) / 4.0


def _folland(cfg):
    out = []
    for n in cfg.ns():
        z2, t = _sample_points(cfg.rng(300 + n), 100)
        a = density_closed_array(OperatorParams(n, 0.0), z2, t, tol=cfg.tol)
        b = folland_density(n, z2, t)
        err = float(np.max(np.abs(a - b) / np.abs(b)))
        out.append(make_report(f"identities.folland.n{n}", "identities", {"n": n, "points": 100},
                               err, 0.0, 1e-10, "abs"))
    spot = density_closed_array(OperatorParams(1, 0.0), 1.0, 0.0, tol=cfg.tol)
    out.append(make_report("identities.folland.spot", "identities", {"n": 1, "z": 1.0, "t": 0.0},
                           spot, -math.pi, 1e-10))
    return out


CROSS_CASES = ((1, 0.0), (1, 0.5), (2, 1.0), (3, -1.0))


def _cross_path(cfg):
    out = []
    cases = CROSS_CASES
    if cfg.n is not None or cfg.alpha is not None:
        cases = [(cfg.n or 1, cfg.alpha if cfg.alpha is not None else 0.0)]
    for i, (n, a) in enumerate(cases):
        z2, t = _sample_points(cfg.rng(400 + i), 50)
        p = OperatorParams(n, a)
        c = density_closed_array(p, z2, t, tol=cfg.tol)
        h = density_hypergeometric_array(p, z2, t, tol=cfg.tol)
        err = float(np.max(np.abs(c - h) / np.abs(c)))
        out.append(make_report(f"identities.cross_path.n{n}.a{a}", "identities",
                               {"n": n, "alpha": a, "points": 50}, err, 0.0, 1e-6, "abs"))
    return out


def _psi(cfg):
    out = []
    r = 0.9
    for n in cfg.ns():
        rng = cfg.rng(500 + n)
        worst = 0.0
        for _ in range(40):
            a = cfg.alpha if cfg.alpha is not None else float(rng.uniform(-2.0, n - 0.1))
            th = float(rng.uniform(-math.pi / 2, math.pi / 2))
            closed, raw = psi_r_alpha(OperatorParams(n, a), r, th, cfg.tol, return_both=True)
            worst = max(worst, abs(raw - closed) / max(1.0, abs(closed)))
        out.append(make_report(f"identities.psi_series.n{n}", "identities",
                               {"n": n, "r": r, "samples": 40}, worst, 0.0, 1e-10, "abs"))
    val = psi_r_alpha(OperatorParams(1, 0.0), r, 0.0, cfg.tol)
    out.append(make_report("identities.psi_series.anchor", "identities", {"n": 1, "r": r},
                           val, math.atan(r), 1e-10, "abs"))
    return out


def _laguerre_identity(cfg):
    out = []
    pts = ((1.0, 0.0), (0.7, 0.3), (1.5, -0.8))
    for n in cfg.ns():
        for k in range(6):
            worst = 0.0
            for eps in (1.0, 0.1, 0.01):
                for zn, t in pts:
                    lhs = laguerre_transform(n, k, zn, t, eps)
                    rhs = closed_rhs(n, k, zn, t, eps)
                    worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
            out.append(make_report(f"identities.laguerre.n{n}.k{k}", "identities",
                                   {"n": n, "k": k, "eps": [1.0, 0.1, 0.01]}, worst, 0.0, 1e-6,
                                   "abs"))
    lhs = laguerre_transform(1, 0, 1.0, 0.0, 1e-8)
    out.append(make_report("identities.laguerre.anchor", "identities",
                           {"n": 1, "k": 0, "z": 1.0, "t": 0.0, "eps": 1e-8}, lhs, 8.0, 1e-6))
    return out


def _contour(cfg):
    out = []
    rng = cfg.rng(600)
    worst = 0.0
    for _ in range(20):
        n = int(rng.integers(1, 4)) if cfg.n is None else cfg.n
        a = float(rng.uniform(-2.0, n - 0.1)) if cfg.alpha is None else cfg.alpha
        th = float(rng.uniform(-1.5, 1.5))
        r = contour_I(n, a, th, cfg.tol, check=False)
        worst = max(worst, r.residual)
    out.append(make_report("identities.contour.residual", "identities", {"triples": 20}, worst,
                           0.0, 1e-8, "abs"))
    r = contour_I(1, 0.5, 0.0, cfg.tol)
    out.append(make_report("identities.contour.theta0", "identities", {"n": 1, "alpha": 0.5},
                           r.I2, 0.0, 0.0, "abs"))
    return out


def _density_symmetries(cfg):
    out = []
    for n in cfg.ns():
        a = 0.5 if cfg.alpha is None else cfg.alpha
        p = OperatorParams(n, a)
        z2, t = _sample_points(cfg.rng(700 + n), 20)
        base = density_closed_array(p, z2, t, tol=cfg.tol)
        r = 1.6
        scaled = density_closed_array(p, r * r * z2, r * r * t, tol=cfg.tol)
        out.append(make_report(f"identities.homogeneity.n{n}", "identities",
                               {"n": n, "alpha": a, "r": r},
                               float(np.max(np.abs(scaled * r ** (2 * n) - base) / np.abs(base))),
                               0.0, 1e-12, "abs"))
        flip = density_closed_array(p, z2, -t, tol=cfg.tol)
        out.append(make_report(f"identities.t_even.n{n}", "identities", {"n": n, "alpha": a},
                               float(np.max(np.abs(flip - base) / np.abs(base))), 0.0, 1e-13,
                               "abs"))
    return out


# ---------------------------------------------------------------------------
# pairing


ROUTES = {"spatial": pair_spatial, "angular": pair_angular, "spectral": pair_spectral}


def _pairing_alphas(cfg):
    return (0.0, 0.5) if cfg.alpha is None else (cfg.alpha,)


def _make_concordance(a):
    def check(cfg):
        f = gallery("G1", 1)
        p = OperatorParams(1, a)
        vals = {name: fn(p, f, cfg.quad, cfg.tol).value for name, fn in ROUTES.items()}
        out = []
        for x, y in (("spatial", "angular"), ("spatial", "spectral"), ("angular", "spectral")):
            out.append(make_report(f"pairing.concordance.a{a}.{x}-{y}", "pairing",
                                   {"n": 1, "alpha": a, "function": "G1"}, vals[x], vals[y],
                                   2e-3))
        return out

    return check


class _Dilated:
    """f o delta_{1/r}, keeping the gallery metadata."""

    def __init__(self, f, r):
        self.f, self.r = f, r
        self.n, self.u_invariant = f.n, f.u_invariant
        self.z_radius, self.t_radius = f.z_radius * r, f.t_radius * r * r

    def __call__(self, z, t):
        return self.f(np.asarray(z) / self.r, np.asarray(t) / self.r ** 2)


def _pairing_misc(cfg):
    out = []
    for a in _pairing_alphas(cfg):
        p = OperatorParams(1, a)
        val = pair_angular(p, gallery("G2", 1), cfg.quad, cfg.tol).value
        out.append(make_report(f"pairing.odd.a{a}", "pairing", {"n": 1, "alpha": a,
                                                                "function": "G2"},
                               val, 0.0, 1e-8, "abs"))
        f = gallery("G1", 1)
        r = 2.0
        # the angular rule scales with f exactly, so the dilated side goes through the spatial route
        lhs = pair_spatial(p, _Dilated(f, r), cfg.quad, cfg.tol).value
        rhs = r * r * pair_angular(p, f, cfg.quad, cfg.tol).value
        out.append(make_report(f"pairing.dilation.a{a}", "pairing", {"n": 1, "alpha": a, "r": r},
                               lhs, rhs, 1e-5))
    for n in cfg.ns():
        rep = integrability_check(n, cfg.quad)
        out.append(make_report(f"pairing.integrability.n{n}", "pairing", {"n": n, "ball": 1.0},
                               rep["B"], rep["B_exact"], 1e-10))
    return out


# ---------------------------------------------------------------------------
# fundamental solution


def _make_fundamental(a):
    def check(cfg):
        out = []
        res = {}
        for name, cols in (("G1", None), ("G3", ((0.0, 0.0),))):
            kw = {} if cols is None else {"columns": cols}
            r = calibrate(gallery(name, 1), a, cfg.quad, cfg.tol, **kw)
            res[name] = r
            out.append(make_report(f"fundamental.residual.{name}.a{a}", "fundamental",
                                   {"n": 1, "alpha": a, "function": name, "c": r.c,
                                    "samples": r.samples},
                                   r.residual, 0.0, 5e-2, "abs"))
        out.append(make_report(f"fundamental.consistency.a{a}", "fundamental",
                               {"n": 1, "alpha": a, "functions": ["G3", "G1"]},
                               res["G3"].c, res["G1"].c, 0.1))
        return out

    return check


def _manufactured(cfg):
    g = gallery("G1", 1)
    out = []
    for a in (0.0, 0.5) if cfg.alpha is None else (cfg.alpha,):
        f = gaussian_L_alpha(1, a)
        f.n, f.name = 1, "L_alpha G1"

        def conv(points):
            return np.array([g(q.z[None, :], np.array([q.t]))[0] for q in points])

        r = calibrate(f, a, cfg.quad, cfg.tol, convolver=conv, h=0.0625, t_count=256)
        out.append(make_report(f"fundamental.manufactured.a{a}", "fundamental",
                               {"n": 1, "alpha": a, "h": 0.0625}, r.c, 1.0, 1e-6, "abs"))
    return out


# ---------------------------------------------------------------------------


def _build_suites():
    pairing = {f"pairing.concordance.a{a}": _make_concordance(a) for a in (0.0, 0.5)}
    pairing["pairing.misc"] = _pairing_misc
    fundamental = {f"fundamental.a{a}": _make_fundamental(a) for a in (0.0, 0.5)}
    fundamental["fundamental.manufactured"] = _manufactured
    return {
        "specfun": {"specfun.beta_half": _beta_half, "specfun.laguerre": _laguerre,
                    "specfun.2f1.interior": _hyp_interior, "specfun.2f1.boundary": _hyp_boundary,
                    "specfun.pochhammer": _pochhammer, "specfun.m_alpha": _m_alpha},
        "group": {"group.assoc": _assoc, "group.dilation": _dilation,
                  "group.phi_origin": _phi_origin, "group.sphere_average": _sphere_average},
        "operators": {"operators.eigen": _eigen, "operators.order2": _order2,
                      "operators.absT": _absT, "operators.composition": _composition},
        "identities": {"identities.folland": _folland, "identities.cross_path": _cross_path,
                       "identities.psi": _psi, "identities.laguerre": _laguerre_identity,
                       "identities.contour": _contour,
                       "identities.symmetries": _density_symmetries},
        "pairing": pairing,
        "fundamental": fundamental,
    }


SUITES = _build_suites()


def list_checks(suite):
    if suite not in SUITES:
        raise UnknownSuiteError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    return sorted(SUITES[suite])


def _run_check(suite, name, fn, cfg):
    start = time.perf_counter()
    try:
        reports = fn(cfg)
    except HKError as exc:
        reports = [failed_report(name, suite, {}, exc)]
    elapsed = time.perf_counter() - start
    if cfg.timing:
        reports = [r.__class__(**{**r.to_dict(timing=True), "wall_time": elapsed / len(reports)})
                   for r in reports]
    return reports


def run_suite(suite, cfg=None, select=None):
    """Run the named suite and return its reports sorted by check id.

    ``select`` keeps only check groups whose name starts with the given prefix.
    """
    cfg = RunConfig() if cfg is None else cfg
    if not isinstance(cfg.jobs, int) or cfg.jobs < 1:
        raise ConfigError("jobs must be a positive integer")
    names = [c for c in list_checks(suite) if select is None or c.startswith(select)]
    checks = SUITES[suite]
    if cfg.jobs == 1:
        parts = [_run_check(suite, c, checks[c], cfg) for c in names]
    else:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            parts = list(pool.map(lambda c: _run_check(suite, c, checks[c], cfg), names))
    reports = [r for part in parts for r in part]
    return sorted(reports, key=lambda r: r.check_id)
