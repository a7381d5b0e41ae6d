"""The Heisenberg group H_n = C^n x R: group law, norm, dilations, sphere
averages and the t-dependent spherical functions of the pair (H_n, U(n)).

Points are stored as a complex n-vector ``z`` and a real ``t``.  The array
helpers (``*_arrays``) work on stacked coordinates ``z[..., n]``, ``t[...]``
and are what the kernel and operator code use internally.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import ndtri
from scipy.stats import qmc

from .config import DEFAULT_QUADRATURE, DEFAULT_TOLERANCES
from .errors import DimensionMismatchError, DomainError, LambdaZeroError, QuadratureFailError
from .specfun import laguerre

__all__ = [
    "GroupPoint",
    "SphericalIndex",
    "group_mul",
    "group_inv",
    "cc_norm",
    "gauge_norm",
    "dilation",
    "spherical_phi",
    "spherical_phi_array",
    "average_A",
    "sphere_rule",
    "sphere_area",
    "mul_arrays",
]


@dataclass(frozen=True, eq=False)
class GroupPoint:
    """A point (z, t) of H_n; ``z`` is stored as a read-only complex vector."""

    z: np.ndarray
    t: float

    def __post_init__(self):
        z = np.array(self.z, dtype=complex).reshape(-1)
        if z.size < 1:
            raise DomainError("z must have at least one coordinate")
        z.setflags(write=False)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "t", float(self.t))

    @property
    def n(self):
        return self.z.size

    @classmethod
    def identity(cls, n):
        return cls(np.zeros(n, dtype=complex), 0.0)

    @classmethod
    def from_real(cls, x, y, t):
        return cls(np.asarray(x, float) + 1j * np.asarray(y, float), t)

    def __eq__(self, other):
        if not isinstance(other, GroupPoint):
            return NotImplemented
        return self.n == other.n and bool(np.all(self.z == other.z)) and self.t == other.t

    def __hash__(self):
        return hash((self.z.tobytes(), self.t))

    def allclose(self, other, rtol=1e-13, atol=1e-13):
        return (self.n == other.n and np.allclose(self.z, other.z, rtol=rtol, atol=atol)
                and math.isclose(self.t, other.t, rel_tol=rtol, abs_tol=atol))

    def __repr__(self):
        return f"GroupPoint(z={self.z.tolist()!r}, t={self.t!r})"


@dataclass(frozen=True)
class SphericalIndex:
    lam: float
    k: int

    def __post_init__(self):
        if self.lam == 0:
            raise LambdaZeroError("spherical functions need lambda != 0")
        if self.k < 0 or int(self.k) != self.k:
            raise DomainError("k must be a nonnegative integer")


# ---------------------------------------------------------------------------
# group structure


def mul_arrays(z1, t1, z2, t2):
    """Group product on stacked coordinates; twist is Im(conj(z1) . z2) / 2."""
    twist = 0.5 * np.sum(np.imag(np.conj(z1) * z2), axis=-1)
    return z1 + z2, t1 + t2 + twist


def group_mul(g, h):
    """(z, t)(w, s) = (z + w, t + s + Im(conj(z) . w) / 2)."""
    if g.n != h.n:
        raise DimensionMismatchError(f"dimensions differ: {g.n} vs {h.n}")
    z, t = mul_arrays(g.z, g.t, h.z, h.t)
    return GroupPoint(z, float(t))


def group_inv(g):
    return GroupPoint(-g.z, -g.t)


def cc_norm(g):
    """(|z|^4 + 16 t^2)^(1/2).

    Note the homogeneity: ``cc_norm(dilation(g, r)) == r**2 * cc_norm(g)``.
    """
    if isinstance(g, GroupPoint):
        z2 = float(np.sum(np.abs(g.z) ** 2))
        return math.hypot(z2, 4.0 * g.t)
    z, t = g
    z2 = np.sum(np.abs(np.asarray(z)) ** 2, axis=-1)
    return np.hypot(z2, 4.0 * np.asarray(t))


def gauge_norm(g):
    """The degree-one homogeneous gauge (|z|^4 + 16 t^2)^(1/4)."""
    return np.sqrt(cc_norm(g))


def dilation(g, r):
    """delta_r(z, t) = (r z, r^2 t), a group automorphism."""
    if not r > 0:
        raise DomainError("dilation factor must be positive")
    return GroupPoint(r * g.z, r * r * g.t)


# ---------------------------------------------------------------------------
# spherical functions


def spherical_phi_array(lam, k, n, z2, t):
    """phi_{lam,k} evaluated from |z|^2 and t (arrays broadcast)."""
    if lam == 0:
        raise LambdaZeroError("spherical functions need lambda != 0")
    x = abs(lam) * np.asarray(z2, dtype=float) / 2.0
    radial = laguerre(k, n - 1, x) * np.exp(-x / 2.0)
    return np.exp(1j * lam * np.asarray(t, dtype=float)) * radial


def spherical_phi(idx, g):
    """phi_{lam,k}(z, t) = e^{i lam t} l_k^{n-1}(|lam||z|^2/2) e^{-|lam||z|^2/4}."""
    z2 = float(np.sum(np.abs(g.z) ** 2))
    return complex(spherical_phi_array(idx.lam, idx.k, g.n, z2, g.t))


# ---------------------------------------------------------------------------
# sphere averages


def sphere_area(n):
    """Surface measure of the unit sphere S^{2n-1} in C^n = R^{2n}: 2 pi^n / (n-1)!."""
    return 2.0 * math.pi ** n / math.factorial(n - 1)


@lru_cache(maxsize=32)
def _product_rule(n, n_simplex, n_phase):
    """Nodes and weights on S^{2n-1}, normalised to total weight 1.

    (|xi_1|^2, ..., |xi_n|^2) is uniform on the simplex and the phases are
    independent and uniform, so the rule is a collapsed-coordinate
    Gauss-Legendre rule on the simplex times a trapezoid rule per phase.
    """
    phases = 2.0 * math.pi * np.arange(n_phase) / n_phase
    if n == 1:
        xi = np.exp(1j * phases)[:, None]
        w = np.full(n_phase, 1.0 / n_phase)
        return xi, w
    x, wx = np.polynomial.legendre.leggauss(n_simplex)
    s, ws = (x + 1.0) / 2.0, wx / 2.0
    grids = np.meshgrid(*([s] * (n - 1)), indexing="ij")
    wgrids = np.meshgrid(*([ws] * (n - 1)), indexing="ij")
    u = np.empty((n,) + grids[0].shape)
    rest = np.ones_like(grids[0])
    weight = np.ones_like(grids[0])
    for j in range(n - 1):
        u[j] = rest * grids[j]
        weight = weight * wgrids[j] * rest
        rest = rest * (1.0 - grids[j])
    u[n - 1] = rest
    # uniform density on the simplex is (n-1)!
    weight = weight * math.factorial(n - 1)
    u = u.reshape(n, -1).T
    weight = weight.reshape(-1)
    ph = np.stack(np.meshgrid(*([phases] * n), indexing="ij"), axis=-1).reshape(-1, n)
    xi = (np.sqrt(u)[:, None, :] * np.exp(1j * ph)[None, :, :]).reshape(-1, n)
    w = (weight[:, None] * np.full(len(ph), 1.0 / len(ph))[None, :]).reshape(-1)
    return xi, w


def _qmc_rule(n, count, seed):
    sob = qmc.Sobol(d=2 * n, scramble=True, seed=seed)
    m = int(math.ceil(math.log2(max(count, 2))))
    u = sob.random_base2(m)
    g = ndtri(np.clip(u, 1e-16, 1 - 1e-16))
    v = g[:, :n] + 1j * g[:, n:]
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    return v, np.full(len(v), 1.0 / len(v))


def sphere_rule(n, rule=DEFAULT_QUADRATURE, half=False):
    """Return ``(xi, w)``: unit vectors in C^n and weights summing to 1.

    n = 1 uses ``sphere_points`` equispaced angles; n = 2, 3 a product rule;
    n >= 4 a seeded scrambled Sobol rule mapped through normal deviates,
    since product rules grow too fast with n.
    """
    if n == 1:
        p = rule.sphere_points // (2 if half else 1)
        return _product_rule(1, 1, max(p, 4))
    if n <= 3:
        div = 6 if n == 2 else 10
        ns = max(4, rule.sphere_points // div)
        npp = max(8, rule.sphere_points // (4 * (n - 1)))
        if half:
            ns, npp = ns // 2 + 1, npp // 2
        return _product_rule(n, ns, npp)
    count = rule.sphere_points ** 2 * 16
    return _qmc_rule(n, count // (2 if half else 1), rule.sphere_seed)


def average_A(f, radius, t, rule=DEFAULT_QUADRATURE, n=None, tol=DEFAULT_TOLERANCES):
    """Sphere average Af(R, t) = mean of f(R xi, t) over xi in S^{2n-1}.

    ``f`` is called as ``f(z, t)`` with ``z`` of shape ``(..., n)``.  ``radius``
    and ``t`` may be arrays of a common shape.  When ``rule.sphere_check`` is set
    the result is compared with a rule of half the resolution and
    QuadratureFailError is raised if they disagree.
    """
    if n is None:
        n = getattr(f, "n", None)
        if n is None:
            raise DomainError("dimension n must be given for a plain callable")
    radius = np.asarray(radius, dtype=float)
    t = np.asarray(t, dtype=float)
    if np.any(radius < 0):
        raise DomainError("radius must be nonnegative")
    shape = np.broadcast(radius, t).shape

    def run(half):
        xi, w = sphere_rule(n, rule, half)
        z = np.asarray(radius)[..., None, None] * xi
        vals = f(z, np.asarray(t)[..., None])
        return np.tensordot(np.broadcast_to(vals, shape + (len(w),)), w, axes=([-1], [0]))

    out = run(False)
    if rule.sphere_check:
        coarse = run(True)
        scale = max(1.0, float(np.max(np.abs(out), initial=0.0)))
        limit = tol.sphere if n <= 3 else 1e-2
        if np.max(np.abs(out - coarse), initial=0.0) > limit * scale:
            raise QuadratureFailError("sphere average not resolved; raise sphere_points")
    if not np.iscomplexobj(out) or np.all(np.imag(out) == 0):
        out = np.real(out)
    return out if out.ndim else out.item()
