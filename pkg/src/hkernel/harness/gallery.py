"""Closed-form Schwartz test functions on H_n."""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import dawsn

from ..errors import DomainError
from ..heisenberg import spherical_phi_array

__all__ = ["GalleryFunction", "gallery", "GALLERY_NAMES", "gaussian_L_alpha"]

GALLERY_NAMES = ("G1", "G2", "G3")

# G3 is phi_{LAM0,K0} under a Gaussian window of width SIGMA
LAM0, K0, SIGMA = 1.0, 1, 4.0


@dataclass(frozen=True, eq=False)
class GalleryFunction:
    """A test function with declared symmetries and decay radii.

    ``z_radius`` and ``t_radius`` bound the region outside which |f| is below
    about 1e-12 of its maximum; quadratures truncate there.
    """

    name: str
    func: object
    n: int
    u_invariant: bool
    t_parity: str          # "even", "odd" or "none"
    z_radius: float
    t_radius: float

    def __call__(self, z, t):
        return self.func(np.asarray(z), np.asarray(t, dtype=float))

    def check_symmetries(self, rng, samples=32, tol=1e-12):
        """Verify the declared symmetries on random points; returns the worst deviation."""
        n = self.n
        z = rng.normal(size=(samples, n)) + 1j * rng.normal(size=(samples, n))
        t = rng.normal(size=samples)
        base = self(z, t)
        worst = 0.0
        if not np.all(np.isfinite(base)):
            raise DomainError(f"{self.name} is not finite on the sample")
        if self.u_invariant:
            # a random unitary from the QR factorisation of a complex Gaussian matrix
            q, _ = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
            worst = max(worst, float(np.max(np.abs(self(z @ q.T, t) - base))))
        if self.t_parity in ("even", "odd"):
            sign = 1.0 if self.t_parity == "even" else -1.0
            worst = max(worst, float(np.max(np.abs(self(z, -t) - sign * base))))
        if worst > tol:
            raise DomainError(f"{self.name} violates its declared symmetry by {worst:.3e}")
        return worst


def _z2(z):
    return np.sum(np.abs(z) ** 2, axis=-1)


def _g1(z, t):
    return np.exp(-_z2(z) - t * t)


def _g2(z, t):
    return t * np.exp(-_z2(z) - t * t)


def _make_g3(n):
    def g3(z, t):
        z2 = _z2(z)
        return spherical_phi_array(LAM0, K0, n, z2, t) * np.exp(-(z2 + t * t) / SIGMA ** 2)

    return g3


def gallery(name, n=1):
    """G1 = e^{-|z|^2-t^2}; G2 = t G1; G3 = phi_{1,1} e^{-(|z|^2+t^2)/16}."""
    if name == "G1":
        return GalleryFunction("G1", _g1, n, True, "even", 6.0, 6.0)
    if name == "G2":
        return GalleryFunction("G2", _g2, n, True, "odd", 6.0, 6.5)
    if name == "G3":
        return GalleryFunction("G3", _make_g3(n), n, True, "none", 10.0, 22.0)
    raise DomainError(f"unknown gallery function {name!r}; choose from {GALLERY_NAMES}")


def gaussian_L_alpha(n, alpha):
    """Closed form of L_alpha applied to G1.

    With r^2 = |z|^2: L e^{-r^2-t^2} = (4r^2 - 4n + r^2 (t^2 - 1/2)) e^{-r^2-t^2}, and
    |T| e^{-t^2} = (2 - 4t D(t)) / sqrt(pi) with D the Dawson integral.
    """

    def f(z, t):
        z2 = _z2(np.asarray(z))
        t = np.asarray(t, dtype=float)
        g = np.exp(-z2 - t * t)
        lap = (4.0 * z2 - 4.0 * n + z2 * (t * t - 0.5)) * g
        abs_t = np.exp(-z2) * (2.0 - 4.0 * t * dawsn(t)) / math.sqrt(math.pi)
        return lap + alpha * abs_t

    return f
