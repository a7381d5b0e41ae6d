# coding: utf-8

# # A tour of the kernel of L + alpha |T| on H_1
#
# We evaluate the density of Phi_alpha two ways, look at its angular profile,
# and pair it with a Gaussian by three routes.  Run with `python notebooks/kernel_tour.py`.

# %%

import math

import numpy as np

from hkernel import GroupPoint, OperatorParams, cc_norm, dilation
from hkernel.harness import gallery
from hkernel.kernel import (density_closed, density_hypergeometric, kernel_profile,
                            pair_angular, pair_spatial, pair_spectral)

# %% [markdown]
# ## The density at a point
#
# For alpha = 0 and n = 1 the kernel is -pi / |g|^2 with the degree-two norm
# cc_norm(z, t) = (|z|^4 + 16 t^2)^{1/2}.  At (1, 0) that is -pi.

# %%

p0 = OperatorParams(1, 0.0)
g = GroupPoint([1.0], 0.0)
print("density at (1, 0):", density_closed(p0, g), " -pi =", -math.pi)

# %% [markdown]
# Turning alpha on changes the angular dependence but not the radial one.
# The closed form and the hypergeometric form agree.

# %%

p = OperatorParams(1, 0.5)
for z, t in ((1.0, 0.0), (0.5, 0.2), (0.1, 1.0)):
    g = GroupPoint([z], t)
    a, b = density_closed(p, g), density_hypergeometric(p, g)
    print(f"z={z:4.1f} t={t:4.1f}  cc_norm={cc_norm(g):7.4f}  closed={a:+.12f}  2F1={b:+.12f}")

# %% [markdown]
# ## Homogeneity
#
# Under the dilation (z, t) -> (r z, r^2 t) the density scales like r^{-2n}.

# %%

g = GroupPoint([0.3 + 0.4j], 0.7)
for r in (0.5, 2.0, 5.0):
    ratio = density_closed(p, dilation(g, r)) * r ** 2 / density_closed(p, g)
    print(f"r={r}: density(delta_r g) r^2 / density(g) = {ratio:.15f}")

# %% [markdown]
# ## Angular profile
#
# In polar variables |z|^2 + 4it = rho e^{i theta} the density is
# -4^n (n-1)! rho^{-n} Re Psi_alpha(theta).  The profile is tabulated once per
# (n, alpha) on Chebyshev panels.

# %%

theta = np.linspace(-1.5, 1.5, 7)
for alpha in (0.0, 0.5, -1.0):
    prof = kernel_profile(1, alpha)
    print(f"alpha={alpha:+.1f}", np.array2string(prof(theta), precision=5))

# %% [markdown]
# ## Pairing with a Gaussian
#
# Three independent routes compute <Phi_alpha, G1> for G1 = exp(-|z|^2 - t^2).

# %%

f = gallery("G1")
for alpha in (0.0, 0.5):
    p = OperatorParams(1, alpha)
    vals = {fn.__name__: fn(p, f).value for fn in (pair_angular, pair_spatial, pair_spectral)}
    print(f"alpha={alpha}:", {k: round(v, 9) for k, v in vals.items()})
