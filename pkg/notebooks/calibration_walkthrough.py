# coding: utf-8

# # Does Phi_alpha invert L_alpha?
#
# We convolve gallery functions with Phi_alpha, apply L_alpha = L + alpha |T|
# with finite differences and an FFT in t, and fit L_alpha(f * Phi_alpha) = c f.
# The fitted constant is reported, not assumed.  Takes a few minutes on one core.

# %%

import math

import numpy as np

from hkernel.harness import calibrate, gallery
from hkernel.harness.gallery import gaussian_L_alpha

# %% [markdown]
# ## Sanity check with a manufactured kernel
#
# If the convolution returned G1 itself, the function L_alpha G1 would have to
# give c = 1.  This isolates the stencil and fitting machinery.

# %%

g1 = gallery("G1")


def identity_convolver(points):
    return np.array([g1(q.z[None, :], np.array([q.t]))[0] for q in points])


for alpha in (0.0, 0.5):
    f = gaussian_L_alpha(1, alpha)
    f.n = 1
    r = calibrate(f, alpha, convolver=identity_convolver, h=0.0625, t_count=256)
    print(f"alpha={alpha}: c - 1 = {r.c - 1:+.2e}")

# %% [markdown]
# ## The real kernel
#
# G1 is sampled on three columns, G3 (a windowed spherical function) on one.
# The residual is max |L_alpha u - c f| / max |f| over the sample targets.

# %%

for alpha in (0.0, 0.5):
    a = calibrate(gallery("G1"), alpha)
    b = calibrate(gallery("G3"), alpha, columns=((0.0, 0.0),))
    print(f"alpha={alpha}: c(G1)={a.c:.4f} residual {a.residual:.1e}   "
          f"c(G3)={b.c:.4f} residual {b.residual:.1e}")

# %% [markdown]
# The two functions agree on c to about 1e-3, so the constant is a property of
# the kernel rather than of the test function.  For comparison:

# %%

print("2 pi^2 =", 2 * math.pi ** 2)
