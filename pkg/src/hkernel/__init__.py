"""Fundamental solution of L + alpha |T| on the Heisenberg group H_n.

Subpackages and modules
-----------------------
specfun     Gauss 2F1 (interior and unit circle), incomplete Beta, Laguerre, m_alpha.
heisenberg  group law, gauge, dilations, spherical functions, sphere averages.
operators   finite-difference and Fourier realisations of X_j, Y_j, T, L, |T|.
kernel      kernel density, intermediate identities, pairings, convolution.
harness     gallery, verification suites, calibration, tables and the ``hk`` CLI.
"""

from .config import DEFAULT_QUADRATURE, DEFAULT_TOLERANCES, QuadratureSpec, Tolerances
from .errors import HKError
from .heisenberg import GroupPoint, SphericalIndex, cc_norm, dilation, group_inv, group_mul
from .operators import Grid, OperatorParams, SampledField

__version__ = "0.1.0"
