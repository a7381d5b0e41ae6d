"""Fundamental solution of L + alpha |T|: density, identities, pairings, convolution."""

from .constants import KernelConstants
from .density import (density_closed, density_closed_array, density_hypergeometric,
                      density_hypergeometric_array, folland_density, polar)
from .identities import (ContourResult, closed_rhs, contour_I, laguerre_transform,
                         psi_r_alpha, psi_series)
from .profile import AngularProfile, KernelProfile, kernel_profile, re_psi
from .pairing import (PairingResult, angular_weight, integrability_check, pair_angular,
                      pair_spatial, pair_spectral, sphere_average)
from .convolution import convolve, cutoff, field_from_samples
