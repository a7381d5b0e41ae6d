"""Normalising constants of the kernel."""

import math
from dataclasses import dataclass

from ..errors import DomainError
from ..heisenberg import sphere_area


@dataclass(frozen=True)
class KernelConstants:
    """beta_n = 4^n (n-1)!, alpha_k = (-1)^k binom(k+n-1, n-1),
    beta_hat = |S^{2n-1}| beta_n / 8, and the calibration factor ``global_scale``."""

    n: int
    global_scale: float = 1.0

    def __post_init__(self):
        if self.n < 1 or int(self.n) != self.n:
            raise DomainError("n must be a positive integer")

    @property
    def beta_n(self):
        return 4.0 ** self.n * math.factorial(self.n - 1)

    @property
    def beta_hat(self):
        return sphere_area(self.n) * self.beta_n / 8.0

    def alpha_k(self, k):
        return (-1) ** k * math.comb(k + self.n - 1, self.n - 1)

    def alpha_seq(self, count):
        return [self.alpha_k(k) for k in range(count)]
