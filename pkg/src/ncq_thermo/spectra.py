"""Energy spectrum of the perturbed oscillator in non-commutative space.

Units: hbar = k_B = m = 1, so frequencies, energies and temperatures share
one unit. To first order in the deformation ``gamma`` the levels are

    E_n = omega * (A n + B n^2),  A = 1 + gamma/2,  B = gamma/2

and the ground level sits at zero.
"""
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

PERTURBATIVE_GAMMA_LIMIT = 0.5


class PerturbativeValidityWarning(UserWarning):
    """gamma is large enough that the first-order spectrum is suspect."""


@dataclass(frozen=True)
class SubstanceParams:
    omega: float
    gamma: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.omega) or self.omega <= 0:
            raise ValidationError(f"omega must be positive and finite, got {self.omega!r}")
        if not math.isfinite(self.gamma) or self.gamma < 0:
            raise ValidationError(f"gamma must be nonnegative and finite, got {self.gamma!r}")
        if self.gamma > PERTURBATIVE_GAMMA_LIMIT:
            warnings.warn(
                f"gamma={self.gamma} exceeds {PERTURBATIVE_GAMMA_LIMIT}; "
                "first-order spectrum may be inaccurate",
                PerturbativeValidityWarning,
                stacklevel=3,
            )


@dataclass(frozen=True)
class EigenstateCorrection:
    n: int
    c_minus4: float
    c_plus4: float


def spectrum_coefficients(params):
    """Return ``(A, B)`` for the level formula ``omega * (A n + B n^2)``."""
    return 1.0 + params.gamma / 2.0, params.gamma / 2.0


def energy_level(params, n):
    if n < 0:
        raise ValidationError(f"level index must be nonnegative, got {n}")
    a, b = spectrum_coefficients(params)
    return params.omega * (a * n + b * n * n)


def energy_levels(params, n_max):
    """Vectorised ``energy_level`` for ``n = 0 .. n_max`` inclusive."""
    n = np.arange(n_max + 1, dtype=float)
    a, b = spectrum_coefficients(params)
    return params.omega * (a * n + b * n * n)


def pochhammer_rising(x, k):
    """Rising factorial x (x+1) ... (x+k-1); 1 when k == 0."""
    if k < 0:
        raise ValidationError(f"k must be nonnegative, got {k}")
    out = 1
    for j in range(k):
        out *= x + j
    return out


def eigenstate_correction(params, n):
    """First-order admixture of levels n-4 and n+4 into eigenstate n."""
    if n < 0:
        raise ValidationError(f"level index must be nonnegative, got {n}")
    scale = params.gamma / 16.0
    # (n-3)^(4) contains a zero factor for n < 4, and level n-4 does not exist
    down = -scale * math.sqrt(pochhammer_rising(n - 3, 4)) if n >= 4 else 0.0
    up = scale * math.sqrt(pochhammer_rising(n + 1, 4))
    return EigenstateCorrection(n=n, c_minus4=down, c_plus4=up)
