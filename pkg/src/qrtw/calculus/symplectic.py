"""
Planar symplectic structures.

A reduced map m of the (u, v) plane preserves du^dv/sigma exactly when
det(Dm) * sigma / (sigma o m) is identically 1; it is anti-symplectic when
the ratio is identically -1.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

from ..algebra import (
    CheckOutcome, Certifier, RationalFunction, composed_degree, degree_bound, determinant_degree, side_degree
)
from .derivatives import jacobian
from .forms import WeightedVolumeForm

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SymplecticDensity:
    """The 2-form du^dv / sigma on the plane with coordinates (u, v)."""
    variables: Tuple[str, str]
    sigma: RationalFunction

    def __post_init__(self):
        object.__setattr__(self, 'variables', tuple(self.variables))
        if len(self.variables) != 2:
            raise ValueError("a planar symplectic density needs exactly two coordinates")

    @property
    def form(self) -> WeightedVolumeForm:
        return WeightedVolumeForm.volume(self.variables, self.sigma)


def symplectic_check_2d(m, omega: SymplecticDensity, certifier: Optional[Certifier] = None) -> CheckOutcome:
    """preserved, anti-preserved or violated (with a witness)."""
    if tuple(m.variables) != omega.variables or not m.is_endomorphism:
        raise ValueError(f"{m.name} is not a map of the ({', '.join(omega.variables)}) plane")
    certifier = certifier or Certifier(m.field)
    jac = jacobian(m)

    def sides(point):
        return jac.determinant_at(point) * omega.sigma.at(point), omega.sigma.at(m.apply(point))

    s, t = side_degree(omega.sigma), side_degree(*m.components)
    signed = certifier.certify_signed(sides, degree_bound(determinant_degree(t, 2) + s, composed_degree(s, t, 2)))
    status = {1: 'preserved', -1: 'anti-preserved'}.get(signed.sign, 'violated')
    logger.debug(f"🧭 {m.name} with sigma = {omega.sigma}: {status}")
    return CheckOutcome(status, signed.sign is not None, signed.evidence, sign=signed.sign)
