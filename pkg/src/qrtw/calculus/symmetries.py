"""
Symmetry fields of a family of invariants.

With m invariants in n variables and n - m chosen free coordinates, the
field sigma_f has a 1 in slot f, 0 in the other free slots, and solved slots
fixed by grad(h_j) . sigma_f = 0 for every invariant.
"""

import logging
from typing import List, Sequence

from ..algebra import RationalFunction, solve_linear
from .derivatives import VectorField, partial

logger = logging.getLogger(__name__)


def symmetry_basis(invariants: Sequence[RationalFunction], variables: Sequence[str],
                   free: Sequence[str]) -> List[VectorField]:
    """One field per free coordinate; raises SingularSystem when the solved block degenerates."""
    variables = tuple(variables)
    solved = [v for v in variables if v not in free]
    if len(solved) != len(invariants):
        raise ValueError(f"{len(invariants)} invariants need {len(invariants)} solved coordinates, got {solved}")
    matrix = [[partial(h, s) for s in solved] for h in invariants]
    field = invariants[0].field

    basis = []
    for f in free:
        rhs = [-partial(h, f) for h in invariants]
        values = dict(zip(solved, solve_linear(matrix, rhs)))
        components = []
        for v in variables:
            if v == f:
                components.append(field.one)
            elif v in values:
                components.append(field.coerce(values[v]))
            else:
                components.append(field.zero)
        basis.append(VectorField(variables, tuple(components), name=f"S_{f}"))
    logger.debug(f"✅ Symmetry basis with {len(basis)} fields over free {list(free)}")
    return basis


def basis_combination(X: VectorField, basis: Sequence[VectorField], free: Sequence[str]) -> VectorField:
    """sum_f X_f sigma_f, which equals X when X annihilates every invariant."""
    total = [X.field.zero] * len(X.variables)
    for f, sigma in zip(free, basis):
        weight = X.components[X.variables.index(f)]
        total = [t + weight * c for t, c in zip(total, sigma.components)]
    return VectorField(X.variables, tuple(total), name=f"{X.name}_basis")
