"""
Small dense linear algebra over Fractions or rational functions.

Both routines only use ring operations, so they work entry-wise on
Fractions at a sampled point or on RationalFunctions symbolically.
"""

import logging
from fractions import Fraction
from typing import Any, List, Sequence

from ..utils.error_handler import SingularSystem
from .rational_function import RationalFunction

logger = logging.getLogger(__name__)


def is_zero(value) -> bool:
    if isinstance(value, RationalFunction):
        return value.is_zero
    return value == 0


def _weight(value) -> int:
    if isinstance(value, RationalFunction):
        return value.cleared_degree()
    return 0


def _lift(value):
    return Fraction(value) if isinstance(value, int) else value


def determinant(matrix: Sequence[Sequence[Any]]):
    """Determinant by Laplace expansion along the sparsest row."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    if n == 1:
        return matrix[0][0]
    if n == 2:
        return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]

    row = min(range(n), key=lambda i: sum(1 for v in matrix[i] if not is_zero(v)))
    total = 0
    for col, entry in enumerate(matrix[row]):
        if is_zero(entry):
            continue
        minor = [r[:col] + r[col + 1:] for i, r in enumerate(matrix) if i != row]
        term = entry * determinant(minor)
        total = total + term if (row + col) % 2 == 0 else total - term
    return total


def solve_linear(matrix: Sequence[Sequence[Any]], rhs: Sequence[Any]) -> List[Any]:
    """Solve matrix * s = rhs by Gaussian elimination; raises SingularSystem."""
    n = len(matrix)
    if len(rhs) != n or any(len(row) != n for row in matrix):
        raise ValueError("solve_linear needs a square system")
    rows = [[_lift(v) for v in row] + [_lift(b)] for row, b in zip(matrix, rhs)]

    for col in range(n):
        candidates = [i for i in range(col, n) if not is_zero(rows[i][col])]
        if not candidates:
            raise SingularSystem(col)
        pivot = min(candidates, key=lambda i: _weight(rows[i][col]))
        rows[col], rows[pivot] = rows[pivot], rows[col]
        lead = rows[col][col]
        for i in range(col + 1, n):
            if is_zero(rows[i][col]):
                continue
            ratio = rows[i][col] / lead
            rows[i] = [a - ratio * b if j >= col else a for j, (a, b) in enumerate(zip(rows[i], rows[col]))]

    solution: List[Any] = [0] * n
    for i in reversed(range(n)):
        acc = rows[i][n]
        for j in range(i + 1, n):
            if not is_zero(rows[i][j]):
                acc = acc - rows[i][j] * solution[j]
        solution[i] = acc / rows[i][i]
    logger.debug(f"✅ Solved {n}x{n} linear system")
    return solution
