"""
Certifying identities between rational expressions.

An identity is given as a ``sides`` callable taking a point (symbol name to
value) and returning the two sides, each a scalar or a tuple. In exact mode
the callable is fed the generic point, so the sides are RationalFunctions and
their difference is reduced to canonical form. In randomized mode it is fed
random rational points; a mismatch is a definitive witness, agreement at
every trial is evidence with a Schwartz-Zippel failure bound.
"""

import logging
import math
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, Optional, Sequence, Tuple

from config.workbench import CheckMode, SamplingConfig
from ..utils.error_handler import DenominatorVanishes
from .field import FunctionField
from .linear import is_zero
from .rational_function import RationalFunction

logger = logging.getLogger(__name__)

Point = Dict[str, Any]
Sides = Callable[[Point], Tuple[Any, Any]]


class PointSampler:
    """Seeded random rational points with numerators and denominators in [low, high]."""

    def __init__(self, symbols: Sequence[str], seed: int = 0, sampling: Optional[SamplingConfig] = None):
        self.symbols = tuple(symbols)
        self.sampling = sampling or SamplingConfig()
        self.rng = random.Random(seed)

    def sample(self) -> Dict[str, Fraction]:
        low, high = self.sampling.low, self.sampling.high
        return {
            name: Fraction(self.rng.randint(low, high), self._denominator(low, high))
            for name in self.symbols
        }

    def _denominator(self, low: int, high: int) -> int:
        if low == high == 0:
            raise ValueError("sampling range [0, 0] has no usable denominator")
        while True:
            value = self.rng.randint(low, high)
            if value:
                return value


@dataclass
class IdentityResult:
    """Outcome of one identity check, with a witness when it fails."""
    holds: bool
    mode: CheckMode
    trials: int = 0
    degree: int = 0
    per_trial_bound: Optional[float] = None
    failure_bound: Optional[float] = None
    log10_failure_bound: Optional[float] = None
    witness: Optional[Dict[str, Fraction]] = None
    lhs: Optional[Tuple[Any, ...]] = None
    rhs: Optional[Tuple[Any, ...]] = None
    rejected: int = 0

    def __bool__(self) -> bool:
        return self.holds


@dataclass
class SignedResult:
    """Which of lhs == rhs or lhs == -rhs holds, if either."""
    sign: Optional[int]
    evidence: Optional[IdentityResult] = None


def as_tuple(value) -> Tuple[Any, ...]:
    return tuple(value) if isinstance(value, (tuple, list)) else (value,)


def _negated(values: Tuple[Any, ...]) -> Tuple[Any, ...]:
    return tuple(-v for v in values)


def _agree(lhs: Tuple[Any, ...], rhs: Tuple[Any, ...]) -> bool:
    return len(lhs) == len(rhs) and all(is_zero(l - r) for l, r in zip(lhs, rhs))


@dataclass
class Certifier:
    """Runs identity checks in one mode with one seed."""
    field: FunctionField
    mode: CheckMode = CheckMode.EXACT
    trials: int = 200
    seed: int = 0
    sampling: SamplingConfig = None
    witness_attempts: int = 50

    def __post_init__(self):
        if self.sampling is None:
            self.sampling = SamplingConfig()

    def with_mode(self, mode: CheckMode) -> 'Certifier':
        return Certifier(self.field, mode, self.trials, self.seed, self.sampling, self.witness_attempts)

    # -- public entry points -------------------------------------------------

    def certify(self, sides: Sides, degree: int = 0) -> IdentityResult:
        """Check lhs == rhs."""
        return self.certify_signed(sides, degree, signs=(1,)).evidence

    def certify_signed(self, sides: Sides, degree: int = 0, signs: Sequence[int] = (1, -1)) -> SignedResult:
        """Find the sign s in ``signs`` with lhs == s * rhs."""
        if self.mode is CheckMode.EXACT:
            return self._exact(sides, signs)
        return self._randomized(sides, degree, signs)

    # -- exact mode ------------------------------------------------------------

    def _exact(self, sides: Sides, signs: Sequence[int]) -> SignedResult:
        lhs, rhs = sides(self.field.generic_point())
        lhs, rhs = as_tuple(lhs), as_tuple(rhs)
        for sign in signs:
            if _agree(lhs, rhs if sign == 1 else _negated(rhs)):
                return SignedResult(sign, IdentityResult(True, CheckMode.EXACT))
        return SignedResult(None, self._witness(sides, signs))

    def _witness(self, sides: Sides, signs: Sequence[int]) -> IdentityResult:
        sampler = PointSampler(self.field.symbols, self.seed, self.sampling)
        for attempt in range(self.witness_attempts):
            point, lhs, rhs, _ = self._draw(sampler, sides)
            if not any(_agree(lhs, rhs if s == 1 else _negated(rhs)) for s in signs):
                return IdentityResult(False, CheckMode.EXACT, trials=attempt + 1, witness=point, lhs=lhs, rhs=rhs)
        logger.warning("⚠️ Identity fails symbolically but no witness point was found")
        return IdentityResult(False, CheckMode.EXACT, trials=self.witness_attempts)

    # -- randomized mode ---------------------------------------------------------

    def _randomized(self, sides: Sides, degree: int, signs: Sequence[int]) -> SignedResult:
        sampler = PointSampler(self.field.symbols, self.seed, self.sampling)
        candidates = list(signs)
        rejected = 0
        for trial in range(self.trials):
            point, lhs, rhs, skipped = self._draw(sampler, sides)
            rejected += skipped
            candidates = [s for s in candidates if _agree(lhs, rhs if s == 1 else _negated(rhs))]
            if not candidates:
                evidence = IdentityResult(False, CheckMode.RANDOMIZED, trials=trial + 1, degree=degree,
                                          witness=point, lhs=lhs, rhs=rhs, rejected=rejected)
                return SignedResult(None, evidence)

        per_trial = min(1.0, degree / self.sampling.sample_space) if degree else None
        evidence = IdentityResult(
            True, CheckMode.RANDOMIZED, trials=self.trials, degree=degree,
            per_trial_bound=per_trial, rejected=rejected,
        )
        if per_trial is not None:
            evidence.log10_failure_bound = self.trials * math.log10(per_trial)
            # underflow clamps to the smallest normal float
            evidence.failure_bound = max(per_trial ** self.trials, sys.float_info.min)
        return SignedResult(candidates[0], evidence)

    def _draw(self, sampler: PointSampler, sides: Sides):
        """Sample until both sides are defined; points on a pole locus are rejected."""
        last_error = None
        for attempt in range(self.sampling.max_rejections):
            point = sampler.sample()
            try:
                lhs, rhs = sides(point)
            except DenominatorVanishes as exc:
                last_error = exc
                continue
            return point, as_tuple(lhs), as_tuple(rhs), attempt
        raise DenominatorVanishes(
            f"every sampled point ({self.sampling.max_rejections} tries); last: {last_error.locus}",
        )


# Degree rules for randomized checks. A side of an identity is a tuple of
# rational functions whose numerators and denominators all have total degree
# at most its "side degree". Two sides of degrees l and r differ exactly where
# num(lhs) den(rhs) - num(rhs) den(lhs) is nonzero, a polynomial of degree at
# most l + r. Sampled numerators are uniform on a set of size S for every
# fixed denominator, so a nonzero difference survives one trial with
# probability at most (l + r) / S.


def side_degree(*functions: RationalFunction) -> int:
    """Largest numerator or denominator degree among the functions."""
    return max((f.side_degree() for f in functions), default=0)


def composed_degree(outer: int, inner: int, arity: int) -> int:
    """Side degree of f o g, f of degree ``outer`` in ``arity`` substituted symbols.

    Over the common denominator prod(Q_i)**d a monomial of degree d becomes
    prod(P_i**e_i * Q_i**(d - e_i)), of degree at most arity * d * inner, and
    unsubstituted symbols add at most d more.
    """
    return outer * (arity * inner + 1)


def jacobian_row_degree(component: int) -> int:
    """Side degree of the partial derivatives of one component over their shared denominator."""
    return 2 * component


def determinant_degree(component: int, size: int) -> int:
    """Side degree of det(Dm): rows share denominators, so degrees add over rows."""
    return size * jacobian_row_degree(component)


def degree_bound(lhs: int, rhs: int = 0) -> int:
    """Degree of the cleared difference of two sides of the given side degrees."""
    return max(1, lhs + rhs)


def rf_equal(f: RationalFunction, g: RationalFunction, mode: CheckMode = CheckMode.EXACT,
             seed: int = 0, trials: int = 200, sampling: Optional[SamplingConfig] = None) -> IdentityResult:
    """Decide f == g exactly, or probabilistically with a witness on failure."""
    certifier = Certifier(f.field, mode, trials, seed, sampling)
    return certifier.certify(lambda p: (f.at(p), g.at(p)), degree=degree_bound(f.side_degree(), g.side_degree()))


@dataclass
class CheckOutcome:
    """A named verdict (``yes``, ``invariant``, ``minus`` ...) with its evidence."""
    status: str
    positive: bool
    evidence: Optional[IdentityResult] = None
    sign: Optional[int] = None
    detail: str = ''

    @classmethod
    def from_identity(cls, result: IdentityResult, yes: str, no: str, detail: str = '') -> 'CheckOutcome':
        return cls(yes if result.holds else no, result.holds, result, detail=detail)

    @classmethod
    def from_sign(cls, signed: SignedResult, expected: Optional[int] = None, detail: str = '') -> 'CheckOutcome':
        status = {1: 'plus', -1: 'minus'}.get(signed.sign, 'neither')
        positive = signed.sign is not None if expected is None else signed.sign == expected
        return cls(status, positive, signed.evidence, sign=signed.sign, detail=detail)
