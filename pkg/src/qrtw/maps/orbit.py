"""
Orbit iteration in exact rational or floating-point arithmetic.
"""

import csv
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Union

from dataclasses_json import dataclass_json

from config.workbench import OrbitConfig
from ..algebra import RationalFunction
from ..utils.error_handler import BitCapExceeded, DenominatorVanishes
from ..utils.rationals import bit_length, format_rational
from .rational_map import RationalMap

logger = logging.getLogger(__name__)


@dataclass_json
@dataclass
class OrbitRecord:
    """Points of an orbit and the invariant values along it."""
    map_name: str
    variables: List[str]
    invariant_names: List[str]
    arithmetic: str
    tolerance: Optional[float] = None
    points: List[List[Any]] = field(default_factory=list)
    invariant_values: List[List[Any]] = field(default_factory=list)
    drift_steps: List[int] = field(default_factory=list)
    max_bits: int = 0

    @property
    def steps(self) -> int:
        return len(self.points) - 1

    @property
    def invariants_constant(self) -> bool:
        if self.arithmetic == 'exact':
            return all(values == self.invariant_values[0] for values in self.invariant_values)
        return not self.drift_steps

    def rows(self) -> List[List[str]]:
        """One row per step: coordinates then invariant values."""
        render = format_rational if self.arithmetic == 'exact' else repr
        return [
            [render(v) for v in point] + [render(v) for v in values]
            for point, values in zip(self.points, self.invariant_values)
        ]

    def write_csv(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', newline='', encoding='utf-8') as handle:
            writer = csv.writer(handle)
            writer.writerow(self.variables + self.invariant_names)
            writer.writerows(self.rows())
        logger.info(f"💾 Orbit written to {path}")
        return path


def iterate_orbit(m: RationalMap, start: Mapping[str, Any], steps: Optional[int] = None,
                  invariants: Optional[Mapping[str, RationalFunction]] = None,
                  arithmetic: str = 'exact', config: Optional[OrbitConfig] = None,
                  parameters: Optional[Mapping[str, Any]] = None) -> OrbitRecord:
    """Iterate m from ``start``; raises DenominatorVanishes or BitCapExceeded.

    ``start`` holds the phase coordinates and ``parameters`` the remaining
    symbols. In float mode an invariant drifting by more than the tolerance
    is flagged in ``drift_steps`` rather than raised.
    """
    if arithmetic not in ('exact', 'float'):
        raise ValueError(f"arithmetic must be 'exact' or 'float', got {arithmetic!r}")
    config = config or OrbitConfig()
    steps = config.steps if steps is None else steps
    invariants = dict(invariants or {})
    exact = arithmetic == 'exact'
    convert = Fraction if exact else float

    fixed = {name: convert(value) for name, value in (parameters or {}).items()}
    point = {name: convert(start[name]) for name in m.variables}
    record = OrbitRecord(
        map_name=m.name,
        variables=list(m.variables),
        invariant_names=list(invariants),
        arithmetic=arithmetic,
        tolerance=None if exact else config.float_tolerance,
    )

    def evaluate(f: RationalFunction, values: Dict[str, Any]):
        return f.evaluate({**fixed, **values}, exact=exact)

    def record_point(step: int, values: Dict[str, Any]):
        coordinates = [values[v] for v in m.variables]
        levels = [evaluate(h, values) for h in invariants.values()]
        if exact:
            bits = max((bit_length(v) for v in coordinates + levels), default=0)
            if bits > config.bit_cap:
                raise BitCapExceeded(step, bits, config.bit_cap)
            record.max_bits = max(record.max_bits, bits)
        elif record.invariant_values:
            for initial, current in zip(record.invariant_values[0], levels):
                if abs(current - initial) > config.float_tolerance * max(1.0, abs(initial)):
                    record.drift_steps.append(step)
                    logger.warning(f"⚠️ Invariant drift at step {step}: {initial!r} -> {current!r}")
                    break
        record.points.append(coordinates)
        record.invariant_values.append(levels)

    record_point(0, point)
    for step in range(1, steps + 1):
        try:
            image = dict(zip(m.targets, [evaluate(c, point) for c in m.components]))
            record_point(step, image)
        except DenominatorVanishes as exc:
            logger.error(f"❌ Orbit of {m.name} hits the singular locus at step {step}")
            raise DenominatorVanishes(exc.locus, {**fixed, **point}, exc.component or m.name, step) from exc
        point = image

    logger.info(f"✅ {steps} steps of {m.name} in {arithmetic} arithmetic (max {record.max_bits} bits)")
    return record
