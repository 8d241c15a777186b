"""
Registry

The catalogue of worked examples: formula files, the YAML catalogue that
ties their names together, and the loader that turns both into bundles.
"""

from .bundle import (
    SYMBOLIC, ParameterAssignment, Identity, Expectation, Reduction, Contraction, CoordinateChart,
    Branch, ReducedMapEntry, ReducedSystem, TwoFormData, SymmetryTarget, ExampleBundle
)
from .loader import (
    ExampleSummary, load_catalogue, catalogue_entry, list_examples, load_formulas,
    build_bundle, instantiate, reduced
)

__all__ = [
    'SYMBOLIC', 'ParameterAssignment', 'Identity', 'Expectation', 'Reduction', 'Contraction',
    'CoordinateChart', 'Branch', 'ReducedMapEntry', 'ReducedSystem', 'TwoFormData',
    'SymmetryTarget', 'ExampleBundle',
    'ExampleSummary', 'load_catalogue', 'catalogue_entry', 'list_examples', 'load_formulas',
    'build_bundle', 'instantiate', 'reduced'
]
