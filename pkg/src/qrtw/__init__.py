"""
QRT Workbench

Exact verification of integrable maps: rational function arithmetic,
Jacobians and forms, QRT constructions, a catalogue of worked examples and
a suite that checks every identity they rely on.
"""

__version__ = "1.0.0"
