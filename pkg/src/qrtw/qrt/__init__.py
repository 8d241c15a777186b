"""
QRT

Horizontal and vertical switches of a biquadratic invariant, the QRT map
built from them and a test of which switch order a given map realizes.
"""

from .switch import BiquadraticInvariant, validate_biquadratic, switch, build_qrt, qrt_order

__all__ = ['BiquadraticInvariant', 'validate_biquadratic', 'switch', 'build_qrt', 'qrt_order']
