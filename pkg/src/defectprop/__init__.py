"""
Quantum particle in a dispiration medium.

Exact spectrum, eigenfunctions and Euclidean propagator of a charged
particle near a screw dislocation combined with a wedge disclination,
with an Aharonov-Bohm flux, a uniform magnetic field, an oscillator trap
and an inverse-square potential; plus the numerical oracles that check
every closed form.
"""

from .defect_geometry import DefectParams
from .spectrum import Couplings
from .spectrum import QuantumNumbers

__all__ = ["Couplings", "DefectParams", "QuantumNumbers"]
