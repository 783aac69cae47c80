"""Steady states, spin squeezing and entanglement of two atoms driven by a
laser and a squeezed vacuum."""
from .analytic import entangled_eigenstates, steady_coherent, steady_squeezed
from .dynamics import SystemParams, build_liouvillian, propagate, steady_state
from .measures import negativity, partial_transpose, relation_check, spin_moments, squeezing_parameters
from .model import DickeState, collective_operators, dicke_to_product, expectation

__version__ = "0.1.0"
