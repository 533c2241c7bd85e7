"""Finite-lattice congruence laboratory.

Congruence lattices, principal congruences, distributive lattices via
their join-irreducibles, isomorph-free enumeration, the frame-and-gadget
construction of lattices with a prescribed ordered set of principal
congruences, and bounded witness search for candidate subsets.
"""

from .errors import PrincLabError, InvalidInput
from .order import Poset, Lattice, validate_lattice
from .congruence import Congruence, congruence_lattice, principal_congruence

__version__ = "0.1.0"
