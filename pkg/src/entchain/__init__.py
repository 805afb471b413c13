"""Translation-invariant qubit chains with maximal nearest-neighbour entanglement."""

__version__ = "0.1.0"
