"""Effective-cone polyhedrality toolkit for blown-up toric surfaces.

Given a lattice polygon whose associated toric surface carries a unique
anticanonical-type curve through the torus identity, this package decides
per prime (and in characteristic zero) whether the pseudo-effective cone
of the blown-up surface is polyhedral.  The pipeline: exact lattice
geometry, fan resolutions and intersection theory, linear systems with an
assigned base-point multiplicity, elliptic-curve group arithmetic on the
boundary data, and the root-lattice membership test on the minimal model.
"""

import importlib

__all__ = ["lattice", "laurent", "toric", "linsys", "elliptic", "pairs", "cli"]

__version__ = "0.1.0"


def __getattr__(name):
    if name in __all__:
        return importlib.import_module(f".{name}", __name__)
    raise AttributeError(f"module 'effcone' has no attribute {name!r}")
