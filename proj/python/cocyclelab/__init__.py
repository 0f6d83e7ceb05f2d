"""Cocycles of affine isometric group actions.

Exact free-group calculus (expansion coefficients, near-kernel pairs, tree
and wall cocycles), spectral growth of Z-actions (atomic, density, and shift
measures, the rotation-product isometry, the nested-interval singular
measure), and continuous one-parameter extensions of diagonal Z-cocycles.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
