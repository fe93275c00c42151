"""Exact computations for two-dimensional topological theories.

Subpackages and modules:

- ``exact``: rationals, sparse polynomials, fraction-free linear algebra, truncated series
- ``symfun``: partitions, Schur and supersymmetric Schur functions
- ``theory``: generating-function theories, Hankel data, rational detection
- ``cobord``: cobordisms into k circles, gluing, Gram matrices, state-space reports
- ``foam``: coloring-sum evaluations of theta-foams, overlapping foams and the Day foam
- ``day``: annulus Laurent expansions and Toeplitz determinants
- ``cli``: the ``tqft2d`` command
"""

from .errors import TQFTError

__version__ = "0.1.0"
__all__ = ["TQFTError", "__version__"]
