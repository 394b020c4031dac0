"""Computational toolkit for two-generator unipotent subgroups of PU(2,1).

Subpackages:

* :mod:`pu21.core` -- Siegel model, Cygan metric, isometry classification
* :mod:`pu21.moduli` -- the parameter square, generators, region polynomials
* :mod:`pu21.spheres` -- Cygan / isometric spheres and their intersections
* :mod:`pu21.ford` -- the Ford polyhedron and words in Z3 * Z3
* :mod:`pu21.limit` -- the limit group and the Whitehead-link octahedron
* :mod:`pu21.cli` -- command-line interface (``pu21``)
"""

__version__ = "0.1.0"

from . import core, moduli, spheres, ford, limit  # noqa: F401
