"""Exact integral homology workbench.

Computes, over the integers and with torsion:

* Hochschild homology of structure-constant algebras (truncated and general
  polynomial quotients, polynomial rings, tensor algebras, upper-triangular
  matrices),
* chromatic graph cohomology of graphs with algebra/bimodule coefficients,
* Khovanov homology of plane signed graphs, in particular of the Tait
  graphs of (2,n)-torus links,

and cross-checks the polygon/Hochschild comparison between them.
"""

__version__ = "0.1.0"

from . import algebra, exact_linalg, graph_homology, hochschild, khovanov
from .exact_linalg import HomologySummary, IntegerMatrix, smith_normal_form

__all__ = [
    "HomologySummary",
    "IntegerMatrix",
    "algebra",
    "exact_linalg",
    "graph_homology",
    "hochschild",
    "khovanov",
    "smith_normal_form",
    "__version__",
]
