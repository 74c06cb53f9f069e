"""Graph homotopy moves on clique complexes, with exact homology as the referee."""

from .algebra import HomologyProfile, euler_characteristic, homology, smith_normal_form
from .complex import SimplicialComplex, barycentric, clique_complex, cyl, link
from .graph import Graph, random_graph
from .itransform import apply_move, check_precondition, reduce_via_moves, verify_trace
from .reduction import Budget, Verdict, certify_contractible, dismantle, s_reduce
from .trace import IMove, ITrace

__version__ = "0.1.0"
