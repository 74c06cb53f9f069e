"""Built-in corpus of graphs and complexes with their known integral homology.

Expected profiles are unreduced and written out by hand from the standard
topology of each space (point, circle, 2-sphere, torus, RP^2, ...); the
test-suite recomputes every one of them.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Union

from .algebra import HomologyProfile
from .complex import SimplicialComplex, clique_complex, simplex, simplex_boundary
from .graph import Graph

POINT = HomologyProfile((1,))
CIRCLE = HomologyProfile((1, 1))
SPHERE2 = HomologyProfile((1, 0, 1))


@dataclass(frozen=True)
class Fixture:
    name: str
    payload: Union[Graph, SimplicialComplex]
    expected: HomologyProfile
    notes: str = ""

    @property
    def is_graph(self) -> bool:
        return isinstance(self.payload, Graph)

    def complex(self) -> SimplicialComplex:
        return clique_complex(self.payload) if self.is_graph else self.payload


def octahedron_graph() -> Graph:
    """K_{2,2,2}: vertices 0..5, the three non-edges are {0,1}, {2,3}, {4,5}."""
    return Graph.from_edges(
        range(6), [(a, b) for a, b in combinations(range(6), 2) if a // 2 != b // 2]
    )


def torus7() -> SimplicialComplex:
    """Möbius–Császár 7-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7."""
    return SimplicialComplex(
        [[i, (i + 1) % 7, (i + 3) % 7] for i in range(7)]
        + [[i, (i + 2) % 7, (i + 3) % 7] for i in range(7)]
    )


def rp2_6() -> SimplicialComplex:
    """6-vertex real projective plane (hemi-icosahedron)."""
    return SimplicialComplex([
        [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6],
        [2, 3, 5], [3, 4, 6], [2, 4, 5], [3, 5, 6], [2, 4, 6],
    ])


def dunce_hat8() -> SimplicialComplex:
    """8-vertex dunce hat: a 9-gon with boundary 1 2 3 1 2 3 1 3 2 and interior 4..8.

    Edges 12, 23, 13 form the glued loop and lie in three triangles each;
    every other edge lies in two, so there is no free face.  Produced by
    scripts/find_dunce_hat.py.
    """
    return SimplicialComplex([
        [1, 2, 4], [1, 2, 5], [1, 2, 7], [1, 3, 6], [1, 3, 7], [1, 3, 8],
        [1, 4, 5], [1, 6, 8], [2, 3, 4], [2, 3, 6], [2, 3, 8], [2, 5, 6],
        [2, 7, 8], [3, 4, 7], [4, 5, 6], [4, 6, 7], [6, 7, 8],
    ])


def path_complex(n: int) -> SimplicialComplex:
    """1-dimensional path on vertices 0..n-1."""
    if n == 1:
        return SimplicialComplex([[0]])
    return SimplicialComplex([[i, i + 1] for i in range(n - 1)])


def _graph_fixtures() -> list[Fixture]:
    out = [Fixture("k1", Graph.empty(1), POINT, "base of the contractible class")]
    for n in (2, 3, 4, 5):
        out.append(Fixture(f"p{n}", Graph.path(n), POINT, "path, dismantlable"))
    for n in range(4, 9):
        out.append(Fixture(f"c{n}", Graph.cycle(n), CIRCLE, "cycle, triangle-free"))
    for n in (4, 5, 6):
        out.append(Fixture(f"w{n}", Graph.wheel(n), POINT, "wheel, apex dominates the rim"))
    out.append(Fixture("k4", Graph.complete(4), POINT))
    out.append(Fixture("octahedron", octahedron_graph(), SPHERE2, "K_{2,2,2}; clique complex is S^2"))
    out.append(Fixture("two_points", Graph.empty(2), HomologyProfile((2,)), "disconnected"))
    return out


def _complex_fixtures() -> list[Fixture]:
    out = [
        Fixture("point", simplex(0), POINT),
        Fixture("edge", simplex(1), POINT),
        Fixture("triangle", simplex(2), POINT, "full 2-simplex"),
        Fixture("hollow_triangle", simplex_boundary(2), CIRCLE),
        Fixture("delta3_boundary", simplex_boundary(3), SPHERE2),
        Fixture("path3", path_complex(3), POINT),
        Fixture("path4", path_complex(4), POINT),
        Fixture("octahedron_complex", clique_complex(octahedron_graph()), SPHERE2),
        Fixture("torus7", torus7(), HomologyProfile((1, 2, 1))),
        Fixture("rp2_6", rp2_6(), HomologyProfile((1, 0, 0), ((1, 2),))),
        Fixture("dunce_hat8", dunce_hat8(), HomologyProfile((1, 0, 0)),
                "contractible, no free face"),
    ]
    for n in range(3, 6):
        out.append(Fixture(f"delta{n}", simplex(n), POINT))
    return out


def all_fixtures() -> list[Fixture]:
    return _graph_fixtures() + _complex_fixtures()


def graph_fixtures() -> list[Fixture]:
    return _graph_fixtures()


def complex_fixtures() -> list[Fixture]:
    return _complex_fixtures()


def get(name: str) -> Fixture:
    for fx in all_fixtures():
        if fx.name == name:
            return fx
    raise KeyError(f"no fixture named {name!r}")
