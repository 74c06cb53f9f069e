"""Finite simple graphs: neighborhoods, induced subgraphs, edits, hashing.

Vertex ids are small non-negative integers.  They need not be contiguous
(deleting a vertex keeps the remaining ids), but ``induced`` re-maps densely
and records the original identity in ``labels``.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Iterable, Mapping, Union


class GraphError(ValueError):
    """Raised when an operation references vertices or edges that do not exist."""


class Graph:
    """Immutable finite simple graph stored as adjacency sets.

    Equality and hashing look only at the labeled structure (vertex ids and
    edges); ``labels`` is carried metadata.
    """

    __slots__ = ("_adj", "labels", "_key")

    def __init__(
        self,
        adjacency: Mapping[int, Iterable[int]],
        labels: Mapping[int, Hashable] | None = None,
    ):
        adj = {int(v): frozenset(nbrs) for v, nbrs in adjacency.items()}
        for v, nbrs in adj.items():
            if v < 0:
                raise GraphError(f"negative vertex id {v}")
            if v in nbrs:
                raise GraphError(f"self-loop at vertex {v}")
            for w in nbrs:
                if w not in adj:
                    raise GraphError(f"edge {v}-{w} leaves the vertex set")
                if v not in adj[w]:
                    raise GraphError(f"asymmetric adjacency between {v} and {w}")
        self._adj = dict(sorted(adj.items()))
        self.labels = dict(labels) if labels else {}
        self._key = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_edges(
        cls,
        vertices: Iterable[int],
        edges: Iterable[tuple[int, int]],
        labels: Mapping[int, Hashable] | None = None,
    ) -> "Graph":
        adj: dict[int, set[int]] = {int(v): set() for v in vertices}
        for u, v in edges:
            if u not in adj or v not in adj:
                raise GraphError(f"edge {u}-{v} references an unknown vertex")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(adj, labels)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls({v: () for v in range(n)})

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls.from_edges(range(n), combinations(range(n), 2))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(range(n), ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise GraphError("a simple cycle needs at least 3 vertices")
        return cls.from_edges(range(n), ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def wheel(cls, n: int) -> "Graph":
        """Cycle on 0..n-1 plus apex n adjacent to every rim vertex."""
        rim = [(i, (i + 1) % n) for i in range(n)]
        return cls.from_edges(range(n + 1), rim + [(i, n) for i in range(n)])

    # -- queries ----------------------------------------------------------

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(self._adj)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (v, w) for v, nbrs in self._adj.items() for w in sorted(nbrs) if v < w
        )

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return sum(len(nbrs) for nbrs in self._adj.values()) // 2

    def __len__(self) -> int:
        return len(self._adj)

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def neighbors(self, v: int) -> frozenset[int]:
        try:
            return self._adj[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v}") from None

    def adjacency(self) -> dict[int, frozenset[int]]:
        return dict(self._adj)

    def has_edge(self, v: int, w: int) -> bool:
        return w in self.neighbors(v)

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def label(self, v: int) -> Hashable:
        return self.labels.get(v, v)

    def next_id(self) -> int:
        """Id that ``AddVertex`` will allocate: max id + 1, or 0 when empty."""
        return max(self._adj) + 1 if self._adj else 0

    def is_k1(self) -> bool:
        return len(self._adj) == 1

    def is_connected(self) -> bool:
        if not self._adj:
            return True
        start = next(iter(self._adj))
        seen = {start}
        stack = [start]
        while stack:
            for w in self._adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self._adj)

    # -- value semantics --------------------------------------------------

    def key(self) -> tuple:
        if self._key is None:
            self._key = (self.vertices, self.edges)
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Graph(vertices={list(self.vertices)}, edges={list(self.edges)})"


# -- neighborhoods ---------------------------------------------------------


def open_neighborhood(G: Graph, v: int) -> frozenset[int]:
    return G.neighbors(v)


def closed_neighborhood(G: Graph, v: int) -> frozenset[int]:
    return G.neighbors(v) | {v}


def common_neighborhood(G: Graph, v: int, w: int) -> frozenset[int]:
    """N(v) ∩ N(w); v and w need not be adjacent."""
    if v == w:
        raise GraphError(f"common neighborhood needs two distinct vertices, got {v} twice")
    return G.neighbors(v) & G.neighbors(w)


def induced(G: Graph, S: Iterable[int]) -> Graph:
    """Subgraph induced by ``S``, re-mapped to ids 0..|S|-1 in increasing order.

    ``labels`` of the result maps each new id to the label of the vertex it
    came from, so nested inductions keep pointing at the outermost graph.
    """
    S = sorted(set(S))
    missing = [v for v in S if v not in G]
    if missing:
        raise GraphError(f"vertices {missing} are not in the graph")
    index = {v: i for i, v in enumerate(S)}
    adj = {index[v]: [index[w] for w in G.neighbors(v) if w in index] for v in S}
    return Graph(adj, {index[v]: G.label(v) for v in S})


# -- edits -----------------------------------------------------------------


@dataclass(frozen=True)
class DeleteVertex:
    v: int


@dataclass(frozen=True)
class AddVertex:
    neighbors: frozenset[int]

    def __init__(self, neighbors: Iterable[int]):
        object.__setattr__(self, "neighbors", frozenset(neighbors))


@dataclass(frozen=True)
class DeleteEdge:
    v: int
    w: int


@dataclass(frozen=True)
class AddEdge:
    v: int
    w: int


GraphEdit = Union[DeleteVertex, AddVertex, DeleteEdge, AddEdge]


def apply_edit(G: Graph, e: GraphEdit) -> Graph:
    """Return the edited graph; ``G`` is left untouched."""
    adj = {v: set(nbrs) for v, nbrs in G.adjacency().items()}
    labels = dict(G.labels)
    if isinstance(e, DeleteVertex):
        if e.v not in G:
            raise GraphError(f"DeleteVertex: unknown vertex {e.v}")
        for w in adj.pop(e.v):
            adj[w].discard(e.v)
        labels.pop(e.v, None)
    elif isinstance(e, AddVertex):
        bad = sorted(v for v in e.neighbors if v not in G)
        if bad:
            raise GraphError(f"AddVertex: neighborhood contains unknown vertices {bad}")
        new = G.next_id()
        adj[new] = set(e.neighbors)
        for w in e.neighbors:
            adj[w].add(new)
    elif isinstance(e, DeleteEdge):
        if e.v == e.w or e.v not in G or e.w not in G or not G.has_edge(e.v, e.w):
            raise GraphError(f"DeleteEdge: {e.v}-{e.w} is not an edge")
        adj[e.v].discard(e.w)
        adj[e.w].discard(e.v)
    elif isinstance(e, AddEdge):
        if e.v == e.w or e.v not in G or e.w not in G:
            raise GraphError(f"AddEdge: {e.v}-{e.w} does not join two existing vertices")
        if G.has_edge(e.v, e.w):
            raise GraphError(f"AddEdge: {e.v}-{e.w} is already an edge")
        adj[e.v].add(e.w)
        adj[e.w].add(e.v)
    else:
        raise TypeError(f"not a graph edit: {e!r}")
    return Graph(adj, labels)


# -- hashing and generation -------------------------------------------------


def canonical_hash(G: Graph, rounds: int | None = None) -> str:
    """Relabeling-invariant digest from iterated color refinement.

    Colors start as degrees; each round a vertex's signature is its color plus
    the sorted multiset of neighbor colors, and signatures are ranked to give
    the next colors.  The digest covers the sorted signature multiset of every
    round, so graphs with different refinements never share a digest (up to
    SHA-256 collisions).  Non-isomorphic graphs with equal refinements do
    collide; callers must confirm equality on a hit.
    """
    adj = G.adjacency()
    color = {v: len(nbrs) for v, nbrs in adj.items()}
    h = hashlib.sha256(f"{G.n}:{G.m}".encode())
    h.update(repr(sorted(color.values())).encode())
    limit = G.n if rounds is None else rounds
    n_classes = len(set(color.values()))
    for _ in range(limit):
        sig = {v: (color[v], tuple(sorted(color[w] for w in adj[v]))) for v in adj}
        table = sorted(set(sig.values()))
        rank = {s: i for i, s in enumerate(table)}
        h.update(repr(sorted(sig.values())).encode())
        color = {v: rank[sig[v]] for v in adj}
        if len(table) == n_classes:
            break
        n_classes = len(table)
    return h.hexdigest()


def random_graph(n: int, p: float, seed: int) -> Graph:
    """Erdős–Rényi G(n, p) driven by ``random.Random(seed)`` (Mersenne Twister).

    Pairs (u, v), u < v, are visited in lexicographic order and each is kept
    iff the next ``random()`` draw is < p.  CPython's Mersenne Twister and its
    integer seeding are platform independent, so (n, p, seed) fixes the graph.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    if n < 0:
        raise ValueError(f"vertex count must be non-negative, got {n}")
    rng = random.Random(seed)
    edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(range(n), edges)
