"""The four I-contractible transformations, trace replay, and move search.

    I1  delete v            if G[N(v)] is contractible
    I2  glue v onto S       if G[S] is contractible
    I3  delete edge vw      if G[N(v) ∩ N(w)] is contractible
    I4  glue edge vw        if G[N(v) ∩ N(w)] is contractible

"Contractible" is decided by the certifier one nesting level down.  Unknown
preconditions are rejected, so every stored trace is sound.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations, count

from .algebra import homology
from .complex import clique_complex
from .graph import (
    AddEdge,
    AddVertex,
    DeleteEdge,
    DeleteVertex,
    Graph,
    GraphError,
    apply_edit,
    canonical_hash,
    induced,
)
from .reduction import (
    Budget,
    Certifier,
    EmptyGraphError,
    Verdict,
    dismantle,
    s_reduce,
)
from .trace import IMove, ITrace

__all__ = [
    "IMove",
    "ITrace",
    "MoveError",
    "MoveRejected",
    "TraceCheck",
    "apply_move",
    "certify_move",
    "check_precondition",
    "precondition_set",
    "reduce_via_moves",
    "search_moves",
    "verify_trace",
]


class MoveError(GraphError):
    """A move that does not fit the graph structurally (missing vertex, edge, ...)."""


class MoveRejected(ValueError):
    """A structurally valid move whose precondition was not certified."""

    def __init__(self, move: IMove, verdict: Verdict):
        super().__init__(f"{move} rejected: {verdict}")
        self.move = move
        self.verdict = verdict

    @property
    def inconclusive(self) -> bool:
        return self.verdict.is_unknown


def precondition_set(G: Graph, m: IMove) -> frozenset[int]:
    """Vertex set whose induced subgraph must be contractible for ``m``."""
    if m.op in ("I1", "S-"):
        (v,) = m.args
        if v not in G:
            raise MoveError(f"{m}: unknown vertex {v}")
        return G.neighbors(v)
    if m.op == "I2":
        missing = [v for v in m.args if v not in G]
        if missing:
            raise MoveError(f"{m}: unknown vertices {missing}")
        return frozenset(m.args)
    v, w = m.args
    if v not in G or w not in G:
        raise MoveError(f"{m}: unknown vertex")
    if m.op == "I3" and not G.has_edge(v, w):
        raise MoveError(f"{m}: {v}-{w} is not an edge")
    if m.op == "I4" and G.has_edge(v, w):
        raise MoveError(f"{m}: {v}-{w} is already an edge")
    return G.neighbors(v) & G.neighbors(w)


def check_precondition(G: Graph, m: IMove, budget: Budget | None = None,
                       certifier: Certifier | None = None) -> Verdict:
    """Certify the subgraph that ``m`` requires to be contractible.

    The subgraph is certified with ``budget.depth - 1``.  An empty subgraph
    gets a No verdict without a homology witness (the empty graph is not in
    the class).  For S- moves the requirement is dismantlability itself, and
    a non-dismantlable neighborhood is reported as No.
    """
    budget = budget or Budget()
    S = precondition_set(G, m)
    if not S:
        return Verdict.no(None, "empty", f"{m}: precondition subgraph is empty")
    sub = induced(G, S)
    if m.op == "S-":
        dt = dismantle(sub)
        if dt.dismantlable:
            return Verdict.yes("dismantle", dt)
        return Verdict.no(None, "not-dismantlable", f"{m}: neighborhood is not dismantlable")
    if certifier is None or certifier.budget.nodes != budget.nodes:
        certifier = Certifier(budget)
    return certifier.certify(sub, budget.depth - 1)


def _edit(m: IMove):
    if m.op in ("I1", "S-"):
        return DeleteVertex(m.args[0])
    if m.op == "I2":
        return AddVertex(m.args)
    if m.op == "I3":
        return DeleteEdge(*m.args)
    return AddEdge(*m.args)


def certify_move(G: Graph, m: IMove, budget: Budget | None = None,
                 certifier: Certifier | None = None) -> tuple[IMove, Graph]:
    """Check and apply ``m``; returns the move with its certificate and the new graph."""
    verdict = check_precondition(G, m, budget, certifier)
    if not verdict.is_yes:
        raise MoveRejected(m, verdict)
    if m.op == "S-":
        cert = {"link_dismantling": [list(s) for s in verdict.certificate.steps]}
    else:
        cert = verdict
    return IMove(m.op, m.args, cert), apply_edit(G, _edit(m))


def apply_move(G: Graph, m: IMove, budget: Budget | None = None,
               certifier: Certifier | None = None) -> Graph:
    return certify_move(G, m, budget, certifier)[1]


@dataclass
class TraceCheck:
    ok: bool
    step: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_trace(t: ITrace, budget: Budget | None = None) -> TraceCheck:
    """Replay ``t`` from its start, re-certifying every precondition.

    Stored certificates are ignored.  ``step`` is the 1-based index of the
    first failing move (0 for an end-graph mismatch).
    """
    budget = budget or Budget()
    certifier = Certifier(budget)
    G = t.start
    for i, m in enumerate(t.moves, start=1):
        try:
            verdict = check_precondition(G, m, budget, certifier)
        except GraphError as exc:
            return TraceCheck(False, i, f"structural: {exc}")
        if not verdict.is_yes:
            return TraceCheck(False, i, f"precondition not certified: {verdict}")
        G = apply_edit(G, _edit(m))
    if t.end is not None and G != t.end:
        return TraceCheck(False, 0, f"replay ends at {G!r}, trace claims {t.end!r}")
    return TraceCheck(True)


# -- search ----------------------------------------------------------------------


@dataclass
class _Node:
    graph: Graph
    parent: "_Node | None" = None
    move: IMove | None = None

    def path(self) -> list[IMove]:
        out = []
        node = self
        while node.parent is not None:
            out.append(node.move)
            node = node.parent
        return out[::-1]


def _replay_deletions(G: Graph, order, budget, certifier) -> list[IMove] | None:
    moves = []
    for v in order:
        try:
            m, G = certify_move(G, IMove("I1", (v,)), budget, certifier)
        except MoveRejected:
            return None
        moves.append(m)
    return moves


def _fast_finish(G: Graph, budget: Budget, certifier: Certifier) -> list[IMove] | None:
    """Certified I1 deletions to K1 via dismantling or s-collapsing, if either works."""
    dt = dismantle(G)
    if dt.dismantlable:
        return _replay_deletions(G, [v for v, _ in dt.steps], budget, certifier)
    sr = s_reduce(G)
    if sr.terminal.is_k1():
        return _replay_deletions(G, sr.deleted, budget, certifier)
    return None


def _children(G: Graph, budget: Budget, certifier: Certifier):
    """Certified successor moves: deletions first, then the restricted gluings.

    Gluings are limited to (a) edges whose common neighborhood already
    dismantles or s-collapses to K1 and (b) a twin of an existing vertex
    (gluing onto a closed neighborhood, which is a cone).
    """
    def attempt(m):
        try:
            return certify_move(G, m, budget, certifier)
        except MoveRejected:
            return None

    for v in G.vertices:
        if G.neighbors(v):
            r = attempt(IMove("I1", (v,)))
            if r:
                yield r
    for v, w in G.edges:
        if G.neighbors(v) & G.neighbors(w):
            r = attempt(IMove("I3", (v, w)))
            if r:
                yield r
    for v, w in combinations(G.vertices, 2):
        if G.has_edge(v, w):
            continue
        common = G.neighbors(v) & G.neighbors(w)
        if not common:
            continue
        sub = induced(G, common)
        if dismantle(sub).dismantlable or s_reduce(sub).terminal.is_k1():
            r = attempt(IMove("I4", (v, w)))
            if r:
                yield r
    glued = set()
    for u in G.vertices:
        closed = G.neighbors(u) | {u}
        if closed in glued:
            continue
        glued.add(closed)
        r = attempt(IMove("I2", tuple(closed)))
        if r:
            yield r


def search_moves(G: Graph, budget: Budget, certifier: Certifier | None = None) -> Verdict:
    """Best-first search for a certified I-move trace from ``G`` to K1.

    States are ordered by (vertex count, edge count, discovery order); a
    state equal to one already seen is dropped.  Each expanded state first
    tries to finish by dismantling or s-collapsing.  Gives Unknown once
    ``budget.nodes`` states have been expanded.
    """
    certifier = certifier or Certifier(budget)
    tick = count()
    root = _Node(G)
    heap = [((G.n, G.m), next(tick), root)]
    seen: dict[str, list[Graph]] = {canonical_hash(G): [G]}
    expanded = 0
    while heap and expanded < budget.nodes:
        _, _, node = heapq.heappop(heap)
        expanded += 1
        H = node.graph
        finish = [] if H.is_k1() else _fast_finish(H, budget, certifier)
        if finish is not None:
            moves = node.path() + finish
            end = H
            for m in finish:
                end = apply_edit(end, _edit(m))
            return Verdict.yes("i-moves", ITrace(G, tuple(moves), end))
        for m, child in _children(H, budget, certifier):
            key = canonical_hash(child)
            bucket = seen.setdefault(key, [])
            if child in bucket:
                continue
            bucket.append(child)
            heapq.heappush(heap, ((child.n, child.m), next(tick), _Node(child, node, m)))
    why = "frontier empty" if not heap else "node budget exhausted"
    return Verdict.unknown(f"{why} after expanding {expanded} states", "search")


def reduce_via_moves(G: Graph, budget: Budget | None = None,
                     certifier: Certifier | None = None) -> Verdict:
    """Search for an I-move trace to K1, after a homology pre-check.

    Yes carries an ITrace made of I1-I4 moves only; No carries the nonzero
    reduced homology of C(G).
    """
    budget = budget or Budget()
    if G.n == 0:
        raise EmptyGraphError("cannot reduce the empty graph")
    prof = homology(clique_complex(G), reduced=True)
    if not prof.is_trivial():
        return Verdict.no(prof)
    if G.is_k1():
        return Verdict.yes("i-moves", ITrace(G, (), G))
    return search_moves(G, budget, certifier or Certifier(budget))
