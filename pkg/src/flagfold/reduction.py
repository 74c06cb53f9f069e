"""Dismantling, s-collapses, and the layered contractibility certifier.

The certifier answers whether a graph's clique complex is contractible
(equivalently, whether the graph reduces to K1 by I-moves):

1. greedy dismantling reaches K1                      -> Yes
2. greedy s-collapsing reaches K1                     -> Yes
3. reduced integral homology of C(G) is nonzero       -> No
4. budgeted best-first search over I-moves            -> Yes / Unknown

Both Yes and No are proofs; Unknown only means the budget ran out.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Any

from .algebra import HomologyProfile, homology
from .complex import clique_complex
from .graph import DeleteVertex, Graph, GraphError, apply_edit, canonical_hash, induced
from .trace import IMove, ITrace


class EmptyGraphError(GraphError):
    """The empty graph is outside the class of contractible graphs."""


@dataclass(frozen=True)
class Budget:
    """Search limits: nodes expanded per search, nesting depth for link checks."""

    nodes: int = 100_000
    depth: int = 8

    def nested(self) -> "Budget":
        return Budget(self.nodes, self.depth - 1)


YES, NO, UNKNOWN = "yes", "no", "unknown"


@dataclass(frozen=True)
class Verdict:
    kind: str
    method: str = ""
    certificate: Any = None
    witness: HomologyProfile | None = None
    diagnostics: str = ""

    @classmethod
    def yes(cls, method: str, certificate: Any) -> "Verdict":
        return cls(YES, method, certificate)

    @classmethod
    def no(cls, witness: HomologyProfile | None, method: str = "homology",
           diagnostics: str = "") -> "Verdict":
        return cls(NO, method, None, witness, diagnostics)

    @classmethod
    def unknown(cls, diagnostics: str, method: str = "") -> "Verdict":
        return cls(UNKNOWN, method, None, None, diagnostics)

    @property
    def is_yes(self) -> bool:
        return self.kind == YES

    @property
    def is_no(self) -> bool:
        return self.kind == NO

    @property
    def is_unknown(self) -> bool:
        return self.kind == UNKNOWN

    def relabeled(self, method: str) -> "Verdict":
        return replace(self, method=method)

    def __str__(self) -> str:
        if self.is_no and self.witness is not None:
            return f"no ({self.method}: {self.witness})"
        if self.is_unknown:
            return f"unknown ({self.diagnostics})"
        return f"{self.kind} ({self.method})"


# -- dismantling -----------------------------------------------------------------


@dataclass(frozen=True)
class DismantlingTrace:
    start: Graph
    steps: tuple[tuple[int, int], ...]
    core: Graph

    @property
    def dismantlable(self) -> bool:
        return self.core.is_k1()


def _dominator(G: Graph, v: int) -> int | None:
    closed = G.neighbors(v) | {v}
    for w in sorted(G.neighbors(v)):
        if closed <= G.neighbors(w) | {w}:
            return w
    return None


def dominated_vertices(G: Graph) -> list[tuple[int, int]]:
    """All (v, w), v != w, with N[v] ⊆ N[w], sorted.

    Only neighbors can dominate (v ∈ N[v] ⊆ N[w] forces w ~ v), so isolated
    vertices never appear.
    """
    out = []
    for v in G.vertices:
        closed = G.neighbors(v) | {v}
        for w in sorted(G.neighbors(v)):
            if closed <= G.neighbors(w) | {w}:
                out.append((v, w))
    return out


def dismantle(G: Graph) -> DismantlingTrace:
    """Remove the lowest-id dominated vertex until none is left."""
    if G.n == 0:
        raise EmptyGraphError("cannot dismantle the empty graph")
    H = G
    steps = []
    while True:
        for v in H.vertices:
            w = _dominator(H, v)
            if w is not None:
                steps.append((v, w))
                H = apply_edit(H, DeleteVertex(v))
                break
        else:
            return DismantlingTrace(G, tuple(steps), H)


def is_dismantlable(G: Graph) -> bool:
    return dismantle(G).dismantlable


def is_s_dismantlable(G: Graph, v: int) -> bool:
    """Whether the neighborhood of ``v`` induces a dismantlable graph."""
    nbrs = G.neighbors(v)
    return bool(nbrs) and is_dismantlable(induced(G, nbrs))


@dataclass(frozen=True)
class SReduction:
    start: Graph
    deleted: tuple[int, ...]
    link_dismantlings: tuple[tuple[tuple[int, int], ...], ...]
    terminal: Graph


def s_reduce(G: Graph) -> SReduction:
    """Delete the lowest-id s-dismantlable vertex until none is left."""
    if G.n == 0:
        raise EmptyGraphError("cannot s-reduce the empty graph")
    H = G
    deleted, certs = [], []
    while True:
        for v in H.vertices:
            nbrs = H.neighbors(v)
            if not nbrs:
                continue
            dt = dismantle(induced(H, nbrs))
            if dt.dismantlable:
                deleted.append(v)
                certs.append(dt.steps)
                H = apply_edit(H, DeleteVertex(v))
                break
        else:
            return SReduction(G, tuple(deleted), tuple(certs), H)


def dismantling_to_trace(dt: DismantlingTrace) -> ITrace:
    moves = tuple(IMove("S-", (v,), {"dominated_by": w}) for v, w in dt.steps)
    return ITrace(dt.start, moves, dt.core)


def s_reduction_to_trace(sr: SReduction) -> ITrace:
    moves = tuple(
        IMove("S-", (v,), {"link_dismantling": [list(s) for s in steps]})
        for v, steps in zip(sr.deleted, sr.link_dismantlings)
    )
    return ITrace(sr.start, moves, sr.terminal)


# -- certifier -------------------------------------------------------------------


class Certifier:
    """Contractibility certifier with a memo table.

    A verdict is a pure function of (graph, budget.nodes, depth), so a single
    Certifier may be reused across many inputs; the memo only saves time.
    Entries are bucketed by ``canonical_hash`` and reused only on exact
    structural equality.  Layer 1-3 verdicts do not depend on depth and are
    shared across depths; search verdicts are keyed by depth as well.
    """

    def __init__(self, budget: Budget | None = None):
        self.budget = budget or Budget()
        self._memo: dict[str, list[tuple[Graph, int | None, Verdict]]] = {}
        self.hits = 0
        self.misses = 0

    def _lookup(self, G: Graph, depth: int) -> Verdict | None:
        for H, d, verdict in self._memo.get(canonical_hash(G), ()):
            if (d is None or d == depth) and H == G:
                self.hits += 1
                return verdict
        return None

    def certify(self, G: Graph, depth: int | None = None) -> Verdict:
        if G.n == 0:
            raise EmptyGraphError("the empty graph is not contractible")
        depth = self.budget.depth if depth is None else depth
        hit = self._lookup(G, depth)
        if hit is not None:
            return hit
        self.misses += 1
        verdict, depth_free = self._certify(G, depth)
        self._memo.setdefault(canonical_hash(G), []).append(
            (G, None if depth_free else depth, verdict))
        return verdict

    def _certify(self, G: Graph, depth: int) -> tuple[Verdict, bool]:
        if G.is_k1():
            return Verdict.yes("k1", ITrace(G, (), G)), True
        dt = dismantle(G)
        if dt.dismantlable:
            return Verdict.yes("dismantle", dismantling_to_trace(dt)), True
        sr = s_reduce(G)
        if sr.terminal.is_k1():
            return Verdict.yes("s-reduce", s_reduction_to_trace(sr)), True
        prof = homology(clique_complex(G), reduced=True)
        if not prof.is_trivial():
            return Verdict.no(prof), True
        if depth < 1:
            return Verdict.unknown("acyclic but not s-collapsible; nesting depth exhausted",
                                   "search"), False
        from .itransform import search_moves

        return search_moves(G, Budget(self.budget.nodes, depth), self), False


def certify_contractible(G: Graph, budget: Budget | None = None,
                         certifier: Certifier | None = None) -> Verdict:
    """Decide (or decline to decide) whether C(G) is contractible."""
    budget = budget or Budget()
    if certifier is None or certifier.budget.nodes != budget.nodes:
        certifier = Certifier(budget)
    return certifier.certify(G, budget.depth)


def replay_certificate(G: Graph, verdict: Verdict, budget: Budget | None = None) -> bool:
    """Re-check a verdict from scratch.

    Yes: the attached trace must start at ``G``, pass full re-certification,
    and end at K1.  No: the witness must be nonzero and must equal the
    reduced homology of C(G) recomputed here.  Unknown is never checkable.
    """
    from .itransform import verify_trace

    if verdict.is_yes:
        t = verdict.certificate
        if not isinstance(t, ITrace) or t.start != G or t.end is None or not t.end.is_k1():
            return False
        return verify_trace(t, budget or Budget()).ok
    if verdict.is_no:
        w = verdict.witness
        return w is not None and not w.is_trivial() and w == homology(clique_complex(G), reduced=True)
    return False
