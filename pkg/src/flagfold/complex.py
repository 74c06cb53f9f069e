"""Finite abstract simplicial complexes stored by facets.

Vertex tokens are ints, strings, or (nested) tuples of tokens; barycentric
subdivision uses the sorted face tuple of the original complex as the token
of each new vertex.  ``token_key`` gives the total order used everywhere
(faces, facet listings, orientation signs).
"""

from __future__ import annotations

import ast
import os
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Hashable, Iterable, Sequence, Union

from .graph import Graph

Token = Hashable

DEFAULT_FACE_CAP = 10**6


def face_cap() -> int:
    return int(os.environ.get("FLAGFOLD_FACE_CAP", DEFAULT_FACE_CAP))


class FaceCapExceeded(RuntimeError):
    pass


def token_key(t: Token):
    if isinstance(t, bool):
        raise TypeError("booleans are not vertex tokens")
    if isinstance(t, int):
        return (0, t)
    if isinstance(t, str):
        return (1, t)
    if isinstance(t, tuple):
        return (2, tuple(token_key(x) for x in t))
    raise TypeError(f"unsupported vertex token {t!r}")


def format_token(t: Token) -> str:
    if isinstance(t, tuple):
        return "(" + ",".join(format_token(x) for x in t) + ("," if len(t) == 1 else "") + ")"
    if isinstance(t, str):
        if not t or any(c.isspace() or c in "(),#'\"" for c in t) or t.lstrip("-").isdigit():
            raise ValueError(f"string token {t!r} cannot be written in the text format")
    return str(t)


def parse_token(s: str) -> Token:
    if s.startswith("("):
        return ast.literal_eval(s)
    if s.lstrip("-").isdigit():
        return int(s)
    return s


def _sorted_face(face: Iterable[Token]) -> tuple:
    return tuple(sorted(set(face), key=token_key))


def _face_key(face: tuple):
    return tuple(token_key(x) for x in face)


class SimplicialComplex:
    """Immutable simplicial complex given by its facets.

    Facets passed to the constructor may contain one another; only the
    maximal ones are kept.  Faces are enumerated lazily and cached, subject
    to the face cap (``FLAGFOLD_FACE_CAP``, default 10**6).
    """

    __slots__ = ("facets", "vertices", "_faces", "_index")

    def __init__(self, facets: Iterable[Iterable[Token]] = (), *, maximal: bool = False):
        cands = {_sorted_face(f) for f in facets}
        cands.discard(())
        if maximal:
            kept = list(cands)
        else:
            kept = []
            by_vertex: dict[Token, list[frozenset]] = {}
            for f in sorted(cands, key=len, reverse=True):
                fs = frozenset(f)
                if any(fs <= g for g in by_vertex.get(f[0], ())):
                    continue
                kept.append(f)
                for v in f:
                    by_vertex.setdefault(v, []).append(fs)
        self.facets: tuple[tuple, ...] = tuple(sorted(kept, key=_face_key))
        self.vertices: tuple = _sorted_face(v for f in self.facets for v in f)
        self._faces = None
        self._index = None

    # -- basic queries ---------------------------------------------------------

    def is_empty(self) -> bool:
        return not self.facets

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def _facet_index(self) -> dict[Token, list[frozenset]]:
        if self._index is None:
            idx: dict[Token, list[frozenset]] = {}
            for f in self.facets:
                fs = frozenset(f)
                for v in f:
                    idx.setdefault(v, []).append(fs)
            self._index = idx
        return self._index

    def facets_containing(self, face: Iterable[Token]) -> list[frozenset]:
        face = frozenset(face)
        if not face:
            return [frozenset(f) for f in self.facets]
        v = next(iter(face))
        return [f for f in self._facet_index().get(v, ()) if face <= f]

    def contains_face(self, face: Iterable[Token]) -> bool:
        face = frozenset(face)
        if not face:
            return True
        v = next(iter(face))
        return any(face <= f for f in self._facet_index().get(v, ()))

    def _all_faces(self) -> list[list[tuple]]:
        if self._faces is None:
            cap = face_cap()
            by_dim: list[set] = [set() for _ in range(self.dim + 1)]
            total = 0
            for f in self.facets:
                for k in range(1, len(f) + 1):
                    bucket = by_dim[k - 1]
                    before = len(bucket)
                    bucket.update(combinations(f, k))
                    total += len(bucket) - before
                    if total > cap:
                        raise FaceCapExceeded(
                            f"more than {cap} faces; raise FLAGFOLD_FACE_CAP to continue"
                        )
            self._faces = [sorted(b, key=_face_key) for b in by_dim]
        return self._faces

    def faces(self, d: int | None = None) -> list[tuple]:
        """Faces of dimension ``d`` in sorted order (all faces when d is None)."""
        all_faces = self._all_faces()
        if d is None:
            return [f for layer in all_faces for f in layer]
        if d < 0 or d >= len(all_faces):
            return []
        return all_faces[d]

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(layer) for layer in self._all_faces())

    # -- value semantics ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.facets == other.facets

    def __hash__(self) -> int:
        return hash(self.facets)

    def __repr__(self) -> str:
        return f"SimplicialComplex({[list(f) for f in self.facets]})"


def simplex(n: int) -> SimplicialComplex:
    """Full n-simplex on vertices 0..n."""
    return SimplicialComplex([range(n + 1)])


def simplex_boundary(n: int) -> SimplicialComplex:
    """Boundary of the n-simplex on 0..n (a sphere of dimension n-1)."""
    return SimplicialComplex(combinations(range(n + 1), n))


def induced_subcomplex(K: SimplicialComplex, vertices: Iterable[Token]) -> SimplicialComplex:
    keep = set(vertices)
    return SimplicialComplex([v for v in f if v in keep] for f in K.facets)


def delete_vertex(K: SimplicialComplex, v: Token) -> SimplicialComplex:
    """Remove ``v`` together with every face containing it."""
    if v not in K.vertices:
        raise ValueError(f"unknown vertex {v!r}")
    return induced_subcomplex(K, (u for u in K.vertices if u != v))


def is_subcomplex(L: SimplicialComplex, K: SimplicialComplex) -> bool:
    return all(K.contains_face(f) for f in L.facets)


# -- graphs and flagness -------------------------------------------------------


def _maximal_cliques(adj: dict[int, frozenset[int]]) -> list[list[int]]:
    """Bron–Kerbosch with Tomita pivoting; pivot maximizes |P ∩ N(u)|."""
    out: list[list[int]] = []

    def expand(R: list[int], P: set[int], X: set[int]) -> None:
        if not P and not X:
            out.append(R)
            return
        u = max(P | X, key=lambda x: (len(P & adj[x]), -x))
        for v in sorted(P - adj[u]):
            expand(R + [v], P & adj[v], X & adj[v])
            P = P - {v}
            X = X | {v}

    expand([], set(adj), set())
    return out


def clique_complex(G: Graph) -> SimplicialComplex:
    """Flag complex whose faces are the cliques of ``G``; tokens are ``G.label(v)``."""
    if G.n == 0:
        return SimplicialComplex()
    cliques = _maximal_cliques(G.adjacency())
    return SimplicialComplex(([G.label(v) for v in c] for c in cliques), maximal=True)


def one_skeleton(K: SimplicialComplex) -> Graph:
    """Graph of vertices and edges of ``K``.

    Integer tokens become vertex ids directly; otherwise vertices get dense
    ids in token order and the tokens are kept as labels.
    """
    verts = K.vertices
    if all(isinstance(v, int) and v >= 0 for v in verts):
        ids = {v: v for v in verts}
        labels = None
    else:
        ids = {v: i for i, v in enumerate(verts)}
        labels = {i: v for v, i in ids.items()}
    edges = {(ids[a], ids[b]) for f in K.facets for a, b in combinations(f, 2)}
    return Graph.from_edges(ids.values(), edges, labels)


def is_flag(K: SimplicialComplex) -> tuple[bool, tuple | None]:
    """Whether every clique of the 1-skeleton is a face.

    On failure the witness is a smallest minimal non-face (size >= 3).
    """
    G = one_skeleton(K)
    bad = [
        [G.label(v) for v in c]
        for c in _maximal_cliques(G.adjacency())
        if not K.contains_face(G.label(v) for v in c)
    ]
    if not bad:
        return True, None
    size = 3
    while True:
        hits = sorted(
            {_sorted_face(s) for c in bad for s in combinations(c, size)
             if not K.contains_face(s)},
            key=_face_key,
        )
        if hits:
            return False, hits[0]
        size += 1


def link(K: SimplicialComplex, v: Token) -> SimplicialComplex:
    if v not in K.vertices:
        raise ValueError(f"unknown vertex {v!r}")
    return SimplicialComplex(
        (u for u in f if u != v) for f in K.facets_containing([v])
    )


# -- collapses -------------------------------------------------------------------


@dataclass(frozen=True)
class FreePair:
    tau: tuple
    sigma: tuple

    @property
    def elementary(self) -> bool:
        return len(self.tau) == len(self.sigma) - 1


def free_faces(K: SimplicialComplex) -> list[FreePair]:
    """All (τ, σ) with σ the unique facet containing the proper face τ."""
    out = []
    for sigma in K.facets:
        for k in range(1, len(sigma)):
            for tau in combinations(sigma, k):
                if len(K.facets_containing(tau)) == 1:
                    out.append(FreePair(tau, sigma))
    out.sort(key=lambda p: (_face_key(p.sigma), _face_key(p.tau)))
    return out


class CollapseError(ValueError):
    pass


def collapse_step(K: SimplicialComplex, tau: Sequence[Token], sigma: Sequence[Token]) -> SimplicialComplex:
    """Remove every face α with τ ⊆ α ⊆ σ, where τ is a free face of the facet σ."""
    tau, sigma = _sorted_face(tau), _sorted_face(sigma)
    if not tau or not set(tau) < set(sigma):
        raise CollapseError(f"{tau} is not a nonempty proper face of {sigma}")
    owners = K.facets_containing(tau)
    if owners != [frozenset(sigma)]:
        raise CollapseError(f"{tau} is not a free face of facet {sigma}")
    rest = [f for f in K.facets if f != sigma]
    return SimplicialComplex(rest + [[u for u in sigma if u != x] for x in tau])


def expand_step(K: SimplicialComplex, tau: Sequence[Token], sigma: Sequence[Token]) -> SimplicialComplex:
    """Inverse of ``collapse_step``: add every face α with τ ⊆ α ⊆ σ.

    Requires τ ∉ K and σ \\ {x} ∈ K for each x ∈ τ, so that the result is a
    complex in which τ is free with unique facet σ.
    """
    tau, sigma = _sorted_face(tau), _sorted_face(sigma)
    if not tau or not set(tau) < set(sigma):
        raise CollapseError(f"{tau} is not a nonempty proper face of {sigma}")
    if K.contains_face(tau):
        raise CollapseError(f"{tau} is already a face; the expansion would not be free")
    for x in tau:
        face = [u for u in sigma if u != x]
        if not K.contains_face(face):
            raise CollapseError(f"face {tuple(face)} of {sigma} is missing from the complex")
    return SimplicialComplex(list(K.facets) + [sigma])


def greedy_collapse(K: SimplicialComplex, max_steps: int | None = None):
    """Collapse elementary free pairs until none is left.

    Picks the free pair with the largest σ first (then smallest in token
    order), which empties top-dimensional facets before touching lower ones.
    Returns the final complex and the list of pairs used.
    """
    steps: list[FreePair] = []
    while max_steps is None or len(steps) < max_steps:
        pairs = [p for p in free_faces(K) if p.elementary]
        if not pairs:
            break
        top = max(len(p.sigma) for p in pairs)
        pair = next(p for p in pairs if len(p.sigma) == top)
        K = collapse_step(K, pair.tau, pair.sigma)
        steps.append(pair)
    return K, steps


def is_point(K: SimplicialComplex) -> bool:
    return len(K.facets) == 1 and len(K.facets[0]) == 1


# -- subdivisions ------------------------------------------------------------------


def barycentric(K: SimplicialComplex) -> SimplicialComplex:
    """Order complex of the face poset; vertices are the sorted face tuples."""
    K.faces()  # enforce the face cap before the factorial blow-up below
    chains = set()
    for sigma in K.facets:
        for perm in permutations(sigma):
            chains.add(tuple(_sorted_face(perm[:k]) for k in range(1, len(perm) + 1)))
    return SimplicialComplex(chains, maximal=True)


def cyl(K: SimplicialComplex) -> SimplicialComplex:
    """Cylinder complex on V(K) ⊔ V(Bd K).

    A set σ is a simplex when its V(K)-part is a face of K, its barycentric
    part is a chain of faces, and every face in that chain contains the
    V(K)-part.  Maximal simplices are A ∪ {α1 ⊂ ... ⊂ αk} with A = α1 and the
    chain saturated from α1 up to a facet, which is what gets enumerated.
    """
    if K.is_empty():
        raise ValueError("Cyl of the empty complex")
    overlap = set(K.vertices) & set(K.faces())
    if overlap:
        raise ValueError(f"vertex tokens {sorted(overlap, key=token_key)} clash with face tuples")
    cands = set()
    for alpha in K.faces():
        for sigma in K.facets_containing(alpha):
            extra = sorted(set(sigma) - set(alpha), key=token_key)
            for perm in permutations(extra):
                chain = [alpha] + [_sorted_face(alpha + perm[:k]) for k in range(1, len(perm) + 1)]
                cands.add(tuple(alpha) + tuple(chain))
    return SimplicialComplex(cands)


# -- link-based vertex moves ----------------------------------------------------


@dataclass(frozen=True)
class ElementaryCollapse:
    tau: tuple
    sigma: tuple


@dataclass(frozen=True)
class ElementaryExpansion:
    tau: tuple
    sigma: tuple


@dataclass(frozen=True)
class LinkDeleteVertex:
    v: Token


@dataclass(frozen=True)
class LinkAddVertex:
    link: SimplicialComplex
    vertex: Token | None = None


ComplexMove = Union[ElementaryCollapse, ElementaryExpansion, LinkDeleteVertex, LinkAddVertex]


def certify_complex_contractible(K: SimplicialComplex, budget=None):
    """Contractibility verdict for an arbitrary complex.

    Flag complexes go straight to the graph certifier.  Otherwise: greedy
    collapse to a point (Yes), nonzero reduced homology (No), then one
    barycentric subdivision handed to the graph certifier, else Unknown.
    """
    from .algebra import homology
    from .reduction import Budget, Verdict, certify_contractible

    budget = budget or Budget()
    if K.is_empty():
        raise ValueError("contractibility of the empty complex is not defined")
    if len(K.facets) == 1:
        return Verdict.yes("simplex", None)
    if is_flag(K)[0]:
        inner = certify_contractible(one_skeleton(K), budget)
        return inner.relabeled("flag:" + inner.method)
    collapsed, steps = greedy_collapse(K)
    if is_point(collapsed):
        return Verdict.yes("collapse", steps)
    prof = homology(K, reduced=True)
    if not prof.is_trivial():
        return Verdict.no(prof)
    inner = certify_contractible(one_skeleton(barycentric(K)), budget)
    if inner.is_yes:
        return inner.relabeled("barycentric:" + inner.method)
    return Verdict.unknown(f"collapse stuck at {len(collapsed.facets)} facets; "
                           f"subdivision verdict {inner.kind}")


class ComplexMoveRejected(ValueError):
    def __init__(self, message: str, verdict=None):
        super().__init__(message)
        self.verdict = verdict

    @property
    def inconclusive(self) -> bool:
        return self.verdict is not None and self.verdict.is_unknown


def _fresh_token(K: SimplicialComplex) -> int:
    ints = [v for v in K.vertices if isinstance(v, int)]
    return max(ints) + 1 if ints else 0


def link_vertex_move(K: SimplicialComplex, m: ComplexMove, budget=None) -> SimplicialComplex:
    """Apply a move after certifying it; rejections raise ComplexMoveRejected."""
    if isinstance(m, ElementaryCollapse):
        if len(m.tau) != len(m.sigma) - 1:
            raise CollapseError("elementary collapse needs dim τ = dim σ - 1")
        return collapse_step(K, m.tau, m.sigma)
    if isinstance(m, ElementaryExpansion):
        if len(m.tau) != len(m.sigma) - 1:
            raise CollapseError("elementary expansion needs dim τ = dim σ - 1")
        return expand_step(K, m.tau, m.sigma)
    if isinstance(m, LinkDeleteVertex):
        lk = link(K, m.v)
        if lk.is_empty():
            raise ComplexMoveRejected(f"vertex {m.v!r} is isolated; its link is empty")
        verdict = certify_complex_contractible(lk, budget)
        if not verdict.is_yes:
            raise ComplexMoveRejected(f"link of {m.v!r} not certified contractible: {verdict.kind}", verdict)
        return delete_vertex(K, m.v)
    if isinstance(m, LinkAddVertex):
        if m.link.is_empty():
            raise ComplexMoveRejected("cannot cone over the empty complex")
        if not is_subcomplex(m.link, K):
            raise ValueError("the proposed link is not a subcomplex")
        new = _fresh_token(K) if m.vertex is None else m.vertex
        if new in K.vertices:
            raise ValueError(f"vertex {new!r} already exists")
        verdict = certify_complex_contractible(m.link, budget)
        if not verdict.is_yes:
            raise ComplexMoveRejected(f"proposed link not certified contractible: {verdict.kind}", verdict)
        return SimplicialComplex(list(K.facets) + [list(f) + [new] for f in m.link.facets])
    raise TypeError(f"not a complex move: {m!r}")


@dataclass
class LinkDeletionSearch:
    """Outcome of ``find_link_deletion_sequence``.

    ``status`` is "found", "exhausted" (every order tried under the
    certifier's judgments) or "budget".
    """

    sequence: tuple | None
    status: str
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.sequence is not None


def find_link_deletion_sequence(K: SimplicialComplex, target: SimplicialComplex,
                                budget=None) -> LinkDeletionSearch:
    """Depth-first search for an order of contractible-link vertex deletions K → target.

    ``target`` must be the subcomplex of ``K`` induced on its own vertices.
    Candidates are tried in token order; failed vertex sets are memoized.
    """
    from .reduction import Budget

    budget = budget or Budget()
    keep = set(target.vertices)
    if not keep <= set(K.vertices) or induced_subcomplex(K, keep) != target:
        raise ValueError("target is not an induced subcomplex of K")
    verdicts: dict[SimplicialComplex, bool] = {}
    failed: set[frozenset] = set()
    nodes = 0
    out_of_budget = False

    def contractible(lk: SimplicialComplex) -> bool:
        if lk not in verdicts:
            verdicts[lk] = (not lk.is_empty()) and certify_complex_contractible(lk, budget).is_yes
        return verdicts[lk]

    def search(current: SimplicialComplex, pending: frozenset) -> list | None:
        nonlocal nodes, out_of_budget
        if not pending:
            return []
        if pending in failed:
            return None
        if nodes >= budget.nodes:
            out_of_budget = True
            return None
        nodes += 1
        for v in sorted(pending, key=token_key):
            if contractible(link(current, v)):
                rest = search(delete_vertex(current, v), pending - {v})
                if rest is not None:
                    return [v] + rest
                if out_of_budget:
                    return None
        failed.add(pending)
        return None

    seq = search(K, frozenset(set(K.vertices) - keep))
    if seq is not None:
        return LinkDeletionSearch(tuple(seq), "found", nodes)
    return LinkDeletionSearch(None, "budget" if out_of_budget else "exhausted", nodes)
