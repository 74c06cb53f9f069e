import random
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings

from flagfold.graph import (
    AddEdge,
    AddVertex,
    DeleteEdge,
    DeleteVertex,
    Graph,
    GraphError,
    apply_edit,
    canonical_hash,
    closed_neighborhood,
    common_neighborhood,
    induced,
    open_neighborhood,
    random_graph,
)

from .conftest import graphs


def relabel(G, perm):
    return Graph.from_edges(G.vertices, [(perm[u], perm[v]) for u, v in G.edges])


def test_open_neighborhood_examples():
    assert open_neighborhood(Graph.path(3), 1) == {0, 2}
    assert open_neighborhood(Graph.complete(4), 0) == {1, 2, 3}
    assert open_neighborhood(Graph.empty(3), 2) == frozenset()
    assert closed_neighborhood(Graph.path(3), 0) == {0, 1}
    with pytest.raises(GraphError):
        open_neighborhood(Graph.path(3), 7)


def test_common_neighborhood_examples():
    assert common_neighborhood(Graph.cycle(4), 0, 2) == {1, 3}
    assert common_neighborhood(Graph.complete(4), 0, 1) == {2, 3}
    assert common_neighborhood(Graph.path(3), 0, 2) == {1}
    with pytest.raises(GraphError):
        common_neighborhood(Graph.path(3), 1, 1)
    with pytest.raises(GraphError):
        common_neighborhood(Graph.path(3), 1, 9)


def test_induced_examples():
    assert induced(Graph.cycle(5), {0, 1, 2}) == Graph.path(3)
    assert induced(Graph.cycle(5), set()).n == 0
    assert induced(Graph.complete(4), {0, 1, 2}) == Graph.complete(3)
    H = induced(Graph.cycle(5), {2, 3, 4})
    assert [H.label(v) for v in H.vertices] == [2, 3, 4]
    with pytest.raises(GraphError):
        induced(Graph.cycle(5), {0, 9})


def test_induced_labels_compose():
    G = Graph.cycle(6)
    H = induced(induced(G, {1, 2, 3, 4}), {1, 2})
    assert [H.label(v) for v in H.vertices] == [2, 3]


def test_apply_edit_examples():
    assert apply_edit(Graph.cycle(4), DeleteVertex(0)) == Graph.from_edges([1, 2, 3], [(1, 2), (2, 3)])
    G = apply_edit(Graph.complete(3), AddVertex({0, 1}))
    assert (G.n, G.m) == (4, 5)
    assert G.neighbors(3) == {0, 1}
    assert apply_edit(Graph.complete(3), DeleteEdge(0, 1)) == Graph.from_edges(range(3), [(0, 2), (1, 2)])


@pytest.mark.parametrize("edit", [DeleteVertex(5), DeleteEdge(0, 2), AddEdge(0, 1), AddEdge(1, 1),
                                  AddVertex({0, 9})])
def test_apply_edit_rejects_bad_references(edit):
    with pytest.raises(GraphError, match=r"\d"):
        apply_edit(Graph.path(3), edit)


def test_apply_edit_is_pure():
    G = Graph.cycle(4)
    before = G.key()
    apply_edit(G, DeleteVertex(0))
    apply_edit(G, AddEdge(0, 2))
    assert G.key() == before


def test_add_vertex_allocates_max_plus_one():
    G = apply_edit(Graph.path(4), DeleteVertex(1))
    assert apply_edit(G, AddVertex({0})).vertices == (0, 2, 3, 4)
    assert apply_edit(Graph.empty(0), AddVertex(())).vertices == (0,)


def test_graph_rejects_broken_adjacency():
    with pytest.raises(GraphError):
        Graph({0: [0]})
    with pytest.raises(GraphError):
        Graph({0: [1], 1: []})
    with pytest.raises(GraphError):
        Graph({0: [2]})


def test_canonical_hash_examples():
    assert canonical_hash(Graph.cycle(5)) == canonical_hash(Graph.cycle(5))
    assert canonical_hash(Graph.cycle(5)) != canonical_hash(Graph.path(5))


def test_canonical_hash_invariant_under_every_relabeling_of_c5():
    C5 = Graph.cycle(5)
    digest = canonical_hash(C5)
    for perm in permutations(range(5)):
        assert canonical_hash(relabel(C5, perm)) == digest


def test_random_graph_examples():
    assert random_graph(5, 0.0, 1) == Graph.empty(5)
    assert random_graph(5, 1.0, 1) == Graph.complete(5)
    assert random_graph(8, 0.5, 42).edges == random_graph(8, 0.5, 42).edges
    with pytest.raises(ValueError):
        random_graph(5, 1.5, 1)


def test_random_graph_matches_lexicographic_pair_scan():
    for n, p, seed in ((6, 0.5, 42), (9, 0.3, 7), (1, 0.9, 0)):
        rng = random.Random(seed)
        expected = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        assert list(random_graph(n, p, seed).edges) == expected


@given(graphs())
def test_neighborhood_symmetry(G):
    for v in G.vertices:
        for w in G.vertices:
            assert (w in open_neighborhood(G, v)) == (v in open_neighborhood(G, w))


@given(graphs(max_n=6))
def test_common_neighborhood_is_intersection(G):
    for v, w in combinations(G.vertices, 2):
        assert common_neighborhood(G, v, w) == open_neighborhood(G, v) & open_neighborhood(G, w)


@given(graphs())
def test_delete_then_add_edge_roundtrip(G):
    for v, w in G.edges:
        H = apply_edit(apply_edit(G, DeleteEdge(v, w)), AddEdge(v, w))
        assert H == G


@given(graphs(min_n=1))
def test_add_then_delete_vertex_roundtrip(G):
    S = set(G.vertices[::2])
    H = apply_edit(G, AddVertex(S))
    assert apply_edit(H, DeleteVertex(G.next_id())) == G


@given(graphs())
def test_induced_on_everything_is_identity(G):
    H = induced(G, G.vertices)
    index = {v: i for i, v in enumerate(G.vertices)}
    assert H.edges == tuple(sorted((index[u], index[v]) for u, v in G.edges))


@settings(max_examples=50)
@given(graphs(max_n=6))
def test_canonical_hash_relabel_invariant(G):
    perm = list(reversed(G.vertices))
    assert canonical_hash(relabel(G, dict(zip(G.vertices, perm)))) == canonical_hash(G)
