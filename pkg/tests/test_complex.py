from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings

from flagfold.algebra import euler_characteristic, homology
from flagfold.complex import (
    CollapseError,
    ComplexMoveRejected,
    ElementaryCollapse,
    ElementaryExpansion,
    FaceCapExceeded,
    FreePair,
    LinkAddVertex,
    LinkDeleteVertex,
    SimplicialComplex,
    barycentric,
    certify_complex_contractible,
    clique_complex,
    collapse_step,
    cyl,
    delete_vertex,
    expand_step,
    find_link_deletion_sequence,
    free_faces,
    greedy_collapse,
    induced_subcomplex,
    is_flag,
    is_point,
    is_subcomplex,
    link,
    link_vertex_move,
    one_skeleton,
    parse_token,
    format_token,
    simplex,
    simplex_boundary,
)
from flagfold.fixtures import complex_fixtures, dunce_hat8, get
from flagfold.graph import Graph, induced
from flagfold.reduction import Budget

from .conftest import all_subsets, brute_cliques, graphs

SMALL = [fx for fx in complex_fixtures() if len(fx.payload.vertices) <= 7]


def to_nx(G):
    H = nx.Graph()
    H.add_nodes_from(G.vertices)
    H.add_edges_from(G.edges)
    return H


def cycle_complex(vs):
    return SimplicialComplex([[vs[i], vs[(i + 1) % len(vs)]] for i in range(len(vs))])


# -- construction -----------------------------------------------------------------


def test_facets_are_reduced_to_maximal():
    K = SimplicialComplex([[0, 1], [0, 1, 2], [2], [3]])
    assert K.facets == ((0, 1, 2), (3,))
    assert K.f_vector() == (4, 3, 1)
    assert K.dim == 2


def test_token_order_and_roundtrip():
    toks = [3, "a", (0,), (0, 1), ((0,), (0, 1))]
    for t in toks:
        assert parse_token(format_token(t)) == t
    K = SimplicialComplex([[(0, 1), 2, "x"]])
    assert K.vertices == (2, "x", (0, 1))


def test_face_cap(monkeypatch):
    monkeypatch.setenv("FLAGFOLD_FACE_CAP", "10")
    with pytest.raises(FaceCapExceeded):
        simplex(4).faces()


# -- clique complex and skeleton -------------------------------------------------------


def test_clique_complex_examples(octahedron):
    assert clique_complex(Graph.complete(3)).facets == ((0, 1, 2),)
    assert clique_complex(Graph.cycle(4)).facets == ((0, 1), (0, 3), (1, 2), (2, 3))
    K = clique_complex(octahedron)
    assert len(K.facets) == 8 and all(len(f) == 3 for f in K.facets)
    brute = [c for c in brute_cliques(octahedron)
             if not any(set(c) < set(d) for d in brute_cliques(octahedron))]
    assert set(K.facets) == set(brute)
    assert clique_complex(Graph.empty(0)).is_empty()


@given(graphs(max_n=8))
def test_clique_complex_matches_networkx(G):
    expected = {tuple(sorted(c)) for c in nx.find_cliques(to_nx(G))} if G.n else set()
    assert set(clique_complex(G).facets) == expected


def test_clique_complex_uses_labels():
    H = induced(Graph.cycle(5), {2, 3, 4})
    assert clique_complex(H).facets == ((2, 3), (3, 4))


def test_one_skeleton_examples():
    assert one_skeleton(simplex(2)) == Graph.complete(3)
    assert one_skeleton(simplex_boundary(2)) == Graph.complete(3)
    assert one_skeleton(simplex(0)) == Graph.empty(1)
    G = one_skeleton(barycentric(simplex(1)))
    assert [G.label(v) for v in G.vertices] == [(0,), (0, 1), (1,)]


def test_is_flag_examples():
    assert is_flag(simplex_boundary(2)) == (False, (0, 1, 2))
    assert is_flag(simplex_boundary(3)) == (False, (0, 1, 2, 3))
    assert is_flag(SimplicialComplex([[0, 1, 2], [0, 2, 3], [0, 1, 3], [1, 2, 3], [3, 4]]))[0] is False
    assert is_flag(barycentric(get("rp2_6").payload))[0]


def brute_is_flag(K):
    G = one_skeleton(K)
    return all(K.contains_face([G.label(v) for v in c]) for c in brute_cliques(G))


@pytest.mark.parametrize("fx", SMALL, ids=lambda fx: fx.name)
def test_is_flag_agrees_with_brute_force(fx):
    K = fx.payload
    flag, witness = is_flag(K)
    assert flag == brute_is_flag(K)
    assert (clique_complex(one_skeleton(K)) == K) == flag
    if not flag:
        assert not K.contains_face(witness)
        assert all(K.contains_face(s) for s in combinations(witness, len(witness) - 1))


@given(graphs(max_n=7))
def test_clique_complex_is_flag_and_roundtrips(G):
    K = clique_complex(G)
    if G.n:
        assert is_flag(K) == (True, None)
        assert one_skeleton(K) == G


# -- links ---------------------------------------------------------------------------


def test_link_examples():
    assert link(simplex(2), 0).facets == ((1, 2),)
    assert link(simplex_boundary(2), 0).facets == ((1,), (2,))
    K = get("octahedron_complex").payload
    for v in K.vertices:
        cofaces = [tuple(u for u in f if u != v) for f in K.faces() if v in f and len(f) > 1]
        assert set(link(K, v).faces()) == set(cofaces)
        others = [u for u in range(6) if u // 2 != v // 2]
        a, b, c, d = others
        assert link(K, v) == cycle_complex([a, c, b, d])
    with pytest.raises(ValueError):
        link(K, 17)


@given(graphs(max_n=8))
def test_link_identity(G):
    K = clique_complex(G)
    for v in G.vertices:
        assert link(K, v) == clique_complex(induced(G, G.neighbors(v)))


# -- free faces and collapses --------------------------------------------------------


def brute_free_pairs(K):
    out = set()
    faces = K.faces()
    for sigma in K.facets:
        for tau in faces:
            if set(tau) < set(sigma):
                if [f for f in faces if set(tau) < set(f)] and all(
                        set(f) <= set(sigma) for f in faces if set(tau) <= set(f)):
                    out.add((tau, sigma))
    return out


@pytest.mark.parametrize("fx", SMALL + [get("dunce_hat8")], ids=lambda fx: fx.name)
def test_free_faces_match_brute_force(fx):
    K = fx.payload
    assert {(p.tau, p.sigma) for p in free_faces(K)} == brute_free_pairs(K)


def test_free_face_examples():
    pairs = free_faces(simplex(2))
    assert FreePair((0, 1), (0, 1, 2)) in pairs
    assert FreePair((0,), (0, 1, 2)) in pairs
    assert free_faces(simplex_boundary(2)) == []
    assert free_faces(dunce_hat8()) == []


def test_collapse_step_example():
    K = collapse_step(simplex(2), (0, 1), (0, 1, 2))
    assert K.facets == ((0, 2), (1, 2))
    assert expand_step(K, (0, 1), (0, 1, 2)) == simplex(2)


def test_collapse_rejects_non_free_pairs():
    with pytest.raises(CollapseError):
        collapse_step(simplex_boundary(3), (0, 1), (0, 1, 2))
    with pytest.raises(CollapseError):
        collapse_step(simplex(2), (0, 1, 2), (0, 1, 2))
    with pytest.raises(CollapseError):
        expand_step(simplex(2), (0, 1), (0, 1, 2))
    with pytest.raises(CollapseError):
        expand_step(SimplicialComplex([[0, 2]]), (0, 1), (0, 1, 2))


@pytest.mark.parametrize("fx", complex_fixtures(), ids=lambda fx: fx.name)
def test_collapse_then_expand_roundtrip(fx):
    K = fx.payload
    before = homology(K)
    for p in free_faces(K):
        L = collapse_step(K, p.tau, p.sigma)
        assert homology(L) == before
        assert expand_step(L, p.tau, p.sigma) == K


@pytest.mark.parametrize("n", range(6))
def test_simplex_collapses_to_point(n):
    K, steps = greedy_collapse(simplex(n))
    assert is_point(K)
    assert all(p.elementary for p in steps)
    # Expanding back in reverse order rebuilds the simplex exactly.
    for p in reversed(steps):
        K = expand_step(K, p.tau, p.sigma)
    assert K == simplex(n)


def test_greedy_collapse_stops_on_spheres():
    K, steps = greedy_collapse(simplex_boundary(3))
    assert steps == [] and K == simplex_boundary(3)
    K, steps = greedy_collapse(SimplicialComplex([[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3], [3, 4]]))
    assert len(steps) == 1 and K == simplex_boundary(3)


# -- barycentric subdivision -----------------------------------------------------------


def chain_counts(K):
    """Number of chains of each length in the face poset, by depth-first extension."""
    faces = [frozenset(f) for f in K.faces()]
    counts = {}

    def extend(top, length):
        counts[length] = counts.get(length, 0) + 1
        for f in faces:
            if top < f:
                extend(f, length + 1)

    for f in faces:
        extend(f, 1)
    return tuple(counts[k] for k in sorted(counts))


def test_barycentric_examples():
    B = barycentric(simplex(2))
    assert len(B.vertices) == 7 and len(B.facets) == 6 and all(len(f) == 3 for f in B.facets)
    assert euler_characteristic(B) == 1
    assert barycentric(simplex(1)).facets == (((0,), (0, 1)), ((0, 1), (1,)))


@pytest.mark.parametrize("fx", SMALL, ids=lambda fx: fx.name)
def test_barycentric_invariants(fx):
    K = fx.payload
    B = barycentric(K)
    assert B.f_vector() == chain_counts(K)
    assert homology(B) == homology(K)
    assert euler_characteristic(B) == euler_characteristic(K)
    assert is_flag(B)[0]


# -- Cyl ------------------------------------------------------------------------------


def brute_cyl(K):
    """Maximal subsets of V(K) ⊔ V(Bd K) satisfying the three cylinder conditions."""
    faces = [tuple(f) for f in K.faces()]
    ground = list(K.vertices) + faces
    simplices = []
    for s in all_subsets(ground):
        if not s:
            continue
        A = [x for x in s if x in K.vertices and not isinstance(x, tuple)]
        chain = [x for x in s if isinstance(x, tuple)]
        if A and not K.contains_face(A):
            continue
        if any(not (set(a) <= set(b) or set(b) <= set(a)) for a, b in combinations(chain, 2)):
            continue
        if any(not set(A) <= set(c) for c in chain):
            continue
        simplices.append(frozenset(s))
    return {s for s in simplices if not any(s < t for t in simplices)}


def test_cyl_examples():
    assert cyl(simplex(0)).facets == ((0, (0,)),)
    C = cyl(simplex(1))
    assert {frozenset(f) for f in C.facets} == brute_cyl(simplex(1))
    with pytest.raises(ValueError):
        cyl(SimplicialComplex())


@pytest.mark.parametrize("name", ["point", "edge", "triangle", "hollow_triangle", "path3"])
def test_cyl_matches_brute_force(name):
    K = get(name).payload
    assert {frozenset(f) for f in cyl(K).facets} == brute_cyl(K)


@pytest.mark.parametrize("name", ["point", "edge", "triangle", "hollow_triangle",
                                  "delta3_boundary", "path3", "path4"])
def test_cyl_contains_both_ends(name):
    K = get(name).payload
    C = cyl(K)
    B = barycentric(K)
    assert induced_subcomplex(C, K.vertices) == K
    assert induced_subcomplex(C, B.vertices) == B
    assert homology(C) == homology(K)


def test_link_deletion_examples():
    K = simplex(0)
    res = find_link_deletion_sequence(cyl(K), K)
    assert res.found and res.sequence == ((0,),)
    E = simplex(1)
    res = find_link_deletion_sequence(cyl(E), barycentric(E))
    assert res.found and sorted(res.sequence) == [0, 1]
    with pytest.raises(ValueError):
        find_link_deletion_sequence(E, simplex_boundary(2))


def test_link_deletion_search_exhausts_on_sphere():
    K = simplex_boundary(2)
    res = find_link_deletion_sequence(K, induced_subcomplex(K, [0]))
    assert not res.found and res.status == "exhausted"


# -- link-based vertex moves -----------------------------------------------------------


def test_link_vertex_move_examples():
    assert link_vertex_move(simplex(2), LinkDeleteVertex(0)).facets == ((1, 2),)
    with pytest.raises(ComplexMoveRejected) as info:
        link_vertex_move(simplex_boundary(2), LinkDeleteVertex(0))
    assert info.value.verdict.is_no
    for name in ("triangle", "path4", "delta3"):
        K = get(name).payload
        coned = link_vertex_move(K, LinkAddVertex(K))
        assert homology(coned) == homology(K)
        assert coned.facets == tuple(sorted(tuple(f) + (max(K.vertices) + 1,) for f in K.facets))


def test_link_add_vertex_rejects_non_contractible_link():
    K = simplex_boundary(3)
    with pytest.raises(ComplexMoveRejected):
        link_vertex_move(K, LinkAddVertex(simplex_boundary(2)))
    with pytest.raises(ValueError):
        link_vertex_move(K, LinkAddVertex(simplex(3)))


def test_elementary_moves_via_link_vertex_move():
    K = link_vertex_move(simplex(2), ElementaryCollapse((0, 1), (0, 1, 2)))
    assert link_vertex_move(K, ElementaryExpansion((0, 1), (0, 1, 2))) == simplex(2)
    with pytest.raises(CollapseError):
        link_vertex_move(simplex(2), ElementaryCollapse((0,), (0, 1, 2)))


@pytest.mark.parametrize("fx", SMALL, ids=lambda fx: fx.name)
def test_accepted_link_moves_preserve_homology(fx):
    K = fx.payload
    before = homology(K)
    for v in K.vertices:
        try:
            L = link_vertex_move(K, LinkDeleteVertex(v), Budget(200, 4))
        except ComplexMoveRejected:
            continue
        assert homology(L) == before
        assert link_vertex_move(L, LinkAddVertex(link(K, v), v)) == K


def test_certify_complex_contractible():
    assert certify_complex_contractible(simplex(3)).is_yes
    assert certify_complex_contractible(get("path4").payload).is_yes
    assert certify_complex_contractible(get("torus7").payload).is_no
    v = certify_complex_contractible(SimplicialComplex([[0, 1, 2], [0, 1, 3], [0, 2, 3]]))
    assert v.is_yes and v.method == "collapse"
    v = certify_complex_contractible(SimplicialComplex([[0, 1, 2], [2, 3], [3, 4, 5]]))
    assert v.is_yes and v.method.startswith("flag:")
    v = certify_complex_contractible(dunce_hat8(), Budget(5, 2))
    assert v.is_unknown
    with pytest.raises(ValueError):
        certify_complex_contractible(SimplicialComplex())


@settings(max_examples=30)
@given(graphs(min_n=1, max_n=7))
def test_delete_vertex_equals_induced(G):
    K = clique_complex(G)
    v = G.vertices[0]
    assert delete_vertex(K, v) == clique_complex(induced(G, [u for u in G.vertices if u != v]))
    assert is_subcomplex(delete_vertex(K, v), K)
