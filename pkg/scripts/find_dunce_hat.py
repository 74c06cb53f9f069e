"""Search for an 8-vertex triangulation of the dunce hat.

The dunce hat is a triangle with its sides glued by the word a·a·a^-1.
Subdividing the loop a as 1 -> 2 -> 3 -> 1 turns the triangle into a 9-gon
with boundary labels 1 2 3 1 2 3 1 3 2; five interior vertices 4..8 are
then placed by a backtracking advancing-front triangulation of the disk.
Every disk triangulation has exactly one triangle on a given front edge, so
branching over that triangle's apex enumerates all of them.  A triangulation
is kept when the quotient is a simplicial complex: triangles have distinct
labels and distinct label sets, and every interior edge has a label pair
used by no other edge.

    python scripts/find_dunce_hat.py [seed]
"""

import random
import sys

from flagfold.algebra import homology, pi1_presentation, try_trivialize
from flagfold.complex import SimplicialComplex, free_faces

BOUNDARY = [1, 2, 3, 1, 2, 3, 1, 3, 2]
N_INTERIOR = 5
BOUNDARY_PAIRS = frozenset(frozenset((BOUNDARY[i], BOUNDARY[(i + 1) % 9])) for i in range(9))


def search(rng, fronts, labels, pairs, tris, n_new):
    if not fronts:
        return list(tris) if n_new == N_INTERIOR else None
    front = min(fronts, key=len)
    rest = [f for f in fronts if f is not front]
    if len(front) == 2:
        return search(rng, rest, labels, pairs, tris, n_new)

    def tri_ok(a, b, c):
        labs = frozenset((labels[a], labels[b], labels[c]))
        return len(labs) == 3 and labs not in tris

    def edge_ok(p, q, extra=frozenset()):
        pair = frozenset((labels[p], labels[q]))
        return len(pair) == 2 and pair not in BOUNDARY_PAIRS and pair not in pairs and pair not in extra

    if len(front) == 3:
        if not tri_ok(*front):
            return None
        labs = frozenset(labels[p] for p in front)
        return search(rng, rest, labels, pairs, tris | {labs}, n_new)
    p0, p1 = front[0], front[1]
    options = list(range(2, len(front)))
    if n_new < N_INTERIOR:
        options.append(None)
    rng.shuffle(options)
    for opt in options:
        if opt is None:
            q = 9 + n_new
            lab = dict(labels)
            lab[q] = 4 + n_new
            labels_q = lab
            labs = frozenset((lab[p0], lab[p1], lab[q]))
            if len(labs) < 3 or labs in tris:
                continue
            e1 = frozenset((lab[p0], lab[q]))
            e2 = frozenset((lab[q], lab[p1]))
            if e1 in pairs or e2 in pairs or e1 == e2:
                continue
            out = search(rng, rest + [[p0, q] + front[1:]], labels_q,
                         pairs | {e1, e2}, tris | {labs}, n_new + 1)
        else:
            c = front[opt]
            if not tri_ok(p0, p1, c):
                continue
            new = set()
            if opt != 2:
                if not edge_ok(p1, c):
                    continue
                new.add(frozenset((labels[p1], labels[c])))
            if opt != len(front) - 1:
                if not edge_ok(c, p0, frozenset(new)):
                    continue
                new.add(frozenset((labels[c], labels[p0])))
            labs = frozenset((labels[p0], labels[p1], labels[c]))
            out = search(rng, rest + [front[1:opt + 1], front[opt:] + [p0]], labels,
                         pairs | new, tris | {labs}, n_new)
        if out is not None:
            return out
    return None


def main(seed=0):
    rng = random.Random(seed)
    labels = {i: lab for i, lab in enumerate(BOUNDARY)}
    tris = search(rng, [list(range(9))], labels, frozenset(), frozenset(), 0)
    if tris is None:
        print("no triangulation exists under these constraints")
        return None
    K = SimplicialComplex(tris)
    print(f"facets {[list(f) for f in K.facets]}")
    print(f"f-vector {K.f_vector()}")
    print(f"free faces: {len(free_faces(K))}")
    print(f"reduced homology: {homology(K, reduced=True)}")
    print(f"pi1 trivialized: {try_trivialize(pi1_presentation(K)).trivial}")
    return K


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 0)
