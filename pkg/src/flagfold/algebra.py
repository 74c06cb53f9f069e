"""Exact integral homology, Euler characteristic and fundamental-group presentations.

Everything here uses Python integers, so there is no overflow and no modular
shortcut anywhere on the trusted path.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from .complex import SimplicialComplex, token_key


# -- matrices ----------------------------------------------------------------


@dataclass(frozen=True)
class BoundaryMatrix:
    """Sparse integer matrix of a simplicial boundary map.

    Rows index the (d-1)-faces and columns the d-faces, both in sorted order.
    ``columns[j]`` maps row index to entry.
    """

    row_faces: tuple[tuple, ...]
    col_faces: tuple[tuple, ...]
    columns: tuple[dict[int, int], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_faces), len(self.col_faces)

    def to_dense(self) -> list[list[int]]:
        rows, cols = self.shape
        out = [[0] * cols for _ in range(rows)]
        for j, col in enumerate(self.columns):
            for i, a in col.items():
                out[i][j] = a
        return out


def _boundary_columns(
    row_faces: Sequence[tuple], col_faces: Sequence[tuple]
) -> tuple[dict[int, int], ...]:
    index = {f: i for i, f in enumerate(row_faces)}
    cols = []
    for face in col_faces:
        col = {}
        for k in range(len(face)):
            col[index[face[:k] + face[k + 1:]]] = -1 if k % 2 else 1
        cols.append(col)
    return tuple(cols)


def boundary_matrix(K: SimplicialComplex, d: int) -> BoundaryMatrix:
    """Boundary map from d-chains to (d-1)-chains, oriented by sorted vertex order."""
    if not 1 <= d <= K.dim:
        raise ValueError(f"boundary dimension {d} outside 1..{K.dim}")
    rows = K.faces(d - 1)
    cols = K.faces(d)
    return BoundaryMatrix(tuple(rows), tuple(cols), _boundary_columns(rows, cols))


# -- Smith normal form -------------------------------------------------------


@dataclass(frozen=True)
class SmithForm:
    """Invariant factors d1 | d2 | ... of an integer matrix (nonzero ones only)."""

    factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(f for f in self.factors if f > 1)


def _as_rows(M) -> dict[int, dict[int, int]]:
    if isinstance(M, BoundaryMatrix):
        rows: dict[int, dict[int, int]] = {}
        for j, col in enumerate(M.columns):
            for i, a in col.items():
                if a:
                    rows.setdefault(i, {})[j] = a
        return rows
    return {
        i: {j: int(a) for j, a in enumerate(row) if a}
        for i, row in enumerate(M)
        if any(row)
    }


def _eliminate_units(rows: dict[int, dict[int, int]]) -> int:
    """Pivot on ±1 entries until none is left; returns the number of pivots.

    Pivots are chosen by Markowitz cost (row length - 1) * (column length - 1)
    to limit fill-in, ties broken by (row, column).  Each pivot clears its
    column with row operations; the column operations that would clear the
    pivot row then touch nothing else, so row and column are simply dropped.
    """
    cols: dict[int, set[int]] = {}
    for i, row in rows.items():
        for j in row:
            cols.setdefault(j, set()).add(i)
    count = 0
    while True:
        best = None
        for j, col_rows in cols.items():
            cj = len(col_rows) - 1
            for i in col_rows:
                row = rows[i]
                if row[j] in (1, -1):
                    cost = (len(row) - 1) * cj
                    cand = (cost, i, j)
                    if best is None or cand < best:
                        best = cand
                        if cost == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            return count
        _, pi, pj = best
        prow = rows.pop(pi)
        a = prow[pj]
        for j in prow:
            cols[j].discard(pi)
        for r in list(cols[pj]):
            row = rows[r]
            q = row[pj] * a  # a = ±1, so this is row[pj] / a
            for j, x in prow.items():
                y = row.get(j, 0) - q * x
                if y:
                    if j not in row:
                        cols[j].add(r)
                    row[j] = y
                else:
                    del row[j]
                    cols[j].discard(r)
            if not row:
                del rows[r]
        del cols[pj]
        for j in [j for j, s in cols.items() if not s]:
            del cols[j]
        count += 1


def _dense_diagonal(A: list[list[int]]) -> list[int]:
    """Diagonalize a dense integer matrix by unimodular row/column operations.

    Pivot is always the smallest nonzero absolute value in the remaining block.
    Returns the absolute values of the nonzero diagonal entries (not yet in
    divisibility order).
    """
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        while True:
            i, j = piv
            A[t], A[i] = A[i], A[t]
            for row in A:
                row[t], row[j] = row[j], row[t]
            p = A[t][t]
            for r in range(t + 1, m):
                q = A[r][t] // p
                if q:
                    A[r] = [x - q * y for x, y in zip(A[r], A[t])]
            for c in range(t + 1, n):
                q = A[t][c] // p
                if q:
                    for row in A:
                        row[c] -= q * row[t]
            rest = [(abs(A[r][t]), r, t) for r in range(t + 1, m) if A[r][t]]
            rest += [(abs(A[t][c]), t, c) for c in range(t + 1, n) if A[t][c]]
            if not rest:
                break
            _, i, j = min(rest)
            piv = (i, j)
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def _divisibility_chain(diag: Iterable[int]) -> tuple[int, ...]:
    d = sorted(diag)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = gcd(d[i], d[j])
            d[i], d[j] = g, d[i] * d[j] // g
    return tuple(d)


def smith_normal_form(M) -> SmithForm:
    """Invariant factors of an integer matrix (dense rows or a BoundaryMatrix)."""
    rows = _as_rows(M)
    units = _eliminate_units(rows)
    if not rows:
        return SmithForm((1,) * units)
    row_ids = sorted(rows)
    col_ids = sorted({j for row in rows.values() for j in row})
    cidx = {j: k for k, j in enumerate(col_ids)}
    dense = [[0] * len(col_ids) for _ in row_ids]
    for r, i in enumerate(row_ids):
        for j, a in rows[i].items():
            dense[r][cidx[j]] = a
    return SmithForm((1,) * units + _divisibility_chain(_dense_diagonal(dense)))


# -- homology ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class HomologyProfile:
    """Betti numbers and torsion coefficients of integral (reduced) homology.

    ``torsion`` lists (dimension, invariant factor) pairs.  Two profiles are
    equal when they agree after dropping trailing zero Betti numbers, so
    complexes of different dimension compare naturally.
    """

    betti: tuple[int, ...]
    torsion: tuple[tuple[int, int], ...] = ()
    reduced: bool = False

    def _normal(self):
        b = list(self.betti)
        while b and b[-1] == 0:
            b.pop()
        return tuple(b), tuple(sorted(self.torsion)), self.reduced

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HomologyProfile):
            return NotImplemented
        return self._normal() == other._normal()

    def __hash__(self) -> int:
        return hash(self._normal())

    def betti_padded(self, length: int) -> tuple[int, ...]:
        return (tuple(self.betti) + (0,) * length)[:length]

    def torsion_in(self, d: int) -> tuple[int, ...]:
        return tuple(f for dim, f in self.torsion if dim == d)

    def is_trivial(self) -> bool:
        """True when every group vanishes (for a reduced profile: acyclic)."""
        return not any(self.betti) and not self.torsion

    def to_json(self) -> dict:
        return {
            "reduced": self.reduced,
            "betti": list(self.betti),
            "torsion": [[d, f] for d, f in self.torsion],
        }

    @classmethod
    def from_json(cls, data: dict) -> "HomologyProfile":
        return cls(
            tuple(data["betti"]),
            tuple((int(d), int(f)) for d, f in data.get("torsion", [])),
            bool(data.get("reduced", False)),
        )

    def __str__(self) -> str:
        tors = ", ".join(f"Z/{f} in H{d}" for d, f in self.torsion)
        tag = "reduced " if self.reduced else ""
        return f"{tag}betti={self.betti}" + (f" torsion=[{tors}]" if tors else "")


def homology(K: SimplicialComplex, reduced: bool = False) -> HomologyProfile:
    if K.is_empty():
        raise ValueError("homology of the empty complex is not defined here")
    top = K.dim
    faces = [K.faces(d) for d in range(top + 1)]
    ranks = [0] * (top + 2)
    torsion_of = [()] * (top + 2)
    for d in range(1, top + 1):
        snf = smith_normal_form(
            BoundaryMatrix(tuple(faces[d - 1]), tuple(faces[d]),
                           _boundary_columns(faces[d - 1], faces[d]))
        )
        ranks[d] = snf.rank
        torsion_of[d] = snf.torsion
    if reduced:
        ranks[0] = 1  # augmentation onto Z is surjective on a nonempty complex
    betti = tuple(len(faces[d]) - ranks[d] - ranks[d + 1] for d in range(top + 1))
    torsion = tuple((d, f) for d in range(top + 1) for f in torsion_of[d + 1])
    return HomologyProfile(betti, torsion, reduced)


def euler_characteristic(K: SimplicialComplex) -> int:
    return sum((-1) ** d * n for d, n in enumerate(K.f_vector()))


# -- fundamental group ---------------------------------------------------------


@dataclass(frozen=True)
class Presentation:
    """Group presentation.  Letters are signed 1-based generator indices."""

    generators: tuple
    relators: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {"generators": [list(g) if isinstance(g, tuple) else g
                               for g in self.generators],
                "relators": [list(r) for r in self.relators]}


def pi1_presentation(K: SimplicialComplex) -> Presentation:
    """Edge-path presentation relative to a breadth-first spanning tree.

    The tree grows from the least vertex, visiting neighbors in sorted order.
    Generators are the non-tree edges (oriented low to high); each triangle
    (a, b, c) contributes the word ab · bc · (ac)^-1 with tree edges erased.
    """
    if K.is_empty():
        raise ValueError("fundamental group of the empty complex")
    verts = sorted(K.vertices, key=token_key)
    edges = K.faces(1)
    adj = {v: [] for v in verts}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    root = verts[0]
    tree = set()
    seen = {root}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in sorted(adj[v], key=token_key):
            if w not in seen:
                seen.add(w)
                tree.add((v, w) if token_key(v) < token_key(w) else (w, v))
                queue.append(w)
    if len(seen) != len(verts):
        raise ValueError("complex is disconnected; pick a component first")
    gens = [e for e in edges if e not in tree]
    gid = {e: i + 1 for i, e in enumerate(gens)}

    def letter(a, b, sign):
        g = gid.get((a, b))
        return [] if g is None else [sign * g]

    relators = tuple(
        tuple(letter(a, b, 1) + letter(b, c, 1) + letter(a, c, -1))
        for a, b, c in K.faces(2)
    )
    return Presentation(tuple(gens), relators)


@dataclass(frozen=True)
class AbelianGroup:
    rank: int
    torsion: tuple[int, ...] = ()


def abelianization(P: Presentation) -> AbelianGroup:
    ngen = len(P.generators)
    matrix = []
    for r in P.relators:
        row = [0] * ngen
        for x in r:
            row[abs(x) - 1] += 1 if x > 0 else -1
        matrix.append(row)
    snf = smith_normal_form(matrix) if ngen else SmithForm(())
    return AbelianGroup(ngen - snf.rank, snf.torsion)


def _free_reduce(word: Sequence[int]) -> list[int]:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def _cyclic_reduce(word: Sequence[int]) -> tuple[int, ...]:
    w = _free_reduce(word)
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return tuple(w[i:j + 1])


def _canonical_relator(word: tuple[int, ...]) -> tuple[int, ...]:
    """Least rotation of the word or of its inverse."""
    inv = tuple(-x for x in reversed(word))
    rots = [w[k:] + w[:k] for w in (word, inv) for k in range(len(w))]
    return min(rots) if rots else ()


@dataclass
class TrivializeResult:
    trivial: bool
    residual: Presentation
    steps: int
    reason: str = ""


def try_trivialize(P: Presentation, max_steps: int = 10_000,
                   max_length: int = 100_000) -> TrivializeResult:
    """Budgeted Tietze simplification; ``trivial`` is only ever a proof.

    Each round cyclically reduces relators, drops empty and duplicate ones
    (up to rotation and inversion), then eliminates a generator that occurs
    exactly once in some relator by solving for it and substituting.
    """
    gens = set(range(1, len(P.generators) + 1))
    rels = [_cyclic_reduce(r) for r in P.relators]
    steps = 0

    def residual():
        return Presentation(tuple(sorted(gens)), tuple(rels))

    while True:
        rels = sorted({_canonical_relator(r) for r in rels if r}, key=lambda r: (len(r), r))
        if not gens:
            return TrivializeResult(True, residual(), steps)
        if steps >= max_steps:
            return TrivializeResult(False, residual(), steps, "step budget exhausted")
        if sum(map(len, rels)) > max_length:
            return TrivializeResult(False, residual(), steps, "relator length budget exhausted")
        pick = None
        for idx, r in enumerate(rels):
            counts: dict[int, int] = {}
            for x in r:
                counts[abs(x)] = counts.get(abs(x), 0) + 1
            once = sorted(g for g, c in counts.items() if c == 1)
            if once:
                pick = (idx, once[0])
                break
        if pick is None:
            return TrivializeResult(False, residual(), steps, "no generator occurs exactly once")
        idx, g = pick
        r = rels.pop(idx)
        k = next(i for i, x in enumerate(r) if abs(x) == g)
        rest = r[k + 1:] + r[:k]  # r is conjugate to g^e · rest
        if r[k] > 0:
            image = tuple(-x for x in reversed(rest))
        else:
            image = rest
        inv_image = tuple(-x for x in reversed(image))
        new_rels = []
        for w in rels:
            out: list[int] = []
            for x in w:
                if x == g:
                    out.extend(image)
                elif x == -g:
                    out.extend(inv_image)
                else:
                    out.append(x)
            new_rels.append(_cyclic_reduce(out))
        rels = new_rels
        gens.discard(g)
        steps += 1
