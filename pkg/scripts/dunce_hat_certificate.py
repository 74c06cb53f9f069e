"""Certify the 1-skeleton of Bd(dunce hat) and save the move trace.

    python scripts/dunce_hat_certificate.py [trace.json] [--budget-nodes N]

The dunce hat has no free face, so collapsing gets nowhere; its subdivision
skeleton is acyclic and the move search (with restricted gluings) finds a
trace to K1.  The saved trace can be checked independently with
``flagfold verify-trace``.
"""

import argparse
import time

from flagfold.algebra import homology
from flagfold.complex import barycentric, free_faces, one_skeleton
from flagfold.fixtures import dunce_hat8
from flagfold.io import write_trace
from flagfold.reduction import Budget, certify_contractible


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("out", nargs="?", default="dunce_hat_trace.json")
    ap.add_argument("--budget-nodes", type=int, default=Budget.nodes)
    ap.add_argument("--budget-depth", type=int, default=Budget.depth)
    args = ap.parse_args()

    K = dunce_hat8()
    B = barycentric(K)
    G = one_skeleton(B)
    print(f"dunce hat: f={K.f_vector()}, free faces: {len(free_faces(K))}")
    print(f"Bd skeleton: {G.n} vertices, {G.m} edges; reduced homology {homology(B, reduced=True)}")
    t0 = time.perf_counter()
    v = certify_contractible(G, Budget(args.budget_nodes, args.budget_depth))
    print(f"verdict: {v.kind} ({v.method}) in {time.perf_counter() - t0:.1f}s {v.diagnostics}")
    if v.is_yes:
        ops = {}
        for m in v.certificate.moves:
            ops[m.op] = ops.get(m.op, 0) + 1
        print(f"{len(v.certificate.moves)} moves: {ops}")
        write_trace(v.certificate, args.out)
        print(f"trace written to {args.out}")


if __name__ == "__main__":
    main()
