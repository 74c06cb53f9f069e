"""Randomized invariance suites over a seeded corpus of random graphs.

Each suite returns a SuiteResult with the number of checks made and every
counterexample verbatim (graph JSON plus the offending step), so a failure
can be replayed by hand.
"""

from __future__ import annotations

import os
import random
from dataclasses import asdict, dataclass, field
from typing import Callable

from .algebra import euler_characteristic, homology
from .complex import DEFAULT_FACE_CAP, clique_complex, link
from .graph import Graph, apply_edit, induced, random_graph
from .io import graph_to_json
from .itransform import MoveRejected, _edit, certify_move, check_precondition
from .reduction import Budget, Certifier, certify_contractible, replay_certificate, s_reduce
from .trace import IMove

ALL_SUITES = ("move_invariance", "s_embedding", "link_identity", "certifier_soundness")


@dataclass
class RunConfig:
    """Effective settings of a verification run (all echoed in the report)."""

    budget_nodes: int = 100_000
    budget_depth: int = 8
    seed: int = 7
    trials: int = 1000
    n: int = 12
    p: tuple[float, ...] = (0.3, 0.5, 0.7)
    moves: int = 20
    link_max_n: int = 10
    soundness_budgets: tuple[int, ...] = (1_000, 10_000, 100_000)
    face_cap: int = field(default_factory=lambda: int(os.environ.get("FLAGFOLD_FACE_CAP", DEFAULT_FACE_CAP)))
    suites: tuple[str, ...] = ALL_SUITES

    @property
    def budget(self) -> Budget:
        return Budget(self.budget_nodes, self.budget_depth)

    def to_json(self) -> dict:
        d = asdict(self)
        for k in ("p", "soundness_budgets", "suites"):
            d[k] = list(d[k])
        return d


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"checked": self.checked, "passed": self.passed, "failures": self.failures}


def corpus(config: RunConfig) -> list[tuple[int, Graph]]:
    """Trial i draws n in 1..config.n from Random(f"{seed}:{i}"); p cycles through config.p."""
    out = []
    for i in range(config.trials):
        rng = random.Random(f"{config.seed}:{i}")
        n = rng.randint(1, config.n)
        p = config.p[i % len(config.p)]
        out.append((i, random_graph(n, p, rng.getrandbits(64))))
    return out


def _random_move(G: Graph, rng: random.Random) -> IMove | None:
    verts = list(G.vertices)
    op = rng.choice(("I1", "I2", "I3", "I4"))
    if op == "I1":
        return IMove("I1", (rng.choice(verts),))
    if op == "I3":
        edges = G.edges
        return IMove("I3", rng.choice(edges)) if edges else None
    if op == "I4":
        non_edges = [(u, v) for i, u in enumerate(verts) for v in verts[i + 1:]
                     if not G.has_edge(u, v)]
        return IMove("I4", rng.choice(non_edges)) if non_edges else None
    u = rng.choice(verts)
    kind = rng.randrange(3)
    if kind == 0:
        S = G.neighbors(u) | {u}
    elif kind == 1:
        S = G.neighbors(u)
    else:
        S = rng.sample(verts, rng.randint(1, min(3, len(verts))))
    return IMove("I2", tuple(S)) if S else None


def move_invariance(config: RunConfig, graphs=None,
                    apply: Callable[[Graph, IMove], Graph] | None = None) -> SuiteResult:
    """Certified moves never change the integral homology or Euler characteristic of C(G).

    ``apply`` replaces the graph update after a move is certified; it exists
    so tests can inject a faulty implementation and watch the suite catch it.
    """
    result = SuiteResult("move_invariance")
    certifier = Certifier(config.budget)
    for i, G in graphs if graphs is not None else corpus(config):
        rng = random.Random(f"{config.seed}:moves:{i}")
        cur = G
        K = clique_complex(cur)
        prof, chi = homology(K), euler_characteristic(K)
        done = 0
        for _ in range(4 * config.moves):
            if done >= config.moves:
                break
            m = _random_move(cur, rng)
            if m is None:
                continue
            try:
                _, nxt = certify_move(cur, m, config.budget, certifier)
            except MoveRejected:
                continue
            if apply is not None:
                nxt = apply(cur, m)
            done += 1
            K = clique_complex(nxt)
            new_prof, new_chi = homology(K), euler_characteristic(K)
            result.checked += 1
            if new_prof != prof or new_chi != chi:
                result.failures.append({
                    "trial": i, "graph": graph_to_json(cur), "move": [m.op, list(m.args)],
                    "before": prof.to_json(), "after": new_prof.to_json(),
                    "euler": [chi, new_chi],
                })
                break
            cur = nxt
    return result


def s_embedding(config: RunConfig, graphs=None) -> SuiteResult:
    """Every s-collapse taken by s_reduce is accepted as a certified I1 move."""
    result = SuiteResult("s_embedding")
    certifier = Certifier(config.budget)
    for i, G in graphs if graphs is not None else corpus(config):
        if G.n == 0:
            continue
        cur = G
        for v in s_reduce(G).deleted:
            m = IMove("I1", (v,))
            verdict = check_precondition(cur, m, config.budget, certifier)
            result.checked += 1
            if not verdict.is_yes:
                result.failures.append({"trial": i, "graph": graph_to_json(cur),
                                        "vertex": v, "verdict": verdict.kind})
                break
            cur = apply_edit(cur, _edit(m))
    return result


def link_identity(config: RunConfig, graphs=None) -> SuiteResult:
    """link(C(G), v) equals C(G[N(v)]) for every vertex of every graph with n <= link_max_n."""
    result = SuiteResult("link_identity")
    for i, G in graphs if graphs is not None else corpus(config):
        if G.n > config.link_max_n:
            continue
        K = clique_complex(G)
        for v in G.vertices:
            result.checked += 1
            if link(K, v) != clique_complex(induced(G, G.neighbors(v))):
                result.failures.append({"trial": i, "graph": graph_to_json(G), "vertex": v})
    return result


def certifier_soundness(config: RunConfig, graphs=None) -> SuiteResult:
    """No graph gets both Yes and No across budgets; every Yes/No re-checks from scratch."""
    result = SuiteResult("certifier_soundness")
    certifiers = {b: Certifier(Budget(b, config.budget_depth)) for b in config.soundness_budgets}
    for i, G in graphs if graphs is not None else corpus(config):
        if G.n == 0:
            continue
        kinds = set()
        for b, cert in certifiers.items():
            budget = Budget(b, config.budget_depth)
            verdict = certify_contractible(G, budget, cert)
            kinds.add(verdict.kind)
            result.checked += 1
            if not verdict.is_unknown and not replay_certificate(G, verdict, budget):
                result.failures.append({"trial": i, "graph": graph_to_json(G), "budget": b,
                                        "verdict": verdict.kind, "problem": "replay failed"})
        if {"yes", "no"} <= kinds:
            result.failures.append({"trial": i, "graph": graph_to_json(G),
                                    "problem": "both yes and no"})
    return result


SUITES = {
    "move_invariance": move_invariance,
    "s_embedding": s_embedding,
    "link_identity": link_identity,
    "certifier_soundness": certifier_soundness,
}


def run_suites(config: RunConfig, apply: Callable[[Graph, IMove], Graph] | None = None) -> dict:
    """Run the configured suites; the report is deterministic for a given config."""
    graphs = corpus(config)
    results = {}
    for name in config.suites:
        if name == "move_invariance":
            results[name] = move_invariance(config, graphs, apply=apply)
        else:
            results[name] = SUITES[name](config, graphs)
    return {
        "config": config.to_json(),
        "suites": {name: r.to_json() for name, r in results.items()},
        "passed": all(r.passed for r in results.values()),
    }
