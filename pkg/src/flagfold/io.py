"""Text formats for graphs and complexes, JSON for verdicts and traces.

Graph text format::

    # comment
    n m
    u v        (m lines, 0 <= u < v < n)

Complex text format: one facet per line, whitespace-separated vertex tokens.
Tokens are integers, bare words, or parenthesized tuples such as ``(0,1)``.
"""

from __future__ import annotations

import json
from typing import Any

from .algebra import HomologyProfile
from .complex import FreePair, SimplicialComplex, format_token, parse_token
from .graph import Graph
from .reduction import Verdict
from .trace import IMove, ITrace


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def parse_graph(text: str) -> Graph:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError(1, "missing header 'n m'")
    no, header = lines[0]
    try:
        n, m = (int(x) for x in header.split())
    except ValueError:
        raise ParseError(no, f"header must be two integers 'n m', got {header!r}") from None
    if n < 0 or m < 0:
        raise ParseError(no, "n and m must be non-negative")
    body = lines[1:]
    if len(body) != m:
        last = body[-1][0] if body else no
        raise ParseError(last, f"header announces {m} edges, found {len(body)}")
    edges = set()
    for no, line in body:
        parts = line.split()
        try:
            u, v = (int(x) for x in parts)
        except ValueError:
            raise ParseError(no, f"edge must be two integers 'u v', got {line!r}") from None
        if not 0 <= u < v < n:
            raise ParseError(no, f"edge {u} {v} violates 0 <= u < v < n={n}")
        if (u, v) in edges:
            raise ParseError(no, f"duplicate edge {u} {v}")
        edges.add((u, v))
    return Graph.from_edges(range(n), edges)


def format_graph(G: Graph) -> str:
    """Write ``G`` in the text format; ids are compacted to 0..n-1 in order."""
    index = {v: i for i, v in enumerate(G.vertices)}
    edges = sorted((index[u], index[v]) for u, v in G.edges)
    lines = [f"{G.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def parse_complex(text: str) -> SimplicialComplex:
    facets = []
    for no, line in _content_lines(text):
        try:
            facet = [parse_token(tok) for tok in line.split()]
        except (ValueError, SyntaxError):
            raise ParseError(no, f"unreadable vertex token in {line!r}") from None
        if len(set(facet)) != len(facet):
            raise ParseError(no, f"repeated vertex in facet {line!r}")
        facets.append(facet)
    try:
        return SimplicialComplex(facets)
    except TypeError as exc:
        raise ParseError(0, str(exc)) from None


def format_complex(K: SimplicialComplex) -> str:
    return "".join(" ".join(format_token(v) for v in f) + "\n" for f in K.facets)


# -- JSON -------------------------------------------------------------------------


def graph_to_json(G: Graph) -> dict:
    out: dict[str, Any] = {"vertices": list(G.vertices), "edges": [list(e) for e in G.edges]}
    if G.labels:
        out["labels"] = {str(v): format_token(lab) for v, lab in sorted(G.labels.items())}
    return out


def graph_from_json(data: dict) -> Graph:
    labels = {int(k): parse_token(v) for k, v in data.get("labels", {}).items()}
    return Graph.from_edges(data["vertices"], (tuple(e) for e in data["edges"]), labels or None)


def move_to_json(m: IMove) -> dict:
    if isinstance(m.cert, Verdict):
        cert = verdict_to_json(m.cert)
    else:
        cert = m.cert
    return {"op": m.op, "args": list(m.args), "cert": cert}


def move_from_json(data: dict) -> IMove:
    cert = data.get("cert")
    if isinstance(cert, dict) and "verdict" in cert:
        cert = verdict_from_json(cert)
    return IMove(data["op"], tuple(data["args"]), cert)


def trace_to_json(t: ITrace) -> dict:
    return {
        "start": graph_to_json(t.start),
        "moves": [move_to_json(m) for m in t.moves],
        "end": None if t.end is None else graph_to_json(t.end),
    }


def trace_from_json(data: dict) -> ITrace:
    end = data.get("end")
    return ITrace(
        graph_from_json(data["start"]),
        tuple(move_from_json(m) for m in data["moves"]),
        None if end is None else graph_from_json(end),
    )


def verdict_to_json(v: Verdict) -> dict:
    out: dict[str, Any] = {"verdict": v.kind, "method": v.method}
    c = v.certificate
    if isinstance(c, ITrace):
        out["trace"] = trace_to_json(c)
    elif isinstance(c, list) and all(isinstance(p, FreePair) for p in c):
        out["collapse"] = [[[format_token(x) for x in p.tau],
                            [format_token(x) for x in p.sigma]] for p in c]
    if v.witness is not None:
        out["witness"] = v.witness.to_json()
    if v.diagnostics:
        out["diagnostics"] = v.diagnostics
    return out


def verdict_from_json(data: dict) -> Verdict:
    cert = None
    if "trace" in data:
        cert = trace_from_json(data["trace"])
    elif "collapse" in data:
        cert = [FreePair(tuple(map(parse_token, t)), tuple(map(parse_token, s)))
                for t, s in data["collapse"]]
    witness = HomologyProfile.from_json(data["witness"]) if "witness" in data else None
    return Verdict(data["verdict"], data.get("method", ""), cert, witness,
                   data.get("diagnostics", ""))


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def read_trace(path: str) -> ITrace:
    with open(path) as fh:
        return trace_from_json(json.load(fh))


def write_trace(t: ITrace, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(trace_to_json(t)))
