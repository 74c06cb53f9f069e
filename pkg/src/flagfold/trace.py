"""Move and trace records shared by the reduction and itransform modules."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .graph import Graph

MOVE_OPS = ("I1", "I2", "I3", "I4", "S-")


@dataclass(frozen=True)
class IMove:
    """One rewriting step.

    ``op`` is one of I1 (delete vertex), I2 (glue vertex onto a set),
    I3 (delete edge), I4 (glue edge) or S- (s-collapse: delete a vertex whose
    neighborhood is dismantlable).  ``args`` holds the vertex, the vertex set,
    or the vertex pair.  ``cert`` is the evidence recorded when the move was
    made: a Verdict for I-moves, a plain dict for S- moves.  Verification
    never reads it.
    """

    op: str
    args: tuple
    cert: Any = None

    def __post_init__(self):
        if self.op not in MOVE_OPS:
            raise ValueError(f"unknown move op {self.op!r}")
        if self.op == "I2":
            object.__setattr__(self, "args", tuple(sorted(set(self.args))))
        elif self.op in ("I3", "I4"):
            if len(self.args) != 2 or self.args[0] == self.args[1]:
                raise ValueError(f"{self.op} takes two distinct vertices, got {self.args}")
            object.__setattr__(self, "args", tuple(sorted(self.args)))
        elif len(self.args) != 1:
            raise ValueError(f"{self.op} takes one vertex, got {self.args}")

    def without_cert(self) -> "IMove":
        return IMove(self.op, self.args)

    def __str__(self) -> str:
        return f"{self.op}{self.args}"


@dataclass(frozen=True)
class ITrace:
    start: Graph
    moves: tuple[IMove, ...] = field(default_factory=tuple)
    end: Graph | None = None

    def __len__(self) -> int:
        return len(self.moves)
