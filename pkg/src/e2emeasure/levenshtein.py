"""Single-line Levenshtein distance with an explicit edit script."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Hashable, List, NamedTuple, Sequence, Tuple

from . import kernels
from .types import ErrorCounts


class Op(str, enum.Enum):
    MATCH = "match"
    SUBSTITUTE = "substitute"
    DELETE = "delete"
    INSERT = "insert"


class Step(NamedTuple):
    """One edit step; ``i``/``j`` are 1-based positions in hyp/gt (0 if none)."""

    op: Op
    i: int
    j: int


@dataclass(frozen=True)
class CharAlignment:
    ops: Tuple[Step, ...]

    @property
    def cost(self) -> int:
        return sum(step.op is not Op.MATCH for step in self.ops)

    def apply(self, hyp: Sequence[Hashable], gt: Sequence[Hashable]) -> List[Hashable]:
        """Replay the script on ``hyp``; the result equals ``gt``."""
        out: List[Hashable] = []
        for step in self.ops:
            if step.op is Op.MATCH:
                out.append(hyp[step.i - 1])
            elif step.op in (Op.SUBSTITUTE, Op.INSERT):
                out.append(gt[step.j - 1])
        return out

    def counts(self) -> ErrorCounts:
        tally = {op: 0 for op in Op}
        for step in self.ops:
            tally[step.op] += 1
        return ErrorCounts.of(
            ins=tally[Op.INSERT],
            dele=tally[Op.DELETE],
            sub=tally[Op.SUBSTITUTE],
            cor=tally[Op.MATCH],
        )


class LevenshteinResult(NamedTuple):
    distance: int
    alignment: CharAlignment
    counts: ErrorCounts


def levenshtein(h: Sequence[Hashable], g: Sequence[Hashable]) -> LevenshteinResult:
    """Edit ``h`` (hypothesis) into ``g`` (ground truth) with unit costs.

    Ties in the backtrace prefer match, then substitution, then deletion,
    then insertion, so the reported counts are deterministic.
    """
    n, m = len(h), len(g)
    table = [list(range(m + 1))]
    for i in range(1, n + 1):
        prev = table[-1]
        row = [i] * (m + 1)
        hi = h[i - 1]
        for j in range(1, m + 1):
            row[j] = min(prev[j - 1] + (hi != g[j - 1]), prev[j] + 1, row[j - 1] + 1)
        table.append(row)

    steps: List[Step] = []
    i, j = n, m
    while i or j:
        here = table[i][j]
        if i and j and table[i - 1][j - 1] + (h[i - 1] != g[j - 1]) == here:
            steps.append(Step(Op.MATCH if h[i - 1] == g[j - 1] else Op.SUBSTITUTE, i, j))
            i, j = i - 1, j - 1
        elif i and table[i - 1][j] + 1 == here:
            steps.append(Step(Op.DELETE, i, 0))
            i -= 1
        else:
            steps.append(Step(Op.INSERT, 0, j))
            j -= 1
    alignment = CharAlignment(tuple(reversed(steps)))
    return LevenshteinResult(table[n][m], alignment, alignment.counts())


def line_counts(h: Sequence[Hashable], g: Sequence[Hashable]) -> ErrorCounts:
    """Same counts as ``levenshtein(h, g).counts``, computed by the kernels."""
    if isinstance(h, str) and isinstance(g, str):
        a, b = kernels.encode(map(ord, h)), kernels.encode(map(ord, g))
    else:
        vocab: dict = {}
        a = kernels.encode(vocab.setdefault(t, len(vocab)) for t in h)
        b = kernels.encode(vocab.setdefault(t, len(vocab)) for t in g)
    ins, dele, sub, cor = kernels.edit_counts(a, b)
    return ErrorCounts.of(ins=ins, dele=dele, sub=sub, cor=cor)


def deleted(h: Sequence[Hashable]) -> ErrorCounts:
    """Counts for a hypothesis line with no ground-truth partner."""
    return ErrorCounts.of(dele=len(h))


def inserted(g: Sequence[Hashable]) -> ErrorCounts:
    """Counts for a ground-truth line with no hypothesis partner."""
    return ErrorCounts.of(ins=len(g))
