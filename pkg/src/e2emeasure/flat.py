"""Pages as one flat symbol sequence, and the full-table DP over it.

Positions are 1-based like the DP grid: ``chars[k - 1]`` is the symbol at
position ``k`` and point ``(0, 0)`` is the virtual origin before the first
line break.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from typing import Callable, Hashable, List, Optional, Sequence, Tuple

from .types import LINE_BREAK, SPACE, InvalidInputError, Line, Page

BREAK = LINE_BREAK
SEP = SPACE
INF = float("inf")

# Predecessor preference when several moves reach a point pair at equal cost.
DIAGONAL, SKIP_GT, SKIP_HYP = "diagonal", "skip_gt", "skip_hyp"
TIE_ORDER: Tuple[str, ...] = (SKIP_GT, DIAGONAL, SKIP_HYP)

NeighborFn = Callable[[int, int], bool]


def move_rank(tie_order: Sequence[str], empty_gt: bool = False) -> dict:
    """Preference rank of each move.

    Matching a hypothesis line against an empty ground-truth line always
    ties with skipping both and yields the same counts; the match is
    preferred so that identical pages align line by line.
    """
    order = list(tie_order)
    if empty_gt and DIAGONAL in order:
        order.remove(DIAGONAL)
        order.insert(0, DIAGONAL)
    return {name: k for k, name in enumerate(order)}


@dataclass(frozen=True)
class FlatSequence:
    chars: Tuple[Hashable, ...]
    breaks: Tuple[int, ...]
    ext_breaks: Tuple[int, ...]
    words: bool = False

    def __len__(self) -> int:
        return len(self.chars)

    def line_of(self, position: int) -> int:
        """0-based line holding the symbol just before ``position``."""
        return bisect_left(self.breaks, position) - 1


def flatten(page: Page | Sequence, separators: bool = False) -> FlatSequence:
    """Concatenate lines with a break before, between and after them.

    With ``separators`` token lines get a separator between tokens so they can
    be split the way spaces split character lines.
    """
    lines = page.lines if isinstance(page, Page) else tuple(
        line if isinstance(line, Line) else Line(line) for line in page
    )
    words = any(not isinstance(line.text, str) for line in lines)
    chars: List[Hashable] = [BREAK]
    for line in lines:
        text = line.text
        if isinstance(text, str) and BREAK in text:
            raise InvalidInputError("line contains a line break")
        if words and separators:
            for k, token in enumerate(text):
                if k:
                    chars.append(SEP)
                chars.append(token)
        else:
            chars.extend(text)
        chars.append(BREAK)
    breaks = tuple(k + 1 for k, c in enumerate(chars) if c == BREAK)
    ext = tuple(k + 1 for k, c in enumerate(chars) if c == BREAK or c == SEP)
    return FlatSequence(tuple(chars), breaks, ext, words)


def unflatten(flat: FlatSequence) -> Page:
    lines = []
    for start, end in zip(flat.breaks, flat.breaks[1:]):
        body = flat.chars[start:end - 1]
        if flat.words:
            lines.append(Line(tuple(c for c in body if c != SEP)))
        else:
            lines.append(Line("".join(body)))
    return Page(tuple(lines))


def substitution_cost(hi: Hashable, gj: Hashable, seg: bool = False, words: bool = False) -> float:
    """Cost of aligning hypothesis symbol ``hi`` with ground-truth symbol ``gj``.

    A hypothesis break never aligns with a regular symbol. With ``seg`` an
    inner hypothesis break behaves exactly like a space, so it aligns with a
    ground-truth space for free. On the word alphabet separators carry no
    content and never align with a token.
    """
    if gj == BREAK:
        return 0 if hi == BREAK else INF
    if not seg:
        if hi == BREAK:
            return INF
        return 0 if hi == gj else 1
    if words:
        return INF if hi in (BREAK, SEP) else (0 if hi == gj else 1)
    if hi == BREAK:
        hi = SEP
    return 0 if hi == gj else 1


def deletion_cost(hi: Hashable, seg: bool = False, words: bool = False) -> float:
    if not seg:
        return INF if hi == BREAK else 1
    if words:
        return 0 if hi in (BREAK, SEP) else 1
    return 1


class _Gate:
    """Geometric gate for the diagonal move at a point pair."""

    def __init__(self, h: FlatSequence, neighbor: Optional[NeighborFn]):
        self.h = h
        self.neighbor = neighbor

    def segment_end(self, i: int, x: int) -> bool:
        if self.neighbor is None:
            return True
        return self.neighbor(self.h.line_of(i), x)

    def crossing(self, i: int, x: int) -> bool:
        """Entering an inner hypothesis break merges the lines on both sides."""
        if self.neighbor is None:
            return True
        y = self.h.line_of(i)
        return self.neighbor(y, x) and self.neighbor(y + 1, x)


def full_table(
    h: FlatSequence,
    g: FlatSequence,
    seg: bool = False,
    neighbor: Optional[NeighborFn] = None,
    tie_order: Sequence[str] = TIE_ORDER,
) -> Tuple[int, List[Tuple[int, int]]]:
    """Evaluate the whole (|h|+1) x (|g|+1) table and backtrace the best path."""
    n, m = len(h), len(g)
    hs, gs = h.chars, g.chars
    words = h.words or g.words
    points = h.ext_breaks if seg else h.breaks
    point_index = {p: k for k, p in enumerate(points)}
    gbreak_index = {p: k for k, p in enumerate(g.breaks)}
    gate = _Gate(h, neighbor)
    gt_line_of = [0] * (m + 1)
    for j in range(1, m + 1):
        gt_line_of[j] = bisect_left(g.breaks, j) - 1

    D = [[INF] * (m + 1) for _ in range(n + 1)]
    D[0][0] = 0

    def point_moves(i: int, j: int):
        y, x = point_index[i], gbreak_index[j]
        moves = []
        if x == 0 and y == 0:
            moves.append((DIAGONAL, (0, 0), 0))
        elif x >= 1 and y >= 1 and gate.segment_end(i, x - 1):
            moves.append((DIAGONAL, (i - 1, j - 1), 0))
        if y >= 1:
            prev = points[y - 1]
            moves.append((SKIP_HYP, (prev, j), i - prev - 1))
        if x >= 1:
            prev = g.breaks[x - 1]
            moves.append((SKIP_GT, (i, prev), j - prev - 1))
        return moves

    def inner_moves(i: int, j: int):
        hi, gj = hs[i - 1], gs[j - 1]
        # Only breaks between two lines can be merged over.
        inner = seg and not (hi == BREAK and (i == 1 or i == n))
        crossing_ok = True
        if inner and hi == BREAK and neighbor is not None and gj != BREAK:
            crossing_ok = gate.crossing(i, gt_line_of[j])
        moves = []
        if crossing_ok:
            moves.append(("sub", (i - 1, j - 1), substitution_cost(hi, gj, inner, words)))
            moves.append(("del", (i - 1, j), deletion_cost(hi, inner, words)))
        moves.append(("ins", (i, j - 1), INF if gj == BREAK else 1))
        return moves

    def moves_at(i: int, j: int):
        if i in point_index and j in gbreak_index:
            return point_moves(i, j)
        return inner_moves(i, j)

    for i in range(1, n + 1):
        Di = D[i]
        for j in range(1, m + 1):
            best = INF
            for _, (pi, pj), w in moves_at(i, j):
                v = D[pi][pj] + w
                if v < best:
                    best = v
            Di[j] = best

    path = [(n, m)]
    i, j = n, m
    while (i, j) != (0, 0):
        here = D[i][j]
        moves = [mv for mv in moves_at(i, j) if D[mv[1][0]][mv[1][1]] + mv[2] == here]
        if not moves:
            raise RuntimeError(f"broken backtrace at {(i, j)}")
        x = gbreak_index.get(j, 0)
        empty = i in point_index and x >= 1 and g.breaks[x] - g.breaks[x - 1] == 1
        rank = move_rank(tie_order, empty)
        moves.sort(key=lambda mv: rank.get(mv[0], 0))
        i, j = moves[0][1]
        path.append((i, j))
    path.reverse()
    total = D[n][m]
    return (int(total) if total != INF else total), path


def split_best_path(
    path: Sequence[Tuple[int, int]],
    breaks_h: Sequence[int],
    breaks_g: Sequence[int],
    hyp: Optional[FlatSequence] = None,
):
    """Turn a best path into matched / unmatched line indices.

    Only path points at which both coordinates sit on a break are used. When
    ``hyp`` is given (segmentation mode) the hypothesis between consecutive
    points becomes a new line of the re-segmented hypothesis, which is
    returned as fourth element; indices then refer to that page.
    """
    bh = {p: k for k, p in enumerate(breaks_h)}
    bg = {p: k for k, p in enumerate(breaks_g)}
    pts = [q for q in path if q != (0, 0) and q[0] in bh and q[1] in bg]
    if not pts or pts[0] != (breaks_h[0], breaks_g[0]) or pts[-1] != (breaks_h[-1], breaks_g[-1]):
        raise RuntimeError("best path does not run from the first to the last break pair")
    matched, unmatched_hyp, unmatched_gt = [], [], []
    segments: List = []
    p = pts[0]
    for q in pts[1:]:
        x, x2 = bg[p[1]], bg[q[1]]
        if hyp is None:
            y, y2 = bh[p[0]], bh[q[0]]
            if y < y2:
                if x < x2:
                    matched.append((y, x))
                else:
                    unmatched_hyp.append(y)
            else:
                unmatched_gt.append(x)
        else:
            if p[0] < q[0]:
                body = hyp.chars[p[0]:q[0] - 1]
                if hyp.words:
                    segments.append(tuple(c for c in body if c not in (BREAK, SEP)))
                else:
                    segments.append("".join(SEP if c == BREAK else c for c in body))
                if x < x2:
                    matched.append((len(segments) - 1, x))
                else:
                    unmatched_hyp.append(len(segments) - 1)
            else:
                unmatched_gt.append(x)
        p = q
    if hyp is None:
        return matched, unmatched_hyp, unmatched_gt
    return matched, unmatched_hyp, unmatched_gt, segments
