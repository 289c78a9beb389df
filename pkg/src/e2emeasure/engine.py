"""Exact measures for reading-order configurations (R, R+G, R+S, R+G+S).

The search runs over the lattice of point pairs (hypothesis break or split
point, ground-truth break). Between two such pairs the best path through the
flat table is an ordinary single-line alignment, so each lattice edge costs
one line-level edit distance, computed by the kernels. ``method="table"``
fills the flat table cell by cell instead; both give the same distance.
"""

from __future__ import annotations

import heapq
from bisect import bisect_right
from dataclasses import dataclass
from typing import Dict, Hashable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from . import kernels
from .flat import (
    DIAGONAL,
    SEP,
    SKIP_GT,
    SKIP_HYP,
    TIE_ORDER,
    FlatSequence,
    NeighborFn,
    flatten,
    full_table,
    move_rank,
    split_best_path,
)
from .levenshtein import deleted, inserted, line_counts
from .types import Alignment, ConfigurationError, ErrorCounts, Line, MeasureConfig, Page


class Result(NamedTuple):
    distance: int
    alignment: Alignment
    counts: ErrorCounts


class _Encoder:
    def __init__(self, words: bool):
        self.words = words
        self.vocab: Dict[Hashable, int] = {}

    def __call__(self, symbols: Sequence[Hashable]):
        if not self.words:
            return kernels.encode(ord(c) for c in symbols)
        vocab = self.vocab
        return kernels.encode(vocab.setdefault(t, len(vocab)) for t in symbols)


@dataclass
class _Units:
    """Hypothesis units between consecutive lattice points."""

    stream: object
    start: List[int]
    end: List[int]
    length: List[int]
    line: List[int]
    encoded: List[object]


def _units(h: FlatSequence, seg: bool, encode: _Encoder) -> _Units:
    points = h.ext_breaks if seg else h.breaks
    body: List[Hashable] = []
    start, end, length, line, encoded = [], [], [], [], []
    for k in range(len(points) - 1):
        piece = [c for c in h.chars[points[k]:points[k + 1] - 1] if not (h.words and c == SEP)]
        if k and seg and not h.words:
            body.append(SEP)
        start.append(len(body))
        body.extend(piece)
        end.append(len(body))
        length.append(len(piece))
        line.append(h.line_of(points[k + 1]))
        encoded.append(encode(piece))
    return _Units(encode(body), start, end, length, line, encoded)


def _suffix_bags(hyp_units, gt_lines, free: Optional[int], buckets: int = 64):
    """Symbol counts of every suffix of units / lines.

    Rare symbols share one bucket, which can only overestimate the common
    part, so the bound stays a lower bound.
    """
    def arr(seq):
        a = np.asarray(seq, dtype=np.int64)
        return a[a != free] if free is not None else a

    hyp = [arr(u) for u in hyp_units]
    gt = [arr(g) for g in gt_lines]
    pool = np.concatenate(hyp + gt + [np.zeros(0, dtype=np.int64)])
    syms, freq = np.unique(pool, return_counts=True)
    top = syms[np.argsort(-freq, kind="stable")[:buckets - 1]]
    lookup = np.full(int(pool.max(initial=0)) + 1, buckets - 1, dtype=np.int64)
    lookup[top] = np.arange(len(top))

    def bags(seqs):
        out = np.zeros((len(seqs) + 1, buckets), dtype=np.int64)
        for k in range(len(seqs) - 1, -1, -1):
            out[k] = out[k + 1] + np.bincount(lookup[seqs[k]], minlength=buckets)
        return out

    return bags(hyp), bags(gt)


def _reaches(d: Optional[int], w: int, target: int) -> bool:
    return d is not None and d + w == target


class _Lattice:
    def __init__(self, h: FlatSequence, g_lines: Sequence[Sequence[Hashable]], seg: bool,
                 neighbor: Optional[NeighborFn], encode: _Encoder):
        self.seg = seg
        self.neighbor = neighbor
        self.units = _units(h, seg, encode)
        self.K = len(self.units.length)
        self.M = len(g_lines)
        self.g = [encode(line) for line in g_lines]
        self.g_len = [len(line) for line in g_lines]
        free = ord(SEP) if seg and not encode.words else None
        self._hyp_bag, self._gt_bag = _suffix_bags(self.units.encoded, self.g, free)
        self._hyp_rest_np = self._hyp_bag.sum(axis=1)
        self._hyp_rest = self._hyp_rest_np.tolist()
        # Each remaining ground-truth line is inserted or matched to some
        # hypothesis span, which costs at least its best substring distance.
        # Only split mode needs this; there the symbol bound alone is weak.
        self._line_lb = [0] * (self.M + 1)
        if seg:
            best = kernels.best_substring_distances(self.g, self.units.stream)
            for x in range(self.M - 1, -1, -1):
                self._line_lb[x] = self._line_lb[x + 1] + min(self.g_len[x], best[x])
        self._gt_rest = self._gt_bag.sum(axis=1).tolist()
        self._ok: Dict[Tuple[int, int], bool] = {}

    def allowed(self, line: int, x: int) -> bool:
        if self.neighbor is None:
            return True
        key = (line, x)
        ok = self._ok.get(key)
        if ok is None:
            ok = self._ok[key] = bool(self.neighbor(line, x))
        return ok

    def heuristic(self, a: int, x: int) -> int:
        # Whatever the alignment, every symbol of the longer rest that has no
        # equal partner in the other rest costs at least one operation.
        # Spaces are left out in split mode, where they may vanish for free.
        common = int(np.minimum(self._hyp_bag[a], self._gt_bag[x]).sum())
        return max(max(self._hyp_rest[a], self._gt_rest[x]) - common, self._line_lb[x])

    def spans(self, a: int, x: int, limit: float, guided: bool = False):
        """Yield (b, cost) for matching units a..b-1 against ground-truth line x.

        Costs above ``limit`` may be cut off. With ``guided`` the limit is a
        total budget and each end b also has to leave room for the
        heuristic at (b, x + 1).
        """
        u = self.units
        if not self.seg:
            if a < self.K and self.allowed(u.line[a], x):
                yield a + 1, kernels.distance(u.encoded[a], self.g[x])
            return
        if a >= self.K:
            return
        lim = int(min(limit, 2 ** 30))
        # A span cannot cost less than its excess length over the line.
        stop = bisect_right(u.end, u.start[a] + self.g_len[x] + lim, a)
        if self.neighbor is not None:
            for b in range(a, stop):
                if not self.allowed(u.line[b], x):
                    stop = b
                    break
        if stop <= a:
            return
        bound = lim
        if guided:
            common = np.minimum(self._hyp_bag[a + 1:stop + 1], self._gt_bag[x + 1]).sum(axis=1)
            rest = np.maximum(self._hyp_rest_np[a + 1:stop + 1], self._gt_rest[x + 1])
            bound = (lim - np.maximum(rest - common, self._line_lb[x + 1])).tolist()
        costs = kernels.prefix_distances(self.g[x], u.stream, u.start[a], u.end[a:stop], bound)
        for k, cost in enumerate(costs):
            yield a + 1 + k, cost

    def search(self, upper: float = float("inf")):
        K, M = self.K, self.M
        width = M + 1
        goal = K * width + M
        tentative: Dict[int, int] = {0: 0}
        settled: Dict[int, int] = {}
        heap = [(self.heuristic(0, 0), 0, 0)]
        final = None
        units, g_len = self.units, self.g_len
        push, pop = heapq.heappush, heapq.heappop

        def relax(node: int, d: int) -> None:
            if d <= upper and d < tentative.get(node, d + 1):
                tentative[node] = d
                a, x = divmod(node, width)
                push(heap, (d + self.heuristic(a, x), d, node))

        while heap:
            f, d, node = pop(heap)
            if final is not None and f > final:
                break
            if node in settled or d != tentative.get(node):
                continue
            settled[node] = d
            if node == goal:
                final = d
                continue
            a, x = divmod(node, width)
            if a < K:
                relax(node + width, d + units.length[a])
            if x < M:
                relax(node + 1, d + g_len[x])
                for b, cost in self.spans(a, x, upper - d, guided=True):
                    relax(b * width + x + 1, d + cost)
        if final is None:
            raise RuntimeError("no path through the lattice")
        return final, settled

    def backtrace(self, settled: Dict[int, int], tie_order: Sequence[str]) -> List[Tuple[int, int]]:
        width = self.M + 1
        ranks = (move_rank(tie_order), move_rank(tie_order, empty_gt=True))
        b, x = self.K, self.M
        path = [(b, x)]
        while (b, x) != (0, 0):
            here = settled[b * width + x]
            options = []
            if b >= 1 and x >= 1:
                diag = self._diagonal_pred(settled, b, x, here)
                if diag is not None:
                    options.append((DIAGONAL, diag))
            if x >= 1 and _reaches(settled.get(b * width + x - 1), self.g_len[x - 1], here):
                options.append((SKIP_GT, (b, x - 1)))
            if b >= 1 and _reaches(settled.get((b - 1) * width + x), self.units.length[b - 1], here):
                options.append((SKIP_HYP, (b - 1, x)))
            if not options:
                raise RuntimeError(f"broken backtrace at {(b, x)}")
            rank = ranks[x >= 1 and self.g_len[x - 1] == 0]
            options.sort(key=lambda o: rank[o[0]])
            b, x = options[0][1]
            path.append((b, x))
        path.reverse()
        return path

    def _diagonal_pred(self, settled, b: int, x: int, here: int):
        width = self.M + 1
        u = self.units
        starts = [b - 1] if not self.seg else range(b - 1, -1, -1)
        found = None
        for a in starts:
            if self.seg and u.end[b - 1] - u.start[a] - self.g_len[x - 1] > here:
                break
            d = settled.get(a * width + x - 1)
            if d is None or d > here:
                continue
            for end, cost in self.spans(a, x - 1, here - d):
                if end == b and d + cost == here:
                    found = (a, x - 1)
                if end >= b:
                    break
        return found


def _segmented_page(segments: Sequence) -> Page:
    lines = []
    for text in segments:
        line = object.__new__(Line)
        object.__setattr__(line, "text", text)
        object.__setattr__(line, "baseline", None)
        object.__setattr__(line, "id", "")
        lines.append(line)
    return Page(tuple(lines))


def assemble(hyp_lines, gt_lines, matched, unmatched_hyp, unmatched_gt) -> ErrorCounts:
    counts = ErrorCounts()
    for y, x in matched:
        counts = counts + line_counts(hyp_lines[y], gt_lines[x])
    for y in unmatched_hyp:
        counts = counts + deleted(hyp_lines[y])
    for x in unmatched_gt:
        counts = counts + inserted(gt_lines[x])
    return counts


def solve(
    hyp: Page,
    gt: Page,
    config: MeasureConfig,
    neighborhood: Optional[NeighborFn] = None,
    method: str = "dijkstra",
    tie_order: Sequence[str] = TIE_ORDER,
) -> Result:
    """Minimal distance under the reading-order restriction, plus its alignment."""
    if not config.reading_order:
        raise ConfigurationError("the exact engine requires the reading-order restriction")
    if config.geometry and neighborhood is None:
        raise ConfigurationError("geometry requested but no neighborhood predicate given")
    neighbor = neighborhood if config.geometry else None
    seg = config.segmentation
    h = flatten(hyp, separators=seg)
    g = flatten(gt)
    gt_lines = [line.text for line in gt.lines]

    if method == "table":
        distance, path = full_table(h, g, seg, neighbor, tie_order)
    elif method == "dijkstra":
        encode = _Encoder(h.words or g.words)
        upper = float("inf")
        if seg:
            # The unsplit optimum is a feasible split-mode path: a safe pruning bound.
            plain = _Lattice(flatten(hyp), gt_lines, False, neighbor, encode)
            upper, _ = plain.search()
        lattice = _Lattice(h, gt_lines, seg, neighbor, encode)
        distance, settled = lattice.search(upper)
        points = h.ext_breaks if seg else h.breaks
        path = [(0, 0)] + [(points[a], g.breaks[x]) for a, x in lattice.backtrace(settled, tie_order)]
    else:
        raise ValueError(f"unknown method {method!r}")

    if seg:
        matched, u, v, segments = split_best_path(path, h.ext_breaks, g.breaks, h)
        hyp_lines = list(segments)
        segmented = _segmented_page(segments)
    else:
        matched, u, v = split_best_path(path, h.breaks, g.breaks)
        hyp_lines = [line.text for line in hyp.lines]
        segmented = None
    counts = assemble(hyp_lines, gt_lines, matched, u, v)
    if counts.errors != distance:
        raise RuntimeError(f"alignment cost {counts.errors} differs from distance {distance}")
    return Result(int(distance), Alignment(tuple(matched), tuple(u), tuple(v), segmented), counts)
