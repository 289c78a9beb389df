"""Reading-order-free measures via recursive greedy line assignment.

Letting the best path jump freely between hypothesis lines at every
ground-truth break means that each ground-truth line simply picks the
hypothesis line (or, with segmentation, the run of words) that aligns to it
at minimal cost. Those picks are sorted by line error rate and committed
greedily while their hypothesis part is still free; the leftovers are
evaluated again, recursively, until one side runs out.
"""

from __future__ import annotations

from typing import Hashable, List, NamedTuple, Optional, Sequence, Tuple

from . import kernels
from .engine import Result, _Encoder, _segmented_page, _units, assemble
from .flat import BREAK, SEP, NeighborFn, flatten
from .types import Alignment, ConfigurationError, MeasureConfig, Page


class CandidateMatch(NamedTuple):
    line_cer: float
    gt_index: int
    hyp_start: int
    hyp_end: int
    line_ld: int


def line_cer(ld: int, gt_len: int) -> float:
    return ld / gt_len if gt_len else float(ld)


class _Pool:
    """Free hypothesis units; runs of adjacent free units may be merged."""

    def __init__(self, units, seg: bool, g, g_len, neighbor: Optional[NeighborFn],
                 char_text=None, char_gt=None):
        self.u = units
        self.char_text = char_text
        self.char_gt = char_gt
        self.seg = seg
        self.g = g
        self.g_len = g_len
        self.neighbor = neighbor
        self.free = [True] * len(units.length)
        self._ok = {}
        self._single = {}

    def allowed(self, k: int, x: int) -> bool:
        if self.neighbor is None:
            return True
        key = (self.u.line[k], x)
        if key not in self._ok:
            self._ok[key] = bool(self.neighbor(*key))
        return self._ok[key]

    def best(self, x: int) -> Optional[CandidateMatch]:
        """Cheapest free span for ground-truth line ``x``.

        On the word alphabet, equally cheap spans are told apart by their
        character distance to the line; remaining ties go to the earliest span.
        """
        K = len(self.free)
        best_cost, tied = None, []
        for a in range(K):
            if not self.free[a] or not self.allowed(a, x):
                continue
            if not self.seg:
                key = (a, x)
                cost = self._single.get(key)
                if cost is None:
                    cost = self._single[key] = kernels.distance(self.u.encoded[a], self.g[x])
                if best_cost is None or cost < best_cost:
                    best_cost, tied = cost, [(a, a + 1)]
                elif cost == best_cost:
                    tied.append((a, a + 1))
                continue
            ends = []
            for b in range(a + 1, K + 1):
                if not self.free[b - 1] or not self.allowed(b - 1, x):
                    break
                ends.append(self.u.end[b - 1])
            limit = best_cost if best_cost is not None else 2 ** 30
            costs = kernels.prefix_distances(self.g[x], self.u.stream, self.u.start[a], ends, limit)
            for k, cost in enumerate(costs):
                if best_cost is None or cost < best_cost:
                    best_cost, tied = cost, [(a, a + 1 + k)]
                elif cost == best_cost:
                    tied.append((a, a + 1 + k))
        if not tied:
            return None
        span = tied[0]
        if len(tied) > 1 and self.char_text is not None:
            target = self.char_gt[x]
            span = min(tied, key=lambda s: kernels.distance(self.char_text(*s), target))
        return CandidateMatch(line_cer(best_cost, self.g_len[x]), x, span[0], span[1], best_cost)


def greedy_ld(
    hyp: Page,
    gt: Page,
    config: MeasureConfig,
    neighborhood: Optional[NeighborFn] = None,
) -> Result:
    if config.reading_order:
        raise ConfigurationError("the greedy assignment is for configurations without reading order")
    if config.geometry and neighborhood is None:
        raise ConfigurationError("geometry requested but no neighborhood predicate given")
    seg = config.segmentation
    h = flatten(hyp, separators=seg)
    g = flatten(gt)
    encode = _Encoder(h.words or g.words)
    units = _units(h, seg, encode)
    gt_lines = [line.text for line in gt.lines]
    char_text = char_gt = None
    if h.words or g.words:
        pieces = _unit_tokens(h, seg)

        def char_text(a: int, b: int):
            return _chars(SEP.join(t for k in range(a, b) for t in pieces[k]))

        char_gt = [_chars(SEP.join(t)) for t in gt_lines]
    pool = _Pool(units, seg, [encode(t) for t in gt_lines], [len(t) for t in gt_lines],
                 neighborhood if config.geometry else None, char_text, char_gt)

    spans: List[Tuple[int, int, int]] = []  # (start, end, gt line)
    open_gt = list(range(len(gt_lines)))
    while open_gt and any(pool.free):
        candidates = [c for c in (pool.best(x) for x in open_gt) if c is not None]
        if not candidates:
            break
        candidates.sort()
        taken = set()
        for cand in candidates:
            if all(pool.free[k] for k in range(cand.hyp_start, cand.hyp_end)):
                for k in range(cand.hyp_start, cand.hyp_end):
                    pool.free[k] = False
                spans.append((cand.hyp_start, cand.hyp_end, cand.gt_index))
                taken.add(cand.gt_index)
        open_gt = [x for x in open_gt if x not in taken]

    for k, free in enumerate(pool.free):
        if free:
            spans.append((k, k + 1, -1))
    spans.sort()

    matched, unmatched_hyp = [], []
    if seg:
        segments = []
        for a, b, x in spans:
            segments.append(_decode(hyp, h, units, a, b))
            (matched.append((len(segments) - 1, x)) if x >= 0 else unmatched_hyp.append(len(segments) - 1))
        hyp_lines: Sequence = segments
        segmented = _segmented_page(segments)
    else:
        for a, _, x in spans:
            (matched.append((a, x)) if x >= 0 else unmatched_hyp.append(a))
        hyp_lines = [line.text for line in hyp.lines]
        segmented = None
    matched_gt = {x for _, x in matched}
    unmatched_gt = [x for x in range(len(gt_lines)) if x not in matched_gt]
    counts = assemble(hyp_lines, gt_lines, matched, unmatched_hyp, unmatched_gt)
    return Result(counts.errors, Alignment(tuple(matched), tuple(unmatched_hyp), tuple(unmatched_gt), segmented), counts)


def _decode(hyp: Page, h, units, a: int, b: int):
    """Text of hypothesis units a..b-1 as one line."""
    points = h.ext_breaks
    body = h.chars[points[a]:points[b] - 1]
    if h.words:
        return tuple(c for c in body if c not in (BREAK, SEP))
    return "".join(SEP if c == BREAK else c for c in body)


def _unit_tokens(h, seg: bool) -> List[List[str]]:
    points = h.ext_breaks if seg else h.breaks
    return [[str(c) for c in h.chars[points[k]:points[k + 1] - 1] if c not in (BREAK, SEP)]
            for k in range(len(points) - 1)]


def _chars(text: str):
    return kernels.encode(ord(c) for c in text)
