"""One entry point for all measure variants, per page and per test set."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from .engine import solve
from .geometry import neighborhood
from .greedy import greedy_ld
from .tokenize import BowCounts, bag_of_words, word_level
from .types import Alignment, ConfigurationError, ErrorCounts, Level, MeasureConfig, Page, TestSet, aggregate

log = logging.getLogger(__name__)

Counts = Union[ErrorCounts, BowCounts]


@dataclass(frozen=True)
class PageResult:
    page_id: str
    counts: Counts
    distance: Optional[int] = None
    alignment: Optional[Alignment] = None


def _check_geometry(hyp: Page, gt: Page) -> None:
    for side, page in (("ground truth", gt), ("hypothesis", hyp)):
        for k, line in enumerate(page.lines):
            if line.baseline is None:
                raise ConfigurationError(
                    f"geometry needs baselines: {side} line {line.id or k} of page {page.id!r} has none"
                )


def evaluate_page(hyp: Page, gt: Page, config: MeasureConfig = MeasureConfig()) -> PageResult:
    if config.level is Level.BAG_OF_WORDS:
        return PageResult(gt.id or hyp.id, bag_of_words(hyp, gt, config.tokenizer))
    near = None
    if config.geometry:
        _check_geometry(hyp, gt)
        near = neighborhood(hyp, gt, config)
    if config.level is Level.WORD:
        hyp, gt = word_level(hyp, config.tokenizer), word_level(gt, config.tokenizer)
    if config.reading_order:
        res = solve(hyp, gt, config, near)
    else:
        res = greedy_ld(hyp, gt, config, near)
    return PageResult(gt.id or hyp.id, res.counts, res.distance, res.alignment)


def _run(args: Tuple[Page, Page, MeasureConfig]) -> PageResult:
    return evaluate_page(*args)


def evaluate(test_set: Union[TestSet, Sequence[Tuple[Page, Page]]], config: MeasureConfig = MeasureConfig(),
             jobs: int = 1) -> Tuple[List[PageResult], Counts]:
    """Evaluate (gt, hyp) pairs; returns per-page results in input order and their sum."""
    pairs = test_set.pages if isinstance(test_set, TestSet) else tuple(test_set)
    work = [(hyp, gt, config) for gt, hyp in pairs]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run, work))
    else:
        results = [_run(w) for w in work]
    if config.level is Level.BAG_OF_WORDS:
        total: Counts = BowCounts()
        for r in results:
            total = total + r.counts
    else:
        total = aggregate([r.counts for r in results])
    return results, total
