"""Shared value types: lines, pages, measure configuration and error tallies."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, fields
from typing import Iterable, Optional, Sequence, Tuple, Union

SPACE = " "
LINE_BREAK = "\n"

Point = Tuple[int, int]
Symbols = Union[str, Tuple[str, ...]]


class EvaluationError(Exception):
    """Base class for errors raised while evaluating pages."""


class UndefinedRateError(EvaluationError, ZeroDivisionError):
    """A rate was requested with a zero denominator."""


class ConfigurationError(EvaluationError, ValueError):
    """The measure configuration cannot be applied to the given input."""


class InvalidInputError(EvaluationError, ValueError):
    """Input text or geometry violates a structural invariant."""


@dataclass(frozen=True)
class Line:
    """One text line.

    ``text`` is either a string (character alphabet) or a tuple of tokens
    (word alphabet, see :func:`e2emeasure.tokenize.word_level`).
    """

    text: Symbols = ""
    baseline: Optional[Tuple[Point, ...]] = None
    id: str = ""

    def __post_init__(self) -> None:
        text = self.text
        if isinstance(text, list):
            text = tuple(text)
            object.__setattr__(self, "text", text)
        if isinstance(text, str):
            if LINE_BREAK in text:
                raise InvalidInputError(f"line {self.id!r} contains a line break")
            if text != text.strip(SPACE):
                raise InvalidInputError(
                    f"line {self.id!r} has leading or trailing spaces: {text!r}"
                )
        else:
            for token in text:
                if not token or LINE_BREAK in token:
                    raise InvalidInputError(f"line {self.id!r} has an invalid token {token!r}")
        if self.baseline is not None:
            points = tuple((int(x), int(y)) for x, y in self.baseline)
            if not points:
                raise InvalidInputError(f"line {self.id!r} has an empty baseline")
            if any(x < 0 or y < 0 for x, y in points):
                raise InvalidInputError(f"line {self.id!r} has negative baseline coordinates")
            object.__setattr__(self, "baseline", points)

    def __len__(self) -> int:
        return len(self.text)


@dataclass(frozen=True)
class Page:
    """Lines of one document image, listed in reading order."""

    lines: Tuple[Line, ...] = ()
    id: str = ""

    def __post_init__(self) -> None:
        lines = tuple(
            line if isinstance(line, Line) else Line(line) for line in self.lines
        )
        object.__setattr__(self, "lines", lines)

    @classmethod
    def from_texts(cls, texts: Iterable[Symbols], id: str = "") -> "Page":
        return cls(tuple(Line(t) for t in texts), id=id)

    @property
    def texts(self) -> Tuple[Symbols, ...]:
        return tuple(line.text for line in self.lines)

    def __len__(self) -> int:
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)

    def __getitem__(self, index: int) -> Line:
        return self.lines[index]

    @property
    def length(self) -> int:
        """Total number of symbols over all lines."""
        return sum(len(line) for line in self.lines)


@dataclass(frozen=True)
class TestSet:
    """Ground-truth/hypothesis page pairs, matched by page id."""

    __test__ = False  # not a pytest class

    pages: Tuple[Tuple[Page, Page], ...] = ()

    def __post_init__(self) -> None:
        seen = set()
        for gt, _ in self.pages:
            if gt.id in seen:
                raise InvalidInputError(f"duplicate page id {gt.id!r}")
            seen.add(gt.id)


class Level(str, enum.Enum):
    CHARACTER = "cer"
    WORD = "wer"
    BAG_OF_WORDS = "bow"


@dataclass(frozen=True)
class MeasureConfig:
    """Switches selecting one of the eight measure variants plus its alphabet."""

    reading_order: bool = True
    geometry: bool = False
    segmentation: bool = False
    level: Level = Level.CHARACTER
    tokenizer: str = "space"
    tolerance_cap: float = 30.0
    tolerance_fraction: float = 0.25

    def __post_init__(self) -> None:
        object.__setattr__(self, "level", Level(self.level))
        if self.tolerance_cap <= 0 or self.tolerance_fraction <= 0:
            raise ConfigurationError("tolerance cap and fraction must be positive")

    @property
    def name(self) -> str:
        flags = ",".join(
            flag
            for flag, on in (("R", self.reading_order), ("G", self.geometry), ("S", self.segmentation))
            if on
        )
        base = {"cer": "CER", "wer": "WER", "bow": "BOW"}[self.level.value]
        return f"{base}^{{{flags}}}" if flags else base


@dataclass(frozen=True)
class ErrorCounts:
    """Edit-operation tallies.

    ``dele`` counts hypothesis symbols removed, ``ins`` counts ground-truth
    symbols that are missing from the hypothesis.
    """

    ins: int = 0
    dele: int = 0
    sub: int = 0
    cor: int = 0
    gt_len: int = 0
    hyp_len: int = 0

    def __post_init__(self) -> None:
        if min(self.ins, self.dele, self.sub, self.cor, self.gt_len, self.hyp_len) < 0:
            raise ValueError(f"negative count in {self}")

    @classmethod
    def of(cls, ins: int = 0, dele: int = 0, sub: int = 0, cor: int = 0) -> "ErrorCounts":
        """Counts with the lengths derived from the sum identities."""
        return cls(ins, dele, sub, cor, gt_len=cor + sub + ins, hyp_len=cor + sub + dele)

    def __add__(self, other: "ErrorCounts") -> "ErrorCounts":
        return ErrorCounts(*(getattr(self, f.name) + getattr(other, f.name) for f in fields(self)))

    @property
    def errors(self) -> int:
        return self.ins + self.dele + self.sub

    @property
    def consistent(self) -> bool:
        return (
            self.cor + self.sub + self.dele == self.hyp_len
            and self.cor + self.sub + self.ins == self.gt_len
        )

    def as_dict(self) -> dict:
        return {
            "ins": self.ins,
            "del": self.dele,
            "sub": self.sub,
            "cor": self.cor,
            "gt_len": self.gt_len,
            "hyp_len": self.hyp_len,
        }


@dataclass(frozen=True)
class Alignment:
    """Line assignment between a hypothesis page and a ground-truth page.

    Indices are 0-based. ``matched`` holds (hyp, gt) pairs; with segmentation
    active the hyp indices refer to the lines of ``segmented_hyp``.
    """

    matched: Tuple[Tuple[int, int], ...] = ()
    unmatched_hyp: Tuple[int, ...] = ()
    unmatched_gt: Tuple[int, ...] = ()
    segmented_hyp: Optional[Page] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "matched", tuple(sorted(self.matched)))
        object.__setattr__(self, "unmatched_hyp", tuple(sorted(self.unmatched_hyp)))
        object.__setattr__(self, "unmatched_gt", tuple(sorted(self.unmatched_gt)))

    def check(self, n_hyp: int, n_gt: int, reading_order: bool = False) -> None:
        """Raise ``AssertionError`` if the assignment is not a valid one."""
        hyp = [y for y, _ in self.matched] + list(self.unmatched_hyp)
        gt = [x for _, x in self.matched] + list(self.unmatched_gt)
        assert len(hyp) == len(set(hyp)), "hyp line used twice"
        assert len(gt) == len(set(gt)), "gt line used twice"
        assert sorted(hyp) == list(range(n_hyp)), "hyp lines not covered"
        assert sorted(gt) == list(range(n_gt)), "gt lines not covered"
        assert 2 * len(self.matched) + len(self.unmatched_hyp) + len(self.unmatched_gt) == n_hyp + n_gt
        if reading_order:
            xs = [x for _, x in self.matched]
            assert all(a < b for a, b in zip(xs, xs[1:])), "reading order violated"


def cer(counts: ErrorCounts) -> float:
    """Error rate: (ins + del + sub) / gt_len. Can exceed 1."""
    if counts.gt_len == 0:
        raise UndefinedRateError("error rate undefined for empty ground truth")
    return counts.errors / counts.gt_len


def precision(counts: ErrorCounts) -> float:
    if counts.hyp_len == 0:
        raise UndefinedRateError("precision undefined for empty hypothesis")
    return counts.cor / counts.hyp_len


def recall(counts: ErrorCounts) -> float:
    if counts.gt_len == 0:
        raise UndefinedRateError("recall undefined for empty ground truth")
    return counts.cor / counts.gt_len


def aggregate(per_page: Sequence[ErrorCounts]) -> ErrorCounts:
    total = ErrorCounts()
    for counts in per_page:
        total = total + counts
    return total
