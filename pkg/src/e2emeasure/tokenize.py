"""Word tokenizers, the word-alphabet view of a page, and bag-of-words counts."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable, Dict, List, Union

from .types import SPACE, ConfigurationError, Line, Page, UndefinedRateError

Tokenizer = Callable[[str], List[str]]

_REGISTRY: Dict[str, Tokenizer] = {}


def register_tokenizer(name: str, fn: Tokenizer) -> None:
    """Make ``fn`` available under ``name``.

    A tokenizer maps a line's text to a list of non-empty tokens and must be
    deterministic and stateless.
    """
    _REGISTRY[name] = fn


def space_tokenizer(text: str) -> List[str]:
    return [t for t in text.split(SPACE) if t]


def whitespace_tokenizer(text: str) -> List[str]:
    return text.split()


register_tokenizer("space", space_tokenizer)
register_tokenizer("whitespace", whitespace_tokenizer)


def get_tokenizer(tokenizer: Union[str, Tokenizer]) -> Tokenizer:
    if callable(tokenizer):
        return tokenizer
    try:
        return _REGISTRY[tokenizer]
    except KeyError:
        raise ConfigurationError(
            f"unknown tokenizer {tokenizer!r}; known: {', '.join(sorted(_REGISTRY))}"
        ) from None


def tokenize(line: Union[Line, str], tokenizer: Union[str, Tokenizer] = "space") -> List[str]:
    text = line.text if isinstance(line, Line) else line
    if not isinstance(text, str):
        return list(text)
    tokens = get_tokenizer(tokenizer)(text)
    bad = [t for t in tokens if not t or SPACE == t]
    if bad:
        raise ConfigurationError(f"tokenizer produced invalid tokens {bad!r}")
    return tokens


def word_level(page: Page, tokenizer: Union[str, Tokenizer] = "space") -> Page:
    """Same page with every line's text replaced by its token tuple."""
    return Page(
        tuple(Line(tuple(tokenize(line, tokenizer)), line.baseline, line.id) for line in page.lines),
        id=page.id,
    )


@dataclass(frozen=True)
class BowCounts:
    tp: int = 0
    fp: int = 0
    fn: int = 0

    def __add__(self, other: "BowCounts") -> "BowCounts":
        return BowCounts(self.tp + other.tp, self.fp + other.fp, self.fn + other.fn)

    @property
    def precision(self) -> float:
        if self.tp + self.fp == 0:
            raise UndefinedRateError("precision undefined without hypothesis tokens")
        return self.tp / (self.tp + self.fp)

    @property
    def recall(self) -> float:
        if self.tp + self.fn == 0:
            raise UndefinedRateError("recall undefined without ground-truth tokens")
        return self.tp / (self.tp + self.fn)

    def as_dict(self) -> dict:
        return {"tp": self.tp, "fp": self.fp, "fn": self.fn}


def bag_of_words(hyp: Page, gt: Page, tokenizer: Union[str, Tokenizer] = "space") -> BowCounts:
    h = Counter(t for line in hyp.lines for t in tokenize(line, tokenizer))
    g = Counter(t for line in gt.lines for t in tokenize(line, tokenizer))
    tp = sum((h & g).values())
    return BowCounts(tp=tp, fp=sum(h.values()) - tp, fn=sum(g.values()) - tp)
