"""Configurable end-to-end error measures for text recognition pages."""

__version__ = "0.1.0"

from .engine import Result, solve
from .evaluate import PageResult, evaluate, evaluate_page
from .geometry import Baseline, coverage, is_neighbor, neighborhood, tolerance
from .greedy import greedy_ld
from .kernels import BACKEND
from .levenshtein import levenshtein
from .pagexml import PageDocument, ParseError, pair_test_set, parse_page_xml, parse_plain_text
from .tokenize import BowCounts, bag_of_words, register_tokenizer, tokenize, word_level
from .types import (
    Alignment,
    ConfigurationError,
    ErrorCounts,
    EvaluationError,
    InvalidInputError,
    Level,
    Line,
    MeasureConfig,
    Page,
    TestSet,
    UndefinedRateError,
    aggregate,
    cer,
    precision,
    recall,
)

__all__ = [
    "Alignment", "BACKEND", "Baseline", "BowCounts", "ConfigurationError", "ErrorCounts",
    "EvaluationError", "InvalidInputError", "Level", "Line", "MeasureConfig", "Page",
    "PageDocument", "PageResult", "ParseError", "Result", "TestSet", "UndefinedRateError",
    "aggregate", "bag_of_words", "cer", "coverage", "evaluate", "evaluate_page", "greedy_ld",
    "is_neighbor", "levenshtein", "neighborhood", "pair_test_set", "parse_page_xml",
    "parse_plain_text", "precision", "recall", "register_tokenizer", "solve", "tokenize",
    "tolerance", "word_level",
]
