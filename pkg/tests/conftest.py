import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from e2emeasure import Page  # noqa: E402

# Transcripts of the running example: a register page whose hypothesis has a
# merged line, a split line and a swapped pair of numbers.
REGISTER_HYP = [
    "Küblböck Elise", "Kainz Josina Led.", "KüblböckLed. L.", "Schönbrunn",
    "Aberg", "Schönbrunn", "10", "103", "102",
]
REGISTER_GT = [
    "Küblböck Elise", "Kainz Josina", "Küblböck Led.", '"', "Led.", "L.",
    "Schönbrunn", "Aberg", "Schönbrunn", "102", "103", "104",
]


@pytest.fixture
def register():
    return Page.from_texts(REGISTER_HYP, id="register"), Page.from_texts(REGISTER_GT, id="register")


def random_line(rng: random.Random, alphabet: str = "abc ", max_len: int = 6) -> str:
    return "".join(rng.choice(alphabet) for _ in range(rng.randint(0, max_len))).strip(" ")


def random_page(rng: random.Random, max_lines: int = 4, **kw):
    return [random_line(rng, **kw) for _ in range(rng.randint(0, max_lines))]


# Acceptance results, filled by test_acceptance and printed after the run.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
