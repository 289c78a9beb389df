import pytest

from e2emeasure import (
    Alignment,
    ConfigurationError,
    ErrorCounts,
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


def test_line_rejects_outer_spaces_and_breaks():
    with pytest.raises(InvalidInputError):
        Line(" a")
    with pytest.raises(InvalidInputError):
        Line("a ")
    with pytest.raises(InvalidInputError):
        Line("a\nb")
    assert Line("a  b").text == "a  b"
    assert Line("").text == ""


def test_line_baseline_validation():
    assert Line("a", [(0, 1), (2, 3)]).baseline == ((0, 1), (2, 3))
    with pytest.raises(InvalidInputError):
        Line("a", [])
    with pytest.raises(InvalidInputError):
        Line("a", [(-1, 0)])


def test_token_lines():
    line = Line(["a", "b"])
    assert line.text == ("a", "b") and len(line) == 2
    with pytest.raises(InvalidInputError):
        Line(("a", ""))


def test_page_helpers():
    page = Page.from_texts(["ab", "c"], id="p")
    assert page.texts == ("ab", "c")
    assert len(page) == 2 and page.length == 3 and page[1].text == "c"
    assert [line.text for line in page] == ["ab", "c"]


def test_test_set_rejects_duplicate_ids():
    a = Page.from_texts(["x"], id="p")
    with pytest.raises(InvalidInputError):
        TestSet(((a, a), (a, a)))


def test_config_names_and_validation():
    assert MeasureConfig().name == "CER^{R}"
    assert MeasureConfig(reading_order=False, level="wer").name == "WER"
    assert MeasureConfig(geometry=True, segmentation=True, level=Level.BAG_OF_WORDS).name == "BOW^{R,G,S}"
    with pytest.raises(ConfigurationError):
        MeasureConfig(tolerance_cap=0)


@pytest.mark.parametrize(
    "counts, rate",
    [
        (ErrorCounts(9, 8, 1, 70, 80, 79), 0.225),
        (ErrorCounts.of(cor=5), 0.0),
        (ErrorCounts.of(ins=3, dele=1, sub=4, cor=8), 8 / 15),
    ],
)
def test_cer(counts, rate):
    assert cer(counts) == pytest.approx(rate)


def test_cer_can_exceed_one_and_needs_ground_truth():
    assert cer(ErrorCounts.of(ins=1, dele=5)) == 6
    with pytest.raises(UndefinedRateError):
        cer(ErrorCounts.of(dele=3))


def test_precision_recall():
    c = ErrorCounts.of(ins=3, dele=1, sub=4, cor=8)
    assert round(precision(c), 3) == 0.615 and round(recall(c), 3) == 0.533
    c = ErrorCounts.of(sub=4)
    assert precision(c) == 0 and recall(c) == 0
    c = ErrorCounts(9, 8, 1, 70, 80, 79)
    assert round(precision(c), 3) == 0.886 and recall(c) == 0.875
    with pytest.raises(UndefinedRateError):
        precision(ErrorCounts.of(ins=2))
    with pytest.raises(UndefinedRateError):
        recall(ErrorCounts())


def test_aggregate():
    assert aggregate([]) == ErrorCounts()
    a, b = ErrorCounts.of(ins=1, cor=4), ErrorCounts.of(ins=2, cor=5)
    total = aggregate([a, b])
    assert total.ins == 3 and total.gt_len == 12 and total.consistent
    assert aggregate([a]) == a


def test_counts_dict_and_negative():
    assert ErrorCounts.of(dele=1).as_dict() == {"ins": 0, "del": 1, "sub": 0, "cor": 0, "gt_len": 0, "hyp_len": 1}
    with pytest.raises(ValueError):
        ErrorCounts(ins=-1)
    assert not ErrorCounts(cor=1).consistent


def test_alignment_check():
    Alignment(((0, 0), (2, 1)), (1,), (2,)).check(3, 3, reading_order=True)
    with pytest.raises(AssertionError):
        Alignment(((0, 1), (1, 0)), (), ()).check(2, 2, reading_order=True)
    with pytest.raises(AssertionError):
        Alignment(((0, 0),), (0,), ()).check(1, 1)
