import pytest

from e2emeasure import MeasureConfig, ParseError, evaluate_page, pair_test_set, parse_page_xml, parse_plain_text
from e2emeasure.pagexml import load, to_plain_text

NS = "http://schema.primaresearch.org/PAGE/gts/pagecontent/2019-07-15"


def page_xml(body: str, ns: str = NS, prefix: str = "") -> bytes:
    p = f"{prefix}:" if prefix else ""
    decl = f'xmlns:{prefix}="{ns}"' if prefix else f'xmlns="{ns}"'
    body = body.replace("<", f"<{p}").replace(f"<{p}/", f"</{p}")
    return f'<?xml version="1.0" encoding="UTF-8"?><{p}PcGts {decl}><{p}Page>{body}</{p}Page></{p}PcGts>'.encode()


def line(lid, text, points=None):
    bl = f'<Baseline points="{points}"/>' if points is not None else ""
    te = f"<TextEquiv><Unicode>{text}</Unicode></TextEquiv>" if text is not None else ""
    return f'<TextLine id="{lid}">{bl}{te}</TextLine>'


TWO_REGIONS = (
    '<TextRegion id="r1">' + line("l1", "first", "0,10 50,10") + "</TextRegion>"
    '<TextRegion id="r2">' + line("l2", "second", "0,60 50,60") + "</TextRegion>"
)


def test_minimal_document():
    doc = parse_page_xml(page_xml('<TextRegion id="r">' + line("l", "abc", "0,10 50,10") + "</TextRegion>"))
    assert doc.page.texts == ("abc",)
    assert doc.page.lines[0].baseline == ((0, 10), (50, 10)) and doc.page.lines[0].id == "l"
    assert doc.warnings == []


def test_document_order_without_reading_order():
    assert parse_page_xml(page_xml(TWO_REGIONS)).page.texts == ("first", "second")


def test_reading_order_reverses_regions():
    ro = ('<ReadingOrder><OrderedGroup id="g"><RegionRefIndexed index="0" regionRef="r2"/>'
          '<RegionRefIndexed index="1" regionRef="r1"/></OrderedGroup></ReadingOrder>')
    assert parse_page_xml(page_xml(ro + TWO_REGIONS)).page.texts == ("second", "first")
    # Index, not element order, decides.
    ro = ('<ReadingOrder><OrderedGroup id="g"><RegionRefIndexed index="1" regionRef="r1"/>'
          '<RegionRefIndexed index="0" regionRef="r2"/></OrderedGroup></ReadingOrder>')
    assert parse_page_xml(page_xml(ro + TWO_REGIONS)).page.texts == ("second", "first")


def test_namespaces_and_prefixes_do_not_matter():
    plain = parse_page_xml(page_xml(TWO_REGIONS)).page
    prefixed = parse_page_xml(page_xml(TWO_REGIONS, prefix="pc")).page
    older = parse_page_xml(page_xml(TWO_REGIONS, ns="http://schema.primaresearch.org/PAGE/gts/pagecontent/2013-07-15")).page
    assert plain == prefixed == older


def test_attribute_order_does_not_matter():
    a = page_xml('<TextRegion id="r"><TextLine id="l" custom="x"><Baseline points="1,2 3,4"/></TextLine></TextRegion>')
    b = page_xml('<TextRegion id="r"><TextLine custom="x" id="l"><Baseline points="1,2 3,4"/></TextLine></TextRegion>')
    assert parse_page_xml(a).page == parse_page_xml(b).page


def test_line_text_ignores_word_level_equivs():
    body = ('<TextRegion id="r"><TextLine id="l"><Word id="w"><TextEquiv><Unicode>no</Unicode></TextEquiv></Word>'
            '<TextEquiv index="2"><Unicode>second</Unicode></TextEquiv>'
            '<TextEquiv index="1"><Unicode>first</Unicode></TextEquiv></TextLine></TextRegion>')
    assert parse_page_xml(page_xml(body)).page.texts == ("first",)


def test_missing_text_and_bad_points():
    doc = parse_page_xml(page_xml('<TextRegion id="r">' + line("a", None) + line("b", " x ", "1,2 zz") + "</TextRegion>"))
    assert doc.page.texts == ("", "x")
    assert doc.page.lines[1].baseline is None
    assert any("b: baseline dropped" in w for w in doc.warnings)
    assert any("stripped" in w for w in doc.warnings)


def test_malformed_xml_has_location():
    with pytest.raises(ParseError, match=r"x.xml:1:\d+"):
        parse_page_xml(b"<PcGts><Page></PcGts>", "x.xml")


def test_missing_baseline_fails_only_with_geometry():
    page = parse_page_xml(page_xml('<TextRegion id="r">' + line("nobl", "abc") + "</TextRegion>")).page
    assert evaluate_page(page, page).counts.errors == 0
    with pytest.raises(Exception, match="nobl"):
        evaluate_page(page, page, MeasureConfig(geometry=True))


def test_plain_text():
    assert parse_plain_text(b"a\nb\n").page.texts == ("a", "b")
    assert parse_plain_text(b"a\nb").page.texts == ("a", "b")
    assert parse_plain_text(b"").page.texts == ()
    assert parse_plain_text(b"a\r\nb\r\n").page == parse_plain_text(b"a\nb\n").page
    assert parse_plain_text("﻿a\n".encode()).page.texts == ("a",)
    assert parse_plain_text(b"\n\n").page.texts == ("", "")
    with pytest.raises(ParseError, match="UTF-8"):
        parse_plain_text(b"\xff\xfe\x00")


def test_plain_text_round_trip():
    page = parse_plain_text("ä b\n\nc\n".encode()).page
    again = parse_plain_text(to_plain_text(page).encode()).page
    assert again == page


def write(directory, name, text):
    directory.mkdir(exist_ok=True)
    (directory / name).write_text(text, encoding="utf-8")


def test_pairing(tmp_path):
    gt, hyp = tmp_path / "gt", tmp_path / "hyp"
    write(gt, "p1.txt", "a\n")
    write(gt, "p2.xml", page_xml('<TextRegion id="r">' + line("l", "b") + "</TextRegion>").decode())
    write(hyp, "p1.txt", "a\n")
    write(hyp, "p2.txt", "c\n")
    write(hyp, "extra.txt", "zz\n")
    test_set, notes = pair_test_set(gt, hyp)
    assert [g.id for g, _ in test_set.pages] == ["p1", "p2"]
    assert test_set.pages[1][0].texts == ("b",) and test_set.pages[1][1].texts == ("c",)
    assert any("extra" in n for n in notes)
    strict, _ = pair_test_set(gt, hyp, strict=True)
    extra = dict((g.id, (g, h)) for g, h in strict.pages)["extra"]
    assert extra[0].texts == () and extra[1].texts == ("zz",)


def test_pairing_errors(tmp_path):
    gt, hyp = tmp_path / "gt", tmp_path / "hyp"
    write(gt, "p1.txt", "a\n")
    write(gt, "p2.txt", "a\n")
    write(hyp, "p1.txt", "a\n")
    with pytest.raises(ParseError, match="no hypothesis"):
        pair_test_set(gt, hyp)
    test_set, notes = pair_test_set(gt, hyp, skip_unpaired_gt=True)
    assert len(test_set.pages) == 1 and notes
    write(hyp, "p1.xml", page_xml("").decode())
    with pytest.raises(ParseError, match="duplicate stem"):
        pair_test_set(gt, hyp, skip_unpaired_gt=True)


def test_load_dispatches_on_suffix(tmp_path):
    write(tmp_path, "a.xml", page_xml('<TextRegion id="r">' + line("l", "x") + "</TextRegion>").decode())
    write(tmp_path, "b.txt", "<not xml>\n")
    assert load(tmp_path / "a.xml").page.texts == ("x",)
    assert load(tmp_path / "b.txt").page.texts == ("<not xml>",)
