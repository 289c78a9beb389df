"""Reading pages from PageXML or plain text, and pairing files into a test set."""

from __future__ import annotations

import logging
import os
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .types import SPACE, EvaluationError, Line, Page, TestSet

log = logging.getLogger(__name__)

XML_SUFFIXES = (".xml",)


class ParseError(EvaluationError):
    """Input file could not be read as a page."""


@dataclass
class PageDocument:
    source_path: str
    page: Page
    warnings: List[str] = field(default_factory=list)


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _children(elem, name: str):
    return [c for c in elem if _local(c.tag) == name]


def _first(elem, name: str):
    for c in elem:
        if _local(c.tag) == name:
            return c
    return None


def parse_points(text: str) -> Tuple[Tuple[int, int], ...]:
    """Parse ``"x1,y1 x2,y2 ..."``; raises ValueError on anything else."""
    points = []
    for pair in text.split():
        x, y = pair.split(",")
        px, py = int(round(float(x))), int(round(float(y)))
        if px < 0 or py < 0:
            raise ValueError(f"negative coordinate in {pair!r}")
        points.append((px, py))
    if not points:
        raise ValueError("no points")
    return tuple(points)


def _line_text(line_elem) -> str:
    # The line's own TextEquiv, not the ones of its words or glyphs.
    equivs = _children(line_elem, "TextEquiv")
    if not equivs:
        return ""
    equivs.sort(key=lambda e: int(e.get("index", 0)) if e.get("index", "").lstrip("-").isdigit() else 0)
    uni = _first(equivs[0], "Unicode")
    return (uni.text or "") if uni is not None else ""


def _normalize(text: str, where: str, warnings: List[str]) -> str:
    lines = text.replace("\r\n", "\n").replace("\r", "\n").split("\n")
    if len(lines) > 1:
        warnings.append(f"{where}: line break inside text replaced by space")
        text = SPACE.join(lines)
    stripped = text.strip(SPACE)
    if stripped != text:
        warnings.append(f"{where}: leading/trailing spaces stripped")
    return stripped


_GROUPS = ("OrderedGroup", "UnorderedGroup", "OrderedGroupIndexed", "UnorderedGroupIndexed")
_REFS = ("RegionRef", "RegionRefIndexed")


def _reading_order(root) -> Optional[List[str]]:
    """Region ids in reading order, or None without a ReadingOrder element."""
    ro = next((e for e in root.iter() if _local(e.tag) == "ReadingOrder"), None)
    if ro is None:
        return None
    order: List[str] = []

    def walk(group) -> None:
        items = [c for c in group if _local(c.tag) in _GROUPS + _REFS]
        if any(c.get("index") is not None for c in items):
            items.sort(key=lambda c: int(c.get("index", 0)))
        for c in items:
            if c.get("regionRef"):
                order.append(c.get("regionRef"))
            if _local(c.tag) in _GROUPS:
                walk(c)

    walk(ro)
    return order


def parse_page_xml(data: bytes, source_path: str = "<bytes>") -> PageDocument:
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        line, col = exc.position
        raise ParseError(f"{source_path}:{line}:{col}: malformed XML ({exc})") from None
    warnings: List[str] = []

    # Lines grouped by their enclosing region, in document order.
    regions: Dict[str, List] = {}
    region_seq: List[str] = []
    loose: List = []

    def visit(elem, region: Optional[str]) -> None:
        for child in elem:
            name = _local(child.tag)
            if name == "TextLine":
                if region is None:
                    loose.append(child)
                else:
                    regions[region].append(child)
            elif name.endswith("Region"):
                rid = child.get("id") or f"_region{len(region_seq)}"
                if rid not in regions:
                    regions[rid] = []
                    region_seq.append(rid)
                visit(child, rid)
            else:
                visit(child, region)

    visit(root, None)
    order = _reading_order(root)
    if order is not None:
        known = [r for r in order if r in regions]
        rest = [r for r in region_seq if r not in set(known)]
        region_seq = known + rest
    elems = [e for r in region_seq for e in regions[r]] + loose

    lines = []
    for k, elem in enumerate(elems):
        lid = elem.get("id") or f"line{k}"
        text = _normalize(_line_text(elem), lid, warnings)
        baseline = None
        bl = _first(elem, "Baseline")
        if bl is not None:
            try:
                baseline = parse_points(bl.get("points", ""))
            except ValueError as exc:
                warnings.append(f"{lid}: baseline dropped, bad points attribute ({exc})")
        lines.append(Line(text, baseline, lid))
    page_id = Path(source_path).stem if source_path != "<bytes>" else ""
    for w in warnings:
        log.warning("%s: %s", source_path, w)
    return PageDocument(source_path, Page(tuple(lines), id=page_id), warnings)


def parse_plain_text(data: bytes, source_path: str = "<bytes>") -> PageDocument:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"{source_path}: invalid UTF-8 at byte {exc.start}") from None
    if text.startswith("﻿"):
        text = text[1:]
    text = text.replace("\r\n", "\n").replace("\r", "\n")
    if text.endswith("\n"):
        text = text[:-1]
    warnings: List[str] = []
    lines = []
    if text or data.strip(b"\r\n"):
        for k, raw in enumerate(text.split("\n")):
            lines.append(Line(_normalize(raw, f"line {k + 1}", warnings), None, f"line{k + 1}"))
    for w in warnings:
        log.warning("%s: %s", source_path, w)
    page_id = Path(source_path).stem if source_path != "<bytes>" else ""
    return PageDocument(source_path, Page(tuple(lines), id=page_id), warnings)


def to_plain_text(page: Page) -> str:
    return "".join(f"{line.text}\n" for line in page.lines)


def load(path: os.PathLike) -> PageDocument:
    path = Path(path)
    data = path.read_bytes()
    if path.suffix.lower() in XML_SUFFIXES:
        return parse_page_xml(data, str(path))
    return parse_plain_text(data, str(path))


def _by_stem(directory: Path) -> Dict[str, Path]:
    out: Dict[str, Path] = {}
    for p in sorted(directory.iterdir()):
        if not p.is_file() or p.name.startswith("."):
            continue
        if p.stem in out:
            raise ParseError(f"duplicate stem {p.stem!r} in {directory}: {out[p.stem].name}, {p.name}")
        out[p.stem] = p
    return out


def pair_test_set(gt_dir: os.PathLike, hyp_dir: os.PathLike, skip_unpaired_gt: bool = False,
                  strict: bool = False) -> Tuple[TestSet, List[str]]:
    """Pair files by stem.

    A ground-truth file without hypothesis is an error unless
    ``skip_unpaired_gt``. A hypothesis file without ground truth is reported;
    with ``strict`` it is kept against an empty ground-truth page so that all
    its text counts as deleted.
    """
    gt_files, hyp_files = _by_stem(Path(gt_dir)), _by_stem(Path(hyp_dir))
    notes: List[str] = []
    pairs = []
    for stem, gp in gt_files.items():
        hp = hyp_files.get(stem)
        if hp is None:
            if not skip_unpaired_gt:
                raise ParseError(f"no hypothesis for ground truth {gp}")
            notes.append(f"skipped ground truth without hypothesis: {gp}")
            continue
        pairs.append((_with_id(load(gp), stem), _with_id(load(hp), stem)))
    for stem, hp in hyp_files.items():
        if stem not in gt_files:
            notes.append(f"hypothesis without ground truth: {hp}")
            if strict:
                pairs.append((Page((), id=stem), _with_id(load(hp), stem)))
    for n in notes:
        log.warning(n)
    pairs.sort(key=lambda p: p[0].id)
    return TestSet(tuple(pairs)), notes


def _with_id(doc: PageDocument, stem: str) -> Page:
    return Page(doc.page.lines, id=stem)
