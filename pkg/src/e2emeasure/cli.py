"""Command-line front end.

Examples::

    e2emeasure --gt gt/ --hyp hyp/ --level wer --no-reading-order
    e2emeasure --gt page.xml --hyp page.txt --format json
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from . import __version__
from .evaluate import evaluate
from .pagexml import load, pair_test_set
from .tokenize import BowCounts, get_tokenizer
from .types import (
    EvaluationError,
    Level,
    MeasureConfig,
    Page,
    TestSet,
    UndefinedRateError,
    cer,
    precision,
    recall,
)


EXIT_OK, EXIT_EVAL, EXIT_USAGE = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="e2emeasure",
        description="End-to-end CER/WER/BOW between ground-truth and hypothesis pages.",
    )
    p.add_argument("--gt", required=True, type=Path, help="ground-truth file or directory (PageXML or text)")
    p.add_argument("--hyp", required=True, type=Path, help="hypothesis file or directory")
    p.add_argument("--level", choices=[lv.value for lv in Level], default="cer")
    p.add_argument("--reading-order", dest="reading_order", action=argparse.BooleanOptionalAction, default=None,
                   help="penalize reading-order errors (default on; ignored for bow)")
    p.add_argument("--geometry", action="store_true", help="only assign lines whose baselines overlap")
    p.add_argument("--segmentation", action="store_true", help="do not penalize line splits and merges")
    p.add_argument("--tokenizer", default="space")
    p.add_argument("--tolerance-cap", type=float, default=30.0, metavar="PX")
    p.add_argument("--tolerance-fraction", type=float, default=0.25, metavar="F")
    p.add_argument("--format", choices=["json", "table"], default="table")
    p.add_argument("--dump-alignment", type=Path, metavar="PATH", help="write line alignments as JSON")
    p.add_argument("--jobs", type=int, default=1, help="pages evaluated in parallel")
    p.add_argument("--skip-unpaired", action="store_true", help="skip ground-truth files without hypothesis")
    p.add_argument("--strict", action="store_true", help="count hypothesis files without ground truth")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return p


def _rates(counts) -> dict:
    def safe(fn):
        try:
            return fn(counts)
        except UndefinedRateError:
            return None

    if isinstance(counts, BowCounts):
        return {"precision": safe(lambda c: c.precision), "recall": safe(lambda c: c.recall)}
    return {"rate": safe(cer), "precision": safe(precision), "recall": safe(recall)}


def _alignment_summary(result) -> Optional[dict]:
    a = result.alignment
    if a is None:
        return None
    return {"matched": len(a.matched), "unmatched_hyp": len(a.unmatched_hyp), "unmatched_gt": len(a.unmatched_gt)}


def build_report(results, total, config: MeasureConfig) -> dict:
    pages = {}
    for r in results:
        entry = {"counts": r.counts.as_dict(), **_rates(r.counts)}
        if r.alignment is not None:
            entry["distance"] = r.distance
            entry["alignment"] = _alignment_summary(r)
        pages[r.page_id] = entry
    return {
        "version": __version__,
        "measure": config.name,
        "config": {
            "reading_order": config.reading_order,
            "geometry": config.geometry,
            "segmentation": config.segmentation,
            "level": config.level.value,
            "tokenizer": config.tokenizer,
            "tolerance_cap": config.tolerance_cap,
            "tolerance_fraction": config.tolerance_fraction,
        },
        "aggregate": {"counts": total.as_dict(), **_rates(total)},
        "pages": pages,
    }


def _pct(v: Optional[float]) -> str:
    return "-" if v is None else f"{100 * v:.1f}"


def format_table(report: dict) -> str:
    bow = report["config"]["level"] == "bow"
    if bow:
        header = ["page", "FN", "FP", "TP", "Prec", "Rec"]
    else:
        header = ["page", "INS", "DEL", "SUB", "COR", report["config"]["level"].upper(), "Prec", "Rec"]

    def row(name, entry):
        c = entry["counts"]
        if bow:
            return [name, c["fn"], c["fp"], c["tp"], _pct(entry["precision"]), _pct(entry["recall"])]
        return [name, c["ins"], c["del"], c["sub"], c["cor"],
                _pct(entry["rate"]), _pct(entry["precision"]), _pct(entry["recall"])]

    rows = [row(pid, e) for pid, e in report["pages"].items()]
    if len(rows) != 1:
        rows.append(row("total", report["aggregate"]))
    rows = [[str(v) for v in r] for r in rows]
    widths = [max(len(str(h)), *(len(r[k]) for r in rows)) for k, h in enumerate(header)]
    out = [f"# {report['measure']}"]
    out.append("  ".join(h.ljust(w) if k == 0 else h.rjust(w) for k, (h, w) in enumerate(zip(header, widths))))
    for r in rows:
        out.append("  ".join(v.ljust(w) if k == 0 else v.rjust(w) for k, (v, w) in enumerate(zip(r, widths))))
    return "\n".join(out) + "\n"


def dump_alignments(results, path: Path) -> None:
    data = {}
    for r in results:
        a = r.alignment
        if a is None:
            continue
        entry = {
            "matched": [list(p) for p in a.matched],
            "unmatched_hyp": list(a.unmatched_hyp),
            "unmatched_gt": list(a.unmatched_gt),
        }
        if a.segmented_hyp is not None:
            entry["segmented_hyp"] = [
                t if isinstance(t, str) else list(t) for t in a.segmented_hyp.texts
            ]
        data[r.page_id] = entry
    path.write_text(json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def load_test_set(gt: Path, hyp: Path, skip_unpaired: bool, strict: bool) -> TestSet:
    if gt.is_dir() and hyp.is_dir():
        test_set, _ = pair_test_set(gt, hyp, skip_unpaired_gt=skip_unpaired, strict=strict)
        return test_set
    if gt.is_dir() or hyp.is_dir():
        raise EvaluationError("--gt and --hyp must both be files or both be directories")
    g, h = load(gt).page, load(hyp).page
    return TestSet(((Page(g.lines, id=gt.stem), Page(h.lines, id=gt.stem)),))


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s", stream=sys.stderr)
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be at least 1")
    level = Level(args.level)
    reading_order = args.reading_order
    if level is Level.BAG_OF_WORDS:
        if reading_order:
            print(f"{parser.prog}: warning: --reading-order has no effect on bag-of-words and is ignored",
                  file=sys.stderr)
        reading_order = False
    elif reading_order is None:
        reading_order = True
    try:
        config = MeasureConfig(
            reading_order=reading_order,
            geometry=args.geometry,
            segmentation=args.segmentation,
            level=level,
            tokenizer=args.tokenizer,
            tolerance_cap=args.tolerance_cap,
            tolerance_fraction=args.tolerance_fraction,
        )
        get_tokenizer(config.tokenizer)
    except EvaluationError as exc:
        parser.error(str(exc))
    for path in (args.gt, args.hyp):
        if not path.exists():
            parser.error(f"no such file or directory: {path}")

    try:
        test_set = load_test_set(args.gt, args.hyp, args.skip_unpaired, args.strict)
        results, total = evaluate(test_set, config, jobs=args.jobs)
    except (EvaluationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EVAL

    report = build_report(results, total, config)
    if args.dump_alignment is not None:
        dump_alignments(results, args.dump_alignment)
    if args.format == "json":
        sys.stdout.write(json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(format_table(report))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
