import json
import subprocess
import sys

import pytest

from conftest import REGISTER_GT, REGISTER_HYP
from e2emeasure import __version__
from e2emeasure.cli import main


@pytest.fixture
def files(tmp_path):
    gt, hyp = tmp_path / "register.gt.txt", tmp_path / "register.hyp.txt"
    gt.write_text("\n".join(REGISTER_GT) + "\n", encoding="utf-8")
    hyp.write_text("\n".join(REGISTER_HYP) + "\n", encoding="utf-8")
    return gt, hyp


def run(capsys, *args):
    code = main([str(a) for a in args])
    out, err = capsys.readouterr()
    return code, out, err


def table_row(out):
    return out.splitlines()[-1].split()


def test_default_is_character_level_reading_order(files, capsys):
    gt, hyp = files
    code, out, _ = run(capsys, "--gt", gt, "--hyp", hyp)
    assert code == 0
    assert out.splitlines()[0] == "# CER^{R}"
    assert out.splitlines()[1].split() == ["page", "INS", "DEL", "SUB", "COR", "CER", "Prec", "Rec"]
    assert table_row(out)[1:] == ["9", "8", "1", "70", "22.5", "88.6", "87.5"]


@pytest.mark.parametrize("flags, row", [
    (["--level", "wer"], ["3", "1", "4", "8", "53.3", "61.5", "53.3"]),
    (["--level", "wer", "--no-reading-order"], ["3", "1", "3", "9", "46.7", "69.2", "60.0"]),
    (["--level", "wer", "--no-reading-order", "--segmentation"], ["2", "0", "2", "11", "26.7", "84.6", "73.3"]),
])
def test_word_level_rows(files, capsys, flags, row):
    gt, hyp = files
    code, out, _ = run(capsys, "--gt", gt, "--hyp", hyp, *flags)
    assert code == 0 and table_row(out)[1:] == row


def test_bow(files, capsys):
    gt, hyp = files
    code, out, err = run(capsys, "--gt", gt, "--hyp", hyp, "--level", "bow")
    assert code == 0 and err == ""
    assert out.splitlines()[1].split() == ["page", "FN", "FP", "TP", "Prec", "Rec"]
    assert table_row(out)[1:] == ["4", "2", "11", "84.6", "73.3"]
    code, out2, err = run(capsys, "--gt", gt, "--hyp", hyp, "--level", "bow", "--reading-order")
    assert code == 0 and "no effect" in err and out2 == out


def test_identical_files(files, capsys):
    gt, _ = files
    code, out, _ = run(capsys, "--gt", gt, "--hyp", gt, "--level", "cer")
    assert code == 0 and table_row(out)[5] == "0.0"


def test_json_is_stable_and_matches_table(files, capsys):
    gt, hyp = files
    _, first, _ = run(capsys, "--gt", gt, "--hyp", hyp, "--format", "json")
    _, second, _ = run(capsys, "--gt", gt, "--hyp", hyp, "--format", "json")
    assert first == second and first.endswith("\n")
    report = json.loads(first)
    assert list(report) == ["aggregate", "config", "measure", "pages", "version"]
    assert report["version"] == __version__ and report["measure"] == "CER^{R}"
    page = report["pages"]["register.gt"]
    assert page["counts"] == {"ins": 9, "del": 8, "sub": 1, "cor": 70, "hyp_len": 79, "gt_len": 80}
    assert page["distance"] == 18
    _, table, _ = run(capsys, "--gt", gt, "--hyp", hyp)
    row = table_row(table)
    assert row[5:] == [f"{100 * page[k]:.1f}" for k in ("rate", "precision", "recall")]
    assert report["aggregate"]["counts"] == page["counts"]


def test_directories_and_total_row(tmp_path, capsys):
    gt, hyp = tmp_path / "gt", tmp_path / "hyp"
    gt.mkdir()
    hyp.mkdir()
    for stem, g, h in (("a", "abc\n", "abd\n"), ("b", "xy\n", "xy\n")):
        (gt / f"{stem}.txt").write_text(g)
        (hyp / f"{stem}.txt").write_text(h)
    code, out, _ = run(capsys, "--gt", gt, "--hyp", hyp, "--jobs", "2")
    assert code == 0
    rows = [line.split() for line in out.splitlines()[2:]]
    assert [r[0] for r in rows] == ["a", "b", "total"]
    assert rows[-1][1:5] == ["0", "0", "1", "4"]


def test_dump_alignment(files, tmp_path, capsys):
    gt, hyp = files
    path = tmp_path / "align.json"
    code, _, _ = run(capsys, "--gt", gt, "--hyp", hyp, "--segmentation", "--dump-alignment", path)
    data = json.loads(path.read_text())["register.gt"]
    assert code == 0 and set(data) == {"matched", "unmatched_hyp", "unmatched_gt", "segmented_hyp"}
    assert 2 * len(data["matched"]) + len(data["unmatched_hyp"]) + len(data["unmatched_gt"]) == (
        len(data["segmented_hyp"]) + len(REGISTER_GT))


def test_geometry_without_baselines_names_the_line(tmp_path, capsys):
    xml = ('<PcGts xmlns="http://schema.primaresearch.org/PAGE/gts/pagecontent/2019-07-15"><Page>'
           '<TextRegion id="r"><TextLine id="{lid}">{bl}<TextEquiv><Unicode>abc</Unicode></TextEquiv>'
           '</TextLine></TextRegion></Page></PcGts>')
    gt, hyp = tmp_path / "p.xml", tmp_path / "h" / "p.xml"
    hyp.parent.mkdir()
    gt.write_text(xml.format(lid="gt_line_7", bl=""))
    hyp.write_text(xml.format(lid="h1", bl='<Baseline points="0,0 10,0"/>'))
    code, out, err = run(capsys, "--gt", gt, "--hyp", hyp, "--geometry")
    assert code == 1 and out == "" and "gt_line_7" in err


def test_usage_errors(files, tmp_path, capsys):
    gt, hyp = files
    with pytest.raises(SystemExit) as exc:
        main(["--gt", str(gt), "--hyp", str(hyp), "--tokenizer", "nope"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["--gt", str(gt), "--hyp", str(tmp_path / "missing.txt")])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["--gt", str(gt), "--hyp", str(hyp), "--tolerance-cap", "0"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["--gt", str(gt)])
    assert exc.value.code == 2
    capsys.readouterr()


def test_evaluation_error_exit_code(tmp_path, capsys):
    gt, hyp = tmp_path / "gt", tmp_path / "hyp"
    gt.mkdir()
    hyp.mkdir()
    (gt / "a.txt").write_text("x\n")
    code, _, err = run(capsys, "--gt", gt, "--hyp", hyp)
    assert code == 1 and "no hypothesis" in err
    (hyp / "bad.txt").write_bytes(b"\xff")
    code, _, err = run(capsys, "--gt", gt, "--hyp", hyp, "--skip-unpaired", "--strict")
    assert code == 1 and "UTF-8" in err


def test_console_entry_point(files):
    gt, hyp = files
    proc = subprocess.run([sys.executable, "-m", "e2emeasure.cli", "--gt", str(gt), "--hyp", str(hyp),
                           "--level", "bow", "--format", "json"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["aggregate"]["counts"] == {"tp": 11, "fp": 2, "fn": 4}
