import json

import pytest

from intervalsize.cli import Report, main


def rows_of(out):
    lines = out.strip().splitlines()
    return [line.split("\t") for line in lines[1:-1]], lines[-1]


def test_interval_fp_constant(capsys):
    assert main(["interval", "fp-order", "constant-3", ""]) == 0
    rows, last = rows_of(capsys.readouterr().out)
    assert rows == [["fp-order", "constant-3", "ε", "walk", "3", "3", "match"]]
    assert last == "result\tpass"


def test_interval_offset_bruteforce_after_option(capsys):
    assert main(["interval", "offset-order", "constant-1", "--mode", "bruteforce", ""]) == 0
    rows, _ = rows_of(capsys.readouterr().out)
    assert [r[4] for r in rows] == ["5"]


def test_monsat_and_formula_file(capsys, tmp_path):
    path = tmp_path / "formulas.txt"
    path.write_text("# comment\n(x1|x2)\n((x1&x2)|x3)\n")
    assert main(["monsat", "(x1&x2)", f"@{path}"]) == 0
    rows, _ = rows_of(capsys.readouterr().out)
    assert [(r[0], r[3], r[4]) for r in rows] == [("(x1&x2)", "1", "1"), ("(x1|x2)", "3", "3"),
                                                   ("((x1&x2)|x3)", "5", "5")]


def test_div_json(capsys):
    assert main(["div", "12", "13", "--report", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["ok"]
    assert [(r["m"], r["trial-division"], r["prime"]) for r in data["rows"]] == [
        (12, 4, False), (13, 0, True)]


def test_tm_walk_default_machine(capsys):
    assert main(["tm-walk", "1"]) == 0
    rows, _ = rows_of(capsys.readouterr().out)
    (row,) = rows
    assert row[1:4] == ["1", "7", "4"]
    assert row[6] == row[7] == str(2 ** 15 + 1 - 2)
    assert row[8] == "yes"


def test_cluster_marks_non_clusters_as_not_compared(capsys):
    assert main(["cluster", "parity", "0", "1"]) == 0
    rows, _ = rows_of(capsys.readouterr().out)
    assert all(r[4] == "no" and r[-1] == "-" for r in rows)


def test_cluster_from_interval_triple(capsys):
    assert main(["cluster", "fp-order/ones-count", "--order", "ift-derived", "11"]) == 0
    rows, _ = rows_of(capsys.readouterr().out)
    assert rows[0][5:] == ["2", "2", "match"]


def test_check_suite_with_figure(capsys, tmp_path):
    fig = tmp_path / "check.png"
    assert main(["check", "reachability", "--figure", str(fig)]) == 0
    assert capsys.readouterr().out.strip().endswith("result\tpass")
    assert fig.stat().st_size > 0


def test_comparison_figure(tmp_path, capsys):
    fig = tmp_path / "div.png"
    assert main(["div", "6", "8", "--figure", str(fig)]) == 0
    assert fig.read_bytes()[:4] == b"\x89PNG"


def test_reports_are_deterministic(capsys):
    main(["monsat", "(x1|x2)"])
    first = capsys.readouterr().out
    main(["monsat", "(x1|x2)"])
    assert capsys.readouterr().out == first


@pytest.mark.parametrize("argv", [["interval", "fp-order", "no-such-instance"],
                                  ["cluster", "no-such-machine"],
                                  ["div", "0"],
                                  ["interval", "fp-order", "constant-3", "2"]])
def test_usage_errors_exit_two(argv, capsys):
    assert main(argv) == 2
    assert "usage error" in capsys.readouterr().err


def test_unknown_suite_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["check", "no-such-suite"])
    assert info.value.code == 2


def test_formula_errors_are_reported(capsys):
    assert main(["monsat", "(x1&!x2)"]) == 2
    assert "position 4" in capsys.readouterr().err


def test_mismatch_fails_the_report():
    report = Report("demo", ["x", "match"], rows=[["0", True], ["1", None]])
    assert report.ok
    report.rows.append(["00", False])
    assert not report.ok
