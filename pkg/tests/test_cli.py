"""Command-line interface: tables, formats, exit codes and verification."""

import json
import shutil
import subprocess
import sys
from importlib import resources

import pytest

from tangles.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def tsv_rows(out):
    lines = out.strip().splitlines()
    return lines[0].split("\t"), [line.split("\t") for line in lines[1:]]


# -- tables ---------------------------------------------------------------------------


def test_n1_four_legs(capsys):
    code, out, _ = run(capsys, "n1", "--legs", "4", "--order", "5")
    header, rows = tsv_rows(out)
    assert code == EXIT_OK
    assert header == ["p", "G4c"]
    assert [int(r[1]) for r in rows] == [1, 2, 4, 10, 29]


def test_n1_six_legs_starts_at_two(capsys):
    code, out, _ = run(capsys, "n1", "--legs", "6", "--order", "2")
    _, rows = tsv_rows(out)
    assert code == EXIT_OK
    assert rows == [["2", "3"]]


def test_n1_order_zero_is_empty(capsys):
    code, out, _ = run(capsys, "n1", "--legs", "4", "--order", "0")
    assert code == EXIT_OK
    assert out.strip().splitlines() == ["p\tG4c"]


def test_n1_large_integers_have_no_separators(capsys):
    code, out, _ = run(capsys, "n1", "--legs", "8", "--order", "32")
    _, rows = tsv_rows(out)
    assert rows[-1] == ["32", "12675855143073018219570"]


@pytest.mark.parametrize("legs", ["5", "2", "0"])
def test_n1_invalid_legs(capsys, legs):
    code, _, err = run(capsys, "n1", "--legs", legs, "--order", "3")
    assert code == EXIT_USAGE
    assert "legs" in err


def test_nm2_tables(capsys):
    code, out, _ = run(capsys, "nm2", "--order", "4")
    _, rows = tsv_rows(out)
    assert code == EXIT_OK
    assert [int(r[1]) for r in rows] == [1, -1, 1, 1]
    _, out, _ = run(capsys, "nm2", "--order", "1")
    assert tsv_rows(out)[1] == [["1", "1"]]
    code, out, _ = run(capsys, "nm2", "--order", "0")
    assert code == EXIT_OK and tsv_rows(out)[1] == []


def test_general_formal_order_one(capsys):
    code, out, _ = run(capsys, "general", "--order", "1", "--n", "formal")
    assert code == EXIT_OK
    assert tsv_rows(out)[1] == [["1", "1", "0"]]


def test_general_formal_renders_polynomials(capsys):
    _, out, _ = run(capsys, "general", "--order", "4")
    _, rows = tsv_rows(out)
    assert rows[3][2] == "3 + n"


@pytest.mark.parametrize("n,a,b,column", [("1", 1, 2, "G4c"), ("-2", 1, -1, "Gamma")])
def test_general_specialised_matches_tables(capsys, n, a, b, column):
    from tangles.golden import load_table

    code, out, _ = run(capsys, "general", "--order", "4", "--n", n)
    assert code == EXIT_OK
    _, rows = tsv_rows(out)
    combo = [a * int(r[1]) + b * int(r[2]) for r in rows]
    table = "tab1" if column == "G4c" else "tab2"
    golden = load_table(table).column(column)
    assert combo == [golden[p] for p in range(1, 5)]


def test_general_budget_refusal(capsys):
    code, out, err = run(capsys, "general", "--order", "7")
    assert code == EXIT_BUDGET
    assert "budget" in err
    assert out == ""


def test_general_bad_n(capsys):
    code, _, err = run(capsys, "general", "--order", "2", "--n", "abc")
    assert code == EXIT_USAGE


# -- formats and configuration --------------------------------------------------------


@pytest.mark.parametrize(
    "argv",
    [("n1", "--legs", "6", "--order", "8"), ("nm2", "--order", "8"), ("general", "--order", "3")],
)
def test_json_and_tsv_carry_the_same_content(capsys, argv):
    _, tsv, _ = run(capsys, *argv)
    _, js, _ = run(capsys, *argv, "--format", "json")
    header, rows = tsv_rows(tsv)
    records = [json.loads(line) for line in js.strip().splitlines()]
    assert [[str(rec[h]) for h in header] for rec in records] == rows


def test_config_is_echoed(capsys):
    _, _, err = run(capsys, "nm2", "--order", "2", "--threads", "2")
    cfg = json.loads(err.strip().splitlines()[0])["config"]
    assert cfg["command"] == "nm2"
    assert cfg["order"] == 2 and cfg["threads"] == 2
    assert cfg["format"] == "tsv" and cfg["precision"] == 60


def test_output_independent_of_threads(capsys):
    _, one, _ = run(capsys, "general", "--order", "3", "--threads", "1")
    _, two, _ = run(capsys, "general", "--order", "3", "--threads", "2")
    assert one == two


@pytest.mark.parametrize(
    "argv",
    [(), ("bogus",), ("nm2", "--order", "-1"), ("nm2", "--threads", "0"), ("nm2", "--format", "xml")],
)
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "tangles", "nm2", "--order", "3"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.split() == ["p", "Gamma", "1", "1", "2", "-1", "3", "1"]


# -- verify ---------------------------------------------------------------------------


def test_verify_tables_pass(capsys):
    code, out, _ = run(capsys, "verify", "--only", "tab1", "--only", "tab2", "--only", "general")
    _, rows = tsv_rows(out)
    assert code == EXIT_OK
    assert [(r[0], r[1]) for r in rows] == [("tab1", "pass"), ("tab2", "pass"), ("general", "pass")]


def _golden_copy(tmp_path):
    data = resources.files("tangles").joinpath("data")
    for name in ("tab1_G4c.tsv", "tab1_G6c.tsv", "tab1_G8c.tsv", "tab2_Gamma.tsv"):
        with resources.as_file(data.joinpath(name)) as src:
            shutil.copy(src, tmp_path / name)
    return tmp_path


def test_verify_detects_a_perturbed_digit(capsys, tmp_path):
    golden = _golden_copy(tmp_path)
    path = golden / "tab1_G6c.tsv"
    lines = path.read_text().splitlines()
    p, value = lines[9].split("\t")
    lines[9] = f"{p}\t{int(value) + 1}"
    path.write_text("\n".join(lines) + "\n")
    code, out, _ = run(capsys, "verify", "--only", "tab1", "--golden", str(golden))
    _, rows = tsv_rows(out)
    assert code == EXIT_FAIL
    assert rows[0][1] == "FAIL"
    assert f"tab1 G6c p={p}" in rows[0][3]


def test_verify_detects_a_perturbed_tab2(capsys, tmp_path):
    golden = _golden_copy(tmp_path)
    path = golden / "tab2_Gamma.tsv"
    lines = path.read_text().splitlines()
    lines[4] = lines[4].replace("-7", "-8")
    path.write_text("\n".join(lines) + "\n")
    code, out, _ = run(capsys, "verify", "--only", "tab2", "--golden", str(golden))
    assert code == EXIT_FAIL
    assert "tab2 Gamma p=5" in out


def test_verify_missing_golden_directory(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--only", "tab1", "--golden", str(tmp_path / "none"))
    assert code == EXIT_FAIL
    assert "FileNotFoundError" in out


@pytest.mark.slow
def test_verify_asymptotics(capsys):
    code, out, _ = run(capsys, "verify", "--only", "asymptotics")
    _, rows = tsv_rows(out)
    assert code == EXIT_OK
    assert rows[0][1] == "pass"
    assert "g_c" in rows[0][3]
