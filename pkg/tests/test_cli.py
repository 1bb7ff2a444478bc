import io
import subprocess
import sys
from types import SimpleNamespace

import numpy as np
import pytest

from conftest import DATA, random_complex
from ptentangle.cli import (
    EXIT_FORMAT,
    EXIT_NUMERIC,
    EXIT_USAGE,
    MatrixFormatError,
    cmd_report,
    format_matrix,
    main,
    parse_matrix,
    read_matrix,
    ssys_to_mask,
    write_matrix,
)
from ptentangle.entanglement import hse, log_negativity, negativity
from ptentangle.ptranspose import partial_transpose, partial_transpose_b
from ptentangle.states import bell_phi_plus


def test_parse_single_entry():
    m = parse_matrix("dim 2\n1 0  0 0\n0 0  0 0\n").entries
    expected = np.zeros((2, 2))
    expected[0, 0] = 1
    np.testing.assert_array_equal(m, expected)


def test_parse_comments_and_complex():
    m = parse_matrix("# hi\ndim 1\n# mid\n0.5 -2.5\n").entries
    assert m[0, 0] == 0.5 - 2.5j


@pytest.mark.parametrize(
    "text, line",
    [
        ("dim 2\n1 0 0 0\n0 0 0 0\n0 0 0 0\n", 4),  # three rows for dim 2
        ("dim 2\n1 0 0 0\n", None),  # too few rows
        ("dim 2\n1 0 0\n0 0 0 0\n", 2),  # short row
        ("dim 2\n1 0 x 0\n0 0 0 0\n", 2),  # not a number
        ("dim 1\nnan 0\n", 2),  # non-finite
        ("size 2\n", 1),  # bad header
        ("", None),
    ],
)
def test_parse_errors(text, line):
    with pytest.raises(MatrixFormatError) as err:
        parse_matrix(text)
    assert err.value.line == line


def test_column_reported():
    with pytest.raises(MatrixFormatError) as err:
        parse_matrix("dim 2\n1 0 x 0\n0 0 0 0\n")
    assert err.value.column == 3


def test_roundtrip_bit_exact(tmp_path, rng):
    m = random_complex(5, rng) * 10.0 ** rng.integers(-300, 300, size=(5, 5))
    m[0, 0] = -0.0
    write_matrix(tmp_path / "m.mat", m, "random")
    back = read_matrix(tmp_path / "m.mat")
    assert np.array_equal(back, m)
    assert format_matrix(back) == format_matrix(m)


def test_ssys_mapping():
    assert ssys_to_mask([1, 0]) == [False, True]
    assert ssys_to_mask([0, 0, 1]) == [True, True, False]


def run(argv):
    return main([str(a) for a in argv])


def test_pt_bell_matches_library(tmp_path):
    out = tmp_path / "pt.mat"
    assert run(["pt", "--in", DATA / "bell.mat", "--dims", "2,2", "--ssys", "1,0", "--out", out]) == 0
    np.testing.assert_array_equal(read_matrix(out), partial_transpose_b(2, 2, bell_phi_plus().matrix))


def test_pt_ssys_extremes(tmp_path, rng):
    m = random_complex(6, rng)
    src = tmp_path / "m.mat"
    write_matrix(src, m)
    run(["pt", "--in", src, "--dims", "2,3", "--ssys", "1,1", "--out", tmp_path / "a.mat"])
    run(["pt", "--in", src, "--dims", "2,3", "--ssys", "0,0", "--out", tmp_path / "b.mat"])
    run(["pt", "--in", src, "--dims", "2,3", "--mask", "true,false", "--out", tmp_path / "c.mat"])
    assert np.array_equal(read_matrix(tmp_path / "a.mat"), m)
    assert np.array_equal(read_matrix(tmp_path / "b.mat"), m.T)
    assert np.array_equal(read_matrix(tmp_path / "c.mat"), partial_transpose(m, (2, 3), (True, False)))


def report(path, *extra):
    buf = io.StringIO()
    args = SimpleNamespace(inp=path, dims=[2, 2], ssys=[1, 0], mask=None, css=None, format="text")
    for k, v in extra:
        setattr(args, k, v)
    assert cmd_report(args, stdout=buf) == 0
    return dict(line.split(": ", 1) for line in buf.getvalue().splitlines())


def test_report_bell(tmp_path):
    css = tmp_path / "css.mat"
    out = report(DATA / "bell.mat", ("css", css))
    assert float(out["E_n"]) == pytest.approx(0.5, abs=1e-10)
    assert float(out["E_ln"]) == pytest.approx(1.0, abs=1e-10)
    assert float(out["E_hs"]) == pytest.approx(0.70711, abs=1e-5)
    assert out["d_plus_prime"] == "3"
    assert css.exists()
    pt = partial_transpose_b(2, 2, bell_phi_plus().matrix)
    rep = hse(pt, want_css=True, dims=(2, 2), mask=(False, True))
    np.testing.assert_array_equal(read_matrix(css), rep.css.matrix)
    assert "min eigenvalue" in css.read_text().splitlines()[0]


def test_report_matches_library_exactly():
    out = report(DATA / "werner2_w0.5.mat")
    pt = partial_transpose_b(2, 2, read_matrix(DATA / "werner2_w0.5.mat"))
    rep = hse(pt)
    assert out["E_n"] == f"{negativity(pt):.12g}" and float(out["E_n"]) == pytest.approx(0.125)
    assert out["E_ln"] == f"{log_negativity(pt):.12g}"
    assert out["E_hs"] == f"{rep.e_hs:.12g}" and float(out["E_hs"]) == pytest.approx(0.17678, abs=1e-5)


def test_report_separable_writes_no_css(tmp_path):
    css = tmp_path / "css.mat"
    out = report(DATA / "product01.mat", ("css", css))
    assert out["E_n"] == out["E_ln"] == out["E_hs"] == "0"
    assert not css.exists()


def test_report_csv_format():
    buf = io.StringIO()
    args = SimpleNamespace(inp=DATA / "bell.mat", dims=[2, 2], ssys=None, mask=[False, True], css=None, format="csv")
    cmd_report(args, stdout=buf)
    header, row = buf.getvalue().splitlines()
    assert header.startswith("E_n,E_ln,E_hs,d_plus_prime")
    assert row.startswith("0.5,1,0.707106781187,3")


def test_sweep_stdout(capsys):
    assert run(["werner-sweep", "--qubits", "2", "--steps", "11"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "w,E_n,E_hs,d_plus_prime,oracle_lower_bound"
    last = lines[-1].split(",")
    assert last[0] == "1" and float(last[1]) == 0.5 and float(last[2]) == pytest.approx(0.70711, abs=1e-5)
    for line in lines[1:5]:  # w <= 0.3
        w, en, ehs = line.split(",")[:3]
        assert float(w) <= 0.3 and en == ehs == "0"


def test_sweep_three_qubits(capsys):
    run(["werner-sweep", "--qubits", "3", "--steps", "11"])
    rows = [r.split(",") for r in capsys.readouterr().out.splitlines()[1:]]
    half = next(r for r in rows if r[0] == "0.5")
    assert float(half[1]) == pytest.approx(0.1875)
    assert float(half[2]) == pytest.approx(0.21651, abs=1e-5)
    assert half[3] == "5"


def test_validate(tmp_path, capsys):
    assert run(["validate", "--in", DATA / "bell.mat", "--dims", "2,2"]) == 0
    pt = tmp_path / "pt.mat"
    run(["pt", "--in", DATA / "bell.mat", "--dims", "2,2", "--ssys", "1,0", "--out", pt])
    capsys.readouterr()
    assert run(["validate", "--in", pt]) == EXIT_NUMERIC
    assert "psd violated by 0.5" in capsys.readouterr().out
    assert run(["validate", "--in", pt, "--no-psd"]) == 0


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.mat"
    bad.write_text("dim 2\n1 0 0 0\n")
    assert run(["pt", "--in", bad, "--dims", "2", "--ssys", "0", "--out", tmp_path / "o"]) == EXIT_FORMAT
    assert run(["pt", "--in", tmp_path / "missing.mat", "--dims", "2", "--ssys", "0", "--out", tmp_path / "o"]) == EXIT_FORMAT
    assert run(["pt", "--in", DATA / "bell.mat", "--dims", "2,3", "--ssys", "1,0", "--out", tmp_path / "o"]) == EXIT_USAGE
    assert run(["pt", "--in", DATA / "bell.mat", "--dims", "2,2", "--ssys", "1,2", "--out", tmp_path / "o"]) == EXIT_USAGE
    assert run(["pt", "--in", DATA / "bell.mat", "--dims", "2,2", "--ssys", "1", "--out", tmp_path / "o"]) == EXIT_USAGE
    twice = tmp_path / "twice.mat"
    write_matrix(twice, 2 * bell_phi_plus().matrix)
    assert run(["report", "--in", twice, "--dims", "2,2", "--ssys", "1,0"]) == EXIT_NUMERIC
    with pytest.raises(SystemExit) as exc:
        run(["pt", "--in", DATA / "bell.mat"])
    assert exc.value.code == EXIT_USAGE
    capsys.readouterr()


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "ptentangle", "werner-sweep", "--qubits", "2", "--steps", "3"],
        capture_output=True, text=True, check=True,
    )
    assert res.stdout.splitlines() == [
        "w,E_n,E_hs,d_plus_prime,oracle_lower_bound",
        "0,0,0,5,0",
        "0.5,0.125,0.176776695297,3,0.144337567297",
        "1,0.5,0.707106781187,3,0.57735026919",
    ]
