from __future__ import annotations

import json
import os
import re
import subprocess
import sys

import numpy as np
import pytest

from thetacycles import io as tio
from thetacycles.cli import main
from thetacycles.cycle import compute_cycle
from thetacycles.forms import echelon_basis
from thetacycles.series import Modulus
from thetacycles.svg import cycle_svg


def test_csv_json_round_trip():
    rep = compute_cycle("Delta", 13, 2, i_max=40)
    a = tio.records_from_csv(tio.report_to_csv(rep))
    b = tio.records_from_json(tio.report_to_json(rep))
    assert a == b
    assert a[2] == {c: getattr(rep[2], c) for c in tio.CSV_COLUMNS}
    assert tio.report_to_csv(rep).splitlines()[0] == ",".join(tio.CSV_COLUMNS)


def test_zero_filtration_encoding():
    rep = compute_cycle("Delta", 13, 2, i_max=3)
    from dataclasses import replace
    rep.records[1] = replace(rep.records[1], weight_filt=None, factor_filt=None)
    rows = tio.records_from_csv(tio.report_to_csv(rep))
    assert rows[1]["weight_filt"] is None
    assert "zero" in tio.report_to_csv(rep).splitlines()[2]


def test_basis_file_round_trip(tmp_path):
    mod = Modulus(7, 2)
    B = echelon_basis(24, mod, 30, cache=tio.BasisCache())
    text = tio.format_basis(24, mod, 30, B.matrix)
    assert text.splitlines()[0] == "24 7 2 30 3"
    w, mod2, N, M = tio.parse_basis(text)
    assert (w, mod2, N) == (24, mod, 30) and np.array_equal(M, B.matrix)
    with pytest.raises(ValueError):
        tio.parse_basis("24 7 2 30 3\n1 2\n")


def test_warm_and_cold_cache_agree(tmp_path):
    cold = tio.BasisCache(tmp_path)
    r1 = compute_cycle("E4", 7, 2, method="echelon", cache=cold)
    files = sorted(os.listdir(tmp_path))
    assert files and all(re.match(r"basis-v1-w\d+-p7-m2-N\d+\.txt$", f) for f in files)
    assert cold.misses == len(files)
    warm = tio.BasisCache(tmp_path)
    r2 = compute_cycle("E4", 7, 2, method="echelon", cache=warm)
    assert warm.misses == 0 and warm.hits > 0
    assert r1.records == r2.records
    assert r1.records == compute_cycle("E4", 7, 2).records


def test_atomic_write_leaves_no_temp(tmp_path):
    target = tmp_path / "sub" / "out.txt"
    tio.atomic_write_text(target, "abc")
    assert target.read_text() == "abc"
    assert os.listdir(target.parent) == ["out.txt"]


def test_svg_is_deterministic_and_labelled():
    rep = compute_cycle("Delta", 17, 2)
    mp = compute_cycle("Delta", 17, 1)
    a = cycle_svg(rep, mp)
    b = cycle_svg(compute_cycle("Delta", 17, 2), compute_cycle("Delta", 17, 1))
    assert a == b
    assert a.count('class="panel"') == 2
    assert "stroke-dasharray" in a and "θⁱf" in a and ">i</text>" in a
    assert a.count('class="exceptional"') == len(rep.exceptional_indices)
    lows = re.findall(r'class="low" [^>]*data-i="(\d+)"', a)
    assert set(map(int, lows)) == set(rep.low_points()) | set(mp.low_points())
    assert "href" not in a
    single = cycle_svg(mp)
    assert single.count('class="panel"') == 1 and "stroke-dasharray" in single


def test_cli_cycle_intro_rows(tmp_path, capsys):
    out = tmp_path / "c.csv"
    assert main(["cycle", "--p", "13", "--m", "2", "--form", "Delta", "--i-max", "156",
                 "--out", str(out)]) == 0
    rows = tio.records_from_csv(out.read_text())
    assert [rows[i]["weight_filt"] for i in (133, 134, 135)] == [434, 280, 126]


def test_cli_cycle_mod_p_rows(capsys):
    assert main(["cycle", "--p", "17", "--m", "1", "--form", "Delta"]) == 0
    rows = tio.records_from_csv(capsys.readouterr().out)
    assert len(rows) == 17 and rows[6]["weight_filt"] == 24


def test_cli_json(capsys):
    assert main(["cycle", "--p", "7", "--form", "E4", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["p"] == 7 and data["k"] == 4 and len(data["records"]) == 7 * 6 + 2


def test_cli_errors(capsys):
    assert main(["cycle", "--p", "5", "--m", "2", "--form", "E4"]) != 0
    assert "omega_5(E4) = 0 != 4" in capsys.readouterr().err
    assert main(["verify", "--p", "9", "--form", "Delta"]) != 0
    assert "9 is not prime" in capsys.readouterr().err
    assert main(["cycle", "--p", "13", "--form", "E4+E6"]) != 0
    assert "homogeneous" in capsys.readouterr().err


def test_cli_verify_exit_code(tmp_path, capsys):
    ledger = tmp_path / "l.jsonl"
    assert main(["verify", "--p", "17", "--form", "Delta", "--claims", "thmA",
                 "--out", str(ledger)]) == 0
    lines = [json.loads(x) for x in ledger.read_text().splitlines()]
    assert lines and all(x["verdict"] == "pass" for x in lines)
    assert "total" in capsys.readouterr().err


def test_cli_figure_writes_svg_and_csv(tmp_path):
    out = tmp_path / "fig.svg"
    assert main(["figure", "--p", "17", "--form", "Delta", "--out", str(out)]) == 0
    assert out.read_text().startswith("<svg")
    assert tio.records_from_csv((tmp_path / "fig.csv").read_text())[17]["weight_filt"] == 318
    out1 = tmp_path / "fig1.svg"
    assert main(["figure", "--p", "17", "--m", "1", "--form", "Delta", "--out", str(out1)]) == 0
    assert out1.read_text().count('class="panel"') == 1


def test_cli_exceptional(capsys):
    assert main(["exceptional", "--p", "17", "--k", "12"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "p,k,i,n,i_prime"
    assert [int(x.split(",")[2]) for x in lines[1:]] == [53, 55, 88, 207, 240, 242]
    assert main(["exceptional", "--p", "5", "--k", "4"]) == 0
    assert len(capsys.readouterr().out.splitlines()) >= 1


def test_cli_several_primes_in_parallel(tmp_path):
    assert main(["cycle", "--p", "13,17", "--p", "19", "--m", "1", "--jobs", "2",
                 "--out", str(tmp_path) + os.sep]) == 0
    assert sorted(os.listdir(tmp_path)) == [f"theta-Delta-p{p}-m1.csv" for p in (13, 17, 19)]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "thetacycles", "exceptional", "--p", "13",
                           "--k", "12"], capture_output=True, text=True, check=True)
    assert proc.stdout.startswith("p,k,i,n,i_prime")


def test_cache_dir_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv(tio.CACHE_ENV, str(tmp_path))
    old = tio._default
    tio._default = None
    try:
        assert tio.default_cache().directory == tmp_path
    finally:
        tio._default = old
