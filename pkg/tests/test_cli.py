import csv
import io
import json

import pytest

from hdair.cli import load_preset, parse_range, run
from hdair.errors import ConfigurationError


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_range_inclusive():
    assert len(parse_range("0:30:0.25")) == 121
    assert parse_range("5") == [5.0]
    with pytest.raises(ConfigurationError):
        parse_range("5:0:1")


def test_presets_overheads():
    for name, oh in [("oh08.33", 8.33), ("oh20.00", 20.0), ("oh33.33", 33.33)]:
        cfg = load_preset(name)
        n, t = int(cfg["n"]), int(cfg["t"])
        assert 100 * 4 * t / (n - 4 * t) == pytest.approx(oh, abs=0.01)
    with pytest.raises(ConfigurationError):
        load_preset("oh99")


def test_air_csv(capsys):
    code, out, _ = call(capsys, "air", "--mod", "16qam", "--snr", "0:30:0.25")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["snr_db", "scheme", "rate_bpcu", "stderr"]
    assert len(rows) == 121 * 5
    assert {r["scheme"] for r in rows} == {"sdd_sw", "hdchad_sw", "hdd_sw", "hdchad_bw", "hdd_bw"}


def test_dmc_json(capsys):
    code, out, _ = call(capsys, "dmc", "--mod", "qpsk", "--snr", "6")
    d = json.loads(out)
    assert code == 0 and len(d["transition"]) == 4
    assert d["manifest"]["command"] == "dmc" and d["manifest"]["seed"] == 0


def test_threshold_and_preset(capsys):
    code, out, _ = call(capsys, "threshold", "--q", "256", "--n", "255", "--t", "4",
                        "--L", "1", "--w", "1", "--window", "full", "--iters", "10000")
    d = json.loads(out)
    assert code == 0 and d["p_star"] == pytest.approx(0.02622, abs=1e-4)
    code, out, _ = call(capsys, "threshold", "--preset", "oh33.33", "--L", "1", "--w", "1",
                        "--window", "full", "--iters", "500")
    assert code == 0 and json.loads(out)["config"]["t"] == 15


def test_de_trace(capsys):
    code, out, _ = call(capsys, "de-trace", "--q", "16", "--n", "15", "--t", "2", "--L", "6",
                        "--window", "3", "--iters", "2", "--ps", "0.05")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "iteration,window,position,x"
    assert lines[1].startswith("0,0,1,")


def test_reach(capsys, tmp_path):
    path = tmp_path / "r.csv"
    code, out, _ = call(capsys, "reach", "--mod", "64qam", "--target-se", "8",
                        "--scheme", "hdd_bw", "--out", str(path))
    summary = json.loads(out)
    assert code == 0 and summary["target_rate_per_pol"] == 4.0
    rows = list(csv.DictReader(path.open()))
    assert list(rows[0]) == ["distance_km", "snr_db", "rate_bpcu"]
    assert float(rows[summary["n_spans"] - 1]["rate_bpcu"]) >= 4.0
    assert json.loads((tmp_path / "r.csv.manifest.json").read_text())["command"] == "reach"


def test_oracle(capsys):
    code, out, _ = call(capsys, "oracle", "bdd-stats", "--q", "4", "--n", "3", "--t", "1")
    assert code == 0 and json.loads(out)["enumeration"] == "exhaustive"


@pytest.mark.parametrize("argv,code", [
    (["bogus"], 2),
    (["dmc", "--mod", "32qam", "--snr", "1"], 2),
    (["air", "--mod", "16qam", "--snr", "0:1:1", "--schemes", "ml"], 2),
    (["threshold", "--q", "256", "--n", "255", "--t", "4", "--bracket", "0.2,0.3"], 2),
    (["threshold", "--q", "256"], 2),
    (["dmc", "--mod", "16qam", "--snr", "1", "--workers", "0"], 2),
    (["oracle"], 2),
])
def test_exit_codes(capsys, argv, code):
    c, out, err = call(capsys, *argv)
    assert c == code and err


def test_help_exit_zero(capsys):
    assert call(capsys, "--help")[0] == 0
