import json

import pytest

from coopaloha.cli import main
from coopaloha.harness import (CSV_HEADER, ConfigError, ExperimentConfig, LoadSweepRecord,
                               emit_csv, estimate_G_bullet, run_sweep)

SMALL = dict(m=8, tau=8, delta=3.0, G_values=[0.0, 0.2, 0.5, 0.9], runs_per_point=4,
             master_seed=7)


def rec(G, p, decoder="spatiotemporal", n=10):
    return LoadSweepRecord(G=G, n=n, decoder=decoder, mean_T=G * p, std_T=0.0,
                           mean_P_coll=p, std_P_coll=0.0, runs=1)


@pytest.fixture(scope="module")
def small_records():
    return run_sweep(ExperimentConfig(**SMALL))


def test_config_validation():
    with pytest.raises(ConfigError):
        ExperimentConfig(tau=1, dist=[[2, 1.0]])
    with pytest.raises(ConfigError):
        ExperimentConfig(G_values=[-0.1])
    with pytest.raises(ConfigError):
        ExperimentConfig(decoders=["magic"])
    with pytest.raises(ConfigError):
        ExperimentConfig(runs_per_point=0)
    with pytest.raises(ConfigError):
        ExperimentConfig(dist=[[2, 0.5]])
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"m": 4, "colour": "red"})
    cfg = ExperimentConfig()
    assert (cfg.m, cfg.tau, cfg.runs_per_point, cfg.epsilon) == (40, 40, 30, 0.05)
    assert cfg.G_values[0] == 0.05 and cfg.G_values[-1] == 1.0 and len(cfg.G_values) == 20


def test_zero_load_rows(small_records):
    zero = [r for r in small_records if r.n == 0]
    assert len(zero) == 4
    assert all(r.mean_T == 0 and r.mean_P_coll == 0 for r in zero)


def test_records_consistent(small_records):
    for r in small_records:
        assert 0 <= r.mean_P_coll <= 1
        assert r.mean_T == pytest.approx(r.G * r.mean_P_coll, abs=1e-12)
        assert r.mean_P_coll <= r.mean_coverage + 1e-12
        assert (r.heuristic_P_coll is not None) == (r.decoder == "spatiotemporal")
    by = {(r.G, r.decoder): r.mean_T for r in small_records}
    for G in {r.G for r in small_records}:
        st = by[(G, "spatiotemporal")]
        assert st >= by[(G, "temporal")] >= by[(G, "noncoop")]
        assert st >= by[(G, "spatial")] >= by[(G, "noncoop")]


def test_effective_load_reported():
    cfg = ExperimentConfig(m=3, tau=7, delta=1.0, G_values=[0.5], runs_per_point=1,
                           decoders=["noncoop"])
    (r,) = run_sweep(cfg)
    assert r.n == 10 and r.G == pytest.approx(10 / 21)


def test_workers_do_not_change_results(small_records):
    again = run_sweep(ExperimentConfig(**SMALL), workers=2)
    assert again == small_records


def test_csv_format(tmp_path, small_records):
    p = tmp_path / "empty.csv"
    emit_csv([], p)
    assert p.read_text() == ",".join(CSV_HEADER) + "\n"
    emit_csv([rec(0.25, 0.5)], p)
    lines = p.read_text().splitlines()
    assert len(lines) == 2
    assert lines[1] == "0.250000,10,spatiotemporal,0.125000,0.000000,0.500000,0.000000,1,"
    emit_csv(small_records, p)
    rows = p.read_text().splitlines()[1:]
    keys = [(float(x.split(",")[0]), x.split(",")[2]) for x in rows]
    assert keys == sorted(keys)


def test_csv_rerun_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    emit_csv(run_sweep(ExperimentConfig(**SMALL)), a)
    emit_csv(run_sweep(ExperimentConfig(**SMALL)), b)
    assert a.read_bytes() == b.read_bytes()


def test_csv_unwritable(tmp_path):
    bad = tmp_path / "nope" / "x.csv"
    with pytest.raises(OSError, match="nope"):
        emit_csv([], bad)


def test_G_bullet():
    with pytest.raises(ValueError):
        estimate_G_bullet([], 0.05)
    flat = [rec(G, 1.0) for G in (0.1, 0.2, 0.3)]
    assert estimate_G_bullet(flat, 0.05) == 0.3
    # coverage-limited system: 1 - e^-2 < 0.95 so nothing ever passes
    capped = [rec(G, 0.8647) for G in (0.1, 0.2, 0.3)]
    assert estimate_G_bullet(capped, 0.05) == 0.0
    # crossing between 0.2 (0.97) and 0.3 (0.93) at 0.25
    mixed = [rec(0.1, 0.99), rec(0.2, 0.97), rec(0.3, 0.93), rec(0.4, 0.5)]
    assert estimate_G_bullet(mixed, 0.05) == pytest.approx(0.25)
    assert estimate_G_bullet([rec(0.0, 0.0, n=0)] + mixed, 0.05) == pytest.approx(0.25)


# --- CLI ------------------------------------------------------------------

def test_cli_analyze(capsys):
    assert main(["analyze", "--delta", "3", "--G", "0", "--dist", "2:1.0"]) == 0
    assert "estimate=0.950213" in capsys.readouterr().out


def test_cli_threshold(capsys):
    assert main(["threshold", "--dist", "2:1.0", "--tol", "1e-3", "--delta", "3"]) == 0
    out = capsys.readouterr().out.splitlines()
    h = float(out[0].split("=")[1])
    bound = float(out[1].split()[1].split("=")[1])
    assert 0.499 <= h <= 0.505
    assert bound == pytest.approx(h / (8 * 2.718281828459045 * 3), abs=1e-6)


def test_cli_sweep(tmp_path, capsys):
    cfg = dict(SMALL, output_path=str(tmp_path / "out.csv"))
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    assert main(["sweep", "--config", str(path)]) == 0
    assert (tmp_path / "out.csv").read_text().startswith("G,n,decoder")


def test_cli_exit_codes(tmp_path, capsys):
    assert main(["sweep", "--config", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"m": 4, "tau": 1, "dist": [[2, 1.0]]}))
    assert main(["sweep", "--config", str(bad)]) == 1
    bad.write_text("{not json")
    assert main(["sweep", "--config", str(bad)]) == 1
    ok = tmp_path / "ok.json"
    ok.write_text(json.dumps(dict(SMALL, output_path=str(tmp_path / "no" / "x.csv"))))
    assert main(["sweep", "--config", str(ok)]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1


def test_cli_fixtures(capsys):
    assert main(["fixtures"]) == 0
    out = capsys.readouterr().out
    assert "== FIG1" in out and "spatiotemporal: U0 U1 U2 U3" in out
