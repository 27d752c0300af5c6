import json
import math

import numpy as np
import pytest

from paraprod import experiments
from paraprod.calderon import make_bump_pair
from paraprod.cli import main, parse_dilations
from paraprod.corpus import (BASE_LEVEL, CorpusEntry, generate_corpus, random_scalar_symbol,
                             random_variable_symbol)
from paraprod.experiments import (ExperimentConfig, ReportTable, dilation_slope, run_inequality,
                                  run_oracle_suite)
from paraprod.field import GridSpec, SampledField
from paraprod.io import read_config, read_field, write_field
from paraprod.norms import NormConfig, bmo_seminorm

PAIR = make_bump_pair()
SMALL = dict(n=256, corpus_size=10, trials=2, dilations=(-1, 0, 1))


def test_corpus_deterministic():
    a, b = generate_corpus(20, 42), generate_corpus(20, 42)
    assert [e.id for e in a] == [e.id for e in b]
    g = GridSpec(1, 128)
    for x, y in zip(a, b):
        assert x.center_cell == y.center_cell and x.tags == y.tags
        assert np.array_equal(x.sample(g, 1).values, y.sample(g, 1).values)
    assert [e.center_cell for e in generate_corpus(20, 43)] != [e.center_cell for e in a]


def test_corpus_covers_every_generator():
    kinds = {e.generator for e in generate_corpus(20, 42)}
    assert kinds == {"log_periodic", "truncated_log", "smoothed_steps", "band_series", "atom"}


def test_corpus_entry_rejects():
    with pytest.raises(ValueError, match="tags"):
        CorpusEntry("x", "atom", {"radius": 0.5}, frozenset({"L2"}), 0)
    with pytest.raises(ValueError):
        CorpusEntry("x", "nope", {}, frozenset(), 0)
    e = generate_corpus(1, 0)[0]
    with pytest.raises(ValueError):
        e.sample(GridSpec(1, 64), BASE_LEVEL + 1)


def test_claimed_tags_validate():
    g = GridSpec(1, 1024)
    cfg = NormConfig.for_grid(g, PAIR)
    for e in generate_corpus(20, 42):
        f = e.sample(g, 0)
        assert np.all(np.isfinite(f.values))
        if "Linf" in e.tags:
            assert math.isfinite(f.sup())
        if "BMO" in e.tags:
            assert math.isfinite(bmo_seminorm(f, cfg))
        if "H1-atom" in e.tags:
            assert abs(f.mean()) <= 1e-8 * f.l1()


def test_log_entry_unbounded_but_bmo_stable():
    # a log singularity grows additively: each quadrupling of N adds |scale| ln 4
    e = next(x for x in generate_corpus(20, 42) if x.generator == "log_periodic")
    sups, bmos = [], []
    for n in (256, 1024):
        g = GridSpec(1, n)
        f = e.sample(g, 0)
        sups.append(f.sup())
        bmos.append(bmo_seminorm(f, NormConfig.for_grid(g, PAIR)))
    assert sups[1] - sups[0] == pytest.approx(abs(e.params["scale"]) * math.log(4), rel=1e-2)
    assert abs(bmos[1] - bmos[0]) / bmos[0] < 0.2


def test_random_symbols():
    rng = np.random.default_rng(3)
    sym = random_scalar_symbol(rng)
    t = 2.0 ** np.linspace(-30, 30, 601)
    assert np.abs(sym.m(t)).max() <= 1 + 1e-12
    # piecewise constant on two-octave blocks
    assert sym.m(np.array([1.0]))[0] == sym.m(np.array([3.9]))[0]
    v = random_variable_symbol(rng)
    g = GridSpec(1, 256)
    x = g.axis()
    vals = np.array([v.m(tt, x) for tt in (0.01, 0.5, 1.0)])
    assert np.abs(vals).max() <= 1 + 1e-12
    grad = np.abs(np.gradient(vals, x, axis=1)).max()
    assert grad <= v.grad_bound * (1 + 1e-3)


def test_dilation_slope_within_trial():
    rows = [{"trial": tr, "j": j, "ratio": 2.0 ** (0.5 * j) * (tr + 1)}
            for tr in range(3) for j in range(-3, 4)]
    assert dilation_slope(rows) == pytest.approx(0.5 * math.log(2), rel=1e-12)
    assert math.isnan(dilation_slope([{"trial": 0, "j": 0, "ratio": 1.0}]))


@pytest.mark.parametrize("name", ["thm-main", "thm-main-w1", "var-coeff", "cm", "bmo-equiv",
                                  "duality", "carleson"])
def test_run_inequality_small(name):
    table = run_inequality(ExperimentConfig(experiment=name, **SMALL))
    s = table.summary
    assert s["rows"] == len(table.rows) > 0
    for key in ("max_ratio", "p95_ratio", "dilation_slope", "skipped", "tag_validation"):
        assert key in s
    assert math.isfinite(s["max_ratio"]) and s["max_ratio"] > 0
    assert set(s["tag_validation"]) == {e.id for e in generate_corpus(10, 42)}
    assert {r["j"] for r in table.rows} == {-1, 0, 1}
    assert table.to_csv().splitlines()[0] == "trial,j,f_id,g_id,numerator,denominator,ratio"


def test_kato_ponce_reconstruction_checked_first():
    table = run_inequality(ExperimentConfig(experiment="kato-ponce", s=5.5, **SMALL))
    errs = table.summary["reconstruction_errors"]
    assert len(errs) == 3 and max(errs) <= 1e-9
    strict = ExperimentConfig(experiment="kato-ponce", s=5.5, reconstruction_tol=0.0, **SMALL)
    with pytest.raises(RuntimeError, match="reconstruction"):
        run_inequality(strict)


def test_zero_function_row_skipped(monkeypatch):
    zero = CorpusEntry("zero-000", "band_series",
                       {"amps": np.zeros((2, 3)), "phases": np.zeros((2, 3))},
                       frozenset({"Linf", "BMO", "bmo", "Xw"}), 0)
    monkeypatch.setattr(experiments, "generate_corpus", lambda size, seed: [zero])
    table = run_inequality(ExperimentConfig(experiment="thm-main-w1", **SMALL))
    assert table.rows == []
    assert len(table.summary["skipped"]) == 2 * 3
    assert all("below floor" in s["reason"] for s in table.summary["skipped"])
    assert math.isnan(table.summary["max_ratio"])


def test_failed_tag_is_skipped(monkeypatch, caplog):
    e = generate_corpus(1, 42)[0]
    bad = CorpusEntry("bad-000", e.generator, e.params, e.tags | {"Linf"}, e.center_cell)
    real = generate_corpus(10, 42)
    monkeypatch.setattr(experiments, "validate_tags",
                        lambda ctx, entry: {t: entry.id != "bad-000" or t != "Linf"
                                            for t in entry.tags})
    monkeypatch.setattr(experiments, "generate_corpus", lambda size, seed: [bad] + real)
    with caplog.at_level("WARNING"):
        table = run_inequality(ExperimentConfig(experiment="thm-main-w1", **SMALL))
    assert any(s.get("entry") == "bad-000" for s in table.summary["skipped"])
    assert "bad-000" in caplog.text
    assert "bad-000" not in {r["g_id"] for r in table.rows}


def test_oracle_suite_passes():
    table = run_oracle_suite(ExperimentConfig(experiment="oracle", oracle_n=64))
    assert table.summary["passed"], table.summary["by_operation"]
    ops = {r["operation"] for r in table.rows}
    for op in ("forward_transform", "apply_Qt", "paraproduct_const", "paraproduct_var",
               "coifman_meyer_apply[cm_one]", "commutator_l1_norm", "bmo_seminorm"):
        assert op in ops
    for r in table.rows:
        assert r["max_rel_error"] <= r["tolerance"]
    with pytest.raises(ValueError):
        run_oracle_suite(ExperimentConfig(experiment="oracle", oracle_n=1024))


def test_report_bytes_deterministic():
    cfg = ExperimentConfig(experiment="thm-main", **SMALL)
    a, b = run_inequality(cfg), run_inequality(ExperimentConfig(experiment="thm-main", **SMALL))
    assert a.to_csv() == b.to_csv()
    assert a.to_json() == b.to_json()
    json.loads(a.to_json())


def test_report_table_formats():
    t = ReportTable(["trial", "j", "ratio"], [{"trial": 0, "j": 1, "ratio": 0.1}], {"x": np.float64(2)})
    assert t.to_csv() == "trial,j,ratio\n0,1,0.1\n"
    assert json.loads(t.to_json()) == {"x": 2.0}
    assert t.plot_data() == "x,y\n1,0.1\n"


def test_config_rejects():
    with pytest.raises(ValueError):
        ExperimentConfig(experiment="nope")
    with pytest.raises(ValueError):
        ExperimentConfig(band="sideways")
    assert ExperimentConfig(band="covariant").band_limit_at(-3) == 1024 // 4 // 64


def test_parse_dilations():
    assert parse_dilations("-3..3") == (-3, -2, -1, 0, 1, 2, 3)
    assert parse_dilations("-1,0,2") == (-1, 0, 2)
    with pytest.raises(ValueError):
        parse_dilations("2..1")


@pytest.mark.parametrize("suffix", [".bin", ".csv"])
def test_field_io_round_trip(tmp_path, suffix):
    g = GridSpec(2, 16, 3.5)
    rng = np.random.default_rng(0)
    f = SampledField(g, rng.standard_normal(g.shape) + 1j * rng.standard_normal(g.shape))
    p = tmp_path / f"f{suffix}"
    write_field(f, p)
    h = read_field(p)
    assert h.grid == g and np.array_equal(h.values, f.values)


def test_field_io_truncated(tmp_path):
    p = tmp_path / "f.bin"
    write_field(SampledField.constant(GridSpec(1, 16), 1.0), p)
    p.write_bytes(p.read_bytes()[:-8])
    with pytest.raises(ValueError, match="expected"):
        read_field(p)


def test_read_config_sections(tmp_path):
    p = tmp_path / "c.ini"
    p.write_text("[paraprod]\nseed = 1\n[verify]\nn = 128\ncorpus-size = 5\n")
    assert read_config(p, "verify") == {"seed": "1", "n": "128", "corpus_size": "5"}
    with pytest.raises(FileNotFoundError):
        read_config(tmp_path / "missing.ini", "verify")


def test_cli_validate_weights(tmp_path, capsys):
    out = tmp_path / "w.json"
    assert main(["validate-weights", "--weight", "log", "--out", str(out)]) == 0
    assert "admissible" in capsys.readouterr().out
    assert json.loads(out.read_text())["admissible"] is True


def test_cli_oracle(capsys):
    assert main(["oracle", "--n", "32"]) == 0
    assert "FAIL" not in capsys.readouterr().out


def test_cli_verify_files(tmp_path):
    out = tmp_path / "run.csv"
    argv = ["verify", "--inequality", "thm-main", "--n", "256", "--corpus-size", "10",
            "--trials", "2", "--dilations", "-1..1", "--out", str(out), "--plot-data"]
    assert main(argv) == 0
    first = out.read_bytes()
    summary = json.loads(out.with_suffix(".json").read_text())
    assert summary["config"]["dilations"] == [-1, 0, 1]
    assert out.with_suffix(".plot.csv").read_text().startswith("x,y\n")
    assert main(argv) == 0
    assert out.read_bytes() == first


def test_cli_config_file_and_override(tmp_path):
    ini = tmp_path / "run.ini"
    out = tmp_path / "run.csv"
    ini.write_text(f"[verify]\ninequality = cm\nn = 256\ncorpus_size = 10\ntrials = 1\n"
                   f"dilations = 0,1\nsymbol = kato_ponce_2\nout = {out}\n")
    assert main(["verify", "--config", str(ini), "--trials", "2"]) == 0
    s = json.loads(out.with_suffix(".json").read_text())
    assert s["config"]["trials"] == 2 and s["config"]["n"] == 256
    assert s["symbol"] == "kato_ponce_2(s=5.5)"
    bad = tmp_path / "bad.ini"
    bad.write_text("[verify]\nbogus = 1\n")
    with pytest.raises(ValueError, match="bogus"):
        main(["verify", "--config", str(bad)])


@pytest.mark.parametrize("suffix", [".bin", ".csv"])
def test_cli_norms(tmp_path, suffix):
    g = GridSpec(1, 128)
    f = generate_corpus(5, 1)[2].sample(g, 0)
    p = tmp_path / f"f{suffix}"
    write_field(f, p)
    out = tmp_path / "n.json"
    assert main(["norms", "--input", str(p), "--all", "--out", str(out)]) == 0
    rows = json.loads(out.read_text())
    assert len(rows) == 10
    by = {r["norm_name"]: r["value"] for r in rows}
    assert by["sup"] == pytest.approx(f.sup())
    assert all(math.isfinite(v) for v in by.values())
    assert rows[0]["grid"] == {"dim": 1, "n": 128, "period": g.period}


def test_cli_sigma(tmp_path):
    out = tmp_path / "s.csv"
    assert main(["sigma", "--n", "64", "--out", str(out)]) == 0
    assert out.read_text().splitlines()[0] == "xi,sigma_w,w_inv_xi"
