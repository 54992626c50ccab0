import json
import math

import pytest

from rabimix import ConfigError, emit_config, parse_config
from rabimix.cli import main
from rabimix.config import apply_override

VALID = {
    "system": {
        "modes": [
            {"label": "a", "frequency": 2.0},
            {"label": "b", "frequency": 1.0},
        ],
        "qubits": [{"label": "q", "frequency": 1.6}],
        "couplings": [
            {"mode": "a", "qubit": "q", "strength": 0.05, "mixing_angle": math.pi / 6},
            {"mode": "b", "qubit": "q", "strength": 0.05, "mixing_angle": math.pi / 6},
        ],
        "model": "generalized_rabi",
    },
    "geff": {"initial": "0,2,g", "final": "1,0,g"},
}


def write_config(tmp_path, payload, name="config.json"):
    p = tmp_path / name
    p.write_text(json.dumps(payload))
    return str(p)


def test_minimal_config_applies_defaults():
    config = parse_config(json.dumps(VALID))
    assert config.system is not None
    assert config.system.modes[0].n_max >= 2  # auto from referenced occupations
    assert config.section("geff")["initial"].label() == "0,2,g"


def test_round_trip_parse_emit_parse():
    config = parse_config(json.dumps(VALID))
    text = emit_config(config)
    again = parse_config(text)
    assert again.raw == config.raw
    assert emit_config(again) == text


def test_all_errors_reported_with_field_paths():
    bad = {
        "system": {
            "modes": [{"label": "a", "frequency": -1.0}],
            "qubits": [{"label": "q", "frequency": "oops"}],
            "couplings": [],
            "extra": True,
        },
        "geff": {"initial": "0,g"},
    }
    with pytest.raises(ConfigError) as err:
        parse_config(json.dumps(bad))
    joined = "\n".join(err.value.messages)
    assert "system.modes[0].frequency" in joined
    assert "system.qubits[0].frequency" in joined
    assert "system.extra" in joined
    assert "geff.final" in joined


def test_duplicate_mode_labels_is_semantic_error():
    bad = json.loads(json.dumps(VALID))
    bad["system"]["modes"][1]["label"] = "a"
    with pytest.raises(ConfigError):
        parse_config(json.dumps(bad))


def test_syntax_error_reports_line_and_column():
    with pytest.raises(ConfigError) as err:
        parse_config('{\n  "system": ]\n}')
    assert "line 2" in str(err.value)


def test_apply_override_paths():
    raw = json.loads(json.dumps(VALID))
    apply_override(raw, "system.modes.0.frequency=2.5")
    assert raw["system"]["modes"][0]["frequency"] == 2.5
    apply_override(raw, "system.model=jc")
    assert raw["system"]["model"] == "jc"
    apply_override(raw, 'geff={"initial": "1,0,g", "final": "0,2,g"}')
    assert raw["geff"]["initial"] == "1,0,g"
    with pytest.raises(ConfigError):
        apply_override(raw, "nonsense")
    with pytest.raises(ConfigError):
        apply_override(raw, "system.modes.7.frequency=1.0")


def test_cli_geff_runs_and_is_deterministic(tmp_path, capsys):
    cfg = write_config(tmp_path, VALID)
    out1 = tmp_path / "a.txt"
    out2 = tmp_path / "b.txt"
    assert main(["geff", "-c", cfg, "-o", str(out1)]) == 0
    assert main(["geff", "-c", cfg, "-o", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    text = out1.read_text()
    assert "order: 3" in text
    assert "paths: 12" in text


def test_cli_geff_explain_lists_paths(tmp_path, capsys):
    cfg = write_config(tmp_path, VALID)
    assert main(["geff", "-c", cfg, "--explain"]) == 0
    out = capsys.readouterr().out
    assert out.count("->") >= 12


def test_cli_set_override_wins(tmp_path, capsys):
    cfg = write_config(tmp_path, VALID)
    code = main(["geff", "-c", cfg, "--set", "system.model=jc"])
    assert code == 1  # odd-excitation transition unreachable under JC
    err = capsys.readouterr().err
    assert "no interaction path" in err


def test_cli_config_error_exit_2(tmp_path, capsys):
    bad = write_config(tmp_path, {"geff": {"initial": "0,g", "final": "1,g"}})
    assert main(["geff", "-c", bad]) == 2
    assert "config error" in capsys.readouterr().err


def test_cli_capacity_error_exit_3(tmp_path, capsys):
    cfg = write_config(tmp_path, VALID)
    code = main(["geff", "-c", cfg, "--set", "system.modes.0.n_max=99999999"])
    assert code == 3


def test_cli_unknown_subcommand_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_cli_spectrum_writes_model_variants(tmp_path):
    payload = json.loads(json.dumps(VALID))
    payload["spectrum"] = {
        "parameter": "mode:a",
        "lo": 1.9,
        "hi": 2.1,
        "points": 5,
        "tracked": ["0,2,g", "1,0,g"],
        "models": ["jc", "rabi", "generalized_rabi"],
        "output": str(tmp_path / "sweep"),
    }
    cfg = write_config(tmp_path, payload)
    assert main(["spectrum", "-c", cfg]) == 0
    for model in ("jc", "rabi", "generalized_rabi"):
        p = tmp_path / f"sweep_{model}.csv"
        assert p.exists()
        lines = p.read_text().splitlines()
        assert lines[0].startswith("param,level_")
        assert len(lines) == 6


def test_cli_spectrum_deterministic_across_threads(tmp_path):
    payload = json.loads(json.dumps(VALID))
    payload["spectrum"] = {
        "parameter": "mode:a", "lo": 1.9, "hi": 2.1, "points": 5,
        "tracked": ["0,2,g", "1,0,g"], "models": ["jc", "rabi"],
        "output": str(tmp_path / "s1"),
    }
    cfg = write_config(tmp_path, payload)
    assert main(["spectrum", "-c", cfg, "--threads", "1"]) == 0
    payload["spectrum"]["output"] = str(tmp_path / "s2")
    cfg = write_config(tmp_path, payload, "config2.json")
    assert main(["spectrum", "-c", cfg, "--threads", "4"]) == 0
    for model in ("jc", "rabi"):
        a = (tmp_path / f"s1_{model}.csv").read_bytes()
        b = (tmp_path / f"s2_{model}.csv").read_bytes()
        assert a == b


def test_cli_evolve_writes_trace(tmp_path, capsys):
    payload = {
        "system": {
            "modes": [{"label": "a", "frequency": 1.0}],
            "qubits": [{"label": "q", "frequency": 1.0}],
            "couplings": [{"mode": "a", "qubit": "q", "strength": 0.05}],
            "model": "jc",
        },
        "evolve": {
            "initial": "1,g", "total_time": 200.0, "samples": 256,
            "targets": ["0,e"], "output": str(tmp_path / "trace.csv"),
        },
    }
    cfg = write_config(tmp_path, payload)
    assert main(["evolve", "-c", cfg]) == 0
    out = capsys.readouterr().out
    assert "oscillation_frequency:" in out
    lines = (tmp_path / "trace.csv").read_text().splitlines()
    assert lines[0] == "t,P_f,norm"
    assert len(lines) == 257


def test_cli_catalog_lists_and_counts(tmp_path, capsys):
    assert main(["catalog"]) == 0
    out = capsys.readouterr().out
    assert "total: 52" in out
    assert main(["catalog", "-c", write_config(tmp_path, {
        "catalog": {"table": 1, "distinct_only": True},
    })]) == 0
    out = capsys.readouterr().out
    assert "total: 12" in out


def test_cli_classical_stdout_and_file(tmp_path, capsys):
    payload = {"classical": {"tones": [{"amplitude": 1.0, "frequency": 1.0}],
                             "chi2": 1.0}}
    cfg = write_config(tmp_path, payload)
    assert main(["classical", "-c", cfg]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "frequency,amplitude"
    target = tmp_path / "cls.csv"
    assert main(["classical", "-c", cfg, "-o", str(target)]) == 0
    assert target.read_text().splitlines()[0] == "frequency,amplitude"


def test_cli_verify_selected_processes(capsys):
    assert main(["verify", "--process", "shg_2r1q"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("PASS shg_2r1q")


def test_cli_verify_requires_targets(capsys):
    assert main(["verify"]) == 2


def test_env_override_applies(tmp_path, monkeypatch, capsys):
    cfg = write_config(tmp_path, VALID)
    monkeypatch.setenv("RABIMIX_system__model", "jc")
    assert main(["geff", "-c", cfg]) == 1
    # an explicit flag wins over the environment
    assert main(["geff", "-c", cfg, "--set", "system.model=generalized_rabi"]) == 0
