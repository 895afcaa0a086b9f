"""Config validation, orchestration, artifacts, exit codes, determinism."""

import json

import pytest

from hamca.automaton import Trajectory
from hamca.cli import ConfigError, load_config, main, run
from hamca.multipartite import MultiWave

PAULI_X = [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]


def write_config(path, obj):
    path.write_text(json.dumps(obj), encoding="utf-8")
    return str(path)


def evolve_config(tmp_path, steps=8, **extra):
    obj = {"kind": "evolve", "hamiltonians": [PAULI_X],
           "seeds": [[[1, 0], [0, 0]], [[1, 0], [0, 0]]], "steps": steps}
    obj.update(extra)
    return write_config(tmp_path / "cfg.json", obj)


def test_minimal_evolve_config_accepted(tmp_path):
    cfg = load_config(evolve_config(tmp_path))
    assert cfg.kind == "evolve"
    assert cfg.params["hamiltonian"].dim == 2
    assert cfg.params["steps"] == 8


def test_zero_steps_accepted(tmp_path):
    cfg = load_config(evolve_config(tmp_path, steps=0))
    assert cfg.params["steps"] == 0


def test_non_self_adjoint_hamiltonian_rejected(tmp_path):
    path = write_config(tmp_path / "cfg.json", {
        "kind": "evolve",
        "hamiltonians": [[[[0, 0], [0, 1]], [[0, 1], [0, 0]]]],
        "seeds": [[[1, 0], [0, 0]], [[1, 0], [0, 0]]],
        "steps": 3})
    with pytest.raises(ConfigError) as err:
        load_config(path)
    assert any("self-adjoint" in reason for _, reason in err.value.errors)
    assert any(p == "hamiltonians[0]" for p, _ in err.value.errors)


def test_unknown_fields_are_rejected(tmp_path):
    path = evolve_config(tmp_path, bogus=1)
    with pytest.raises(ConfigError) as err:
        load_config(path)
    assert [p for p, _ in err.value.errors] == ["bogus"]


def test_kind_mismatch_rejected(tmp_path):
    path = evolve_config(tmp_path)
    with pytest.raises(ConfigError):
        load_config(path, expected_kind="audit")


def test_missing_fields_reported_with_paths(tmp_path):
    path = write_config(tmp_path / "cfg.json", {"kind": "evolve"})
    with pytest.raises(ConfigError) as err:
        load_config(path)
    missing = {p for p, _ in err.value.errors}
    assert {"hamiltonians", "seeds", "steps"} <= missing


def test_seed_dimension_mismatch_rejected(tmp_path):
    path = write_config(tmp_path / "cfg.json", {
        "kind": "evolve", "hamiltonians": [PAULI_X],
        "seeds": [[[1, 0]], [[1, 0], [0, 0]]], "steps": 1})
    with pytest.raises(ConfigError) as err:
        load_config(path)
    assert any(p == "seeds[0]" for p, _ in err.value.errors)


def test_parse_error_reported(tmp_path):
    bad = tmp_path / "cfg.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config(str(bad))
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / "missing.json"))


def test_bad_output_format_rejected(tmp_path):
    path = evolve_config(tmp_path, output={"format": "xml"})
    with pytest.raises(ConfigError):
        load_config(path)
    path = evolve_config(tmp_path, output={"format": "json", "path": "x"})
    with pytest.raises(ConfigError) as err:
        load_config(path)
    assert any(p == "output.path" for p, _ in err.value.errors)


def test_evolve_run_and_artifact_contract(tmp_path):
    cfg = load_config(evolve_config(tmp_path))
    report = run(cfg, tmp_path / "out")
    assert all(c["passed"] for c in report["checks"])
    text = (tmp_path / "out" / "trajectory.csv").read_text()
    traj = Trajectory.from_csv(text)
    assert len(traj) == 10 and traj.dim == 2


def test_runs_are_deterministic(tmp_path):
    cfg = load_config(evolve_config(tmp_path, steps=40))
    run(cfg, tmp_path / "a")
    run(cfg, tmp_path / "b")
    assert (tmp_path / "a" / "trajectory.csv").read_bytes() == \
        (tmp_path / "b" / "trajectory.csv").read_bytes()


def test_report_roundtrips_through_json(tmp_path):
    cfg = load_config(evolve_config(tmp_path))
    report = run(cfg, tmp_path / "out")
    loaded = json.loads((tmp_path / "out" / "report.json").read_text())
    assert loaded["kind"] == report["kind"]
    assert loaded["checks"] == report["checks"]
    assert loaded["config"] == report["config"]


def test_json_format_artifact(tmp_path):
    cfg = load_config(evolve_config(tmp_path, output={"format": "json"}))
    run(cfg, tmp_path / "out")
    obj = json.loads((tmp_path / "out" / "trajectory.json").read_text())
    assert Trajectory.from_json_obj(obj).dim == 2


def test_exit_codes_via_main(tmp_path):
    ok_cfg = evolve_config(tmp_path)
    assert main(["evolve", "--config", ok_cfg,
                 "--out", str(tmp_path / "ok")]) == 0
    bad_cfg = evolve_config(tmp_path, bogus=2)
    assert main(["evolve", "--config", bad_cfg,
                 "--out", str(tmp_path / "bad")]) == 2


def test_failed_check_returns_one(tmp_path):
    # copy seeding degrades the scaling order below the declared bar
    path = write_config(tmp_path / "cfg.json", {
        "kind": "converge", "hamiltonians": [PAULI_X],
        "seeds": [[[1, 0], [0, 0]]], "horizon": 2.0,
        "scales": [0.4, 0.2, 0.1], "psi1_rule": "copy"})
    assert main(["converge", "--config", path,
                 "--out", str(tmp_path / "out")]) == 1


def test_audit_with_noncommuting_observable_is_informational(tmp_path):
    path = write_config(tmp_path / "cfg.json", {
        "kind": "audit", "hamiltonians": [PAULI_X],
        "seeds": [[[1, 0], [0, 0]], [[1, 0], [0, 0]]], "steps": 12,
        "observables": [[[[1, 0], [0, 0]], [[0, 0], [-1, 0]]]]})
    assert main(["audit", "--config", path, "--out", str(tmp_path / "out")]) == 0
    report = json.loads((tmp_path / "out" / "report.json").read_text())
    names = [c["name"] for c in report["checks"]]
    assert "noncommuting:G0" in names
    audit = json.loads((tmp_path / "out" / "audit.json").read_text())
    entry = audit["observables"][0]
    assert entry["commutes"] is False and "drift" in entry


def test_audit_default_basis_and_series(tmp_path):
    path = write_config(tmp_path / "cfg.json", {
        "kind": "audit", "hamiltonians": [PAULI_X],
        "seeds": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]], "steps": 20})
    assert main(["audit", "--config", path, "--out", str(tmp_path / "out")]) == 0
    series = (tmp_path / "out" / "series.csv").read_text().splitlines()
    assert series[0] == "label,n,re,im"
    labels = {line.split(",")[0] for line in series[1:]}
    assert labels == {"1", "H", "H^2", "H^3"}


def test_reconstruct_run(tmp_path):
    path = write_config(tmp_path / "cfg.json", {
        "kind": "reconstruct", "hamiltonians": [PAULI_X],
        "seeds": [[[1, 0], [0, 0]], [[1, 0], [0, 0]]], "steps": 16,
        "scale_l": 0.5, "times": [0.0, 0.25, 1.0, 4.0, 40.0], "window": 8})
    assert main(["reconstruct", "--config", path,
                 "--out", str(tmp_path / "out")]) == 0
    lines = (tmp_path / "out" / "reconstruction.csv").read_text().splitlines()
    assert lines[0] == "t,alpha,re,im"
    assert len(lines) == 1 + 5 * 2
    report = json.loads((tmp_path / "out" / "report.json").read_text())
    assert report["info"]["extrapolated_times"] == [40.0]


def test_converge_run_artifacts(tmp_path):
    path = write_config(tmp_path / "cfg.json", {
        "kind": "converge", "hamiltonians": [PAULI_X],
        "seeds": [[[1, 0], [0, 0]]], "horizon": 2.0,
        "scales": [0.4, 0.2, 0.1, 0.05]})
    assert main(["converge", "--config", path,
                 "--out", str(tmp_path / "out")]) == 0
    lines = (tmp_path / "out" / "convergence.csv").read_text().splitlines()
    assert lines[0] == "l,error,fitted_order"
    assert len(lines) == 5
    summary = json.loads((tmp_path / "out" / "convergence.json").read_text())
    assert summary["order"] >= 1.7


def test_multi_residual_checks(tmp_path):
    base = {"kind": "multi",
            "hamiltonians": [[[[2, 0]]], [[[2, 0]]]],
            "seeds": [[[[1, 0]], [[0, -1]]], [[[1, 0]], [[0, -1]]]],
            "steps": 4}
    path = write_config(tmp_path / "free.json", base)
    assert main(["multi", "--config", path, "--out", str(tmp_path / "f")]) == 0
    wave = MultiWave.from_json_obj(
        json.loads((tmp_path / "f" / "field.json").read_text()))
    assert wave.parts == 2

    coupled = dict(base)
    coupled["interaction"] = [[[1, 0]]]
    path = write_config(tmp_path / "coupled.json", coupled)
    assert main(["multi", "--config", path, "--out", str(tmp_path / "c")]) == 0
    report = json.loads((tmp_path / "c" / "report.json").read_text())
    assert report["checks"][0]["name"] == "interaction_breaks_factorization"
    assert report["checks"][0]["passed"]
    residual = (tmp_path / "c" / "residual.csv").read_text().splitlines()
    assert residual[0] == "n1,n2,re,im".replace("re", "alpha1,alpha2,re", 1) \
        or residual[0] == "n1,n2,alpha1,alpha2,re,im"


def test_multi_synchronized_gap(tmp_path):
    path = write_config(tmp_path / "cfg.json", {
        "kind": "multi",
        "hamiltonians": [[[[1, 0]]], [[[1, 0]]]],
        "seeds": [[[[1, 0]], [[1, 0]]], [[[1, 0]], [[1, 0]]]],
        "steps": 3, "synchronized": True})
    assert main(["multi", "--config", path, "--out", str(tmp_path / "out")]) == 0
    report = json.loads((tmp_path / "out" / "report.json").read_text())
    gap = report["info"]["synchronized_gap"]
    assert gap["synchronized"] == [1, -2] and gap["product"] == [0, -2]


def test_bell_run(tmp_path):
    path = write_config(tmp_path / "cfg.json", {
        "kind": "bell", "hamiltonians": [PAULI_X],
        "seeds": [[[[1, 0], [0, 0]], [[1, 0], [0, 0]]],
                  [[[0, 0], [1, 0]], [[0, 0], [1, 0]]]],
        "steps": 4})
    assert main(["bell", "--config", path, "--out", str(tmp_path / "out")]) == 0
    report = json.loads((tmp_path / "out" / "report.json").read_text())
    assert all(c["passed"] for c in report["checks"])


def test_leibniz_run(tmp_path):
    path = write_config(tmp_path / "cfg.json", {
        "kind": "leibniz", "sequences": [[1, 2, 4, 8], [1, 2, 4, 8]]})
    assert main(["leibniz", "--config", path, "--out", str(tmp_path / "out")]) == 0
    lines = (tmp_path / "out" / "leibniz.csv").read_text().splitlines()
    assert lines[0] == "n,product_rate,split_num,split_den,naive,naive_matches"
    assert lines[1] == "1,15,15,1,12,false"


def test_interaction_must_be_self_adjoint(tmp_path):
    path = write_config(tmp_path / "cfg.json", {
        "kind": "multi",
        "hamiltonians": [[[[1, 0]]], [[[1, 0]]]],
        "seeds": [[[[1, 0]], [[1, 0]]], [[[1, 0]], [[1, 0]]]],
        "steps": 3, "interaction": [[[0, 1]]]})
    with pytest.raises(ConfigError) as err:
        load_config(path)
    assert any(p == "interaction" for p, _ in err.value.errors)
