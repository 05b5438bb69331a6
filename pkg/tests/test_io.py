"""Tests for CSV formats and the run config loader."""

import json

import numpy as np
import pytest

from exitchoice import ModelSpec, generate_dataset
from exitchoice import io
from exitchoice import reference as ref

SPEC2 = ref.FIRST_CHOICE_SPEC
TRUTH2 = ref.estimates_vector(SPEC2, ref.FIRST_CHOICE_ESTIMATES)


def sample_data(n=5, seed=0):
    return generate_dataset(SPEC2, TRUTH2, ref.EXPERIMENT_SCENARIOS,
                            n_per_scenario=n, c1_pattern=0.25, seed=seed)


# ---------------------------------------------------------------------------
# choice data CSV
# ---------------------------------------------------------------------------

def test_choice_csv_roundtrip(tmp_path):
    path = tmp_path / "choices.csv"
    data = sample_data()
    io.write_choice_csv(path, data)
    back = io.read_choice_csv(path)
    assert len(back) == len(data)
    for a, b in zip(data, back):
        assert a.chosen == b.chosen
        assert a.first_choice == b.first_choice
        assert str(a.scenario.id) == str(b.scenario.id)
        assert a.scenario.labels == b.scenario.labels
        for (_, attrs_a), (_, attrs_b) in zip(a.scenario.alternatives,
                                              b.scenario.alternatives):
            assert attrs_a == attrs_b


def test_choice_csv_header_and_row_count(tmp_path):
    path = tmp_path / "choices.csv"
    io.write_choice_csv(path, sample_data(n=2))
    lines = path.read_text().splitlines()
    assert lines[0] == ",".join(io.CHOICE_HEADER)
    assert len(lines) == 1 + 16 * 3  # 8 scenarios x 2 obs x 3 alternatives


def test_choice_csv_two_chosen_rows_cite_obs_id(tmp_path):
    path = tmp_path / "bad.csv"
    io.write_choice_csv(path, sample_data(n=1))
    text = path.read_text().splitlines()
    # flip a non-chosen row of obs 3 to chosen
    for i, line in enumerate(text):
        if line.startswith("3,") and line.split(",")[-2] == "0":
            parts = line.split(",")
            parts[-2] = "1"
            text[i] = ",".join(parts)
            break
    path.write_text("\n".join(text) + "\n")
    with pytest.raises(io.DataFileError, match="obs_id 3"):
        io.read_choice_csv(path)


def test_choice_csv_single_row_observation_rejected(tmp_path):
    path = tmp_path / "bad.csv"
    rows = [",".join(io.CHOICE_HEADER),
            "1,p1,s1,A,0,6,0,1,1,0",
            "1,p1,s1,B,5,3.6,1,0,0,0",
            "2,p2,s1,A,0,6,0,1,1,0"]
    path.write_text("\n".join(rows) + "\n")
    with pytest.raises(io.DataFileError, match="obs_id 2"):
        io.read_choice_csv(path)


def test_choice_csv_malformed_value_cites_line(tmp_path):
    path = tmp_path / "bad.csv"
    rows = [",".join(io.CHOICE_HEADER),
            "1,p1,s1,A,0,6,0,1,1,0",
            "1,p1,s1,B,five,3.6,1,0,0,0"]
    path.write_text("\n".join(rows) + "\n")
    with pytest.raises(io.DataFileError, match="line 3"):
        io.read_choice_csv(path)


def test_choice_csv_inconsistent_first_choice_rejected(tmp_path):
    path = tmp_path / "bad.csv"
    rows = [",".join(io.CHOICE_HEADER),
            "1,p1,s1,A,0,6,0,1,1,1",
            "1,p1,s1,B,5,3.6,1,0,0,0"]
    path.write_text("\n".join(rows) + "\n")
    with pytest.raises(io.DataFileError, match="first_choice"):
        io.read_choice_csv(path)


def test_choice_csv_empty_file_errors(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("")
    with pytest.raises(io.DataFileError, match="no observations"):
        io.read_choice_csv(path)
    path.write_text(",".join(io.CHOICE_HEADER) + "\n")
    with pytest.raises(io.DataFileError, match="no observations"):
        io.read_choice_csv(path)


def test_choice_csv_bad_header_rejected(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("a,b,c\n1,2,3\n")
    with pytest.raises(io.DataFileError, match="header"):
        io.read_choice_csv(path)


# ---------------------------------------------------------------------------
# scenario CSV
# ---------------------------------------------------------------------------

def test_scenario_csv_roundtrip(tmp_path):
    path = tmp_path / "scenarios.csv"
    io.write_scenarios_csv(path, ref.EXPERIMENT_SCENARIOS, d_error=0.25)
    back = io.read_scenarios_csv(path)
    assert len(back) == 8
    for a, b in zip(ref.EXPERIMENT_SCENARIOS, back):
        assert str(a.id) == str(b.id)
        assert a.labels == b.labels
        assert [attrs for _, attrs in a.alternatives] == \
               [attrs for _, attrs in b.alternatives]
    assert path.read_text().splitlines()[-1].startswith("# d_error=")


def test_scenario_csv_unknown_column_rejected(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("scenario_id,width_A\n1,2\n")
    with pytest.raises(io.DataFileError, match="unrecognized"):
        io.read_scenarios_csv(path)


# ---------------------------------------------------------------------------
# coefficient tables
# ---------------------------------------------------------------------------

def test_inference_csv_roundtrip(tmp_path):
    from exitchoice import fit_mnl, inference_table
    data = sample_data(n=60, seed=3)
    fit = fit_mnl(data, SPEC2)
    rows = inference_table(fit)
    path = tmp_path / "fit.csv"
    io.write_inference_csv(path, rows, fit)
    lines = path.read_text().splitlines()
    assert lines[0] == ",".join(io.INFERENCE_HEADER)
    assert lines[-1].startswith("# log_likelihood=")
    params = io.read_params_csv(path)
    assert list(params) == list(SPEC2.coef_names())
    for row in rows:
        est, se = params[row.name]
        assert est == row.estimate  # full-precision round trip
        assert se == row.std_error


def test_params_csv_estimate_only(tmp_path):
    path = tmp_path / "params.csv"
    path.write_text("name,estimate\nnp,0.233\ndist,-0.439\n")
    params = io.read_params_csv(path)
    assert params == {"np": (0.233, None), "dist": (-0.439, None)}


def test_params_csv_duplicate_name_rejected(tmp_path):
    path = tmp_path / "params.csv"
    path.write_text("name,estimate\nnp,0.1\nnp,0.2\n")
    with pytest.raises(io.DataFileError, match="duplicate"):
        io.read_params_csv(path)


# ---------------------------------------------------------------------------
# run config
# ---------------------------------------------------------------------------

def write_config(tmp_path, cfg):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(cfg))
    return path


def test_config_requires_version(tmp_path):
    with pytest.raises(io.ConfigError, match="version"):
        io.load_config(write_config(tmp_path, {"model": {}}))


def test_config_unknown_top_level_key(tmp_path):
    with pytest.raises(io.ConfigError, match="unknown key"):
        io.load_config(write_config(tmp_path, {"version": 1, "extra": 1}))


def test_config_model_terms(tmp_path):
    cfg = io.load_config(write_config(tmp_path, {
        "version": 1,
        "model": {"terms": [{"attr": "np", "first_choice": True},
                            {"attr": "dist"}]}}))
    spec = io.model_from_config(cfg)
    assert spec == ModelSpec((("np", True), ("dist", False)))


def test_config_model_unknown_attr(tmp_path):
    cfg = io.load_config(write_config(tmp_path, {
        "version": 1, "model": {"terms": [{"attr": "width"}]}}))
    with pytest.raises(io.ConfigError, match="unknown attribute"):
        io.model_from_config(cfg)


def test_config_model_unknown_term_key(tmp_path):
    cfg = io.load_config(write_config(tmp_path, {
        "version": 1, "model": {"terms": [{"attr": "np", "c1": True}]}}))
    with pytest.raises(io.ConfigError, match="unknown key"):
        io.model_from_config(cfg)


def test_config_priors_must_cover_spec(tmp_path):
    cfg = io.load_config(write_config(tmp_path, {
        "version": 1,
        "model": {"terms": [{"attr": "np"}, {"attr": "smoke"}]},
        "priors": {"np": 0.1}}))
    spec = io.model_from_config(cfg)
    with pytest.raises(io.ConfigError, match="missing value"):
        io.priors_from_config(cfg, spec)
    cfg["priors"] = {"np": 0.1, "smoke": -0.5, "dist": 0.2}
    with pytest.raises(io.ConfigError, match="unknown key"):
        io.priors_from_config(cfg, spec)
    cfg["priors"] = {"np": 0.1, "smoke": -0.5}
    np.testing.assert_array_equal(io.priors_from_config(cfg, spec),
                                  [0.1, -0.5])


def test_config_levels(tmp_path):
    cfg = io.load_config(write_config(tmp_path, {
        "version": 1,
        "levels": {
            "A": {"np": [0, 5], "dist": [4.0], "smoke": [0, 1], "fam": [1]},
            "B": {"np": [0, 5], "dist": [2.0], "smoke": [0, 1], "fam": [0]},
        }}))
    levels = io.levels_from_config(cfg)
    assert levels.n_scenarios == 16
    cfg["levels"]["A"]["color"] = ["red"]
    with pytest.raises(io.ConfigError, match="unknown key"):
        io.levels_from_config(cfg)


def test_config_sweep_conditions(tmp_path):
    cfg = io.load_config(write_config(tmp_path, {
        "version": 1,
        "sweep": {"attribute": "np", "start": 0, "stop": 10, "step": 0.5,
                  "fixed_exit": {"np": 5, "dist": 3.0, "smoke": 0},
                  "swept_exit": {"dist": 3.0, "smoke": 0},
                  "familiarity": ["A", "B", "both"]}}))
    sweeps = io.sweeps_from_config(cfg)
    assert [condition for condition, _ in sweeps] == ["A", "B", "both"]
    assert all(sc.sweep_attr == "np" for _, sc in sweeps)


def test_config_sweep_rejects_fam_in_exit(tmp_path):
    cfg = io.load_config(write_config(tmp_path, {
        "version": 1,
        "sweep": {"attribute": "np", "start": 0, "stop": 1, "step": 1,
                  "fixed_exit": {"fam": 1}}}))
    with pytest.raises(io.ConfigError, match="unknown key"):
        io.sweeps_from_config(cfg)
