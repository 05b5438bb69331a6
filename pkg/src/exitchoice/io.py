"""File formats: long-format choice data, wide scenario tables, coefficient
tables and the JSON run config.

All CSVs use dot-decimal numbers regardless of locale, LF line endings and
full-precision floats (display rounding happens only in CLI printing).
Footer metadata lines start with ``#`` and are skipped by every reader.
"""

from __future__ import annotations

import csv
import json
from typing import Iterable, Mapping, Sequence

import numpy as np

from .core import (ATTRIBUTES, ChoiceObservation, ExitAttributes, ModelSpec,
                   Scenario)
from .design import FactorLevels
from .estimation import InferenceRow, ModelFit
from .simulation import SensitivityConfig

CHOICE_HEADER = ("obs_id", "participant_id", "scenario_id", "alt_label",
                 "np", "dist_m", "smoke", "fam", "chosen", "first_choice")
INFERENCE_HEADER = ("name", "estimate", "std_error", "z_value", "p_value")

#: Attribute column names of the wide scenario table, per exit label.
_ATTR_COLUMNS = {"np": "np", "dist": "dist_m", "smoke": "smoke", "fam": "fam"}


class DataFileError(ValueError):
    """A data file violates its schema; the message cites line or obs id."""


class ConfigError(ValueError):
    """A run config is malformed or carries unknown keys."""


def _fmt(value) -> str:
    f = float(value)
    return str(int(f)) if f.is_integer() else repr(f)


def _writer(fh):
    return csv.writer(fh, lineterminator="\n")


# ---------------------------------------------------------------------------
# Choice data (long format, one row per alternative)
# ---------------------------------------------------------------------------

def write_choice_csv(path, observations: Sequence[ChoiceObservation]) -> None:
    """Write observations as long-format rows, one per alternative."""
    with open(path, "w", newline="") as fh:
        w = _writer(fh)
        w.writerow(CHOICE_HEADER)
        for i, obs in enumerate(observations):
            for j, (label, attrs) in enumerate(obs.scenario.alternatives):
                w.writerow((i + 1, obs.participant_id, obs.scenario.id, label,
                            _fmt(attrs.np), _fmt(attrs.dist),
                            attrs.smoke, attrs.fam,
                            int(j == obs.chosen), obs.first_choice))


def _parse_binary(text: str, column: str, line: int) -> int:
    if text not in ("0", "1"):
        raise DataFileError(f"line {line}: {column} must be 0 or 1, "
                            f"got {text!r}")
    return int(text)


def read_choice_csv(path) -> list[ChoiceObservation]:
    """Read and validate a long-format choice data file.

    Each obs_id must have at least two rows, exactly one with chosen=1 and a
    constant first_choice flag.  Errors cite the offending line number or
    obs_id.
    """
    groups: dict[str, list] = {}
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise DataFileError("no observations: file is empty")
        if tuple(header) != CHOICE_HEADER:
            raise DataFileError(
                f"bad header {header!r}; expected {','.join(CHOICE_HEADER)}")
        for line, row in enumerate(reader, start=2):
            if not row or row[0].startswith("#"):
                continue
            if len(row) != len(CHOICE_HEADER):
                raise DataFileError(
                    f"line {line}: expected {len(CHOICE_HEADER)} fields, "
                    f"got {len(row)}")
            obs_id, participant, scenario_id, label = row[:4]
            try:
                attrs = ExitAttributes(
                    np=float(row[4]), dist=float(row[5]),
                    smoke=_parse_binary(row[6], "smoke", line),
                    fam=_parse_binary(row[7], "fam", line))
            except DataFileError:
                raise
            except ValueError as exc:
                raise DataFileError(f"line {line}: {exc}") from exc
            chosen = _parse_binary(row[8], "chosen", line)
            first = _parse_binary(row[9], "first_choice", line)
            groups.setdefault(obs_id, []).append(
                (participant, scenario_id, label, attrs, chosen, first))

    if not groups:
        raise DataFileError("no observations: file has a header but no rows")

    observations = []
    for obs_id, rows in groups.items():
        if len(rows) < 2:
            raise DataFileError(
                f"obs_id {obs_id}: needs at least 2 alternative rows")
        chosen_rows = [i for i, r in enumerate(rows) if r[4] == 1]
        if len(chosen_rows) != 1:
            raise DataFileError(
                f"obs_id {obs_id}: expected exactly one chosen=1 row, "
                f"found {len(chosen_rows)}")
        if len({r[5] for r in rows}) != 1:
            raise DataFileError(
                f"obs_id {obs_id}: first_choice differs across rows")
        try:
            scenario = Scenario(id=rows[0][1], alternatives=tuple(
                (r[2], r[3]) for r in rows))
        except ValueError as exc:
            raise DataFileError(f"obs_id {obs_id}: {exc}") from exc
        observations.append(ChoiceObservation(
            participant_id=rows[0][0], scenario=scenario,
            chosen=chosen_rows[0], first_choice=rows[0][5]))
    return observations


# ---------------------------------------------------------------------------
# Scenario tables (wide format, one row per scenario)
# ---------------------------------------------------------------------------

def _scenario_header(labels: Sequence[str]) -> list[str]:
    cols = ["scenario_id"]
    for label in labels:
        cols.extend(f"{_ATTR_COLUMNS[attr]}_{label}" for attr in ATTRIBUTES)
    return cols


def write_scenarios_csv(path, scenarios: Sequence[Scenario],
                        d_error: float | None = None) -> None:
    """Write scenarios as one wide row each; optional D-error footer."""
    labels = scenarios[0].labels
    for s in scenarios:
        if s.labels != labels:
            raise ValueError(
                f"scenario {s.id!r} has labels {s.labels}, expected {labels}")
    with open(path, "w", newline="") as fh:
        w = _writer(fh)
        w.writerow(_scenario_header(labels))
        for s in scenarios:
            row = [s.id]
            for _, attrs in s.alternatives:
                row.extend((_fmt(attrs.np), _fmt(attrs.dist),
                            attrs.smoke, attrs.fam))
            w.writerow(row)
        if d_error is not None:
            fh.write(f"# d_error={_fmt_float(d_error)}\n")


def read_scenarios_csv(path) -> list[Scenario]:
    """Read a wide scenario table; footer comment lines are ignored."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header or header[0] != "scenario_id":
            raise DataFileError(
                "bad scenario file header; first column must be scenario_id")
        labels: list[str] = []
        for col in header[1:]:
            for attr, attr_col in _ATTR_COLUMNS.items():
                prefix = attr_col + "_"
                if col.startswith(prefix):
                    label = col[len(prefix):]
                    if label not in labels:
                        labels.append(label)
                    break
            else:
                raise DataFileError(f"unrecognized scenario column {col!r}")
        expected = _scenario_header(labels)
        if header != expected:
            raise DataFileError(
                f"scenario columns {header!r} do not match the expected "
                f"layout {expected!r}")

        scenarios = []
        n_attr = len(ATTRIBUTES)
        for line, row in enumerate(reader, start=2):
            if not row or row[0].startswith("#"):
                continue
            if len(row) != len(expected):
                raise DataFileError(
                    f"line {line}: expected {len(expected)} fields, "
                    f"got {len(row)}")
            alternatives = []
            try:
                for a, label in enumerate(labels):
                    chunk = row[1 + n_attr * a: 1 + n_attr * (a + 1)]
                    alternatives.append((label, ExitAttributes(
                        np=float(chunk[0]), dist=float(chunk[1]),
                        smoke=_parse_binary(chunk[2], "smoke", line),
                        fam=_parse_binary(chunk[3], "fam", line))))
                scenarios.append(
                    Scenario(id=row[0], alternatives=tuple(alternatives)))
            except DataFileError:
                raise
            except ValueError as exc:
                raise DataFileError(f"line {line}: {exc}") from exc
    if not scenarios:
        raise DataFileError("scenario file has no rows")
    return scenarios


# ---------------------------------------------------------------------------
# Coefficient tables
# ---------------------------------------------------------------------------

def _fmt_float(value) -> str:
    return repr(float(value))


def write_inference_csv(path, rows: Iterable[InferenceRow],
                        fit: ModelFit) -> None:
    """Write an inference table with a log-likelihood footer line."""
    with open(path, "w", newline="") as fh:
        w = _writer(fh)
        w.writerow(INFERENCE_HEADER)
        for r in rows:
            w.writerow((r.name, _fmt_float(r.estimate), _fmt_float(r.std_error),
                        _fmt_float(r.z_value), _fmt_float(r.p_value)))
        fh.write(f"# log_likelihood={_fmt_float(fit.log_likelihood)} "
                 f"n_obs={fit.n_obs} converged={fit.converged} "
                 f"iterations={fit.iterations}\n")


def read_params_csv(path) -> dict[str, tuple[float, float | None]]:
    """Read a coefficient table into name -> (estimate, std_error or None).

    Accepts the inference-table layout or any prefix of it that includes
    name and estimate.  Keeps file order (useful to rebuild a ModelSpec).
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if (header is None or tuple(header) != INFERENCE_HEADER[:len(header)]
                or len(header) < 2):
            raise DataFileError(
                "bad coefficient file header; expected columns "
                f"{','.join(INFERENCE_HEADER)} (std_error onward optional)")
        has_se = len(header) >= 3
        params: dict[str, tuple[float, float | None]] = {}
        for line, row in enumerate(reader, start=2):
            if not row or row[0].startswith("#"):
                continue
            if len(row) != len(header):
                raise DataFileError(
                    f"line {line}: expected {len(header)} fields, "
                    f"got {len(row)}")
            name = row[0]
            if name in params:
                raise DataFileError(f"line {line}: duplicate coefficient "
                                    f"{name!r}")
            try:
                est = float(row[1])
                se = float(row[2]) if has_se else None
            except ValueError as exc:
                raise DataFileError(f"line {line}: {exc}") from exc
            params[name] = (est, se)
    if not params:
        raise DataFileError("coefficient file has no rows")
    return params


def write_curve_csv(path, curves: Mapping[str, Sequence[tuple]]) -> None:
    """Write sensitivity curves: familiarity, swept value, P(exit A)."""
    with open(path, "w", newline="") as fh:
        w = _writer(fh)
        w.writerow(("familiarity", "swept_value", "p_exit_a"))
        for condition, curve in curves.items():
            for value, p in curve:
                w.writerow((condition, _fmt(value), _fmt_float(p)))


def write_probabilities_csv(path, rows: Sequence[tuple]) -> None:
    """Write predicted probabilities: scenario_id, alt_label, probability."""
    with open(path, "w", newline="") as fh:
        w = _writer(fh)
        w.writerow(("scenario_id", "alt_label", "probability"))
        for scenario_id, label, p in rows:
            w.writerow((scenario_id, label, _fmt_float(p)))


# ---------------------------------------------------------------------------
# Run config (JSON with a version key; unknown keys rejected)
# ---------------------------------------------------------------------------

_TOP_KEYS = {"version", "model", "levels", "priors", "design", "estimate",
             "sweep", "out"}


def _check_keys(mapping, allowed, context) -> None:
    if not isinstance(mapping, dict):
        raise ConfigError(f"{context}: expected an object")
    unknown = sorted(set(mapping) - set(allowed))
    if unknown:
        raise ConfigError(f"{context}: unknown key(s) {', '.join(unknown)}")


def load_config(path) -> dict:
    """Load and structurally validate a run config."""
    with open(path) as fh:
        try:
            cfg = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
    _check_keys(cfg, _TOP_KEYS, "config")
    if cfg.get("version") != 1:
        raise ConfigError("config must declare \"version\": 1")
    return cfg


def model_from_config(cfg) -> ModelSpec:
    model = cfg.get("model")
    if model is None:
        raise ConfigError("config is missing the \"model\" section")
    _check_keys(model, {"terms"}, "model")
    raw_terms = model.get("terms")
    if not isinstance(raw_terms, list) or not raw_terms:
        raise ConfigError("model.terms must be a nonempty list")
    terms = []
    for i, term in enumerate(raw_terms):
        _check_keys(term, {"attr", "first_choice"}, f"model.terms[{i}]")
        if "attr" not in term:
            raise ConfigError(f"model.terms[{i}]: missing \"attr\"")
        terms.append((term["attr"], bool(term.get("first_choice", False))))
    try:
        return ModelSpec(tuple(terms))
    except ValueError as exc:
        raise ConfigError(f"model: {exc}") from exc


def levels_from_config(cfg) -> FactorLevels:
    levels = cfg.get("levels")
    if levels is None:
        raise ConfigError("config is missing the \"levels\" section")
    if not isinstance(levels, dict):
        raise ConfigError("levels: expected an object of exits")
    for label, per_attr in levels.items():
        _check_keys(per_attr, ATTRIBUTES, f"levels.{label}")
    try:
        return FactorLevels(levels=levels)
    except ValueError as exc:
        raise ConfigError(f"levels: {exc}") from exc


def priors_from_config(cfg, spec: ModelSpec) -> np.ndarray:
    priors = cfg.get("priors")
    if priors is None:
        raise ConfigError("config is missing the \"priors\" section")
    names = spec.coef_names()
    _check_keys(priors, names, "priors")
    missing = [n for n in names if n not in priors]
    if missing:
        raise ConfigError(f"priors: missing value(s) for {', '.join(missing)}")
    return np.array([float(priors[n]) for n in names])


def design_options(cfg) -> dict:
    options = cfg.get("design", {})
    _check_keys(options, {"size", "seed", "iterations", "with_replacement"},
                "design")
    return options


def estimate_options(cfg) -> dict:
    options = cfg.get("estimate", {})
    _check_keys(options, {"tol", "max_iter"}, "estimate")
    return options


def sweeps_from_config(cfg) -> list[tuple[str, SensitivityConfig]]:
    """Build one SensitivityConfig per familiarity condition in the sweep."""
    sweep = cfg.get("sweep")
    if sweep is None:
        raise ConfigError("config is missing the \"sweep\" section")
    _check_keys(sweep, {"attribute", "start", "stop", "step", "swept_exit",
                        "fixed_exit", "familiarity", "rule", "alpha"},
                "sweep")
    for key in ("attribute", "start", "stop", "step"):
        if key not in sweep:
            raise ConfigError(f"sweep: missing \"{key}\"")
    exit_attrs = set(ATTRIBUTES) - {"fam"}
    for side in ("swept_exit", "fixed_exit"):
        _check_keys(sweep.get(side, {}), exit_attrs, f"sweep.{side}")
    familiarity = sweep.get("familiarity", "both")
    conditions = [familiarity] if isinstance(familiarity, str) \
        else list(familiarity)
    configs = []
    for condition in conditions:
        try:
            configs.append((condition, SensitivityConfig(
                sweep_attr=sweep["attribute"],
                start=float(sweep["start"]), stop=float(sweep["stop"]),
                step=float(sweep["step"]),
                swept_exit=sweep.get("swept_exit", {}),
                fixed_exit=sweep.get("fixed_exit", {}),
                familiarity=condition,
                rule=sweep.get("rule", "significant"),
                alpha=float(sweep.get("alpha", 0.05)))))
        except ValueError as exc:
            raise ConfigError(f"sweep: {exc}") from exc
    return configs
