"""Monte-Carlo choice simulation and sensitivity curves.

``generate_dataset`` draws synthetic choices from known coefficients, which
is the main validation path for the estimator: simulate at true values, fit,
and check recovery.  ``sensitivity_curve`` sweeps one attribute of one exit
in a two-exit setting and reports the probability of the swept exit, using
effective coefficients collapsed from a first-choice interaction model.

The collapse rule is configurable because repeat-choice estimates leave it
open which interactions belong in a pooled prediction: "base" ignores the
interactions, "sum" always adds them, and "significant" (the default) adds
only those whose interaction is statistically significant.  Only the
"significant" rule reproduces the probability ranges observed in the source
experiment, which is why it is the default.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .core import (FIRST_SUFFIX, ChoiceObservation, ModelSpec, Scenario,
                   as_params, choice_probabilities)
from .estimation import two_sided_p

RULES = ("base", "sum", "significant")

#: Familiarity conditions for the two-exit sweep: which exit(s) the
#: decision-maker is familiar with.
FAMILIARITY = ("A", "B", "both")


def sample_choice(probabilities, rng: np.random.Generator) -> int:
    """Draw one alternative index from a categorical distribution.

    ``probabilities`` must be nonnegative and sum to 1 within 1e-9.
    Deterministic given the generator state.
    """
    p = np.asarray(probabilities, dtype=float)
    if p.ndim != 1 or p.size < 1 or np.any(p < 0) or np.any(~np.isfinite(p)):
        raise ValueError("malformed probability vector")
    if abs(p.sum() - 1.0) > 1e-9:
        raise ValueError(f"probabilities sum to {p.sum()!r}, not 1")
    cum = np.cumsum(p)
    idx = int(np.searchsorted(cum, rng.random(), side="right"))
    return min(idx, p.size - 1)


def sample_choice_gumbel(utilities, rng: np.random.Generator) -> int:
    """Cross-check sampler: argmax of utilities plus i.i.d. Gumbel noise.

    Distributionally equivalent to categorical sampling from the logit
    probabilities; kept as an independent oracle for tests.
    """
    v = np.asarray(utilities, dtype=float)
    return int(np.argmax(v + rng.gumbel(size=v.size)))


def generate_dataset(spec: ModelSpec, params, scenarios: Sequence[Scenario],
                     n_per_scenario: int, c1_pattern: float = 0.25,
                     seed: int = 0) -> list[ChoiceObservation]:
    """Simulate a synthetic choice dataset from known coefficients.

    For each scenario, ``n_per_scenario`` respondents choose once; the first
    ``round(c1_pattern * n_per_scenario)`` of them are flagged as first
    choices and draw from the c1=1 probabilities.  Output order is canonical
    (scenario order, then replicate order) and the whole dataset is
    deterministic given ``seed``.  Participant ids are synthetic.
    """
    if n_per_scenario < 1:
        raise ValueError("n_per_scenario must be >= 1")
    if not 0.0 <= c1_pattern <= 1.0:
        raise ValueError("c1_pattern must be a fraction in [0, 1]")
    beta = as_params(spec, params)
    rng = np.random.default_rng(seed)
    n_first = int(round(c1_pattern * n_per_scenario))
    data: list[ChoiceObservation] = []
    for scenario in scenarios:
        cum = {c1: np.cumsum(choice_probabilities(spec, beta, scenario, c1))
               for c1 in (1, 0)}
        draws = rng.random(n_per_scenario)
        for r in range(n_per_scenario):
            c1 = 1 if r < n_first else 0
            idx = int(np.searchsorted(cum[c1], draws[r], side="right"))
            data.append(ChoiceObservation(
                participant_id=f"sim{len(data) + 1:06d}",
                scenario=scenario,
                chosen=min(idx, scenario.n_alternatives - 1),
                first_choice=c1))
    return data


def effective_coefficients(params: Mapping, rule: str = "significant",
                           alpha: float = 0.05) -> dict[str, float]:
    """Collapse base + first-choice interaction coefficients per attribute.

    ``params`` maps coefficient names to either an estimate or an
    ``(estimate, std_error)`` pair; interaction names carry the ":first"
    suffix.  Rules: "base" keeps base coefficients only, "sum" adds every
    interaction, "significant" adds an interaction only when its two-sided
    p-value is below ``alpha`` (this requires its standard error).
    """
    if rule not in RULES:
        raise ValueError(f"unknown rule {rule!r}; expected one of {RULES}")

    def split(value):
        if isinstance(value, (tuple, list)):
            est, se = value
            return float(est), (None if se is None else float(se))
        return float(value), None

    effective: dict[str, float] = {}
    for name, value in params.items():
        if name.endswith(FIRST_SUFFIX):
            continue
        est, _ = split(value)
        effective[name] = est
    for name, value in params.items():
        if not name.endswith(FIRST_SUFFIX):
            continue
        attr = name[: -len(FIRST_SUFFIX)]
        if attr not in effective:
            raise ValueError(f"interaction {name!r} has no base coefficient")
        est, se = split(value)
        if rule == "base":
            continue
        if rule == "sum":
            effective[attr] += est
            continue
        if se is None:
            raise ValueError(
                f"rule 'significant' needs a standard error for {name!r}")
        if two_sided_p(est / se) < alpha:
            effective[attr] += est
    return effective


@dataclass(frozen=True)
class SensitivityConfig:
    """Two-exit sweep definition.

    One attribute of the swept exit (exit A) varies over
    ``start, start+step, ... <= stop`` while the fixed exit (exit B) keeps
    ``fixed_exit``'s attributes.  The familiarity condition sets the fam
    attribute of both exits: "A" -> (1, 0), "B" -> (0, 1), "both" -> (1, 1).
    ``rule``/``alpha`` select how interaction coefficients are collapsed.
    """

    sweep_attr: str
    start: float
    stop: float
    step: float
    swept_exit: Mapping[str, float] = field(default_factory=dict)
    fixed_exit: Mapping[str, float] = field(default_factory=dict)
    familiarity: str = "both"
    rule: str = "significant"
    alpha: float = 0.05

    def __post_init__(self):
        if self.step <= 0:
            raise ValueError("sweep step must be > 0")
        if self.stop < self.start:
            raise ValueError("empty sweep range (stop < start)")
        if self.familiarity not in FAMILIARITY:
            raise ValueError(
                f"familiarity must be one of {FAMILIARITY}, "
                f"got {self.familiarity!r}")
        if self.sweep_attr == "fam":
            raise ValueError(
                "fam is set by the familiarity condition and cannot be swept")

    def sweep_values(self) -> np.ndarray:
        count = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return self.start + self.step * np.arange(count)


def _fam_values(condition: str) -> tuple[float, float]:
    return {"A": (1.0, 0.0), "B": (0.0, 1.0), "both": (1.0, 1.0)}[condition]


def sensitivity_curve(params: Mapping,
                      config: SensitivityConfig) -> list[tuple[float, float]]:
    """Probability of the swept exit along the sweep.

    ``params`` is a coefficient-name mapping as accepted by
    :func:`effective_coefficients`.  The two-alternative logit probability is
    evaluated on attribute differences, so attributes equal across the two
    exits drop out exactly; the curve is strictly monotone in the swept
    attribute (direction given by the sign of its effective coefficient).
    """
    effective = effective_coefficients(params, config.rule, config.alpha)
    if config.sweep_attr not in effective:
        raise ValueError(
            f"swept attribute {config.sweep_attr!r} is not in the model "
            f"(coefficients: {', '.join(effective)})")
    fam_a, fam_b = _fam_values(config.familiarity)

    # Utility difference V_A - V_B from exact attribute differences.
    base_delta = 0.0
    for attr, beta in effective.items():
        if attr == config.sweep_attr:
            continue
        if attr == "fam":
            base_delta += beta * (fam_a - fam_b)
            continue
        xa = float(config.swept_exit.get(attr, 0.0))
        xb = float(config.fixed_exit.get(attr, 0.0))
        base_delta += beta * (xa - xb)
    beta_swept = effective[config.sweep_attr]
    xb_swept = float(config.fixed_exit.get(config.sweep_attr, 0.0))

    curve = []
    for value in config.sweep_values():
        delta = base_delta + beta_swept * (float(value) - xb_swept)
        # logistic(delta), branch-stable for large |delta|
        if delta >= 0:
            p = 1.0 / (1.0 + math.exp(-delta))
        else:
            e = math.exp(delta)
            p = e / (1.0 + e)
        curve.append((float(value), p))
    return curve
