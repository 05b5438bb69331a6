"""Domain types and the pure random-utility math.

An exit alternative is described by four attributes: the number of people
already using it (``np``), its distance in meters (``dist``), whether smoke
is present (``smoke``) and whether the decision-maker is familiar with it
(``fam``).  A decision-maker assigns each alternative a linear systematic
utility and picks among alternatives with multinomial-logit probabilities
(softmax over utilities).

Coefficients are generic (shared across alternatives, no alternative-specific
constants).  A model term may optionally interact with the first-choice dummy
``c1``, in which case it contributes two coefficients: the base one and one
that is active only when ``c1 = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

#: Registry of known exit attributes, in canonical order.  Extend here if a
#: new attribute is added to :class:`ExitAttributes`.
ATTRIBUTES = ("np", "dist", "smoke", "fam")

#: Suffix used to label first-choice interaction coefficients, e.g. "np:first".
FIRST_SUFFIX = ":first"


def _check_binary(value, name):
    if value not in (0, 1):
        raise ValueError(f"{name} must be 0 or 1, got {value!r}")


@dataclass(frozen=True)
class ExitAttributes:
    """Attribute vector of one exit alternative.

    Parameters
    ----------
    np : float
        Number of people already using the exit (>= 0).
    dist : float
        Distance from the decision-maker to the exit, in meters (>= 0).
    smoke : int
        1 if smoke is present at the exit, 0 otherwise.
    fam : int
        1 if the decision-maker is familiar with the exit, 0 otherwise.
    """

    np: float
    dist: float
    smoke: int
    fam: int

    def __post_init__(self):
        if self.np < 0:
            raise ValueError(f"np must be >= 0, got {self.np}")
        if self.dist < 0:
            raise ValueError(f"dist must be >= 0, got {self.dist}")
        _check_binary(self.smoke, "smoke")
        _check_binary(self.fam, "fam")

    def value(self, attribute: str) -> float:
        """Return the value of a registry attribute by name."""
        if attribute not in ATTRIBUTES:
            raise ValueError(f"unknown attribute {attribute!r}")
        return float(getattr(self, attribute))


@dataclass(frozen=True)
class Scenario:
    """A choice set: an ordered list of labelled exit alternatives."""

    id: int | str
    alternatives: tuple[tuple[str, ExitAttributes], ...]

    def __post_init__(self):
        object.__setattr__(self, "alternatives", tuple(
            (label, attrs) for label, attrs in self.alternatives))
        if len(self.alternatives) < 2:
            raise ValueError(
                f"scenario {self.id!r}: needs at least 2 alternatives")
        labels = [label for label, _ in self.alternatives]
        if len(set(labels)) != len(labels):
            raise ValueError(
                f"scenario {self.id!r}: duplicate alternative labels {labels}")

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.alternatives)

    @property
    def n_alternatives(self) -> int:
        return len(self.alternatives)


@dataclass(frozen=True)
class ChoiceObservation:
    """One recorded decision of one participant in one scenario."""

    participant_id: int | str
    scenario: Scenario
    chosen: int
    first_choice: int = 0

    def __post_init__(self):
        if not 0 <= self.chosen < self.scenario.n_alternatives:
            raise ValueError(
                f"chosen index {self.chosen} out of range for scenario "
                f"{self.scenario.id!r} with {self.scenario.n_alternatives} "
                "alternatives")
        _check_binary(self.first_choice, "first_choice")


@dataclass(frozen=True)
class ModelSpec:
    """Which attribute terms enter the utility, and how.

    ``terms`` is an ordered list of ``(attribute, with_first_choice)`` pairs.
    A term with ``with_first_choice=True`` contributes two coefficients (the
    base one and the first-choice interaction); a term with ``False``
    contributes one.  Coefficients are ordered base-then-interaction within
    each term, following term order.
    """

    terms: tuple[tuple[str, bool], ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(
            (attr, bool(flag)) for attr, flag in self.terms))
        if not self.terms:
            raise ValueError("model spec needs at least one term")
        seen = set()
        for attr, _ in self.terms:
            if attr not in ATTRIBUTES:
                raise ValueError(
                    f"unknown attribute {attr!r}; registry is {ATTRIBUTES}")
            if attr in seen:
                raise ValueError(f"duplicate term for attribute {attr!r}")
            seen.add(attr)

    @classmethod
    def from_attributes(cls, *attributes: str,
                        first_choice_interactions: bool = False) -> "ModelSpec":
        """Build a spec with one term per attribute, all with or without
        first-choice interactions."""
        return cls(tuple((a, first_choice_interactions) for a in attributes))

    @classmethod
    def from_coef_names(cls, names: Sequence[str]) -> "ModelSpec":
        """Reconstruct a spec from coefficient labels.

        Base names are attribute names; interaction labels carry the
        ``":first"`` suffix and must match a base term in the list.
        """
        base, inter = [], set()
        for name in names:
            if name.endswith(FIRST_SUFFIX):
                inter.add(name[: -len(FIRST_SUFFIX)])
            else:
                base.append(name)
        unmatched = inter - set(base)
        if unmatched:
            raise ValueError(
                f"interaction coefficients without base term: {sorted(unmatched)}")
        return cls(tuple((a, a in inter) for a in base))

    @property
    def n_params(self) -> int:
        """Number of coefficients K."""
        return sum(2 if flag else 1 for _, flag in self.terms)

    def coef_names(self) -> tuple[str, ...]:
        """Coefficient labels in parameter-vector order."""
        names = []
        for attr, flag in self.terms:
            names.append(attr)
            if flag:
                names.append(attr + FIRST_SUFFIX)
        return tuple(names)

    def design_row(self, exit: ExitAttributes, c1: int = 0) -> np.ndarray:
        """Expanded attribute row x such that V = x @ params."""
        _check_binary(c1, "c1")
        row = []
        for attr, flag in self.terms:
            x = exit.value(attr)
            row.append(x)
            if flag:
                row.append(c1 * x)
        return np.array(row, dtype=float)

    def design_matrix(self, scenario: Scenario, c1: int = 0) -> np.ndarray:
        """Stacked design rows for all alternatives, shape (J, K)."""
        return np.stack([self.design_row(attrs, c1)
                         for _, attrs in scenario.alternatives])


def as_params(spec: ModelSpec, values: Iterable[float]) -> np.ndarray:
    """Validate and convert a coefficient vector for ``spec``.

    Raises ValueError when the length does not match the spec's coefficient
    count.
    """
    params = np.asarray(list(values) if not isinstance(values, np.ndarray)
                        else values, dtype=float)
    if params.ndim != 1 or params.size != spec.n_params:
        raise ValueError(
            f"parameter vector has length {params.size}, spec expects "
            f"{spec.n_params} ({', '.join(spec.coef_names())})")
    return params


def softmax(utilities: np.ndarray) -> np.ndarray:
    """Numerically stable softmax (max-subtraction before exponentiation)."""
    v = np.asarray(utilities, dtype=float)
    e = np.exp(v - np.max(v))
    return e / e.sum()


def systematic_utility(spec: ModelSpec, params, exit: ExitAttributes,
                       c1: int = 0) -> float:
    """Linear systematic utility of one alternative.

    Each term contributes ``(beta + c1 * beta_first) * x``; terms without a
    first-choice interaction have ``beta_first = 0``.
    """
    beta = as_params(spec, params)
    return float(spec.design_row(exit, c1) @ beta)


def utilities(spec: ModelSpec, params, scenario: Scenario,
              c1: int = 0) -> np.ndarray:
    """Systematic utilities of all alternatives in a scenario."""
    beta = as_params(spec, params)
    return spec.design_matrix(scenario, c1) @ beta


def choice_probabilities(spec: ModelSpec, params, scenario: Scenario,
                         c1: int = 0) -> np.ndarray:
    """Multinomial-logit choice probabilities for one scenario.

    P_i = exp(V_i) / sum_k exp(V_k), computed with max-subtraction so that
    utilities of any practical magnitude cannot overflow.
    """
    return softmax(utilities(spec, params, scenario, c1))
