"""Efficient stated-preference design over a factorial scenario space.

The candidate universe is the full factorial of per-exit attribute levels.
A design (subset of scenarios) is scored by its D-error: the determinant of
the inverse Fisher information at prior coefficients, raised to 1/K.  Lower
is better; a singular information matrix scores +inf.  The search is a greedy
construction from a seeded random start followed by best-improvement pairwise
swaps, restarted several times, which is exact on small instances (checked
against exhaustive enumeration in the tests).

Information is additive over scenarios, so the search precomputes one K x K
contribution per candidate and scores subsets by summing contributions.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .core import ATTRIBUTES, ExitAttributes, ModelSpec, Scenario, as_params, softmax
from .estimation import NotIdentifiedError

#: Relative eigenvalue threshold below which an information matrix is
#: treated as singular.
_RANK_RTOL = 1e-10


@dataclass(frozen=True)
class FactorLevels:
    """Admissible attribute levels per exit alternative.

    ``levels`` maps exit label -> attribute name -> tuple of values; the
    label order fixes the alternative order of every generated scenario and
    attributes always iterate in registry order.
    """

    levels: Mapping[str, Mapping[str, tuple]]

    def __post_init__(self):
        normalized = {}
        for label, per_attr in self.levels.items():
            attrs = {}
            for attr in per_attr:
                if attr not in ATTRIBUTES:
                    raise ValueError(
                        f"unknown attribute {attr!r} for exit {label!r}")
                values = tuple(per_attr[attr])
                if not values:
                    raise ValueError(
                        f"empty level list for {label!r}.{attr}")
                attrs[attr] = values
            for attr in ATTRIBUTES:
                if attr not in attrs:
                    raise ValueError(
                        f"exit {label!r} is missing levels for {attr!r}")
            normalized[label] = attrs
        if len(normalized) < 2:
            raise ValueError("need levels for at least two exits")
        object.__setattr__(self, "levels", normalized)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.levels)

    @property
    def n_scenarios(self) -> int:
        """Size of the full factorial."""
        return math.prod(len(v) for per in self.levels.values()
                         for v in per.values())


@dataclass(frozen=True)
class EfficientDesign:
    """Search output: the selected scenarios and their D-error."""

    scenarios: tuple[Scenario, ...]
    d_error: float
    priors: np.ndarray
    spec: ModelSpec


def full_factorial(levels: FactorLevels) -> list[Scenario]:
    """Enumerate every scenario in the factorial space.

    Axes are ordered by (exit label order, registry attribute order) and the
    cartesian product is emitted in lexicographic order with the last axis
    varying fastest.  Scenario ids are 1-based enumeration positions.
    """
    labels = levels.labels
    n_attr = len(ATTRIBUTES)
    axes = [levels.levels[label][attr]
            for label in labels for attr in ATTRIBUTES]
    scenarios = []
    for i, combo in enumerate(itertools.product(*axes)):
        alternatives = []
        for a, label in enumerate(labels):
            chunk = dict(zip(ATTRIBUTES, combo[n_attr * a: n_attr * (a + 1)]))
            alternatives.append((label, ExitAttributes(**chunk)))
        scenarios.append(Scenario(id=i + 1, alternatives=tuple(alternatives)))
    return scenarios


def _scenario_information(scenario: Scenario, spec: ModelSpec,
                          beta: np.ndarray, c1: int) -> np.ndarray:
    """One scenario's Fisher contribution at the priors.

    Rows are differenced against the first alternative before weighting, so
    a scenario with no attribute variation contributes an exactly zero
    matrix (information is translation-invariant within a choice set).
    """
    rows = spec.design_matrix(scenario, c1)
    p = softmax(rows @ beta)
    diff = rows - rows[0]
    dbar = p @ diff
    info = np.einsum("j,jk,jl->kl", p, diff, diff) - np.outer(dbar, dbar)
    return (info + info.T) / 2.0


def fisher_information(design: Sequence[Scenario], spec: ModelSpec,
                       priors, c1: int = 0) -> np.ndarray:
    """Fisher information of a design at prior coefficients.

    Equals the negative expected Hessian of one respondent answering each
    scenario once; symmetric positive semidefinite and additive over
    scenarios.
    """
    beta = as_params(spec, priors)
    if not design:
        raise ValueError("design is empty")
    parts = np.stack([_scenario_information(s, spec, beta, c1)
                      for s in design])
    return parts.sum(axis=0)


def _d_from_information(info: np.ndarray, k: int) -> float:
    """D-error of an information matrix: det(I)^(-1/K), +inf if singular."""
    eigval = np.linalg.eigvalsh(info)
    if eigval[-1] <= 0 or eigval[0] <= _RANK_RTOL * eigval[-1]:
        return math.inf
    return float(math.exp(-np.log(eigval).sum() / k))


def d_error(design: Sequence[Scenario], spec: ModelSpec, priors,
            c1: int = 0) -> float:
    """D-error of a design: det(I^-1)^(1/K), strictly positive.

    Returns +inf (the singular marker) when the information matrix is rank
    deficient, i.e. when the design cannot identify every coefficient.
    """
    info = fisher_information(design, spec, priors, c1)
    return _d_from_information(info, spec.n_params)


def search_design(candidates: Sequence[Scenario], size: int, spec: ModelSpec,
                  priors, c1: int = 0, seed: int = 0, iterations: int = 10,
                  with_replacement: bool = False) -> EfficientDesign:
    """Find a low-D-error design of ``size`` scenarios among the candidates.

    Each restart draws a random starting scenario, greedily adds the
    candidate that minimizes the partial design's D-error (ties broken by
    lowest candidate index), then applies best-improvement pairwise swaps
    until no swap lowers the D-error.  The returned design is the best over
    all restarts, so its D-error is <= that of every design visited during
    the search; scenarios come back sorted by candidate index with the
    D-error recomputed canonically from that ordering.  Deterministic given
    ``seed``; ``iterations`` is the restart count.

    Raises NotIdentifiedError when every design examined is singular, i.e.
    the spec is not identifiable with a design of this size.
    """
    beta = as_params(spec, priors)
    n = len(candidates)
    if size < 1:
        raise ValueError("size must be >= 1")
    if size > n:
        raise ValueError(f"size {size} exceeds candidate count {n}")
    k = spec.n_params
    parts = [_scenario_information(s, spec, beta, c1) for s in candidates]

    def finish(indices: Sequence[int]) -> EfficientDesign:
        picked = sorted(indices)
        scenarios = tuple(candidates[i] for i in picked)
        d = d_error(scenarios, spec, priors, c1)
        if math.isinf(d):
            raise NotIdentifiedError(
                f"no design of size {size} identifies all {k} coefficients "
                "of this spec")
        return EfficientDesign(scenarios=scenarios, d_error=d,
                               priors=beta, spec=spec)

    if size == n and not with_replacement:
        return finish(range(n))

    rng = np.random.default_rng(seed)
    best_d, best_idx = math.inf, None

    for _ in range(max(1, iterations)):
        design = [int(rng.integers(n))]
        info = parts[design[0]].copy()

        while len(design) < size:
            pick, pick_d = None, math.inf
            for c in range(n):
                if not with_replacement and c in design:
                    continue
                d = _d_from_information(info + parts[c], k)
                if d < pick_d or pick is None:
                    pick, pick_d = c, d
            design.append(pick)
            info += parts[pick]

        current = _d_from_information(info, k)
        improved = True
        while improved:
            improved = False
            swap, swap_d = None, current
            for pos, m in enumerate(design):
                base = info - parts[m]
                for c in range(n):
                    if not with_replacement and c in design:
                        continue
                    d = _d_from_information(base + parts[c], k)
                    if d < swap_d:
                        swap, swap_d = (pos, c), d
            if swap is not None and swap_d < current:
                pos, c = swap
                info = info - parts[design[pos]] + parts[c]
                design[pos] = c
                current = swap_d
                improved = True

        if current < best_d or best_idx is None:
            best_d, best_idx = current, list(design)

    return finish(best_idx)
