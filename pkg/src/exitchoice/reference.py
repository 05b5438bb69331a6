"""Reference data from the three-exit VR evacuation experiment.

Bundled so that demos, tests and CLI runs have a realistic, documented
starting point: the factorial attribute levels of the scenario space (2048
scenarios in total), the eight-scenario battery actually fielded, and the
two fitted coefficient sets (a pooled model, and one with first-choice
interactions).  Exit A is the familiar exit; exits B and C are not.

The coefficient dictionaries map coefficient names to (estimate, std_error)
pairs and can be fed directly to the sensitivity and prediction helpers, or
used as priors for design search.
"""

from __future__ import annotations

from .core import ExitAttributes, ModelSpec, Scenario
from .design import FactorLevels

EXIT_LABELS = ("A", "B", "C")

#: Attribute levels per exit: occupancy 0/1/5/10 at every exit, fixed
#: distances per exit position, smoke on or off everywhere, familiarity
#: fixed to exit A.  Full factorial: 4^3 * 2^2 * 2^3 * 1^3 = 2048 scenarios.
EXPERIMENT_LEVELS = FactorLevels(levels={
    "A": {"np": (0, 1, 5, 10), "dist": (6.0,), "smoke": (1, 0), "fam": (1,)},
    "B": {"np": (0, 1, 5, 10), "dist": (3.6, 5.6), "smoke": (1, 0), "fam": (0,)},
    "C": {"np": (0, 1, 5, 10), "dist": (3.0, 4.6), "smoke": (1, 0), "fam": (0,)},
})


def _scenario(sid, a, b, c):
    return Scenario(id=sid, alternatives=(
        ("A", ExitAttributes(np=a[0], dist=a[1], smoke=a[2], fam=1)),
        ("B", ExitAttributes(np=b[0], dist=b[1], smoke=b[2], fam=0)),
        ("C", ExitAttributes(np=c[0], dist=c[1], smoke=c[2], fam=0)),
    ))


#: The eight scenarios fielded in the experiment, selected by a D-efficient
#: search over the factorial space.  Tuples are (np, dist, smoke).
EXPERIMENT_SCENARIOS = (
    _scenario(1, (0, 6.0, 0), (10, 3.6, 1), (5, 4.6, 1)),
    _scenario(2, (5, 6.0, 1), (0, 5.6, 1), (10, 3.0, 0)),
    _scenario(3, (1, 6.0, 1), (1, 5.6, 0), (10, 3.0, 0)),
    _scenario(4, (10, 6.0, 0), (0, 3.6, 0), (1, 4.6, 1)),
    _scenario(5, (10, 6.0, 0), (1, 3.6, 1), (0, 4.6, 0)),
    _scenario(6, (5, 6.0, 1), (10, 5.6, 0), (0, 3.0, 1)),
    _scenario(7, (1, 6.0, 1), (5, 5.6, 0), (1, 3.0, 0)),
    _scenario(8, (0, 6.0, 0), (5, 3.6, 1), (5, 4.6, 1)),
)

#: Pooled model: one generic coefficient per attribute.
POOLED_SPEC = ModelSpec.from_attributes("np", "dist", "smoke", "fam")

#: First-choice model: every attribute also interacts with the dummy that
#: marks a participant's first (unannounced) evacuation.
FIRST_CHOICE_SPEC = ModelSpec.from_attributes(
    "np", "dist", "smoke", "fam", first_choice_interactions=True)

#: Fitted pooled-model coefficients, name -> (estimate, std_error).
POOLED_ESTIMATES = {
    "np": (0.076, 0.015),
    "dist": (-0.378, 0.079),
    "smoke": (-1.765, 0.161),
    "fam": (0.795, 0.206),
}

#: Fitted first-choice-model coefficients, name -> (estimate, std_error).
FIRST_CHOICE_ESTIMATES = {
    "np": (0.041, 0.018),
    "dist": (-0.439, 0.094),
    "smoke": (-2.305, 0.214),
    "fam": (0.735, 0.248),
    "np:first": (0.192, 0.046),
    "dist:first": (0.218, 0.200),
    "smoke:first": (1.781, 0.364),
    "fam:first": (0.413, 0.522),
}


def estimates_vector(spec: ModelSpec, estimates: dict) -> list[float]:
    """Coefficient estimates ordered to match ``spec``'s parameter vector."""
    return [estimates[name][0] for name in spec.coef_names()]
