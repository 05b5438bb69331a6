"""Utilities and choice probabilities for a three-exit evacuation scenario.

Walks through the core random-utility machinery: build exit attributes,
evaluate each exit's systematic utility under the pooled coefficient set,
and turn utilities into multinomial-logit choice shares.
"""

from exitchoice import (ExitAttributes, Scenario, choice_probabilities,
                        systematic_utility, utilities)
from exitchoice import reference as ref

beta = ref.estimates_vector(ref.POOLED_SPEC, ref.POOLED_ESTIMATES)
print("pooled coefficients:")
for name, value in zip(ref.POOLED_SPEC.coef_names(), beta):
    print(f"  {name:<6} {value:+.3f}")

# A scenario from the fielded battery: exit A is familiar, far and clear;
# B is crowded and smoky; C is moderately crowded and smoky.
scenario = ref.EXPERIMENT_SCENARIOS[0]
print(f"\nscenario {scenario.id}:")
for label, attrs in scenario.alternatives:
    print(f"  exit {label}: np={attrs.np:<3g} dist={attrs.dist}m "
          f"smoke={attrs.smoke} fam={attrs.fam}")

v = utilities(ref.POOLED_SPEC, beta, scenario)
p = choice_probabilities(ref.POOLED_SPEC, beta, scenario)
print("\nutilities and choice shares:")
for (label, _), vi, pi in zip(scenario.alternatives, v, p):
    print(f"  exit {label}: V = {vi:+.3f}   P = {pi:.3f}")
print(f"  shares sum to {p.sum():.12f}")

# What if the smoke at exit B cleared?  Rebuild B without smoke and compare.
cleared = Scenario(id="1-clear", alternatives=tuple(
    (label, attrs if label != "B" else
     ExitAttributes(np=attrs.np, dist=attrs.dist, smoke=0, fam=attrs.fam))
    for label, attrs in scenario.alternatives))
p_cleared = choice_probabilities(ref.POOLED_SPEC, beta, cleared)
print("\nwith the smoke at exit B cleared:")
for (label, _), before, after in zip(scenario.alternatives, p, p_cleared):
    print(f"  exit {label}: {before:.3f} -> {after:.3f}")

# Single-exit utility evaluation is available directly as well.
fresh = ExitAttributes(np=2, dist=4.0, smoke=0, fam=1)
print(f"\nV(np=2, dist=4m, clear, familiar) = "
      f"{systematic_utility(ref.POOLED_SPEC, beta, fresh):+.3f}")
