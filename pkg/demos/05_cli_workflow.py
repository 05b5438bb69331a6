"""End-to-end command-line session: design -> simulate -> estimate -> curves.

Writes the input files a CLI user would prepare (coefficient table, scenario
table, run configs) into demo_output/ and drives every subcommand through
the same entry point the installed ``exitchoice`` script uses.
"""

import json
from pathlib import Path

from exitchoice import io
from exitchoice import reference as ref
from exitchoice.cli import main

out = Path("demo_output")
out.mkdir(exist_ok=True)


def run(argv):
    print(f"\n$ exitchoice {' '.join(argv)}")
    code = main(argv)
    print(f"(exit status {code})")
    return code


# --- input files -----------------------------------------------------------

# Coefficient table (the output format of `estimate` works here unchanged).
params = out / "first_choice_params.csv"
lines = ["name,estimate,std_error"]
lines += [f"{name},{est!r},{se!r}"
          for name, (est, se) in ref.FIRST_CHOICE_ESTIMATES.items()]
params.write_text("\n".join(lines) + "\n")

# Scenario table of the fielded battery, wide format.
scenarios = out / "battery.csv"
io.write_scenarios_csv(scenarios, ref.EXPERIMENT_SCENARIOS)

# Run config for a design search over the full factorial space.
design_config = out / "design.json"
design_config.write_text(json.dumps({
    "version": 1,
    "model": {"terms": [{"attr": a} for a in ("np", "dist", "smoke", "fam")]},
    "levels": {
        "A": {"np": [0, 1, 5, 10], "dist": [6.0], "smoke": [1, 0],
              "fam": [1]},
        "B": {"np": [0, 1, 5, 10], "dist": [3.6, 5.6], "smoke": [1, 0],
              "fam": [0]},
        "C": {"np": [0, 1, 5, 10], "dist": [3.0, 4.6], "smoke": [1, 0],
              "fam": [0]},
    },
    "priors": {name: est for name, (est, _) in ref.POOLED_ESTIMATES.items()},
    "design": {"size": 8, "seed": 0, "iterations": 3},
}, indent=2))

# Run config for the estimation model and the sensitivity sweep.
model_config = out / "model.json"
model_config.write_text(json.dumps({
    "version": 1,
    "model": {"terms": [{"attr": a, "first_choice": True}
                        for a in ("np", "dist", "smoke", "fam")]},
}, indent=2))

sweep_config = out / "sweep.json"
sweep_config.write_text(json.dumps({
    "version": 1,
    "sweep": {"attribute": "np", "start": 0, "stop": 10, "step": 0.5,
              "swept_exit": {"dist": 3.0, "smoke": 0},
              "fixed_exit": {"np": 5, "dist": 3.0, "smoke": 0},
              "familiarity": ["A", "B", "both"]},
}, indent=2))

# --- the session -----------------------------------------------------------

run(["design", "--config", str(design_config),
     "--out", str(out / "efficient_design.csv")])

run(["simulate", "--params", str(params), "--scenarios", str(scenarios),
     "--n", "400", "--seed", "42", "--out", str(out / "choices.csv")])

run(["estimate", "--data", str(out / "choices.csv"),
     "--config", str(model_config), "--out", str(out / "fit.csv")])

run(["predict", "--params", str(out / "fit.csv"),
     "--scenarios", str(scenarios), "--out", str(out / "predicted.csv")])

run(["sensitivity", "--params", str(params), "--config", str(sweep_config),
     "--out", str(out / "curves.csv")])

print(f"\nall artifacts are in {out}/")
