"""Runs every JSON-emitting ssde command and validates the output against tests/cli/schemas."""

import json
import pathlib
import subprocess
import sys

import jsonschema

SMALL = ["--grid-step", "0.01", "--cutoff", "0.05", "--horizon", "0.5"]

RUNS = {
    "classify": ["classify"],
    "simulate": ["simulate", *SMALL],
    "xi": ["xi", *SMALL],
    "extinction": ["extinction", "--n", "100", "--thetas", "0,1", *SMALL],
    "laplace-check": ["laplace-check", "--n", "500", *SMALL],
    "selfsim": ["selfsim", "--n", "1000", *SMALL],
    "drift-check": ["drift-check", "--n", "200", *SMALL],
    "lamperti-check": ["lamperti-check", "--n", "1000", *SMALL],
}


def main() -> int:
    binary = sys.argv[1]
    schemas = pathlib.Path(__file__).parent / "schemas"
    failures = 0
    for name, args in RUNS.items():
        schema = json.loads((schemas / f"{name}.schema.json").read_text())
        proc = subprocess.run([binary, *args, "--format", "json"], capture_output=True, text=True, check=False)
        if proc.returncode != 0:
            print(f"{name}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        if any(line != line.rstrip() for line in proc.stdout.splitlines()):
            print(f"{name}: trailing whitespace")
            failures += 1
        try:
            jsonschema.validate(json.loads(proc.stdout), schema)
            print(f"{name}: ok")
        except jsonschema.ValidationError as e:
            print(f"{name}: {e.message}")
            failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
