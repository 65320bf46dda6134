"""Runs each JSON-emitting subcommand and validates its report against the schema."""
import json
import subprocess
import sys

import jsonschema

COMMANDS = [
    ["compare", "--data", "aarset", "--format", "json"],
    ["fit", "--family", "ogeg", "--format", "json"],
    ["gof", "--family", "gg", "--format", "json"],
    ["sample", "--family", "ogeg", "--params", "1,1,1,1", "--n", "5", "--seed", "1", "--format", "json"],
    ["moments", "--params", "1,1,1,1", "--r", "1..4", "--format", "json"],
    ["moments", "--params", "1,1,1,1", "--r", "2", "--method", "mc", "--samples", "2000", "--format", "json"],
]


def main():
    tool, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args in COMMANDS:
        proc = subprocess.run([tool, *args], capture_output=True, text=True)
        label = " ".join(args)
        if proc.returncode != 0:
            print(f"FAIL {label}: exit {proc.returncode}\n{proc.stderr}")
            failures += 1
            continue
        errors = sorted(validator.iter_errors(json.loads(proc.stdout)), key=lambda e: list(e.path))
        for err in errors:
            print(f"FAIL {label}: {'/'.join(map(str, err.path))}: {err.message}")
        failures += bool(errors)
        if not errors:
            print(f"ok   {label}")
    sys.exit(1 if failures else 0)


if __name__ == "__main__":
    main()
