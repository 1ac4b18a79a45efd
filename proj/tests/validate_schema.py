"""Runs the CLI on a fixed set of commands and validates every JSON report."""

import json
import subprocess
import sys

import jsonschema

COMMANDS = [
    ["erdos", "--x", "2", "--y", "8", "--n-max", "100", "--p-max", "1000"],
    ["erdos", "--x", "5", "--y", "5", "--p-max", "500"],
    ["erdos", "--x", "3/2", "--y", "7", "--p-max", "500"],
    ["order-search", "--system", "mul", "--elements", "2", "--l", "2", "--ks", "0", "--p-max", "50"],
    ["order-search", "--system", "ec", "--curve", "0,0,1,-1,0", "--points", "(0,0)", "--l", "5", "--ks", "1",
     "--p-max", "2000", "--details"],
    ["implication", "--system", "mul", "--Ps", "2", "--Qs", "4", "--p", "7"],
    ["implication", "--system", "mul", "--Ps", "2,3", "--Qs", "3,2", "--p", "13"],
    ["implication", "--system", "mul", "--Ps", "2", "--P0", "1", "--Qs", "2", "--Q0", "3", "--p", "7"],
    ["implication", "--system", "ec", "--curve", "0,1,1,-2,0", "--Ps", "(0,0)", "(-1,1)", "--Qs", "(-1,1)", "(0,0)",
     "--p", "101", "--m-bound", "200"],
    ["detect-relation", "--system", "ec", "--curve", "0,0,1,-1,0", "--P", "(0,0)", "--Q", "(1,0)", "--p-max", "1000"],
    ["detect-relation", "--system", "mul", "--P", "2", "--Q", "3", "--p-max", "100"],
    ["pair-relation", "--system", "ec", "--curve", "0,1,1,-2,0", "--P", "(-1,1)", "--Q", "(0,0)"],
    ["pair-relation", "--system", "mul", "--P", "4", "--Q", "1/8"],
    ["count-points", "--curve", "0,0,1,-1,0", "--p", "1000003"],
]


def main() -> int:
    binary, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path, encoding="utf-8") as fh:
        schema = json.load(fh)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args in COMMANDS:
        proc = subprocess.run([binary, *args, "--format", "json"], capture_output=True, text=True, check=False)
        label = " ".join(args)
        if proc.returncode not in (0, 1, 3):
            print(f"FAIL {label}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        errors = sorted(validator.iter_errors(json.loads(proc.stdout)), key=lambda e: list(e.path))
        if errors:
            failures += 1
            print(f"FAIL {label}: {errors[0].message} at {list(errors[0].path)}")
        else:
            print(f"ok   {label}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
