"""Runs the CLI on a spread of commands and validates every JSON report against the shipped schema."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

CLI, SCHEMA = sys.argv[1], Path(sys.argv[2])

RUNS = [
    ["catalog-validate"],
    ["paper-suite"],
    ["base-min", "--group", "A5", "--k", "2", "--top", "Sym(2)"],
    ["base-min", "--group", "A5", "--k", "2", "--out-part", "inner", "--top", "Sym(2)"],
    ["base-construct", "--group", "A5", "--k", "61", "--top", "Sym(61)"],
    ["base-construct", "--group", "A5", "--k", "37", "--top", "C37"],
    ["base-construct", "--group", "L2(7)", "--k", "3", "--top", "Alt(3)"],
    ["base-verify", "--group", "A5", "--k", "2", "--top", "Sym(2)", "--point", "0 1"],
    ["prob-exact", "--group", "A5", "--k", "3", "--out-part", "inner", "--top", "Alt(3)"],
    ["prob-mc", "--group", "A5", "--k", "5", "--top", "C5", "--samples", "500"],
]


def run(args):
    out = subprocess.run([CLI, *args], capture_output=True, text=True)
    if out.returncode != 0:
        raise SystemExit(f"{args}: exit {out.returncode}\n{out.stderr}")
    return out.stdout


def main():
    schema = json.loads(SCHEMA.read_text())
    validator = jsonschema.Draft202012Validator(schema)
    for args in RUNS:
        report = json.loads(run(args))
        errors = sorted(validator.iter_errors(report), key=str)
        if errors:
            raise SystemExit(f"{args}: {errors[0].message} at {list(errors[0].absolute_path)}")
        print("ok", " ".join(args))

    # same seed twice, no timing: byte-identical
    mc = ["prob-mc", "--group", "A5", "--k", "3", "--top", "Sym(3)", "--samples", "2000", "--seed", "17",
          "--no-timing", "--workers", "3"]
    if run(mc) != run(mc):
        raise SystemExit("prob-mc reports differ between identical runs")
    print("ok deterministic prob-mc")

    with tempfile.TemporaryDirectory() as d:
        path = Path(d) / "r.csv"
        run(["base-min", "--group", "A5", "--k", "2", "--top", "Sym(2)", "--format", "csv", "--output", str(path)])
        lines = path.read_text().splitlines()
        assert lines[0].startswith("group,k,out_part,top"), lines
        assert lines[1].endswith(",4"), lines
    print("ok csv")

    codes = {
        2: ["base-verify", "--group", "A5", "--k", "2", "--top", "Sym(2)", "--point", "0 999"],
        3: ["base-min", "--group", "A5", "--k", "3", "--top", "Sym(3)", "--budget", "10"],
        4: ["base-construct", "--group", "A5", "--k", "5", "--top", "Sym(5)", "--method", "distinguishing"],
    }
    for want, args in codes.items():
        got = subprocess.run([CLI, *args], capture_output=True, text=True).returncode
        if got != want:
            raise SystemExit(f"{args}: exit {got}, expected {want}")
    bad = subprocess.run([CLI, "base-min", "--group", "A5", "--k", "5", "--top", "(1 2)"], capture_output=True)
    if bad.returncode != 2:
        raise SystemExit(f"imprimitive top: exit {bad.returncode}, expected 2")
    print("ok exit codes")


if __name__ == "__main__":
    main()
