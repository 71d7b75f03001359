"""Validates the CLI's --json output against schema/report.schema.json."""
import json
import pathlib
import subprocess
import sys

import jsonschema

cli, root = sys.argv[1], pathlib.Path(sys.argv[2])
schema = json.loads((root / "schema" / "report.schema.json").read_text())
data = root / "tests" / "data"
runs = [
    ["solve", "--witness", data / "c9.col"],
    ["solve", data / "k4.col"],
    ["solve", data / "co-c7.col"],
    ["solve", "--seed-irrelevant", "3", data / "c9.col"],
    ["solve", data / "petersen.col"],
    ["check-class", data / "petersen.col"],
    ["check-class", data / "c9.col"],
    ["count-colorings", data / "c9.col"],
    ["fuzz", "--budget", "30", "--kind", "c7", "--sizes", "10..14"],
]
for args in runs:
    out = subprocess.run([cli, *map(str, args), "--json"], capture_output=True, text=True).stdout
    jsonschema.validate(json.loads(out), schema)
    print("ok", *map(str, args))
