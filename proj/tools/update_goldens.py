#!/usr/bin/env python3
"""Regenerate data/golden reports from data/golden/manifest.json.

Usage: tools/update_goldens.py path/to/toeplitz-calc
"""
import json
import pathlib
import subprocess
import sys

root = pathlib.Path(__file__).resolve().parent.parent
golden = root / "data" / "golden"
problems = root / "data" / "problems"

if len(sys.argv) != 2:
    sys.exit(__doc__)
cli = sys.argv[1]

for entry in json.loads((golden / "manifest.json").read_text()):
    out = golden / entry["report"]
    cmd = [cli, entry["command"], str(problems / entry["problem"]), *entry["args"], "--json", str(out)]
    code = subprocess.run(cmd, stdout=subprocess.DEVNULL).returncode
    print(f"{entry['report']}: exit {code}")
