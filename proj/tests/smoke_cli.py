#!/usr/bin/env python3
"""CLI smoke test: exit codes, output artifacts, byte-identical reruns.

Run by ctest with MIXEDORDER_BIN pointing at the built executable.
"""

import json
import os
import subprocess
import sys
import tempfile

BIN = os.environ["MIXEDORDER_BIN"]


def run(*args, expect=0):
    proc = subprocess.run([BIN, *args], capture_output=True, text=True)
    assert proc.returncode == expect, (
        f"{args}: exit {proc.returncode} (wanted {expect})\n"
        f"stdout: {proc.stdout}\nstderr: {proc.stderr}"
    )
    return proc


with tempfile.TemporaryDirectory() as tmp:
    # list-experiments names every registered experiment
    out = run("list-experiments").stdout
    for name in ("table1_demo", "thermal_scan", "rbim_scan", "recovery_suite"):
        assert name in out, f"{name} missing from list-experiments"

    cfg = os.path.join(tmp, "cfg.json")
    with open(cfg, "w") as f:
        json.dump({"experiment": "table1_demo", "params": {"n": 5}, "seed": 3}, f)

    # validate prints an estimate and exits 0
    out = run("validate", cfg).stdout
    assert "OK" in out, out

    # run twice; results.csv must be byte-identical
    d1, d2 = os.path.join(tmp, "r1"), os.path.join(tmp, "r2")
    run("run", cfg, "--out", d1)
    run("run", cfg, "--out", d2)
    for fn in ("results.csv", "results.json", "manifest.json"):
        assert os.path.exists(os.path.join(d1, fn)), fn
    with open(os.path.join(d1, "results.csv"), "rb") as f:
        csv1 = f.read()
    with open(os.path.join(d2, "results.csv"), "rb") as f:
        csv2 = f.read()
    assert csv1 == csv2, "rerun with identical config+seed differs"
    assert b"\r\n" in csv1, "CSV must use CRLF line endings"
    assert b"sw_ssb" in csv1 and b"fully_broken" in csv1, csv1

    manifest = json.load(open(os.path.join(d1, "manifest.json")))
    assert "xoshiro256++" in manifest["rng"]["algorithm"], manifest

    # config errors exit 2
    bad = os.path.join(tmp, "bad.json")
    with open(bad, "w") as f:
        json.dump({"experiment": "table1_demo", "params": {"nope": 1}}, f)
    run("validate", bad, expect=2)
    with open(bad, "w") as f:
        f.write("{not json")
    run("run", bad, expect=2)
    with open(bad, "w") as f:
        json.dump({"experiment": "no_such_experiment"}, f)
    run("run", bad, expect=2)

print("cli smoke: OK")
