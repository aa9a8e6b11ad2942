#!/usr/bin/env python3
"""CLI checks run by ctest: check_cli.py FGLC SCHEMA_DIR FIXTURES WORKDIR CHECK"""

import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource

fglc, schema_dir, fixtures, workdir, check = sys.argv[1:6]
schema_dir = pathlib.Path(schema_dir)
workdir = pathlib.Path(workdir)
workdir.mkdir(parents=True, exist_ok=True)


def run(*args):
    return subprocess.run([fglc, *args], capture_output=True, text=True)


def validate(doc, name):
    resources = []
    for p in schema_dir.glob("*.json"):
        s = json.loads(p.read_text())
        resources.append((s["$id"], Resource.from_contents(s)))
    registry = Registry().with_resources(resources)
    schema = json.loads((schema_dir / name).read_text())
    jsonschema.Draft202012Validator(schema, registry=registry).validate(doc)


def expect(cond, msg):
    if not cond:
        print("FAILED:", msg)
        sys.exit(1)


def schema_reproduce():
    r = run("reproduce", "--format", "json")
    expect(r.returncode in (0, 1), f"exit {r.returncode}: {r.stderr}")
    doc = json.loads(r.stdout)
    validate(doc, "reproduce_report.schema.json")
    ids = [f["id"] for f in doc["fixtures"]]
    table = json.loads(pathlib.Path(fixtures).read_text())["fixtures"]
    expect(sorted(ids) == ids, "report not sorted by id")
    expect(sorted(ids) == sorted(f["id"] for f in table), "report and fixture table differ")
    expect(doc["summary"]["total"] == len(table), "summary total")
    expect((r.returncode == 0) == (doc["summary"]["passed"] == len(table)), "exit status vs summary")


def schema_kernel():
    r = run("ptypical", "kernel", "--max-weight", "21", "--mod2", "--format", "json")
    expect(r.returncode == 0, r.stderr)
    doc = json.loads(r.stdout)
    validate(doc, "kernel_report.schema.json")
    w9 = [w for w in doc["weights"] if w["weight"] == 9]
    expect(w9 and w9[0]["mod2"] == ["v1^3*v2^2"], "weight 9 relation")
    expect(doc["presentation"]["witness"]["found"], "v2^7 witness")


def schema_fixtures():
    validate(json.loads(pathlib.Path(fixtures).read_text()), "fixtures.schema.json")


def determinism():
    for args in (["reproduce"], ["reproduce", "--format", "json"], ["ptypical", "kernel", "--max-weight", "17"],
                 ["morava", "fgl", "-p", "2", "-s", "2", "-N", "20"], ["abel", "log", "--upto", "9"]):
        a, b = run(*args), run(*args)
        expect(a.stdout == b.stdout and a.returncode == b.returncode, "output differs for " + " ".join(args))
        expect(a.stdout, "no output for " + " ".join(args))


def corrupted():
    table = json.loads(pathlib.Path(fixtures).read_text())
    witt = [f for f in table["fixtures"] if f["kind"] == "witt"]
    good = workdir / "witt_only.json"
    good.write_text(json.dumps({"fixtures": witt}))
    r = run("reproduce", "--fixtures", str(good))
    expect(r.returncode == 0, "clean subset should pass:\n" + r.stdout)
    expect(f"summary: {len(witt)}/{len(witt)}" in r.stdout, "summary line")
    witt[1] = dict(witt[1], expected="x*y")
    bad = workdir / "witt_corrupted.json"
    bad.write_text(json.dumps({"fixtures": witt}))
    r = run("reproduce", "--fixtures", str(bad))
    expect(r.returncode == 1, f"corrupted table exit {r.returncode}")
    expect("FAIL morava.witt.W2" in r.stdout, r.stdout)
    expect("expected: x*y" in r.stdout and "computed: -x*y" in r.stdout, r.stdout)
    (workdir / "broken.json").write_text("{")
    r = run("reproduce", "--fixtures", str(workdir / "broken.json"))
    expect(r.returncode == 2, f"invalid json exit {r.returncode}")


def exit_codes():
    expect(run("--help").returncode == 0, "--help")
    expect(run().returncode == 2, "no subcommand")
    expect(run("bp", "log", "--prime", "2", "--upto", "2", "--bogus").returncode == 2, "unknown flag")
    expect(run("bp", "log", "--prime", "4", "--upto", "2").returncode == 2, "non-prime")
    expect(run("morava", "approx", "--kind", "wp", "-p", "2", "-s", "1").returncode == 2, "s = 1")
    expect(run("abel", "membership", "--poly", "a").returncode == 2, "asymmetric")
    expect(run("morava", "approx", "--kind", "bv", "-s", "2").returncode == 0, "bv holds")


def examples():
    r = run("bp", "log", "--prime", "2", "--upto", "4")
    expect(r.returncode == 0 and r.stdout.count("\n") == 4, r.stdout)
    expect(r.stdout.splitlines()[0] == "l_1 = 1/2*v1", r.stdout)
    r = run("morava", "fgl", "--prime", "3", "--height", "1", "--degree", "7")
    expect(r.stdout.startswith("F(x,y) = x + y - x^2*y - x*y^2"), r.stdout)
    r = run("abel", "coeffs", "--upto", "3")
    expect("a_3 = -2/3*a1*a2" in r.stdout, r.stdout)
    out = workdir / "images.json"
    r = run("ptypical", "images", "--upto", "2", "--format", "json", "--out", str(out))
    doc = json.loads(out.read_text())
    expect([v["poly"] for v in doc["values"]] == ["-a1", "4/3*a1*a2"], str(doc))
    for v in doc["values"]:
        validate(v["terms"], "poly.schema.json")


{"schema_reproduce": schema_reproduce, "schema_kernel": schema_kernel, "schema_fixtures": schema_fixtures,
 "determinism": determinism, "corrupted": corrupted, "exit_codes": exit_codes, "examples": examples}[check]()
print("ok", check)
