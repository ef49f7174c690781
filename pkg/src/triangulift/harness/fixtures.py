"""Embedded regression fixtures.

A fixture file holds a CLI argument vector whose file arguments are
written ``@name`` and resolved against the fixture's ``inputs``, together
with the expected exit status and the expected result document.  Verifying
a fixture reruns the command and compares the canonical text byte for
byte; it also checks that every input is in canonical form.
"""

import os
import sys
from importlib import resources

from ..errors import InvalidInput
from . import serialize as io


def fixture_names():
    root = resources.files("triangulift") / "fixtures"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_fixture(name):
    path = resources.files("triangulift") / "fixtures" / f"{name}.json"
    if not path.is_file():
        raise InvalidInput(f"no fixture named {name!r}")
    doc = io.loads(path.read_text(encoding="utf-8"))
    io._obj(doc, "$", ("name", "provenance", "argv", "inputs", "expected"))
    return doc


def fixture_text(name):
    return (resources.files("triangulift") / "fixtures" / f"{name}.json").read_text(encoding="utf-8")


def run_fixture(fx):
    """Execute a fixture's command; returns (exit status, output text or None)."""
    from ..cli import execute

    inputs = fx["inputs"]

    def resolve(arg):
        if not arg.startswith("@") or arg[1:] not in inputs:
            raise InvalidInput(f"fixture argument {arg!r} does not name an input")
        return inputs[arg[1:]]

    code, doc, diag = execute(fx["argv"], resolve)
    return code, (io.dumps(doc) if doc is not None else None), diag


def roundtrip_problems(fx):
    """Inputs that do not re-serialize to themselves."""
    out = []
    for key, doc in sorted(fx["inputs"].items()):
        if isinstance(doc, dict) and "format" in doc and "result" not in doc:
            again = io.dump_instance(io.parse_instance(doc))
            if io.dumps(again) != io.dumps(doc):
                out.append(key)
    return out


def verify(name, out_dir=None):
    """List of problems with one fixture; empty when it passes."""
    fx = load_fixture(name)
    problems = [f"input {k!r} is not canonical" for k in roundtrip_problems(fx)]
    code, text, diag = run_fixture(fx)
    exp = fx["expected"]
    if code != exp["exit"]:
        problems.append(f"exit status {code}, expected {exp['exit']} ({diag or 'no diagnostic'})")
    want = io.dumps(exp["output"]) if exp.get("output") is not None else None
    if text != want:
        problems.append("output differs from the expected document")
    if out_dir and text is not None:
        with open(os.path.join(out_dir, f"{name}.json"), "w", encoding="utf-8") as fh:
            fh.write(text)
    return problems


def main(ns):
    try:
        names = [ns.name] if ns.name else fixture_names()
        if ns.action == "list":
            for n in names:
                print(n)
            return 0
        if ns.out_dir:
            os.makedirs(ns.out_dir, exist_ok=True)
        failed = 0
        for n in names:
            problems = verify(n, ns.out_dir)
            print(f"{'ok  ' if not problems else 'FAIL'} {n}")
            for p in problems:
                print(f"     {p}", file=sys.stderr)
            failed += bool(problems)
    except InvalidInput as exc:
        print(f"triangulift: {exc}", file=sys.stderr)
        return 2
    return 1 if failed else 0
