"""Command-line interface.

Exit status: 0 on success, 1 when the answer is negative (no certificate,
a failed lift, a map that is not bijective), 2 on invalid input.  Results
are canonical JSON on stdout or in the ``-o`` file; diagnostics go to
stderr.
"""

import argparse
import sys

from . import symbols as sym
from .clifford import direct_ell_lift, lift_central, lift_ellprime, lift_tower, validate
from .errors import EnumerationLimit, InconsistentInstance, InvalidInput, PreconditionFailed
from .exact_matrix import find_unitriangular, verify_certificate
from .harness import serialize as io
from .perm_action import interval_reorder, orbits

OK, NEGATIVE, INVALID = 0, 1, 2


class Negative(Exception):
    """A well-posed request whose answer is negative; carries the payload."""

    def __init__(self, payload):
        super().__init__(payload)
        self.payload = payload


def build_parser():
    p = argparse.ArgumentParser(prog="triangulift", description=__doc__.splitlines()[0])
    p.add_argument("-o", "--output", help="write the result here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="verify a certificate against a matrix or the top of a tower")
    c.add_argument("matrix")
    c.add_argument("cert")

    c = sub.add_parser("find-order", help="search for a unitriangular certificate")
    c.add_argument("matrix")

    c = sub.add_parser("interval-order", help="reorder a certificate so that orbits are intervals")
    c.add_argument("matrix")
    c.add_argument("action")
    c.add_argument("cert")

    c = sub.add_parser("lift", help="lift a basic set through a tower")
    c.add_argument("tower")
    c.add_argument("--mode", choices=("auto", "ellprime", "central", "direct-ell"), default="auto")

    c = sub.add_parser("validate", help="list structural problems of a tower")
    c.add_argument("tower")

    c = sub.add_parser("symbols", help="admissible symbols and unipotent labels")
    c.add_argument("operation", choices=io.SYMBOL_OPERATIONS)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--eps", type=int, default=1)
    c.add_argument("--q", type=int)
    c.add_argument("--p", type=int)
    c.add_argument("--ell", type=int)
    c.add_argument("--e", type=int)
    c.add_argument("--action", choices=("frobenius", "dual", "linear"), default="frobenius")
    c.add_argument("--k", type=int, default=1, help="Frobenius exponent")
    c.add_argument("--z", default=None, help="linear shift as a/m")

    c = sub.add_parser("fixtures", help="embedded regression fixtures")
    c.add_argument("action", choices=("verify", "list"))
    c.add_argument("name", nargs="?")
    c.add_argument("--out-dir", help="write each fixture's output to this directory")
    return p


# ---------------------------------------------------------------- commands


def _load_instance(doc):
    return io.parse_instance(doc)


def _matrix_of(inst):
    if inst.kind == "matrix":
        return inst.matrix
    if inst.kind == "tower":
        return inst.tower.top.dec
    raise InvalidInput("expected a matrix or tower instance")


def _cmd_check(ns, docs):
    m = _matrix_of(_load_instance(docs["matrix"]))
    cert = io.certificate_from_document(docs["cert"])
    reason = verify_certificate(m, cert)
    payload = {"valid": reason is None, "reason": reason}
    if reason is not None:
        raise Negative(payload)
    return payload


def _cmd_find_order(ns, docs):
    m = _matrix_of(_load_instance(docs["matrix"]))
    cert = find_unitriangular(m)
    if cert is None:
        raise Negative({"certificate": None})
    return {"certificate": io.dump_certificate(cert)}


def _cmd_interval_order(ns, docs):
    inst = _load_instance(docs["matrix"])
    m = _matrix_of(inst)
    adoc = docs["action"]
    if isinstance(adoc, dict) and "format" in adoc:
        ainst = _load_instance(adoc)
        if ainst.action is None:
            raise InvalidInput("action file carries no action")
        act = io.parse_action(io.dump_action(ainst.action), m.rows, m.cols)
    else:
        act = io.parse_action(adoc, m.rows, m.cols, "$")
    cert = io.certificate_from_document(docs["cert"])
    try:
        out = interval_reorder(cert, m, act)
    except PreconditionFailed as exc:
        raise Negative({"certificate": None, "condition": exc.condition, "detail": exc.detail}) from None
    omap = orbits(act.row_action.restrict(out.row_order))
    return {"certificate": io.dump_certificate(out), "orbits": [list(o) for o in omap]}


def _lift_payload(mode, res):
    payload = {"mode": mode, "irr": list(res.irr), "ibr": list(res.ibr),
               "certificate": io.dump_certificate(res.cert)}
    if res.trace:
        payload["trace"] = [{"level": s.level, "irr": list(s.irr), "ibr": list(s.ibr),
                             "certificate": io.dump_certificate(s.cert)} for s in res.trace]
    return payload


def _cmd_lift(ns, docs):
    inst = _load_instance(docs["tower"])
    if inst.kind != "tower":
        raise InvalidInput("lift needs a tower instance")
    t = inst.tower
    problems = validate(t)
    if problems:
        raise InvalidInput("invalid tower:\n  " + "\n  ".join(str(v) for v in problems))
    fn = {"auto": lift_tower, "ellprime": lift_ellprime, "central": lift_central,
          "direct-ell": direct_ell_lift}[ns.mode]
    try:
        res = fn(t)
    except (PreconditionFailed, InconsistentInstance) as exc:
        cond = getattr(exc, "condition", "inconsistent")
        detail = getattr(exc, "detail", str(exc))
        raise Negative({"mode": ns.mode, "certificate": None, "condition": cond, "detail": detail}) from None
    return _lift_payload(ns.mode, res)


def _cmd_validate(ns, docs):
    inst = _load_instance(docs["tower"])
    if inst.kind != "tower":
        raise InvalidInput("validate needs a tower instance")
    problems = [{"code": v.code, "where": v.where, "detail": v.detail} for v in validate(inst.tower)]
    if problems:
        raise Negative({"violations": problems})
    return {"violations": []}


def _dump_symbol(s):
    return [{"root": sym.format_root(o.rep), "degree": o.deg, "partition": list(mu)} for o, mu in s.pairs]


def _context(ns):
    if ns.q is None or ns.p is None:
        raise InvalidInput(f"symbols {ns.operation} needs --q and --p")
    return sym.Context(ns.n, ns.eps, ns.q, ns.p)


def _cmd_symbols(ns, docs):
    op = ns.operation
    if op == "unipotent":
        u = sym.unipotent_labels(ns.n)

        def dump(lab):
            return {"m": [[j, c] for j, c in lab.m], "k": lab.k, "multiplicity": lab.multiplicity}

        return {"labels": [dump(x) for x in u.labels], "u1": [dump(x) for x in u.u1],
                "u2": [dump(x) for x in u.u2], "count": u.count(u.labels),
                "count_u1": u.count(u.u1), "count_u2": u.count(u.u2)}
    ctx = _context(ns)
    if op == "enumerate":
        ss = sym.enumerate_symbols(ctx)
        return {"count": len(ss), "symbols": [_dump_symbol(s) for s in ss]}
    if op == "act":
        ss = sym.enumerate_symbols(ctx)
        if ns.action == "frobenius":
            fn = lambda s: sym.act_frobenius(s, ns.k)  # noqa: E731
        elif ns.action == "dual":
            fn = sym.act_dual
        else:
            if ns.z is None:
                raise InvalidInput("--action linear needs --z")
            z = sym.parse_root(ns.z)
            fn = lambda s: sym.act_linear(s, z)  # noqa: E731
        index = {s.key: i for i, s in enumerate(ss)}
        images = [index[fn(s).key] for s in ss]
        return {"count": len(ss), "symbols": [_dump_symbol(s) for s in ss], "images": images}
    if op == "invariants":
        if ns.e is None:
            raise InvalidInput("symbols invariants needs --e")
        inv = [s for s in sym.enumerate_symbols(ctx) if sym.is_invariant(s, ns.e)]
        return {"q0": sym.base_field(ctx, ns.e), "count": len(inv), "symbols": [_dump_symbol(s) for s in inv]}
    if op == "xi":
        if ns.e is None:
            raise InvalidInput("symbols xi needs --e")
        rep = sym.xi_report(ctx, ns.e)
        payload = {"q0": rep["q0"], "injective": rep["injective"], "surjective": rep["surjective"],
                   "pairs": [{"symbol": _dump_symbol(s), "image": _dump_symbol(t)}
                             for s, t in zip(rep["invariant"], rep["images"])],
                   "target_count": len(rep["target"])}
        if not (rep["injective"] and rep["surjective"]):
            raise Negative(payload)
        return payload
    if op == "basic-set":
        if ns.ell is None:
            raise InvalidInput("symbols basic-set needs --ell")
        bs = sym.ell_basic_set(ctx, ns.ell)
        return {"count": len(bs), "symbols": [_dump_symbol(s) for s in bs]}
    raise InvalidInput(f"unknown operation {op!r}")


COMMANDS = {
    "check": (_cmd_check, ("matrix", "cert")),
    "find-order": (_cmd_find_order, ("matrix",)),
    "interval-order": (_cmd_interval_order, ("matrix", "action", "cert")),
    "lift": (_cmd_lift, ("tower",)),
    "validate": (_cmd_validate, ("tower",)),
    "symbols": (_cmd_symbols, ()),
}


def _options(ns, files):
    skip = set(files) | {"command", "output", "out_dir"}
    return {k: v for k, v in sorted(vars(ns).items()) if k not in skip and v is not None}


def execute(argv, resolve):
    """Run one command.  ``resolve(arg)`` maps a file argument to its parsed
    JSON document.  Returns ``(exit status, result document or None,
    diagnostic)``."""
    ns = build_parser().parse_args(argv)
    fn, files = COMMANDS[ns.command]
    try:
        docs = {f: resolve(getattr(ns, f)) for f in files}
        request = {"options": _options(ns, files), "inputs": docs}
        try:
            payload, status, code = fn(ns, docs), "ok", OK
        except Negative as neg:
            payload, status, code = neg.payload, "negative", NEGATIVE
    except (InvalidInput, EnumerationLimit) as exc:
        return INVALID, None, str(exc)
    return code, io.result_document(ns.command, request, status, payload), None


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        ns = build_parser().parse_args(argv)
    except SystemExit as exc:
        return INVALID if exc.code else OK
    if ns.command == "fixtures":
        from .harness.fixtures import main as fixtures_main

        return fixtures_main(ns)
    code, doc, diag = execute(argv, io.read_file)
    if diag:
        print(f"triangulift: {diag}", file=sys.stderr)
    if doc is not None:
        text = io.dumps(doc)
        if ns.output:
            with open(ns.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        if code == NEGATIVE:
            print(f"triangulift: {ns.command}: negative result", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
