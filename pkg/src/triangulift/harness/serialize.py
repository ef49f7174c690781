"""Canonical JSON for instances and results.

Every document is a UTF-8 JSON object with a ``"format"`` tag.  Canonical
text is ``json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False)``
plus a trailing newline; floats are rejected everywhere.  Parsing reports
syntax errors with line and column and structural errors with a field path
such as ``$.tower.levels[1].matrix.rows[3]``.
"""

import json
import re

from ..clifford import CentralData, CliffordTower, Level, Step
from ..errors import InvalidInput
from ..exact_matrix import DecMatrix, UnitriCertificate
from ..perm_action import LabeledPermGroup, PairedAction

FORMAT = "triangulift/1"


class SchemaError(InvalidInput):
    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path


# ------------------------------------------------------------------ text


def _no_duplicate_keys(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise InvalidInput(f"duplicate key {k!r}")
        out[k] = v
    return out


class _FloatFound(Exception):
    pass


def _reject_float(text):
    raise _FloatFound(text)


_NUMBER = re.compile(r'"(?:[^"\\]|\\.)*"|(-?\d+(?:\.\d+)?(?:[eE][+-]?\d+)?|NaN|-?Infinity)')


def _locate_float(text):
    for m in _NUMBER.finditer(text):
        tok = m.group(1)
        if tok and not re.fullmatch(r"-?\d+", tok):
            line = text.count("\n", 0, m.start(1)) + 1
            col = m.start(1) - (text.rfind("\n", 0, m.start(1)) + 1) + 1
            return line, col, tok
    return None


def loads(text):
    """Parse JSON text, rejecting floats and duplicate keys."""
    try:
        return json.loads(text, object_pairs_hook=_no_duplicate_keys,
                          parse_float=_reject_float, parse_constant=_reject_float)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    except _FloatFound as exc:
        where = _locate_float(text)
        if where:
            raise InvalidInput(f"line {where[0]}, column {where[1]}: non-integer number {where[2]}") from None
        raise InvalidInput(f"non-integer number {exc}") from None


def dumps(doc):
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def read_file(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InvalidInput(f"{path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise InvalidInput(f"{path}: not valid UTF-8") from None
    try:
        return loads(text)
    except InvalidInput as exc:
        raise InvalidInput(f"{path}: {exc}") from None


# ------------------------------------------------------------ primitives


def _obj(x, path, required=(), optional=()):
    if not isinstance(x, dict):
        raise SchemaError(path, "expected an object")
    for k in required:
        if k not in x:
            raise SchemaError(path, f"missing field {k!r}")
    extra = sorted(set(x) - set(required) - set(optional)) if (required or optional) else ()
    if extra:
        raise SchemaError(path, f"unknown field {extra[0]!r}")
    return x


def _int(x, path, minimum=None):
    if isinstance(x, bool) or not isinstance(x, int):
        raise SchemaError(path, "expected an integer")
    if minimum is not None and x < minimum:
        raise SchemaError(path, f"must be at least {minimum}")
    return x


def _bool(x, path):
    if not isinstance(x, bool):
        raise SchemaError(path, "expected true or false")
    return x


def _label(x, path):
    if not isinstance(x, str) or not x:
        raise SchemaError(path, "expected a non-empty string label")
    return x


def _labels(x, path, unique=True):
    if not isinstance(x, list):
        raise SchemaError(path, "expected a list of labels")
    out = [_label(v, f"{path}[{i}]") for i, v in enumerate(x)]
    if unique:
        seen = set()
        for i, v in enumerate(out):
            if v in seen:
                raise SchemaError(f"{path}[{i}]", f"duplicate label {v!r}")
            seen.add(v)
    return tuple(out)


def _member(x, universe, path, what):
    if x not in universe:
        raise SchemaError(path, f"{x!r} is not a {what}")
    return x


def _label_map(x, path):
    _obj(x, path)
    return {k: _label(v, f"{path}.{k}") for k, v in x.items()}


# ---------------------------------------------------------------- matrix


def parse_matrix(x, path="$.matrix"):
    _obj(x, path, ("rows", "cols", "entries"))
    rows = _labels(x["rows"], f"{path}.rows")
    cols = _labels(x["cols"], f"{path}.cols")
    ent = x["entries"]
    if not isinstance(ent, list) or len(ent) != len(rows):
        raise SchemaError(f"{path}.entries", f"expected {len(rows)} rows")
    for i, row in enumerate(ent):
        if not isinstance(row, list) or len(row) != len(cols):
            raise SchemaError(f"{path}.entries[{i}]", f"expected {len(cols)} entries")
        for j, v in enumerate(row):
            _int(v, f"{path}.entries[{i}][{j}]", 0)
    try:
        return DecMatrix(rows, cols, ent)
    except InvalidInput as exc:
        raise SchemaError(path, str(exc)) from None


def dump_matrix(m):
    return {"rows": list(m.rows), "cols": list(m.cols), "entries": m.to_lists()}


def _parse_perm(x, domain, path):
    _obj(x, path)
    for k, v in x.items():
        _member(k, domain, f"{path}.{k}", "label of the domain")
        _member(_label(v, f"{path}.{k}"), domain, f"{path}.{k}", "label of the domain")
    if len(set(x.values())) != len(x) or set(x.values()) != set(x):
        raise SchemaError(path, "not a permutation of its moved points")
    return dict(x)


def _sparse(perm):
    return {k: v for k, v in sorted(perm.items()) if k != v}


def parse_action(x, rows, cols, path="$.action"):
    _obj(x, path, ("rows", "cols"))
    out = []
    for key, dom in (("rows", rows), ("cols", cols)):
        gens = x[key]
        if not isinstance(gens, list):
            raise SchemaError(f"{path}.{key}", "expected a list of generators")
        out.append(tuple(_parse_perm(g, set(dom), f"{path}.{key}[{i}]") for i, g in enumerate(gens)))
    if len(out[0]) != len(out[1]):
        raise SchemaError(path, "row and column generator lists differ in length")
    return PairedAction(LabeledPermGroup(tuple(rows), out[0]), LabeledPermGroup(tuple(cols), out[1]))


def dump_action(act):
    return {"rows": [_sparse(g) for g in act.row_action.generators],
            "cols": [_sparse(g) for g in act.col_action.generators]}


def parse_certificate(x, path="$.certificate"):
    _obj(x, path, ("rows", "cols"))
    return UnitriCertificate(_labels(x["rows"], f"{path}.rows"), _labels(x["cols"], f"{path}.cols"))


def dump_certificate(c):
    if c is None:
        return None
    return {"rows": list(c.row_order), "cols": list(c.col_order)}


# ----------------------------------------------------------------- tower


def _parse_degrees(x, labels, path):
    _obj(x, path)
    for k, v in x.items():
        _member(k, labels, f"{path}.{k}", "label of this level")
        _int(v, f"{path}.{k}", 1)
    return dict(x)


def _parse_rest(x, upper, lower, path):
    _obj(x, path)
    out = {}
    for k, v in x.items():
        _member(k, upper, f"{path}.{k}", "label of the upper level")
        vals = _labels(v, f"{path}.{k}", unique=False)
        for i, lab in enumerate(vals):
            _member(lab, lower, f"{path}.{k}[{i}]", "label of the lower level")
        out[k] = vals
    return out


def parse_tower(x, path="$.tower"):
    _obj(x, path, ("ell", "levels", "steps", "seed"), ("central", "global_ext"))
    ell = _int(x["ell"], f"{path}.ell", 2)
    if not isinstance(x["levels"], list) or not x["levels"]:
        raise SchemaError(f"{path}.levels", "expected a non-empty list")
    levels, by_name = [], {}
    for i, lx in enumerate(x["levels"]):
        lp = f"{path}.levels[{i}]"
        _obj(lx, lp, ("name", "matrix"), ("irr_degrees", "ibr_degrees"))
        name = _label(lx["name"], f"{lp}.name")
        if name in by_name:
            raise SchemaError(f"{lp}.name", f"duplicate level name {name!r}")
        dec = parse_matrix(lx["matrix"], f"{lp}.matrix")
        irr_deg = _parse_degrees(lx["irr_degrees"], set(dec.rows), f"{lp}.irr_degrees") if "irr_degrees" in lx else None
        ibr_deg = _parse_degrees(lx["ibr_degrees"], set(dec.cols), f"{lp}.ibr_degrees") if "ibr_degrees" in lx else None
        lev = Level(name, dec, irr_deg, ibr_deg)
        levels.append(lev)
        by_name[name] = lev
    if not isinstance(x["steps"], list):
        raise SchemaError(f"{path}.steps", "expected a list")
    steps = []
    for i, sx in enumerate(x["steps"]):
        sp = f"{path}.steps[{i}]"
        _obj(sx, sp, ("sub", "sup", "index", "rest_irr", "rest_ibr", "action"), ("ext",))
        sub = by_name.get(_label(sx["sub"], f"{sp}.sub"))
        sup = by_name.get(_label(sx["sup"], f"{sp}.sup"))
        if sub is None:
            raise SchemaError(f"{sp}.sub", f"unknown level {sx['sub']!r}")
        if sup is None:
            raise SchemaError(f"{sp}.sup", f"unknown level {sx['sup']!r}")
        index = _int(sx["index"], f"{sp}.index", 2)
        rest_irr = _parse_rest(sx["rest_irr"], set(sup.irr), set(sub.irr), f"{sp}.rest_irr")
        rest_ibr = _parse_rest(sx["rest_ibr"], set(sup.ibr), set(sub.ibr), f"{sp}.rest_ibr")
        ax = _obj(sx["action"], f"{sp}.action", ("irr", "ibr"))
        gi = _parse_perm(ax["irr"], set(sub.irr), f"{sp}.action.irr")
        gb = _parse_perm(ax["ibr"], set(sub.ibr), f"{sp}.action.ibr")
        act = PairedAction(LabeledPermGroup(sub.irr, (gi,)), LabeledPermGroup(sub.ibr, (gb,)))
        ext = {}
        if "ext" in sx:
            ext = _label_map(sx["ext"], f"{sp}.ext")
            for k, v in ext.items():
                _member(k, set(sub.irr), f"{sp}.ext.{k}", "label of the lower level")
                _member(v, set(sup.irr), f"{sp}.ext.{k}", "label of the upper level")
        steps.append(Step(sub.name, sup.name, index, rest_irr, rest_ibr, act, ext))
    sd = _obj(x["seed"], f"{path}.seed", ("irr", "ibr"))
    bottom = levels[0]
    seed_irr = _labels(sd["irr"], f"{path}.seed.irr")
    seed_ibr = _labels(sd["ibr"], f"{path}.seed.ibr")
    for i, v in enumerate(seed_irr):
        _member(v, set(bottom.irr), f"{path}.seed.irr[{i}]", "label of the bottom level")
    for i, v in enumerate(seed_ibr):
        _member(v, set(bottom.ibr), f"{path}.seed.ibr[{i}]", "Brauer label of the bottom level")
    central = None
    if "central" in x:
        cp = f"{path}.central"
        cx = _obj(x["central"], cp, ("flags",),
                  ("ell_coprime_to_index_mod_center", "ell_coprime_to_center_meet_bottom"))
        top = set(levels[-1].irr)
        flags = {}
        for k, v in _obj(cx["flags"], f"{cp}.flags").items():
            flags[_member(k, top, f"{cp}.flags.{k}", "label of the top level")] = _bool(v, f"{cp}.flags.{k}")
        central = CentralData(
            flags,
            _bool(cx.get("ell_coprime_to_index_mod_center", True), f"{cp}.ell_coprime_to_index_mod_center"),
            _bool(cx.get("ell_coprime_to_center_meet_bottom", True), f"{cp}.ell_coprime_to_center_meet_bottom"),
        )
    gext = None
    if "global_ext" in x:
        gp = f"{path}.global_ext"
        gext = {}
        for k, v in _obj(x["global_ext"], gp).items():
            _member(k, set(bottom.irr), f"{gp}.{k}", "label of the bottom level")
            chain = _labels(v, f"{gp}.{k}", unique=False)
            if len(chain) != len(levels):
                raise SchemaError(f"{gp}.{k}", f"expected one label per level ({len(levels)})")
            for i, (lab, lev) in enumerate(zip(chain, levels)):
                _member(lab, set(lev.irr), f"{gp}.{k}[{i}]", f"label of level {lev.name}")
            gext[k] = chain
    return CliffordTower(ell, tuple(levels), tuple(steps), seed_irr, seed_ibr, central, gext)


def dump_tower(t):
    levels = []
    for lev in t.levels:
        d = {"name": lev.name, "matrix": dump_matrix(lev.dec)}
        if lev.irr_degrees is not None:
            d["irr_degrees"] = dict(lev.irr_degrees)
        if lev.ibr_degrees is not None:
            d["ibr_degrees"] = dict(lev.ibr_degrees)
        levels.append(d)
    steps = []
    for s in t.steps:
        d = {
            "sub": s.sub, "sup": s.sup, "index": s.index,
            "rest_irr": {k: list(v) for k, v in s.rest_irr.items()},
            "rest_ibr": {k: list(v) for k, v in s.rest_ibr.items()},
            "action": {"irr": _sparse(s.sigma_irr), "ibr": _sparse(s.sigma_ibr)},
        }
        if s.ext:
            d["ext"] = dict(s.ext)
        steps.append(d)
    out = {"ell": t.ell, "levels": levels, "steps": steps,
           "seed": {"irr": list(t.seed_irr), "ibr": list(t.seed_ibr)}}
    if t.central is not None:
        out["central"] = {
            "flags": dict(t.central.flags),
            "ell_coprime_to_index_mod_center": t.central.ell_coprime_to_index_mod_center,
            "ell_coprime_to_center_meet_bottom": t.central.ell_coprime_to_center_meet_bottom,
        }
    if t.global_ext is not None:
        out["global_ext"] = {k: list(v) for k, v in t.global_ext.items()}
    return out


# ------------------------------------------------------------- instances

SYMBOL_OPERATIONS = ("enumerate", "act", "invariants", "xi", "basic-set", "unipotent")


def parse_context(x, path):
    from ..symbols import Context

    _obj(x, path, ("n", "eps", "q", "p"))
    vals = {k: _int(x[k], f"{path}.{k}") for k in ("n", "eps", "q", "p")}
    try:
        return Context(**vals)
    except InvalidInput as exc:
        raise SchemaError(path, str(exc)) from None


class Instance:
    """A parsed instance document; ``kind`` is matrix, tower or symbols."""

    def __init__(self, kind, matrix=None, action=None, tower=None, symbols=None):
        self.kind = kind
        self.matrix = matrix
        self.action = action
        self.tower = tower
        self.symbols = symbols


def parse_instance(doc):
    _obj(doc, "$", ("format",), ("matrix", "action", "tower", "symbols"))
    if doc["format"] != FORMAT:
        raise SchemaError("$.format", f"expected {FORMAT!r}")
    kinds = [k for k in ("matrix", "tower", "symbols") if k in doc]
    if len(kinds) != 1:
        raise SchemaError("$", "expected exactly one of 'matrix', 'tower', 'symbols'")
    kind = kinds[0]
    if "action" in doc and kind != "matrix":
        raise SchemaError("$.action", "an action accompanies a matrix")
    if kind == "matrix":
        m = parse_matrix(doc["matrix"])
        act = parse_action(doc["action"], m.rows, m.cols) if "action" in doc else None
        return Instance("matrix", matrix=m, action=act)
    if kind == "tower":
        return Instance("tower", tower=parse_tower(doc["tower"]))
    sx = _obj(doc["symbols"], "$.symbols", ("context", "operation"), ("arguments",))
    ctx = parse_context(sx["context"], "$.symbols.context")
    op = sx["operation"]
    if op not in SYMBOL_OPERATIONS:
        raise SchemaError("$.symbols.operation", f"unknown operation {op!r}")
    args = _obj(sx.get("arguments", {}), "$.symbols.arguments")
    return Instance("symbols", symbols={"context": ctx, "operation": op, "arguments": dict(args)})


def dump_instance(inst):
    doc = {"format": FORMAT}
    if inst.kind == "matrix":
        doc["matrix"] = dump_matrix(inst.matrix)
        if inst.action is not None:
            doc["action"] = dump_action(inst.action)
    elif inst.kind == "tower":
        doc["tower"] = dump_tower(inst.tower)
    else:
        s = inst.symbols
        c = s["context"]
        doc["symbols"] = {"context": {"n": c.n, "eps": c.eps, "q": c.q, "p": c.p},
                          "operation": s["operation"]}
        if s["arguments"]:
            doc["symbols"]["arguments"] = dict(s["arguments"])
    return doc


def matrix_instance(m, action=None):
    return dump_instance(Instance("matrix", matrix=m, action=action))


def tower_instance(t):
    return dump_instance(Instance("tower", tower=t))


# --------------------------------------------------------------- results


def result_document(command, request, status, result):
    return {"format": FORMAT, "command": command, "request": request,
            "status": status, "result": result}


def parse_result(doc):
    _obj(doc, "$", ("format", "command", "request", "status", "result"))
    if doc["format"] != FORMAT:
        raise SchemaError("$.format", f"expected {FORMAT!r}")
    if doc["status"] not in ("ok", "negative"):
        raise SchemaError("$.status", "expected 'ok' or 'negative'")
    return doc


def certificate_from_document(doc):
    """Accept a bare ``{"rows", "cols"}`` object or a result document whose
    payload carries a ``certificate``."""
    if isinstance(doc, dict) and "result" in doc:
        parse_result(doc)
        cert = doc["result"].get("certificate") if isinstance(doc["result"], dict) else None
        if cert is None:
            raise SchemaError("$.result.certificate", "result carries no certificate")
        return parse_certificate(cert, "$.result.certificate")
    return parse_certificate(doc, "$")
