"""Write the embedded fixtures.

Character data below was worked out by hand from ordinary character
tables and l-regular classes of the groups involved; tests/small_groups.py
recomputes every restriction, action, degree and decomposition number from
permutation groups and checks them against the fixture files.  The headline
answers are asserted here before any expected output is written, so a
regression in the library cannot silently become the new expectation.

Run:  python3 tools/make_fixtures.py
"""

import os
import sys

from triangulift.cli import execute
from triangulift.harness import serialize as io

OUT = os.path.join(os.path.dirname(__file__), "..", "src", "triangulift", "fixtures")
PROVENANCE = ("Ordinary characters from class functions of permutation groups of order at most 24; "
              "Brauer characters from l-regular classes; decomposition numbers by restriction "
              "to l-regular classes. Recomputed by tests/small_groups.py.")


def matrix(rows, cols, d):
    return {"rows": rows, "cols": cols, "entries": [[d.get(r, {}).get(c, 0) for c in cols] for r in rows]}


def level(name, rows, cols, d, irr_deg, ibr_deg):
    return {"name": name, "matrix": matrix(rows, cols, d), "irr_degrees": irr_deg, "ibr_degrees": ibr_deg}


# ----------------------------------------------------------------- A4 < S4

A4_IRR = ["1", "chi3", "w", "wb"]
S4_IRR = ["1", "chi2", "chi3", "chi3p", "sgn"]
A4_DEG = {"1": 1, "w": 1, "wb": 1, "chi3": 3}
S4_DEG = {"1": 1, "sgn": 1, "chi2": 2, "chi3": 3, "chi3p": 3}
S4_REST = {"1": ["1"], "sgn": ["1"], "chi2": ["w", "wb"], "chi3": ["chi3"], "chi3p": ["chi3"]}


def a4_s4(ell):
    if ell == 3:
        a4_ibr, s4_ibr = ["1^0", "phi3"], ["1^0", "phi3", "phi3p", "sgn^0"]
        a4_d = {"1": {"1^0": 1}, "w": {"1^0": 1}, "wb": {"1^0": 1}, "chi3": {"phi3": 1}}
        s4_d = {"1": {"1^0": 1}, "sgn": {"sgn^0": 1}, "chi2": {"1^0": 1, "sgn^0": 1},
                "chi3": {"phi3": 1}, "chi3p": {"phi3p": 1}}
        a4_bd, s4_bd = {"1^0": 1, "phi3": 3}, {"1^0": 1, "sgn^0": 1, "phi3": 3, "phi3p": 3}
        rest_ibr = {"1^0": ["1^0"], "sgn^0": ["1^0"], "phi3": ["phi3"], "phi3p": ["phi3"]}
        ibr_act = {}
        seed = {"irr": ["1", "chi3"], "ibr": ["1^0", "phi3"]}
        ext = None
    elif ell == 2:
        a4_ibr, s4_ibr = ["1^0", "w^0", "wb^0"], ["1^0", "phi2"]
        a4_d = {"1": {"1^0": 1}, "w": {"w^0": 1}, "wb": {"wb^0": 1},
                "chi3": {"1^0": 1, "w^0": 1, "wb^0": 1}}
        s4_d = {"1": {"1^0": 1}, "sgn": {"1^0": 1}, "chi2": {"phi2": 1},
                "chi3": {"1^0": 1, "phi2": 1}, "chi3p": {"1^0": 1, "phi2": 1}}
        a4_bd, s4_bd = {"1^0": 1, "w^0": 1, "wb^0": 1}, {"1^0": 1, "phi2": 2}
        rest_ibr = {"1^0": ["1^0"], "phi2": ["w^0", "wb^0"]}
        ibr_act = {"w^0": "wb^0", "wb^0": "w^0"}
        seed = {"irr": ["1", "w", "wb"], "ibr": ["1^0", "w^0", "wb^0"]}
        ext = {"1": "1", "chi3": "chi3"}
    else:  # ell = 5 does not divide |S4|: decomposition matrices are identities
        a4_ibr = [x + "^0" for x in A4_IRR]
        s4_ibr = [x + "^0" for x in S4_IRR]
        a4_d = {x: {x + "^0": 1} for x in A4_IRR}
        s4_d = {x: {x + "^0": 1} for x in S4_IRR}
        a4_bd = {x + "^0": d for x, d in A4_DEG.items()}
        s4_bd = {x + "^0": d for x, d in S4_DEG.items()}
        rest_ibr = {k + "^0": [v + "^0" for v in vs] for k, vs in S4_REST.items()}
        ibr_act = {"w^0": "wb^0", "wb^0": "w^0"}
        seed = {"irr": A4_IRR, "ibr": a4_ibr}
        ext = None
    step = {"sub": "A4", "sup": "S4", "index": 2, "rest_irr": S4_REST, "rest_ibr": rest_ibr,
            "action": {"irr": {"w": "wb", "wb": "w"}, "ibr": ibr_act}}
    if ext:
        step["ext"] = ext
    tower = {"ell": ell,
             "levels": [level("A4", A4_IRR, a4_ibr, a4_d, A4_DEG, a4_bd),
                        level("S4", S4_IRR, s4_ibr, s4_d, S4_DEG, s4_bd)],
             "steps": [step], "seed": seed}
    if ell == 2:
        tower["global_ext"] = {"1": ["1", "1"], "w": ["w", "chi2"], "wb": ["wb", "chi2"]}
    return {"format": io.FORMAT, "tower": tower}


# ----------------------------------------------------------------- C3 < S3


def c3_s3():
    tower = {
        "ell": 3,
        "levels": [
            level("C3", ["1", "w", "wb"], ["1^0"], {"1": {"1^0": 1}, "w": {"1^0": 1}, "wb": {"1^0": 1}},
                  {"1": 1, "w": 1, "wb": 1}, {"1^0": 1}),
            level("S3", ["1", "chi2", "sgn"], ["1^0", "sgn^0"],
                  {"1": {"1^0": 1}, "sgn": {"sgn^0": 1}, "chi2": {"1^0": 1, "sgn^0": 1}},
                  {"1": 1, "sgn": 1, "chi2": 2}, {"1^0": 1, "sgn^0": 1}),
        ],
        "steps": [{"sub": "C3", "sup": "S3", "index": 2,
                   "rest_irr": {"1": ["1"], "sgn": ["1"], "chi2": ["w", "wb"]},
                   "rest_ibr": {"1^0": ["1^0"], "sgn^0": ["1^0"]},
                   "action": {"irr": {"w": "wb", "wb": "w"}, "ibr": {}}}],
        "seed": {"irr": ["1"], "ibr": ["1^0"]},
    }
    return {"format": io.FORMAT, "tower": tower}


# ------------------------------------------------------------ Z < V < D8
# D8 = <r, s>, Z = <r^2>, V = <r^2, s>.  Linear characters of V are named
# by their values on (r^2, s): 1 = (+,+), a = (+,-), z = (-,+), za = (-,-).
# D8 linear characters by values on (r, s): 1, e1 = (+,-), e2 = (-,+), e3 = (-,-).


def d8():
    tower = {
        "ell": 2,
        "levels": [
            level("Z", ["1", "z"], ["1^0"], {"1": {"1^0": 1}, "z": {"1^0": 1}}, {"1": 1, "z": 1}, {"1^0": 1}),
            level("V", ["1", "a", "z", "za"], ["1^0"], {x: {"1^0": 1} for x in ("1", "a", "z", "za")},
                  {"1": 1, "a": 1, "z": 1, "za": 1}, {"1^0": 1}),
            level("D8", ["1", "chi", "e1", "e2", "e3"], ["1^0"],
                  {"1": {"1^0": 1}, "e1": {"1^0": 1}, "e2": {"1^0": 1}, "e3": {"1^0": 1}, "chi": {"1^0": 2}},
                  {"1": 1, "e1": 1, "e2": 1, "e3": 1, "chi": 2}, {"1^0": 1}),
        ],
        "steps": [
            {"sub": "Z", "sup": "V", "index": 2,
             "rest_irr": {"1": ["1"], "a": ["1"], "z": ["z"], "za": ["z"]},
             "rest_ibr": {"1^0": ["1^0"]},
             "action": {"irr": {}, "ibr": {}}, "ext": {"1": "1", "z": "z"}},
            {"sub": "V", "sup": "D8", "index": 2,
             "rest_irr": {"1": ["1"], "e2": ["1"], "e1": ["a"], "e3": ["a"], "chi": ["z", "za"]},
             "rest_ibr": {"1^0": ["1^0"]},
             "action": {"irr": {"z": "za", "za": "z"}, "ibr": {}}, "ext": {"1": "1", "a": "e1"}},
        ],
        "seed": {"irr": ["z"], "ibr": ["1^0"]},
    }
    return {"format": io.FORMAT, "tower": tower}


def d8_matrix():
    # Dec(Irr(D8 | z), IBr(D8 | 1^0)) = [[2]]
    return {"format": io.FORMAT, "matrix": matrix(["chi"], ["1^0"], {"chi": {"1^0": 2}})}


# ------------------------------------------------------- C3 < C6 = C3 x C2


def c3_c6():
    irr6 = ["1", "1s", "w", "ws", "wb", "wbs"]
    ibr = ["1^0", "w^0", "wb^0"]
    tower = {
        "ell": 2,
        "levels": [
            level("C3", ["1", "w", "wb"], ibr, {x: {x + "^0": 1} for x in ("1", "w", "wb")},
                  {"1": 1, "w": 1, "wb": 1}, {x: 1 for x in ibr}),
            level("C6", sorted(irr6), ibr, {x: {x.rstrip("s") + "^0": 1} for x in irr6},
                  {x: 1 for x in irr6}, {x: 1 for x in ibr}),
        ],
        "steps": [{"sub": "C3", "sup": "C6", "index": 2,
                   "rest_irr": {x: [x.rstrip("s")] for x in irr6},
                   "rest_ibr": {x: [x] for x in ibr},
                   "action": {"irr": {}, "ibr": {}}, "ext": {"1": "1", "w": "w", "wb": "wb"}}],
        "seed": {"irr": ["1", "w", "wb"], "ibr": ibr},
        "central": {"flags": {x: not x.endswith("s") for x in irr6},
                    "ell_coprime_to_center_meet_bottom": True, "ell_coprime_to_index_mod_center": True},
    }
    return {"format": io.FORMAT, "tower": tower}


# ------------------------------------------------------------ small matrices


def small_matrix():
    return {"format": io.FORMAT, "matrix": matrix(["r1", "r2"], ["c1", "c2"], {"r1": {"c2": 1}, "r2": {"c1": 1, "c2": 1}})}


def interval_matrix():
    rows, cols = ["r1", "r2", "r3", "r4"], ["c1", "c2", "c3", "c4"]
    d = {"r1": {"c1": 1}, "r2": {"c2": 1}, "r3": {"c3": 1}, "r4": {"c1": 2, "c2": 3, "c3": 2, "c4": 1}}
    return {"format": io.FORMAT, "matrix": matrix(rows, cols, d),
            "action": {"rows": [{"r1": "r3", "r3": "r1"}], "cols": [{"c1": "c3", "c3": "c1"}]}}


# ---------------------------------------------------------------- assembly

FIXTURES = []


def fixture(name, argv, inputs, check):
    FIXTURES.append((name, argv, inputs, check))


def _lift_irr(expected):
    def check(code, doc):
        assert code == 0, code
        assert doc["result"]["irr"] == expected, doc["result"]["irr"]
    return check


def _identity_block(tower_doc):
    def check(code, doc):
        top = tower_doc["tower"]["levels"][-1]["matrix"]
        cert = doc["result"]["certificate"]
        for i, r in enumerate(cert["rows"]):
            row = top["entries"][top["rows"].index(r)]
            assert [row[top["cols"].index(c)] for c in cert["cols"]] == [int(i == j) for j in range(len(cert["cols"]))]
    return check


def _all(*checks):
    def check(code, doc):
        for c in checks:
            c(code, doc)
    return check


def _exit(n):
    def check(code, doc):
        assert code == n, code
    return check


def _count(n):
    def check(code, doc):
        assert code == 0 and doc["result"]["count"] == n, doc["result"].get("count")
    return check


a3, a2, a5 = a4_s4(3), a4_s4(2), a4_s4(5)
fixture("a4_s4_ell3", ["lift", "@tower"], {"tower": a3},
        _all(_lift_irr(["1", "chi3", "chi3p", "sgn"]), _identity_block(a3)))
fixture("a4_s4_ell3_ellprime", ["lift", "--mode", "ellprime", "@tower"], {"tower": a3},
        _lift_irr(["1", "chi3", "chi3p", "sgn"]))
fixture("a4_s4_ell2", ["lift", "@tower"], {"tower": a2}, _all(_lift_irr(["1", "chi2"]), _identity_block(a2)))
fixture("a4_s4_ell2_direct", ["lift", "--mode", "direct-ell", "@tower"], {"tower": a2}, _lift_irr(["1", "chi2"]))
fixture("a4_s4_ell5_ellprime", ["lift", "--mode", "ellprime", "@tower"], {"tower": a5}, _lift_irr(S4_IRR))
fixture("a4_s4_ell2_validate", ["validate", "@tower"], {"tower": a2}, _exit(0))
c3 = c3_s3()
fixture("c3_s3_ell3", ["lift", "@tower"], {"tower": c3}, _all(_lift_irr(["1", "sgn"]), _identity_block(c3)))
fixture("c3_c6_central", ["lift", "--mode", "central", "@tower"], {"tower": c3_c6()}, _lift_irr(["1", "w", "wb"]))
fixture("d8_lift_negative", ["lift", "@tower"], {"tower": d8()}, _exit(1))
fixture("d8_find_order_negative", ["find-order", "@matrix"], {"matrix": d8_matrix()}, _exit(1))
fixture("small_find_order", ["find-order", "@matrix"], {"matrix": small_matrix()},
        lambda code, doc: doc["result"]["certificate"] == {"rows": ["r1", "r2"], "cols": ["c2", "c1"]} or 1 / 0)
fixture("small_check", ["check", "@matrix", "@cert"],
        {"matrix": small_matrix(), "cert": {"rows": ["r1", "r2"], "cols": ["c2", "c1"]}}, _exit(0))
fixture("small_check_rejects", ["check", "@matrix", "@cert"],
        {"matrix": small_matrix(), "cert": {"rows": ["r1", "r2"], "cols": ["c1", "c2"]}}, _exit(1))
im = interval_matrix()
fixture("interval_order", ["interval-order", "@matrix", "@action", "@cert"],
        {"matrix": im, "action": im["action"],
         "cert": {"rows": ["r1", "r2", "r3", "r4"], "cols": ["c1", "c2", "c3", "c4"]}},
        lambda code, doc: doc["result"]["certificate"]["rows"] == ["r2", "r1", "r3", "r4"] or 1 / 0)
fixture("symbols_gl2_3", ["symbols", "enumerate", "--n", "2", "--eps", "1", "--q", "3", "--p", "3"], {}, _count(8))
fixture("symbols_gu2_2", ["symbols", "enumerate", "--n", "2", "--eps", "-1", "--q", "2", "--p", "2"], {}, _count(9))
fixture("symbols_invariants_gl2_32", ["symbols", "invariants", "--n", "2", "--q", "32", "--p", "2", "--e", "1"], {},
        _count(3))
fixture("symbols_xi_gl2_32", ["symbols", "xi", "--n", "2", "--q", "32", "--p", "2", "--e", "1"], {}, _exit(0))
fixture("symbols_basic_set_gl2_3", ["symbols", "basic-set", "--n", "2", "--q", "3", "--p", "3", "--ell", "2"], {},
        _count(2))
fixture("symbols_frobenius_gl2_4", ["symbols", "act", "--n", "2", "--q", "4", "--p", "2", "--action", "frobenius"], {},
        _exit(0))
fixture("unipotent_2", ["symbols", "unipotent", "--n", "2"], {},
        lambda code, doc: (doc["result"]["count"], doc["result"]["count_u1"]) == (7, 3) or 1 / 0)


def main():
    os.makedirs(OUT, exist_ok=True)
    for name, argv, inputs, check in FIXTURES:
        inputs = {k: io.loads(io.dumps(v)) for k, v in inputs.items()}

        def resolve(arg):
            return inputs[arg[1:]]

        code, doc, diag = execute(argv, resolve)
        if doc is None:
            sys.exit(f"{name}: {diag}")
        check(code, doc)
        fx = {"name": name, "provenance": PROVENANCE, "argv": argv, "inputs": inputs,
              "expected": {"exit": code, "output": doc}}
        with open(os.path.join(OUT, f"{name}.json"), "w", encoding="utf-8") as fh:
            fh.write(io.dumps(fx))
        print(f"wrote {name} (exit {code})")


if __name__ == "__main__":
    main()
