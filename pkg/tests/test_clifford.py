import dataclasses
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from triangulift.clifford import (
    CentralData,
    direct_ell_lift,
    fiber_ibr,
    fiber_irr,
    lift_central,
    lift_ellprime,
    lift_step,
    lift_tower,
    validate,
)
from triangulift.errors import InconsistentInstance, PreconditionFailed
from triangulift.exact_matrix import DecMatrix, check_certificate, find_unitriangular, submatrix
from triangulift.harness import serialize as io
from triangulift.harness.fixtures import load_fixture
from triangulift.harness.oracles import basic_subsets
from triangulift.harness.synthetic import planted_tower


def tower_doc(name):
    return load_fixture(name)["inputs"]["tower"]


def tower(name, edit=None):
    doc = io.loads(io.dumps(tower_doc(name)))
    if edit:
        edit(doc["tower"])
    return io.parse_instance(doc).tower


def identity_block(t, res):
    block = submatrix(t.top.dec, res.irr, res.ibr)
    c = res.cert
    return all(block[r, col] == int(i == j) for i, r in enumerate(c.row_order) for j, col in enumerate(c.col_order))


# ------------------------------------------------------------------ fixtures


def test_fibers():
    t = tower("a4_s4_ell3")
    step = t.steps[0]
    assert fiber_irr(step, ()) == ()
    assert fiber_irr(step, ("1", "chi3")) == ("1", "chi3", "chi3p", "sgn")
    assert fiber_irr(step, ("w",)) == ("chi2",)


def test_lift_a4_s4_ell3():
    t = tower("a4_s4_ell3")
    res = lift_step(t.steps[0], 3, ("1", "chi3"), ("1^0", "phi3"), sub=t.levels[0], sup=t.levels[1])
    assert res.irr == ("1", "chi3", "chi3p", "sgn")
    assert res.ibr == ("1^0", "phi3", "phi3p", "sgn^0")
    assert submatrix(t.top.dec, res.irr, res.ibr).to_lists() == [[int(i == j) for j in range(4)] for i in range(4)]
    full = lift_tower(t)
    assert full.irr == res.irr and identity_block(t, full)
    assert lift_ellprime(t).irr == res.irr


def test_lift_a4_s4_ell2():
    t = tower("a4_s4_ell2")
    res = lift_tower(t)
    assert res.irr == ("1", "chi2") and res.ibr == ("1^0", "phi2")
    assert identity_block(t, res)
    assert direct_ell_lift(t).irr == ("1", "chi2")
    with pytest.raises(PreconditionFailed):
        lift_ellprime(t)


def test_lift_c3_s3():
    t = tower("c3_s3_ell3")
    res = lift_tower(t)
    assert res.irr == ("1", "sgn") and identity_block(t, res)
    assert lift_ellprime(t).irr == ("1", "sgn")


def test_ell_five_is_plain_fiber_composition():
    t = tower("a4_s4_ell5_ellprime")
    res = lift_ellprime(t)
    assert res.irr == fiber_irr(t.steps[0], t.seed_irr)
    assert res.ibr == fiber_ibr(t.steps[0], t.seed_ibr)


def test_central_fixture():
    t = tower("c3_c6_central")
    assert lift_central(t).irr == ("1", "w", "wb")
    assert lift_tower(t).irr == ("1", "w", "wb")


def test_central_all_flagged_inconsistent_sizes():
    t = tower("c3_c6_central")
    t = dataclasses.replace(t, central=CentralData({x: True for x in t.top.irr}))
    with pytest.raises(InconsistentInstance):
        lift_central(t)


def test_central_none_flagged():
    t = tower("c3_c6_central")
    t = dataclasses.replace(t, central=CentralData({x: False for x in t.top.irr}))
    with pytest.raises(InconsistentInstance):
        lift_central(t)


def test_central_trivial_center_equals_ellprime():
    # C3 < S3 at ell = 3 with every row flagged: Z_ell is trivial
    t = tower("c3_s3_ell3")
    t = dataclasses.replace(t, central=CentralData({x: True for x in t.top.irr}))
    assert lift_central(t).irr == lift_ellprime(t).irr


def test_central_hypotheses():
    t = tower("c3_c6_central")
    t = dataclasses.replace(t, central=dataclasses.replace(t.central, ell_coprime_to_index_mod_center=False))
    with pytest.raises(PreconditionFailed):
        lift_central(t)


def test_d8_negative():
    t = tower("d8_lift_negative")
    assert validate(t) == []
    with pytest.raises(PreconditionFailed) as e:
        lift_tower(t)
    assert e.value.condition == "stable"
    B, C = t.seed_irr, t.seed_ibr
    for step in t.steps:
        B, C = fiber_irr(step, B), fiber_ibr(step, C)
    assert B == ("chi",) and C == ("1^0",)
    assert basic_subsets(t.top.dec, B, C) == []


# ---------------------------------------------------------------- validation


def test_validate_fixture_clean():
    for name in ("a4_s4_ell2", "a4_s4_ell3", "c3_s3_ell3", "c3_c6_central", "d8_lift_negative"):
        assert validate(tower(name)) == [], name


def codes(t):
    return {v.code for v in validate(t)}


def test_validate_deleted_restriction():
    def drop_key(tw):
        del tw["steps"][0]["rest_irr"]["chi2"]

    def drop_constituent(tw):
        tw["steps"][0]["rest_irr"]["chi2"] = ["w"]

    assert "orbit/fiber size" in codes(tower("a4_s4_ell2", drop_key))
    assert "orbit/fiber size" in codes(tower("a4_s4_ell2", drop_constituent))


def test_validate_support_predicate():
    def edit(tw):
        m = tw["levels"][1]["matrix"]
        m["entries"][m["rows"].index("chi3")][m["cols"].index("phi3")] += 1
        m["entries"][m["rows"].index("chi3")][m["cols"].index("1^0")] += 1
    assert "support predicate" in codes(tower("a4_s4_ell3", edit))


def test_validate_other_codes():
    def bad_ext(tw):
        tw["steps"][0]["ext"]["1"] = "chi2"
    assert "extension" in codes(tower("a4_s4_ell2", bad_ext))

    def bad_degree(tw):
        tw["levels"][1]["irr_degrees"]["chi2"] = 3
    assert {"degree", "brauer-degree"} <= codes(tower("a4_s4_ell2", bad_degree))

    def bad_index(tw):
        tw["steps"][0]["index"] = 4
    assert "prime-index" in codes(tower("a4_s4_ell2", bad_index))

    def bad_action(tw):
        tw["steps"][0]["action"]["ibr"] = {}
    assert "commutation" in codes(tower("a4_s4_ell2", bad_action))

    def bad_seed(tw):
        tw["seed"] = {"irr": ["w"], "ibr": ["w^0"]}
    assert "seed-stability" in codes(tower("a4_s4_ell2", bad_seed))


def test_lift_refuses_invalid():
    def edit(tw):
        del tw["steps"][0]["rest_irr"]["chi2"]
    with pytest.raises(PreconditionFailed):
        lift_tower(tower("a4_s4_ell2", edit))


def test_missing_extension():
    def edit(tw):
        del tw["steps"][0]["ext"]
    with pytest.raises(PreconditionFailed) as e:
        lift_tower(tower("a4_s4_ell2", edit))
    assert e.value.condition == "extension"


def test_direct_rejects_inconsistent_chain():
    def edit(tw):
        tw["global_ext"]["1"] = ["1", "sgn"]
    with pytest.raises(InconsistentInstance):
        direct_ell_lift(tower("a4_s4_ell2", edit))


# ----------------------------------------------------------- planted towers


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_planted_tower_lifts(seed):
    rng = random.Random(seed)
    ell = rng.choice((2, 3))
    indices = [rng.choice((2, 3, 5)) for _ in range(rng.randint(2, 3))]
    p = planted_tower(rng, ell, indices)
    assert validate(p.tower) == []
    res = lift_tower(p.tower)
    assert (res.irr, res.ibr) == (p.irr, p.ibr)
    assert res.cert.bijection == p.bijection
    assert check_certificate(p.tower.top.dec, res.cert)
    for step_res, (irr, ibr) in zip(res.trace, p.trace):
        assert (step_res.irr, step_res.ibr) == (irr, ibr)
        assert len(step_res.irr) == len(step_res.ibr)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**9))
def test_planted_modes(seed):
    p = planted_tower(seed, 2, [3, 5])
    assert lift_ellprime(p.tower).irr == lift_tower(p.tower).irr == p.irr
    p = planted_tower(seed, 3, [3, 3], global_ext=True)
    assert direct_ell_lift(p.tower).irr == lift_tower(p.tower).irr == p.irr
    p = planted_tower(seed, 2, [2, 3], central=True)
    r = lift_central(p.tower)
    assert r.irr == p.irr and r.cert.bijection == p.bijection


def relabel_tower(t, rng):
    """Rename every label of every level by a random injective map."""
    maps = []
    for lev in t.levels:
        ri = {x: f"i{rng.random():.12f}" for x in lev.irr}
        rb = {x: f"b{rng.random():.12f}" for x in lev.ibr}
        maps.append((ri, rb))
    doc = io.dump_tower(t)
    for lx, (ri, rb) in zip(doc["levels"], maps):
        m = lx["matrix"]
        m["rows"] = [ri[x] for x in m["rows"]]
        m["cols"] = [rb[x] for x in m["cols"]]
        lx["irr_degrees"] = {ri[k]: v for k, v in lx["irr_degrees"].items()}
        lx["ibr_degrees"] = {rb[k]: v for k, v in lx["ibr_degrees"].items()}
    for i, sx in enumerate(doc["steps"]):
        (li, lb), (ui, ub) = maps[i], maps[i + 1]
        sx["rest_irr"] = {ui[k]: [li[x] for x in v] for k, v in sx["rest_irr"].items()}
        sx["rest_ibr"] = {ub[k]: [lb[x] for x in v] for k, v in sx["rest_ibr"].items()}
        sx["action"] = {"irr": {li[k]: li[v] for k, v in sx["action"]["irr"].items()},
                        "ibr": {lb[k]: lb[v] for k, v in sx["action"]["ibr"].items()}}
        if "ext" in sx:
            sx["ext"] = {li[k]: ui[v] for k, v in sx["ext"].items()}
    doc["seed"] = {"irr": [maps[0][0][x] for x in doc["seed"]["irr"]],
                   "ibr": [maps[0][1][x] for x in doc["seed"]["ibr"]]}
    return io.parse_tower(doc), maps


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**9))
def test_equivariance_under_relabeling(seed):
    rng = random.Random(seed)
    p = planted_tower(rng, rng.choice((2, 3)), [rng.choice((2, 3)) for _ in range(2)])
    t2, maps = relabel_tower(p.tower, rng)
    a, b = lift_tower(p.tower), lift_tower(t2)
    ri, rb = maps[-1]
    assert set(b.irr) == {ri[x] for x in a.irr}
    assert set(b.ibr) == {rb[x] for x in a.ibr}
    assert b.cert.bijection == {ri[x]: rb[y] for x, y in a.cert.bijection.items()}


def test_lift_step_rejects_unstable_or_bad_seed():
    t = tower("a4_s4_ell2")
    step, sub, sup = t.steps[0], t.levels[0], t.levels[1]
    with pytest.raises(PreconditionFailed) as e:
        lift_step(step, 2, ("1", "w"), ("1^0", "w^0"), sub=sub, sup=sup)
    assert e.value.condition == "stable"
    with pytest.raises(PreconditionFailed) as e:
        lift_step(step, 2, ("1", "chi3"), ("w^0", "wb^0"), sub=sub, sup=sup)
    assert e.value.condition == "unitriangular"


def test_lift_step_inconsistent_data_detected():
    # a diagonal 2 makes the lifted block non-unitriangular
    def edit(tw):
        m = tw["levels"][1]["matrix"]
        m["entries"][m["rows"].index("chi2")] = [0, 2]
    t = tower("a4_s4_ell2", edit)
    with pytest.raises(InconsistentInstance):
        lift_step(t.steps[0], 2, ("1", "w", "wb"), ("1^0", "w^0", "wb^0"), sub=t.levels[0], sup=t.levels[1])


def test_empty_seed():
    t = tower("c3_s3_ell3")
    t = dataclasses.replace(t, seed_irr=(), seed_ibr=())
    res = lift_tower(t)
    assert res.irr == () and res.ibr == ()


def test_matrix_fixture_consistency():
    m = DecMatrix(["x"], ["y"], [[1]])
    assert find_unitriangular(m) is not None
