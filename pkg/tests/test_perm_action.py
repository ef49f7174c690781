import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from triangulift.errors import InvalidInput, PreconditionFailed
from triangulift.exact_matrix import DecMatrix, UnitriCertificate, check_certificate, find_unitriangular
from triangulift.harness.oracles import interval_certificates
from triangulift.harness.synthetic import commuting_instance
from triangulift.perm_action import (
    LabeledPermGroup,
    PairedAction,
    commutes,
    interval_reorder,
    is_interval_order,
    orbits,
    perm_from_cycles,
)

ABC = ("a", "b", "c")


def test_orbit_examples():
    assert orbits(LabeledPermGroup.trivial(ABC)) == [("a",), ("b",), ("c",)]
    assert orbits(LabeledPermGroup(ABC, ({"a": "b", "b": "a"},))) == [("a", "b"), ("c",)]
    g = LabeledPermGroup(ABC, (perm_from_cycles(ABC, ("a", "b")), perm_from_cycles(ABC, ("b", "c"))))
    assert orbits(g) == [("a", "b", "c")]


def test_generator_must_be_bijection():
    with pytest.raises(InvalidInput):
        LabeledPermGroup(ABC, ({"a": "b"},))
    with pytest.raises(InvalidInput):
        LabeledPermGroup(ABC, ({"a": "z", "z": "a"},))


def swap2():
    return PairedAction(LabeledPermGroup(("r1", "r2"), ({"r1": "r2", "r2": "r1"},)),
                        LabeledPermGroup(("c1", "c2"), ({"c1": "c2", "c2": "c1"},)))


def test_commutes_examples():
    m = DecMatrix(["r1", "r2"], ["c1", "c2"], [[1, 0], [2, 1]])
    assert commutes(m, PairedAction.trivial(m.rows, m.cols))
    assert commutes(DecMatrix(["r1", "r2"], ["c1", "c2"], [[1, 0], [0, 1]]), swap2())
    assert not commutes(m, swap2())


def test_commutes_domain_mismatch():
    m = DecMatrix(["r1"], ["c1"], [[1]])
    with pytest.raises(InvalidInput):
        commutes(m, swap2())


def test_reorder_trivial_action_keeps_certificate():
    m = DecMatrix(["r1", "r2"], ["c1", "c2"], [[1, 0], [2, 1]])
    c = UnitriCertificate(("r1", "r2"), ("c1", "c2"))
    assert interval_reorder(c, m, PairedAction.trivial(m.rows, m.cols)) == c


def test_reorder_swap_identity():
    m = DecMatrix(["r1", "r2"], ["c1", "c2"], [[1, 0], [0, 1]])
    out = interval_reorder(UnitriCertificate(("r2", "r1"), ("c2", "c1")), m, swap2())
    assert check_certificate(m, out)
    assert is_interval_order(out.row_order, swap2().row_action)


def four_by_four():
    rows, cols = ("r1", "r2", "r3", "r4"), ("c1", "c2", "c3", "c4")
    m = DecMatrix(rows, cols, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [2, 3, 2, 1]])
    act = PairedAction(LabeledPermGroup(rows, ({"r1": "r3", "r3": "r1"},)),
                       LabeledPermGroup(cols, ({"c1": "c3", "c3": "c1"},)))
    return m, act


def test_reorder_four_by_four():
    m, act = four_by_four()
    c = UnitriCertificate(("r1", "r2", "r3", "r4"), ("c1", "c2", "c3", "c4"))
    out = interval_reorder(c, m, act)
    assert out.row_order == ("r2", "r1", "r3", "r4")
    assert check_certificate(m, out) and is_interval_order(out.row_order, act.row_action)
    feasible = interval_certificates(m, c, act.row_action)
    assert out in feasible


def test_reorder_preconditions():
    m, act = four_by_four()
    good = UnitriCertificate(("r1", "r2", "r3", "r4"), ("c1", "c2", "c3", "c4"))
    with pytest.raises(PreconditionFailed) as e:
        interval_reorder(UnitriCertificate(("r1",), ("c1",)), m, act)
    assert e.value.condition == "row-stable"
    bad = DecMatrix(m.rows, m.cols, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [2, 3, 1, 1]])
    with pytest.raises(PreconditionFailed) as e:
        interval_reorder(good, bad, act)
    assert e.value.condition == "commutes"
    with pytest.raises(PreconditionFailed) as e:
        interval_reorder(UnitriCertificate(("r1", "r2"), ("c2", "c1")), m, act)
    assert e.value.condition == "certificate"


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9))
def test_reorder_property(seed):
    ci = commuting_instance(seed)
    assert commutes(ci.dec, ci.action)
    c = find_unitriangular(ci.dec)
    assert c is not None and c.bijection == ci.bijection
    out = interval_reorder(c, ci.dec, ci.action)
    assert check_certificate(ci.dec, out)
    assert is_interval_order(out.row_order, ci.action.row_action)
    assert out.bijection == c.bijection
    if len(ci.dec.rows) <= 5:
        assert out in interval_certificates(ci.dec, c, ci.action.row_action)
