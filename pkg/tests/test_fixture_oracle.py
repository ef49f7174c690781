"""Fixture character data against characters computed from permutation groups."""

import pytest

import small_groups as sg
from triangulift.harness import serialize as io
from triangulift.harness.fixtures import load_fixture


def tower_of(name):
    return io.parse_instance(load_fixture(name)["inputs"]["tower"]).tower


def check_level(level, G, ell):
    assert sg.is_orthonormal_basis(G)
    assert sg.brauer_ok(G, ell)
    assert set(level.irr) == set(G.irr) and set(level.ibr) == set(G.ibr)
    dec = sg.decomposition(G, ell)
    for chi in level.irr:
        for phi in level.ibr:
            assert level.dec[chi, phi] == dec[chi].get(phi, 0), (level.name, chi, phi)
    irr_deg, ibr_deg = sg.degrees(G, ell)
    assert level.irr_degrees == irr_deg
    assert level.ibr_degrees == ibr_deg


def check_step(step, N, G, g, ell):
    rest_irr = sg.restriction(G, N, "irr")
    rest_ibr = sg.restriction(G, N, "ibr", ell)
    assert {k: sorted(v) for k, v in step.rest_irr.items()} == rest_irr
    assert {k: sorted(v) for k, v in step.rest_ibr.items()} == rest_ibr
    act_irr, act_ibr = sg.action(G, N, g, ell)
    assert {k: v for k, v in step.sigma_irr.items() if k != v} == act_irr
    assert {k: v for k, v in step.sigma_ibr.items() if k != v} == act_ibr
    for theta, up in step.ext.items():
        assert rest_irr[up] == [theta]


@pytest.mark.parametrize("name,ell", [("a4_s4_ell3", 3), ("a4_s4_ell2", 2), ("a4_s4_ell5_ellprime", 5)])
def test_a4_s4(name, ell):
    t = tower_of(name)
    A4, S4, g = sg.s4_a4(ell)
    check_level(t.level("A4"), A4, ell)
    check_level(t.level("S4"), S4, ell)
    check_step(t.steps[0], A4, S4, g, ell)


def test_a4_s4_global_extension_chains():
    t = tower_of("a4_s4_ell2")
    A4, S4, _ = sg.s4_a4(2)
    rest = sg.restriction(S4, A4, "irr")
    for theta, (low, top) in t.global_ext.items():
        assert low == theta and theta in rest[top]


def test_c3_s3():
    t = tower_of("c3_s3_ell3")
    C3, S3, g = sg.s3_c3()
    check_level(t.level("C3"), C3, 3)
    check_level(t.level("S3"), S3, 3)
    check_step(t.steps[0], C3, S3, g, 3)


def test_d8_chain():
    t = tower_of("d8_lift_negative")
    Z, V, D8, s, r = sg.d8_chain()
    for name, G in (("Z", Z), ("V", V), ("D8", D8)):
        check_level(t.level(name), G, 2)
    check_step(t.steps[0], Z, V, s, 2)
    check_step(t.steps[1], V, D8, r, 2)
    # the seed is the non-trivial character of the derived subgroup
    commutators = {sg.compose(sg.compose(a, b), sg.compose(sg.inverse(a), sg.inverse(b)))
                   for a in D8.elems for b in D8.elems}
    assert sorted(commutators) == Z.elems
    assert t.seed_irr == ("z",)


def test_d8_matrix_is_the_fiber_block():
    t = tower_of("d8_lift_negative")
    m = io.parse_instance(load_fixture("d8_find_order_negative")["inputs"]["matrix"]).matrix
    from triangulift.clifford import fiber_ibr, fiber_irr
    B, C = ("z",), ("1^0",)
    for step in t.steps:
        B, C = fiber_irr(step, B), fiber_ibr(step, C)
    assert (m.rows, m.cols) == (B, C)
    assert m[B[0], C[0]] == t.top.dec[B[0], C[0]]


def test_c3_c6_central():
    t = tower_of("c3_c6_central")
    C3, C6, Z2, g = sg.c3_c6()
    check_level(t.level("C3"), C3, 2)
    check_level(t.level("C6"), C6, 2)
    check_step(t.steps[0], C3, C6, g, 2)
    assert t.central.flags == sg.central_flags(C6, Z2)
