"""Clifford towers with prime-index steps and the going-up constructions.

A tower is a chain of levels ``N = G_0 < G_1 < ... < G_k = G``.  Each level
carries its ordinary and Brauer labels and its decomposition matrix; each
step carries the restriction graphs from the upper level to the lower one,
the conjugation action of a generator of the (cyclic, prime order)
quotient on the lower level, and, for steps of index ``ell``, an extension
map.  The library never computes representation theory from a group; it
checks that the supplied data is Clifford-consistent and then builds basic
sets level by level, asserting at run time that each expected conclusion holds.
"""

from dataclasses import dataclass, field
from functools import cached_property

from .errors import InconsistentInstance, InvalidInput, PreconditionFailed
from .exact_matrix import (
    DecMatrix,
    UnitriCertificate,
    find_unitriangular,
    submatrix,
    verify_certificate,
)
from .perm_action import PairedAction, commutes, interval_reorder, orbit_map, orbits, stabilizes


def is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True, eq=False)
class Level:
    name: str
    dec: DecMatrix
    irr_degrees: dict = None
    ibr_degrees: dict = None

    @property
    def irr(self):
        return self.dec.rows

    @property
    def ibr(self):
        return self.dec.cols


@dataclass(frozen=True, eq=False)
class Step:
    sub: str
    sup: str
    index: int
    rest_irr: dict
    rest_ibr: dict
    action: PairedAction
    ext: dict = field(default_factory=dict)

    @cached_property
    def over_irr(self):
        """Lower irreducible label -> upper labels lying over it."""
        out = {}
        for up in sorted(self.rest_irr):
            for x in self.rest_irr[up]:
                out.setdefault(x, []).append(up)
        return out

    @cached_property
    def over_ibr(self):
        out = {}
        for up in sorted(self.rest_ibr):
            for x in self.rest_ibr[up]:
                out.setdefault(x, []).append(up)
        return out

    @property
    def sigma_irr(self):
        return self.action.row_action.generators[0]

    @property
    def sigma_ibr(self):
        return self.action.col_action.generators[0]


@dataclass(frozen=True, eq=False)
class CentralData:
    """Top-level flags: ``flags[chi]`` is True iff chi lies over the trivial
    character of the ell-part of the central subgroup."""

    flags: dict
    ell_coprime_to_index_mod_center: bool = True
    ell_coprime_to_center_meet_bottom: bool = True


@dataclass(frozen=True, eq=False)
class CliffordTower:
    ell: int
    levels: tuple
    steps: tuple
    seed_irr: tuple
    seed_ibr: tuple
    central: CentralData = None
    # bottom label -> chain of labels, one per level, ending in the top label
    global_ext: dict = None

    def level(self, name):
        for lev in self.levels:
            if lev.name == name:
                return lev
        raise InvalidInput(f"unknown level {name!r}")

    @property
    def bottom(self):
        return self.levels[0]

    @property
    def top(self):
        return self.levels[-1]


@dataclass(frozen=True)
class Violation:
    code: str
    where: str
    detail: str

    def __str__(self):
        return f"[{self.code}] {self.where}: {self.detail}"


@dataclass(frozen=True)
class StepResult:
    level: str
    irr: tuple
    ibr: tuple
    cert: UnitriCertificate
    block_cert: UnitriCertificate = None


@dataclass(frozen=True)
class LiftResult:
    irr: tuple
    ibr: tuple
    cert: UnitriCertificate
    trace: tuple = ()


# ---------------------------------------------------------------- fibers


def _check_subset(labels, universe, kind):
    universe = set(universe)
    for x in sorted(set(labels)):
        if x not in universe:
            raise InvalidInput(f"unknown {kind} label {x!r}")


def fiber_irr(step, labels):
    """Upper ordinary labels whose restriction meets ``labels``."""
    _check_subset(labels, step.action.row_action.domain, "irreducible")
    return tuple(sorted({up for x in labels for up in step.over_irr.get(x, ())}))


def fiber_ibr(step, labels):
    _check_subset(labels, step.action.col_action.domain, "Brauer")
    return tuple(sorted({up for x in labels for up in step.over_ibr.get(x, ())}))


# ------------------------------------------------------------ validation


def _validate_level(lev, out):
    where = f"level {lev.name}"
    for kind, degs, labels in (("irr", lev.irr_degrees, lev.irr), ("ibr", lev.ibr_degrees, lev.ibr)):
        if degs is None:
            continue
        if set(degs) != set(labels):
            out.append(Violation("degree", where, f"{kind} degrees do not cover exactly the labels"))
            continue
        for x, v in degs.items():
            if not isinstance(v, int) or v <= 0:
                out.append(Violation("degree", where, f"degree of {x!r} must be a positive integer"))
    if lev.irr_degrees is not None and lev.ibr_degrees is not None:
        try:
            for chi in lev.irr:
                total = sum(lev.dec[chi, phi] * lev.ibr_degrees[phi] for phi in lev.dec.support(chi))
                if total != lev.irr_degrees[chi]:
                    out.append(Violation(
                        "brauer-degree", where,
                        f"decomposition of {chi!r} has degree {total}, expected {lev.irr_degrees[chi]}"))
        except KeyError:
            pass


def _validate_rest(step, rest, upper, lower, kind, out):
    where = f"step {step.sub}->{step.sup}"
    if set(rest) != set(upper):
        missing = sorted(set(upper) - set(rest))
        extra = sorted(set(rest) - set(upper))
        out.append(Violation("restriction-domain", where,
                             f"{kind} restriction keys mismatch (missing {missing}, extra {extra})"))
    lower = set(lower)
    for up in sorted(rest):
        vals = list(rest[up])
        if not vals:
            out.append(Violation("restriction-empty", where, f"{kind} restriction of {up!r} is empty"))
        if len(set(vals)) != len(vals):
            out.append(Violation("multiplicity", where, f"{kind} restriction of {up!r} repeats a constituent"))
        for x in vals:
            if x not in lower:
                out.append(Violation("unknown-label", where, f"{x!r} in restriction of {up!r} is not a {kind} label of {step.sub}"))


def _validate_step(tower, step, sub, sup, out):
    where = f"step {step.sub}->{step.sup}"
    r = step.index
    if not is_prime(r):
        out.append(Violation("prime-index", where, f"index {r} is not prime"))
        return
    _validate_rest(step, step.rest_irr, sup.irr, sub.irr, "irreducible", out)
    _validate_rest(step, step.rest_ibr, sup.ibr, sub.ibr, "Brauer", out)
    act = step.action
    if act.ngens != 1:
        out.append(Violation("action", where, f"expected one paired generator, got {act.ngens}"))
        return
    if set(act.row_action.domain) != set(sub.irr) or set(act.col_action.domain) != set(sub.ibr):
        out.append(Violation("action", where, "action domain does not match the lower level labels"))
        return
    for gen in (step.sigma_irr, step.sigma_ibr):
        for x in gen:
            y = x
            for _ in range(r):
                y = gen[y]
            if y != x:
                out.append(Violation("action-order", where, f"generator order does not divide {r} at {x!r}"))
                break
    if not commutes(sub.dec, act):
        out.append(Violation("commutation", where, "conjugation action does not preserve the decomposition matrix"))
    if out and any(v.where == where and v.code == "unknown-label" for v in out):
        return

    for rest, group, kind in ((step.rest_irr, act.row_action, "irr"), (step.rest_ibr, act.col_action, "ibr")):
        omap = orbit_map(group)
        for up in sorted(rest):
            vals = set(rest[up])
            if not vals:
                continue
            first = min(vals)
            if vals != set(omap[first]):
                code = "orbit-constant" if not all(set(omap[x]) <= vals for x in vals) else "restriction-orbit"
                out.append(Violation(code, where, f"{kind} restriction of {up!r} is not a single orbit"))
        over = step.over_irr if kind == "irr" else step.over_ibr
        for orb in orbits(group):
            for x in orb:
                nfib = len(over.get(x, ()))
                if kind == "ibr" and r == tower.ell:
                    ok = nfib == 1
                    want = "1"
                else:
                    ok = len(orb) * nfib == r
                    want = f"{r}"
                if not ok:
                    out.append(Violation("orbit/fiber size", where,
                                         f"{kind} label {x!r}: orbit {len(orb)} x fiber {nfib} != {want}"))

    for theta, up in sorted(step.ext.items()):
        if theta not in set(sub.irr) or up not in set(sup.irr):
            out.append(Violation("extension", where, f"extension {theta!r} -> {up!r} uses unknown labels"))
        elif list(step.rest_irr.get(up, ())) != [theta]:
            out.append(Violation("extension", where, f"{up!r} does not restrict to {theta!r} alone"))

    for kind, rest, lo, hi in (("irr", step.rest_irr, sub.irr_degrees, sup.irr_degrees),
                               ("ibr", step.rest_ibr, sub.ibr_degrees, sup.ibr_degrees)):
        if lo is None or hi is None:
            continue
        for up in sorted(rest):
            try:
                total = sum(lo[x] for x in rest[up])
            except KeyError:
                continue
            if hi.get(up) != total:
                out.append(Violation("degree", where, f"{kind} {up!r}: constituents sum to {total}, degree is {hi.get(up)}"))

    # restriction of a non-zero decomposition number must be witnessed below
    for up_chi in sup.irr:
        for up_phi in sup.dec.support(up_chi):
            below = step.rest_irr.get(up_chi, ())
            for phi in step.rest_ibr.get(up_phi, ()):
                if not any(sub.dec[chi, phi] for chi in below):
                    out.append(Violation("support predicate", where,
                                         f"d[{up_chi!r}][{up_phi!r}] != 0 but no constituent of {up_chi!r} reaches {phi!r}"))


def validate(tower):
    """All structural violations, in a deterministic order; empty if valid."""
    out = []
    if not is_prime(tower.ell):
        out.append(Violation("ell", "tower", f"ell = {tower.ell} is not prime"))
    names = [lev.name for lev in tower.levels]
    if len(set(names)) != len(names):
        out.append(Violation("chain", "tower", "duplicate level names"))
    if len(tower.steps) != len(tower.levels) - 1:
        out.append(Violation("chain", "tower", "need exactly one step per consecutive pair of levels"))
        return out
    for lev in tower.levels:
        _validate_level(lev, out)
    for i, step in enumerate(tower.steps):
        sub, sup = tower.levels[i], tower.levels[i + 1]
        if (step.sub, step.sup) != (sub.name, sup.name):
            out.append(Violation("chain", f"step {i}", f"expected {sub.name}->{sup.name}, got {step.sub}->{step.sup}"))
            continue
        _validate_step(tower, step, sub, sup, out)

    bottom = tower.bottom
    bad = [x for x in tower.seed_irr if x not in set(bottom.irr)] + [x for x in tower.seed_ibr if x not in set(bottom.ibr)]
    if bad:
        out.append(Violation("unknown-label", "seed", f"seed labels not in the bottom level: {sorted(bad)}"))
    else:
        if find_unitriangular(submatrix(bottom.dec, tower.seed_irr, tower.seed_ibr)) is None:
            out.append(Violation("seed-unitriangular", "seed", "seed decomposition submatrix is not unitriangular"))
        if tower.steps:
            act = tower.steps[0].action
            if not (stabilizes(act.row_action, tower.seed_irr) and stabilizes(act.col_action, tower.seed_ibr)):
                out.append(Violation("seed-stability", "seed", "seed sets are not stable under the first step's action"))

    if tower.central is not None:
        if set(tower.central.flags) != set(tower.top.irr):
            out.append(Violation("central-flags", "central", "flags must cover exactly the top irreducible labels"))
    if tower.global_ext is not None:
        for theta in sorted(tower.global_ext):
            chain = tower.global_ext[theta]
            if len(chain) != len(tower.levels) or chain[0] != theta:
                out.append(Violation("global-extension", "global_ext", f"chain for {theta!r} must start at it and have one label per level"))
    return out


def _require_valid(tower):
    problems = validate(tower)
    if problems:
        raise PreconditionFailed("invalid-tower", "; ".join(str(v) for v in problems[:5]))


# ----------------------------------------------------------------- lifts


def _block_certificate(step, ell, cert0, sub, sup, B_M, C_M):
    """Certificate built the way the going-up proof builds it: orbit blocks
    in the order of an interval-reordered lower certificate, identity
    inside each block."""
    ordered = interval_reorder(cert0, sub.dec, step.action)
    f = ordered.bijection
    omap = orbit_map(step.action.row_action)
    blocks = []
    for r in ordered.row_order:
        if not blocks or omap[r] != blocks[-1]:
            blocks.append(omap[r])
    B_M, C_M = set(B_M), set(C_M)
    rows, cols = [], []
    for orb in blocks:
        brows = [x for x in fiber_irr(step, orb) if x in B_M]
        bcols = [x for x in fiber_ibr(step, [f[t] for t in orb]) if x in C_M]
        if len(brows) != len(bcols):
            raise InconsistentInstance(f"orbit block {list(orb)} lifts to {len(brows)} rows but {len(bcols)} columns")
        for chi in brows:
            hits = [phi for phi in bcols if sup.dec[chi, phi] != 0]
            if len(hits) != 1 or sup.dec[chi, hits[0]] != 1:
                raise InconsistentInstance(f"row {chi!r} does not meet its orbit block in a single 1")
            rows.append(chi)
            cols.append(hits[0])
    return UnitriCertificate(tuple(rows), tuple(cols))


def lift_step(step, ell, B, C, *, sub, sup):
    """One prime-index going-up step; returns a :class:`StepResult`.

    For index ``r != ell`` the new row set is the full fiber over ``B``.
    For ``r == ell`` each orbit of ``B`` contributes one character: the
    induced character for a regular orbit, the chosen extension for a
    fixed point.  The columns are always the full Brauer fiber over ``C``.
    """
    B, C = tuple(B), tuple(C)
    _check_subset(B, sub.irr, "irreducible")
    _check_subset(C, sub.ibr, "Brauer")
    cert0 = find_unitriangular(submatrix(sub.dec, B, C))
    if cert0 is None:
        raise PreconditionFailed("unitriangular", f"Dec(B, C) at level {sub.name} is not unitriangular")
    if not stabilizes(step.action.row_action, B):
        raise PreconditionFailed("stable", f"row set at level {sub.name} is not stable under the step action")
    if not stabilizes(step.action.col_action, C):
        raise PreconditionFailed("stable", f"column set at level {sub.name} is not stable under the step action")

    C_M = fiber_ibr(step, C)
    if step.index != ell:
        B_M = fiber_irr(step, B)
    else:
        chosen = set()
        for orb in orbits(step.action.row_action.restrict(B)):
            theta = orb[0]
            if len(orb) > 1:
                over = step.over_irr.get(theta, [])
                if len(over) != 1:
                    raise InconsistentInstance(f"regular orbit of {theta!r} has {len(over)} characters above it")
                chosen.add(over[0])
            else:
                if theta not in step.ext:
                    raise PreconditionFailed("extension", f"no extension given for the stable character {theta!r}")
                chosen.add(step.ext[theta])
        B_M = tuple(sorted(chosen))

    if len(B_M) != len(C_M):
        raise InconsistentInstance(f"lifted sets at level {sup.name} have sizes {len(B_M)} and {len(C_M)}")
    cert = find_unitriangular(submatrix(sup.dec, B_M, C_M))
    if cert is None:
        raise InconsistentInstance(f"lifted decomposition matrix at level {sup.name} is not unitriangular")
    block = _block_certificate(step, ell, cert0, sub, sup, B_M, C_M)
    reason = verify_certificate(sup.dec, block)
    if reason is not None or block.bijection != cert.bijection:
        raise InconsistentInstance(f"orbit-block certificate at level {sup.name} fails ({reason or 'bijection differs'})")
    return StepResult(sup.name, B_M, C_M, cert, block)


def lift_tower(tower):
    """Fold :func:`lift_step` along the chain."""
    _require_valid(tower)
    B, C = tuple(sorted(tower.seed_irr)), tuple(sorted(tower.seed_ibr))
    cert = find_unitriangular(submatrix(tower.bottom.dec, B, C))
    trace = [StepResult(tower.bottom.name, B, C, cert)]
    for i, step in enumerate(tower.steps):
        res = lift_step(step, tower.ell, B, C, sub=tower.levels[i], sup=tower.levels[i + 1])
        trace.append(res)
        B, C, cert = res.irr, res.ibr, res.cert
    return LiftResult(B, C, cert, tuple(trace))


def _fiber_chain(tower, B, C):
    for step in tower.steps:
        B, C = fiber_irr(step, B), fiber_ibr(step, C)
    return B, C


def lift_ellprime(tower):
    """Lift through a tower whose indices are all prime to ``ell``: the full
    fibers form the new basic set; no extension maps are consulted."""
    for step in tower.steps:
        if step.index == tower.ell:
            raise PreconditionFailed("ell-step", f"step {step.sub}->{step.sup} has index ell = {tower.ell}")
    _require_valid(tower)
    B, C = _fiber_chain(tower, tuple(tower.seed_irr), tuple(tower.seed_ibr))
    cert = find_unitriangular(submatrix(tower.top.dec, B, C))
    if cert is None:
        raise InconsistentInstance("full fibers are not unitriangular at the top level")
    ref = lift_tower(tower)
    if (ref.irr, ref.ibr) != (B, C):
        raise InconsistentInstance("fiber composition disagrees with the stepwise lift")
    return LiftResult(B, C, cert)


def lift_central(tower):
    """Full fibers at the top, cut down to the characters flagged as lying
    over the trivial character of the central ell-part."""
    if tower.central is None:
        raise PreconditionFailed("central-flags", "tower carries no central flags")
    if not tower.central.ell_coprime_to_index_mod_center:
        raise PreconditionFailed("central-hypothesis", "ell divides |G/NZ|")
    if not tower.central.ell_coprime_to_center_meet_bottom:
        raise PreconditionFailed("central-hypothesis", "ell divides |Z meet N|")
    _require_valid(tower)
    B, C = _fiber_chain(tower, tuple(tower.seed_irr), tuple(tower.seed_ibr))
    B = tuple(x for x in B if tower.central.flags[x])
    if len(B) != len(C):
        raise InconsistentInstance(f"flagged fiber has {len(B)} rows but the Brauer fiber has {len(C)} columns")
    cert = find_unitriangular(submatrix(tower.top.dec, B, C))
    if cert is None:
        raise InconsistentInstance("flagged fiber is not unitriangular at the top level")
    return LiftResult(B, C, cert)


def direct_ell_lift(tower):
    """One-shot lift through an ell-tower from a global extension map.

    ``tower.global_ext[theta]`` lists, level by level, the characters
    ``theta = x_0, x_1, ..., x_k`` where ``x_k`` is the character induced
    from the extension of ``theta`` to its stabilizer.  The chain is
    checked against the per-step data and the result against the stepwise
    lift.
    """
    for step in tower.steps:
        if step.index != tower.ell:
            raise PreconditionFailed("non-ell-step", f"step {step.sub}->{step.sup} has index {step.index} != ell")
    if tower.global_ext is None:
        raise PreconditionFailed("global-extension", "tower carries no global extension map")
    _require_valid(tower)
    missing = sorted(set(tower.seed_irr) - set(tower.global_ext))
    if missing:
        raise PreconditionFailed("global-extension", f"no global extension for {missing}")
    top = set()
    for theta in sorted(tower.seed_irr):
        chain = tower.global_ext[theta]
        for i, step in enumerate(tower.steps):
            lo, hi = chain[i], chain[i + 1]
            if lo not in step.rest_irr.get(hi, ()):
                raise InconsistentInstance(f"global extension of {theta!r}: {hi!r} does not lie over {lo!r}")
            if step.sigma_irr[lo] == lo and step.ext.get(lo) != hi:
                raise InconsistentInstance(
                    f"global extension of {theta!r} passes through {hi!r} but the step extension of {lo!r} is {step.ext.get(lo)!r}")
        top.add(chain[-1])
    B = tuple(sorted(top))
    _, C = _fiber_chain(tower, tuple(tower.seed_irr), tuple(tower.seed_ibr))
    cert = find_unitriangular(submatrix(tower.top.dec, B, C))
    if cert is None:
        raise InconsistentInstance("direct lift is not unitriangular at the top level")
    ref = lift_tower(tower)
    if ref.irr != B:
        raise InconsistentInstance("direct lift disagrees with the stepwise lift")
    return LiftResult(B, C, cert)
