"""Permutation actions on label sets and orbit-interval reordering."""

from dataclasses import dataclass

from .errors import InvalidInput, PreconditionFailed
from .exact_matrix import UnitriCertificate, verify_certificate


def _as_perm(domain, gen):
    perm = {x: gen.get(x, x) for x in domain}
    if set(gen) - set(domain):
        bad = sorted(set(gen) - set(domain))[0]
        raise InvalidInput(f"generator moves {bad!r}, which is not in the domain")
    if set(perm.values()) != set(domain):
        raise InvalidInput("generator is not a bijection of the domain")
    return perm


def perm_from_cycles(domain, *cycles):
    """Build a label map from cycles, e.g. ``perm_from_cycles(D, ("a", "b"))``."""
    perm = {x: x for x in domain}
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            perm[a] = b
    return perm


@dataclass(frozen=True, eq=False)
class LabeledPermGroup:
    """Group generated by permutations of a labeled domain.

    Generators may be given sparsely (only moved points); they are stored
    as total maps.
    """

    domain: tuple
    generators: tuple

    def __post_init__(self):
        domain = tuple(self.domain)
        if len(set(domain)) != len(domain):
            raise InvalidInput("duplicate label in permutation domain")
        gens = tuple(_as_perm(domain, g) for g in self.generators)
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "generators", gens)

    @classmethod
    def trivial(cls, domain):
        return cls(tuple(domain), ())

    def image(self, gen_index, x):
        return self.generators[gen_index][x]

    def moved(self):
        """Generators as sparse maps of moved points only."""
        return [{x: y for x, y in g.items() if x != y} for g in self.generators]

    def restrict(self, subset):
        subset = tuple(x for x in self.domain if x in set(subset))
        if not stabilizes(self, subset):
            raise PreconditionFailed("not-stable", "subset is not stable under the group")
        return LabeledPermGroup(subset, tuple({x: g[x] for x in subset} for g in self.generators))


@dataclass(frozen=True, eq=False)
class PairedAction:
    """Simultaneous action on row labels and column labels.

    The i-th row generator and the i-th column generator come from the same
    group element.
    """

    row_action: LabeledPermGroup
    col_action: LabeledPermGroup

    def __post_init__(self):
        if len(self.row_action.generators) != len(self.col_action.generators):
            raise InvalidInput("row and column actions have different numbers of generators")

    @classmethod
    def trivial(cls, rows, cols):
        return cls(LabeledPermGroup.trivial(rows), LabeledPermGroup.trivial(cols))

    @property
    def ngens(self):
        return len(self.row_action.generators)


def orbits(group):
    """Orbits as tuples, each sorted by label, listed by smallest member."""
    parent = {x: x for x in group.domain}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in group.generators:
        for x, y in g.items():
            a, b = find(x), find(y)
            if a != b:
                parent[max(a, b)] = min(a, b)
    classes = {}
    for x in group.domain:
        classes.setdefault(find(x), []).append(x)
    return sorted((tuple(sorted(c)) for c in classes.values()), key=lambda o: o[0])


def orbit_map(group):
    """Label -> its orbit (as returned by :func:`orbits`)."""
    return {x: orb for orb in orbits(group) for x in orb}


def stabilizes(group, subset):
    subset = set(subset)
    return all(g[x] in subset for g in group.generators for x in subset)


def commutes(dec, act):
    """True iff ``d[s(chi)][s(phi)] == d[chi][phi]`` for every paired generator."""
    if set(act.row_action.domain) != set(dec.rows):
        raise InvalidInput("row action domain does not match the matrix rows")
    if set(act.col_action.domain) != set(dec.cols):
        raise InvalidInput("column action domain does not match the matrix columns")
    e = dec.entries
    for gr, gc in zip(act.row_action.generators, act.col_action.generators):
        ri = [dec.row_pos(gr[r]) for r in dec.rows]
        ci = [dec.col_pos(gc[c]) for c in dec.cols]
        if not (e[ri][:, ci] == e).all():
            return False
    return True


def is_interval_order(order, group):
    """True iff every orbit of ``group`` meets ``order`` in a consecutive run."""
    omap = orbit_map(group)
    seen = set()
    prev = None
    for x in order:
        o = omap[x]
        if o != prev:
            if o in seen:
                return False
            seen.add(o)
            prev = o
    return True


def interval_reorder(cert, dec, act):
    """Reorder a certificate so that every orbit is a consecutive interval.

    Repeatedly take the orbit of the last not-yet-placed row, move its
    members (in their current relative order) behind the remaining rows,
    and continue with the remaining rows.  Members of that orbit are fixed
    by the unitriangular matrix in the orbit block, so moving them last
    keeps the matrix lower unitriangular.  Columns follow via the
    certificate's bijection.
    """
    reason = verify_certificate(dec, cert)
    if reason is not None:
        raise PreconditionFailed("certificate", reason)
    if not commutes(dec, act):
        raise PreconditionFailed("commutes", "action does not commute with the matrix")
    rows, cols = cert.row_order, cert.col_order
    if not stabilizes(act.row_action, rows):
        raise PreconditionFailed("row-stable", "row set is not stable under the action")
    if not stabilizes(act.col_action, cols):
        raise PreconditionFailed("col-stable", "column set is not stable under the action")
    f = cert.bijection
    for gr, gc in zip(act.row_action.generators, act.col_action.generators):
        for r in rows:
            if f[gr[r]] != gc[f[r]]:
                raise PreconditionFailed("equivariant", f"bijection is not equivariant at {r!r}")

    omap = orbit_map(act.row_action.restrict(rows))
    remaining = list(rows)
    tail = []
    while remaining:
        orb = set(omap[remaining[-1]])
        block = [r for r in remaining if r in orb]
        remaining = [r for r in remaining if r not in orb]
        tail[:0] = block
    return UnitriCertificate(tuple(tail), tuple(f[r] for r in tail))
