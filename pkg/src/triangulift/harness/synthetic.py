"""Random instances with planted answers.

The quotient ``G/N`` is modelled as ``C_{r_1} x ... x C_{r_k}`` acting on
the bottom labels by commuting permutations, one cyclic factor per step.
Upper levels are built from lower ones by the Clifford rules for a
prime-index normal subgroup (a regular orbit induces to one character, a
fixed character has ``r`` extensions), with decomposition numbers
computed from the bottom matrix.  The generator tracks, alongside the
data, the basic sets and the bijection that the going-up construction
must produce; these are the planted answers.
"""

import random
from dataclasses import dataclass
from itertools import product

from ..clifford import CentralData, CliffordTower, Level, Step
from ..exact_matrix import DecMatrix
from ..perm_action import LabeledPermGroup, PairedAction


def _rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


# ------------------------------------------------------------ bottom data


@dataclass
class _Points:
    """Points of one orbit type: those coordinates in ``support`` move."""

    support: tuple
    orders: tuple

    def points(self, tag, oid):
        ranges = [range(self.orders[i]) if i in self.support else range(1) for i in range(len(self.orders))]
        return [(tag, oid, c) for c in product(*ranges)]


def _shift(pt, i, orders, support, k=1):
    tag, oid, c = pt
    if i not in support:
        return pt
    c = list(c)
    c[i] = (c[i] + k) % orders[i]
    return (tag, oid, tuple(c))


def _group_elements(orders):
    return list(product(*[range(r) for r in orders]))


def _apply(g, pt, orders, supports):
    for i, k in enumerate(g):
        pt = _shift(pt, i, orders, supports[pt[1]], k)
    return pt


def _fill_invariant(D, rows, cols, orders, supports, pick, skip=None):
    """Fill ``D[(theta, phi)]`` constant on group orbits of pairs."""
    elems = _group_elements(orders)
    for th in rows:
        for ph in cols:
            if (th, ph) in D or (skip and skip(th, ph)):
                continue
            v = pick(th, ph)
            for g in elems:
                D[(_apply(g, th, orders, supports), _apply(g, ph, orders, supports))] = v


@dataclass
class _Level:
    irr: list
    ibr: list
    D: dict
    irr_deg: dict
    ibr_deg: dict
    acts: list  # remaining generators: (irr map, ibr map)


def _bottom(rng, orders, n_basic, n_extra_irr, n_extra_ibr, fixed_axes=(), density=0.35):
    """Bottom level with basic points (rows ``('p', ...)``, columns
    ``('q', ...)`` in matching positions) and some extra rows/columns."""
    k = len(orders)
    movable = [i for i in range(k) if i not in fixed_axes]

    def support():
        return tuple(i for i in movable if rng.random() < 0.4)

    supports = {}
    basic, extra_irr, extra_ibr = [], [], []
    oid = 0
    for count, bucket in ((n_basic, basic), (n_extra_irr, extra_irr), (n_extra_ibr, extra_ibr)):
        for _ in range(count):
            supports[oid] = support()
            bucket.append(oid)
            oid += 1

    def pts(tag, ids):
        return [p for o in ids for p in _Points(supports[o], orders).points(tag, o)]

    B = pts("p", basic)
    C = pts("q", basic)
    irr = B + pts("p", extra_irr)
    ibr = C + pts("q", extra_ibr)

    # triangular structure: basic orbits in a random order, identity on the diagonal
    order = list(basic)
    rng.shuffle(order)
    rank = {o: i for i, o in enumerate(order)}
    D = {}
    for th in B:
        for ph in C:
            if th[1] == ph[1]:
                D[(th, ph)] = 1 if th[2] == ph[2] else 0
            elif rank[th[1]] < rank[ph[1]]:
                D[(th, ph)] = 0

    def pick(th, ph):
        return rng.choice((1, 2)) if rng.random() < density else 0

    _fill_invariant(D, B, C, orders, supports, pick)
    _fill_invariant(D, irr, ibr, orders, supports, pick)
    # every row needs a non-zero entry
    for th in irr:
        if not any(D[(th, ph)] for ph in ibr):
            ph = rng.choice(ibr)
            D.pop((th, ph))
            _fill_invariant(D, [th], [ph], orders, supports, lambda a, b: 1)

    ibr_deg = {}
    for o in basic + extra_ibr:
        d = rng.randint(1, 4)
        for p in _Points(supports[o], orders).points("q", o):
            ibr_deg[p] = d
    irr_deg = {th: sum(D[(th, ph)] * ibr_deg[ph] for ph in ibr) for th in irr}

    acts = []
    for i in range(k):
        acts.append(({p: _shift(p, i, orders, supports[p[1]]) for p in irr},
                     {p: _shift(p, i, orders, supports[p[1]]) for p in ibr}))
    f = {th: ("q", th[1], th[2]) for th in B}
    return _Level(irr, ibr, D, irr_deg, ibr_deg, acts), B, C, f


def _orbits(perm, labels):
    seen, out = set(), []
    for x in sorted(labels):
        if x in seen:
            continue
        orb = [x]
        y = perm[x]
        while y != x:
            orb.append(y)
            y = perm[y]
        seen.update(orb)
        out.append(tuple(sorted(orb)))
    return out


def _up(lev, r, ell):
    """Next level; returns (level, rest_irr, rest_ibr, ext, irr map, ibr map)."""
    s_irr, s_ibr = lev.acts[0]
    rest_irr, rest_ibr = {}, {}
    for O in _orbits(s_irr, lev.irr):
        if len(O) > 1:
            rest_irr[("I", O)] = O
        else:
            for k in range(r):
                rest_irr[("E", O[0], k)] = O
    for O in _orbits(s_ibr, lev.ibr):
        if len(O) > 1:
            rest_ibr[("I", O)] = O
        else:
            for k in range(1 if r == ell else r):
                rest_ibr[("E", O[0], k)] = O
    irr, ibr = sorted(rest_irr), sorted(rest_ibr)
    D = {}
    for X in irr:
        below = rest_irr[X]
        for Y in ibr:
            if Y[0] == "I":
                v = sum(lev.D[(t, Y[1][0])] for t in below)
            elif r == ell:
                v = sum(lev.D[(t, Y[1])] for t in below)
            elif X[0] == "E":
                v = lev.D[(X[1], Y[1])] if X[2] == Y[2] else 0
            else:
                v = lev.D[(below[0], Y[1])]
            D[(X, Y)] = v
    irr_deg = {X: sum(lev.irr_deg[t] for t in rest_irr[X]) for X in irr}
    ibr_deg = {Y: sum(lev.ibr_deg[t] for t in rest_ibr[Y]) for Y in ibr}

    def lift_map(m):
        def go(X):
            if X[0] == "I":
                return ("I", tuple(sorted(m[t] for t in X[1])))
            return ("E", m[X[1]], X[2])
        return go

    acts = []
    for ti, tb in lev.acts[1:]:
        gi, gb = lift_map(ti), lift_map(tb)
        acts.append(({X: gi(X) for X in irr}, {Y: gb(Y) for Y in ibr}))
    ext = {O[0]: ("E", O[0], 0) for O in _orbits(s_irr, lev.irr) if len(O) == 1} if r == ell else {}
    return _Level(irr, ibr, D, irr_deg, ibr_deg, acts), rest_irr, rest_ibr, ext


@dataclass
class Plant:
    """A generated tower with the answers it was built to have."""

    tower: CliffordTower
    irr: tuple  # expected top basic set
    ibr: tuple  # expected top Brauer set
    bijection: dict
    trace: tuple  # (irr, ibr) per level


def planted_tower(seed, ell, indices, *, n_basic=3, n_extra_irr=2, n_extra_ibr=1,
                  central=False, global_ext=False):
    """Tower ``G_0 < ... < G_k`` with step indices ``indices``.

    With ``central=True`` the first step is a central factor of order
    ``ell`` (trivial action) and the top carries flags marking characters
    trivial on it.  With ``global_ext=True`` (all indices equal to ``ell``)
    the tower carries the chain of each seed character through the
    extensions chosen at each step.
    """
    rng = _rng(seed)
    indices = tuple(indices)
    fixed = (0,) if central else ()
    lev, B, C, f = _bottom(rng, indices, n_basic, n_extra_irr, n_extra_ibr, fixed_axes=fixed)
    raw = [lev]
    rests, exts = [], []
    Bs, Cs = [tuple(sorted(B))], [tuple(sorted(C))]
    chains = {th: [th] for th in B}
    for r in indices:
        s_irr = lev.acts[0][0]
        new, ri, rb, ext = _up(lev, r, ell)
        Bset, Cset = set(B), set(C)
        if r != ell:
            B = [X for X in new.irr if ri[X][0] in Bset]
        else:
            B = [X for X in new.irr if ri[X][0] in Bset and (X[0] == "I" or X[2] == 0)]
        C = [Y for Y in new.ibr if rb[Y][0] in Cset]
        nf = {}
        for X in B:
            if X[0] == "I":
                nf[X] = ("I", tuple(sorted(f[t] for t in X[1])))
            else:
                nf[X] = ("E", f[X[1]], X[2])
        f = nf
        for th, ch in chains.items():
            x = ch[-1]
            ch.append(("E", x, 0) if s_irr[x] == x else ("I", tuple(sorted(_orbit_of(s_irr, x)))))
        raw.append(new)
        rests.append((ri, rb))
        exts.append(ext)
        Bs.append(tuple(B))
        Cs.append(tuple(C))
        lev = new

    # relabel with shuffled names, level by level
    names = []
    for i, L in enumerate(raw):
        ni = _shuffled_names(rng, L.irr, f"x{i}.")
        nb = _shuffled_names(rng, L.ibr, f"y{i}.")
        names.append((ni, nb))
    levels = []
    for i, L in enumerate(raw):
        ni, nb = names[i]
        rows = sorted(ni.values())
        cols = sorted(nb.values())
        inv_i = {v: k for k, v in ni.items()}
        inv_b = {v: k for k, v in nb.items()}
        ent = [[L.D[(inv_i[a], inv_b[b])] for b in cols] for a in rows]
        levels.append(Level(f"G{i}", DecMatrix(rows, cols, ent),
                            {ni[x]: d for x, d in L.irr_deg.items()},
                            {nb[x]: d for x, d in L.ibr_deg.items()}))
    steps = []
    for i, r in enumerate(indices):
        (li, lb), (ui, ub) = names[i], names[i + 1]
        ri, rb = rests[i]
        s_irr, s_ibr = raw[i].acts[0]
        act = PairedAction(
            LabeledPermGroup(levels[i].irr, ({li[x]: li[y] for x, y in s_irr.items() if x != y},)),
            LabeledPermGroup(levels[i].ibr, ({lb[x]: lb[y] for x, y in s_ibr.items() if x != y},)),
        )
        steps.append(Step(
            f"G{i}", f"G{i + 1}", r,
            {ui[X]: tuple(li[t] for t in ri[X]) for X in ri},
            {ub[Y]: tuple(lb[t] for t in rb[Y]) for Y in rb},
            act,
            {li[t]: ui[X] for t, X in exts[i].items()},
        ))
    top_i, top_b = names[-1]
    cdata = None
    if central:
        flags = {top_i[X]: _central_flag(X, len(indices)) for X in raw[-1].irr}
        cdata = CentralData(flags)
    gext = None
    if global_ext:
        gext = {names[0][0][th]: tuple(names[i][0][x] for i, x in enumerate(ch)) for th, ch in chains.items()}
    tower = CliffordTower(ell, tuple(levels), tuple(steps),
                          tuple(sorted(names[0][0][x] for x in Bs[0])),
                          tuple(sorted(names[0][1][x] for x in Cs[0])), cdata, gext)
    trace = tuple((tuple(sorted(names[i][0][x] for x in Bs[i])), tuple(sorted(names[i][1][x] for x in Cs[i])))
                  for i in range(len(raw)))
    bij = {top_i[X]: top_b[Y] for X, Y in f.items()}
    return Plant(tower, trace[-1][0], trace[-1][1], bij, trace)


def _orbit_of(perm, x):
    out, y = [x], perm[x]
    while y != x:
        out.append(y)
        y = perm[y]
    return tuple(out)


def _central_flag(X, depth):
    # unwind to the level-1 label and read its extension index
    while depth > 1:
        X = X[1][0] if X[0] == "I" else X[1]
        depth -= 1
    return X[2] == 0


def _shuffled_names(rng, labels, prefix):
    idx = list(range(len(labels)))
    rng.shuffle(idx)
    width = len(str(max(len(labels) - 1, 0)))
    return {x: f"{prefix}{i:0{width}d}" for x, i in zip(labels, idx)}


# ---------------------------------------------------- commuting instances


@dataclass
class CommutingInstance:
    dec: DecMatrix
    action: PairedAction
    bijection: dict


def commuting_instance(seed, max_n=7, orders=None):
    """Square unitriangularizable matrix with a commuting paired action of
    an abelian group (one or two cyclic generators of order 2 or 3)."""
    rng = _rng(seed)
    if orders is None:
        orders = tuple(rng.choice((2, 3)) for _ in range(rng.randint(1, 2)))
    while True:
        lev, B, C, f = _bottom(rng, orders, rng.randint(1, 4), 0, 0, density=0.5)
        if 1 <= len(B) <= max_n:
            break
    ni = _shuffled_names(rng, B, "r")
    nb = _shuffled_names(rng, C, "c")
    rows, cols = sorted(ni.values()), sorted(nb.values())
    inv_i = {v: k for k, v in ni.items()}
    inv_b = {v: k for k, v in nb.items()}
    dec = DecMatrix(rows, cols, [[lev.D[(inv_i[a], inv_b[b])] for b in cols] for a in rows])
    gi = tuple({ni[x]: ni[y] for x, y in a.items() if x != y} for a, _ in lev.acts)
    gb = tuple({nb[x]: nb[y] for x, y in b.items() if x != y} for _, b in lev.acts)
    act = PairedAction(LabeledPermGroup(tuple(rows), gi), LabeledPermGroup(tuple(cols), gb))
    return CommutingInstance(dec, act, {ni[t]: nb[f[t]] for t in B})


def random_matrix(rng, n, values=(0, 1, 2), weights=None):
    rows = [f"r{i}" for i in range(n)]
    cols = [f"c{j}" for j in range(n)]
    ent = [[rng.choices(values, weights)[0] for _ in range(n)] for _ in range(n)]
    return DecMatrix(rows, cols, ent)


def planted_matrix(rng, n, values=(0, 1, 2)):
    """Random unitriangular matrix with shuffled rows, columns and labels."""
    ent = [[(1 if i == j else (rng.choice(values) if j < i else 0)) for j in range(n)] for i in range(n)]
    rp = list(range(n))
    cp = list(range(n))
    rng.shuffle(rp)
    rng.shuffle(cp)
    rows = [f"r{i}" for i in range(n)]
    cols = [f"c{j}" for j in range(n)]
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            out[rp[i]][cp[j]] = ent[i][j]
    bij = {rows[rp[i]]: cols[cp[i]] for i in range(n)}
    return DecMatrix(rows, cols, out), bij
