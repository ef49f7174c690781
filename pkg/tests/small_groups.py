"""Character data of a few small permutation groups, computed from scratch.

Ordinary characters are written as explicit class functions (signs, fixed
points, quotient maps) and certified irreducible and complete by the
orthogonality relations.  Brauer characters are the listed class functions
on l-regular elements; they are checked to be as many as the l-regular
classes and linearly independent.  Decomposition numbers, restriction
graphs, conjugation actions and degrees are then derived by linear algebra
and compared with the embedded fixtures.
"""

import cmath
from itertools import permutations

import numpy as np

W = cmath.exp(2j * cmath.pi / 3)


def compose(a, b):
    """(a*b)(x) = a(b(x))."""
    return tuple(a[b[i]] for i in range(len(b)))


def inverse(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def generate(gens, n):
    e = tuple(range(n))
    elems, frontier = {e}, [e]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = compose(g, x)
            if y not in elems:
                elems.add(y)
                frontier.append(y)
    return sorted(elems)


def order(g):
    e, x, k = tuple(range(len(g))), g, 1
    while x != e:
        x, k = compose(x, g), k + 1
    return k


def sign(g):
    seen, s = set(), 1
    for i in range(len(g)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = g[j]
            length += 1
        s *= (-1) ** (length - 1)
    return s


def fixed(g, points=None):
    pts = range(len(g)) if points is None else points
    return sum(1 for i in pts if g[i] == i)


def cycle_type(g):
    seen, out = set(), []
    for i in range(len(g)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = g[j]
            length += 1
        out.append(length)
    return tuple(sorted(out, reverse=True))


class Group:
    def __init__(self, elems, irr, ibr):
        self.elems = elems
        self.irr = irr  # name -> function
        self.ibr = ibr  # name -> function on ell-regular elements
        self.classes = self._classes()

    def _classes(self):
        left, out = set(self.elems), []
        while left:
            g = min(left)
            cls = {compose(compose(h, g), inverse(h)) for h in self.elems}
            out.append(sorted(cls))
            left -= cls
        return out

    def inner(self, f1, f2, elems=None):
        elems = self.elems if elems is None else elems
        return sum(f1(g) * f2(g).conjugate() for g in elems) / len(elems)


def is_orthonormal_basis(G):
    names = sorted(G.irr)
    if len(names) != len(G.classes):
        return False
    for a in names:
        for b in names:
            v = G.inner(lambda g: complex(G.irr[a](g)), lambda g: complex(G.irr[b](g)))
            if abs(v - (a == b)) > 1e-9:
                return False
    return True


def regular_classes(G, ell):
    return [c for c in G.classes if order(c[0]) % ell]


def brauer_ok(G, ell):
    reps = [c[0] for c in regular_classes(G, ell)]
    names = sorted(G.ibr)
    if len(names) != len(reps):
        return False
    M = np.array([[complex(G.ibr[n](g)) for g in reps] for n in names])
    return np.linalg.matrix_rank(M) == len(names)


def _solve(G, ell, values):
    """Coefficients of a class function on ell-regular classes in the Brauer basis."""
    reps = [c[0] for c in regular_classes(G, ell)]
    names = sorted(G.ibr)
    M = np.array([[complex(G.ibr[n](g)) for g in reps] for n in names]).T
    rhs = np.array([complex(values(g)) for g in reps])
    x = np.linalg.solve(M, rhs)
    out = {}
    for n, v in zip(names, x):
        k = round(v.real)
        assert abs(v - k) < 1e-9, (n, v)
        out[n] = k
    return out


def decomposition(G, ell):
    return {chi: _solve(G, ell, G.irr[chi]) for chi in sorted(G.irr)}


def restriction(G, N, kind, ell=None):
    """Upper label -> list of lower constituents (with multiplicity)."""
    out = {}
    if kind == "irr":
        for chi, f in sorted(G.irr.items()):
            parts = []
            for th, h in sorted(N.irr.items()):
                m = N.inner(lambda g: complex(f(g)), lambda g: complex(h(g)))
                k = round(m.real)
                assert abs(m - k) < 1e-9
                parts += [th] * k
            out[chi] = parts
    else:
        for phi, f in sorted(G.ibr.items()):
            coeff = _solve(N, ell, f)
            out[phi] = [x for x, k in sorted(coeff.items()) for _ in range(k)]
    return out


def _identify(target, funcs, elems):
    for name, f in sorted(funcs.items()):
        if all(abs(complex(target(g)) - complex(f(g))) < 1e-9 for g in elems):
            return name
    raise AssertionError("conjugate character not found")


def action(G, N, g, ell):
    gi = inverse(g)
    irr = {th: _identify(lambda x, h=h: h(compose(compose(g, x), gi)), N.irr, N.elems) for th, h in N.irr.items()}
    reg = [x for x in N.elems if order(x) % ell]
    ibr = {ph: _identify(lambda x, h=h: h(compose(compose(g, x), gi)), N.ibr, reg) for ph, h in N.ibr.items()}
    return {k: v for k, v in irr.items() if k != v}, {k: v for k, v in ibr.items() if k != v}


def degrees(G, ell):
    e = G.elems[0]
    return ({k: round(complex(f(e)).real) for k, f in G.irr.items()},
            {k: round(complex(f(e)).real) for k, f in G.ibr.items()})


# ------------------------------------------------------------------ groups

S4_ELEMS = sorted(permutations(range(4)))
A4_ELEMS = [g for g in S4_ELEMS if sign(g) == 1]
KLEIN = [(0, 1, 2, 3), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0)]
C = (1, 2, 0, 3)  # the 3-cycle (0 1 2)


def _a4_power(g):
    # g lies in C^k V; return k
    for k in range(3):
        ck = (0, 1, 2, 3)
        for _ in range(k):
            ck = compose(C, ck)
        if compose(inverse(ck), g) in KLEIN:
            return k
    raise AssertionError(g)


def _s4_chi2(g):
    return {(1, 1, 1, 1): 2, (2, 2): 2, (2, 1, 1): 0, (4,): 0, (3, 1): -1}[cycle_type(g)]


def _restrict_to(funcs, keep=None):
    return dict(funcs) if keep is None else {k: funcs[k] for k in keep}


def s4_a4(ell):
    s4_irr = {
        "1": lambda g: 1,
        "sgn": sign,
        "chi2": _s4_chi2,
        "chi3": lambda g: fixed(g) - 1,
        "chi3p": lambda g: sign(g) * (fixed(g) - 1),
    }
    a4_irr = {
        "1": lambda g: 1,
        "w": lambda g: W ** _a4_power(g),
        "wb": lambda g: W ** (2 * _a4_power(g)),
        "chi3": lambda g: fixed(g) - 1,
    }
    if ell == 3:
        s4_ibr = {"1^0": lambda g: 1, "sgn^0": sign, "phi3": s4_irr["chi3"], "phi3p": s4_irr["chi3p"]}
        a4_ibr = {"1^0": lambda g: 1, "phi3": a4_irr["chi3"]}
    elif ell == 2:
        s4_ibr = {"1^0": lambda g: 1, "phi2": _s4_chi2}
        a4_ibr = {"1^0": lambda g: 1, "w^0": a4_irr["w"], "wb^0": a4_irr["wb"]}
    else:
        s4_ibr = {k + "^0": f for k, f in s4_irr.items()}
        a4_ibr = {k + "^0": f for k, f in a4_irr.items()}
    S4 = Group(S4_ELEMS, s4_irr, s4_ibr)
    A4 = Group(A4_ELEMS, a4_irr, a4_ibr)
    return A4, S4, (1, 0, 2, 3)  # a transposition generates S4/A4


def s3_c3():
    S3_ELEMS = sorted(permutations(range(3)))
    C3_ELEMS = [g for g in S3_ELEMS if sign(g) == 1]
    c = (1, 2, 0)

    def k_of(g):
        x = (0, 1, 2)
        for k in range(3):
            if x == g:
                return k
            x = compose(c, x)
        raise AssertionError(g)

    S3 = Group(S3_ELEMS, {"1": lambda g: 1, "sgn": sign, "chi2": lambda g: fixed(g) - 1},
               {"1^0": lambda g: 1, "sgn^0": sign})
    C3 = Group(C3_ELEMS, {"1": lambda g: 1, "w": lambda g: W ** k_of(g), "wb": lambda g: W ** (2 * k_of(g))},
               {"1^0": lambda g: 1})
    return C3, S3, (1, 0, 2)


def d8_chain():
    r, s = (1, 2, 3, 0), (0, 3, 2, 1)
    elems = generate([r, s], 4)
    words = {}
    x = (0, 1, 2, 3)
    for i in range(4):
        words[x] = (i, 0)
        words[compose(x, s)] = (i, 1)
        x = compose(r, x)
    assert len(words) == 8 == len(elems)
    r2 = compose(r, r)
    V_ELEMS = sorted([(0, 1, 2, 3), r2, s, compose(r2, s)])
    Z_ELEMS = sorted([(0, 1, 2, 3), r2])

    def lin(a, b):
        return lambda g: a ** words[g][0] * b ** words[g][1]

    def chi(g):
        i, j = words[g]
        return 0 if j or i % 2 else (2 if i == 0 else -2)

    D8 = Group(elems, {"1": lin(1, 1), "e1": lin(1, -1), "e2": lin(-1, 1), "e3": lin(-1, -1), "chi": chi},
               {"1^0": lambda g: 1})
    # on V, r^2 = r^2 s^0 and s have words (2, 0) and (0, 1)

    def vlin(zv, sv):
        return lambda g: zv ** (words[g][0] // 2) * sv ** words[g][1]

    V = Group(V_ELEMS, {"1": vlin(1, 1), "a": vlin(1, -1), "z": vlin(-1, 1), "za": vlin(-1, -1)},
              {"1^0": lambda g: 1})
    Z = Group(Z_ELEMS, {"1": lambda g: 1, "z": lambda g: 1 if g == (0, 1, 2, 3) else -1}, {"1^0": lambda g: 1})
    return Z, V, D8, s, r


def c3_c6():
    c, t = (1, 2, 0, 3, 4), (0, 1, 2, 4, 3)
    elems = generate([c, t], 5)
    C3_ELEMS = generate([c], 5)

    def k_of(g):
        x = tuple(range(5))
        for k in range(3):
            if x[:3] == g[:3]:
                return k
            x = compose(c, x)
        raise AssertionError(g)

    def sg(g):
        return 1 if g[3] == 3 else -1

    base = {"1": lambda g: 1, "w": lambda g: W ** k_of(g), "wb": lambda g: W ** (2 * k_of(g))}
    irr6 = dict(base)
    irr6.update({k + "s": (lambda g, f=f: f(g) * sg(g)) for k, f in base.items()})
    C6 = Group(elems, irr6, {k + "^0": f for k, f in base.items()})
    C3 = Group(C3_ELEMS, dict(base), {k + "^0": f for k, f in base.items()})
    Z2 = Group(sorted([tuple(range(5)), t]), {"1": lambda g: 1, "s": sg}, {})
    return C3, C6, Z2, t


def central_flags(G, Z):
    """chi -> whether chi restricted to Z is a multiple of the trivial character."""
    out = {}
    for name, f in G.irr.items():
        m = Z.inner(lambda g: complex(f(g)), lambda g: 1)
        out[name] = abs(m - complex(f(G.elems[0]))) < 1e-9
    return out
