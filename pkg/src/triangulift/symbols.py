"""Admissible symbols for GL_n(eps*q), their symmetries, and unipotent labels.

Roots of unity of order prime to ``p`` are written additively as fractions
in ``[0, 1)``: the root ``exp(2*pi*i*a/m)`` is ``Fraction(a, m)``.  Raising
to a power ``k`` becomes multiplication by ``k`` modulo 1, inversion is
negation, and multiplying by another root is addition.  A Frobenius orbit
is the orbit under multiplication by ``eps*q`` and is stored through its
smallest member, ordered by ``(denominator, numerator)``.
"""

import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import EnumerationLimit, InvalidInput, PreconditionFailed

DEFAULT_MAX_ENUM = 10**6


def max_enum():
    """Enumeration bound, overridable with ``TRIANGULIFT_MAX_ENUM``."""
    raw = os.environ.get("TRIANGULIFT_MAX_ENUM")
    if not raw:
        return DEFAULT_MAX_ENUM
    try:
        return int(raw)
    except ValueError:
        raise InvalidInput(f"TRIANGULIFT_MAX_ENUM must be an integer, got {raw!r}") from None


# ------------------------------------------------------------- partitions


def partition(parts):
    parts = tuple(int(x) for x in parts)
    if any(x <= 0 for x in parts):
        raise InvalidInput(f"partition parts must be positive: {parts}")
    if any(a < b for a, b in zip(parts, parts[1:])):
        raise InvalidInput(f"partition parts must be weakly decreasing: {parts}")
    return parts


def size(mu):
    return sum(mu)


def transpose(mu):
    if not mu:
        return ()
    return tuple(sum(1 for x in mu if x > j) for j in range(mu[0]))


def delta(mu):
    """gcd of the parts; 0 for the empty partition."""
    g = 0
    for x in mu:
        g = gcd(g, x)
    return g


def multiplicities(mu):
    out = {}
    for x in mu:
        out[x] = out.get(x, 0) + 1
    return out


def divide(mu, h):
    """Divide every part multiplicity of ``mu`` by ``h``."""
    if h <= 0:
        raise InvalidInput(f"divisor must be positive, got {h}")
    mult = multiplicities(mu)
    for part, t in mult.items():
        if t % h:
            raise InvalidInput(f"{h} does not divide the multiplicity {t} of part {part} in {mu}")
    return tuple(x for part in sorted(mult, reverse=True) for x in [part] * (mult[part] // h))


def partitions(n, largest=None):
    """Partitions of ``n`` in reverse lexicographic order."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


# ------------------------------------------------------------------ roots


def root(a, m=None):
    """A p'-root of unity as a reduced fraction in [0, 1)."""
    x = Fraction(a) if m is None else Fraction(a, m)
    return x - (x.numerator // x.denominator)


def root_key(x):
    return (x.denominator, x.numerator)


def format_root(x):
    return f"{x.numerator}/{x.denominator}"


def parse_root(text):
    try:
        if isinstance(text, (list, tuple)):
            a, m = text
            return root(int(a), int(m))
        a, _, m = str(text).partition("/")
        return root(int(a), int(m or 1))
    except (ValueError, ZeroDivisionError):
        raise InvalidInput(f"cannot read root of unity {text!r}") from None


def ell_part(n, ell):
    n = abs(n)
    out = 1
    while n and n % ell == 0:
        n //= ell
        out *= ell
    return out


def _prime_power_exponent(q, p):
    f = 0
    while q > 1 and q % p == 0:
        q //= p
        f += 1
    return f if q == 1 and f >= 1 else None


def _is_prime(n):
    return n >= 2 and all(n % i for i in range(2, int(n**0.5) + 1))


@dataclass(frozen=True)
class Context:
    """Parameters ``(n, eps, q, p)`` of GL_n(eps*q); q a power of the prime p."""

    n: int
    eps: int
    q: int
    p: int

    def __post_init__(self):
        if self.eps not in (1, -1):
            raise InvalidInput(f"eps must be +1 or -1, got {self.eps}")
        if not _is_prime(self.p):
            raise InvalidInput(f"p = {self.p} is not prime")
        if _prime_power_exponent(self.q, self.p) is None:
            raise InvalidInput(f"q = {self.q} is not a power of p = {self.p}")
        if self.n < 1:
            raise InvalidInput(f"n must be at least 1, got {self.n}")

    @property
    def eq(self):
        return self.eps * self.q

    @property
    def f(self):
        return _prime_power_exponent(self.q, self.p)

    def check_root(self, x):
        if x.denominator % self.p == 0:
            raise InvalidInput(f"root {format_root(x)} has order divisible by p = {self.p}")


def deg(sigma, eps, q):
    """Smallest d >= 1 with ord(sigma) | (eps*q)^d - 1."""
    m = sigma.denominator
    if m == 1:
        return 1
    eq = (eps * q) % m
    if gcd(eq, m) != 1:
        raise InvalidInput(f"root {format_root(sigma)} is not prime to q = {q}")
    x, d = eq, 1
    while x != 1:
        x = (x * eq) % m
        d += 1
    return d


@dataclass(frozen=True)
class FrobOrbit:
    rep: Fraction
    deg: int

    @property
    def key(self):
        return root_key(self.rep)

    def members(self, eq):
        out, x = [], self.rep
        for _ in range(self.deg):
            out.append(x)
            x = root(x * eq)
        return out

    def __str__(self):
        return f"[{format_root(self.rep)}]"


def frob_orbit(sigma, mult):
    """Orbit of ``sigma`` under multiplication by ``mult``."""
    sigma = root(sigma)
    seen = [sigma]
    x = root(sigma * mult)
    while x != sigma:
        seen.append(x)
        x = root(x * mult)
    return FrobOrbit(min(seen, key=root_key), len(seen))


@dataclass(frozen=True)
class AdmissibleSymbol:
    """Canonical multiset of (Frobenius orbit, partition) pairs.

    Build with :func:`make_symbol`, which canonicalizes and checks
    admissibility.
    """

    ctx: Context
    pairs: tuple

    @property
    def key(self):
        return tuple((o.key, mu) for o, mu in self.pairs)

    def weighted_size(self):
        return sum(o.deg * size(mu) for o, mu in self.pairs)

    def __str__(self):
        inner = ", ".join(f"({o}, {list(mu)})" for o, mu in self.pairs)
        return f"[{inner}]"


def make_symbol(ctx, pairs):
    """Canonical symbol from (root or orbit, partition) pairs."""
    canon = {}
    for sigma, mu in pairs:
        rep = sigma.rep if isinstance(sigma, FrobOrbit) else root(sigma)
        ctx.check_root(rep)
        o = frob_orbit(rep, ctx.eq)
        mu = partition(mu)
        if not mu:
            raise InvalidInput("empty partition in a symbol pair")
        if o in canon:
            raise InvalidInput(f"orbit {o} occurs twice")
        canon[o] = mu
    s = AdmissibleSymbol(ctx, tuple(sorted(canon.items(), key=lambda t: t[0].key)))
    if s.weighted_size() != ctx.n:
        raise InvalidInput(f"weighted size {s.weighted_size()} != n = {ctx.n}")
    return s


def frobenius_orbits(ctx, max_deg=None):
    """All Frobenius orbits of degree <= max_deg (default n), sorted."""
    max_deg = ctx.n if max_deg is None else max_deg
    budget = max_enum()
    found = {}
    spent = 0
    for d in range(1, max_deg + 1):
        m = abs(ctx.eq**d - 1)
        spent += m
        if spent > budget:
            raise EnumerationLimit(f"orbit enumeration needs more than {budget} roots")
        for a in range(m):
            x = Fraction(a, m)
            if root_key(x) in found:
                continue
            o = frob_orbit(x, ctx.eq)
            if o.deg == d:
                for y in o.members(ctx.eq):
                    found[root_key(y)] = o
    return sorted({o for o in found.values()}, key=lambda o: o.key)


def enumerate_symbols(ctx):
    """All (n, eps*q)-admissible symbols in canonical order."""
    orbs = frobenius_orbits(ctx)
    budget = max_enum()
    out = []

    def rec(start, rem, acc):
        if rem == 0:
            out.append(AdmissibleSymbol(ctx, tuple(acc)))
            if len(out) > budget:
                raise EnumerationLimit(f"more than {budget} symbols")
            return
        for j in range(start, len(orbs)):
            o = orbs[j]
            if o.deg > rem:
                continue
            for k in range(1, rem // o.deg + 1):
                for mu in partitions(k):
                    acc.append((o, mu))
                    rec(j + 1, rem - o.deg * k, acc)
                    acc.pop()

    rec(0, ctx.n, [])
    out.sort(key=lambda s: s.key)
    return out


# ---------------------------------------------------------------- actions


def _remap(s, fn):
    return make_symbol(s.ctx, [(fn(o.rep), mu) for o, mu in s.pairs])


def act_frobenius(s, k=1):
    """sigma -> sigma^(p^k) on every pair."""
    if k < 0:
        raise InvalidInput("Frobenius exponent must be non-negative")
    mult = s.ctx.p**k
    return _remap(s, lambda x: x * mult)


def act_dual(s):
    """sigma -> sigma^(-1) on every pair."""
    return _remap(s, lambda x: -x)


def act_linear(s, z):
    """Multiply every sigma by a root z of order dividing q - eps."""
    z = root(z)
    if (z * (s.ctx.q - s.ctx.eps)).denominator != 1:
        raise InvalidInput(f"z = {format_root(z)} does not have order dividing q - eps = {s.ctx.q - s.ctx.eps}")
    return _remap(s, lambda x: x + z)


def base_field(ctx, e, twisted=None):
    """``q0`` for the subgroup generated by the e-th power of the field
    automorphism; twisted (unitary) contexts need e even with 2f/e odd."""
    if twisted is None:
        twisted = ctx.eps == -1
    if twisted != (ctx.eps == -1):
        raise InvalidInput("the graph-automorphism twist applies exactly when eps = -1")
    f = ctx.f
    if not isinstance(e, int) or e < 1:
        raise InvalidInput(f"e must be a positive integer, got {e!r}")
    if not twisted:
        if f % e:
            raise InvalidInput(f"e = {e} does not divide f = {f}")
        return ctx.p**e
    if e % 2 or (2 * f) % e or ((2 * f) // e) % 2 == 0:
        raise InvalidInput(f"twisted case needs e even and 2f/e odd (f = {f}, e = {e})")
    return ctx.p ** (e // 2)


def is_invariant(s, e, twisted=None):
    """Stable under sigma -> sigma^(eps*q0) as a multiset of pairs."""
    q0 = base_field(s.ctx, e, twisted)
    mult = s.ctx.eps * q0
    moved = {(frob_orbit(o.rep * mult, s.ctx.eq), mu) for o, mu in s.pairs}
    return moved == set(s.pairs)


def xi_B(s, e, twisted=None):
    """Regroup the (eps*q)-orbits of an invariant symbol into (eps*q0)-orbits."""
    q0 = base_field(s.ctx, e, twisted)
    if not is_invariant(s, e, twisted):
        raise PreconditionFailed("invariant", f"symbol {s} is not invariant")
    ctx0 = Context(s.ctx.n, s.ctx.eps, q0, s.ctx.p)
    grouped = {}
    for o, mu in s.pairs:
        o0 = frob_orbit(o.rep, ctx0.eq)
        if grouped.setdefault(o0, mu) != mu:
            raise PreconditionFailed("invariant", f"orbit {o0} carries two partitions")
    return make_symbol(ctx0, list(grouped.items()))


def xi_report(ctx, e, twisted=None):
    """Invariant symbols, their images, and whether the map is a bijection
    onto all symbols over the base field."""
    q0 = base_field(ctx, e, twisted)
    inv = [s for s in enumerate_symbols(ctx) if is_invariant(s, e, twisted)]
    images = [xi_B(s, e, twisted) for s in inv]
    target = enumerate_symbols(Context(ctx.n, ctx.eps, q0, ctx.p))
    injective = len({t.key for t in images}) == len(images)
    onto = {t.key for t in images} == {t.key for t in target}
    return {"q0": q0, "invariant": inv, "images": images, "target": target,
            "injective": injective, "surjective": onto}


# --------------------------------------------------- ell-modular basic set


def ell_regular(s, ell):
    return all(o.rep.denominator % ell for o, _ in s.pairs)


def basic_set_ell_power(s, ell):
    """ell-part of gcd(q - eps, Delta(mu') for every partition mu)."""
    g = s.ctx.q - s.ctx.eps
    for _, mu in s.pairs:
        g = gcd(g, delta(transpose(mu)))
    return ell_part(g, ell)


def basic_set_pairs(s, ell, reading="d", w_numerator=1):
    """Raw pairs of the transformed symbol, before admissibility checks.

    ``reading="d"`` uses exponents ``0 .. ell^d - 1`` of the root ``w`` of
    order ``ell^d``.  ``reading="a"`` uses ``0 .. ell^a - 1`` with ``a`` the
    number of pairs, which breaks the degree sum; it is kept for the test
    that demonstrates this.
    """
    ld = basic_set_ell_power(s, ell)
    if gcd(w_numerator, ld) != 1:
        raise InvalidInput(f"w = {w_numerator}/{ld} does not have order {ld}")
    w = root(w_numerator, ld)
    count = ld if reading == "d" else ell ** len(s.pairs)
    if reading not in ("d", "a"):
        raise InvalidInput(f"unknown reading {reading!r}")
    out = []
    for o, mu in s.pairs:
        nu = divide(mu, ld)
        for j in range(count):
            out.append((frob_orbit(o.rep + j * w, s.ctx.eq), nu))
    return out


def weighted_size_of(pairs):
    return sum(o.deg * size(mu) for o, mu in pairs)


def ell_basic_set(ctx, ell, w_numerator=1):
    """Transform of the ell'-semisimple symbols into the basic set."""
    if not _is_prime(ell) or ell == ctx.p:
        raise InvalidInput(f"ell must be a prime different from p = {ctx.p}")
    out = {}
    for s in enumerate_symbols(ctx):
        if not ell_regular(s, ell):
            continue
        t = make_symbol(ctx, basic_set_pairs(s, ell, "d", w_numerator))
        assert t.key not in out, f"duplicate symbol {t}"
        out[t.key] = t
    return [out[k] for k in sorted(out)]


# ----------------------------------------------------------- unipotent labels


@dataclass(frozen=True)
class UnipotentLabel:
    """Map j -> m(j), stored as sorted (j, m(j)) pairs with m(j) > 0."""

    m: tuple

    @property
    def k(self):
        return sum(1 for j, c in self.m if j % 2 == 0 and c)

    @property
    def multiplicity(self):
        return 2**self.k

    @property
    def all_even(self):
        return all(c % 2 == 0 for _, c in self.m)

    def as_dict(self):
        return dict(self.m)


@dataclass(frozen=True)
class UnipotentLabels:
    n: int
    labels: tuple

    @property
    def u1(self):
        return tuple(x for x in self.labels if x.all_even)

    @property
    def u2(self):
        return tuple(x for x in self.labels if not x.all_even)

    @staticmethod
    def count(labels):
        return sum(x.multiplicity for x in labels)


def unipotent_labels(n):
    """Maps with sum j*m(j) = 2n and m(j) even for odd j, with 2^k weights."""
    if n < 1:
        raise InvalidInput(f"n must be at least 1, got {n}")
    out = []
    budget = max_enum()
    for lam in partitions(2 * n):
        mult = multiplicities(lam)
        if any(j % 2 and c % 2 for j, c in mult.items()):
            continue
        out.append(UnipotentLabel(tuple(sorted(mult.items()))))
        if len(out) > budget:
            raise EnumerationLimit(f"more than {budget} unipotent labels")
    out.sort(key=lambda x: x.m)
    return UnipotentLabels(n, tuple(out))
