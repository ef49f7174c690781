"""Small finite fields by table lookup.

Elements of GF(p^k) are the integers ``0 .. p^k - 1`` read as base-p
coefficient vectors of polynomials modulo a fixed irreducible polynomial
(the lexicographically first monic one).
"""

from functools import lru_cache
from itertools import product


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def _poly_mod(a, m, p):
    a = list(a)
    k = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) > k:
        c = (a[-1] * inv_lead) % p
        if c:
            for i in range(len(m)):
                a[len(a) - len(m) + i] = (a[len(a) - len(m) + i] - c * m[i]) % p
        a.pop()
    return a + [0] * (k - len(a))


def _has_root_free_factorization(m, p):
    # brute force: m is irreducible iff no monic factor of degree 1..k//2
    k = len(m) - 1
    for d in range(1, k // 2 + 1):
        for coeffs in product(range(p), repeat=d):
            g = list(coeffs) + [1]
            if not any(_poly_mod(m, g, p)[: d]):
                return False
    return True


def irreducible(p, k):
    """Lexicographically first monic irreducible polynomial of degree k."""
    if k == 1:
        return [0, 1]
    for coeffs in product(range(p), repeat=k):
        m = list(coeffs) + [1]
        if m[0] and _has_root_free_factorization(m, p):
            return m
    raise ValueError(f"no irreducible polynomial of degree {k} over GF({p})")


class GF:
    def __init__(self, p, k=1):
        self.p, self.k, self.q = p, k, p**k
        self.modulus = irreducible(p, k)
        q = self.q
        digits = [self._digits(x) for x in range(q)]
        self.add = [[self._encode([(a + b) % p for a, b in zip(digits[x], digits[y])]) for y in range(q)] for x in range(q)]
        self.neg = [self._encode([(-a) % p for a in digits[x]]) for x in range(q)]
        self.mul = [[self._encode(_poly_mod(_poly_mul(digits[x], digits[y], p), self.modulus, p)) for y in range(q)] for x in range(q)]
        self.inv = [None] + [next(y for y in range(1, q) if self.mul[x][y] == 1) for x in range(1, q)]

    def _digits(self, x):
        out = []
        for _ in range(self.k):
            out.append(x % self.p)
            x //= self.p
        return out

    def _encode(self, digits):
        x = 0
        for d in reversed(digits):
            x = x * self.p + d
        return x

    def power(self, x, e):
        out = 1
        for _ in range(e):
            out = self.mul[out][x]
        return out


@lru_cache(maxsize=None)
def field(q):
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k = 0
    n = q
    while n > 1:
        if n % p:
            raise ValueError(f"{q} is not a prime power")
        n //= p
        k += 1
    return GF(p, k)


def mat_mul(F, a, b, n):
    mul, add = F.mul, F.add
    out = []
    for i in range(n):
        for j in range(n):
            s = 0
            for t in range(n):
                s = add[s][mul[a[i * n + t]][b[t * n + j]]]
            out.append(s)
    return tuple(out)


def is_invertible(F, a, n):
    rows = [list(a[i * n:(i + 1) * n]) for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col]), None)
        if piv is None:
            return False
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = F.inv[rows[col][col]]
        for r in range(col + 1, n):
            if rows[r][col]:
                c = F.mul[rows[r][col]][inv]
                rows[r] = [F.add[x][F.neg[F.mul[c][y]]] for x, y in zip(rows[r], rows[col])]
    return True
