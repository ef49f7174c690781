"""Brute-force oracles used by the tests and the fixture suite.

None of these share code paths with the constructions they check: the
ordering oracles enumerate every (row order, column order) pair, and the
class-count oracle enumerates matrices over finite fields.
"""

from itertools import combinations, permutations, product

import numpy as np

from .. import kernels
from ..errors import EnumerationLimit, InvalidInput
from ..exact_matrix import DecMatrix, UnitriCertificate, submatrix
from ..perm_action import is_interval_order
from .finite_field import field, is_invertible, mat_mul

GROUP_ORDER_LIMIT = 10**5
MATRIX_LIMIT = 10**6


def exhaustive_certificates(dec):
    """Every certificate of a square matrix, by literal enumeration."""
    if not dec.is_square():
        return []
    pairs = kernels.exhaustive(np.ascontiguousarray(dec.entries))
    return [
        UnitriCertificate(tuple(dec.rows[i] for i in rp), tuple(dec.cols[j] for j in cp))
        for rp, cp in pairs
    ]


def exhaustive_bijections(dec):
    return {tuple(sorted(c.bijection.items())) for c in exhaustive_certificates(dec)}


def has_certificate_exhaustive(dec):
    return bool(exhaustive_certificates(dec))


def basic_subsets(dec, candidates, cols):
    """Subsets of ``candidates`` giving a unitriangular square block with ``cols``."""
    cols = tuple(cols)
    out = []
    for sub in combinations(sorted(candidates), len(cols)):
        if has_certificate_exhaustive(submatrix(dec, sub, cols)):
            out.append(sub)
    return out


def interval_certificates(dec, cert, group):
    """All reorderings of ``cert`` (columns following its bijection) that are
    certificates and have every orbit of ``group`` as an interval."""
    f = cert.bijection
    rows = cert.row_order
    out = []
    for order in permutations(rows):
        c = UnitriCertificate(order, tuple(f[r] for r in order))
        block = submatrix(dec, rows, f.values())
        ri = [block.row_pos(r) for r in order]
        ci = [block.col_pos(x) for x in c.col_order]
        sq = block.entries[np.ix_(ri, ci)]
        if (np.diag(sq) == 1).all() and not np.triu(sq, 1).any() and is_interval_order(order, group):
            out.append(c)
    return out


# ----------------------------------------------------- conjugacy classes


def _group_elements(n, eps, q):
    if eps == 1:
        F = field(q)
        if q ** (n * n) > MATRIX_LIMIT:
            raise EnumerationLimit(f"{q}^{n * n} matrices exceed the enumeration limit")
        elems = [m for m in product(range(q), repeat=n * n) if is_invertible(F, m, n)]
        return F, elems
    F = field(q * q)
    if (q * q) ** (n * n) > MATRIX_LIMIT:
        raise EnumerationLimit(f"{q * q}^{n * n} matrices exceed the enumeration limit")
    conj = [F.power(x, q) for x in range(F.q)]
    ident = tuple(1 if i == j else 0 for i in range(n) for j in range(n))
    elems = []
    for m in product(range(F.q), repeat=n * n):
        # conjugate transpose times m must be the identity
        mh = tuple(conj[m[j * n + i]] for i in range(n) for j in range(n))
        if mat_mul(F, mh, m, n) == ident:
            elems.append(m)
    return F, elems


def _order(F, g, n, ident):
    x, k = g, 1
    while x != ident:
        x = mat_mul(F, x, g, n)
        k += 1
    return k


def oracle_classes(n, eps, q, ell=None):
    """Number of conjugacy classes of GL_n(q) (eps = 1) or GU_n(q) (eps = -1),
    optionally only those of ell-regular elements."""
    if eps not in (1, -1):
        raise InvalidInput("eps must be +1 or -1")
    F, elems = _group_elements(n, eps, q)
    if len(elems) > GROUP_ORDER_LIMIT:
        raise EnumerationLimit(f"group order {len(elems)} exceeds {GROUP_ORDER_LIMIT}")
    ident = tuple(1 if i == j else 0 for i in range(n) for j in range(n))
    index = {g: i for i, g in enumerate(elems)}
    inverse = {}
    for g in elems:
        if g in inverse:
            continue
        x = g
        while True:
            y = mat_mul(F, x, g, n)
            if y == ident:
                inverse[g] = x
                inverse[x] = g
                break
            x = y
    assigned = [False] * len(elems)
    count = 0
    for g in elems:
        if assigned[index[g]]:
            continue
        cls = {mat_mul(F, mat_mul(F, h, g, n), inverse[h], n) for h in elems}
        for x in cls:
            assigned[index[x]] = True
        if ell is None or _order(F, g, n, ident) % ell:
            count += 1
    return count


def group_order(n, eps, q):
    return len(_group_elements(n, eps, q)[1])


__all__ = [
    "DecMatrix",
    "basic_subsets",
    "exhaustive_bijections",
    "exhaustive_certificates",
    "group_order",
    "has_certificate_exhaustive",
    "interval_certificates",
    "oracle_classes",
]
