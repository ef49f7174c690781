"""Pure-Python versions of the ordering-search kernels.

Used when the compiled extension is unavailable or when
``TRIANGULIFT_PURE=1`` is set.  Results are identical to the compiled
kernels, including enumeration order.
"""

from itertools import permutations

import numpy as np

BACKEND = "python"


def peel(d, scan):
    n, m = d.shape
    if n != m:
        return None
    rows = [[j for j in range(n) if d[i, j] != 0] for i in range(n)]
    support = [len(r) for r in rows]
    row_alive = [True] * n
    col_alive = [True] * n
    out = []
    for _ in range(n):
        hit = None
        for i in scan:
            i = int(i)
            if row_alive[i] and support[i] == 1:
                j = next(j for j in rows[i] if col_alive[j])
                if d[i, j] == 1:
                    hit = (i, j)
                    break
        if hit is None:
            return None
        r, c = hit
        row_alive[r] = False
        col_alive[c] = False
        for i in range(n):
            if row_alive[i] and d[i, c] != 0:
                support[i] -= 1
        out.append(hit)
    return out


_PERMS = {}


def _perm_table(n):
    if n not in _PERMS:
        _PERMS[n] = np.array(list(permutations(range(n))), dtype=np.intp).reshape(-1, n)
    return _PERMS[n]


def exhaustive(d):
    n, m = d.shape
    if n != m:
        return []
    if n == 0:
        return [((), ())]
    perms = _perm_table(n)
    upper = np.triu(np.ones((n, n), dtype=bool), k=1)
    diag = np.eye(n, dtype=bool)
    out = []
    for rp in perms:
        # block[c] is d with rows in order rp and columns in order perms[c]
        block = d[rp][:, perms].transpose(1, 0, 2)
        ok = (block[:, diag] == 1).all(axis=1) & (block[:, upper] == 0).all(axis=1)
        rt = tuple(int(x) for x in rp)
        for c in np.flatnonzero(ok):
            out.append((rt, tuple(int(x) for x in perms[c])))
    return out
