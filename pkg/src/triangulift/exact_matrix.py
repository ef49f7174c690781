"""Decomposition matrices and lower-unitriangularity certificates.

A certificate fixes an ordering of a row subset and of a column subset of
the same size such that, read in those orders, the square submatrix has
ones on the diagonal and zeros above it.

Why the greedy peel is complete
-------------------------------
Call a row *peelable* if its support among the remaining columns is a
single entry, equal to 1.  Take any certificate of a square matrix and any
peelable row ``r`` with support ``{c}``.  The certificate pairs ``r`` with
a column holding a 1, so it pairs ``r`` with ``c``.  Deleting ``r`` and
``c`` from both orders keeps every other diagonal pair, and every entry
above the diagonal of the smaller matrix was above the diagonal before, so
the smaller matrix is certified by the restricted orders.  The first row
of any certificate is peelable, so a peelable row exists whenever a
certificate does.  By induction the peel never dead-ends on a
unitriangularizable matrix.

The same induction shows that every certificate pairs each peeled row with
the column it was peeled with, so all certificates share one bijection
rows -> columns.  :func:`canonical_bijection` returns it.
"""

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import InvalidInput

INT64_MAX = 2**63 - 1


def _check_labels(labels, kind):
    labels = tuple(labels)
    seen = set()
    for lab in labels:
        if not isinstance(lab, str) or not lab:
            raise InvalidInput(f"{kind} label must be a non-empty string, got {lab!r}")
        if lab in seen:
            raise InvalidInput(f"duplicate {kind} label {lab!r}")
        seen.add(lab)
    return labels


def _as_entries(entries, n_rows, n_cols):
    rows = [list(r) for r in entries]
    if len(rows) != n_rows:
        raise InvalidInput(f"expected {n_rows} rows of entries, got {len(rows)}")
    for i, r in enumerate(rows):
        if len(r) != n_cols:
            raise InvalidInput(f"row {i} has {len(r)} entries, expected {n_cols}")
        for x in r:
            if isinstance(x, (bool, np.bool_)) or not isinstance(x, (int, np.integer)):
                raise InvalidInput(f"entries must be integers, got {x!r}")
            if x < 0:
                raise InvalidInput(f"negative decomposition number {x}")
            if x > INT64_MAX:
                raise InvalidInput(f"entry {x} overflows 64 bits")
    arr = np.array(rows, dtype=np.int64).reshape(n_rows, n_cols)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class DecMatrix:
    """Labeled table of decomposition numbers ``d[chi][phi]``."""

    rows: tuple
    cols: tuple
    entries: np.ndarray
    _row_index: dict = field(init=False, repr=False)
    _col_index: dict = field(init=False, repr=False)

    def __post_init__(self):
        rows = _check_labels(self.rows, "row")
        cols = _check_labels(self.cols, "column")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", _as_entries(self.entries, len(rows), len(cols)))
        object.__setattr__(self, "_row_index", {r: i for i, r in enumerate(rows)})
        object.__setattr__(self, "_col_index", {c: j for j, c in enumerate(cols)})

    @property
    def shape(self):
        return self.entries.shape

    def is_square(self):
        return len(self.rows) == len(self.cols)

    def has_row(self, label):
        return label in self._row_index

    def has_col(self, label):
        return label in self._col_index

    def row_pos(self, label):
        try:
            return self._row_index[label]
        except KeyError:
            raise InvalidInput(f"unknown row label {label!r}") from None

    def col_pos(self, label):
        try:
            return self._col_index[label]
        except KeyError:
            raise InvalidInput(f"unknown column label {label!r}") from None

    def __getitem__(self, key):
        r, c = key
        return int(self.entries[self.row_pos(r), self.col_pos(c)])

    def support(self, row):
        """Column labels where ``row`` has a non-zero entry."""
        i = self.row_pos(row)
        return [self.cols[j] for j in np.flatnonzero(self.entries[i])]

    def to_lists(self):
        return [[int(x) for x in r] for r in self.entries]

    def relabel(self, row_map, col_map):
        return DecMatrix(
            tuple(row_map[r] for r in self.rows),
            tuple(col_map[c] for c in self.cols),
            self.to_lists(),
        )

    def __eq__(self, other):
        if not isinstance(other, DecMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and np.array_equal(self.entries, other.entries)
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries.tobytes()))

    def __repr__(self):
        return f"DecMatrix(rows={list(self.rows)}, cols={list(self.cols)}, entries={self.to_lists()})"


@dataclass(frozen=True)
class UnitriCertificate:
    """Row and column orders; the i-th row is paired with the i-th column."""

    row_order: tuple
    col_order: tuple

    def __post_init__(self):
        object.__setattr__(self, "row_order", tuple(self.row_order))
        object.__setattr__(self, "col_order", tuple(self.col_order))

    @property
    def bijection(self):
        return dict(zip(self.row_order, self.col_order))

    def __len__(self):
        return len(self.row_order)


def submatrix(dec, rows, cols):
    """Restrict ``dec`` to the given labels, keeping the order of ``dec``."""
    rows = set(rows)
    cols = set(cols)
    for r in sorted(rows):
        if not dec.has_row(r):
            raise InvalidInput(f"unknown row label {r!r}")
    for c in sorted(cols):
        if not dec.has_col(c):
            raise InvalidInput(f"unknown column label {c!r}")
    ri = [i for i, r in enumerate(dec.rows) if r in rows]
    ci = [j for j, c in enumerate(dec.cols) if c in cols]
    return DecMatrix(
        tuple(dec.rows[i] for i in ri),
        tuple(dec.cols[j] for j in ci),
        dec.entries[np.ix_(ri, ci)].tolist() if ri and ci else [[] for _ in ri],
    )


def verify_certificate(dec, cert):
    """Return None if ``cert`` certifies ``dec``, else a short reason code."""
    if len(cert.row_order) != len(cert.col_order):
        return "length-mismatch"
    if len(set(cert.row_order)) != len(cert.row_order):
        return "duplicate-row"
    if len(set(cert.col_order)) != len(cert.col_order):
        return "duplicate-col"
    for r in cert.row_order:
        if not dec.has_row(r):
            return "unknown-row"
    for c in cert.col_order:
        if not dec.has_col(c):
            return "unknown-col"
    ri = [dec.row_pos(r) for r in cert.row_order]
    ci = [dec.col_pos(c) for c in cert.col_order]
    block = dec.entries[np.ix_(ri, ci)] if ri else np.zeros((0, 0), dtype=np.int64)
    if not (np.diag(block) == 1).all():
        return "diagonal"
    if np.triu(block, k=1).any():
        return "above-diagonal"
    return None


def check_certificate(dec, cert):
    return verify_certificate(dec, cert) is None


def find_unitriangular(dec):
    """Greedy peel; deterministic with ties broken by smallest row label.

    Returns a :class:`UnitriCertificate` or None.  Non-square input gives
    None so callers can probe candidate label sets freely.
    """
    if not dec.is_square():
        return None
    scan = np.array(sorted(range(len(dec.rows)), key=lambda i: dec.rows[i]), dtype=np.int64)
    pairs = kernels.peel(np.ascontiguousarray(dec.entries), scan)
    if pairs is None:
        return None
    return UnitriCertificate(
        tuple(dec.rows[i] for i, _ in pairs),
        tuple(dec.cols[j] for _, j in pairs),
    )


def canonical_bijection(dec):
    """The row -> column pairing shared by all certificates, or None."""
    cert = find_unitriangular(dec)
    return None if cert is None else cert.bijection


def is_unitriangularizable(dec):
    return find_unitriangular(dec) is not None
