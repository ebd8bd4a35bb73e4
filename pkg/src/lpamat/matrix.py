"""Exact dense matrices over arbitrary-precision integers.

Adjacency powers count paths, so entries grow exponentially; everything
here stays in Python ints (and :class:`fractions.Fraction` for the
stochastic normalization).  No floating point anywhere: downstream
checks are exact equalities.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import GraphFormatError, HasSink
from .graph import Graph


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry shape does not match declared dimensions")

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return self.entries[i][j]

    def __mul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("inner dimensions do not match")
        cols = [tuple(other.entries[i][j] for i in range(other.rows))
                for j in range(other.cols)]
        prod = tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                     for row in self.entries)
        return ExactMatrix(self.rows, other.cols, prod)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def is_positive(self) -> bool:
        """Strictly positive in every entry (False for empty matrices)."""
        return self.rows > 0 and self.cols > 0 and \
            all(x > 0 for row in self.entries for x in row)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows,
                           tuple(tuple(self.entries[i][j] for i in range(self.rows))
                                 for j in range(self.cols)))

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def matrix_from_rows(rows: Sequence[Sequence[int]]) -> ExactMatrix:
    return ExactMatrix(len(rows), len(rows[0]) if rows else 0,
                       tuple(tuple(int(x) for x in r) for r in rows))


def identity(n: int) -> ExactMatrix:
    return ExactMatrix(n, n, tuple(tuple(1 if i == j else 0 for j in range(n))
                                   for i in range(n)))


def zero(rows: int, cols: int) -> ExactMatrix:
    return ExactMatrix(rows, cols, tuple(tuple(0 for _ in range(cols)) for _ in range(rows)))


def adjacency(g: Graph) -> ExactMatrix:
    """Entry (i, j) counts the edges from vertex i to vertex j."""
    n = g.n
    counts = [[0] * n for _ in range(n)]
    for e in g.edges:
        counts[e.src][e.dst] += 1
    return matrix_from_rows(counts)


def power(m: ExactMatrix, k: int) -> ExactMatrix:
    """Exact k-th power by binary exponentiation; ``power(m, 0)`` is the identity."""
    if m.rows != m.cols:
        raise ValueError("power requires a square matrix")
    if k < 0:
        raise ValueError("exponent must be non-negative")
    result = identity(m.rows)
    base = m
    while k:
        if k & 1:
            result = result * base
        base = base * base if k > 1 else base
        k >>= 1
    return result


def norms(m: ExactMatrix) -> tuple[tuple[int, ...], tuple[int, ...], int]:
    """Row sums, column sums, and the total sum of all entries."""
    row_sums = tuple(sum(r) for r in m.entries)
    col_sums = tuple(sum(m.entries[i][j] for i in range(m.rows)) for j in range(m.cols))
    return row_sums, col_sums, sum(row_sums)


def rank(m: ExactMatrix) -> int:
    """Rank over the rationals, by fraction-free (Bareiss) elimination."""
    a = [list(r) for r in m.entries]
    nr, nc = m.rows, m.cols
    r = 0
    prev = 1
    for c in range(nc):
        piv = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, nr):
            for j in range(c + 1, nc):
                a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r == nr:
            break
    return r


def permute(m: ExactMatrix, perm: Sequence[int]) -> ExactMatrix:
    """Simultaneous row/column permutation: ``perm[i]`` is the old index at position ``i``."""
    if m.rows != m.cols:
        raise ValueError("permute requires a square matrix")
    if sorted(perm) != list(range(m.rows)):
        raise ValueError("perm is not a bijection on the index range")
    return ExactMatrix(m.rows, m.cols,
                       tuple(tuple(m.entries[pi][pj] for pj in perm) for pi in perm))


@dataclass(frozen=True)
class SubmatrixSelector:
    """Strictly increasing row/column index lists (order-preserving selection)."""

    row_indices: tuple[int, ...]
    col_indices: tuple[int, ...]

    def __post_init__(self):
        for idx in (self.row_indices, self.col_indices):
            if any(b <= a for a, b in zip(idx, idx[1:])) or any(i < 0 for i in idx):
                raise ValueError("selector indices must be strictly increasing and non-negative")

    @property
    def is_formal(self) -> bool:
        """Rows and columns are prefixes 0..m-1 and 0..k-1 (a top-left block)."""
        return self.row_indices == tuple(range(len(self.row_indices))) and \
            self.col_indices == tuple(range(len(self.col_indices)))

    @property
    def is_principal(self) -> bool:
        return self.row_indices == self.col_indices

    @property
    def is_formal_principal(self) -> bool:
        return self.is_formal and self.is_principal


def select(m: ExactMatrix, sel: SubmatrixSelector) -> ExactMatrix:
    """The submatrix at the selected rows/columns, in their original relative order."""
    if any(i >= m.rows for i in sel.row_indices) or any(j >= m.cols for j in sel.col_indices):
        raise ValueError("selector index out of range")
    return ExactMatrix(len(sel.row_indices), len(sel.col_indices),
                       tuple(tuple(m.entries[i][j] for j in sel.col_indices)
                             for i in sel.row_indices))


def leading_block(m: ExactMatrix, size: int) -> ExactMatrix:
    """Top-left ``size`` x ``size`` block (a formal principal submatrix)."""
    if size > min(m.rows, m.cols):
        raise ValueError("block size exceeds matrix dimensions")
    sel = SubmatrixSelector(tuple(range(size)), tuple(range(size)))
    return select(m, sel)


def degree_matrix(g: Graph) -> ExactMatrix:
    """Diagonal matrix of outdegrees."""
    n = g.n
    return ExactMatrix(n, n, tuple(tuple(g.outdegree(i) if i == j else 0 for j in range(n))
                                   for i in range(n)))


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def row_sums(self) -> tuple[Fraction, ...]:
        return tuple(sum(r, Fraction(0)) for r in self.entries)


def stochastic(g: Graph) -> RationalMatrix:
    """Row-normalize the adjacency matrix by outdegrees; rows sum to exactly 1.

    Raises :class:`HasSink` when some vertex emits no edge (its row cannot
    be normalized).
    """
    sinks = g.sinks()
    if sinks:
        raise HasSink(f"vertices {[g.vertices[v] for v in sinks]} emit no edges")
    adj = adjacency(g)
    ents = tuple(tuple(Fraction(adj.entries[i][j], g.outdegree(i)) for j in range(g.n))
                 for i in range(g.n))
    return RationalMatrix(g.n, g.n, ents)


def is_nilpotent(m: ExactMatrix) -> int | None:
    """Smallest j <= n with m^j = 0, or None.

    For any square matrix, nilpotency forces the index to be at most the
    dimension, so the scan is a complete decision procedure.
    """
    if m.rows != m.cols:
        raise ValueError("nilpotency requires a square matrix")
    if m.rows == 0:
        return 0
    acc = m
    for j in range(1, m.rows + 1):
        if acc.is_zero():
            return j
        if j < m.rows:
            acc = acc * m
    return None


def is_circulant_permutation(m: ExactMatrix) -> bool:
    """True iff ``m`` is the permutation matrix of a single n-cycle.

    The 1x1 matrix [[1]] counts (a loop is a 1-cycle); the identity on
    two or more points does not.
    """
    if m.rows != m.cols or m.rows == 0:
        return False
    n = m.rows
    sigma = [-1] * n
    for i, row in enumerate(m.entries):
        ones = [j for j, x in enumerate(row) if x == 1]
        if len(ones) != 1 or any(x not in (0, 1) for x in row):
            return False
        sigma[i] = ones[0]
    if sorted(sigma) != list(range(n)):
        return False
    seen = 1
    j = sigma[0]
    while j != 0:
        j = sigma[j]
        seen += 1
        if seen > n:
            return False
    return seen == n


# ---------------------------------------------------------------------------
# JSON interchange

def matrix_from_json(data: str | dict) -> ExactMatrix:
    """Parse ``{"rows": n, "cols": n, "entries": [[...], ...]}``.

    Entries may be decimal strings (preferred: avoids integer-width limits
    in other tooling) or JSON numbers.
    """
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"invalid JSON: {exc}") from None
    try:
        rows, cols, entries = int(data["rows"]), int(data["cols"]), data["entries"]
    except (TypeError, KeyError, ValueError):
        raise GraphFormatError('matrix JSON needs "rows", "cols", "entries"') from None
    try:
        ents = tuple(tuple(int(x) for x in r) for r in entries)
    except (TypeError, ValueError):
        raise GraphFormatError("matrix entries must be integers or decimal strings") from None
    if len(ents) != rows or any(len(r) != cols for r in ents):
        raise GraphFormatError("matrix entry shape disagrees with declared dimensions")
    return ExactMatrix(rows, cols, ents)


def matrix_to_json(m: ExactMatrix) -> dict:
    return {"rows": m.rows, "cols": m.cols,
            "entries": [[str(x) for x in r] for r in m.entries]}
