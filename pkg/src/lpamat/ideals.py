"""Hereditary and saturated vertex sets, their lattice, and block forms.

A vertex set is hereditary when edges cannot leave it, and saturated
when it swallows every non-sink whose out-neighbors all lie inside it.
These sets form a finite lattice that mirrors, set for set, the graded
ideal structure of the associated algebra and monoid; the matrix-side
reflection is a block lower-triangular form of the adjacency matrix
reachable by a basis permutation.  This module computes all of it
exactly: closures, the full lattice with its Hasse diagram, block-form
witnesses, the pure matrix-level predicates, and the composition series
with its nested block display.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import NotInLattice, TooLarge
from .graph import Graph, VertexSet
from .matrix import ExactMatrix, adjacency, leading_block, permute

DEFAULT_LATTICE_CAP = 20


def is_hereditary(g: Graph, h: Iterable[int]) -> bool:
    """True iff every edge with source in ``h`` also has its range in ``h``."""
    hs = g.check_vertex_set(h)
    return all(e.dst in hs for e in g.edges if e.src in hs)


def is_saturated(g: Graph, h: Iterable[int]) -> bool:
    """True iff ``h`` contains every non-sink whose out-neighbors all lie in ``h``.

    Sinks are exempt: the condition only constrains vertices that emit
    at least one edge.
    """
    hs = g.check_vertex_set(h)
    for v in range(g.n):
        if v in hs or g.is_sink(v):
            continue
        if all(w in hs for w in g.out_neighbors(v)):
            return False
    return True


def hereditary_saturated_closure(g: Graph, seed: Iterable[int]) -> VertexSet:
    """Least hereditary and saturated superset of ``seed``.

    Alternates a forward-reachability sweep (hereditary closure) with a
    saturation sweep until stable.  Both sweeps only ever add vertices
    that every hereditary saturated superset must contain, so the fixed
    point is the least one.
    """
    current = set(g.check_vertex_set(seed))
    while True:
        changed = False
        stack = list(current)
        while stack:
            v = stack.pop()
            for w in g.out_neighbors(v):
                if w not in current:
                    current.add(w)
                    stack.append(w)
                    changed = True
        for v in range(g.n):
            if v not in current and not g.is_sink(v) and \
                    all(w in current for w in g.out_neighbors(v)):
                current.add(v)
                changed = True
        if not changed:
            return frozenset(current)


@dataclass(frozen=True)
class HereditarySaturatedLattice:
    """All hereditary saturated sets of a graph, ordered by inclusion.

    ``sets`` is sorted by (size, members); ``hasse`` lists cover pairs
    (i, j) meaning ``sets[i]`` is covered by ``sets[j]``.
    """

    sets: tuple[VertexSet, ...]
    hasse: tuple[tuple[int, int], ...]

    def __contains__(self, h: Iterable[int]) -> bool:
        return frozenset(h) in self.sets

    def index(self, h: Iterable[int]) -> int:
        hs = frozenset(h)
        for i, s in enumerate(self.sets):
            if s == hs:
                return i
        raise NotInLattice(f"{sorted(hs)} is not hereditary and saturated here")

    def covers_of(self, i: int) -> list[int]:
        return [b for a, b in self.hasse if a == i]


def _sort_key(h: VertexSet):
    return (len(h), tuple(sorted(h)))


def enumerate_lattice(g: Graph, cap: int = DEFAULT_LATTICE_CAP,
                      exhaustive: bool = False) -> HereditarySaturatedLattice:
    """Compute every hereditary saturated set of ``g`` with its Hasse diagram.

    The default method closes the singleton closures under join (closure
    of union); since any hereditary saturated set is the join of the
    closures of its members, this reaches the whole lattice.  With
    ``exhaustive=True`` all ``2^n`` subsets are filtered instead, which
    serves as the brute-force oracle for the default method.
    """
    n = g.n
    if n > cap:
        raise TooLarge(f"lattice enumeration capped at {cap} vertices, graph has {n}")
    if exhaustive:
        members = [frozenset(c) for size in range(n + 1)
                   for c in combinations(range(n), size)]
        sets = {h for h in members if is_hereditary(g, h) and is_saturated(g, h)}
    else:
        sets = {frozenset()}
        sets.update(hereditary_saturated_closure(g, {v}) for v in range(n))
        frontier = list(sets)
        while frontier:
            fresh = []
            for a in frontier:
                for b in list(sets):
                    j = hereditary_saturated_closure(g, a | b)
                    if j not in sets and j not in fresh:
                        fresh.append(j)
            sets.update(fresh)
            frontier = fresh
    ordered = tuple(sorted(sets, key=_sort_key))
    hasse = []
    for i, a in enumerate(ordered):
        for j, b in enumerate(ordered):
            if a < b and not any(a < c < b for c in ordered):
                hasse.append((i, j))
    return HereditarySaturatedLattice(ordered, tuple(hasse))


# ---------------------------------------------------------------------------
# Block forms


@dataclass(frozen=True)
class BlockFormWitness:
    """Adjacency matrix reassembled around a candidate set placed first.

    ``permutation`` lists old vertex indices in the new order (members of
    the set first, each group in ascending index order).  The four blocks
    tile ``permute(adjacency(g), permutation)``:

        [ adj_h  c ]
        [ a      b ]

    ``hereditary_form`` holds iff ``c`` is zero; ``saturated_form`` holds
    iff every zero row of ``b`` forces the matching row of ``a`` to be
    zero.  These flags agree with the graph-side predicates.
    """

    permutation: tuple[int, ...]
    split: int
    adj_h: ExactMatrix
    c: ExactMatrix
    a: ExactMatrix
    b: ExactMatrix
    hereditary_form: bool
    saturated_form: bool

    def reassembled(self) -> ExactMatrix:
        m = self.split
        n = m + self.b.rows
        top = [tuple(self.adj_h.entries[i]) + tuple(self.c.entries[i]) for i in range(m)]
        bottom = [tuple(self.a.entries[i]) + tuple(self.b.entries[i]) for i in range(n - m)]
        return ExactMatrix(n, n, tuple(top + bottom))


def _block_split(m: ExactMatrix, size: int) -> tuple[ExactMatrix, ExactMatrix, ExactMatrix, ExactMatrix]:
    n = m.rows
    rows = m.entries
    top_left = ExactMatrix(size, size, tuple(r[:size] for r in rows[:size]))
    top_right = ExactMatrix(size, n - size, tuple(r[size:] for r in rows[:size]))
    bot_left = ExactMatrix(n - size, size, tuple(r[:size] for r in rows[size:]))
    bot_right = ExactMatrix(n - size, n - size, tuple(r[size:] for r in rows[size:]))
    return top_left, top_right, bot_left, bot_right


def _saturated_rows_ok(a: ExactMatrix, b: ExactMatrix) -> bool:
    for i in range(b.rows):
        if all(x == 0 for x in b.entries[i]) and any(x != 0 for x in a.entries[i]):
            return False
    return True


def block_form(g: Graph, h: Iterable[int]) -> BlockFormWitness:
    """Witness for the block characterization of ``h`` in the adjacency matrix.

    Uses the stable permutation (members of ``h`` first, original order
    preserved within the two groups), which suffices: the zero-pattern
    conditions are invariant under reordering inside each group.
    """
    hs = g.check_vertex_set(h)
    order = sorted(hs) + sorted(set(range(g.n)) - hs)
    permuted = permute(adjacency(g), order)
    adj_h, c, a, b = _block_split(permuted, len(hs))
    return BlockFormWitness(tuple(order), len(hs), adj_h, c, a, b,
                            hereditary_form=c.is_zero(),
                            saturated_form=_saturated_rows_ok(a, b))


def submatrix_is_hereditary(m: ExactMatrix, size: int) -> bool:
    """Matrix-level predicate: the top-right ``size x (n-size)`` block is zero."""
    if m.rows != m.cols or not 0 <= size <= m.rows:
        raise ValueError("size must be between 0 and the matrix dimension")
    _, c, _, _ = _block_split(m, size)
    return c.is_zero()


def submatrix_is_saturated(m: ExactMatrix, size: int) -> bool:
    """Matrix-level predicate: zero rows of the bottom-right block force zero rows on its left."""
    if m.rows != m.cols or not 0 <= size <= m.rows:
        raise ValueError("size must be between 0 and the matrix dimension")
    _, _, a, b = _block_split(m, size)
    return _saturated_rows_ok(a, b)


# ---------------------------------------------------------------------------
# Composition series


def quotient_is_simple(g: Graph, h_small: Iterable[int], h_big: Iterable[int],
                       lattice: HereditarySaturatedLattice | None = None) -> bool:
    """No hereditary saturated set lies strictly between the two given ones.

    Both sets must belong to the lattice; equal sets give ``False`` (the
    zero quotient is not simple).
    """
    lat = lattice if lattice is not None else enumerate_lattice(g)
    small, big = frozenset(h_small), frozenset(h_big)
    lat.index(small)
    lat.index(big)
    if not small <= big:
        raise ValueError("h_small must be contained in h_big")
    if small == big:
        return False
    return not any(small < k < big for k in lat.sets)


@dataclass(frozen=True)
class MatrixCompositionSeries:
    """A maximal chain through the lattice with its nested block witness.

    ``chain`` holds the proper nonempty sets only; ``length`` counts the
    simple quotients, i.e. the steps of the full chain from the empty set
    to all vertices.  ``permutation`` lists old vertex indices grouped by
    the successive differences, and ``blocks`` are the diagonal blocks of
    the permuted adjacency matrix (the adjacency matrices of the
    successive quotients).
    """

    chain: tuple[VertexSet, ...]
    length: int
    permutation: tuple[int, ...]
    blocks: tuple[ExactMatrix, ...]
    full: tuple[VertexSet, ...]

    def permuted_adjacency(self, g: Graph) -> ExactMatrix:
        return permute(adjacency(g), self.permutation)


def composition_series(g: Graph, cap: int = DEFAULT_LATTICE_CAP,
                       lattice: HereditarySaturatedLattice | None = None) -> MatrixCompositionSeries:
    """Deterministic maximal chain from the empty set to all vertices.

    At each step the cover with the fewest vertices is taken, ties broken
    by member order.  Any maximal chain has the same length, so the
    reported length does not depend on this choice.
    """
    lat = lattice if lattice is not None else enumerate_lattice(g, cap)
    full_set = frozenset(range(g.n))
    chain = [frozenset()]
    while chain[-1] != full_set:
        i = lat.index(chain[-1])
        nxt = min((lat.sets[j] for j in lat.covers_of(i)), key=_sort_key)
        chain.append(nxt)
    order: list[int] = []
    for prev, cur in zip(chain, chain[1:]):
        order.extend(sorted(cur - prev))
    permuted = permute(adjacency(g), order)
    blocks = []
    offset = 0
    for prev, cur in zip(chain, chain[1:]):
        size = len(cur) - len(prev)
        rows = permuted.entries[offset:offset + size]
        blocks.append(ExactMatrix(size, size,
                                  tuple(r[offset:offset + size] for r in rows)))
        offset += size
    return MatrixCompositionSeries(chain=tuple(chain[1:-1]),
                                   length=len(chain) - 1,
                                   permutation=tuple(order),
                                   blocks=tuple(blocks),
                                   full=tuple(chain))


def nested_leading_blocks(g: Graph, series: MatrixCompositionSeries) -> list[ExactMatrix]:
    """Leading principal blocks of the permuted matrix at each chain prefix."""
    permuted = series.permuted_adjacency(g)
    sizes = [len(h) for h in series.full[1:]]
    return [leading_block(permuted, s) for s in sizes]
