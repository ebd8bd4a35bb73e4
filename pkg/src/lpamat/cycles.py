"""Cycle counting through the adjacency matrix, and exitless-cycle block forms.

The cycle count of a graph equals a permanent-like sum: over every
nonempty vertex subset and every cyclic arrangement of it, take the
product of the adjacency entries along the arrangement.  A product of k
entries counts the cycles visiting those vertices in that order, with
edge multiplicities multiplying out.  This module evaluates that sum
(the DFS enumeration in :mod:`lpamat.graph` is the independent oracle),
decides the acyclicity equivalences, and extracts the circulant block
form that an exitless cycle forces on the adjacency matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from math import gcd
from typing import Iterable, Iterator, Sequence

from .errors import NotACycle, TooLarge
from .graph import (CycleSeq, Graph, cycle_from_edges, cycle_has_exit,
                    find_all_cycles, is_comet, quotient_graph)
from .ideals import DEFAULT_LATTICE_CAP, enumerate_lattice, hereditary_saturated_closure
from .matrix import (ExactMatrix, adjacency, is_circulant_permutation,
                     is_nilpotent, leading_block, permute)

DEFAULT_CENSUS_CAP = 12


@dataclass(frozen=True)
class CyclicPerm:
    """A cyclic arrangement of distinct indices, rotated to start at its minimum."""

    order: tuple[int, ...]

    @staticmethod
    def canonical(order: Sequence[int]) -> "CyclicPerm":
        if len(set(order)) != len(order) or not order:
            raise ValueError("cyclic arrangement needs distinct, non-empty indices")
        k = order.index(min(order))
        return CyclicPerm(tuple(order[k:]) + tuple(order[:k]))

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.order)


def cycles_on_order(g: Graph, order: Sequence[int]) -> int:
    """Number of cycles visiting the given vertices in the given cyclic order.

    This is the product of the adjacency entries along the arrangement;
    a single vertex reads its diagonal entry (loop count).
    """
    if not order:
        raise ValueError("order must be non-empty")
    if len(set(order)) != len(order):
        raise ValueError("order must consist of distinct vertices")
    adj = adjacency(g)
    prod = 1
    for a, b in zip(order, tuple(order[1:]) + (order[0],)):
        prod *= adj[a, b]
        if prod == 0:
            return 0
    return prod


def cycles_on_subset(g: Graph, beta: Iterable[int]) -> int:
    """Number of cycles whose vertex set is exactly ``beta``.

    Sums the order products over all ``(|beta|-1)!`` cyclic arrangements.
    """
    bs = sorted(g.check_vertex_set(beta))
    if not bs:
        raise ValueError("subset must be non-empty")
    first, rest = bs[0], bs[1:]
    return sum(cycles_on_order(g, (first,) + tail) for tail in permutations(rest))


def iter_arrangements(n: int) -> Iterator[tuple[int, ...]]:
    """All canonical cyclic arrangements of nonempty subsets of range(n).

    Ordered by subset (size, then members), then lexicographically by
    arrangement; mirrors the tabular layout used for census displays.
    """
    for size in range(1, n + 1):
        for beta in combinations(range(n), size):
            first, rest = beta[0], beta[1:]
            for tail in permutations(rest):
                yield (first,) + tail


@dataclass(frozen=True)
class CycleCensus:
    """Breakdown of the cycle count of a graph.

    ``products`` maps each canonical cyclic arrangement with a nonzero
    product to that product; ``subset_totals`` aggregates them per vertex
    subset.  Arrangements whose product vanishes are omitted (there can
    be factorially many); ``full_table`` re-enumerates them for display.
    """

    products: tuple[tuple[tuple[int, ...], int], ...]
    subset_totals: tuple[tuple[tuple[int, ...], int], ...]
    total: int


def _nonzero_products(adj: ExactMatrix) -> Iterator[tuple[tuple[int, ...], int]]:
    """DFS over canonical arrangements, pruning as soon as a factor is zero."""
    n = adj.rows
    entries = adj.entries

    def extend(start: int, path: list[int], prod: int) -> Iterator[tuple[tuple[int, ...], int]]:
        close = entries[path[-1]][start]
        if close:
            yield tuple(path), prod * close
        for v in range(start + 1, n):
            if v not in path:
                step = entries[path[-1]][v]
                if step:
                    yield from extend(start, path + [v], prod * step)

    for start in range(n):
        yield from extend(start, [start], 1)


def total_cycles(g: Graph, cap: int = DEFAULT_CENSUS_CAP) -> CycleCensus:
    """Evaluate the cyclic-arrangement sum for the whole graph.

    The grand total equals the number of vertex-simple cycles counted
    with edge multiplicity, i.e. ``len(find_all_cycles(g))``.
    """
    if g.n > cap:
        raise TooLarge(f"cycle census capped at {cap} vertices, graph has {g.n}")
    products = sorted(_nonzero_products(adjacency(g)),
                      key=lambda item: (len(item[0]), item[0]))
    totals: dict[tuple[int, ...], int] = {}
    for order, prod in products:
        key = tuple(sorted(order))
        totals[key] = totals.get(key, 0) + prod
    subset_totals = tuple(sorted(totals.items(), key=lambda item: (len(item[0]), item[0])))
    return CycleCensus(tuple(products), subset_totals, sum(p for _, p in products))


def full_table(g: Graph, cap: int = 8) -> list[tuple[tuple[int, ...], int]]:
    """Every canonical arrangement with its product, zeros included.

    Factorial in the vertex count, so capped much lower than the census.
    """
    if g.n > cap:
        raise TooLarge(f"full census table capped at {cap} vertices, graph has {g.n}")
    return [(order, cycles_on_order(g, order)) for order in iter_arrangements(g.n)]


def _has_nonzero_product(g: Graph) -> bool:
    return next(iter(_nonzero_products(adjacency(g))), None) is not None


@dataclass(frozen=True)
class AcyclicityReport:
    """The equivalent acyclicity conditions, evaluated independently.

    ``finite_dimensional`` is a flag derived from ``acyclic`` (the
    algebra itself is out of scope; the equivalence makes the flag
    exact).  ``consistent`` records that all computed conditions agree;
    a False here would expose an implementation bug.
    """

    acyclic: bool
    finite_dimensional: bool
    disjoint_cycles_no_cyclic_quotient: bool
    every_arrangement_product_vanishes: bool

    @property
    def consistent(self) -> bool:
        return self.acyclic == self.disjoint_cycles_no_cyclic_quotient \
            == self.every_arrangement_product_vanishes


def is_acyclic_equiv(g: Graph, cap: int = DEFAULT_LATTICE_CAP) -> AcyclicityReport:
    """Evaluate the acyclicity equivalences on ``g``.

    Condition routes: the DFS cycle enumeration; the vanishing of every
    cyclic-arrangement product; and the conjunction "all cycles pairwise
    vertex-disjoint and no quotient by a hereditary saturated set is a
    comet".
    """
    cycles = find_all_cycles(g)
    acyclic = not cycles
    vanishes = not _has_nonzero_product(g)
    disjoint = all(c1.vertex_set.isdisjoint(c2.vertex_set)
                   for i, c1 in enumerate(cycles) for c2 in cycles[i + 1:])
    lattice = enumerate_lattice(g, cap)
    no_cyclic_quotient = not any(is_comet(quotient_graph(g, h, check=False))
                                 for h in lattice.sets)
    return AcyclicityReport(
        acyclic=acyclic,
        finite_dimensional=acyclic,
        disjoint_cycles_no_cyclic_quotient=disjoint and no_cyclic_quotient,
        every_arrangement_product_vanishes=vanishes,
    )


# ---------------------------------------------------------------------------
# Exitless cycles and circulant blocks


def exitless_cycles(g: Graph) -> list[CycleSeq]:
    """Canonical cycles none of whose vertices emits an edge off the cycle."""
    return [c for c in find_all_cycles(g) if not cycle_has_exit(g, c)]


@dataclass(frozen=True)
class CirculantBlockForm:
    """Adjacency matrix arranged with a cycle's vertices first, in cycle order.

    For an exitless cycle the top-left block ``n_block`` is the circulant
    permutation matrix of the cycle and ``c`` (the exits heading off the
    cycle) is zero; ``a`` collects the edges leading into the cycle and
    ``b`` the rest.  ``d_nilpotency`` holds the nilpotency index of each
    leading principal submatrix of ``n_block`` of size m < cycle length
    (always exactly m in the exitless case).
    """

    permutation: tuple[int, ...]
    cycle_length: int
    n_block: ExactMatrix
    c: ExactMatrix
    a: ExactMatrix
    b: ExactMatrix
    d_nilpotency: tuple[int | None, ...]
    has_exit: bool
    n_is_circulant: bool


def circulant_block_form(g: Graph, c: CycleSeq) -> CirculantBlockForm:
    """Block decomposition of the adjacency matrix around the given cycle.

    Any rotation of a valid cycle is accepted; the canonical rotation
    determines the vertex order used for the permutation.
    """
    try:
        c = cycle_from_edges(g, c.edges)
    except Exception as exc:
        raise NotACycle(str(exc)) from None
    cyc = list(c.vertices)
    rest = sorted(set(range(g.n)) - set(cyc))
    order = cyc + rest
    permuted = permute(adjacency(g), order)
    k = len(cyc)
    rows = permuted.entries
    n_block = ExactMatrix(k, k, tuple(r[:k] for r in rows[:k]))
    c_block = ExactMatrix(k, g.n - k, tuple(r[k:] for r in rows[:k]))
    a_block = ExactMatrix(g.n - k, k, tuple(r[:k] for r in rows[k:]))
    b_block = ExactMatrix(g.n - k, g.n - k, tuple(r[k:] for r in rows[k:]))
    d_idx = tuple(is_nilpotent(leading_block(n_block, m)) for m in range(1, k))
    return CirculantBlockForm(
        permutation=tuple(order),
        cycle_length=k,
        n_block=n_block,
        c=c_block,
        a=a_block,
        b=b_block,
        d_nilpotency=d_idx,
        has_exit=cycle_has_exit(g, c),
        n_is_circulant=is_circulant_permutation(n_block),
    )


@dataclass(frozen=True)
class CyclicMinimalIdealForm:
    """Nested witness produced by an exitless cycle.

    The outer split isolates the hereditary saturated closure of the
    cycle's vertices (so the outer top-right block is zero and the
    saturated row condition holds); the inner split puts the cycle first,
    exposing the circulant block ``n_block``.
    """

    permutation: tuple[int, ...]
    cycle: CycleSeq
    ideal: frozenset[int]
    n_block: ExactMatrix
    h1: ExactMatrix
    h2: ExactMatrix
    a: ExactMatrix
    b: ExactMatrix

    def inner_size(self) -> int:
        return len(self.ideal)


def cyclic_minimal_ideal_form(g: Graph, cap: int = DEFAULT_LATTICE_CAP) -> CyclicMinimalIdealForm | None:
    """Witness for the first exitless cycle, or None when every cycle has an exit."""
    cycles = exitless_cycles(g)
    if not cycles:
        return None
    cyc = cycles[0]
    ideal = hereditary_saturated_closure(g, cyc.vertex_set)
    cyc_order = list(cyc.vertices)
    inner_rest = sorted(ideal - set(cyc_order))
    outer_rest = sorted(set(range(g.n)) - ideal)
    order = cyc_order + inner_rest + outer_rest
    permuted = permute(adjacency(g), order)
    k, m = len(cyc_order), len(ideal)
    rows = permuted.entries
    return CyclicMinimalIdealForm(
        permutation=tuple(order),
        cycle=cyc,
        ideal=ideal,
        n_block=ExactMatrix(k, k, tuple(r[:k] for r in rows[:k])),
        h1=ExactMatrix(m - k, k, tuple(r[:k] for r in rows[k:m])),
        h2=ExactMatrix(m - k, m - k, tuple(r[k:m] for r in rows[k:m])),
        a=ExactMatrix(g.n - m, m, tuple(r[:m] for r in rows[m:])),
        b=ExactMatrix(g.n - m, g.n - m, tuple(r[m:] for r in rows[m:])),
    )


def cycle_length_gcd(g: Graph) -> int:
    """gcd of the lengths of all vertex-simple cycles; 0 when acyclic."""
    lengths = {len(c) for c in find_all_cycles(g)}
    out = 0
    for ln in lengths:
        out = gcd(out, ln)
    return out
