"""Finite directed multigraphs with an ordered vertex basis.

The vertex order given at construction time is fixed: it determines the
row/column order of the adjacency matrix, and every permutation-based
result elsewhere in the package is stated relative to it.  Vertices are
strings at the interface and dense indices internally; parallel edges
carry distinct string ids.

All values are immutable; operations return new graphs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import GraphFormatError, NotHereditarySaturated

VertexSet = frozenset[int]


@dataclass(frozen=True)
class Edge:
    """A directed edge; ``src`` and ``dst`` index into ``Graph.vertices``."""

    eid: str
    src: int
    dst: int


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    _out: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    _in: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.vertices)
        if len(set(self.vertices)) != n:
            raise GraphFormatError("duplicate vertex names")
        seen: set[str] = set()
        out: list[list[int]] = [[] for _ in range(n)]
        inc: list[list[int]] = [[] for _ in range(n)]
        for pos, e in enumerate(self.edges):
            if not (0 <= e.src < n and 0 <= e.dst < n):
                raise GraphFormatError(f"edge {e.eid!r} endpoint out of range")
            if e.eid in seen:
                raise GraphFormatError(f"duplicate edge id {e.eid!r}")
            seen.add(e.eid)
            out[e.src].append(pos)
            inc[e.dst].append(pos)
        object.__setattr__(self, "_out", tuple(tuple(v) for v in out))
        object.__setattr__(self, "_in", tuple(tuple(v) for v in inc))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex_index(self, name: str) -> int:
        try:
            return self.vertices.index(name)
        except ValueError:
            raise GraphFormatError(f"unknown vertex {name!r}") from None

    def edge(self, eid: str) -> Edge:
        for e in self.edges:
            if e.eid == eid:
                return e
        raise GraphFormatError(f"unknown edge id {eid!r}")

    def out_edge_positions(self, v: int) -> tuple[int, ...]:
        self._check_vertex(v)
        return self._out[v]

    def out_edges(self, v: int) -> list[str]:
        """Ids of the edges with source ``v``, in input order."""
        self._check_vertex(v)
        return [self.edges[p].eid for p in self._out[v]]

    def in_edges(self, v: int) -> list[str]:
        self._check_vertex(v)
        return [self.edges[p].eid for p in self._in[v]]

    def out_neighbors(self, v: int) -> list[int]:
        """Ranges of the edges emitted by ``v`` (with repetition)."""
        self._check_vertex(v)
        return [self.edges[p].dst for p in self._out[v]]

    def is_sink(self, v: int) -> bool:
        self._check_vertex(v)
        return not self._out[v]

    def is_source(self, v: int) -> bool:
        self._check_vertex(v)
        return not self._in[v]

    def sinks(self) -> list[int]:
        return [v for v in range(self.n) if not self._out[v]]

    def sources(self) -> list[int]:
        return [v for v in range(self.n) if not self._in[v]]

    def outdegree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self._out[v])

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise IndexError(f"vertex index {v} out of range")

    def check_vertex_set(self, h: Iterable[int]) -> VertexSet:
        hs = frozenset(h)
        for v in hs:
            self._check_vertex(v)
        return hs


def make_graph(vertices: Sequence[str], edge_triples: Iterable[tuple[str, str, str]]) -> Graph:
    """Build a graph from vertex names and (edge-id, src-name, dst-name) triples."""
    names = tuple(vertices)
    index = {name: i for i, name in enumerate(names)}
    edges = []
    for eid, src, dst in edge_triples:
        if src not in index or dst not in index:
            raise GraphFormatError(f"edge {eid!r} references unknown vertex")
        edges.append(Edge(eid, index[src], index[dst]))
    return Graph(names, tuple(edges))


def graph_from_adjacency(vertices: Sequence[str], rows: Sequence[Sequence[int]]) -> Graph:
    """Build a graph from a multiplicity matrix, generating edge ids ``e0, e1, ...``."""
    names = tuple(vertices)
    n = len(names)
    if len(rows) != n or any(len(r) != n for r in rows):
        raise GraphFormatError("adjacency matrix shape does not match vertex count")
    edges = []
    k = 0
    for i in range(n):
        for j in range(n):
            count = int(rows[i][j])
            if count < 0:
                raise GraphFormatError("negative edge multiplicity")
            for _ in range(count):
                edges.append(Edge(f"e{k}", i, j))
                k += 1
    return Graph(names, tuple(edges))


# ---------------------------------------------------------------------------
# Paths and cycles


@dataclass(frozen=True)
class PathSeq:
    """A composable, non-empty sequence of edges.

    ``vertices`` lists the source of each edge followed by the range of
    the last one, so ``len(vertices) == len(edges) + 1``.
    """

    edges: tuple[str, ...]
    vertices: tuple[int, ...]

    @property
    def src(self) -> int:
        return self.vertices[0]

    @property
    def dst(self) -> int:
        return self.vertices[-1]

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class CycleSeq:
    """A vertex-simple closed edge sequence in canonical rotation.

    ``vertices[i]`` is the source of ``edges[i]``; the range of the last
    edge closes back to ``vertices[0]``, which is the smallest vertex
    index on the cycle.
    """

    edges: tuple[str, ...]
    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def vertex_set(self) -> VertexSet:
        return frozenset(self.vertices)


def path_from_edges(g: Graph, edge_ids: Sequence[str]) -> PathSeq:
    """Validate that consecutive edges compose and wrap them as a path."""
    if not edge_ids:
        raise GraphFormatError("a path needs at least one edge")
    es = [g.edge(eid) for eid in edge_ids]
    for a, b in zip(es, es[1:]):
        if a.dst != b.src:
            raise GraphFormatError(f"edges {a.eid!r} and {b.eid!r} do not compose")
    return PathSeq(tuple(e.eid for e in es), tuple([e.src for e in es] + [es[-1].dst]))


def cycle_from_edges(g: Graph, edge_ids: Sequence[str]) -> CycleSeq:
    """Validate a closed vertex-simple edge sequence and canonicalize its rotation."""
    from .errors import NotACycle

    p = path_from_edges(g, edge_ids)
    if p.src != p.dst:
        raise NotACycle("edge sequence is not closed")
    srcs = p.vertices[:-1]
    if len(set(srcs)) != len(srcs):
        raise NotACycle("cycle revisits a vertex")
    k = srcs.index(min(srcs))
    return CycleSeq(p.edges[k:] + p.edges[:k], srcs[k:] + srcs[:k])


def find_all_cycles(g: Graph) -> list[CycleSeq]:
    """Enumerate every vertex-simple cycle, as edge sequences.

    Parallel edges yield distinct cycles.  Each cycle is reported once,
    in canonical rotation (starting at its smallest vertex index), and
    the result is ordered lexicographically by vertex sequence, then by
    edge ids.  Exhaustive DFS; intended for small graphs.
    """
    found: list[CycleSeq] = []

    def extend(start: int, here: int, used: set[int],
               path_edges: list[str], path_vertices: list[int]) -> None:
        for pos in g.out_edge_positions(here):
            e = g.edges[pos]
            if e.dst == start:
                found.append(CycleSeq(tuple(path_edges + [e.eid]), tuple(path_vertices)))
            elif e.dst > start and e.dst not in used:
                used.add(e.dst)
                extend(start, e.dst, used,
                       path_edges + [e.eid], path_vertices + [e.dst])
                used.remove(e.dst)

    for start in range(g.n):
        extend(start, start, {start}, [], [start])
    found.sort(key=lambda c: (c.vertices, c.edges))
    return found


def cycle_has_exit(g: Graph, c: CycleSeq) -> bool:
    """True iff some edge outside the cycle leaves one of its vertices."""
    cycle_edges = set(c.edges)
    for v in c.vertex_set:
        for pos in g.out_edge_positions(v):
            if g.edges[pos].eid not in cycle_edges:
                return True
    return False


def is_comet(g: Graph) -> bool:
    """True iff the graph has exactly one cycle and that cycle has no exit."""
    cycles = find_all_cycles(g)
    return len(cycles) == 1 and not cycle_has_exit(g, cycles[0])


# ---------------------------------------------------------------------------
# Derived graphs


def induced_subgraph(g: Graph, h: Iterable[int]) -> Graph:
    """Subgraph on ``h`` keeping exactly the edges with both endpoints in ``h``.

    Vertex order and edge ids are inherited from ``g``.
    """
    hs = g.check_vertex_set(h)
    keep = sorted(hs)
    remap = {old: new for new, old in enumerate(keep)}
    edges = tuple(Edge(e.eid, remap[e.src], remap[e.dst])
                  for e in g.edges if e.src in hs and e.dst in hs)
    return Graph(tuple(g.vertices[v] for v in keep), edges)


def quotient_graph(g: Graph, h: Iterable[int], *, check: bool = True) -> Graph:
    """Graph on the complement of ``h`` with all edges touching ``h`` removed.

    ``h`` must be hereditary and saturated unless ``check=False`` (callers
    quotienting a nested pair of sets may bypass the check deliberately).
    """
    hs = g.check_vertex_set(h)
    if check:
        from .ideals import is_hereditary, is_saturated

        if not (is_hereditary(g, hs) and is_saturated(g, hs)):
            raise NotHereditarySaturated(f"{sorted(hs)} is not hereditary and saturated")
    return induced_subgraph(g, frozenset(range(g.n)) - hs)


def opposite_graph(g: Graph) -> Graph:
    """Reverse every edge, keeping ids (so the operation is an involution)."""
    return Graph(g.vertices, tuple(Edge(e.eid, e.dst, e.src) for e in g.edges))


def double_graph(g: Graph) -> Graph:
    """Disjoint edge-union of ``g`` with its opposite; ghost ids carry a ``*`` tag."""
    ghosts = tuple(Edge(e.eid + "*", e.dst, e.src) for e in g.edges)
    return Graph(g.vertices, g.edges + ghosts)


def relabel(g: Graph, order: Sequence[int]) -> Graph:
    """Reorder the vertex basis: ``order[i]`` is the old index placed at position ``i``."""
    if sorted(order) != list(range(g.n)):
        raise ValueError("order is not a permutation of the vertex indices")
    pos = {old: new for new, old in enumerate(order)}
    return Graph(tuple(g.vertices[v] for v in order),
                 tuple(Edge(e.eid, pos[e.src], pos[e.dst]) for e in g.edges))


def is_strongly_connected(g: Graph) -> bool:
    """Every ordered vertex pair joined by a path; single vertices count."""
    n = g.n
    if n <= 1:
        return True

    def reach(forward: bool) -> int:
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            nbrs = (g.edges[p].dst for p in g.out_edge_positions(v)) if forward \
                else (g.edges[p].src for p in g._in[v])
            for w in nbrs:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen)

    return reach(True) == n and reach(False) == n


# ---------------------------------------------------------------------------
# JSON interchange

def graph_from_json(data: str | dict) -> Graph:
    """Parse the graph JSON interchange form.

    Two shapes are accepted: ``{"vertices": [...], "edges": [{"src": ..,
    "dst": .., "count": k}, ...]}`` where ``count`` (default 1) expands to
    that many parallel edges with generated ids, and ``{"vertices": [...],
    "adjacency": [[...], ...]}``.  If both are present the edge list is
    authoritative and the adjacency matrix must agree with it.
    """
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict) or "vertices" not in data:
        raise GraphFormatError('graph JSON needs a "vertices" list')
    names = data["vertices"]
    if not isinstance(names, list) or not all(isinstance(v, str) for v in names):
        raise GraphFormatError("vertices must be a list of strings")
    has_edges = "edges" in data
    has_adj = "adjacency" in data
    if not has_edges and not has_adj:
        g = Graph(tuple(names), ())
    elif has_edges:
        index = {name: i for i, name in enumerate(names)}
        edges = []
        k = 0
        for item in data["edges"]:
            try:
                src, dst = item["src"], item["dst"]
            except (TypeError, KeyError):
                raise GraphFormatError('each edge needs "src" and "dst"') from None
            count = int(item.get("count", 1))
            if count < 0:
                raise GraphFormatError("negative edge count")
            if src not in index or dst not in index:
                raise GraphFormatError(f"edge references unknown vertex {src!r} or {dst!r}")
            for _ in range(count):
                edges.append(Edge(f"e{k}", index[src], index[dst]))
                k += 1
        g = Graph(tuple(names), tuple(edges))
    else:
        g = graph_from_adjacency(names, _parse_adjacency_rows(data["adjacency"]))
    if has_edges and has_adj:
        from .matrix import adjacency

        given = _parse_adjacency_rows(data["adjacency"])
        actual = [list(row) for row in adjacency(g).entries]
        if [list(map(int, r)) for r in given] != actual:
            raise GraphFormatError("edge list and adjacency matrix disagree")
    return g


def _parse_adjacency_rows(rows) -> list[list[int]]:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise GraphFormatError("adjacency must be a list of rows")
    try:
        return [[int(x) for x in r] for r in rows]
    except (TypeError, ValueError):
        raise GraphFormatError("adjacency entries must be integers") from None


def graph_to_json(g: Graph) -> dict:
    """Serialize in the edge-list interchange form, grouping parallel edges."""
    counts: dict[tuple[int, int], int] = {}
    order: list[tuple[int, int]] = []
    for e in g.edges:
        key = (e.src, e.dst)
        if key not in counts:
            order.append(key)
        counts[key] = counts.get(key, 0) + 1
    return {
        "vertices": list(g.vertices),
        "edges": [{"src": g.vertices[s], "dst": g.vertices[d], "count": counts[(s, d)]}
                  for s, d in order],
    }
