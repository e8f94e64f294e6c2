"""Quivers as ordered directed multigraphs.

A quiver here is a directed multigraph on dense vertex indices 0..n-1 with
named edges (loops and parallel edges allowed) plus a total order on the
non-loop edges.  The order drives every recursion in the package, so it is
part of the structure, not a presentation detail.

Contraction merges the two endpoints into the smaller index and re-indexes
the remaining vertices densely; the old->new map is recorded on the result
for traceability.  Deletion never re-indexes and may disconnect -- callers
that need connectivity must check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence


class QuiverFormatError(ValueError):
    """Raised for malformed quiver text input."""


@dataclass(frozen=True)
class Edge:
    name: str
    tail: int
    head: int

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


@dataclass(frozen=True)
class SpanningTree:
    """An edge-name subset forming a spanning tree of some host quiver."""

    edges: frozenset[str]

    def __contains__(self, name: str) -> bool:
        return name in self.edges

    def __iter__(self) -> Iterator[str]:
        return iter(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def sorted_names(self) -> tuple[str, ...]:
        return tuple(sorted(self.edges))

    def __repr__(self) -> str:
        return "SpanningTree({%s})" % ", ".join(self.sorted_names())


IncidenceVector = tuple[int, ...]


class Quiver:
    """Directed multigraph with named edges and a total order on non-loops.

    `order` lists the non-loop edge names in ascending order (last entry is
    the biggest edge).  Defaults to the edge sequence order.  Connectivity is
    NOT enforced here: `delete` legitimately produces disconnected quivers.
    The text-format parser does enforce it.
    """

    __slots__ = ("n_vertices", "edges", "order", "vertex_map", "_by_name", "_order_pos")

    def __init__(
        self,
        n_vertices: int,
        edges: Iterable[Edge | tuple[str, int, int]],
        order: Sequence[str] | None = None,
        vertex_map: dict[int, int] | None = None,
    ):
        if n_vertices < 1:
            raise ValueError("quiver needs at least one vertex")
        norm = tuple(e if isinstance(e, Edge) else Edge(*e) for e in edges)
        by_name: dict[str, Edge] = {}
        for e in norm:
            if not (0 <= e.tail < n_vertices and 0 <= e.head < n_vertices):
                raise ValueError(f"edge {e.name}: endpoint out of range [0, {n_vertices})")
            if e.name in by_name:
                raise ValueError(f"duplicate edge name {e.name!r}")
            by_name[e.name] = e
        non_loops = tuple(e.name for e in norm if not e.is_loop)
        if order is None:
            order = non_loops
        else:
            order = tuple(order)
            if sorted(order) != sorted(non_loops):
                raise ValueError("order must be a permutation of the non-loop edge names")
        self.n_vertices = n_vertices
        self.edges = norm
        self.order = tuple(order)
        self.vertex_map = vertex_map
        self._by_name = by_name
        self._order_pos = {name: i for i, name in enumerate(self.order)}

    # -- basic accessors ----------------------------------------------------

    def edge(self, name: str) -> Edge:
        try:
            return self._by_name[name]
        except KeyError:
            raise KeyError(f"no edge named {name!r}") from None

    def has_edge(self, name: str) -> bool:
        return name in self._by_name

    def is_loop(self, name: str) -> bool:
        return self.edge(name).is_loop

    def loops(self) -> tuple[str, ...]:
        return tuple(e.name for e in self.edges if e.is_loop)

    def order_pos(self, name: str) -> int:
        return self._order_pos[name]

    def smallest_non_loop(self) -> str:
        if not self.order:
            raise ValueError("quiver has no non-loop edges")
        return self.order[0]

    def biggest_non_loop(self) -> str:
        if not self.order:
            raise ValueError("quiver has no non-loop edges")
        return self.order[-1]

    def is_connected(self) -> bool:
        return len(_components(self.n_vertices, self.edges)) == 1

    def __eq__(self, other: object) -> bool:
        # Structural equality; the recorded vertex_map is provenance only.
        if not isinstance(other, Quiver):
            return NotImplemented
        return (
            self.n_vertices == other.n_vertices
            and self.edges == other.edges
            and self.order == other.order
        )

    def __hash__(self) -> int:
        return hash((self.n_vertices, self.edges, self.order))

    def __repr__(self) -> str:
        es = ", ".join(f"{e.name}:{e.tail}->{e.head}" for e in self.edges)
        return f"Quiver({self.n_vertices}; {es})"


def _components(n: int, edges: Iterable[Edge]) -> list[set[int]]:
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in edges:
        ra, rb = find(e.tail), find(e.head)
        if ra != rb:
            parent[ra] = rb
    comps: dict[int, set[int]] = {}
    for v in range(n):
        comps.setdefault(find(v), set()).add(v)
    return list(comps.values())


def betti(quiver: Quiver) -> int:
    """First Betti number #edges - #vertices + 1 (loops count as edges)."""
    return len(quiver.edges) - quiver.n_vertices + 1


def connected_spanning(quiver: Quiver, edge_names: Iterable[str]) -> bool:
    """True iff the subgraph on all vertices with the given edges is connected."""
    sub = [quiver.edge(name) for name in edge_names]
    return len(_components(quiver.n_vertices, sub)) == 1


def spanning_trees(quiver: Quiver) -> list[SpanningTree]:
    """All spanning trees, enumerated deterministically.

    Candidate edge sets are (n-1)-subsets of the non-loop edges taken in edge
    sequence order, kept when they connect all vertices; acyclicity then comes
    for free from the edge count.
    """
    from itertools import combinations

    n = quiver.n_vertices
    non_loops = [e for e in quiver.edges if not e.is_loop]
    if n == 1:
        return [SpanningTree(frozenset())]
    out = []
    for combo in combinations(non_loops, n - 1):
        if len(_components(n, combo)) == 1:
            out.append(SpanningTree(frozenset(e.name for e in combo)))
    return out


def is_spanning_tree(quiver: Quiver, tree: SpanningTree) -> bool:
    if len(tree) != quiver.n_vertices - 1:
        return False
    if any(not quiver.has_edge(name) or quiver.is_loop(name) for name in tree):
        return False
    return connected_spanning(quiver, tree)


def contract(quiver: Quiver, name: str) -> Quiver:
    """Contract a non-loop edge: merge endpoints into min(t, h), re-index densely.

    Edges between the merged endpoints become loops and drop out of the order.
    The old->new vertex map is recorded on the result.
    """
    e = quiver.edge(name)
    if e.is_loop:
        raise ValueError(f"cannot contract loop {name!r}")
    merged, removed = min(e.tail, e.head), max(e.tail, e.head)
    vmap = {}
    for v in range(quiver.n_vertices):
        if v == removed:
            vmap[v] = merged
        elif v > removed:
            vmap[v] = v - 1
        else:
            vmap[v] = v
    new_edges = [
        Edge(f.name, vmap[f.tail], vmap[f.head]) for f in quiver.edges if f.name != name
    ]
    new_loops = {f.name for f in new_edges if f.is_loop}
    new_order = [f for f in quiver.order if f != name and f not in new_loops]
    return Quiver(quiver.n_vertices - 1, new_edges, new_order, vertex_map=vmap)


def delete(quiver: Quiver, name: str) -> Quiver:
    """Remove one edge; vertices are untouched, so the result may disconnect."""
    quiver.edge(name)
    new_edges = [f for f in quiver.edges if f.name != name]
    new_order = [f for f in quiver.order if f != name]
    return Quiver(quiver.n_vertices, new_edges, new_order)


def induced_subquiver(quiver: Quiver, vertices: Iterable[int]) -> Quiver:
    """Subquiver on a vertex subset (edges with both endpoints inside).

    Vertices are re-indexed densely in increasing original order; the old->new
    map is recorded on the result.  Edge names and order are inherited.
    """
    keep = sorted(set(vertices))
    if not keep:
        raise ValueError("vertex subset is empty")
    if keep[0] < 0 or keep[-1] >= quiver.n_vertices:
        raise ValueError("vertex subset out of range")
    vmap = {v: i for i, v in enumerate(keep)}
    new_edges = [
        Edge(e.name, vmap[e.tail], vmap[e.head])
        for e in quiver.edges
        if e.tail in vmap and e.head in vmap
    ]
    names = {e.name for e in new_edges}
    new_order = [f for f in quiver.order if f in names]
    return Quiver(len(keep), new_edges, new_order, vertex_map=vmap)


def contract_params(
    lam: Sequence[int], theta: Sequence[int], quiver: Quiver, name: str
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Push (lambda, theta) through a contraction: merged coordinate gets the sum."""
    e = quiver.edge(name)
    if e.is_loop:
        raise ValueError(f"cannot contract loop {name!r}")
    if len(lam) != quiver.n_vertices or len(theta) != quiver.n_vertices:
        raise ValueError("parameter length must match the vertex count")
    merged, removed = min(e.tail, e.head), max(e.tail, e.head)
    new_lam, new_theta = [], []
    for v in range(quiver.n_vertices):
        if v == removed:
            continue
        if v == merged:
            new_lam.append(lam[e.tail] + lam[e.head])
            new_theta.append(theta[e.tail] + theta[e.head])
        else:
            new_lam.append(lam[v])
            new_theta.append(theta[v])
    return tuple(new_lam), tuple(new_theta)


def incidence(quiver: Quiver, name: str) -> IncidenceVector:
    """+1 at the head, -1 at the tail, 0 elsewhere; loops are rejected."""
    e = quiver.edge(name)
    if e.is_loop:
        raise ValueError(f"loop {name!r} has no incidence vector")
    vec = [0] * quiver.n_vertices
    vec[e.head] += 1
    vec[e.tail] -= 1
    return tuple(vec)


def tree_path(quiver: Quiver, tree: SpanningTree, start: int, goal: int) -> list[str]:
    """Edge names of the unique path between two vertices inside a spanning tree."""
    adj: dict[int, list[tuple[int, str]]] = {v: [] for v in range(quiver.n_vertices)}
    for name in tree:
        e = quiver.edge(name)
        adj[e.tail].append((e.head, name))
        adj[e.head].append((e.tail, name))
    prev: dict[int, tuple[int, str]] = {}
    frontier = [start]
    seen = {start}
    while frontier:
        nxt = []
        for v in frontier:
            for w, name in adj[v]:
                if w not in seen:
                    seen.add(w)
                    prev[w] = (v, name)
                    nxt.append(w)
        frontier = nxt
    if goal not in seen:
        raise ValueError("vertices are not connected within the tree")
    path = []
    v = goal
    while v != start:
        v, name = prev[v]
        path.append(name)
    path.reverse()
    return path


# -- text format ------------------------------------------------------------

class ParsedQuiver(NamedTuple):
    quiver: Quiver
    theta: tuple[int, ...] | None
    lam: tuple[int, ...] | None


def parse_quiver(text: str) -> ParsedQuiver:
    """Parse the line-oriented quiver format.

        vertices: <n>
        edge <name> <tail> <head>      (one per edge)
        order: <non-loop names, ascending>   (optional; default: file order)
        theta: <ints>                        (optional)
        lambda: <ints>                       (optional)

    Blank lines and '#' comments are allowed.  Duplicate names, out-of-range
    indices, bad order lines, and disconnected graphs are rejected.
    """
    n_vertices: int | None = None
    edges: list[tuple[str, int, int]] = []
    order: list[str] | None = None
    theta: tuple[int, ...] | None = None
    lam: tuple[int, ...] | None = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vertices:"):
            if n_vertices is not None:
                raise QuiverFormatError(f"line {lineno}: repeated vertices line")
            try:
                n_vertices = int(line.split(":", 1)[1])
            except ValueError:
                raise QuiverFormatError(f"line {lineno}: bad vertex count") from None
        elif line.startswith("edge "):
            parts = line.split()
            if len(parts) != 4:
                raise QuiverFormatError(f"line {lineno}: expected 'edge <name> <tail> <head>'")
            try:
                edges.append((parts[1], int(parts[2]), int(parts[3])))
            except ValueError:
                raise QuiverFormatError(f"line {lineno}: endpoints must be integers") from None
        elif line.startswith("order:"):
            order = line.split(":", 1)[1].split()
        elif line.startswith("theta:"):
            theta = _int_vector(line, lineno)
        elif line.startswith("lambda:"):
            lam = _int_vector(line, lineno)
        else:
            raise QuiverFormatError(f"line {lineno}: unrecognized line {line!r}")

    if n_vertices is None:
        raise QuiverFormatError("missing 'vertices:' line")
    try:
        quiver = Quiver(n_vertices, edges, order)
    except ValueError as exc:
        raise QuiverFormatError(str(exc)) from None
    if not quiver.is_connected():
        raise QuiverFormatError("quiver is not connected")
    for label, vec in (("theta", theta), ("lambda", lam)):
        if vec is not None and len(vec) != n_vertices:
            raise QuiverFormatError(f"{label} has {len(vec)} entries, expected {n_vertices}")
    return ParsedQuiver(quiver, theta, lam)


def _int_vector(line: str, lineno: int) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in line.split(":", 1)[1].split())
    except ValueError:
        raise QuiverFormatError(f"line {lineno}: expected integers") from None


def load_quiver(path: str) -> ParsedQuiver:
    with open(path, encoding="utf-8") as fh:
        return parse_quiver(fh.read())


def format_quiver(
    quiver: Quiver,
    theta: Sequence[int] | None = None,
    lam: Sequence[int] | None = None,
) -> str:
    lines = [f"vertices: {quiver.n_vertices}"]
    lines += [f"edge {e.name} {e.tail} {e.head}" for e in quiver.edges]
    lines.append("order: " + " ".join(quiver.order))
    if theta is not None:
        lines.append("theta: " + " ".join(str(t) for t in theta))
    if lam is not None:
        lines.append("lambda: " + " ".join(str(t) for t in lam))
    return "\n".join(lines) + "\n"
