"""Spanning-tree activity and Tutte evaluations.

The central statistic is `extact(Q, T)`: run the delete/contract recursion on
the biggest non-loop edge (in T: contract, else: delete) until one vertex
remains, then count the surviving edges.  Summing q^extact over all spanning
trees gives the same polynomial as the subset-expansion evaluation T(1, q),
which is what the tests pin down.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .exactmath import BivarPolynomial, IntPolynomial
from .graphs import Quiver, SpanningTree, betti, connected_spanning, contract, delete, spanning_trees


@dataclass(frozen=True)
class ActivityTrace:
    """One full recursion run: the tree, its statistic, and the step log."""

    tree: SpanningTree
    extact: int
    steps: tuple[tuple[str, str], ...]  # (edge name, "CONTRACT" | "DELETE")


def extact_trace(quiver: Quiver, tree: SpanningTree) -> ActivityTrace:
    """Run the biggest-edge recursion for one spanning tree, keeping the log."""
    if len(tree) != quiver.n_vertices - 1:
        raise ValueError("tree size does not match the quiver")
    q = quiver
    steps: list[tuple[str, str]] = []
    while q.n_vertices > 1:
        name = q.biggest_non_loop()
        if name in tree:
            steps.append((name, "CONTRACT"))
            q = contract(q, name)
        else:
            steps.append((name, "DELETE"))
            q = delete(q, name)
    # one vertex left: every surviving edge is a loop and counts
    return ActivityTrace(tree, len(q.edges), tuple(steps))


def extact(quiver: Quiver, tree: SpanningTree) -> int:
    return extact_trace(quiver, tree).extact


def extact_table(quiver: Quiver) -> dict[SpanningTree, int]:
    return {t: extact(quiver, t) for t in spanning_trees(quiver)}


def tree_sum(quiver: Quiver) -> IntPolynomial:
    """Sum of q^extact(T) over all spanning trees."""
    if not quiver.is_connected():
        raise ValueError("tree sum needs a connected quiver")
    acc = IntPolynomial()
    for tree in spanning_trees(quiver):
        acc = acc + IntPolynomial.monomial(extact(quiver, tree))
    return acc


def tutte_one_q(quiver: Quiver) -> IntPolynomial:
    """T(1, q) via the spanning-connected-subset expansion.

    Only connected spanning edge subsets D contribute; each adds
    (q - 1)^(#D - #V + 1).  Subset scan, so the edge count is capped.
    """
    if not quiver.is_connected():
        raise ValueError("Tutte evaluation needs a connected quiver")
    m = len(quiver.edges)
    if m > 16:
        raise ValueError(f"{m} edges is past the subset-scan cap of 16")
    n = quiver.n_vertices
    names = [e.name for e in quiver.edges]
    acc = [0] * (m - n + 2)
    for r in range(n - 1, m + 1):
        for sub in combinations(names, r):
            if connected_spanning(quiver, sub):
                # expand (q-1)^(r-n+1) into the accumulator
                k = r - n + 1
                for j in range(k + 1):
                    acc[j] += comb(k, j) * (-1) ** (k - j)
    return IntPolynomial(acc)


def tutte_full(quiver: Quiver) -> BivarPolynomial:
    """Full Tutte polynomial by corank-nullity over all edge subsets."""
    if not quiver.is_connected():
        raise ValueError("Tutte evaluation needs a connected quiver")
    m = len(quiver.edges)
    if m > 16:
        raise ValueError(f"{m} edges is past the subset-scan cap of 16")
    n = quiver.n_vertices
    names = [e.name for e in quiver.edges]
    xm1 = BivarPolynomial({(1, 0): 1, (0, 0): -1})
    ym1 = BivarPolynomial({(0, 1): 1, (0, 0): -1})
    acc = BivarPolynomial()
    for r in range(m + 1):
        for sub in combinations(names, r):
            k_sub = _component_count(quiver, sub)
            corank = k_sub - 1
            nullity = k_sub + r - n
            term = BivarPolynomial({(0, 0): 1})
            for _ in range(corank):
                term = term * xm1
            for _ in range(nullity):
                term = term * ym1
            acc = acc + term
    return acc


def _component_count(quiver: Quiver, edge_names) -> int:
    parent = list(range(quiver.n_vertices))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    comps = quiver.n_vertices
    for name in edge_names:
        e = quiver.edge(name)
        ra, rb = find(e.tail), find(e.head)
        if ra != rb:
            parent[ra] = rb
            comps -= 1
    return comps


def check_activity_bounds(quiver: Quiver, tree: SpanningTree) -> ActivityTrace:
    """Recursion invariants: extact <= b1 and #DELETE steps == b1 - extact."""
    trace = extact_trace(quiver, tree)
    b1 = betti(quiver)
    if not 0 <= trace.extact <= b1:
        raise AssertionError(f"extact {trace.extact} outside [0, {b1}]")
    deletes = sum(1 for _, kind in trace.steps if kind == "DELETE")
    contracts = sum(1 for _, kind in trace.steps if kind == "CONTRACT")
    if deletes != b1 - trace.extact:
        raise AssertionError(f"{deletes} deletions, expected {b1 - trace.extact}")
    if contracts != quiver.n_vertices - 1:
        raise AssertionError(f"{contracts} contractions, expected {quiver.n_vertices - 1}")
    return trace
