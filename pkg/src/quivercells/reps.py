"""Rank-one quiver representations over prime fields.

A representation assigns one scalar in F_p to every edge (vertex spaces are
all one-dimensional).  The gauge group (F_p^*)^vertices rescales edges by
t_head / t_tail; the diagonal acts trivially, and it acts freely on
indecomposables beyond that, so indecomposable orbits have exactly
(p-1)^(n-1) points each.  Counting those orbits for the first few primes and
interpolating recovers an integer polynomial in q, which must agree with the
spanning-tree activity sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Mapping, Sequence

from .activity import tree_sum
from .errors import DecomposableError, VerificationError
from .exactmath import IntPolynomial, first_primes, interpolate, is_prime
from .graphs import Quiver, SpanningTree, betti, connected_spanning, contract, delete


@dataclass(frozen=True)
class ToricRep:
    """Scalar edge data over F_p.  `scalars` maps every edge name to 0..p-1."""

    quiver: Quiver
    p: int
    scalars: Mapping[str, int]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        want = {e.name for e in self.quiver.edges}
        if set(self.scalars) != want:
            raise ValueError("scalars must cover exactly the edge names")
        object.__setattr__(
            self, "scalars", {k: v % self.p for k, v in self.scalars.items()}
        )

    def scalar_key(self) -> tuple[int, ...]:
        return tuple(self.scalars[e.name] for e in self.quiver.edges)


def iter_reps(quiver: Quiver, p: int) -> Iterator[ToricRep]:
    """All p^edges representations, in lexicographic scalar order."""
    names = [e.name for e in quiver.edges]
    for combo in product(range(p), repeat=len(names)):
        yield ToricRep(quiver, p, dict(zip(names, combo)))


def inversion_graph(rep: ToricRep) -> frozenset[str]:
    """Names of edges carrying a nonzero scalar."""
    return frozenset(name for name, v in rep.scalars.items() if v)


def is_indecomposable(rep: ToricRep) -> bool:
    """True iff the nonzero-scalar edges connect all vertices.

    A vertex split with no nonzero edge across it is exactly a direct-sum
    decomposition, and loops never cross a split.
    """
    return connected_spanning(rep.quiver, inversion_graph(rep))


def apply_gauge(rep: ToricRep, t: Sequence[int]) -> ToricRep:
    """Rescale by t: each scalar x_e becomes t_head * x_e / t_tail."""
    p = rep.p
    if len(t) != rep.quiver.n_vertices:
        raise ValueError("gauge vector length must match the vertex count")
    if any(v % p == 0 for v in t):
        raise ValueError("gauge entries must be invertible")
    new = {}
    for e in rep.quiver.edges:
        inv_tail = pow(t[e.tail] % p, p - 2, p)
        new[e.name] = (t[e.head] * rep.scalars[e.name] * inv_tail) % p
    return ToricRep(rep.quiver, p, new)


def canonical_rep(rep: ToricRep) -> ToricRep:
    """Orbit representative: gauge a greedy tree of nonzero edges to scalar 1.

    The tree is chosen by edge sequence order, and the gauge is pinned by
    t_0 = 1; the leftover global rescaling acts trivially, so equal outputs
    mean equal orbits.  Only defined for indecomposables (the tree must span).
    """
    q = rep.quiver
    p = rep.p
    parent = list(range(q.n_vertices))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    tree_edges = []
    for e in q.edges:
        if e.is_loop or rep.scalars[e.name] == 0:
            continue
        ra, rb = find(e.tail), find(e.head)
        if ra != rb:
            parent[ra] = rb
            tree_edges.append(e)
    if len(tree_edges) != q.n_vertices - 1:
        raise DecomposableError("nonzero edges do not connect the quiver")

    adj: dict[int, list] = {v: [] for v in range(q.n_vertices)}
    for e in tree_edges:
        adj[e.tail].append(e)
        adj[e.head].append(e)
    t = [0] * q.n_vertices
    t[0] = 1
    frontier = [0]
    while frontier:
        v = frontier.pop()
        for e in adj[v]:
            w = e.head if v == e.tail else e.tail
            if t[w]:
                continue
            x = rep.scalars[e.name]
            if w == e.head:
                # want t_w * x / t_v = 1
                t[w] = (t[v] * pow(x, p - 2, p)) % p
            else:
                # w is the tail: want t_parent... i.e. t_head * x / t_w = 1
                t[w] = (t[v] * x) % p
            frontier.append(w)
    return apply_gauge(rep, t)


def count_indecomposable_orbits(quiver: Quiver, p: int) -> int:
    """Number of gauge orbits of indecomposable representations over F_p.

    Counts distinct canonical forms, then cross-checks that the raw point
    count is exactly (p-1)^(n-1) per orbit (the action is free there).
    """
    canon: set[tuple[int, ...]] = set()
    points = 0
    for rep in iter_reps(quiver, p):
        if not is_indecomposable(rep):
            continue
        points += 1
        canon.add(canonical_rep(rep).scalar_key())
    orbit_size = (p - 1) ** (quiver.n_vertices - 1)
    if points != orbit_size * len(canon):
        raise VerificationError(
            f"{points} indecomposable points, {len(canon)} canonical forms, "
            f"expected orbit size {orbit_size}"
        )
    return len(canon)


def classify_rep(rep: ToricRep) -> tuple[SpanningTree, int]:
    """Assign an indecomposable rep to a spanning tree via the biggest-edge recursion.

    Nonzero biggest edge: gauge it to 1, contract, remember it as a tree edge.
    Zero biggest edge: delete.  At one vertex the survivors are loops whose
    scalars are free parameters; their count is returned and always equals the
    tree's activity statistic.  The zero pattern is gauge-invariant at every
    step, so orbits map to a single tree.
    """
    if not is_indecomposable(rep):
        raise DecomposableError("only indecomposable representations classify to a tree")
    q = rep.quiver
    p = rep.p
    scal = dict(rep.scalars)
    tree_names = []
    while q.n_vertices > 1:
        name = q.biggest_non_loop()
        e = q.edge(name)
        if scal[name]:
            t = [1] * q.n_vertices
            t[e.head] = pow(scal[name], p - 2, p)
            for f in q.edges:
                scal[f.name] = (t[f.head] * scal[f.name] * pow(t[f.tail], p - 2, p)) % p
            del scal[name]
            tree_names.append(name)
            q = contract(q, name)
        else:
            del scal[name]
            q = delete(q, name)
    return SpanningTree(frozenset(tree_names)), len(q.edges)


def classification_fibers(quiver: Quiver, p: int) -> dict[SpanningTree, int]:
    """Orbit count per tree: distinct canonical forms among reps classified there."""
    fibers: dict[SpanningTree, set[tuple[int, ...]]] = {}
    for rep in iter_reps(quiver, p):
        if not is_indecomposable(rep):
            continue
        tree, _ = classify_rep(rep)
        fibers.setdefault(tree, set()).add(canonical_rep(rep).scalar_key())
    return {tree: len(keys) for tree, keys in fibers.items()}


def kac_polynomial(quiver: Quiver, primes: Sequence[int] | None = None) -> IntPolynomial:
    """Orbit-count polynomial, interpolated from the first betti+1 primes.

    The result is checked coefficientwise against the spanning-tree activity
    sum; disagreement raises rather than returning either answer.
    """
    if not quiver.is_connected():
        raise ValueError("Kac count needs a connected quiver")
    bound = betti(quiver)
    if primes is None:
        primes = first_primes(bound + 1)
    if len(primes) < bound + 1:
        raise ValueError(f"need at least {bound + 1} primes for degree bound {bound}")
    for p in primes:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
    points = [(p, count_indecomposable_orbits(quiver, p)) for p in primes]
    poly = interpolate(points, bound)
    expected = tree_sum(quiver)
    if poly != expected:
        raise VerificationError(
            f"orbit counts interpolate to {poly.pretty()} but the tree sum is {expected.pretty()}"
        )
    return poly
